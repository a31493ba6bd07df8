"""Report row serialization."""

import csv
import io
import json

from votelab.metrics import exact_report, sampled_report
from votelab.reports import (
    FIELDS,
    report_from_dict,
    report_to_dict,
    reports_to_csv,
    reports_to_json,
)


def sample_rows():
    return [
        exact_report("mab", (0, 1), 4, 81),
        sampled_report("nt", (), 5531, 100_000, 0.0014, 100_000, 7),
    ]


def test_dict_round_trip():
    for r in sample_rows():
        assert report_from_dict(report_to_dict(r)) == r


def test_num_den_are_decimal_strings():
    d = report_to_dict(exact_report("mab", (0, 1), 4, 81))
    assert d["num"] == "4" and d["den"] == "81"
    assert isinstance(d["value"], float)
    assert d["ci95"] is None and d["seed"] is None


def test_json_schema_keys():
    rows = json.loads(reports_to_json(sample_rows()))
    assert isinstance(rows, list)
    for row in rows:
        assert tuple(row) == FIELDS
    assert rows[0]["indices"] == [0, 1]
    assert rows[1]["mode"] == "sampled"
    assert rows[1]["seed"] == "7"


def test_json_extra_wraps_object():
    payload = json.loads(reports_to_json(sample_rows(), extra={"n": 3}))
    assert payload["n"] == 3
    assert len(payload["reports"]) == 2


def test_csv_projection():
    text = reports_to_csv(sample_rows())
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == list(FIELDS)
    assert rows[1][0] == "mab"
    assert rows[1][1] == "0;1"
    assert rows[2][7] == "100000"
    # exact row leaves sampled-only cells empty
    assert rows[1][6] == "" and rows[1][8] == ""


def test_csv_value_survives_float_round_trip():
    text = reports_to_csv([exact_report("mab", (0, 1), 4, 81)])
    row = list(csv.reader(io.StringIO(text)))[1]
    assert float(row[5]) == 4 / 81

"""Command line interface.

Examples::

    votelab metrics --scf plurality --n 3 --exact
    votelab metrics --scf random_table:17 --n 6 --samples 200000 --seed 1
    votelab reduce --scf borda --n 3 --tie-voter 0 --gswf-out borda.gswf
    votelab verify border --trials 500 --seed 2
    votelab verify --replay counterexample.json
    votelab gen --scf random_table:4 --n 4 --out t.scf3
    votelab gen --g majority --n 3 --out maj.gswf

Rule and preference-function sources are either registry names with an
optional integer argument after a colon, or paths to table files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import fileio, metrics, reports, rules, sampling, suites, welfare

PAIRS3 = ((0, 1), (0, 2), (1, 2))

_SCF_PARAM = {"dictatorship": "voter", "anti_dictatorship": "voter",
              "constant": "alt", "random_table": "seed"}
_SCF_NAMES = ("dictatorship", "anti_dictatorship", "constant", "plurality",
              "borda", "pairwise_majority_fallback", "random_table")
_GSWF_NAMES = ("dictator_swf", "anti_dictator_swf", "majority", "random_odd",
               "random_iia")


def _looks_like_path(src: str) -> bool:
    return os.path.exists(src) or any(c in src for c in (os.sep, "/", "."))


def _parse_named(src: str) -> tuple[str, int | None]:
    name, _, arg = src.partition(":")
    if arg:
        try:
            return name, int(arg)
        except ValueError:
            raise ValueError(f"argument of {name!r} must be an integer, got {arg!r}")
    return name, None


def load_scf(src: str, m: int, n: int | None):
    """A rule registry name with optional ``:int`` argument, or a table file."""
    if _looks_like_path(src):
        table = fileio.read_scf(src)
        if n is not None and n != table.n:
            raise ValueError(f"--n {n} disagrees with table file (n={table.n})")
        return table, table.n
    name, arg = _parse_named(src)
    if name not in _SCF_NAMES:
        raise ValueError(f"unknown rule {name!r}; names: {', '.join(_SCF_NAMES)}")
    params = {}
    if arg is not None:
        if name not in _SCF_PARAM:
            raise ValueError(f"rule {name!r} takes no argument")
        params[_SCF_PARAM[name]] = arg
    if n is None:
        raise ValueError("--n is required for rule names")
    return rules.ScfRule(name, m, **params), n


def load_gswf(src: str, n: int | None):
    if _looks_like_path(src):
        G = fileio.read_gswf(src)
        if n is not None and n != G.n:
            raise ValueError(f"--n {n} disagrees with GSWF file (n={G.n})")
        return G
    if n is None:
        raise ValueError("--n is required for named preference functions")
    name, arg = _parse_named(src)
    if name == "dictator_swf":
        return welfare.dictator_swf(0 if arg is None else arg, n)
    if name == "anti_dictator_swf":
        return welfare.anti_dictator_swf(0 if arg is None else arg, n)
    if name == "majority":
        return welfare.neutral_tensor(welfare.majority_g(n), 3).to_gswf()
    if name == "random_odd":
        return welfare.neutral_tensor(
            welfare.random_odd_g(n, 0 if arg is None else arg), 3).to_gswf()
    if name == "random_iia":
        return welfare.random_iia_gswf(n, 3, 0 if arg is None else arg)
    raise ValueError(f"unknown preference function {name!r}; "
                     f"names: {', '.join(_GSWF_NAMES)}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _flag_row(metric: str, flag: bool, mode: str, checks: int | None, seed):
    if mode == "exact":
        return metrics.exact_report(metric, (), int(flag), 1)
    return metrics.sampled_report(metric, (), int(flag), 1, 0.0, checks, seed)


def _diag_row(metric, counts, total, used, seed, pick) -> metrics.MetricReport:
    i = pick(counts)
    num = int(counts[i])
    if used == "exact":
        return metrics.exact_report(metric, (i,), num, total)
    half = sampling.wilson_half_width(num, total)
    return metrics.sampled_report(metric, (i,), num, total, half, total, seed)


def cmd_metrics(args) -> int:
    scf, n = load_scf(args.scf, args.m, args.n)
    mode = "exact" if args.exact else ("sampled" if args.samples else "auto")
    kw = dict(mode=mode, samples=args.samples, seed=args.seed, workers=args.workers)
    rows = [metrics.manipulation_power(scf, i, n, **kw) for i in range(n)]
    rows.append(metrics.manipulation_power_total(scf, n, **kw))
    if scf.m == 3:
        rows += [metrics.mab(scf, a, b, n, **kw) for a, b in PAIRS3]
        rows += [metrics.nab(scf, a, b, n, **kw) for a, b in PAIRS3]

    argmin = lambda c: int(np.asarray(c).argmin())
    for metric, which in (("dist_dictatorship", "top"),
                          ("dist_antidictatorship", "bottom"),
                          ("range_min", "elected")):
        counts, total, used = rules._diag_counts(scf, which, n, mode,
                                                 args.samples, args.seed,
                                                 args.workers)
        rows.append(_diag_row(metric, counts, total, used, args.seed, argmin))

    for metric, rate, fn in (("neutral", "neutrality", rules.neutrality_counts),
                             ("anonymous", "anonymity", rules.anonymity_counts)):
        bad, checks = fn(scf, n, **kw)
        used = "exact" if mode == "exact" or (mode == "auto"
                and rules.exact_feasible(n, scf.m)) else "sampled"
        rows.append(_flag_row(f"is_{metric}", bad == 0, used, checks, args.seed))
        if used == "exact":
            rows.append(metrics.exact_report(f"{rate}_violations", (), bad, checks))
        else:
            half = sampling.wilson_half_width(bad, checks)
            rows.append(metrics.sampled_report(f"{rate}_violations", (), bad,
                                               checks, half, checks, args.seed))

    text = (reports.reports_to_json(rows) if args.format == "json"
            else reports.reports_to_csv(rows))
    _emit(text, args.out)
    return 0


def cmd_reduce(args) -> int:
    scf, n = load_scf(args.scf, 3, args.n)
    if scf.m != 3:
        raise ValueError("the pairwise reduction is defined for m = 3")
    chain = welfare.check_reduction_chain(scf, tie_voter=args.tie_voter, n=n)
    G = welfare.gswf_from_scf(scf, tie_voter=args.tie_voter, n=n)
    if args.gswf_out:
        fileio.write_gswf(G, args.gswf_out)

    rows = [chain.nt_report, *chain.mab_reports, *chain.nab_reports]
    for metric, frac in (("eps1", chain.eps1), ("eps2", chain.eps2),
                         ("dist_dict2", chain.dist_dict),
                         ("dist_antidict2", chain.dist_anti),
                         ("range_min2", chain.range_min),
                         ("dist_tr3", chain.dist)):
        rows.append(metrics.exact_report(metric, (), frac.numerator,
                                         frac.denominator))
    for metric, flag in (("chain_holds", chain.holds),
                         ("nt_le_sum_nab", chain.nt_le_sum_nab),
                         ("cauchy_each", chain.cauchy_each),
                         ("sum_nab_sq_le_9eps1", chain.sum_nab_sq_le_9eps1),
                         ("dist_bound", chain.dist_bound),
                         ("g_is_neutral", chain.g_is_neutral),
                         ("scf_is_neutral", chain.scf_is_neutral)):
        rows.append(metrics.exact_report(metric, (), int(flag), 1))

    if args.format == "json":
        tables = {f"{a}{b}": "".join("1" if v else "0" for v in G.pairwise(a, b))
                  for a, b in PAIRS3}
        extra = {"n": n, "tie_voter": args.tie_voter,
                 "nearest_member": chain.member.label,
                 "tables": tables,
                 "gswf_file": args.gswf_out}
        text = reports.reports_to_json(rows, extra)
    else:
        text = reports.reports_to_csv(rows)
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    if args.replay:
        with open(args.replay) as fh:
            data = json.load(fh)
        if isinstance(data, dict) and "counterexample" in data:
            data = data["counterexample"]
        if not isinstance(data, dict) or "suite" not in data:
            raise ValueError("replay file does not contain a counterexample")
        ok = suites.replay(data)
        print(f"replay {data['suite']}: {'holds' if ok else 'violated'}")
        return 0 if ok else 1
    if not args.suite:
        raise ValueError(f"give a suite name or --replay; suites: "
                         f"{', '.join(sorted(suites.SUITES))}")
    rep = suites.run_suite(args.suite, trials=args.trials, n=args.n,
                           seed=args.seed, samples=args.samples,
                           workers=args.workers)
    if args.format == "json":
        text = json.dumps(rep.to_dict(), indent=2) + "\n"
    else:
        import csv as _csv
        import io as _io
        buf = _io.StringIO()
        w = _csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "instances", "passes", "ok", "wall_time",
                    "counterexample"])
        w.writerow([rep.suite, rep.instances, rep.passes, rep.ok,
                    repr(rep.wall_time),
                    "" if rep.counterexample is None
                    else json.dumps(rep.counterexample)])
        text = buf.getvalue()
    _emit(text, args.out)
    if not rep.ok:
        print(f"{rep.suite}: {rep.instances - rep.passes} of "
              f"{rep.instances} instances failed", file=sys.stderr)
    return 0 if rep.ok else 1


def cmd_gen(args) -> int:
    if (args.scf is None) == (args.g is None):
        raise ValueError("give exactly one of --scf or --g")
    if args.scf:
        scf, n = load_scf(args.scf, args.m, args.n)
        table = scf if isinstance(scf, rules.ScfTable) else scf.as_table(n)
        fileio.write_scf(table, args.out)
        print(f"wrote SCF table m={table.m} n={table.n} to {args.out}")
    else:
        G = load_gswf(args.g, args.n)
        fileio.write_gswf(G, args.out)
        print(f"wrote GSWF m={G.m} n={G.n} to {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="votelab")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, scf=True):
        if scf:
            p.add_argument("--scf", required=True,
                           help="rule name (optionally name:arg) or table file")
        p.add_argument("--n", type=int, help="number of voters")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("metrics", help="manipulability and diagnostic metrics")
    common(p)
    p.add_argument("--m", type=int, default=3)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--samples", type=int)
    p.set_defaults(fn=cmd_metrics)

    p = sub.add_parser("reduce", help="pairwise reduction and the bound chain")
    common(p)
    p.add_argument("--tie-voter", type=int, default=0)
    p.add_argument("--gswf-out", help="also write the derived GSWF here")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", nargs="?", choices=sorted(suites.SUITES))
    p.add_argument("--trials", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.add_argument("--replay", help="re-run one serialized counterexample")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("gen", help="materialize tables to files")
    p.add_argument("--scf")
    p.add_argument("--g", help="preference function name or file")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_gen)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

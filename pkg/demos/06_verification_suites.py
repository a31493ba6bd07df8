#!/usr/bin/env python3
"""Batch verification suites with replayable counterexamples.

Each suite sweeps one inequality or identity over a seeded corpus and
reports the first failing instance, if any, as a plain dict that can be
re-run in isolation.  The same suites back the `verify` CLI subcommand.
"""

import json
import subprocess
import sys

from votelab import SUITES, replay, run_suite


def main():
    print("available suites:")
    for name, spec in sorted(SUITES.items()):
        print(f"  {name:16s} default trials {spec.trials:5d} at n={spec.n}  "
              f"- {spec.summary}")

    print("\nrunning three suites with default settings:")
    for name in ("first-reduction", "border", "shifting"):
        rep = run_suite(name, seed=0)
        verdict = "ok" if rep.ok else "FAILED"
        print(f"  {name:16s} {rep.passes}/{rep.instances} instances "
              f"in {rep.wall_time:.2f}s  {verdict}")

    # A passing suite has no counterexample; a failing one carries the
    # instance descriptor, which replay() re-checks from scratch.
    rep = run_suite("cauchy", trials=30, n=2, seed=0)
    print("\ncauchy suite counterexample:", rep.counterexample)
    fake = {"suite": "cauchy", "scf": {"name": "plurality", "m": 3}, "n": 2}
    print("replaying a hand-written instance descriptor:", replay(fake))

    # The CLI front end returns exit code 0 on success and 1 on a failed
    # suite, with the JSON report on stdout.
    out = subprocess.run(
        [sys.executable, "-m", "votelab", "verify", "composition",
         "--n", "2", "--trials", "3"],
        capture_output=True, text=True)
    print("\nCLI run (exit", str(out.returncode) + "):")
    print(json.dumps(json.loads(out.stdout), indent=2))


if __name__ == "__main__":
    main()

"""Oracle cross-validation in miniature.

Every specialized solver and every reduction in the package is fuzzed
against the explicit configuration-graph solver (or an exhaustive evaluator
of the source problem).  The full suites run via ``pawngames check`` or the
acceptance tests; this script runs a small slice of each and reports.
"""

import time

from pawngames.crossval import SUITES, run_suite

COUNTS = {"gadgets": 1, "atm": 10}

for name in SUITES:
    count = COUNTS.get(name, 25)
    started = time.monotonic()
    failures = run_suite(name, seed=2024, count=count)
    elapsed = time.monotonic() - started
    status = "ok" if not failures else f"{len(failures)} MISMATCHES"
    print(f"{name:10} x{count:3}  {status}  ({elapsed:.1f}s)")
    if failures:
        print(failures[0])

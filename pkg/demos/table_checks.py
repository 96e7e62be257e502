"""Run every check suite over the bundled knot table and print the tallies.

    python demos/table_checks.py [prime] [budget]
"""

import sys
import time

from twistalex.checks import SUITES, CheckOptions, run_check_suite
from twistalex.table import load_bundled_table

prime = int(sys.argv[1]) if len(sys.argv) > 1 else 5
budget = int(sys.argv[2]) if len(sys.argv) > 2 else 20
table = load_bundled_table(verify=True)
print(f"{len(table)} knots, representations over F_{prime}, budget {budget}")

for suite in SUITES[1:]:
    t0 = time.perf_counter()
    report = run_check_suite(table, suite, CheckOptions(prime=prime, budget=budget))
    tallies = ", ".join(f"{k} {ok}/{n}" for k, (n, ok) in sorted(report.counts().items()))
    print(f"{suite:<12} {tallies:<48} {time.perf_counter() - t0:5.1f} s")
    for r in report.results:
        if not r.passed:
            print("   ", r.render())

"""Budgeted searches at q = 2 and n >= 2, where no classification is claimed.

Results are reported neutrally: the families found (if any), their verdicts, and
whether the budget ran out.  At q = 2 the codimension-2 condition is vacuous, so
only the point-degree condition prunes.

    python scripts/search_q2.py 2 1e6
"""

import sys
import time
from collections import Counter

from pgquadric import Sign
from pgquadric.cli import parse_count
from pgquadric.search import BudgetExceeded, SearchLimits, backtracking_search


def main(argv: list[str]) -> int:
    n = int(argv[0]) if argv else 2
    budget = parse_count(argv[1]) if len(argv) > 1 else 10**6
    for sign in Sign:
        t0 = time.perf_counter()
        try:
            res = backtracking_search(n, 2, sign, SearchLimits(node_budget=budget, time_budget=3600.0))
            complete = True
        except BudgetExceeded as exc:
            res, complete = exc.result, False
        verdicts = Counter(a.verdict.verdict.value for _, a in res.families)
        print(f"PG({2 * n + 1},2) sign {sign.value}: {len(res.families)} families in {res.nodes_explored} nodes "
              f"({'complete' if complete else 'budget exhausted'}), {time.perf_counter() - t0:.1f}s, "
              f"verdicts {dict(sorted(verdicts.items()))}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))

"""Show every (n, q, sign, k) where the divisibility test holds for some k other than 1.

For n = 1, hyperbolic sign, the test reads (q + 1) | k(q^3 - 1) + q^2 - q.  Modulo q + 1
this is -2k + 2, so q + 1 | 2(k - 1); for odd q the root k = (q + 3)/2 appears.
"""

import sys
from math import gcd

from pgquadric import Sign
from pgquadric.gf import prime_powers_up_to
from pgquadric.search import lemma_useful_check


def main(argv: list[str]) -> int:
    max_n = int(argv[0]) if argv else 6
    max_q = int(argv[1]) if len(argv) > 1 else 16
    extra = 0
    for q in prime_powers_up_to(max_q):
        for n in range(1, max_n + 1):
            for sign in Sign:
                if n == 1 and sign is Sign.MINUS:
                    continue
                ks = [k for k in range(1, q + 1) if lemma_useful_check(n, q, sign, k)]
                if ks != [1]:
                    extra += 1
                    s = sign.unit
                    g = gcd(q ** n + s, q ** (2 * n + 1) - 1)
                    print(f"n={n} q={q} sign={sign.value}: k in {ks}  gcd(q^n{sign.value}1, q^(2n+1)-1) = {g}")
    print(f"{extra} parameter triples with a root other than k = 1")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))

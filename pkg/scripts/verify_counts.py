"""Enumerate the standard quadrics at desk-scale parameters and compare with the closed forms.

    python scripts/verify_counts.py            # the acceptance parameter set
    python scripts/verify_counts.py 1:7 2:4    # n=1, q=7 and n=2, q=4
"""

import sys
import time
from collections import Counter

import numpy as np

from pgquadric import Kind, Sign, make_field, standard_form
from pgquadric.quadric import SectionClass, hyperplane_classes, parabolic_family
from pgquadric.sigma import check_p1, check_p2

DEFAULT = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (3, 2)]


def row(n: int, q: int, sign: Sign) -> tuple[bool, str]:
    t0 = time.perf_counter()
    form = standard_form(Kind.for_sign(sign), n, make_field(q))
    t = form.counts
    classes = Counter(hyperplane_classes(form))
    codim2 = sorted(set(np.unique(form.codim2_sections).tolist()))
    fam = parabolic_family(form)
    p1, p2 = check_p1(fam), check_p2(fam)
    ok = (
        int(form.on_mask.sum()) == t.quadric_size
        and classes[SectionClass.PARABOLIC_SECTION] == t.parabolic_hyperplanes
        and classes[SectionClass.TANGENT_CONE] == t.quadric_size
        and set(codim2) <= set(t.codim2_values.values())
        and p1.holds and p2.holds
        and p1.black == frozenset(form.space.points[i] for i in np.flatnonzero(form.on_mask))
    )
    text = (f"n={n} q={q:<3} {sign.value}  |Q|={t.quadric_size:<6} parabolic={t.parabolic_hyperplanes:<6} "
            f"h=({t.h1},{t.h2}) codim-2 sizes={codim2}  {'ok' if ok else 'MISMATCH'}  "
            f"{time.perf_counter() - t0:.2f}s")
    return ok, text


def main(argv: list[str]) -> int:
    params = [tuple(int(x) for x in a.split(":")) for a in argv] or DEFAULT
    good = True
    for n, q in params:
        for sign in Sign:
            ok, text = row(n, q, sign)
            good &= ok
            print(text)
    return 0 if good else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))

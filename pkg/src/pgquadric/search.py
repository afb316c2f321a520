"""Converse searches for (P1)+(P2) families, and the integer-arithmetic lemma checks."""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Optional

import numpy as np

from .family import HyperplaneFamily, Sign
from .gf import prime_powers_up_to
from .pg import make_space, theta
from .sigma import (
    FamilyAnalysis,
    admissible_r,
    analyze,
    black_count_from_r,
    check_p2,
    r_bounds,
)


class BudgetExceeded(RuntimeError):
    def __init__(self, result: "SearchResult"):
        super().__init__(f"search budget exhausted after {result.nodes_explored} nodes")
        self.result = result


class OutOfLemmaScope(ValueError):
    pass


@dataclass(frozen=True)
class SearchLimits:
    node_budget: int = 10**6
    time_budget: float = 60.0
    report_every: int = 100_000

    def __post_init__(self):
        if self.node_budget <= 0 or self.time_budget <= 0 or self.report_every <= 0:
            raise ValueError("search limits must be positive")


@dataclass
class SearchResult:
    families: list[tuple[HyperplaneFamily, FamilyAnalysis]] = field(default_factory=list)
    exhaustive: bool = False
    nodes_explored: int = 0


def _sorted_families(found: list[tuple[HyperplaneFamily, FamilyAnalysis]]):
    return sorted(found, key=lambda fa: fa[0].indices)


def exhaustive_search_pg32(sign: Sign) -> SearchResult:
    """All 2**15 plane subsets of PG(3,2), kept when (P1) and (P2) hold."""
    space = make_space(3, 2)
    t_black, t_white = (2, 4) if sign is Sign.PLUS else (6, 4)
    nh = space.num_points
    subsets = np.arange(1, 2**nh, dtype=np.int64)
    member = ((subsets[:, None] >> np.arange(nh)) & 1).astype(np.int64)
    degrees = member @ space.incidence.astype(np.int64)
    p1_ok = ((degrees == t_black) | (degrees == t_white)).all(axis=1)
    found = []
    for row in member[p1_ok]:
        fam = HyperplaneFamily.from_indices(space, sign, np.flatnonzero(row))
        if check_p2(fam).holds:
            found.append((fam, analyze(fam)))
    return SearchResult(_sorted_families(found), exhaustive=True, nodes_explored=2**nh)


def admissible_sizes(n: int, q: int, sign: Sign) -> list[int]:
    lo, hi = r_bounds(n, q, sign)
    rs = set(range(lo, hi + 1)) | admissible_r(n, q, sign)
    return sorted(q ** n * r for r in rs)


def backtracking_search(
    n: int,
    q: int,
    sign: Sign,
    limits: SearchLimits = SearchLimits(),
    progress: Optional[Callable[[str], None]] = None,
) -> SearchResult:
    """Depth-first include/exclude search over hyperplanes in enumeration order.

    Pruning uses necessary conditions only: a point must still be able to
    land exactly on the black or white degree with the hyperplanes left to
    decide; a codim-2 subspace holding between 1 and q-2 members must still
    be able to reach q-1 through its undecided hyperplanes; the family size
    is q^n * r over the admissible r range.  Raises BudgetExceeded
    (carrying partial results) when a limit is hit.
    """
    if progress is None:
        def progress(msg: str) -> None:
            print(msg, file=sys.stderr, flush=True)

    space = make_space(2 * n + 1, q)
    nh = space.num_points
    sizes = admissible_sizes(n, q, sign)
    size_set = set(sizes)
    min_size, max_size = sizes[0], sizes[-1]
    s = sign.unit
    targets = (q ** n * (q ** n - s), q ** (2 * n))
    t_hi = max(targets)
    pts_of = [np.flatnonzero(row).tolist() for row in space.incidence]
    deg = [0] * nh
    remaining = [theta(2 * n, q)] * nh
    subs_of: list[list[int]] = [[] for _ in range(nh)]
    for c, pencil in enumerate(space.pencils.tolist()):
        for h in pencil:
            subs_of[h].append(c)
    mult = [0] * len(space.pencils)
    open_ = [q + 1] * len(space.pencils)
    chosen: list[int] = []
    result = SearchResult()
    start = time.monotonic()

    def feasible(p: int) -> bool:
        d, top = deg[p], deg[p] + remaining[p]
        return any(d <= tv <= top for tv in targets)

    def pencil_ok(c: int) -> bool:
        m = mult[c]
        return m == 0 or m >= q - 1 or m + open_[c] >= q - 1

    class _Stop(Exception):
        pass

    def visit(i: int) -> None:
        result.nodes_explored += 1
        nodes = result.nodes_explored
        if nodes % limits.report_every == 0:
            progress(f"search n={n} q={q} sign={sign.value}: {nodes} nodes, "
                     f"{len(result.families)} families, depth {i}")
        if nodes >= limits.node_budget or (
            nodes % 1024 == 0 and time.monotonic() - start > limits.time_budget
        ):
            raise _Stop
        count = len(chosen)
        if count > max_size or count + (nh - i) < min_size:
            return
        if i == nh:
            if count in size_set:
                fam = HyperplaneFamily.from_indices(space, sign, chosen)
                if check_p2(fam).holds:
                    result.families.append((fam, analyze(fam)))
            return
        pts = pts_of[i]
        subs = subs_of[i]
        for p in pts:
            deg[p] += 1
            remaining[p] -= 1
        for c in subs:
            mult[c] += 1
            open_[c] -= 1
        # include hyperplane i
        if count + 1 <= max_size and all(deg[p] <= t_hi and feasible(p) for p in pts) \
                and all(pencil_ok(c) for c in subs):
            chosen.append(i)
            visit(i + 1)
            chosen.pop()
        # exclude hyperplane i
        for p in pts:
            deg[p] -= 1
        for c in subs:
            mult[c] -= 1
        if all(feasible(p) for p in pts) and all(pencil_ok(c) for c in subs):
            visit(i + 1)
        for p in pts:
            remaining[p] += 1
        for c in subs:
            open_[c] += 1

    try:
        visit(0)
    except _Stop:
        result.families = _sorted_families(result.families)
        raise BudgetExceeded(result) from None
    result.families = _sorted_families(result.families)
    result.exhaustive = True
    return result


# -- pure arithmetic -----------------------------------------------------------

def lemma_useful_check(n: int, q: int, sign: Sign, k: int) -> bool:
    """Whether q^n +/- 1 divides k(q^{2n+1} - 1) +/- q^{n+1} -/+ q^n."""
    if n == 1 and sign is Sign.MINUS:
        raise OutOfLemmaScope("the divisibility criterion excludes n = 1 in the elliptic case")
    if not 1 <= k <= q:
        raise ValueError("k must lie in 1..q")
    s = sign.unit
    return (k * (q ** (2 * n + 1) - 1) + s * q ** (n + 1) - s * q ** n) % (q ** n + s) == 0


@dataclass
class CheckEntry:
    name: str
    sign: Sign
    passed: bool
    detail: str = ""


@dataclass
class ConsistencyReport:
    n: int
    q: int
    entries: list[CheckEntry]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed]


def two_black_expressions(n: int, q: int, sign: Sign, r: int) -> tuple[Fraction, Fraction]:
    """b from the black-point/member incidence count, and b from the eliminated incidence count."""
    s = sign.unit
    via_members = Fraction(r * (q ** n + s) * s * (q ** (n + 1) - r), q - 1)
    via_total = Fraction(s * q ** n * (q ** (2 * n + 2) - 1) - s * (q ** (2 * n + 1) - 1) * r, q - 1)
    return via_members, via_total


def agreeing_k(n: int, q: int, sign: Sign) -> list[int]:
    """k in 1..q with r = q^{n+1} -/+ k making both black-count expressions equal."""
    out = []
    for k in range(1, q + 1):
        r = q ** (n + 1) - sign.unit * k
        a, b = two_black_expressions(n, q, sign, r)
        if a == b:
            out.append(k)
    return out


def solve_pencil_count(q: int, in_value: int, out_value: int, total: int, c: int) -> Fraction:
    """s solving s(in - c) + (q + 1 - s)(out - c) = total - c."""
    denom = in_value - out_value
    return Fraction(total - c - (q + 1) * (out_value - c), denom)


def consistency_suite(n: int, q: int) -> ConsistencyReport:
    entries: list[CheckEntry] = []
    d = q - 1
    for sign in (Sign.PLUS, Sign.MINUS):
        s = sign.unit

        def add(name: str, ok: bool, detail: str = "") -> None:
            entries.append(CheckEntry(name, sign, bool(ok), detail))

        # (iv) every division in the count table is exact
        exprs = {
            "quadric_size": ((q ** (n + 1) - s) * (q ** n + s), d),
            "h1": (q ** (2 * n) - 1, d),
            "h2": (q * (q ** n - s) * (q ** (n - 1) + s), d),
            "c1": ((q ** n + s) * (q ** (n - 1) - s), d),
            "c2": (q * (q ** (2 * n - 2) - 1), d),
            "c3": ((q ** n - s) * (q ** (n - 1) + s), d),
            "black_in_other_plane": (q ** (2 * n) + s * q ** (n + 1) - s * q ** n - 1, d),
        }
        if n >= 2:
            exprs["c4"] = (q * q * (q ** (n - 1) - s) * (q ** (n - 2) + s), d)
        bad = [k for k, (a, b) in exprs.items() if a % b]
        add("exact_divisions", not bad, ",".join(bad))

        quadric = (q ** (n + 1) - s) * (q ** n + s) // d
        total_h = theta(2 * n + 1, q)
        add("parabolic_plus_tangent", q ** n * (q ** (n + 1) - s) + quadric == total_h)

        # (i) standard r gives the quadric size from the triple count
        r_std = q ** (n + 1) - s
        b_std = black_count_from_r(n, q, sign, r_std)
        add("triple_count_standard_r", b_std == quadric, f"{b_std} vs {quadric}")
        sigma_size = q ** n * r_std
        eq3 = Fraction(s * (q ** (2 * n) * theta(2 * n + 1, q) - theta(2 * n, q) * sigma_size), q ** n)
        add("eliminated_count_standard_r", eq3 == quadric, f"{eq3} vs {quadric}")

        # (ii) r = q^{n+1} is impossible: the forced black count is not an integer
        b_bad = black_count_from_r(n, q, sign, q ** (n + 1))
        add("r_equal_q_pow_non_integral", b_bad.denominator != 1, str(b_bad))

        # the q^n divisibility rests on gcd(q^n, theta(2n)) = 1
        add("coprime_q_pow_theta", gcd(q ** n, theta(2 * n, q)) == 1)

        # (iii) the two black-count expressions agree only at the allowed k
        roots = agreeing_k(n, q, sign)
        expected_roots = [1, q] if (n == 1 and sign is Sign.MINUS and q > 1) else [1]
        add("agreeing_k", roots == sorted(set(expected_roots)), f"roots={roots}")
        if n == 1 and sign is Sign.MINUS:
            factored = [k for k in range(1, q + 1) if (q - k) * (k - 1) == 0]
            add("n1_elliptic_factorization", factored == roots, f"{factored}")
            add("n1_elliptic_r_values", sorted(q * q + k for k in roots) == sorted({q * q + 1, q * q + q}))

        # bounds on r from 0 <= member black count <= member size
        lo, hi = r_bounds(n, q, sign)
        th2nm1, th2n = theta(2 * n - 1, q), theta(2 * n, q)
        # the constraint is linear in r, so a window wider than q on each side suffices
        window = range(q ** (n + 1) - 2 * q - 2, q ** (n + 1) + 2 * q + 3)
        in_range = [r for r in window
                    if 0 <= th2nm1 * s * (q ** (n + 1) - r) <= th2n and r != q ** (n + 1)]
        add("r_bounds", (min(in_range), max(in_range)) == (lo, hi), f"{min(in_range)}..{max(in_range)}")

        # member / non-member black counts at standard r
        member_black = th2nm1 * s * (q ** (n + 1) - r_std)
        add("member_black_count", member_black == th2nm1)
        other = Fraction(q ** (2 * n) + s * q ** (n + 1) - s * q ** n - 1, d)
        # the non-member count from its own incidence count, solved for b_pi
        bd = q ** n * (q ** n - s)
        lhs_b = (th2n - bd - 1) - (th2n - q ** (2 * n) - 1)
        rhs = (theta(2 * n + 1, q) - sigma_size - 1) * th2nm1 - th2n * (th2n - q ** (2 * n) - 1)
        add("non_member_black_count", Fraction(rhs, lhs_b) == other, f"{Fraction(rhs, lhs_b)} vs {other}")

        # pencil equation: multiplicities land in {0, q-1, q, q+1}
        h1 = th2nm1
        h2 = 1 + (q * (q ** n - s) * (q ** (n - 1) + s)) // d
        cs = [(q ** n + s) * (q ** (n - 1) - s) // d, 1 + q * (q ** (2 * n - 2) - 1) // d,
              (q ** n - s) * (q ** (n - 1) + s) // d]
        if n >= 2:
            cs.append(1 + q + q * q * (q ** (n - 1) - s) * (q ** (n - 2) + s) // d)
        elif sign is Sign.PLUS:
            cs.append(q + 1)
        ss = [solve_pencil_count(q, h1, h2, quadric, c) for c in cs]
        add("pencil_multiplicities", all(x.denominator == 1 and int(x) in (0, q - 1, q, q + 1) for x in ss),
            str([str(x) for x in ss]))
        # and conversely, each admissible multiplicity gives back a codim-2 count
        ms = sorted(Fraction(quadric - (q + 1) * h2 - sv * (h1 - h2), -q) for sv in (0, q - 1, q, q + 1))
        valid_ms = sorted(m for m in ms if m.denominator == 1 and m >= 0)
        add("black_codim2_counts", set(valid_ms) <= set(Fraction(c) for c in cs) and set(cs) <= set(valid_ms),
            str([str(m) for m in ms]))
    return ConsistencyReport(n, q, entries)


def suite_sweep(max_n: int, max_q: int) -> dict:
    """Run consistency_suite and the divisibility sweep over all small parameters."""
    per_check: dict[str, list[int]] = {}
    failures = []
    lemma_cases = lemma_pass = 0
    lemma_failures: list[dict] = []
    for q in prime_powers_up_to(max_q):
        for n in range(1, max_n + 1):
            rep = consistency_suite(n, q)
            for e in rep.entries:
                slot = per_check.setdefault(e.name, [0, 0])
                slot[0] += 1
                slot[1] += e.passed
                if not e.passed:
                    failures.append({"n": n, "q": q, "sign": e.sign.value, "check": e.name, "detail": e.detail})
            for sign in (Sign.PLUS, Sign.MINUS):
                if n == 1 and sign is Sign.MINUS:
                    continue
                for k in range(1, q + 1):
                    lemma_cases += 1
                    ok = lemma_useful_check(n, q, sign, k) == (k == 1)
                    lemma_pass += ok
                    if not ok:
                        lemma_failures.append({"n": n, "q": q, "sign": sign.value, "k": k})
    return {
        "max_n": max_n,
        "max_q": max_q,
        "checks": {name: {"run": run, "passed": ok} for name, (run, ok) in sorted(per_check.items())},
        "divisibility_sweep": {"run": lemma_cases, "passed": lemma_pass, "failures": lemma_failures},
        "failures": failures,
        "passed": not failures and lemma_cases == lemma_pass,
    }

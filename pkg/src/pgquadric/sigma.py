"""Analysis of hyperplane families against the axioms (P1) and (P2).

(P1): every point lies on q^n(q^n -/+ 1) ("black") or q^{2n} ("white")
members.  (P2): every codimension-2 subspace lying in some member lies in
at least q - 1 members.  ``analyze`` runs both checks, derives every count
the characterization argument predicts from them and records each
disagreement in ``theorem_violations`` instead of raising.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .family import HyperplaneFamily, Sign
from .gf import nullspace
from .pg import (
    Codim2Subspace,
    Hyperplane,
    ProjPoint,
    ProjSpace,
    span_codim2,
    theta,
)
from .quadric import CountTable, Kind, QuadraticForm, SingularForm, expected_counts, parabolic_family

__all__ = [
    "HyperplaneFamily", "Sign", "P1Report", "P2Report", "FamilyAnalysis", "Verdict",
    "Classification", "P1Violated", "PreconditionFailed", "NotAnOvoid", "WrongDimension",
    "point_degrees", "check_p1", "check_p2", "analyze", "black_set", "is_quasi_quadric",
    "is_ovoid", "ovoid_secant_family", "line_transversal_family", "is_blocking_set",
    "classify_family", "fit_quadrics",
]


class P1Violated(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


class NotAnOvoid(ValueError):
    pass


class WrongDimension(ValueError):
    pass


class Verdict(enum.Enum):
    PARABOLIC_OF_HYPERBOLIC = "ParabolicOfHyperbolic"
    PARABOLIC_OF_ELLIPTIC = "ParabolicOfElliptic"
    OVOID_SECANT = "OvoidSecant"
    LINE_TRANSVERSAL = "LineTransversal"
    UNKNOWN = "Unknown"


Witness = Union[QuadraticForm, frozenset, Codim2Subspace, None]


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    witness: Witness = None
    # OvoidSecant only: True when a quadratic form cuts out the ovoid, None if undecided
    classical: Optional[bool] = None


@dataclass
class P1Report:
    holds: bool
    black: frozenset[ProjPoint]
    white: frozenset[ProjPoint]
    violations: list[tuple[ProjPoint, int]]
    degrees: np.ndarray = field(repr=False)
    black_mask: np.ndarray = field(repr=False)


@dataclass
class P2Report:
    holds: bool
    multiplicity_histogram: dict[int, int]
    violations: list[tuple[Codim2Subspace, int]]
    multiplicities: np.ndarray = field(repr=False)


@dataclass
class FamilyAnalysis:
    size: int
    p1: P1Report
    p2: P2Report
    b: int
    w: int
    r: Optional[int]
    black_per_member: dict[int, int]
    black_per_nonmember: dict[int, int]
    codim2_black_histogram: dict[int, int]
    verdict: Optional[Classification]
    theorem_violations: list[str]

    def as_dict(self) -> dict:
        return {
            "size": self.size,
            "p1_holds": self.p1.holds,
            "p2_holds": self.p2.holds,
            "b": self.b,
            "w": self.w,
            "r": self.r,
            "p1_violations": len(self.p1.violations),
            "p2_violations": len(self.p2.violations),
            "codim2_multiplicity_histogram": _keys_to_str(self.p2.multiplicity_histogram),
            "black_per_member": _keys_to_str(self.black_per_member),
            "black_per_nonmember": _keys_to_str(self.black_per_nonmember),
            "codim2_black_histogram": _keys_to_str(self.codim2_black_histogram),
        }


def _keys_to_str(h: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(h.items())}


def _histogram(values) -> dict[int, int]:
    return dict(sorted(Counter(int(v) for v in values).items()))


def _table(family: HyperplaneFamily) -> CountTable:
    return expected_counts(family.n, family.space.q, family.sign)


def _degree_array(family: HyperplaneFamily) -> np.ndarray:
    return family.indicator.astype(np.int64) @ family.space.incidence.astype(np.int64)


def point_degrees(family: HyperplaneFamily) -> dict[ProjPoint, int]:
    return dict(zip(family.space.points, _degree_array(family).tolist()))


def check_p1(family: HyperplaneFamily) -> P1Report:
    t = _table(family)
    pts = family.space.points
    deg = _degree_array(family)
    black = deg == t.black_degree
    white = deg == t.white_degree
    bad = np.flatnonzero(~(black | white))
    return P1Report(
        holds=len(bad) == 0,
        black=frozenset(pts[i] for i in np.flatnonzero(black)),
        white=frozenset(pts[i] for i in np.flatnonzero(white)),
        violations=[(pts[i], int(deg[i])) for i in bad],
        degrees=deg,
        black_mask=black,
    )


def codim2_multiplicities(family: HyperplaneFamily) -> np.ndarray:
    """Number of members through each codim-2 subspace, in enumeration order."""
    return family.indicator[family.space.pencils].sum(axis=1)


def check_p2(family: HyperplaneFamily) -> P2Report:
    q = family.space.q
    s = codim2_multiplicities(family)
    bad = np.flatnonzero((s >= 1) & (s < q - 1))
    subs = family.space.codim2
    return P2Report(
        holds=len(bad) == 0,
        multiplicity_histogram=_histogram(s),
        violations=[(subs[i], int(s[i])) for i in bad],
        multiplicities=s,
    )


def black_set(family: HyperplaneFamily) -> frozenset[ProjPoint]:
    rep = check_p1(family)
    if not rep.holds:
        raise P1Violated(f"{len(rep.violations)} points have an inadmissible degree")
    return rep.black


def admissible_r(n: int, q: int, sign: Sign) -> set[int]:
    """Values of |family| / q^n that (P1) allows."""
    vals = {q ** (n + 1) - sign.unit}
    if n == 1 and sign is Sign.MINUS:
        vals.add(q * q + q)
    return vals


def r_bounds(n: int, q: int, sign: Sign) -> tuple[int, int]:
    """Range for r obtained from 0 <= (black points of a member) <= (points of a member)."""
    if sign is Sign.PLUS:
        return q ** (n + 1) - q, q ** (n + 1) - 1
    return q ** (n + 1) + 1, q ** (n + 1) + q


def black_count_from_r(n: int, q: int, sign: Sign, r: int) -> Fraction:
    """Number of black points forced by the incident-triple count, given r."""
    s = sign.unit
    num = (q ** n + s) * (s * q ** n * (q ** (2 * n + 2) - 1) - s * r * (q ** n * r - 1))
    return Fraction(num, (q - 1) * (2 * q ** n + s))


def classification_claimed(n: int, q: int) -> bool:
    """False where the characterization makes no claim (n >= 2 with q = 2)."""
    return n == 1 or q > 2


def analyze(family: HyperplaneFamily, classify: bool = True) -> FamilyAnalysis:
    space = family.space
    n, q, sign = family.n, space.q, family.sign
    t = _table(family)
    s_unit = sign.unit
    p1 = check_p1(family)
    p2 = check_p2(family)
    size = len(family)
    b = len(p1.black)
    w = len(p1.white)
    r = size // q ** n if size % q ** n == 0 else None

    black = p1.black_mask.astype(np.int64)
    per_plane = space.incidence.astype(np.int64) @ black
    ind = family.indicator
    black_per_member = _histogram(per_plane[ind])
    black_per_nonmember = _histogram(per_plane[~ind])
    codim2_black = space.codim2_points.astype(np.int64) @ black

    issues: list[str] = []
    if p1.holds:
        th2n, th2n1, th2nm1 = theta(2 * n, q), theta(2 * n + 1, q), theta(2 * n - 1, q)
        if b * t.black_degree + w * t.white_degree != size * th2n:
            issues.append("incidence count: b*black_degree + w*white_degree != |family|*theta(2n)")
        if q ** n * b != s_unit * (q ** (2 * n) * th2n1 - th2n * size):
            issues.append("eliminated incidence count: q^n b does not match |family|")
        if r is None:
            issues.append(f"divisibility: q^n = {q ** n} does not divide |family| = {size}")
        else:
            lo, hi = r_bounds(n, q, sign)
            extra = admissible_r(n, q, sign) - set(range(lo, hi + 1))
            if not (lo <= r <= hi or r in extra):
                issues.append(f"r bounds: r = {r} outside [{lo}, {hi}]")
            if r not in admissible_r(n, q, sign):
                issues.append(f"r value: r = {r} not in {sorted(admissible_r(n, q, sign))}")
            if black_count_from_r(n, q, sign, r) != b:
                issues.append(f"triple count: b = {b} but r predicts {black_count_from_r(n, q, sign, r)}")
            member_black = th2nm1 * s_unit * (q ** (n + 1) - r)
            if set(black_per_member) != {member_black}:
                issues.append(f"member black count: expected {member_black}, got {black_per_member}")
            standard = r == q ** (n + 1) - s_unit
            if standard:
                if b != t.quadric_size:
                    issues.append(f"black total: expected {t.quadric_size}, got {b}")
                if black_per_nonmember and set(black_per_nonmember) != {t.black_in_other_plane}:
                    issues.append(
                        f"non-member black count: expected {t.black_in_other_plane}, got {black_per_nonmember}"
                    )
                if p2.holds:
                    allowed = set(t.codim2_values.values())
                    seen = set(int(x) for x in codim2_black)
                    if not seen <= allowed:
                        issues.append(f"codim-2 black counts {sorted(seen - allowed)} outside {sorted(allowed)}")
            elif r in admissible_r(n, q, sign):
                # the n = 1 elliptic exception r = q^2 + q
                if b != q ** 3 + q ** 2:
                    issues.append(f"black total: expected {q ** 3 + q ** 2}, got {b}")
                if black_per_nonmember and set(black_per_nonmember) != {q * q}:
                    issues.append(f"non-member black count: expected {q * q}, got {black_per_nonmember}")

    verdict = None
    if classify and p1.holds and p2.holds:
        verdict = classify_family(family)
        if verdict.verdict is Verdict.UNKNOWN and classification_claimed(n, q):
            issues.append("classification: family matches none of the known examples")

    return FamilyAnalysis(
        size=size, p1=p1, p2=p2, b=b, w=w, r=r,
        black_per_member=black_per_member,
        black_per_nonmember=black_per_nonmember,
        codim2_black_histogram=_histogram(codim2_black),
        verdict=verdict,
        theorem_violations=issues,
    )


def _mask(space: ProjSpace, pts) -> np.ndarray:
    m = np.zeros(space.num_points, dtype=bool)
    if pts:
        m[space.index_of_vectors(np.array([p.coords for p in pts]))] = True
    return m


def is_quasi_quadric(space: ProjSpace, pts, sign: Sign) -> bool:
    if space.k % 2 == 0:
        raise WrongDimension("quasi-quadrics are tested in odd dimension")
    t = expected_counts((space.k - 1) // 2, space.q, sign)
    sizes = space.incidence.astype(np.int64) @ _mask(space, pts).astype(np.int64)
    return bool(np.isin(sizes, [t.h1, t.h2]).all())


def _require_pg3(space: ProjSpace) -> None:
    if space.k != 3:
        raise WrongDimension(f"operation is defined in PG(3,q), not {space}")


def is_ovoid(space: ProjSpace, pts) -> bool:
    _require_pg3(space)
    q = space.q
    if len(pts) != q * q + 1:
        return False
    on_line = space.codim2_points.astype(np.int64) @ _mask(space, pts).astype(np.int64)
    return bool(on_line.max() <= 2)


def ovoid_secant_family(space: ProjSpace, pts) -> HyperplaneFamily:
    if not is_ovoid(space, pts):
        raise NotAnOvoid("point set is not an ovoid")
    sizes = space.incidence.astype(np.int64) @ _mask(space, pts).astype(np.int64)
    return HyperplaneFamily.from_indices(space, Sign.MINUS, np.flatnonzero(sizes == space.q + 1))


def line_transversal_family(space: ProjSpace, line: Codim2Subspace) -> HyperplaneFamily:
    _require_pg3(space)
    pencil = set(space.pencils[space.codim2_index(line)].tolist())
    return HyperplaneFamily.from_indices(
        space, Sign.MINUS, (i for i in range(space.num_points) if i not in pencil)
    )


def is_blocking_set(space: ProjSpace, pts, plane: Hyperplane) -> tuple[bool, bool]:
    """(blocks every line of the plane, is a minimum blocking set i.e. a line)."""
    _require_pg3(space)
    h = space.hyperplane_index(plane)
    mask = _mask(space, pts)
    if (mask & ~space.incidence[h]).any():
        raise ValueError("points must lie in the plane")
    lines = np.flatnonzero((space.pencils == h).any(axis=1))
    hits = space.codim2_points[lines].astype(np.int64) @ mask.astype(np.int64)
    blocking = bool((hits >= 1).all())
    minimal = blocking and int(mask.sum()) == space.q + 1 and bool(
        (space.codim2_points[lines] == mask).all(axis=1).any()
    )
    return blocking, minimal


# -- classification ---------------------------------------------------------

def _monomials(d: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(d) for j in range(i, d)]


def fit_quadrics(space: ProjSpace, pts, kind: Kind, max_candidates: int = 4096) -> list[QuadraticForm]:
    """Non-singular forms of the given kind whose zero set is exactly ``pts``.

    Solves for all quadratic forms vanishing on ``pts`` and keeps the
    projective solutions that vanish nowhere else.
    """
    F = space.field
    d = space.dim
    mons = _monomials(d)
    rows = [[F.mul(p.coords[i], p.coords[j]) for i, j in mons] for p in pts]
    basis = nullspace(F, rows, len(mons))
    if not basis or F.q ** len(basis) > max_candidates:
        return []
    target = _mask(space, pts)
    found = []
    for combo in itertools.product(range(F.q), repeat=len(basis)):
        lead = next((c for c in combo if c), 0)
        if lead != 1:
            continue  # one representative per projective class
        vec = [0] * len(mons)
        for c, bvec in zip(combo, basis):
            vec = [F.add(x, F.mul(c, y)) for x, y in zip(vec, bvec)]
        coeffs = [[0] * d for _ in range(d)]
        for (i, j), c in zip(mons, vec):
            coeffs[i][j] = c
        try:
            form = QuadraticForm(space, kind, tuple(tuple(r) for r in coeffs))
        except SingularForm:
            continue
        if (form.on_mask == target).all():
            found.append(form)
    return found


def _quadric_witness(family: HyperplaneFamily, black: frozenset) -> Optional[QuadraticForm]:
    kind = Kind.for_sign(family.sign)
    for form in fit_quadrics(family.space, black, kind):
        if parabolic_family(form).members == family.members:
            return form
    return None


def classify_family(family: HyperplaneFamily) -> Classification:
    p1 = check_p1(family)
    if not p1.holds or not check_p2(family).holds:
        raise PreconditionFailed("classification needs (P1) and (P2)")
    space = family.space
    if family.sign is Sign.PLUS or family.n >= 2:
        form = _quadric_witness(family, p1.black)
        if form is None:
            return Classification(Verdict.UNKNOWN)
        kind = Verdict.PARABOLIC_OF_HYPERBOLIC if family.sign is Sign.PLUS else Verdict.PARABOLIC_OF_ELLIPTIC
        return Classification(kind, form)

    # n = 1, elliptic sign
    if is_ovoid(space, p1.black) and ovoid_secant_family(space, p1.black).members == family.members:
        classical = bool(fit_quadrics(space, p1.black, Kind.ELLIPTIC)) or None
        return Classification(Verdict.OVOID_SECANT, p1.black, classical)
    if len(p1.white) == space.q + 1:
        try:
            line = span_codim2(space, p1.white)
        except ValueError:
            line = None
        if line is not None and line_transversal_family(space, line).members == family.members:
            return Classification(Verdict.LINE_TRANSVERSAL, line)
    return Classification(Verdict.UNKNOWN)


def regenerate(space: ProjSpace, c: Classification) -> HyperplaneFamily:
    """Rebuild the family a classification witness describes."""
    if c.verdict in (Verdict.PARABOLIC_OF_HYPERBOLIC, Verdict.PARABOLIC_OF_ELLIPTIC):
        return parabolic_family(c.witness)
    if c.verdict is Verdict.OVOID_SECANT:
        return ovoid_secant_family(space, c.witness)
    if c.verdict is Verdict.LINE_TRANSVERSAL:
        return line_transversal_family(space, c.witness)
    raise ValueError("an Unknown verdict has no witness")

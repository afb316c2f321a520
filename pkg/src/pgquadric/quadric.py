"""Non-singular quadrics of PG(k, q) and the closed-form intersection-number table."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .family import HyperplaneFamily, Sign
from .gf import FieldSpec, nullspace
from .pg import Codim2Subspace, Hyperplane, ProjPoint, ProjSpace, canonical_vector, make_space


class UnsupportedSize(ValueError):
    pass


class NotOnQuadric(ValueError):
    pass


class UnexpectedSectionSize(RuntimeError):
    pass


class SingularForm(ValueError):
    pass


class Kind(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"

    @property
    def sign(self) -> Sign:
        if self is Kind.PARABOLIC:
            raise ValueError("parabolic quadrics carry no sign")
        return Sign.PLUS if self is Kind.HYPERBOLIC else Sign.MINUS

    @classmethod
    def for_sign(cls, sign: Sign) -> "Kind":
        return cls.HYPERBOLIC if sign is Sign.PLUS else cls.ELLIPTIC


class SectionClass(enum.Enum):
    PARABOLIC_SECTION = "ParabolicSection"
    TANGENT_CONE = "TangentCone"
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"


def _exact(num: int, den: int) -> int:
    v, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"{num}/{den} is not an integer")
    return v


@dataclass(frozen=True)
class CountTable:
    n: int
    q: int
    sign: Sign
    quadric_size: int
    parabolic_hyperplanes: int
    h1: int
    h2: int
    c1: int
    c2: int
    c3: int
    c4: Optional[int]
    black_degree: int
    white_degree: int
    sigma_size: int
    black_in_sigma_plane: int
    black_in_other_plane: int

    @property
    def total_points(self) -> int:
        return (self.q ** (2 * self.n + 2) - 1) // (self.q - 1)

    @property
    def codim2_values(self) -> dict[SectionClass, int]:
        vals = {SectionClass.C1: self.c1, SectionClass.C2: self.c2, SectionClass.C3: self.c3}
        if self.c4 is not None:
            vals[SectionClass.C4] = self.c4
        return vals

    def as_dict(self) -> dict:
        return {
            "n": self.n, "q": self.q, "sign": self.sign.value,
            "quadric_size": self.quadric_size,
            "parabolic_hyperplanes": self.parabolic_hyperplanes,
            "h1": self.h1, "h2": self.h2,
            "c1": self.c1, "c2": self.c2, "c3": self.c3, "c4": self.c4,
            "black_degree": self.black_degree, "white_degree": self.white_degree,
            "sigma_size": self.sigma_size,
            "black_in_sigma_plane": self.black_in_sigma_plane,
            "black_in_other_plane": self.black_in_other_plane,
        }


def expected_counts(n: int, q: int, sign: Sign) -> CountTable:
    """Closed-form counts for Q+/-(2n+1, q); ``s`` is +1 on the hyperbolic row."""
    if n < 1 or q < 2:
        raise UnsupportedSize(f"need n >= 1 and q >= 2, got n={n}, q={q}")
    s = sign.unit
    d = q - 1
    quadric = _exact((q ** (n + 1) - s) * (q ** n + s), d)
    c4: Optional[int]
    if n >= 2:
        c4 = 1 + q + _exact(q * q * (q ** (n - 1) - s) * (q ** (n - 2) + s), d)
    elif sign is Sign.PLUS:
        # the q**(n-2) factor is multiplied by q**0 - 1 = 0
        c4 = 1 + q
    else:
        c4 = None  # Q-(3,q) contains no lines
    return CountTable(
        n=n, q=q, sign=sign,
        quadric_size=quadric,
        parabolic_hyperplanes=q ** n * (q ** (n + 1) - s),
        h1=_exact(q ** (2 * n) - 1, d),
        h2=1 + _exact(q * (q ** n - s) * (q ** (n - 1) + s), d),
        c1=_exact((q ** n + s) * (q ** (n - 1) - s), d),
        c2=1 + _exact(q * (q ** (2 * n - 2) - 1), d),
        c3=_exact((q ** n - s) * (q ** (n - 1) + s), d),
        c4=c4,
        black_degree=q ** n * (q ** n - s),
        white_degree=q ** (2 * n),
        sigma_size=q ** n * (q ** (n + 1) - s),
        black_in_sigma_plane=_exact(q ** (2 * n) - 1, d),
        black_in_other_plane=_exact(q ** (2 * n) + s * q ** (n + 1) - s * q ** n - 1, d),
    )


def kind_size(kind: Kind, k: int, q: int) -> int:
    """Point count of the non-singular quadric of this kind in PG(k, q)."""
    if kind is Kind.PARABOLIC:
        if k % 2:
            raise UnsupportedSize("parabolic quadrics live in even dimension")
        return (q ** k - 1) // (q - 1)
    if k % 2 == 0:
        raise UnsupportedSize(f"{kind.value} quadrics live in odd dimension")
    return expected_counts((k - 1) // 2, q, kind.sign).quadric_size


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x) = sum_{i<=j} coeffs[i][j] x_i x_j; coefficients below the diagonal are zero."""

    space: ProjSpace
    kind: Kind
    coeffs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = self.space.dim
        if len(self.coeffs) != d or any(len(r) != d for r in self.coeffs):
            raise ValueError("coefficient matrix has the wrong shape")
        if any(self.coeffs[i][j] for i in range(d) for j in range(i)):
            raise ValueError("coefficient matrix must be upper triangular")
        if not is_nonsingular(self):
            raise SingularForm("quadratic form is singular")
        expected = kind_size(self.kind, self.space.k, self.space.q)
        if int(self.on_mask.sum()) != expected:
            raise SingularForm(
                f"form has {int(self.on_mask.sum())} points, a {self.kind.value} quadric has {expected}"
            )

    @property
    def n(self) -> int:
        return (self.space.k - 1) // 2

    @property
    def sign(self) -> Sign:
        return self.kind.sign

    @cached_property
    def counts(self) -> CountTable:
        return expected_counts(self.n, self.space.q, self.sign)

    @cached_property
    def values(self) -> np.ndarray:
        """Q evaluated on every canonical point."""
        return evaluate_vectors(self.space.field, self.coeffs, self.space.vectors)

    @cached_property
    def on_mask(self) -> np.ndarray:
        m = self.values == 0
        m.setflags(write=False)
        return m

    @cached_property
    def hyperplane_sections(self) -> np.ndarray:
        return self.space.incidence.astype(np.int64) @ self.on_mask.astype(np.int64)

    @cached_property
    def codim2_sections(self) -> np.ndarray:
        return self.space.codim2_points.astype(np.int64) @ self.on_mask.astype(np.int64)

    def polar_matrix(self) -> list[list[int]]:
        """M with B(x, y) = x^T M y for the bilinearization B(x,y) = Q(x+y) - Q(x) - Q(y)."""
        F = self.space.field
        d = self.space.dim
        M = [[0] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                if i < j:
                    M[i][j] = self.coeffs[i][j]
                elif i > j:
                    M[i][j] = self.coeffs[j][i]
                else:
                    M[i][i] = F.add(self.coeffs[i][i], self.coeffs[i][i])
        return M


def evaluate_vectors(F: FieldSpec, coeffs, vecs: np.ndarray) -> np.ndarray:
    vecs = np.asarray(vecs, dtype=np.int64)
    acc = np.zeros(vecs.shape[:-1], dtype=np.int64)
    d = len(coeffs)
    for i in range(d):
        for j in range(i, d):
            c = coeffs[i][j]
            if c:
                term = F.mul_arrays(c, F.mul_arrays(vecs[..., i], vecs[..., j]))
                acc = F.add_arrays(acc, term)
    return acc


def evaluate(form: QuadraticForm, pt: ProjPoint) -> int:
    F = form.space.field
    x = pt.coords
    acc = 0
    for i, row in enumerate(form.coeffs):
        for j in range(i, len(row)):
            if row[j]:
                acc = F.add(acc, F.mul(row[j], F.mul(x[i], x[j])))
    return acc


def is_nonsingular(form: QuadraticForm) -> bool:
    """No nonzero vector of the polar radical is a zero of Q."""
    F = form.space.field
    radical = nullspace(F, form.polar_matrix(), form.space.dim)
    if not radical:
        return True
    # the radical is small: enumerate its projective points
    for combo in itertools.product(range(F.q), repeat=len(radical)):
        if not any(combo):
            continue
        v = [0] * form.space.dim
        for c, b in zip(combo, radical):
            v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
        if evaluate(form, ProjPoint(tuple(v))) == 0:
            return False
    return True


def _norm_coefficients(F: FieldSpec) -> tuple[int, int, int]:
    """(a, b, c) with a*x0^2 + b*x0*x1 + c*x1^2 irreducible over F."""
    if F.p != 2:
        d = next(x for x in range(1, F.q) if not F.is_square(x))
        return 1, 0, F.neg(d)
    c = next(x for x in range(1, F.q) if _absolute_trace(F, x) == 1)
    return 1, 1, c


def _absolute_trace(F: FieldSpec, c: int) -> int:
    acc, t = 0, c
    for _ in range(F.e):
        acc = F.add(acc, t)
        t = F.mul(t, t)
    return acc


def standard_form(kind: Kind, n: int, F: FieldSpec) -> QuadraticForm:
    """Hyperbolic x0x1 + x2x3 + ...; elliptic N(x0,x1) + x2x3 + ...; parabolic x0^2 + x1x2 + ..."""
    if n < 1:
        raise UnsupportedSize("need n >= 1")
    k = 2 * n if kind is Kind.PARABOLIC else 2 * n + 1
    try:
        space = make_space(k, F.q)
    except ValueError as exc:
        raise UnsupportedSize(str(exc)) from exc
    d = k + 1
    c = [[0] * d for _ in range(d)]
    if kind is Kind.PARABOLIC:
        c[0][0] = 1
        start = 1
    elif kind is Kind.HYPERBOLIC:
        start = 0
    else:
        a, b, cc = _norm_coefficients(F)
        c[0][0], c[0][1], c[1][1] = a, b, cc
        start = 2
    for i in range(start, d, 2):
        c[i][i + 1] = 1
    return QuadraticForm(space, kind, tuple(tuple(r) for r in c))


def point_set(form: QuadraticForm) -> frozenset[ProjPoint]:
    pts = form.space.points
    return frozenset(pts[i] for i in np.flatnonzero(form.on_mask))


def polar_hyperplane(form: QuadraticForm, pt: ProjPoint) -> Hyperplane:
    if evaluate(form, pt) != 0:
        raise NotOnQuadric(f"{pt} is not on the quadric")
    F = form.space.field
    M = form.polar_matrix()
    cov = []
    for j in range(form.space.dim):
        acc = 0
        for i, x in enumerate(pt.coords):
            acc = F.add(acc, F.mul(x, M[i][j]))
        cov.append(acc)
    return Hyperplane(canonical_vector(F, cov))


def _require_odd(form: QuadraticForm) -> None:
    if form.kind is Kind.PARABOLIC:
        raise UnsupportedSize("section classes are defined for quadrics in odd dimension")


def _hyperplane_class(form: QuadraticForm, size: int) -> SectionClass:
    t = form.counts
    if size == t.h1:
        return SectionClass.PARABOLIC_SECTION
    if size == t.h2:
        return SectionClass.TANGENT_CONE
    raise UnexpectedSectionSize(f"hyperplane section of size {size}; expected {t.h1} or {t.h2}")


def _codim2_class(form: QuadraticForm, size: int) -> SectionClass:
    for cls, value in form.counts.codim2_values.items():
        if size == value:
            return cls
    raise UnexpectedSectionSize(f"codim-2 section of size {size} not in {form.counts.codim2_values}")


def classify_hyperplane(form: QuadraticForm, h: Hyperplane) -> SectionClass:
    _require_odd(form)
    return _hyperplane_class(form, int(form.hyperplane_sections[form.space.hyperplane_index(h)]))


def classify_codim2(form: QuadraticForm, sub: Codim2Subspace) -> SectionClass:
    _require_odd(form)
    return _codim2_class(form, int(form.codim2_sections[form.space.codim2_index(sub)]))


def hyperplane_classes(form: QuadraticForm) -> list[SectionClass]:
    _require_odd(form)
    return [_hyperplane_class(form, int(s)) for s in form.hyperplane_sections]


def parabolic_family(form: QuadraticForm) -> HyperplaneFamily:
    _require_odd(form)
    h1 = form.counts.h1
    idx = np.flatnonzero(form.hyperplane_sections == h1)
    return HyperplaneFamily.from_indices(form.space, form.sign, idx)

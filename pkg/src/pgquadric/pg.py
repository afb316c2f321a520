"""Points, hyperplanes and codimension-2 subspaces of PG(k, q).

Every object is stored by a canonical coordinate vector whose leftmost
nonzero entry is 1.  Hyperplanes use the same canonical vectors as points
(as covectors), so ``space.hyperplane_index`` and ``space.point_index``
share one encoding.  Codimension-2 subspaces are kept in the dual: the
reduced row-echelon basis of the 2-space of linear forms vanishing on them.

Enumeration order is lexicographic on coordinate tuples (order tag
``lex-v1``) and is part of the output contract.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .gf import FieldSpec, make_field, nullspace, rref

ORDER_TAG = "lex-v1"
MAX_VECTORS = 2**22


class ZeroVector(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ProjPoint:
    coords: tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


@dataclass(frozen=True, order=True)
class Hyperplane:
    covector: tuple[int, ...]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.covector)) + "]"


@dataclass(frozen=True, order=True)
class Codim2Subspace:
    dual_basis: tuple[tuple[int, ...], tuple[int, ...]]

    def __str__(self) -> str:
        return "<" + " ; ".join(",".join(map(str, r)) for r in self.dual_basis) + ">"


def theta(k: int, q: int) -> int:
    """Number of points of PG(k, q)."""
    return (q ** (k + 1) - 1) // (q - 1)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def canonical_vector(F: FieldSpec, raw: Sequence[int]) -> tuple[int, ...]:
    lead = next((x for x in raw if x), 0)
    if lead == 0:
        raise ZeroVector("the zero vector has no projective class")
    if lead == 1:
        return tuple(int(x) for x in raw)
    s = F.inv(lead)
    return tuple(F.mul(s, x) for x in raw)


def canonicalize(F: FieldSpec, raw: Sequence[int]) -> ProjPoint:
    return ProjPoint(canonical_vector(F, raw))


@dataclass(frozen=True)
class ProjSpace:
    k: int
    field: FieldSpec

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("projective dimension must be at least 1")
        if self.field.q ** (self.k + 1) > MAX_VECTORS:
            raise ValueError(f"PG({self.k},{self.field.q}) is too large to enumerate")

    def __str__(self) -> str:
        return f"PG({self.k},{self.q})"

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def dim(self) -> int:
        """Vector-space dimension k + 1."""
        return self.k + 1

    # -- encodings ---------------------------------------------------------

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        """Base-q integer code of coordinate rows (first coordinate most significant)."""
        vecs = np.asarray(vecs, dtype=np.int64)
        code = np.zeros(vecs.shape[:-1], dtype=np.int64)
        for i in range(self.dim):
            code = code * self.q + vecs[..., i]
        return code

    @cached_property
    def vectors(self) -> np.ndarray:
        """Canonical representatives, one row per point, in lexicographic order."""
        q, d = self.q, self.dim
        rows = []
        for lead in range(d):
            tail = np.array(list(itertools.product(range(q), repeat=d - lead - 1)),
                            dtype=np.int64).reshape(q ** (d - lead - 1), d - lead - 1)
            block = np.zeros((len(tail), d), dtype=np.int64)
            block[:, lead] = 1
            block[:, lead + 1:] = tail
            rows.append(block)
        allrows = np.concatenate(rows)
        order = np.argsort(self.encode(allrows), kind="stable")
        out = allrows[order]
        out.setflags(write=False)
        return out

    @cached_property
    def _lookup(self) -> np.ndarray:
        table = np.full(self.q ** self.dim, -1, dtype=np.int64)
        table[self.encode(self.vectors)] = np.arange(len(self.vectors))
        return table

    def index_of_vectors(self, vecs: np.ndarray) -> np.ndarray:
        """Indices of canonical vectors (rows); -1 where a row is not canonical."""
        return self._lookup[self.encode(vecs)]

    def point_index(self, pt: ProjPoint) -> int:
        return int(self._lookup[self.encode(np.array(pt.coords))])

    def hyperplane_index(self, h: Hyperplane) -> int:
        return int(self._lookup[self.encode(np.array(h.covector))])

    @property
    def num_points(self) -> int:
        return len(self.vectors)

    @cached_property
    def points(self) -> tuple[ProjPoint, ...]:
        return tuple(ProjPoint(tuple(int(x) for x in row)) for row in self.vectors)

    @cached_property
    def hyperplanes(self) -> tuple[Hyperplane, ...]:
        return tuple(Hyperplane(p.coords) for p in self.points)

    # -- incidence ---------------------------------------------------------

    @cached_property
    def incidence(self) -> np.ndarray:
        """Boolean matrix, rows = hyperplanes, columns = points."""
        V = self.vectors
        dots = self.field.dot_arrays(V[:, None, :], V[None, :, :])
        inc = dots == 0
        inc.setflags(write=False)
        return inc

    # -- codimension 2 -----------------------------------------------------

    @cached_property
    def codim2_bases(self) -> np.ndarray:
        """Array (C, 2, k+1) of RREF dual bases, lexicographic order."""
        if self.k < 2:
            raise ValueError("codimension-2 subspaces need k >= 2")
        q, d = self.q, self.dim
        blocks = []
        for i, j in itertools.combinations(range(d), 2):
            free1 = [c for c in range(i + 1, d) if c != j]
            free2 = list(range(j + 1, d))
            for vals in itertools.product(range(q), repeat=len(free1) + len(free2)):
                m = np.zeros((2, d), dtype=np.int64)
                m[0, i] = 1
                m[1, j] = 1
                m[0, free1] = vals[:len(free1)]
                m[1, free2] = vals[len(free1):]
                blocks.append(m)
        arr = np.array(blocks, dtype=np.int64)
        key = self.encode(arr[:, 0]) * (q ** d) + self.encode(arr[:, 1])
        arr = arr[np.argsort(key, kind="stable")]
        arr.setflags(write=False)
        return arr

    @cached_property
    def codim2(self) -> tuple[Codim2Subspace, ...]:
        return tuple(
            Codim2Subspace((tuple(int(x) for x in m[0]), tuple(int(x) for x in m[1])))
            for m in self.codim2_bases
        )

    @cached_property
    def _codim2_lookup(self) -> dict[Codim2Subspace, int]:
        return {c: i for i, c in enumerate(self.codim2)}

    def codim2_index(self, sub: Codim2Subspace) -> int:
        return self._codim2_lookup[sub]

    @cached_property
    def pencils(self) -> np.ndarray:
        """Array (C, q+1): hyperplane indices through each codim-2 subspace.

        With RREF rows r1, r2 the forms r1 + t*r2 keep r1's leading 1, so the
        pencil {r1 + t*r2 : t in GF(q)} + {r2} is already canonical.
        """
        B = self.codim2_bases
        F = self.field
        cols = []
        for t in range(self.q):
            cols.append(self.index_of_vectors(F.add_arrays(B[:, 0], F.mul_arrays(t, B[:, 1]))))
        cols.append(self.index_of_vectors(B[:, 1]))
        out = np.stack(cols, axis=1)
        assert (out >= 0).all()
        out.setflags(write=False)
        return out

    @cached_property
    def codim2_points(self) -> np.ndarray:
        """Boolean matrix (C, points): membership of points in each codim-2 subspace."""
        B = self.codim2_bases
        inc = self.incidence
        a = self.index_of_vectors(B[:, 0])
        b = self.index_of_vectors(B[:, 1])
        out = inc[a] & inc[b]
        out.setflags(write=False)
        return out


@functools.lru_cache(maxsize=None)
def make_space(k: int, q: int) -> ProjSpace:
    return ProjSpace(k, make_field(q))


def enumerate_points(space: ProjSpace) -> list[ProjPoint]:
    return list(space.points)


def enumerate_hyperplanes(space: ProjSpace) -> list[Hyperplane]:
    return list(space.hyperplanes)


def enumerate_codim2(space: ProjSpace) -> list[Codim2Subspace]:
    return list(space.codim2)


def incident(F: FieldSpec, pt: ProjPoint, h: Hyperplane) -> bool:
    acc = 0
    for a, b in zip(h.covector, pt.coords):
        acc = F.add(acc, F.mul(a, b))
    return acc == 0


def hyperplanes_through(space: ProjSpace, sub: Codim2Subspace) -> list[Hyperplane]:
    idx = space.pencils[space.codim2_index(sub)]
    return [space.hyperplanes[i] for i in idx]


def points_of_hyperplane(space: ProjSpace, h: Hyperplane) -> list[ProjPoint]:
    row = space.incidence[space.hyperplane_index(h)]
    return [space.points[j] for j in np.flatnonzero(row)]


def points_of_codim2(space: ProjSpace, sub: Codim2Subspace) -> list[ProjPoint]:
    row = space.codim2_points[space.codim2_index(sub)]
    return [space.points[j] for j in np.flatnonzero(row)]


def meet(space: ProjSpace, h1: Hyperplane, h2: Hyperplane) -> Codim2Subspace:
    """The codim-2 subspace where two distinct hyperplanes intersect."""
    rows, pivots = rref(space.field, [h1.covector, h2.covector])
    if len(pivots) != 2:
        raise ValueError("hyperplanes coincide")
    return Codim2Subspace((tuple(rows[0]), tuple(rows[1])))


def span_codim2(space: ProjSpace, points: Iterable[ProjPoint]) -> Codim2Subspace:
    """The codim-2 subspace whose dual basis annihilates the given points.

    Raises ValueError when the points do not span a subspace of codimension 2.
    """
    F = space.field
    pts = [p.coords for p in points]
    basis = nullspace(F, pts, space.dim)
    if len(basis) != 2:
        raise ValueError("points do not span a codimension-2 subspace")
    rows, _ = rref(F, basis)
    return Codim2Subspace((tuple(rows[0]), tuple(rows[1])))

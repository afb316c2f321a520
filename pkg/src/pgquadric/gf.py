"""Table-driven arithmetic in GF(q), q = p**e.

Elements are plain integers in ``range(q)``: the base-p digits of the
integer (little-endian) are the coefficients of the polynomial
representative modulo the reduction polynomial.  Scalar methods work on
Python ints; the ``*_arrays`` variants work elementwise on numpy arrays.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

MAX_ORDER = 2**16


class NotAPrimePower(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``, or raise NotAPrimePower."""
    if q < 2:
        raise NotAPrimePower(f"{q} is not a prime power")
    p = next(d for d in itertools.count(2) if q % d == 0)
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise NotAPrimePower(f"{q} is not a prime power")
    return p, e


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except NotAPrimePower:
        return False
    return True


# -- polynomials over GF(p): coefficient lists, low degree first --------------

def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(list(poly), list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e (low degree first)."""
    # product() yields (c0, ..., c_{e-1}) in lexicographic order
    for low in itertools.product(range(p), repeat=e):
        poly = low + (1,)
        if _is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    q: int
    reduction_poly: tuple[int, ...]
    exp: np.ndarray = field(repr=False, compare=False)
    log: np.ndarray = field(repr=False, compare=False)
    generator: int = field(repr=False, compare=False)
    _exp_list: list = field(repr=False, compare=False)
    _log_list: list = field(repr=False, compare=False)
    _add_table: np.ndarray | None = field(repr=False, compare=False)

    def __str__(self) -> str:
        return f"GF({self.q})"

    # -- scalar arithmetic -----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(self._add_table[a, b]) if self._add_table is not None else self._digit_add(a, b, 1)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._digit_add(0, a, -1)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        return self._exp_list[(self.q - 1 - self._log_list[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return self._exp_list[(self._log_list[a] * k) % (self.q - 1)]

    def elements(self) -> list[int]:
        return list(range(self.q))

    def is_square(self, a: int) -> bool:
        return a == 0 or self.p == 2 or self._log_list[a] % 2 == 0

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _digit_add(self, a: int, b: int, sign: int) -> int:
        out, place = 0, 1
        for _ in range(self.e):
            a, da = divmod(a, self.p)
            b, db = divmod(b, self.p)
            out += ((da + sign * db) % self.p) * place
            place *= self.p
        return out

    # -- vectorized arithmetic -------------------------------------------------

    def add_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, b]
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        for _ in range(self.e):
            out += (((a // place) % self.p + (b // place) % self.p) % self.p) * place
            place *= self.p
        return out

    def mul_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        prod = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def dot_arrays(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Field dot product along the last axis (broadcasting)."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        acc = self.mul_arrays(u[..., 0], v[..., 0])
        for i in range(1, u.shape[-1]):
            acc = self.add_arrays(acc, self.mul_arrays(u[..., i], v[..., i]))
        return acc


def _poly_mulmod(a: list[int], b: list[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, m, p)


def _encode(coeffs: Sequence[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(coeffs))


def _decode(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        a, d = divmod(a, p)
        out.append(d)
    while out and out[-1] == 0:
        out.pop()
    return out


@functools.lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """Build GF(q) with exp/log tables; deterministic for every supported q."""
    p, e = factor_prime_power(q)
    if q > MAX_ORDER:
        raise ValueError(f"q={q} exceeds the supported order {MAX_ORDER}")
    poly = smallest_irreducible(p, e)

    if e == 1:
        gen = next(
            g for g in range(1, q)
            if q == 2 or all(pow(g, (q - 1) // r, q) != 1 for r in _prime_factors(q - 1))
        )
        seq = [pow(gen, i, q) for i in range(q - 1)]
    else:
        gen = next(g for g in range(p, q) if _is_primitive(g, poly, p, e))
        seq = _powers(gen, poly, p, e)

    exp = seq + seq  # doubled so log[a] + log[b] never needs a reduction
    log = [0] * q
    for i, x in enumerate(seq):
        log[x] = i
    exp_arr = np.array(exp + [0], dtype=np.int64)
    log_arr = np.array(log, dtype=np.int64)

    add_table = None
    if e > 1 and p != 2 and q <= 256:
        add_table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            da = _decode(a, p, e) + [0] * e
            for b in range(q):
                db = _decode(b, p, e) + [0] * e
                add_table[a, b] = _encode([(x + y) % p for x, y in zip(da[:e], db[:e])], p)

    return FieldSpec(
        p=p, e=e, q=q, reduction_poly=poly,
        exp=exp_arr, log=log_arr, generator=gen,
        _exp_list=exp, _log_list=log, _add_table=add_table,
    )


def _poly_powmod(g: list[int], k: int, m: Sequence[int], p: int) -> list[int]:
    result, base = [1], g
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        k >>= 1
    return result


def _is_primitive(g: int, poly: Sequence[int], p: int, e: int) -> bool:
    q = p**e
    gp = _decode(g, p, e)
    return all(_poly_powmod(gp, (q - 1) // r, poly, p) != [1] for r in _prime_factors(q - 1))


def _powers(g: int, poly: Sequence[int], p: int, e: int) -> list[int]:
    """g**0 .. g**(q-2) as encodings."""
    q = p**e
    gd = _decode(g, p, e) + [0] * e
    if any(gd[2:]):
        cur, gp, out = [1], _decode(g, p, e), []
        for _ in range(q - 1):
            out.append(_encode(cur, p))
            cur = _poly_mulmod(cur, gp, poly, p)
        return out
    # linear generator a1*x + a0: one shift-and-reduce per step
    a0, a1 = gd[0], gd[1]
    v = [1] + [0] * (e - 1)
    out = []
    for _ in range(q - 1):
        out.append(_encode(v, p))
        top = v[-1]
        xv = [0] + v[:-1]
        xv = [(c - top * poly[i]) % p for i, c in enumerate(xv)]
        v = [(a1 * x + a0 * y) % p for x, y in zip(xv, v)]
    return out


def _prime_factors(m: int) -> list[int]:
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def prime_powers_up_to(bound: int) -> list[int]:
    return [q for q in range(2, bound + 1) if is_prime_power(q)]


# -- small dense linear algebra over GF(q) --------------------------------------

def rref(F: FieldSpec, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = F.neg(m[i][c])
                m[i] = [F.add(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {x : rows @ x = 0}."""
    red, pivots = rref(F, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = F.neg(row[f])
        basis.append(v)
    return basis


def rank(F: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows)[1])


def mat_vec(F: FieldSpec, M: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out


def mat_inv(F: FieldSpec, M: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(M)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    red, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise DivisionByZero("matrix is singular")
    return [row[n:] for row in red]

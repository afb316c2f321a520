"""Hypothesis-driven invariants across the layers."""

import hypothesis.strategies as st
import numpy as np
from hypothesis import HealthCheck, assume, given, settings

from conftest import std_form
from pgquadric import HyperplaneFamily, Sign, make_field, make_space
from pgquadric.gf import DivisionByZero, mat_inv, mat_vec, prime_powers_up_to
from pgquadric.pg import canonical_vector, canonicalize, gaussian_binomial, theta
from pgquadric.quadric import expected_counts, parabolic_family, point_set
from pgquadric.sigma import analyze, line_transversal_family, ovoid_secant_family

FIELD_ORDERS = prime_powers_up_to(256)


@st.composite
def field_and_elements(draw, count=3, orders=FIELD_ORDERS):
    q = draw(st.sampled_from(orders))
    return make_field(q), [draw(st.integers(0, q - 1)) for _ in range(count)]


@given(field_and_elements())
def test_field_axioms_sampled(fe):
    F, (a, b, c) = fe
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.sub(F.add(a, b), b) == a
    if b:
        assert F.mul(F.div(a, b), b) == a


@given(field_and_elements(count=2))
def test_frobenius_sampled(fe):
    F, (a, b) = fe
    assert F.power(F.add(a, b), F.p) == F.add(F.power(a, F.p), F.power(b, F.p))


@st.composite
def vector_and_scalar(draw):
    q = draw(st.sampled_from(prime_powers_up_to(16)))
    d = draw(st.integers(2, 6))
    v = draw(st.lists(st.integers(0, q - 1), min_size=d, max_size=d))
    assume(any(v))
    lam = draw(st.integers(1, q - 1))
    return make_field(q), v, lam


@given(vector_and_scalar())
def test_canonicalization_idempotent_and_projective(data):
    F, v, lam = data
    c = canonical_vector(F, v)
    assert canonical_vector(F, c) == c
    assert canonicalize(F, [F.mul(lam, x) for x in v]) == canonicalize(F, v)
    assert next(x for x in c if x) == 1


@given(st.sampled_from([(k, q) for k in range(1, 6) for q in (2, 3, 4) if q ** (k + 1) <= 4096]))
@settings(max_examples=20, deadline=None)
def test_duality_counts(kq):
    k, q = kq
    space = make_space(k, q)
    assert len(space.points) == len(space.hyperplanes) == theta(k, q)
    assert (space.incidence.sum(axis=0) == theta(k - 1, q)).all()
    if k >= 2 and len(space.hyperplanes) <= 400:
        assert len(space.codim2) == gaussian_binomial(k + 1, 2, q)


@given(st.sampled_from(prime_powers_up_to(16)), st.integers(1, 6), st.sampled_from(list(Sign)))
def test_count_table_identities(q, n, sign):
    t = expected_counts(n, q, sign)
    assert t.parabolic_hyperplanes + t.quadric_size == theta(2 * n + 1, q)
    assert t.sigma_size % q ** n == 0
    # black and white incidences add up for the canonical family
    w = t.total_points - t.quadric_size
    assert t.quadric_size * t.black_degree + w * t.white_degree == t.sigma_size * theta(2 * n, q)


def _invertible_matrices(q: int, d: int = 4):
    F = make_field(q)
    entries = st.lists(st.integers(0, q - 1), min_size=d * d, max_size=d * d)

    def to_inverse(flat):
        try:
            return mat_inv(F, [flat[i * d:(i + 1) * d] for i in range(d)])
        except DivisionByZero:
            return None

    return entries.map(to_inverse).filter(lambda m: m is not None)


def _transform(family: HyperplaneFamily, Minv) -> HyperplaneFamily:
    """Image of the family under x -> Mx: covectors map through the inverse transpose."""
    F = family.space.field
    d = family.space.dim
    Mt = [[Minv[j][i] for j in range(d)] for i in range(d)]
    members = [canonical_vector(F, mat_vec(F, Mt, h.covector)) for h in family.members]
    idx = family.space.index_of_vectors(np.array(members))
    return HyperplaneFamily.from_indices(family.space, family.sign, idx)


def _fingerprint(a):
    return (a.size, a.b, a.w, a.r, a.p1.holds, a.p2.holds, a.p2.multiplicity_histogram,
            a.black_per_member, a.black_per_nonmember, a.codim2_black_histogram,
            a.verdict.verdict if a.verdict else None, len(a.theorem_violations))


def _families(q):
    space = make_space(3, q)
    yield parabolic_family(std_form(1, q, Sign.PLUS))
    yield parabolic_family(std_form(1, q, Sign.MINUS))
    yield line_transversal_family(space, space.codim2[0])
    yield ovoid_secant_family(space, point_set(std_form(1, q, Sign.MINUS)))
    yield HyperplaneFamily.from_indices(space, Sign.PLUS, range(0, space.num_points, 3))


@given(st.sampled_from([2, 3]).flatmap(lambda q: st.tuples(st.just(q), _invertible_matrices(q))))
@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_analysis_invariant_under_coordinate_change(q_and_inverse):
    q, Minv = q_and_inverse
    for fam in _families(q):
        image = _transform(fam, Minv)
        assert _fingerprint(analyze(image)) == _fingerprint(analyze(fam))

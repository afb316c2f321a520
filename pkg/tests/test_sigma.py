import numpy as np
import pytest

from conftest import std_form
from pgquadric import HyperplaneFamily, Sign
from pgquadric.pg import make_space
from pgquadric.quadric import parabolic_family, point_set
from pgquadric.sigma import (
    NotAnOvoid,
    P1Violated,
    PreconditionFailed,
    Verdict,
    WrongDimension,
    analyze,
    black_set,
    check_p1,
    check_p2,
    classify_family,
    is_blocking_set,
    is_ovoid,
    is_quasi_quadric,
    line_transversal_family,
    ovoid_secant_family,
    point_degrees,
    regenerate,
)


def test_point_degrees_canonical_plus():
    form = std_form(1, 2, Sign.PLUS)
    degrees = point_degrees(parabolic_family(form))
    on = point_set(form)
    assert all(d == (2 if p in on else 4) for p, d in degrees.items())


def test_point_degrees_all_planes():
    space = make_space(3, 2)
    fam = HyperplaneFamily.from_indices(space, Sign.PLUS, range(15))
    assert set(point_degrees(fam).values()) == {7}


def test_point_degrees_line_transversal_pg33():
    space = make_space(3, 3)
    line = space.codim2[0]
    degrees = point_degrees(line_transversal_family(space, line))
    on_line = set(space.points[i] for i in np.flatnonzero(space.codim2_points[0]))
    assert all(d == (9 if p in on_line else 12) for p, d in degrees.items())


def test_check_p1_examples():
    rep = check_p1(parabolic_family(std_form(1, 3, Sign.MINUS)))
    assert rep.holds and len(rep.black) == 10 and len(rep.white) == 30
    single = HyperplaneFamily.from_indices(make_space(3, 2), Sign.PLUS, [0])
    assert not check_p1(single).holds
    with pytest.raises(P1Violated):
        black_set(single)
    space = make_space(3, 4)
    ovoid = point_set(std_form(1, 4, Sign.MINUS))
    rep = check_p1(ovoid_secant_family(space, ovoid))
    assert rep.holds and len(rep.black) == 17


def test_check_p2_examples():
    single2 = HyperplaneFamily.from_indices(make_space(3, 2), Sign.PLUS, [0])
    assert check_p2(single2).holds
    single4 = HyperplaneFamily.from_indices(make_space(3, 4), Sign.PLUS, [0])
    assert not check_p2(single4).holds
    space = make_space(3, 3)
    assert check_p2(line_transversal_family(space, space.codim2[5])).holds


def test_analyze_examples():
    a = analyze(parabolic_family(std_form(1, 3, Sign.PLUS)))
    assert a.r == 8 and not a.theorem_violations
    space = make_space(3, 3)
    a = analyze(line_transversal_family(space, space.codim2[0]))
    assert a.r == 12 and not a.theorem_violations
    assert a.verdict.verdict is Verdict.LINE_TRANSVERSAL
    a = analyze(parabolic_family(std_form(1, 2, Sign.MINUS)))
    assert a.b == 5 and a.black_per_member == {3: 10}


def test_black_set_examples():
    form = std_form(1, 2, Sign.PLUS)
    assert black_set(parabolic_family(form)) == point_set(form)
    form = std_form(2, 3, Sign.MINUS)
    assert len(black_set(parabolic_family(form))) == 112
    space = make_space(3, 2)
    line = space.codim2[7]
    on_line = set(space.points[i] for i in np.flatnonzero(space.codim2_points[7]))
    assert black_set(line_transversal_family(space, line)) == frozenset(space.points) - on_line


def test_quasi_quadric_examples():
    space3 = make_space(3, 3)
    assert is_quasi_quadric(space3, point_set(std_form(1, 3, Sign.MINUS)), Sign.MINUS)
    space2 = make_space(3, 2)
    off_line = [space2.points[i] for i in np.flatnonzero(~space2.codim2_points[0])]
    assert not is_quasi_quadric(space2, off_line, Sign.MINUS)
    assert is_quasi_quadric(make_space(3, 4), point_set(std_form(1, 4, Sign.MINUS)), Sign.MINUS)
    with pytest.raises(WrongDimension):
        is_quasi_quadric(make_space(2, 2), [], Sign.PLUS)


def test_ovoid_examples():
    space = make_space(3, 2)
    assert is_ovoid(space, point_set(std_form(1, 2, Sign.MINUS)))
    assert not is_ovoid(space, point_set(std_form(1, 2, Sign.PLUS)))
    line_pts = [space.points[i] for i in np.flatnonzero(space.codim2_points[0])]
    others = [p for p in space.points if p not in line_pts][:2]
    assert not is_ovoid(space, line_pts + others)
    with pytest.raises(NotAnOvoid):
        ovoid_secant_family(space, line_pts + others)


@pytest.mark.parametrize("q,size", [(2, 10), (4, 68)])
def test_ovoid_secant_sizes(q, size):
    space = make_space(3, q)
    fam = ovoid_secant_family(space, point_set(std_form(1, q, Sign.MINUS)))
    assert len(fam) == size
    assert check_p1(fam).holds and check_p2(fam).holds


@pytest.mark.parametrize("q", [2, 3])
def test_line_transversal_excludes_pencil(q):
    space = make_space(3, q)
    for c in (0, len(space.codim2) - 1):
        fam = line_transversal_family(space, space.codim2[c])
        assert len(fam) == q ** 3 + q ** 2
        assert set(range(space.num_points)) - set(fam.indices) == set(space.pencils[c].tolist())


def test_blocking_sets():
    space = make_space(3, 3)
    plane = space.hyperplanes[0]
    h = space.hyperplane_index(plane)
    c = int(np.flatnonzero((space.pencils == h).any(axis=1))[0])
    line_pts = [space.points[i] for i in np.flatnonzero(space.codim2_points[c])]
    assert is_blocking_set(space, line_pts, plane) == (True, True)
    assert is_blocking_set(space, line_pts[:-1], plane)[0] is False
    all_pts = [space.points[i] for i in np.flatnonzero(space.incidence[h])]
    assert is_blocking_set(space, all_pts, plane) == (True, False)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_classify_canonical_plus(q):
    fam = parabolic_family(std_form(1, q, Sign.PLUS))
    c = classify_family(fam)
    assert c.verdict is Verdict.PARABOLIC_OF_HYPERBOLIC
    assert regenerate(fam.space, c).members == fam.members


def test_classify_other_kinds():
    space = make_space(3, 3)
    fam = line_transversal_family(space, space.codim2[3])
    c = classify_family(fam)
    assert c.verdict is Verdict.LINE_TRANSVERSAL and c.witness == space.codim2[3]
    fam = parabolic_family(std_form(2, 3, Sign.MINUS))
    assert classify_family(fam).verdict is Verdict.PARABOLIC_OF_ELLIPTIC
    fam = parabolic_family(std_form(1, 3, Sign.MINUS))
    c = classify_family(fam)
    assert c.verdict is Verdict.OVOID_SECANT and c.classical is True
    assert regenerate(space, c).members == fam.members
    with pytest.raises(PreconditionFailed):
        classify_family(HyperplaneFamily.from_indices(space, Sign.PLUS, [0]))


def test_invalid_family_rejected():
    with pytest.raises(ValueError):
        HyperplaneFamily.from_indices(make_space(2, 2), Sign.PLUS, [0])
    with pytest.raises(ValueError):
        HyperplaneFamily(make_space(3, 2), Sign.PLUS, frozenset())


def test_analysis_of_broken_family_reports_p1():
    fam = parabolic_family(std_form(1, 3, Sign.PLUS))
    broken = HyperplaneFamily.from_indices(fam.space, fam.sign, fam.indices[1:])
    a = analyze(broken)
    assert not a.p1.holds and a.verdict is None

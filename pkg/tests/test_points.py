from __future__ import annotations

import math
from fractions import Fraction

import pytest

from rlalg.points import ProjectivePoint, classify_points, real_roots, solve_affine
from rlalg.poly import parse

XY = ("x", "y")
XYZ = ("x", "y", "z")


def test_real_roots_exact_and_approximate():
    roots = real_roots(parse("(x - 1)^2*(x + 3)*(x^2 - 2)*(x^2 + 1)", ("x",)))
    exact = [(r, k) for r, k, approx in roots if not approx]
    approx = [(r, k) for r, k, a in roots if a]
    assert exact == [(Fraction(-3), 1), (Fraction(1), 2)]
    assert [k for _, k in approx] == [1, 1]
    assert sorted(abs(r) for r, _ in approx) == pytest.approx([math.sqrt(2)] * 2)


def test_solve_affine_rational_points():
    sols = solve_affine([parse("x^2 + y^2 - 5", XY), parse("x - y + 1", XY)], "x", "y")
    assert sorted((x, y) for x, y, _, _ in sols) == [(-2, -1), (1, 2)]
    assert all(k == 1 and not approx for *_, k, approx in sols)


def test_solve_affine_irrational_points():
    sols = solve_affine([parse("x^2 + y^2 - 1", XY), parse("x - y", XY)], "x", "y")
    assert len(sols) == 2
    for x, y, k, approx in sols:
        assert approx and k == 1
        assert x == pytest.approx(y) and abs(x) == pytest.approx(1 / math.sqrt(2))


def test_tangency_multiplicity():
    sols = solve_affine([parse("y - x^2", XY), parse("y", XY)], "x", "y")
    assert sols == [(0, 0, 2, False)]


def test_classify_points_finite_and_at_infinity():
    # y*(x - z) = 0 meets x*y = 0 ... use two lines through a common point at infinity
    ps = classify_points([parse("y", XYZ), parse("x^2 - x*z", XYZ)])
    got = {p.canonical(): p.multiplicity for p in ps}
    assert got == {(0, 0, 1): 1, (1, 0, 1): 1}
    inf = classify_points([parse("y", XYZ), parse("z^2", XYZ)])
    assert {p.canonical(): p.multiplicity for p in inf} == {(1, 0, 0): 2}
    top = classify_points([parse("x", XYZ), parse("z", XYZ)])
    assert [p.canonical() for p in top] == [(0, 1, 0)]


def test_classify_points_rejects_parameters():
    with pytest.raises(ValueError):
        classify_points([parse("x*kd", ("x", "y", "z", "kd"))])


def test_projective_point_identity():
    a = ProjectivePoint((Fraction(2), Fraction(0), Fraction(-2)))
    assert a.canonical() == (1, 0, -1)
    assert a.same_point((-1, 0, 1))
    assert a.key() == ProjectivePoint((1, 0, -1)).key()
    b = ProjectivePoint((0.5, 0.0, -0.5), approximate=True)
    assert b.same_point(a)
    with pytest.raises(ValueError):
        ProjectivePoint((0, 0, 0))

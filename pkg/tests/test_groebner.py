from __future__ import annotations

import pytest

from rlalg.groebner import (
    BuchbergerStats,
    Ideal,
    MonomialOrder,
    buchberger,
    contains,
    eliminate,
    ideal_equal,
    intersect,
    is_subideal,
    normal_form,
    normalize,
    s_polynomial,
)
from rlalg.poly import parse

XYZ = ("x", "y", "z")


def ideal(*texts, varset=XYZ):
    return Ideal([parse(t, varset) for t in texts], varset)


TWISTED_CUBIC = ideal("x^2 - y", "x^3 - z")


def test_monomial_orders_compare_as_documented():
    lex = MonomialOrder.lex(XYZ)
    grevlex = MonomialOrder.grevlex(XYZ)
    f = parse("x*z^2 + y^3 + x^2", XYZ)
    assert lex.leading_monomial(f) == (2, 0, 0)
    # degree first, then the smaller last exponent wins
    assert grevlex.leading_monomial(f) == (0, 3, 0)
    block = MonomialOrder.block(["z"], ["x", "y"])
    g = parse("z + x^5", ("z", "x", "y"))
    assert block.leading_monomial(g) == (1, 0, 0)


def test_bad_orders():
    with pytest.raises(ValueError):
        MonomialOrder("spiral", XYZ)
    with pytest.raises(ValueError):
        MonomialOrder("block", XYZ, 0)


def test_twisted_cubic_lex_basis():
    gb = buchberger(TWISTED_CUBIC, MonomialOrder.lex(XYZ))
    want = {"x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"}
    assert set(gb.elements) == {parse(t, XYZ) for t in want}


def test_unit_ideal():
    gb = buchberger(ideal("x*y - 1", "x"), MonomialOrder.grevlex(XYZ))
    assert gb.is_unit()


def test_basis_is_reduced_and_normalized():
    order = MonomialOrder.grevlex(XYZ)
    gb = buchberger(ideal("x^2*y - z", "x*y^2 - x", "z^3 - y"), order)
    lms = gb.leading_monomials()
    for g, lm in zip(gb.elements, lms):
        assert g == normalize(g, order)
        assert order.leading_coefficient(g) > 0
        others = [m for m in lms if m != lm]
        for e in g.terms:
            assert not any(all(a >= b for a, b in zip(e, m)) for m in others)


def test_s_polynomials_reduce_to_zero():
    order = MonomialOrder.grevlex(XYZ)
    gb = buchberger(ideal("x^2 + y^2 - 1", "x*y - z", "y^3 - x*z"), order)
    els = gb.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            assert not normal_form(s_polynomial(els[i], els[j], order), gb)


def test_strategies_agree_and_stats_count():
    order = MonomialOrder.grevlex(XYZ)
    src = ideal("x^3 - 2*x*y", "x^2*y - 2*y^2 + x")
    stats = BuchbergerStats()
    a = buchberger(src, order, strategy="normal", stats=stats)
    b = buchberger(src, order, strategy="sugar")
    assert set(a.elements) == set(b.elements)
    assert stats.pairs > 0 and stats.basis_size == len(a)


def test_membership_and_normal_form():
    assert contains(TWISTED_CUBIC, parse("y^3 - z^2", XYZ))
    assert not contains(TWISTED_CUBIC, parse("y - z", XYZ))
    gb = buchberger(TWISTED_CUBIC, MonomialOrder.grevlex(XYZ))
    r = normal_form(parse("x^5", XYZ), gb)
    assert not normal_form(parse("x^5", XYZ) - r, gb)


def test_elimination_implicitizes_the_twisted_cubic():
    vs = ("t", "x", "y", "z")
    param = ideal("x - t", "y - t^2", "z - t^3", varset=vs)
    elim = eliminate(param, ["t"])
    assert elim.varset == XYZ
    assert ideal_equal(elim, ideal("y - x^2", "z - x*y", "x*z - y^2"))


def test_elimination_rejects_unknown_variables():
    with pytest.raises(ValueError):
        eliminate(TWISTED_CUBIC, ["u"])


def test_intersection_of_coordinate_axes():
    got = intersect(ideal("x", "y"), ideal("y", "z"))
    assert ideal_equal(got, ideal("y", "x*z"))
    assert is_subideal(got, ideal("x", "y"))
    assert not is_subideal(ideal("x"), got)


def test_ideal_equal_needs_matching_varsets():
    with pytest.raises(ValueError):
        ideal_equal(ideal("x"), Ideal([parse("x", ("x", "y"))]))

"""Factorization over QQ, delegated to sympy's multivariate factorizer."""

from __future__ import annotations

from fractions import Fraction

import sympy

from .poly import Polynomial


def _to_sympy(p: Polynomial) -> sympy.Poly:
    gens = sympy.symbols(p.vars)
    data = {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}
    return sympy.Poly.from_dict(data, *gens, domain="QQ")


def _from_sympy(q: sympy.Poly, varset: tuple) -> Polynomial:
    terms = {}
    for e, c in q.terms():
        c = sympy.Rational(c)
        terms[tuple(e)] = Fraction(int(c.p), int(c.q))
    return Polynomial(varset, terms)


def factor_rational(p: Polynomial) -> tuple[Fraction, list[tuple[Polynomial, int]]]:
    """Return ``(c, [(f, k), ...])`` with ``p = c * prod f**k`` and each f irreducible."""
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if p.is_constant():
        return next(iter(p.terms.values())), []
    c, facs = _to_sympy(p).factor_list()
    c = sympy.Rational(c)
    out = [(_from_sympy(f, p.vars), k) for f, k in facs]
    return Fraction(int(c.p), int(c.q)), out

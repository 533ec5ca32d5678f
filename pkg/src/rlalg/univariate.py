"""Univariate helpers on coefficient lists (highest degree first)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def strip(coeffs: Sequence) -> list[Fraction]:
    c = [Fraction(x) for x in coeffs]
    while c and c[0] == 0:
        c.pop(0)
    return c


def poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list, list]:
    """Univariate division on coefficient lists (highest degree first)."""
    a = strip(a)
    b = strip(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        c = r[0] / b[0]
        k = len(r) - len(b)
        q[len(q) - 1 - k] = c
        for i, bi in enumerate(b):
            r[i] -= c * bi
        r = strip(r)
    return q, r


def poly_gcd(a: Sequence, b: Sequence) -> list[Fraction]:
    """Monic gcd of two univariate polynomials (coefficient lists)."""
    a = strip(a)
    b = strip(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    return [c / a[0] for c in a]

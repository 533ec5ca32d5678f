"""Root locus of a rational transfer function as a union of plane curves.

Pipeline: pencil ``kd*den + kn*num`` -> real/imaginary split at
``s = x + iy`` -> grevlex basis -> homogenize with ``z`` -> minimal
components -> drop the ``<kd, kn>`` component -> classify points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .decompose import (
    ComponentSet,
    filter_parameter_trivial,
    minimal_components,
)
from .groebner import Ideal, MonomialOrder, buchberger, eliminate, normalize
from .points import PointSet, classify_points, specialize
from .poly import Polynomial
from .univariate import poly_gcd, strip as _strip

PENCIL_VARS = ("s", "kd", "kn")
AFFINE_VARS = ("x", "y", "kd", "kn")
PROJECTIVE_VARS = ("x", "y", "z", "kd", "kn")


class InvalidTransferFunction(ValueError):
    pass


@dataclass(frozen=True)
class TransferFunction:
    """``G(s) = num(s) / den(s)`` with coefficients highest degree first."""

    num: tuple
    den: tuple

    def __init__(self, num: Iterable, den: Iterable):
        n = _strip(num)
        d = _strip(den)
        if not d:
            raise InvalidTransferFunction("denominator is zero")
        if not n:
            raise InvalidTransferFunction("numerator is zero")
        if len(d) < 2:
            raise InvalidTransferFunction("denominator must have degree at least 1")
        if d[0] != 1:
            raise InvalidTransferFunction("denominator must be monic")
        g = poly_gcd(n, d)
        if len(g) > 1:
            raise InvalidTransferFunction("numerator and denominator share a common factor")
        object.__setattr__(self, "num", tuple(n))
        object.__setattr__(self, "den", tuple(d))

    @classmethod
    def parse(cls, num: str, den: str) -> TransferFunction:
        return cls([Fraction(c.strip()) for c in num.split(",")],
                   [Fraction(c.strip()) for c in den.split(",")])

    def as_polynomials(self) -> tuple[Polynomial, Polynomial]:
        return _univariate(self.num), _univariate(self.den)


def _univariate(coeffs: Sequence[Fraction]) -> Polynomial:
    n = len(coeffs) - 1
    return Polynomial(PENCIL_VARS, {(n - i, 0, 0): c for i, c in enumerate(coeffs)})


def build_pencil(tf: TransferFunction) -> Polynomial:
    """``kd*den(s) + kn*num(s)`` over (s, kd, kn)."""
    num, den = tf.as_polynomials()
    kd = Polynomial.variable("kd", PENCIL_VARS)
    kn = Polynomial.variable("kn", PENCIL_VARS)
    return kd * den + kn * num


@dataclass(frozen=True)
class Pencil:
    u: Polynomial
    v: Polynomial


def complex_split(pencil: Polynomial) -> Pencil:
    """Real and imaginary parts of the pencil at ``s = x + iy``."""
    x = Polynomial.variable("x", AFFINE_VARS)
    y = Polynomial.variable("y", AFFINE_VARS)
    zero = Polynomial.constant(0, AFFINE_VARS)
    powers = [(Polynomial.constant(1, AFFINE_VARS), zero)]
    coeffs = pencil.coefficients_in(["s"])
    top = max(k for (k,) in coeffs)
    for _ in range(top):
        re, im = powers[-1]
        powers.append((re * x - im * y, re * y + im * x))
    u = zero
    v = zero
    for (k,), c in coeffs.items():
        c = c.to_varset(AFFINE_VARS)
        re, im = powers[k]
        u = u + c * re
        v = v + c * im
    return Pencil(u, v)


@dataclass
class RLComponent:
    """One irreducible piece of the projective root locus."""

    ideal: Ideal
    curve_poly: Polynomial | None
    param_poly: Polynomial | None
    affine_equation: Polynomial | None
    flags: set = field(default_factory=set)
    initial: PointSet | None = None
    terminal: PointSet | None = None
    intermediate: list = field(default_factory=list)

    @property
    def generators(self) -> tuple:
        return self.ideal.generators


def locus_and_parametrization(ideal: Ideal, coords=("x", "y", "z"), params=("kd", "kn")):
    """Parameter-free locus generator and lowest-degree parameter generator."""
    order = MonomialOrder.grevlex(ideal.varset)
    elim = eliminate(ideal, params)
    locus = None
    if elim.generators:
        gens = [normalize(g.to_varset(ideal.varset), order) for g in elim.generators]
        gens.sort(key=lambda g: (g.total_degree(), g.format()))
        if len(gens) == 1:
            locus = gens[0]
    gb = buchberger(ideal, order)
    dependent = [g for g in gb.elements if g.degree_in(params) > 0]
    # prefer generators linear and homogeneous in the parameters
    dependent.sort(key=lambda g: (not g.is_homogeneous(params) or g.degree_in(params) != 1,
                                  g.total_degree(), len(g), g.format()))
    param = dependent[0] if dependent else None
    return locus, param


def build_component(ideal: Ideal) -> RLComponent:
    locus, param = locus_and_parametrization(ideal)
    flags = set()
    affine = None
    if locus is None:
        flags.add("no-locus-generator")
    else:
        affine = locus.dehomogenize("z").to_varset(("x", "y"))
    return RLComponent(ideal, locus, param, affine, flags)


def classify_component_points(c: RLComponent, coords=("x", "y", "z")) -> RLComponent:
    """Fill initial (kd, kn) = (1, 0), terminal (0, 1) and intermediate (1, lam) data."""
    c.initial, c.terminal, c.intermediate = parameter_slices(c.ideal.generators, coords)
    return c


def parameter_slices(gens: Sequence[Polynomial], coords=("x", "y", "z")):
    """Initial points, terminal points and the symbolic intermediate generators."""
    gens = list(gens)
    initial = classify_points(specialize(gens, {"kd": 1, "kn": 0}), coords)
    terminal = classify_points(specialize(gens, {"kd": 0, "kn": 1}), coords)
    return initial, terminal, intermediate_description(gens, coords)


def intermediate_description(gens: Sequence[Polynomial], coords=("x", "y", "z")) -> list[Polynomial]:
    """Generators at (kd, kn) = (1, l) with the multiplier ``l`` kept symbolic."""
    target = tuple(coords) + ("l",)
    out = []
    for g in gens:
        h = g.to_varset(g.vars + ("l",)) if "l" not in g.vars else g
        lam = Polynomial.variable("l", h.vars)
        h = h.substitute({"kd": 1, "kn": lam})
        h = h.to_varset(target)
        if h:
            out.append(normalize(h, MonomialOrder.grevlex(target)))
    return out


def _component_sort_key(c: RLComponent):
    if c.curve_poly is None:
        return (1_000, "", str(c.ideal))
    return (c.curve_poly.total_degree(), c.curve_poly.format(), str(c.ideal))


@dataclass
class Decomposition:
    tf: TransferFunction
    pencil: Pencil
    basis: tuple
    homogenized: Ideal
    all_components: ComponentSet
    components: list

    def merged_points(self, which: str) -> list[tuple]:
        """(point, count) pairs: how many components pass through each point."""
        return merge_point_sets([getattr(c, which) for c in self.components])


def merge_point_sets(sets: Iterable[PointSet]) -> list[tuple]:
    counts: dict = {}
    order = []
    for ps in sets:
        if ps is None:
            continue
        for pt in ps.points:
            key = pt.key()
            if key not in counts:
                counts[key] = [pt, 0]
                order.append(key)
            counts[key][1] += 1
    return [tuple(counts[k]) for k in sorted(order)]


def decompose_root_locus(tf: TransferFunction) -> Decomposition:
    pencil = complex_split(build_pencil(tf))
    gb = buchberger(Ideal([pencil.u, pencil.v]), MonomialOrder.grevlex(AFFINE_VARS))
    homog = Ideal([g.to_varset(PROJECTIVE_VARS).homogenize("z") for g in gb.elements])
    all_cs = minimal_components(homog)
    kept = filter_parameter_trivial(all_cs)
    comps = [classify_component_points(build_component(c.ideal)) for c in kept.components]
    for comp, src in zip(comps, kept.components):
        comp.flags |= src.flags
    comps.sort(key=_component_sort_key)
    return Decomposition(tf, pencil, gb.elements, homog, all_cs, comps)

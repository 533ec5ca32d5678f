"""Dual curves of root-locus components and the algebraic dual root locus.

A point ``(x:y:z)`` of ``f = 0`` maps to its tangent line ``(u:v:w) =
grad f``.  The image is cut out by eliminating ``x, y, z`` and the
multiplier ``l`` from ``<f, u - l*f_x, v - l*f_y, w - l*f_z>``.  The locus
and the parameter generator of a component are dualized separately and
then paired.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import sympy

from .groebner import Ideal, MonomialOrder, buchberger, eliminate, ideal_equal, normalize
from .numeric import residual, univariate_roots
from .points import PointSet
from .poly import Polynomial
from .rootlocus import RLComponent, merge_point_sets, parameter_slices

PLANE = ("x", "y", "z")
DUAL_PLANE = ("u", "v", "w")
PARAMS = ("kd", "kn")
MULTIPLIER = "l"

POINT_DUAL = "point-dual"
SINGULAR_SOURCE = "singular-source"

# generic parameter value used when testing a parametrized curve for singularities
GENERIC_PARAMS = {"kd": 3, "kn": 7}

# beyond this dual degree the bidual is checked numerically
EXACT_BIDUAL_MAX_DEGREE = 4


class DualError(ValueError):
    """The incidence elimination did not produce a usable dual."""


class PointDualError(DualError):
    """The source is a line, so its dual is a single point."""


def _grevlex(varset) -> MonomialOrder:
    return MonomialOrder.grevlex(varset)


def incidence_ideal(f: Polynomial, source: Sequence[str] = PLANE,
                    target: Sequence[str] = DUAL_PLANE) -> Ideal:
    """``<f, t1 - l*df/ds1, t2 - l*df/ds2, t3 - l*df/ds3>``."""
    source = tuple(source)
    target = tuple(target)
    if not f:
        raise DualError("cannot dualize the zero polynomial")
    if not f.is_homogeneous(source):
        raise DualError(f"{f} is not homogeneous in {', '.join(source)}")
    extra = set(f.variables()) - set(source) - set(PARAMS)
    if extra:
        raise DualError(f"unexpected variables {sorted(extra)}")
    varset = source + (MULTIPLIER,) + target + PARAMS
    g = f.to_varset(varset)
    lam = Polynomial.variable(MULTIPLIER, varset)
    gens = [g]
    for s, t in zip(source, target):
        gens.append(Polynomial.variable(t, varset) - lam * g.derivative(s))
    return Ideal(gens, varset)


def _eliminate_incidence(f: Polynomial, source, target, extra: Sequence[Polynomial] = ()) -> Ideal:
    """Eliminate ``source`` and ``l`` from the incidence ideal (optionally
    replacing its first generator by ``extra``)."""
    inc = incidence_ideal(f, source, target)
    gens = list(inc.generators)
    if extra:
        gens = [e.to_varset(inc.varset) for e in extra] + gens[1:]
    elim = eliminate(Ideal(gens, inc.varset), tuple(source) + (MULTIPLIER,))
    keep = tuple(target) + PARAMS
    order = _grevlex(keep)
    out = sorted({normalize(g.to_varset(keep), order) for g in elim.generators},
                 key=lambda g: (g.total_degree(), len(g), g.format()))
    return Ideal(out, keep)


def _zero_partial_coords(f: Polynomial, source, target) -> set[Polynomial]:
    """Target coordinates forced to vanish because ``f`` misses a source variable."""
    keep = tuple(target) + PARAMS
    return {Polynomial.variable(t, keep) for s, t in zip(source, target) if not f.derivative(s)}


def dual_ideal(f: Polynomial, source: Sequence[str] = PLANE,
               target: Sequence[str] = DUAL_PLANE) -> Ideal:
    """Full elimination ideal of the incidence construction."""
    elim = _eliminate_incidence(f, source, target)
    if not elim.generators:
        raise DualError(f"elimination of the incidence ideal of {f} is zero")
    return elim


def _geometric(elim: Ideal, f: Polynomial, source, target) -> list[Polynomial]:
    trivial = _zero_partial_coords(f, source, target)
    return [g for g in elim.generators if g not in trivial]


def dual_curve(f: Polynomial, source: Sequence[str] = PLANE,
               target: Sequence[str] = DUAL_PLANE) -> Polynomial:
    """Equation of the dual of ``f = 0``.

    Linear generators that only record a vanishing partial derivative are
    dropped.  A line has a point as its dual and raises ``PointDualError``.
    """
    if f.total_degree() == 1 and not set(f.variables()) & set(PARAMS):
        raise PointDualError(f"the dual of the line {f} is a point")
    elim = dual_ideal(f, source, target)
    rest = _geometric(elim, f, source, target)
    if len(rest) != 1:
        raise DualError(f"expected one dual generator for {f}, got {len(rest)}")
    return rest[0]


def dual_parametrization(param: Polynomial, f: Polynomial, source: Sequence[str] = PLANE,
                         target: Sequence[str] = DUAL_PLANE) -> Polynomial:
    """Parameter-dependent generator of the dual, from ``param`` and the locus ``f``."""
    elim = _eliminate_incidence(f, source, target, extra=[param])
    dependent = [g for g in elim.generators if g.degree_in(PARAMS) > 0]
    if not dependent:
        raise DualError(f"no parameter-dependent dual generator for {param}")
    return dependent[0]


def point_of(ideal: Ideal, coords: Sequence[str]) -> tuple:
    """The projective point cut out by linear generators in ``coords``."""
    rows = []
    for g in ideal.generators:
        if g.total_degree() != 1 or set(g.variables()) - set(coords):
            raise DualError(f"{g} is not a linear form in {', '.join(coords)}")
        rows.append([g.coefficient(tuple(1 if v == c else 0 for v in g.vars)) for c in coords])
    kernel = sympy.Matrix(rows).nullspace()
    if len(kernel) != 1:
        raise DualError("linear generators do not cut out a single point")
    vec = kernel[0]
    den = sympy.ilcm(*[sympy.fraction(c)[1] for c in vec])
    ints = [int(c * den) for c in vec]
    g = math.gcd(*ints)
    sign = 1 if next(c for c in ints if c) > 0 else -1
    return tuple(sign * c // g for c in ints)


def line_through(point: Sequence[int], coords: Sequence[str] = PLANE) -> Polynomial:
    """Dual of a point: the linear form whose coefficients are its coordinates."""
    varset = tuple(coords) + PARAMS
    out = Polynomial.constant(0, varset)
    for c, v in zip(point, coords):
        out = out + Polynomial.variable(v, varset) * c
    return normalize(out, _grevlex(varset))


def cone_along(p: Polynomial, line: Polynomial, coords: Sequence[str]) -> Polynomial:
    """Representative of ``p`` modulo ``line`` that is constant along the line's normal.

    With ``line = n . X`` the projection ``X -> X - (n . X / n . n) n`` fixes
    the line pointwise, so ``p`` composed with it agrees with ``p`` on the
    line and defines a cone with vertex ``n``.  Tangent lines of such a cone
    all pass through ``n``, so its dual lies on the line dual to ``n``.
    """
    coords = tuple(coords)
    if line.total_degree() != 1 or set(line.variables()) - set(coords):
        raise DualError(f"{line} is not a line in {', '.join(coords)}")
    normal = [line.coefficient(tuple(1 if v == c else 0 for v in line.vars)) for c in coords]
    norm2 = sum(c * c for c in normal)
    form = line.to_varset(p.vars)
    mapping = {}
    for c, n in zip(coords, normal):
        mapping[c] = Polynomial.variable(c, p.vars) - form * (n / norm2)
    return normalize(p.substitute(mapping), _grevlex(p.vars))


@dataclass
class DualComponent:
    """Dual of one root-locus component over (u:v:w)."""

    source: RLComponent
    kind: str
    dual_curve: Polynomial | None
    dual_param: Polynomial | None
    ideal: Ideal
    point_ideal: Ideal | None = None
    flags: set = field(default_factory=set)
    initial: PointSet | None = None
    terminal: PointSet | None = None
    intermediate: list = field(default_factory=list)

    @property
    def generators(self) -> tuple:
        return self.ideal.generators

    @property
    def affine_equation(self) -> Polynomial | None:
        if self.dual_curve is None:
            return None
        return self.dual_curve.dehomogenize("w").to_varset(("u", "v"))


def dualize_component(c: RLComponent) -> DualComponent:
    """Dual ideal of a component, with its points classified over (u:v:w)."""
    locus, param = c.curve_poly, c.param_poly
    if locus is None or param is None:
        raise DualError("component has no locus/parameter generator pair")
    flags = set()
    point_ideal = None
    if locus.total_degree() == 1:
        # the line itself dualizes to a point; the pencil on it is dualized directly
        kind = "line"
        flags.add(POINT_DUAL)
        point_ideal = dual_ideal(locus)
        ideal = dual_ideal(cone_along(param, locus, PLANE))
        free = [g for g in ideal.generators if g.degree_in(PARAMS) == 0]
        dependent = [g for g in ideal.generators if g.degree_in(PARAMS) > 0]
        curve = free[0] if len(free) == 1 else None
        dparam = dependent[0] if dependent else None
    else:
        kind = "curve"
        curve = dual_curve(locus)
        dparam = dual_parametrization(param, locus)
        ideal = Ideal([curve, dparam], curve.vars)
    if is_singular(locus if kind == "curve" else param):
        flags.add(SINGULAR_SOURCE)
    dc = DualComponent(c, kind, curve, dparam, ideal, point_ideal, flags)
    dc.initial, dc.terminal, dc.intermediate = parameter_slices(ideal.generators, DUAL_PLANE)
    return dc


def bidual(dc: DualComponent) -> Ideal:
    """Dualize back from (u:v:w) to (x:y:z)."""
    if dc.kind == "line":
        if dc.dual_param is None or dc.dual_curve is None:
            raise DualError("line component without a line/parameter pair")
        back = dual_ideal(cone_along(dc.dual_param, dc.dual_curve, DUAL_PLANE), DUAL_PLANE, PLANE)
        return Ideal(back.generators, PLANE + PARAMS)
    locus = dual_curve(dc.dual_curve, DUAL_PLANE, PLANE)
    param = dual_parametrization(dc.dual_param, dc.dual_curve, DUAL_PLANE, PLANE)
    return Ideal([locus, param], PLANE + PARAMS)


@dataclass(frozen=True)
class BidualCheck:
    ok: bool
    method: str
    max_residual: float
    samples: int


def check_bidual(dc: DualComponent, samples: int = 24, tol: float = 1e-6,
                 seed: int = 0) -> BidualCheck:
    """Confirm that dualizing twice gives the component back.

    Low-degree duals are checked exactly through ``bidual``; above
    ``EXACT_BIDUAL_MAX_DEGREE`` the second elimination is out of reach and
    the check samples real points of the dual curve instead, mapping each
    back through the gradient and testing both source generators.
    """
    if dc.kind == "line" or dc.dual_curve.degree_in(DUAL_PLANE) <= EXACT_BIDUAL_MAX_DEGREE:
        src = dc.source.ideal
        ok = ideal_equal(bidual(dc).to_varset(src.varset), src)
        return BidualCheck(ok, "exact", 0.0 if ok else math.inf, 0)
    return _numeric_bidual(dc, samples, tol, seed)


def _float_coeffs(p: Polynomial, var: str, point: dict) -> list[float]:
    """Coefficients of ``p`` in ``var`` (highest first) at a float point."""
    by_deg = p.coefficients_in([var])
    top = max(k for (k,) in by_deg)
    return [by_deg[(top - i,)].evaluate_float(point).real if (top - i,) in by_deg else 0.0
            for i in range(top + 1)]


def _real_roots_float(coeffs: list[float]) -> list[float]:
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    if len(coeffs) < 2:
        return []
    return [r.real for r in univariate_roots(coeffs) if abs(r.imag) <= 1e-9 * max(1.0, abs(r))]


def _numeric_bidual(dc: DualComponent, samples: int, tol: float, seed: int) -> BidualCheck:
    h, h1 = dc.dual_curve, dc.dual_param
    locus, param = dc.source.curve_poly, dc.source.param_poly
    grads = [h.derivative(t) for t in DUAL_PLANE]
    rng = np.random.default_rng(seed)
    worst = 0.0
    used = 0
    for u0 in rng.uniform(-3.0, 3.0, samples):
        for v0 in _real_roots_float(_float_coeffs(h, "v", {"u": u0, "w": 1.0})):
            uvw = {"u": u0, "v": v0, "w": 1.0}
            xyz = np.array([g.evaluate_float(uvw).real for g in grads])
            norm = np.max(np.abs(xyz))
            if norm < 1e-8:
                continue  # singular point of the dual curve
            pt = dict(zip(PLANE, xyz / norm))
            res = residual(locus, pt).normalized
            # parameter values carried by this tangent line, with kd = 1
            kn_roots = _real_roots_float(_float_coeffs(h1.substitute({"kd": 1}), "kn", uvw))
            if kn_roots:
                res = max(res, min(residual(param, {**pt, "kd": 1.0, "kn": k}).normalized
                                   for k in kn_roots))
            worst = max(worst, res)
            used += 1
    return BidualCheck(bool(used > 0 and worst <= tol), "numeric", float(worst), used)


def bidual_point(point_ideal: Ideal) -> Polynomial:
    """The line recovered from a point dual: all lines through it, read back as a form."""
    return line_through(point_of(point_ideal, DUAL_PLANE), PLANE)


def is_singular(f: Polynomial, coords: Sequence[str] = PLANE) -> bool:
    """Whether ``f = 0`` has a singular point (parameters set to a generic value).

    By the Euler relation the common zeros of the partials lie on the curve,
    so the curve is smooth exactly when the gradient ideal is irrelevant,
    i.e. its basis holds a pure power of every coordinate.
    """
    coords = tuple(coords)
    g = f.substitute({k: v for k, v in GENERIC_PARAMS.items() if k in f.vars}).to_varset(coords)
    partials = [g.derivative(v) for v in coords]
    gb = buchberger(Ideal(partials, coords), _grevlex(coords))
    if gb.is_unit():
        return False
    pure = set()
    for lm in gb.leading_monomials():
        nz = [i for i, k in enumerate(lm) if k]
        if len(nz) == 1:
            pure.add(nz[0])
    return len(pure) < len(coords)


@dataclass(frozen=True)
class DegreeLaw:
    status: str
    source_degree: int
    dual_degree: int

    @property
    def expected(self) -> int:
        d = self.source_degree
        return d * (d - 1)


def degree_law(dc: DualComponent) -> DegreeLaw:
    """Compare the dual degree with d(d-1).

    Status is "pass" when they agree, "skipped-singular" when they differ
    on a singular source, "not-applicable" for linear sources and "fail"
    otherwise.
    """
    if dc.kind == "line":
        src, dual = dc.source.param_poly, dc.dual_param
    else:
        src, dual = dc.source.curve_poly, dc.dual_curve
    d = src.degree_in(PLANE)
    e = dual.degree_in(DUAL_PLANE)
    if d < 2:
        status = "not-applicable"
    elif e == d * (d - 1):
        status = "pass"
    elif SINGULAR_SOURCE in dc.flags:
        status = "skipped-singular"
    else:
        status = "fail"
    return DegreeLaw(status, d, e)


@dataclass
class ADRL:
    """Union of the dual components with merged point data."""

    components: list
    initial: list
    terminal: list
    affine_pieces: list


def assemble_adrl(components: Sequence[DualComponent]) -> ADRL:
    if not components:
        raise ValueError("the dual root locus needs at least one component")
    comps = list(components)
    pieces = [dc.affine_equation for dc in comps]
    return ADRL(
        comps,
        merge_point_sets(dc.initial for dc in comps),
        merge_point_sets(dc.terminal for dc in comps),
        pieces,
    )

"""Real projective points of a specialized component.

The plane is covered by the affine chart ``c = 1`` and the line at
infinity ``c = 0`` (itself split into ``a = 1`` and the point (0:1:0)).
Each chart is solved in the quotient ring of a grevlex basis, with exact
rational roots where they exist and a numeric fallback whose points are
flagged approximate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .factor import factor_rational
from .groebner import Ideal, MonomialOrder, buchberger, normal_form
from .numeric import residual, univariate_roots
from .poly import Polynomial
from .univariate import poly_divmod, poly_gcd

Coord = Union[Fraction, float]

REAL_TOL = 1e-9
MEMBER_TOL = 1e-8


class NotZeroDimensional(ValueError):
    pass


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple
    multiplicity: int = 1
    approximate: bool = False

    def __post_init__(self):
        if all(c == 0 for c in self.coords):
            raise ValueError("(0:0:0) is not a projective point")

    def canonical(self) -> tuple:
        """Coordinates scaled so the first nonzero one is 1."""
        lead = next(c for c in self.coords if c != 0)
        return tuple(c / lead for c in self.coords)

    def key(self) -> tuple:
        if self.approximate:
            return tuple(round(float(c), 9) + 0.0 for c in self.canonical())
        return tuple(float(c) for c in self.canonical()) + tuple(self.canonical())

    def same_point(self, other: "ProjectivePoint | Sequence", tol: float = 1e-9) -> bool:
        coords = other.coords if isinstance(other, ProjectivePoint) else tuple(other)
        other_pt = ProjectivePoint(tuple(coords))
        a = self.canonical()
        b = other_pt.canonical()
        if not (self.approximate or any(isinstance(c, float) for c in coords)):
            return a == tuple(Fraction(c) for c in b)
        return all(abs(float(p) - float(q)) <= tol for p, q in zip(a, b))

    def __str__(self) -> str:
        return "(" + ":".join(_fmt(c) for c in self.coords) + ")"


def _fmt(c: Coord) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return repr(float(c))


@dataclass
class PointSet:
    points: list = field(default_factory=list)
    issues: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def specialize(gens: Sequence[Polynomial], values: Mapping[str, int]) -> list[Polynomial]:
    out = []
    for g in gens:
        h = g.substitute({k: v for k, v in values.items() if k in g.vars})
        if h:
            out.append(h)
    return out


def real_roots(p: Polynomial) -> list[tuple[Coord, int, bool]]:
    """Real roots of a univariate polynomial as ``(root, multiplicity, approximate)``."""
    if not p:
        raise NotZeroDimensional("zero polynomial")
    if p.is_constant():
        return []
    (var,) = p.variables()
    _, facs = factor_rational(p)
    out = []
    for f, k in facs:
        d = f.degree(var)
        coeffs = [f.coefficient(_mono(f.vars, var, d - i)) for i in range(d + 1)]
        if d == 1:
            out.append((-coeffs[1] / coeffs[0], k, False))
            continue
        for r in univariate_roots(coeffs):
            if abs(r.imag) <= REAL_TOL * max(1.0, abs(r)):
                out.append((r.real, k, True))
    out.sort(key=lambda t: float(t[0]))
    return _merge_equal(out)


def _merge_equal(roots):
    merged: list = []
    for r, k, approx in roots:
        if merged and approx and merged[-1][2] and abs(merged[-1][0] - r) <= 1e-7 * max(1, abs(r)):
            prev = merged.pop()
            merged.append((prev[0], prev[1] + k, True))
        else:
            merged.append((r, k, approx))
    return merged


def _mono(varset, var, k):
    return tuple(k if v == var else 0 for v in varset)


def _univariate_gcd(polys: Sequence[Polynomial], var: str) -> Polynomial | None:
    """Gcd of univariate polynomials in ``var``; None when all vanish."""
    nonzero = [p for p in polys if p]
    if not nonzero:
        return None
    g: list = []
    for p in nonzero:
        d = p.degree(var)
        coeffs = [p.coefficient(_mono(p.vars, var, d - i)) for i in range(d + 1)]
        g = poly_gcd(g, coeffs) if g else [c / coeffs[0] for c in coeffs]
        if len(g) == 1:
            break
    d = len(g) - 1
    return Polynomial(nonzero[0].vars, {_mono(nonzero[0].vars, var, d - i): c for i, c in enumerate(g)})


def _solve_univariate_system(polys: Sequence[Polynomial], var: str) -> list[tuple[Coord, int, bool]]:
    g = _univariate_gcd(polys, var)
    if g is None:
        raise NotZeroDimensional(f"no equation left in {var}")
    return real_roots(g)


def _standard_monomials(gb, a: str, b: str) -> list[tuple[int, int]]:
    """Monomials outside the leading-term ideal; raises unless the quotient is finite."""
    lms = gb.leading_monomials()
    pure_a = [m[0] for m in lms if m[1] == 0 and m[0] > 0]
    pure_b = [m[1] for m in lms if m[0] == 0 and m[1] > 0]
    if not pure_a:
        raise NotZeroDimensional(f"{a} is free on the affine chart")
    if not pure_b:
        raise NotZeroDimensional(f"{b} is free on the affine chart")
    return [(i, j) for i in range(min(pure_a)) for j in range(min(pure_b))
            if not any(m[0] <= i and m[1] <= j for m in lms)]


def _charpoly(gb, std, ca: int, cb: int) -> list[Fraction]:
    """Characteristic polynomial (highest first) of multiplication by ``ca*a + cb*b``."""
    varset = gb.varset
    index = {m: k for k, m in enumerate(std)}
    form = Polynomial(varset, {(1, 0): ca, (0, 1): cb})
    n = len(std)
    rows = [[QQ(0)] * n for _ in range(n)]
    for col, m in enumerate(std):
        image = normal_form(form.mul_monomial(m), gb)
        for e, c in image.terms.items():
            rows[index[e]][col] = QQ(c.numerator, c.denominator)
    coeffs = DomainMatrix(rows, (n, n), QQ).charpoly()
    return [Fraction(int(c.numerator), int(c.denominator)) for c in coeffs]


def _root_multiplicity(coeffs: list[Fraction], root: Fraction) -> int:
    k = 0
    linear = [Fraction(1), -root]
    while len(coeffs) > 1:
        q, r = poly_divmod(coeffs, linear)
        if r:
            break
        coeffs = q
        k += 1
    return k


def solve_affine(polys: Sequence[Polynomial], a: str, b: str) -> list[tuple[Coord, Coord, int, bool]]:
    """Real solutions of a zero-dimensional system in (a, b), with multiplicities.

    Works in the finite quotient ring of a grevlex basis: the eigenvalues of
    multiplication by ``b`` give the ``b`` coordinates, and the local
    multiplicity of an exact point is read off the characteristic
    polynomials of two independent linear forms (a collision in one form
    can only overcount, never in both).
    """
    polys = [p.to_varset((a, b)) for p in polys if p]
    if not polys:
        raise NotZeroDimensional("no equations on the affine chart")
    gb = buchberger(Ideal(polys, (a, b)), MonomialOrder.grevlex((a, b)))
    if gb.is_unit():
        return []
    std = _standard_monomials(gb, a, b)
    chi_b = _charpoly(gb, std, 0, 1)
    forms = [(t, _charpoly(gb, std, 1, t)) for t in (1, 2)]
    out = []
    var_b = Polynomial(gb.varset, {(0, len(chi_b) - 1 - i): c for i, c in enumerate(chi_b)})
    for rb, kb, approx_b in real_roots(var_b):
        if approx_b:
            fibre = _numeric_fibre(gb.elements, a, b, rb)
            out.extend((x, rb, kb if len(fibre) == 1 else 1, True) for x, _ in fibre)
            continue
        fibre = _solve_univariate_system([g.substitute({b: rb}) for g in gb.elements], a)
        for x, _, approx_a in fibre:
            if approx_a:
                k = kb if len(fibre) == 1 else 1
            else:
                k = min(_root_multiplicity(chi, x + t * rb) for t, chi in forms)
            out.append((x, rb, k, approx_a))
    return out


def _numeric_fibre(gens: Sequence[Polynomial], a: str, b: str, rb: float) -> list[tuple[float, int]]:
    best = None
    for g in gens:
        coeffs = {}
        sizes = {}
        for e, c in g.terms.items():
            ka = e[g.vars.index(a)]
            kb = e[g.vars.index(b)]
            t = float(c) * rb ** kb
            coeffs[ka] = coeffs.get(ka, 0.0) + t
            sizes[ka] = max(sizes.get(ka, 0.0), abs(t))
        # a coefficient is noise when it cancelled down relative to its own terms
        coeffs = {k: v for k, v in coeffs.items() if abs(v) > 1e-10 * sizes[k]}
        if not coeffs:
            continue
        d = max(coeffs)
        if d == 0:
            return []
        if best is None or d < len(best) - 1:
            best = [coeffs.get(d - i, 0.0) for i in range(d + 1)]
    if best is None:
        raise NotZeroDimensional(f"{a} is free at {b} = {rb}")
    out = []
    for r in univariate_roots(best):
        if abs(r.imag) > REAL_TOL * max(1.0, abs(r)):
            continue
        pt = {a: r.real, b: rb}
        if all(residual(g, pt).normalized <= MEMBER_TOL for g in gens):
            out.append((r.real, 1))
    return out


def _at_infinity(gens, chart, free, fixed):
    """Zeros with ``fixed = 0`` on the chart ``chart = 1``, as (free value, mult, approx)."""
    polys = specialize(gens, {chart: 1})
    if any(p.is_constant() for p in polys):
        return []
    try:
        sols = solve_affine(polys, free, fixed)
    except NotZeroDimensional:
        # the chart carries a whole curve; fall back to the slice fixed = 0
        sliced = specialize(polys, {fixed: 0})
        if any(p.is_constant() for p in sliced):
            return []
        return _solve_univariate_system(sliced, free)
    return [(x, k, approx) for x, y, k, approx in sols if abs(y) <= REAL_TOL]


def classify_points(gens: Sequence[Polynomial], coords=("x", "y", "z")) -> PointSet:
    """Real projective zeros of homogeneous ``gens`` in the plane with ``coords``."""
    a, b, c = coords
    result = PointSet()
    extra = {v for g in gens for v in g.variables()} - set(coords)
    if extra:
        raise ValueError(f"generators still depend on {sorted(extra)}")
    one = Fraction(1)
    zero = Fraction(0)
    # affine chart c = 1
    try:
        aff = specialize(gens, {c: 1})
        if any(p.is_constant() for p in aff):
            sols = []
        else:
            sols = solve_affine(aff, a, b)
        for xa, xb, k, approx in sols:
            result.points.append(ProjectivePoint((xa, xb, one), k, approx))
    except NotZeroDimensional as exc:
        result.issues.append(f"{c}=1 chart: {exc}")
    # line at infinity: chart a = 1 in (b, c), then the point (0:1:0) in chart b = 1
    for chart, free, fixed in ((a, b, c), (b, a, c)):
        try:
            pts = _at_infinity(gens, chart, free, fixed)
        except NotZeroDimensional as exc:
            result.issues.append(f"{c}=0, {chart}=1 chart: {exc}")
            continue
        for val, k, approx in pts:
            if chart == a:
                pt_coords = (one, val, zero)
            elif abs(val) > REAL_TOL:
                continue
            else:
                pt_coords = (zero, one, zero)
            result.points.append(ProjectivePoint(pt_coords, k, approx))
    return result

"""Split a homogeneous ideal into its minimal components.

The splitting tree works on the variety: whenever a basis element factors,
the ideal branches into ``I + <f>`` for each distinct factor ``f``.  Leaves
whose basis has no reducible element are kept; unit ideals are dropped;
duplicates and non-minimal leaves are filtered at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .factor import factor_rational
from .groebner import (
    GroebnerBasis,
    Ideal,
    MonomialOrder,
    buchberger,
    normal_form,
    normalize,
)
from .poly import Polynomial

PRIME_CANDIDATE = "verified-prime-candidate"
POSSIBLY_REDUCIBLE = "possibly-reducible"
PARAMETER_TRIVIAL = "parameter-trivial"

MAX_FACTOR_DEGREE = 12


class DecompositionError(RuntimeError):
    pass


class DegenerateInputError(ValueError):
    """Every component was parameter-trivial."""


def _order_for(varset) -> MonomialOrder:
    return MonomialOrder.grevlex(varset)


def factor_generator(p: Polynomial, max_degree: int = MAX_FACTOR_DEGREE) -> list[Polynomial]:
    """Factors of ``p`` (up to a rational scalar), monomial content first.

    The monomial content is split into single variables (repeated by
    exponent).  The content-free cofactor is factored over QQ when its
    degree is at most ``max_degree`` and returned whole otherwise.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    content = p.monomial_content()
    out = []
    for i, k in enumerate(content):
        out.extend([Polynomial.variable(p.vars[i], p.vars)] * k)
    cof = p.div_monomial(content)
    if cof.is_constant():
        return out or [p]
    if cof.total_degree() > max_degree:
        return out + [cof]
    _, facs = factor_rational(cof)
    order = _order_for(p.vars)
    rest = []
    for f, k in facs:
        rest.extend([normalize(f, order)] * k)
    rest.sort(key=lambda f: (f.total_degree(), f.format()))
    return out + rest


@dataclass
class Component:
    ideal: Ideal
    basis: GroebnerBasis
    flags: set = field(default_factory=set)

    @property
    def key(self) -> frozenset:
        return frozenset(self.basis.elements)

    def contains_ideal(self, other: "Component") -> bool:
        """True when ``other.ideal`` is a subset of this component's ideal."""
        return all(not normal_form(g, self.basis) for g in other.basis.elements)

    def sort_key(self):
        return (
            max(g.total_degree() for g in self.basis.elements),
            len(self.basis.elements),
            [g.format() for g in self.basis.elements],
        )


@dataclass
class ComponentSet:
    source: Ideal
    components: list

    def ideals(self) -> list[Ideal]:
        return [c.ideal for c in self.components]

    def __len__(self) -> int:
        return len(self.components)


def minimal_components(ideal: Ideal, max_depth: int = 16,
                       max_factor_degree: int = MAX_FACTOR_DEGREE) -> ComponentSet:
    """Minimal components of ``ideal`` via recursive factor splitting."""
    order = _order_for(ideal.varset)
    leaves: dict[frozenset, Component] = {}
    seen: set = set()

    def split(current: Ideal, depth: int) -> None:
        gb = buchberger(current, order)
        if gb.is_unit():
            return
        key = frozenset(gb.elements)
        if key in seen:
            return
        seen.add(key)
        oversized = False
        for g in sorted(gb.elements, key=lambda g: (g.total_degree(), len(g), g.format())):
            if g.total_degree() > max_factor_degree and g.monomial_content() == (0,) * len(g.vars):
                oversized = True
                continue
            factors = factor_generator(g, max_factor_degree)
            distinct = list(dict.fromkeys(factors))
            if len(factors) == 1 and normalize_eq(factors[0], g, order):
                continue
            if depth >= max_depth:
                raise DecompositionError(f"splitting depth {max_depth} exceeded")
            for f in distinct:
                split(Ideal(gb.elements + (f,), current.varset), depth + 1)
            return
        comp = Component(Ideal(gb.elements, current.varset), gb,
                         {POSSIBLY_REDUCIBLE if oversized else PRIME_CANDIDATE})
        leaves[key] = comp

    split(ideal, 0)
    comps = sorted(leaves.values(), key=Component.sort_key)
    minimal = []
    for c in comps:
        if any(o is not c and c.contains_ideal(o) for o in comps):
            continue
        minimal.append(c)
    for c in minimal:
        if _is_parameter_trivial(c):
            c.flags.add(PARAMETER_TRIVIAL)
    return ComponentSet(ideal, minimal)


def normalize_eq(f: Polynomial, g: Polynomial, order: MonomialOrder) -> bool:
    return normalize(f, order) == normalize(g, order)


def _is_parameter_trivial(c: Component) -> bool:
    vs = c.ideal.varset
    if "kd" not in vs or "kn" not in vs:
        return False
    kd = Polynomial.variable("kd", vs)
    kn = Polynomial.variable("kn", vs)
    return not normal_form(kd, c.basis) and not normal_form(kn, c.basis)


def filter_parameter_trivial(cs: ComponentSet) -> ComponentSet:
    """Drop components containing both kd and kn; (kd, kn) never vanishes together."""
    kept = [c for c in cs.components if not _is_parameter_trivial(c)]
    if not kept:
        raise DegenerateInputError("every component contains both kd and kn")
    return ComponentSet(cs.source, kept)

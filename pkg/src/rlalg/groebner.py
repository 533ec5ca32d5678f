"""Buchberger's algorithm over QQ with reduced bases and elimination.

The hot loop works on integer-coefficient term dicts (fraction-free
reduction, content removed at the end); the public surface speaks
:class:`~rlalg.poly.Polynomial`.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from operator import add, sub
from typing import Callable, Iterable, Sequence

from .poly import Polynomial, check_varset

log = logging.getLogger(__name__)


def _grevlex_key(e):
    return (sum(e),) + tuple(-k for k in reversed(e))


def _lex_key(e):
    return e


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on exponent vectors over ``varset``.

    ``kind`` is ``lex``, ``grevlex`` or ``block``.  Variable precedence is
    the varset order.  A block order compares the leading ``front`` slots
    first (grevlex inside), then the remaining slots (grevlex inside); any
    monomial involving the front block beats every monomial free of it,
    which is what elimination needs.
    """

    kind: str
    varset: tuple
    front: int = 0
    key: Callable = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "varset", check_varset(self.varset))
        if self.kind == "lex":
            key = _lex_key
        elif self.kind == "grevlex":
            key = _grevlex_key
        elif self.kind == "block":
            k = self.front
            if not 0 < k < len(self.varset):
                raise ValueError("block order needs a non-empty front and back block")

            def key(e, k=k):
                a = e[:k]
                b = e[k:]
                return (
                    (sum(a),) + tuple(-i for i in reversed(a))
                    + (sum(b),) + tuple(-i for i in reversed(b))
                )
        else:
            raise ValueError(f"unknown order kind {self.kind!r}")
        object.__setattr__(self, "key", key)

    @classmethod
    def lex(cls, varset) -> MonomialOrder:
        return cls("lex", tuple(varset))

    @classmethod
    def grevlex(cls, varset) -> MonomialOrder:
        return cls("grevlex", tuple(varset))

    @classmethod
    def block(cls, front, back) -> MonomialOrder:
        front = tuple(front)
        return cls("block", front + tuple(back), len(front))

    @property
    def front_vars(self) -> tuple:
        return self.varset[: self.front] if self.kind == "block" else ()

    def leading_monomial(self, p: Polynomial):
        return max(p.terms, key=self.key)

    def leading_coefficient(self, p: Polynomial) -> Fraction:
        return p.terms[self.leading_monomial(p)]

    def sorted_terms(self, p: Polynomial):
        return sorted(p.terms.items(), key=lambda t: self.key(t[0]), reverse=True)


@dataclass(frozen=True)
class Ideal:
    """Generator list over a fixed varset; ``⟨0⟩`` has no generators."""

    varset: tuple
    generators: tuple

    def __init__(self, generators: Iterable[Polynomial], varset=None):
        gens = list(generators)
        if varset is None:
            if not gens:
                raise ValueError("empty generator list needs an explicit varset")
            varset = gens[0].vars
        varset = check_varset(varset)
        clean = []
        for g in gens:
            if g.vars != varset:
                g = g.to_varset(varset)
            if g:
                clean.append(g)
        object.__setattr__(self, "varset", varset)
        object.__setattr__(self, "generators", tuple(clean))

    def __add__(self, other: Ideal) -> Ideal:
        if other.varset != self.varset:
            raise ValueError("varset mismatch")
        return Ideal(self.generators + other.generators, self.varset)

    def with_generators(self, *polys: Polynomial) -> Ideal:
        return Ideal(self.generators + tuple(polys), self.varset)

    def to_varset(self, varset) -> Ideal:
        return Ideal([g.to_varset(varset) for g in self.generators], varset)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __str__(self) -> str:
        return "<" + ", ".join(g.format() for g in self.generators) + ">"


# -- integer term-dict kernel ------------------------------------------------


def _content(terms) -> int:
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _to_int_terms(p: Polynomial) -> tuple[dict, int]:
    """Clear denominators: returns (integer terms, D) with integer terms = D*p."""
    d = 1
    for c in p.terms.values():
        d = lcm(d, c.denominator)
    return {e: int(c * d) for e, c in p.terms.items()}, d


def _divides(a, b) -> bool:
    for i, j in zip(a, b):
        if i > j:
            return False
    return True


def _mask(e) -> int:
    m = 0
    for i, k in enumerate(e):
        if k:
            m |= 1 << i
    return m


class _Reducer:
    """Division by a list of (lm, lc, terms, mask) tuples under one order."""

    def __init__(self, key):
        self.key = key

    def reduce(self, f: dict, basis: Sequence[tuple], full: bool = True) -> tuple[dict, Fraction]:
        """Fraction-free normal form.

        Returns ``(r, s)`` with ``s*f - r`` in the ideal of ``basis`` and no
        term of ``r`` divisible by a leading monomial (only the leading term
        is guaranteed when ``full`` is false).  ``s`` is a positive rational.
        """
        key = self.key
        p = dict(f)
        heap = [(_neg(key(e)), e) for e in p]
        heapq.heapify(heap)
        r: dict = {}
        scale = Fraction(1)
        grown = 0
        while heap:
            _, m = heapq.heappop(heap)
            c = p.get(m)
            if c is None:
                continue
            mm = _mask(m)
            for glm, glc, gterms, gmask in basis:
                if gmask & ~mm == 0 and _divides(glm, m):
                    break
            else:
                r[m] = p.pop(m)
                if not full:
                    r.update(p)
                    return r, scale
                continue
            q = tuple(map(sub, m, glm))
            g = gcd(c, glc)
            a = glc // g
            b = c // g
            if a < 0:
                a, b = -a, -b
            if a != 1:
                scale *= a
                for e in p:
                    p[e] *= a
                for e in r:
                    r[e] *= a
                grown += 1
            for ge, gc in gterms.items():
                e = tuple(map(add, ge, q))
                old = p.get(e)
                if old is None:
                    p[e] = -b * gc
                    heapq.heappush(heap, (_neg(key(e)), e))
                else:
                    v = old - b * gc
                    if v:
                        p[e] = v
                    else:
                        del p[e]
            if a != 1 and grown % 4 == 0 and p:
                # strip common content so long tail reductions do not blow up
                g = gcd(_content(p), _content(r)) if r else _content(p)
                if g > 1:
                    scale = scale / g
                    for e in p:
                        p[e] //= g
                    for e in r:
                        r[e] //= g
        return r, scale


def _neg(k):
    return tuple(-i for i in k)


def _primitive(terms: dict, key) -> dict:
    """Divide by integer content and make the leading coefficient positive."""
    if not terms:
        return terms
    g = _content(terms)
    lm = max(terms, key=key)
    if terms[lm] < 0:
        g = -g
    if g == 1:
        return terms
    return {e: c // g for e, c in terms.items()}


def _entry(terms: dict, key) -> tuple:
    lm = max(terms, key=key)
    return (lm, terms[lm], terms, _mask(lm))


def _lcm_exp(a, b):
    return tuple(map(max, a, b))


def _coprime(a, b) -> bool:
    for i, j in zip(a, b):
        if i and j:
            return False
    return True


def _spoly(fi: tuple, fj: tuple) -> dict:
    lm_i, lc_i, ti, _ = fi
    lm_j, lc_j, tj, _ = fj
    m = _lcm_exp(lm_i, lm_j)
    qi = tuple(map(sub, m, lm_i))
    qj = tuple(map(sub, m, lm_j))
    g = gcd(lc_i, lc_j)
    ai = lc_j // g
    aj = lc_i // g
    out: dict = {}
    for e, c in ti.items():
        out[tuple(map(add, e, qi))] = ai * c
    for e, c in tj.items():
        e2 = tuple(map(add, e, qj))
        v = out.get(e2, 0) - aj * c
        if v:
            out[e2] = v
        else:
            out.pop(e2, None)
    return out


@dataclass
class BuchbergerStats:
    pairs: int = 0
    reductions_to_zero: int = 0
    product_criterion: int = 0
    chain_criterion: int = 0
    basis_size: int = 0


def _buchberger_terms(polys: list[dict], key, strategy: str = "sugar",
                      stats: BuchbergerStats | None = None) -> list[dict]:
    """Reduced Groebner basis of integer term dicts (primitive, lc > 0)."""
    stats = stats if stats is not None else BuchbergerStats()
    red = _Reducer(key)
    entries: list[tuple] = []  # (lm, lc, terms, mask)
    sugar: list[int] = []
    current: list[int] = []  # indices of the non-redundant part of the basis
    pairs: list[tuple] = []  # heap of (priority, counter, i, j)
    counter = 0

    def priority(i, j, m):
        if strategy == "normal":
            return _neg(key(m))
        s = max(sugar[i] + sum(m) - sum(entries[i][0]), sugar[j] + sum(m) - sum(entries[j][0]))
        return (s,) + _neg(key(m))

    def insert(terms: dict, s: int):
        nonlocal counter, pairs, current
        h = len(entries)
        entries.append(_entry(terms, key))
        sugar.append(s)
        lm_h = entries[h][0]
        # Gebauer-Moeller update
        cand = [(g, _lcm_exp(entries[g][0], lm_h)) for g in current]
        keep = []
        for idx, (g, m) in enumerate(cand):
            if _coprime(entries[g][0], lm_h):
                keep.append((g, m, True))
                continue
            dominated = False
            for g2, m2 in cand[idx + 1:]:
                if _divides(m2, m):
                    dominated = True
                    break
            if not dominated:
                for g2, m2, _ in keep:
                    if _divides(m2, m):
                        dominated = True
                        break
            if not dominated:
                keep.append((g, m, False))
            else:
                stats.chain_criterion += 1
        new_pairs = []
        for g, m, cop in keep:
            if cop:
                stats.product_criterion += 1
            else:
                new_pairs.append((g, m))
        # drop old pairs whose lcm is strictly divisible through lm_h
        if pairs:
            kept = []
            for item in pairs:
                _, _, i, j, m = item
                if _divides(lm_h, m):
                    mi = _lcm_exp(entries[i][0], lm_h)
                    mj = _lcm_exp(entries[j][0], lm_h)
                    if mi != m and mj != m:
                        stats.chain_criterion += 1
                        continue
                kept.append(item)
            if len(kept) != len(pairs):
                heapq.heapify(kept)
            pairs = kept
        for g, m in new_pairs:
            counter += 1
            heapq.heappush(pairs, (priority(g, h, m), counter, g, h, m))
        current = [g for g in current if not _divides(lm_h, entries[g][0])]
        current.append(h)

    # inter-reduce the input once so that sugar starts at the true degrees
    start = sorted((p for p in polys if p), key=lambda t: key(max(t, key=key)))
    for p in start:
        r, _ = red.reduce(p, [entries[i] for i in current])
        if r:
            if all(not any(e) for e in r):
                return [{next(iter(r)): 1}]
            insert(_primitive(r, key), max(sum(e) for e in p))

    while pairs:
        _, _, i, j, m = heapq.heappop(pairs)
        stats.pairs += 1
        s = _spoly(entries[i], entries[j])
        if not s:
            stats.reductions_to_zero += 1
            continue
        sg = max(sugar[i] + sum(m) - sum(entries[i][0]), sugar[j] + sum(m) - sum(entries[j][0]))
        r, _ = red.reduce(s, [entries[k] for k in current])
        if not r:
            stats.reductions_to_zero += 1
            continue
        r = _primitive(r, key)
        if all(not any(e) for e in r):
            return [{next(iter(r)): 1}]
        insert(r, sg)
        if len(entries) % 50 == 0:
            log.debug("basis %d, pending pairs %d", len(current), len(pairs))

    # minimal, then reduced
    basis = [entries[i] for i in current]
    basis.sort(key=lambda t: key(t[0]))
    out = []
    for idx, b in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        r, _ = red.reduce(b[2], others)
        out.append(_primitive(r, key))
    stats.basis_size = len(out)
    out.sort(key=lambda t: key(max(t, key=key)), reverse=True)
    return out


# -- public surface -------------------------------------------------------------


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced basis, each element primitive over ZZ with positive leading coefficient."""

    order: MonomialOrder
    elements: tuple

    @property
    def varset(self) -> tuple:
        return self.order.varset

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def leading_monomials(self) -> list:
        return [self.order.leading_monomial(g) for g in self.elements]

    def ideal(self) -> Ideal:
        return Ideal(self.elements, self.varset)

    def _entries(self) -> list[tuple]:
        key = self.order.key
        return [_entry(_to_int_terms(g)[0], key) for g in self.elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(g.format(self.order) for g in self.elements) + "}"


def normalize(p: Polynomial, order: MonomialOrder) -> Polynomial:
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if not p:
        return p
    terms, _ = _to_int_terms(p)
    return Polynomial(p.vars, _primitive(terms, order.key))


def _embed(p: Polynomial, varset: tuple) -> Polynomial:
    return p if p.vars == varset else p.to_varset(varset)


def buchberger(ideal: Ideal, order: MonomialOrder, strategy: str = "sugar",
               stats: BuchbergerStats | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``order``.

    ``strategy`` selects the next critical pair: ``normal`` takes the pair
    with the smallest lcm, ``sugar`` orders by sugar degree first.
    """
    varset = order.varset
    polys = [_to_int_terms(_embed(g, varset))[0] for g in ideal.generators]
    out = _buchberger_terms(polys, order.key, strategy, stats)
    return GroebnerBasis(order, tuple(Polynomial(varset, t) for t in out))


def normal_form(p: Polynomial, basis: GroebnerBasis) -> Polynomial:
    """Remainder of ``p`` on division by ``basis`` (exact, not rescaled)."""
    if p.vars != basis.varset:
        p = p.to_varset(basis.varset)
    if not p:
        return p
    terms, d = _to_int_terms(p)
    r, s = _Reducer(basis.order.key).reduce(terms, basis._entries())
    scale = 1 / (d * s)
    return Polynomial(basis.varset, {e: c * scale for e, c in r.items()})


def eliminate(ideal: Ideal, elim_vars: Iterable[str], strategy: str = "sugar") -> Ideal:
    """Generators of the elimination ideal in the remaining variables.

    The result lives on the varset with ``elim_vars`` removed (original
    order kept).
    """
    elim = [v for v in ideal.varset if v in set(elim_vars)]
    unknown = set(elim_vars) - set(ideal.varset)
    if unknown:
        raise ValueError(f"cannot eliminate variables outside the varset: {sorted(unknown)}")
    keep = tuple(v for v in ideal.varset if v not in elim)
    if not elim:
        return ideal
    if not keep:
        raise ValueError("nothing left after elimination")
    order = MonomialOrder.block(elim, keep)
    gb = buchberger(ideal, order, strategy)
    gens = [g for g in gb.elements if not any(g.degree(v) > 0 for v in elim)]
    return Ideal([g.to_varset(keep) for g in gens], keep)


def intersect(i1: Ideal, i2: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating a tag variable from ``t*I + (1-t)*J``."""
    if i1.varset != i2.varset:
        raise ValueError("varset mismatch")
    if "t" in i1.varset:
        raise ValueError("tag variable t already in use")
    big = i1.varset + ("t",)
    t = Polynomial.variable("t", big)
    one = Polynomial.constant(1, big)
    gens = [t * g.to_varset(big) for g in i1.generators]
    gens += [(one - t) * g.to_varset(big) for g in i2.generators]
    return eliminate(Ideal(gens, big), ["t"])


def default_order(varset) -> MonomialOrder:
    return MonomialOrder.grevlex(varset)


def contains(ideal: Ideal, p: Polynomial, order: MonomialOrder | None = None) -> bool:
    order = order or default_order(ideal.varset)
    gb = buchberger(ideal, order)
    return not normal_form(p, gb)


def ideal_equal(i1: Ideal, i2: Ideal, order: MonomialOrder | None = None) -> bool:
    if i1.varset != i2.varset:
        raise ValueError("varset mismatch")
    order = order or default_order(i1.varset)
    g1 = buchberger(i1, order)
    g2 = buchberger(i2, order)
    return set(g1.elements) == set(g2.elements)


def is_subideal(i1: Ideal, i2: Ideal, order: MonomialOrder | None = None) -> bool:
    """True when every generator of ``i1`` lies in ``i2``."""
    order = order or default_order(i2.varset)
    gb = buchberger(i2, order)
    return all(not normal_form(g, gb) for g in i1.generators)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """Rational S-polynomial (leading terms cancel)."""
    key = order.key
    mf = max(f.terms, key=key)
    mg = max(g.terms, key=key)
    m = _lcm_exp(mf, mg)
    a = f.mul_monomial(tuple(map(sub, m, mf)), 1 / f.terms[mf])
    b = g.mul_monomial(tuple(map(sub, m, mg)), 1 / g.terms[mg])
    return a - b

"""Sparse multivariate polynomials with exact rational coefficients.

Polynomials live over a fixed universe of variable names.  A polynomial
carries its own ordered variable tuple (its *varset*) and a term map from
dense exponent tuples to :class:`fractions.Fraction` coefficients.

Example:
    >>> p = parse("2*x*y*kd + y*z*kn", ("x", "y", "z", "kd", "kn"))
    >>> p.monomial_content()
    (0, 1, 0, 0, 0)
"""

from __future__ import annotations

import re
from fractions import Fraction
from operator import add
from typing import Iterable, Mapping, Union

VARIABLES = ("x", "y", "z", "kd", "kn", "u", "v", "w", "l", "t", "s")

Monomial = tuple  # dense exponent vector, one slot per varset entry
Number = Union[int, Fraction]


class PolynomialSyntaxError(ValueError):
    """Raised by :func:`parse` with the offending character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def check_varset(varset: Iterable[str]) -> tuple[str, ...]:
    varset = tuple(varset)
    if len(set(varset)) != len(varset):
        raise ValueError(f"duplicate variable in {varset}")
    for name in varset:
        if name not in VARIABLES:
            raise ValueError(f"unknown variable {name!r}")
    return varset


class Polynomial:
    """Immutable sparse polynomial over QQ."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, varset: Iterable[str], terms: Mapping[Monomial, Number] | None = None):
        self.vars = check_varset(varset)
        n = len(self.vars)
        clean = {}
        for exp, c in (terms or {}).items():
            if c:
                if len(exp) != n:
                    raise ValueError("exponent length does not match varset")
                clean[tuple(exp)] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, varset: tuple[str, ...], terms: dict) -> Polynomial:
        # trusted constructor: varset already checked, terms clean
        p = object.__new__(cls)
        p.vars = varset
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Number, varset: Iterable[str]) -> Polynomial:
        varset = check_varset(varset)
        return cls._raw(varset, {(0,) * len(varset): Fraction(c)} if c else {})

    @classmethod
    def variable(cls, name: str, varset: Iterable[str]) -> Polynomial:
        varset = check_varset(varset)
        if name not in varset:
            raise ValueError(f"variable {name!r} not in varset {varset}")
        exp = tuple(int(v == name) for v in varset)
        return cls._raw(varset, {exp: Fraction(1)})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.vars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var: str) -> int:
        i = self._index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def degree_in(self, names: Iterable[str]) -> int:
        """Largest total degree in the given subset of variables."""
        idx = [self._index(v) for v in names]
        if not self.terms:
            return -1
        return max(sum(e[i] for i in idx) for e in self.terms)

    def variables(self) -> tuple[str, ...]:
        """Variables actually occurring, in varset order."""
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_homogeneous(self, names: Iterable[str] | None = None) -> bool:
        """True when every term has the same degree in ``names`` (default: all)."""
        if names is None:
            degs = {sum(e) for e in self.terms}
        else:
            idx = [self._index(v) for v in names]
            degs = {sum(e[i] for i in idx) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exp: Monomial) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r} for varset {self.vars}") from None

    def _check(self, other: Polynomial) -> None:
        if self.vars != other.vars:
            raise ValueError(f"varset mismatch: {self.vars} vs {other.vars}")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.vars)
        return NotImplemented

    # -- ring operations -----------------------------------------------

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial._raw(self.vars, {})
            return Polynomial._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(add, e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial._raw(self.vars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> Polynomial:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(other))

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_monomial(self, exp: Monomial, c: Number = 1) -> Polynomial:
        c = Fraction(c)
        return Polynomial._raw(
            self.vars, {tuple(map(add, e, exp)): k * c for e, k in self.terms.items()} if c else {}
        )

    # -- calculus and substitution -------------------------------------

    def derivative(self, var: str) -> Polynomial:
        i = self._index(var)
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                terms[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return Polynomial._raw(self.vars, terms)

    def homogenize(self, hvar: str) -> Polynomial:
        """Pad every term with powers of ``hvar`` up to the total degree."""
        i = self._index(hvar)
        if self.degree(hvar) > 0:
            raise ValueError(f"{hvar} already occurs in the polynomial")
        d = self.total_degree()
        terms = {}
        for e, c in self.terms.items():
            terms[e[:i] + (d - sum(e),) + e[i + 1:]] = c
        return Polynomial._raw(self.vars, terms)

    def dehomogenize(self, hvar: str) -> Polynomial:
        return self.substitute({hvar: 1})

    def monomial_content(self) -> Monomial:
        """Component-wise minimum of the exponent vectors."""
        if not self.terms:
            raise ValueError("monomial content of the zero polynomial")
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, k in enumerate(e):
                if k < m[i]:
                    m[i] = k
        return tuple(m)

    def div_monomial(self, exp: Monomial) -> Polynomial:
        """Exact division by a monomial dividing every term."""
        terms = {}
        for e, c in self.terms.items():
            q = tuple(a - b for a, b in zip(e, exp))
            if min(q) < 0:
                raise ValueError("monomial does not divide polynomial")
            terms[q] = c
        return Polynomial._raw(self.vars, terms)

    def evaluate(self, assignment: Mapping[str, Number]) -> Fraction:
        """Exact value at a rational point; every occurring variable must be assigned."""
        missing = [v for v in self.variables() if v not in assignment]
        if missing:
            raise ValueError(f"missing value for {', '.join(missing)}")
        vals = [Fraction(assignment.get(v, 0)) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for val, k in zip(vals, e):
                if k:
                    t *= val ** k
            total += t
        return total

    def evaluate_float(self, assignment: Mapping[str, complex]) -> complex:
        vals = [assignment.get(v, 0) for v in self.vars]
        total = 0
        for e, c in self.terms.items():
            t = float(c)
            for val, k in zip(vals, e):
                if k:
                    t *= val ** k
            total += t
        return total

    def substitute(self, mapping: Mapping[str, Union[Number, Polynomial]]) -> Polynomial:
        """Replace variables by numbers or polynomials over the same varset."""
        numeric = {}
        symbolic = {}
        for name, val in mapping.items():
            i = self._index(name)
            if isinstance(val, Polynomial):
                self._check(val)
                symbolic[i] = val
            else:
                numeric[i] = Fraction(val)
        terms: dict = {}
        for e, c in self.terms.items():
            e = list(e)
            for i, val in numeric.items():
                k = e[i]
                if k:
                    c = c * val ** k
                    e[i] = 0
            if c:
                e = tuple(e)
                terms[e] = terms.get(e, 0) + c
        result = Polynomial._raw(self.vars, {e: c for e, c in terms.items() if c})
        if not symbolic:
            return result
        out = Polynomial._raw(self.vars, {})
        for e, c in result.terms.items():
            e = list(e)
            factor = Polynomial.constant(c, self.vars)
            for i, val in symbolic.items():
                if e[i]:
                    factor = factor * val ** e[i]
                    e[i] = 0
            out = out + factor.mul_monomial(tuple(e))
        return out

    def to_varset(self, varset: Iterable[str]) -> Polynomial:
        """Re-embed into another varset; occurring variables must survive."""
        varset = check_varset(varset)
        pos = {v: i for i, v in enumerate(varset)}
        for v in self.variables():
            if v not in pos:
                raise ValueError(f"variable {v!r} not in target varset {varset}")
        idx = [(pos[v], i) for i, v in enumerate(self.vars) if v in pos]
        n = len(varset)
        terms = {}
        for e, c in self.terms.items():
            new = [0] * n
            for j, i in idx:
                new[j] = e[i]
            terms[tuple(new)] = c
        return Polynomial._raw(varset, terms)

    def coefficients_in(self, names: Iterable[str]) -> dict[Monomial, Polynomial]:
        """Split into {exponents in ``names``: coefficient polynomial in the rest}."""
        idx = [self._index(v) for v in names]
        out: dict = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: Polynomial._raw(self.vars, t) for k, t in out.items()}

    # -- formatting ------------------------------------------------------

    def format(self, order=None) -> str:
        """Canonical text, terms sorted descending by ``order`` (default grevlex)."""
        if not self.terms:
            return "0"
        if order is None:
            from .groebner import MonomialOrder

            order = MonomialOrder.grevlex(self.vars)
        key = order.key
        parts = []
        for e in sorted(self.terms, key=key, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.format()!r}, vars={self.vars})"


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(kd|kn|[xyzuvwlts])|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            word = re.match(r"[A-Za-z_]\w*", text[pos:])
            if word:
                raise PolynomialSyntaxError(f"unknown variable {word.group(0)!r}", pos)
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("var", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, varset: tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.varset = varset

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            raise PolynomialSyntaxError(f"expected {value!r}", pos)

    def expr(self) -> Polynomial:
        sign = 1
        kind, val, _ = self.peek()
        if val in "+-" and kind == "op":
            self.take()
            sign = -1 if val == "-" else 1
        result = self.term() * sign
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in ("+", "-"):
                self.take()
                t = self.term()
                result = result + t if val == "+" else result - t
            else:
                return result

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                result = result * self.factor()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Polynomial:
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise PolynomialSyntaxError("expected integer exponent", pos)
            base = base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "num":
            c = Fraction(int(val))
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "num":
                    raise PolynomialSyntaxError("expected integer denominator", p3)
                if int(v3) == 0:
                    raise PolynomialSyntaxError("zero denominator", p3)
                c /= int(v3)
            return Polynomial.constant(c, self.varset)
        if kind == "var":
            if val not in self.varset:
                raise PolynomialSyntaxError(f"variable {val!r} not in varset {self.varset}", pos)
            return Polynomial.variable(val, self.varset)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise PolynomialSyntaxError("unexpected end of input", pos)
        raise PolynomialSyntaxError(f"unexpected {val!r}", pos)


def parse(text: str, varset: Iterable[str]) -> Polynomial:
    """Parse polynomial text such as ``x^2*kd - y^2*kd + x*z*kn + z^2*kn``.

    Coefficients are integers or ``a/b``; ``*`` between factors may be
    omitted; parentheses group subexpressions.
    """
    varset = check_varset(varset)
    parser = _Parser(text, varset)
    result = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise PolynomialSyntaxError(f"unexpected {val!r}", pos)
    return result


def parse_many(texts: Iterable[str], varset: Iterable[str]) -> list[Polynomial]:
    varset = tuple(varset)
    return [parse(t, varset) for t in texts]

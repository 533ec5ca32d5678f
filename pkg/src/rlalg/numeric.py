"""Floating-point cross-checks: polynomial roots, residuals, contour tracing."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .poly import Polynomial

CLUSTER_TOL = 1e-7
# candidate multiple roots are gathered loosely, then confirmed through derivatives
LOOSE_CLUSTER_TOL = 1e-3
MULTIPLE_ROOT_TOL = 1e-8


@dataclass(frozen=True)
class Residual:
    value: float
    scale: float

    @property
    def normalized(self) -> float:
        return self.value / self.scale


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z)
    for c in coeffs:
        out = out * z + c
    return out


def _aberth(coeffs: np.ndarray, maxiter: int = 500) -> np.ndarray:
    """Simultaneous Aberth-Ehrlich iteration for a monic complex polynomial."""
    n = len(coeffs) - 1
    deriv = coeffs[:-1] * np.arange(n, 0, -1)
    # Fujiwara-style radius; start points on a rotated circle
    mags = np.abs(coeffs[1:])
    radius = 2 * max(mags[k] ** (1.0 / (k + 1)) for k in range(n))
    radius = max(radius, 1e-3)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    z = radius * np.exp(1j * angles)
    for _ in range(maxiter):
        p = _horner(coeffs, z)
        dp = _horner(deriv, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(p == 0, 0, p / dp)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        inv = 1 / diff
        np.fill_diagonal(inv, 0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(ratio == 0, 0, ratio / (1 - ratio * s))
        step = np.nan_to_num(step)
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1, np.abs(z))):
            break
    return z


def _polish(coeffs: np.ndarray, z: complex, steps: int = 3) -> complex:
    n = len(coeffs) - 1
    deriv = coeffs[:-1] * np.arange(n, 0, -1)
    for _ in range(steps):
        p = _horner(coeffs, np.array([z]))[0]
        dp = _horner(deriv, np.array([z]))[0]
        if dp == 0:
            break
        nz = z - p / dp
        if abs(_horner(coeffs, np.array([nz]))[0]) >= abs(p):
            break
        z = nz
    return z


def _derivative(coeffs: np.ndarray, k: int) -> np.ndarray:
    for _ in range(k):
        n = len(coeffs) - 1
        coeffs = coeffs[:-1] * np.arange(n, 0, -1)
    return coeffs


def _merge_cluster(arr: np.ndarray, roots: list[complex], group: list[int]) -> None:
    """Replace a loose cluster by one multiple root when the derivatives agree.

    A root of multiplicity k is a simple root of the (k-1)-th derivative, so
    Newton on that derivative recovers it to full precision.  Clusters that
    fail the derivative test fall back to plain averaging at ``CLUSTER_TOL``.
    """
    k = len(group)
    m = sum(roots[i] for i in group) / k
    m = _polish(_derivative(arr, k - 1), m, steps=8)
    if all(_normalized(_derivative(arr, j), m) <= MULTIPLE_ROOT_TOL for j in range(k)):
        for i in group:
            roots[i] = m
        return
    sub = [roots[i] for i in group]
    for g in _clusters(sub, CLUSTER_TOL):
        if len(g) > 1:
            mean = sum(sub[i] for i in g) / len(g)
            for i in g:
                roots[group[i]] = mean


def _normalized(coeffs: np.ndarray, z: complex) -> float:
    n = len(coeffs) - 1
    terms = [c * z ** (n - k) for k, c in enumerate(coeffs)]
    scale = max(max(abs(t) for t in terms), 1e-300)
    return abs(sum(terms)) / scale


def _clusters(roots: list[complex], tol: float) -> list[list[int]]:
    groups: list[list[int]] = []
    for i, r in enumerate(roots):
        for g in groups:
            if abs(roots[g[0]] - r) <= tol * max(1.0, abs(r)):
                g.append(i)
                break
        else:
            groups.append([i])
    return groups


def univariate_roots(coeffs: Sequence) -> list[complex]:
    """All complex roots, with multiplicity, of a polynomial given highest degree first.

    Real-coefficient input yields a conjugate-closed list; roots inside a
    cluster of radius ``CLUSTER_TOL`` are replaced by the cluster mean.
    """
    c = [complex(Fraction(x)) if not isinstance(x, complex) else x for x in coeffs]
    while c and c[0] == 0:
        c.pop(0)
    if not c:
        raise ValueError("zero polynomial has no finite root set")
    if len(c) == 1:
        raise ValueError("constant polynomial has no roots")
    real_input = all(x.imag == 0 for x in c)
    arr = np.array(c, dtype=complex)
    arr = arr / arr[0]
    # zero roots split off exactly
    nzero = 0
    while len(arr) > 1 and arr[-1] == 0:
        arr = arr[:-1]
        nzero += 1
    roots: list[complex] = []
    if len(arr) > 1:
        z = _aberth(arr)
        roots = [complex(_polish(arr, complex(r))) for r in z]
        for g in _clusters(roots, LOOSE_CLUSTER_TOL):
            if len(g) > 1:
                _merge_cluster(arr, roots, g)
        if real_input:
            roots = _conjugate_close(roots)
    roots.extend([0j] * nzero)
    return sorted(roots, key=lambda r: (r.real, r.imag))


def _conjugate_close(roots: list[complex]) -> list[complex]:
    """Snap near-real roots to the axis and symmetrize conjugate pairs."""
    out: list[complex] = []
    pending = sorted(roots, key=lambda r: (r.real, -r.imag))
    used = [False] * len(pending)
    for i, r in enumerate(pending):
        if used[i]:
            continue
        used[i] = True
        if abs(r.imag) <= CLUSTER_TOL * max(1.0, abs(r)):
            out.append(complex(r.real, 0.0))
            continue
        best, dist = None, math.inf
        for j in range(len(pending)):
            if not used[j]:
                d = abs(pending[j] - r.conjugate())
                if d < dist:
                    best, dist = j, d
        if best is None:
            out.append(r)
            continue
        used[best] = True
        s = pending[best]
        m = complex((r.real + s.real) / 2, (abs(r.imag) + abs(s.imag)) / 2)
        out.extend([m, m.conjugate()])
    return out


def root_residual(coeffs: Sequence, root: complex) -> float:
    """|p(root)| / max |term| for a coefficient list (highest first)."""
    c = [complex(Fraction(x)) for x in coeffs]
    n = len(c) - 1
    terms = [c[k] * root ** (n - k) for k in range(n + 1)]
    scale = max(max(abs(t) for t in terms), 1e-300)
    return abs(sum(terms)) / scale


def sample_root_locus(num: Sequence, den: Sequence, lambda_grid: Sequence[float]) -> list[tuple[float, complex]]:
    """Roots of den + lam*num for every lam in the grid, in grid order."""
    out = []
    dn = [float(Fraction(c)) for c in den]
    nn = [float(Fraction(c)) for c in num]
    for lam in lambda_grid:
        if not math.isfinite(lam):
            raise ValueError("lambda grid values must be finite")
        size = max(len(dn), len(nn))
        p = [0.0] * size
        for k, c in enumerate(reversed(dn)):
            p[size - 1 - k] += c
        for k, c in enumerate(reversed(nn)):
            p[size - 1 - k] += lam * c
        for r in univariate_roots(p):
            out.append((lam, r))
    return out


def residual(p: Polynomial, point: Mapping[str, float]) -> Residual:
    """Absolute value at ``point`` and the largest term magnitude (floored at 1)."""
    vals = [point.get(v, 0.0) for v in p.vars]
    missing = [v for v in p.variables() if v not in point]
    if missing:
        raise ValueError(f"missing value for {', '.join(missing)}")
    total = 0.0
    scale = 1.0
    for e, c in p.terms.items():
        t = float(c)
        for val, k in zip(vals, e):
            if k:
                t *= val ** k
        total += t
        scale = max(scale, abs(t))
    return Residual(abs(total), scale)


def trace_curve(f: Polynomial, bbox: tuple[float, float, float, float], resolution: int = 256,
                xvar: str = "x", yvar: str = "y") -> list[list[tuple[float, float]]]:
    """Marching-squares zero contour of ``f(xvar, yvar)`` over ``bbox``.

    ``bbox`` is ``(x0, x1, y0, y1)``.  Returns polylines of (x, y) vertices;
    closed curves repeat their first vertex at the end.
    """
    x0, x1, y0, y1 = bbox
    if not (x1 > x0 and y1 > y0):
        raise ValueError("degenerate bounding box")
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    if not f:
        raise ValueError("cannot trace the zero polynomial")
    others = [v for v in f.variables() if v not in (xvar, yvar)]
    if others:
        raise ValueError(f"curve depends on {others}")
    n = resolution + 1
    xs = np.linspace(x0, x1, n)
    ys = np.linspace(y0, y1, n)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    ix = f.vars.index(xvar)
    iy = f.vars.index(yvar)
    terms = [(float(c), e[ix], e[iy]) for e, c in f.terms.items()]
    F = np.zeros_like(X)
    for c, kx, ky in terms:
        F += c * X ** kx * Y ** ky

    def value(x: float, y: float) -> float:
        return sum(c * x ** kx * y ** ky for c, kx, ky in terms)

    return _march(F, xs, ys, value)


def _refine(value, p, q, fp: float, fq: float, iterations: int = 60) -> tuple[float, float]:
    """Zero of ``value`` on the segment p-q (signs differ), by Illinois regula falsi."""
    a, b = 0.0, 1.0
    fa, fb = fp, fq
    side = 0
    t = a
    for _ in range(iterations):
        t = (a * fb - b * fa) / (fb - fa) if fb != fa else (a + b) / 2
        ft = value(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
        if ft == 0 or b - a < 1e-15:
            break
        if (ft > 0) == (fb > 0):
            b, fb = t, ft
            if side == -1:
                fa /= 2
            side = -1
        else:
            a, fa = t, ft
            if side == 1:
                fb /= 2
            side = 1
    return p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])


def _march(F: np.ndarray, xs: np.ndarray, ys: np.ndarray, value=None) -> list[list[tuple[float, float]]]:
    n = len(xs)
    positive = F > 0
    # edge ids: ('h', i, j) between (i,j)-(i+1,j); ('v', i, j) between (i,j)-(i,j+1)
    point_of: dict = {}

    def crossing(edge):
        if edge in point_of:
            return point_of[edge]
        kind, i, j = edge
        if kind == "h":
            a, b = F[i, j], F[i + 1, j]
            p, q = (xs[i], ys[j]), (xs[i + 1], ys[j])
        else:
            a, b = F[i, j], F[i, j + 1]
            p, q = (xs[i], ys[j]), (xs[i], ys[j + 1])
        if value is not None and a != 0 and b != 0:
            pt = _refine(value, p, q, float(a), float(b))
        else:
            t = a / (a - b) if a != b else 0.5
            pt = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
        point_of[edge] = (float(pt[0]), float(pt[1]))
        return point_of[edge]

    adjacency: dict = {}

    def link(e1, e2):
        adjacency.setdefault(e1, []).append(e2)
        adjacency.setdefault(e2, []).append(e1)

    for i in range(n - 1):
        for j in range(n - 1):
            s0, s1, s2, s3 = positive[i, j], positive[i + 1, j], positive[i + 1, j + 1], positive[i, j + 1]
            if s0 == s1 == s2 == s3:
                continue
            bottom = ("h", i, j)
            right = ("v", i + 1, j)
            top = ("h", i, j + 1)
            left = ("v", i, j)
            edges = [e for e, (a, b) in
                     ((bottom, (s0, s1)), (right, (s1, s2)), (top, (s3, s2)), (left, (s0, s3)))
                     if a != b]
            if len(edges) == 2:
                link(*edges)
            else:
                # saddle: resolve with the cell-centre sign
                centre = (F[i, j] + F[i + 1, j] + F[i + 1, j + 1] + F[i, j + 1]) > 0
                if centre == s0:
                    link(bottom, right)
                    link(top, left)
                else:
                    link(bottom, left)
                    link(top, right)

    lines = []
    visited: set = set()
    # open chains start from endpoints (degree 1), then closed loops
    starts = [e for e, nb in adjacency.items() if len(nb) == 1] + list(adjacency)
    for start in starts:
        if start in visited:
            continue
        chain = [start]
        visited.add(start)
        prev, cur = None, start
        while True:
            nxt = [e for e in adjacency[cur] if e != prev and e not in visited]
            if not nxt:
                if prev is not None and start in adjacency[cur] and len(chain) > 2:
                    chain.append(start)
                break
            prev, cur = cur, nxt[0]
            visited.add(cur)
            chain.append(cur)
        lines.append([crossing(e) for e in chain])
    return lines

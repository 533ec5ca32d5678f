"""Numeric and structural self-checks of a decomposition and its dual."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy

from .dual import check_bidual, degree_law, dualize_component
from .numeric import residual, sample_root_locus
from .rootlocus import Decomposition, RLComponent, TransferFunction

PASS = "pass"
FAIL = "fail"
SKIP = "skip"

TERMINAL_PROBES = (-1000.0, 1000.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str

    def line(self) -> str:
        return f"{self.status.upper():4} {self.name}: {self.detail}"


def lambda_grid(samples: int, span: float = 10.0) -> list[float]:
    """``samples`` evenly spaced gains on [-span, span] plus two far probes."""
    if samples < 1:
        raise ValueError("need at least one sample")
    grid = list(np.linspace(-span, span, samples)) if samples > 1 else [0.0]
    return [float(x) for x in grid] + list(TERMINAL_PROBES)


def component_residual(c: RLComponent, x: float, y: float, lam: float) -> float:
    """Normalized residual of an affine point on a component.

    Uses the parameter-free affine equation when there is one and the whole
    generator set at ``(kd, kn) = (1, lam)`` otherwise.
    """
    if c.affine_equation is not None:
        return residual(c.affine_equation, {"x": x, "y": y}).normalized
    point = {"x": x, "y": y, "z": 1.0, "kd": 1.0, "kn": lam}
    return max(residual(g, point).normalized for g in c.ideal.generators)


@dataclass(frozen=True)
class OracleReport:
    samples: int
    worst: float
    failures: tuple

    def ok(self, tol: float) -> bool:
        return self.worst <= tol


def oracle_agreement(dec: Decomposition, grid: Sequence[float]) -> OracleReport:
    """Every sampled root of ``den + lam*num`` must lie on some component."""
    worst = 0.0
    failures = []
    points = sample_root_locus(dec.tf.num, dec.tf.den, grid)
    for lam, root in points:
        best = min(component_residual(c, root.real, root.imag, lam) for c in dec.components)
        if best > worst:
            worst = best
        failures.append((best, lam, root))
    failures.sort(key=lambda t: -t[0])
    return OracleReport(len(points), worst, tuple(failures[:5]))


def reference_roots(coeffs: Sequence) -> list[complex]:
    """High-precision roots from sympy, used as an independent reference."""
    s = sympy.Symbol("s")
    poly = sympy.Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                       for c in coeffs], s)
    return [complex(r) for r in poly.nroots(n=30, maxsteps=200)]


def match_distance(found: Sequence[complex], expected: Sequence[complex]) -> float:
    """Largest distance in a greedy one-to-one matching of two root lists."""
    if len(found) != len(expected):
        return math.inf
    pool = list(found)
    worst = 0.0
    for r in expected:
        k = min(range(len(pool)), key=lambda i: abs(pool[i] - r))
        worst = max(worst, abs(pool.pop(k) - r))
    return worst


def pole_agreement(tf: TransferFunction) -> float:
    """Distance between the gain-zero samples and the poles."""
    found = [r for _, r in sample_root_locus(tf.num, tf.den, [0.0])]
    return match_distance(found, reference_roots(tf.den))


def conjugate_gap(dec: Decomposition, grid: Sequence[float]) -> float:
    roots = [r for _, r in sample_root_locus(dec.tf.num, dec.tf.den, grid)]
    return match_distance([r.conjugate() for r in roots], roots)


def run_checks(dec: Decomposition, samples: int = 100, tol: float = 1e-8,
               pole_tol: float = 1e-10, dual: bool = True) -> list[CheckResult]:
    """Oracle agreement, pole limits, conjugate closure, bidual and degree law."""
    grid = lambda_grid(samples)
    out = []
    rep = oracle_agreement(dec, grid)
    detail = f"{rep.samples} roots, worst normalized residual {rep.worst:.3e} (tol {tol:g})"
    if not rep.ok(tol):
        best, lam, root = rep.failures[0]
        detail += f"; worst at lambda={lam:g}, s={root.real:.6g}{root.imag:+.6g}i"
    out.append(CheckResult("oracle-agreement", PASS if rep.ok(tol) else FAIL, detail))
    d = pole_agreement(dec.tf)
    out.append(CheckResult("poles-at-zero-gain", PASS if d <= pole_tol else FAIL,
                           f"max distance {d:.3e} (tol {pole_tol:g})"))
    gap = conjugate_gap(dec, grid)
    out.append(CheckResult("conjugate-closure", PASS if gap <= 1e-12 else FAIL,
                           f"max gap {gap:.3e}"))
    if not dual:
        return out
    for i, c in enumerate(dec.components):
        try:
            dc = dualize_component(c)
        except ValueError as exc:
            out.append(CheckResult(f"dual[{i}]", FAIL, str(exc)))
            continue
        b = check_bidual(dc)
        out.append(CheckResult(f"bidual[{i}]", PASS if b.ok else FAIL,
                               f"{b.method}, worst residual {b.max_residual:.3e}"
                               + (f" over {b.samples} points" if b.samples else "")))
        law = degree_law(dc)
        status = {"pass": PASS, "fail": FAIL}.get(law.status, SKIP)
        out.append(CheckResult(
            f"degree-law[{i}]", status,
            f"{law.status}: source degree {law.source_degree}, dual degree "
            f"{law.dual_degree}, d(d-1) = {law.expected}"))
    return out

"""Serialization of decompositions: JSON reports, CSV vertices and SVG plots.

Exact rationals are written as ``"a/b"`` strings; polynomials as strings in
the parser grammar together with their variable list, so every report can
be read back exactly.
"""

from __future__ import annotations

import html
from fractions import Fraction
from typing import Iterable, Sequence

from .dual import ADRL, DualComponent, degree_law
from .numeric import trace_curve
from .points import PointSet, ProjectivePoint
from .poly import Polynomial, parse
from .rootlocus import Decomposition, RLComponent

SCHEMA_VERSION = 1

STROKES = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def rational(c: Fraction | int) -> str:
    return str(Fraction(c))


def poly_json(p: Polynomial | None) -> str | None:
    return None if p is None else p.format()


def read_poly(text: str, variables: Sequence[str]) -> Polynomial:
    return parse(text, variables)


def point_json(p: ProjectivePoint) -> dict:
    coords = [float(c) if p.approximate else rational(c) for c in p.coords]
    return {"coords": coords, "multiplicity": p.multiplicity, "approximate": p.approximate}


def points_json(ps: PointSet | None) -> dict:
    if ps is None:
        return {"points": [], "issues": []}
    return {"points": [point_json(p) for p in ps.points], "issues": list(ps.issues)}


def merged_json(pairs: Iterable[tuple]) -> list[dict]:
    return [{**point_json(p), "components": count} for p, count in pairs]


def component_json(i: int, c: RLComponent) -> dict:
    return {
        "id": i,
        "variables": list(c.ideal.varset),
        "generators": [g.format() for g in c.ideal.generators],
        "locus": poly_json(c.curve_poly),
        "parametrization": poly_json(c.param_poly),
        "affine_equation": poly_json(c.affine_equation),
        "affine_variables": ["x", "y"],
        "flags": sorted(c.flags),
        "initial": points_json(c.initial),
        "terminal": points_json(c.terminal),
        "intermediate": {
            "variables": ["x", "y", "z", "l"],
            "generators": [g.format() for g in c.intermediate],
        },
    }


def dual_component_json(i: int, dc: DualComponent, source_id: int) -> dict:
    law = degree_law(dc)
    return {
        "id": i,
        "source_id": source_id,
        "kind": dc.kind,
        "variables": list(dc.ideal.varset),
        "generators": [g.format() for g in dc.ideal.generators],
        "dual_curve": poly_json(dc.dual_curve),
        "dual_parametrization": poly_json(dc.dual_param),
        "point_ideal": None if dc.point_ideal is None else [g.format() for g in dc.point_ideal.generators],
        "affine_equation": poly_json(dc.affine_equation),
        "affine_variables": ["u", "v"],
        "flags": sorted(dc.flags),
        "degree_law": {
            "status": law.status,
            "source_degree": law.source_degree,
            "dual_degree": law.dual_degree,
            "expected": law.expected,
        },
        "initial": points_json(dc.initial),
        "terminal": points_json(dc.terminal),
        "intermediate": {
            "variables": ["u", "v", "w", "l"],
            "generators": [g.format() for g in dc.intermediate],
        },
    }


def decomposition_json(dec: Decomposition, adrl: ADRL | None = None,
                       timings: dict | None = None) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "transfer_function": {
            "num": [rational(c) for c in dec.tf.num],
            "den": [rational(c) for c in dec.tf.den],
        },
        "pencil": {
            "variables": list(dec.pencil.u.vars),
            "real_part": dec.pencil.u.format(),
            "imaginary_part": dec.pencil.v.format(),
        },
        "basis": {
            "order": "grevlex",
            "variables": ["x", "y", "kd", "kn"],
            "generators": [g.format() for g in dec.basis],
        },
        "homogenized": {
            "variables": list(dec.homogenized.varset),
            "generators": [g.format() for g in dec.homogenized.generators],
        },
        "removed_components": [
            [g.format() for g in c.ideal.generators]
            for c in dec.all_components.components if "parameter-trivial" in c.flags
        ],
        "components": [component_json(i, c) for i, c in enumerate(dec.components)],
        "merged": {
            "initial": merged_json(dec.merged_points("initial")),
            "terminal": merged_json(dec.merged_points("terminal")),
        },
        "provenance": {
            "component_order": "grevlex x>y>z>kd>kn",
            "elimination_order": "block order, grevlex on each block",
            "point_order": "grevlex on each affine chart",
        },
    }
    if adrl is not None:
        ids = {id(c): i for i, c in enumerate(dec.components)}
        out["dual"] = {
            "components": [dual_component_json(i, dc, ids.get(id(dc.source), -1))
                           for i, dc in enumerate(adrl.components)],
            "merged": {
                "initial": merged_json(adrl.initial),
                "terminal": merged_json(adrl.terminal),
            },
            "affine_pieces": [poly_json(p) for p in adrl.affine_pieces],
        }
    out["volatile"] = {"timings": dict(timings or {})}
    return out


# -- plotting ------------------------------------------------------------------


def traced_components(curves: Sequence[Polynomial | None], bbox, resolution: int,
                      xvar: str = "x", yvar: str = "y") -> list[list]:
    out = []
    for f in curves:
        out.append([] if f is None else trace_curve(f, bbox, resolution, xvar, yvar))
    return out


def csv_rows(traces: Sequence[list]) -> list[str]:
    rows = ["component_id,x,y"]
    for cid, lines in enumerate(traces):
        for line in lines:
            for x, y in line:
                rows.append(f"{cid},{x!r},{y!r}")
    return rows


def svg_document(traces: Sequence[list], labels: Sequence[str], bbox, title: str,
                 axis_names: tuple[str, str] = ("x", "y"), marks: Sequence[tuple] = (),
                 size: int = 480) -> str:
    """Static plot with mathematical (upward) y axis, axes and a legend."""
    x0, x1, y0, y1 = bbox
    pad = 40
    w = h = size

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * w

    def sy(y):
        return pad + (y1 - y) / (y1 - y0) * h

    legend_h = 18 * len(labels) + 10
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w + 2 * pad}" '
        f'height="{h + 2 * pad + legend_h}" viewBox="0 0 {w + 2 * pad} {h + 2 * pad + legend_h}">',
        f"<title>{html.escape(title)}</title>",
        f'<rect x="{pad}" y="{pad}" width="{w}" height="{h}" fill="white" stroke="#999"/>',
        '<g id="axes" stroke="#666" stroke-width="0.8">',
    ]
    if x0 <= 0 <= x1:
        parts.append(f'<line x1="{sx(0):.2f}" y1="{pad}" x2="{sx(0):.2f}" y2="{pad + h}"/>')
    if y0 <= 0 <= y1:
        parts.append(f'<line x1="{pad}" y1="{sy(0):.2f}" x2="{pad + w}" y2="{sy(0):.2f}"/>')
    parts.append("</g>")
    parts.append(f'<text x="{pad + w - 10}" y="{pad + h + 16}" font-size="12">{axis_names[0]}</text>')
    parts.append(f'<text x="{pad - 16}" y="{pad + 12}" font-size="12">{axis_names[1]}</text>')
    parts.append(f'<text x="{pad}" y="{pad + h + 16}" font-size="10">{x0:g}</text>')
    parts.append(f'<text x="{pad + w - 40}" y="{pad - 6}" font-size="10">{x1:g}, {y1:g}</text>')
    for cid, lines in enumerate(traces):
        colour = STROKES[cid % len(STROKES)]
        dash = "" if cid < len(STROKES) else ' stroke-dasharray="6 3"'
        parts.append(f'<g id="component-{cid}" class="component" fill="none" '
                     f'stroke="{colour}" stroke-width="1.6"{dash}>')
        for line in lines:
            if len(line) < 2:
                continue
            d = "M " + " L ".join(f"{sx(x):.2f} {sy(y):.2f}" for x, y in line)
            parts.append(f'<path d="{d}"/>')
        parts.append("</g>")
    if marks:
        parts.append('<g id="points">')
        for x, y, kind in marks:
            if not (x0 <= x <= x1 and y0 <= y <= y1):
                continue
            if kind == "initial":
                parts.append(f'<path d="M {sx(x) - 4:.2f} {sy(y) - 4:.2f} l 8 8 m -8 0 l 8 -8" '
                             f'stroke="black" stroke-width="1.4"/>')
            else:
                parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="4" fill="none" '
                             f'stroke="black" stroke-width="1.4"/>')
        parts.append("</g>")
    parts.append('<g id="legend" font-size="12">')
    for cid, label in enumerate(labels):
        y = pad * 2 + h + 18 * cid
        colour = STROKES[cid % len(STROKES)]
        parts.append(f'<line x1="{pad}" y1="{y - 4}" x2="{pad + 24}" y2="{y - 4}" '
                     f'stroke="{colour}" stroke-width="2"/>')
        parts.append(f'<text x="{pad + 30}" y="{y}">{html.escape(label)}</text>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def finite_marks(initial: Iterable[tuple], terminal: Iterable[tuple]) -> list[tuple]:
    """Affine positions of merged initial/terminal points (third coordinate nonzero)."""
    out = []
    for kind, pairs in (("initial", initial), ("terminal", terminal)):
        for p, _ in pairs:
            a, b, c = (float(v) for v in p.coords)
            if c != 0:
                out.append((a / c, b / c, kind))
    return out

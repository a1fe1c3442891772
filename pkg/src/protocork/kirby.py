"""Combinatorial Kirby diagrams of protocorks.

Every vertex of the graph becomes a 0-framed unknot, every edge a clasp of
the matching sign, and every edge outside the spanning forest gets a dotted
circle meridional to its clasp.  The three stages differ only in which vertex
circles carry a dot:

==========  =====================  =====================
stage       A circles              B circles
==========  =====================  =====================
``0``       0-framed               dotted
``1/2``     0-framed               0-framed
``1``       dotted                 0-framed
==========  =====================  =====================

A clasp between ``A_i`` and ``B_j`` contributes its sign to the linking number
of the two circles.  The meridian of an excess edge encircles the clasp
without linking either vertex circle, which is recorded in ``Clasp.threads``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

import numpy as np

from .errors import UnsupportedFormat
from .graphs import ProtocorkGraph, components, spanning_forest
from .linalg import int_matrix

__all__ = [
    "FRAMED",
    "DOTTED",
    "STAGES",
    "parse_stage",
    "stage_label",
    "DiagramComponent",
    "Clasp",
    "KirbyDiagram",
    "build_diagram",
    "diagram_counts",
    "swap_parts",
    "surgery_presentation",
    "linking_number",
    "render",
]

FRAMED = "framed0"
DOTTED = "dotted"
STAGES = (Fraction(0), Fraction(1, 2), Fraction(1))

_STAGE_ALIASES = {
    "0": STAGES[0],
    "half": STAGES[1],
    "1/2": STAGES[1],
    "0.5": STAGES[1],
    "1": STAGES[2],
}


def parse_stage(stage) -> Fraction:
    """Normalise ``0``, ``1``, ``"half"``, ``"1/2"`` or ``Fraction(1, 2)``."""
    if isinstance(stage, str):
        if stage in _STAGE_ALIASES:
            return _STAGE_ALIASES[stage]
    elif not isinstance(stage, bool):
        try:
            value = Fraction(stage)
        except (TypeError, ValueError):
            value = None
        if value in STAGES:
            return value
    raise ValueError(f"stage must be 0, 1/2 or 1, got {stage!r}")


def stage_label(stage: Fraction) -> str:
    return {STAGES[0]: "0", STAGES[1]: "1/2", STAGES[2]: "1"}[stage]


@dataclass(frozen=True)
class DiagramComponent:
    id: str
    kind: str
    origin: tuple[str, object]  # ("A", i), ("B", j) or ("excess", edge id)

    @property
    def framing(self) -> int | None:
        return 0 if self.kind == FRAMED else None

    def origin_label(self) -> str:
        part, ref = self.origin
        return f"excess {ref}" if part == "excess" else f"{part}{ref}"


@dataclass(frozen=True)
class Clasp:
    edge_id: str
    sign: int
    endpoints: tuple[str, str]
    threads: tuple[str, ...]


@dataclass(frozen=True)
class KirbyDiagram:
    stage: Fraction
    n: int
    components: tuple[DiagramComponent, ...]
    clasps: tuple[Clasp, ...]
    forest: tuple[str, ...]
    component_count: int

    def component(self, cid: str) -> DiagramComponent:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def framed(self) -> list[DiagramComponent]:
        return [c for c in self.components if c.kind == FRAMED]

    def dotted(self) -> list[DiagramComponent]:
        return [c for c in self.components if c.kind == DOTTED]

    def excess(self) -> list[DiagramComponent]:
        return [c for c in self.components if c.origin[0] == "excess"]

    def to_json(self) -> dict:
        return {
            "stage": stage_label(self.stage),
            "n": self.n,
            "components": [
                {"id": c.id, "kind": c.kind, "origin": [c.origin[0], c.origin[1]]}
                for c in self.components
            ],
            "clasps": [
                {
                    "edge": k.edge_id,
                    "sign": k.sign,
                    "endpoints": list(k.endpoints),
                    "threads": list(k.threads),
                }
                for k in self.clasps
            ],
            "forest": list(self.forest),
        }


def meridian_id(edge_id: str) -> str:
    return f"m{edge_id}"


def build_diagram(g: ProtocorkGraph, stage) -> KirbyDiagram:
    stage = parse_stage(stage)
    a_kind = DOTTED if stage == 1 else FRAMED
    b_kind = DOTTED if stage == 0 else FRAMED
    forest, excess = spanning_forest(g)
    excess_ids = {e.id for e in excess}
    comps = [DiagramComponent(f"A{i}", a_kind, ("A", i)) for i in range(1, g.n + 1)]
    comps += [DiagramComponent(f"B{j}", b_kind, ("B", j)) for j in range(1, g.n + 1)]
    comps += [DiagramComponent(meridian_id(e.id), DOTTED, ("excess", e.id)) for e in excess]
    clasps = tuple(
        Clasp(
            e.id,
            e.sign,
            (f"A{e.a}", f"B{e.b}"),
            (meridian_id(e.id),) if e.id in excess_ids else (),
        )
        for e in g.edges
    )
    return KirbyDiagram(
        stage, g.n, tuple(comps), clasps, tuple(e.id for e in forest), len(components(g))
    )


def diagram_counts(d: KirbyDiagram) -> dict:
    return {"framed": len(d.framed()), "dotted": len(d.dotted()), "clasps": len(d.clasps)}


def _swap_label(label: str) -> str:
    return {"A": "B", "B": "A"}[label[0]] + label[1:]


def swap_parts(d: KirbyDiagram) -> KirbyDiagram:
    """Exchange A- and B-origins (and the stage ``s -> 1 - s``).

    Edge identifiers are kept as they are; for a diagram built from a graph
    ``g`` this matches the diagram of the reflection up to edge renaming.
    """
    comps = []
    for c in d.components:
        part, ref = c.origin
        if part in ("A", "B"):
            other = "B" if part == "A" else "A"
            comps.append(DiagramComponent(f"{other}{ref}", c.kind, (other, ref)))
        else:
            comps.append(c)
    order = {"A": 0, "B": 1, "excess": 2}
    comps.sort(key=lambda c: (order[c.origin[0]], c.origin[1] if c.origin[0] != "excess" else 0))
    clasps = tuple(
        Clasp(k.edge_id, k.sign, (_swap_label(k.endpoints[1]), _swap_label(k.endpoints[0])), k.threads)
        for k in d.clasps
    )
    return KirbyDiagram(1 - d.stage, d.n, tuple(comps), clasps, d.forest, d.component_count)


def linking_number(d: KirbyDiagram, c1: str, c2: str) -> int:
    """Linking number of two components; only vertex circles joined by clasps link."""
    if c1 == c2:
        return 0
    return sum(k.sign for k in d.clasps if set(k.endpoints) == {c1, c2})


def surgery_presentation(d: KirbyDiagram) -> tuple[np.ndarray, list[int], list[str]]:
    """Linking matrix, framings and row labels of the boundary surgery picture.

    Every component (dotted or not) is read as a 0-framed surgery curve.  Rows
    are ordered ``A_1..A_n, B_1..B_n`` followed by the excess meridians.
    """
    labels = [c.id for c in d.components]
    pos = {lab: k for k, lab in enumerate(labels)}
    size = len(labels)
    mat = np.zeros((size, size), dtype=object)
    for k in d.clasps:
        a, b = pos[k.endpoints[0]], pos[k.endpoints[1]]
        mat[a, b] += k.sign
        mat[b, a] += k.sign
    return int_matrix(mat.tolist(), (size, size)), [0] * size, labels


# ----------------------------------------------------------------------------
# rendering


def _render_text(d: KirbyDiagram) -> str:
    lines = [f"stage {stage_label(d.stage)}"]
    for c in d.components:
        lines.append(f"component {c.id} {c.kind} origin {c.origin_label()}")
    for k in d.clasps:
        sign = "+" if k.sign > 0 else "-"
        threads = ",".join(k.threads) if k.threads else "-"
        lines.append(f"clasp {k.edge_id} {sign} {k.endpoints[0]} {k.endpoints[1]} threads {threads}")
    return "\n".join(lines) + "\n"


_PITCH = 90
_TOP = 60
_LEFT_X = 80
_RIGHT_X = 360
_RADIUS = 20


def _num(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{float(x):.2f}"


def _render_svg(d: KirbyDiagram) -> str:
    def ypos(i):
        return _TOP + _PITCH * (i - 1)

    height = _TOP * 2 + _PITCH * max(d.n - 1, 0)
    width = _RIGHT_X + _LEFT_X
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f"<title>protocork stage {stage_label(d.stage)}</title>",
        '<g id="clasps" fill="none" stroke="black">',
    ]
    centers = {}
    for c in d.components:
        part, ref = c.origin
        if part == "A":
            centers[c.id] = (_LEFT_X, ypos(ref))
        elif part == "B":
            centers[c.id] = (_RIGHT_X, ypos(ref))
    per_pair: dict[tuple[str, str], int] = {}
    meridians = []
    for k in d.clasps:
        slot = per_pair.get(k.endpoints, 0)
        per_pair[k.endpoints] = slot + 1
        (x1, y1), (x2, y2) = centers[k.endpoints[0]], centers[k.endpoints[1]]
        x1, x2 = x1 + _RADIUS, x2 - _RADIUS
        # alternate arcs above and below the straight chord
        bend = (slot + 1) // 2 * 24 * (1 if slot % 2 else -1)
        cx, cy = Fraction(x1 + x2, 2), Fraction(y1 + y2, 2) + bend
        mx = (x1 + 2 * cx + x2) / 4
        my = (y1 + 2 * cy + y2) / 4
        dash = "" if k.sign > 0 else ' stroke-dasharray="6 3"'
        out.append(
            f'<path id="clasp-{escape(k.edge_id)}" d="M {x1} {y1} Q {_num(cx)} {_num(cy)} '
            f'{x2} {y2}"{dash}/>'
        )
        for m in k.threads:
            meridians.append((m, mx, my))
    out.append("</g>")
    out.append('<g id="components" fill="none" stroke="black">')
    for c in d.components:
        if c.id not in centers:
            continue
        x, y = centers[c.id]
        out.append(f'<circle id="{escape(c.id)}" cx="{x}" cy="{y}" r="{_RADIUS}"/>')
        if c.kind == DOTTED:
            out.append(f'<circle cx="{x}" cy="{y - _RADIUS}" r="3" fill="black"/>')
        label_x = x - 2 * _RADIUS if c.origin[0] == "A" else x + 2 * _RADIUS
        anchor = "end" if c.origin[0] == "A" else "start"
        text = c.id + (" (0)" if c.kind == FRAMED else "")
        out.append(
            f'<text x="{label_x}" y="{y + 5}" text-anchor="{anchor}" '
            f'font-size="14" stroke="none" fill="black">{escape(text)}</text>'
        )
    for m, mx, my in meridians:
        out.append(
            f'<circle id="{escape(m)}" cx="{_num(mx)}" cy="{_num(my)}" r="7"/>'
        )
        out.append(f'<circle cx="{_num(mx)}" cy="{_num(my - 7)}" r="2" fill="black"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(d: KirbyDiagram, fmt: str = "text") -> bytes:
    if fmt == "text":
        return _render_text(d).encode("utf-8")
    if fmt == "svg":
        return _render_svg(d).encode("utf-8")
    raise UnsupportedFormat(f"unknown diagram format {fmt!r}")

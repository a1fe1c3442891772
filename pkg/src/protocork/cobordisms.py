"""Handle-level models of cobordisms between protocork boundaries.

A cobordism is an ordered list of handles.  Each handle stores the signed
count of its attaching sphere against the belt spheres of handles one index
lower.  Keys written ``"@x"`` name a curve ``x`` of the incoming boundary; when
two cobordisms are composed they are resolved to the handle ``x`` of the first
factor (boundary curves are labelled by the diagram component that produced
them, e.g. ``"B2"`` or ``"m(1,1,-)#0"``).

:func:`check_trivial` runs chain-level handle cancellation: a pair whose
entry is a unit is cancelled and the remaining handles are slid off the
cancelled one.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import BoundaryMismatch, Disconnected, NotSymmetric
from .graphs import ProtocorkGraph, is_connected, spanning_forest, stats, symmetry_pairing
from .kirby import DOTTED, FRAMED, build_diagram, linking_number, meridian_id

__all__ = [
    "Boundary",
    "Handle",
    "Cobordism",
    "CancellationResult",
    "sphere",
    "connected_sum_s1s2",
    "boundary_of",
    "identity",
    "build_W",
    "build_Q",
    "build_C",
    "build_T",
    "protocork_as_cobordism",
    "compose",
    "check_trivial",
    "homology_orientation_dim",
]


@dataclass(frozen=True)
class Boundary:
    """``kind`` is ``"S3"``, ``"S1xS2"`` (a connected sum of ``b1`` copies) or ``"Y"``."""

    kind: str
    b1: int = 0
    key: str = ""

    def __str__(self) -> str:
        if self.kind == "S3":
            return "S3"
        if self.kind == "S1xS2":
            return f"#{self.b1}(S1xS2)"
        return f"Y[{self.key}]"


def sphere() -> Boundary:
    return Boundary("S3")


def connected_sum_s1s2(b1: int) -> Boundary:
    return sphere() if b1 == 0 else Boundary("S1xS2", b1)


def boundary_of(g: ProtocorkGraph) -> Boundary:
    key = json.dumps(g.to_json(), separators=(",", ":"))
    return Boundary("Y", stats(g).b1_boundary, key)


@dataclass(frozen=True)
class Handle:
    index: int
    label: str
    attach: tuple[tuple[str, int], ...] = ()
    curve: str = ""

    @staticmethod
    def make(index: int, label: str, attach: Mapping[str, int] | None = None, curve: str = "") -> "Handle":
        items = tuple(sorted((k, int(v)) for k, v in (attach or {}).items() if v != 0))
        return Handle(index, label, items, curve)

    def entries(self) -> dict[str, int]:
        return dict(self.attach)

    def to_json(self) -> dict:
        out = {"index": self.index, "label": self.label, "attach": dict(self.attach)}
        if self.curve:
            out["curve"] = self.curve
        return out


@dataclass(frozen=True)
class Cobordism:
    source: Boundary
    target: Boundary
    handles: tuple[Handle, ...]
    name: str = ""
    # involution on handle labels induced by a boundary symmetry, if any
    symmetry: Mapping[str, str] | None = field(default=None, compare=False)

    def __post_init__(self):
        labels = [h.label for h in self.handles]
        if len(set(labels)) != len(labels):
            raise ValueError("handle labels must be unique")

    def labels(self, index: int | None = None) -> list[str]:
        return [h.label for h in self.handles if index is None or h.index == index]

    def handle(self, label: str) -> Handle:
        for h in self.handles:
            if h.label == label:
                return h
        raise KeyError(label)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** h.index for h in self.handles)

    def pairing_matrix(self, index: int, lower: list[str] | None = None) -> np.ndarray:
        """Rows: handles of ``index``; columns: ``lower`` labels (default: the
        handles of ``index - 1``)."""
        rows = [h for h in self.handles if h.index == index]
        cols = lower if lower is not None else self.labels(index - 1)
        out = np.zeros((len(rows), len(cols)), dtype=object)
        for r, h in enumerate(rows):
            e = h.entries()
            for c, lab in enumerate(cols):
                out[r, c] = e.get(lab, 0)
        return out

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "source": str(self.source),
            "target": str(self.target),
            "euler_characteristic": self.euler_characteristic,
            "handles": [h.to_json() for h in self.handles],
        }
        if self.symmetry is not None:
            out["symmetry"] = dict(sorted(self.symmetry.items()))
        return out


def identity(b: Boundary) -> Cobordism:
    return Cobordism(b, b, (), "id")


def _require_connected(g: ProtocorkGraph, what: str):
    if not is_connected(g):
        raise Disconnected(f"{what} is defined for connected graphs only")


# ----------------------------------------------------------------------------
# constructions


def build_W(g: ProtocorkGraph) -> Cobordism:
    """``#b1(S1xS2) -> Y``: 1-handles for the B-spheres, then 2-handles along
    the A-circles."""
    _require_connected(g, "W")
    n = g.n
    handles = [Handle.make(1, f"B{j}", curve=f"dotted circle of B{j}") for j in range(1, n + 1)]
    handles += [
        Handle.make(2, f"A{i}", {f"B{j}": g.signed_count(i, j) for j in range(1, n + 1)}, "A-circle")
        for i in range(1, n + 1)
    ]
    b1 = stats(g).b1_boundary
    return Cobordism(connected_sum_s1s2(b1), boundary_of(g), tuple(handles), "W")


def build_Q(g: ProtocorkGraph) -> Cobordism:
    """``Y -> #b1(S1xS2)``: a 2-handle meridional to each B-circle, then a
    3-handle meeting each A-circle's cocore once."""
    _require_connected(g, "Q")
    n = g.n
    handles = [
        Handle.make(2, f"nu{i}", {f"@B{i}": 1}, f"meridian of B{i}") for i in range(1, n + 1)
    ]
    for i in range(1, n + 1):
        attach = {f"@A{i}": 1}
        # closes up the 3-handle: its boundary must be a cycle
        for j in range(1, n + 1):
            attach[f"nu{j}"] = -g.signed_count(i, j)
        handles.append(Handle.make(3, f"sigma{i}", attach, f"sphere through A{i}"))
    b1 = stats(g).b1_boundary
    return Cobordism(boundary_of(g), connected_sum_s1s2(b1), tuple(handles), "Q")


def build_C(g: ProtocorkGraph) -> Cobordism:
    """``Y -> S3``: one 0-framed 2-handle meridional to each excess dotted circle."""
    _require_connected(g, "C")
    _, excess = spanning_forest(g)
    handles = tuple(
        Handle.make(2, f"c{e.id}", {f"@{meridian_id(e.id)}": 1}, f"meridian of {meridian_id(e.id)}")
        for e in excess
    )
    return Cobordism(boundary_of(g), sphere(), handles, "C")


def _t_curves(g: ProtocorkGraph) -> list[tuple[str, str, dict[str, int]]]:
    """``(edge id, curve kind, threading)`` in unit-triangular order."""
    forest, excess = spanning_forest(g)
    tree_ids = {e.id for e in forest}
    pairing = symmetry_pairing(g)
    eights = [e for e in excess if not e.is_diagonal and pairing[e.id] in tree_ids]
    eight_ids = {e.id for e in eights}
    diag = [e for e in excess if e.is_diagonal]
    rest = [e for e in excess if not e.is_diagonal and e.id not in eight_ids]
    diag_at: dict[int, list[str]] = {}
    for e in diag:
        diag_at.setdefault(e.a, []).append(meridian_id(e.id))

    curves = []
    for e in diag:
        curves.append((e.id, "zig-zag", {meridian_id(e.id): 1}))
    for e in eights:
        # runs along both horizontal edges, so it crosses the clasp region of
        # every parallel diagonal edge at its two ends
        thread = {meridian_id(e.id): 1}
        for m in diag_at.get(e.a, []) + diag_at.get(e.b, []):
            thread[m] = 1
        curves.append((e.id, "8-loop", thread))
    for e in rest:
        thread = {meridian_id(e.id): 1}
        if e.a > e.b:
            # drawn below the graph: passes the 8-loops spanning its interval
            for f in eights:
                if e.b <= min(f.a, f.b) and max(f.a, f.b) <= e.a:
                    thread[meridian_id(f.id)] = 1
        curves.append((e.id, "zig-zag", thread))
    return curves


def build_T(g: ProtocorkGraph) -> Cobordism:
    """``Y -> S3`` along curves that the symmetry ``tau`` permutes.

    The curve of an excess edge passes once through that edge's dotted circle
    and possibly through dotted circles of curves listed before it, so the
    incidence with the dotted circles is unit upper-triangular.
    """
    if symmetry_pairing(g) is None:
        raise NotSymmetric("T needs a symmetric graph")
    _require_connected(g, "T")
    pairing = symmetry_pairing(g)
    curves = _t_curves(g)
    labels = {eid: f"gamma{eid}" for eid, _, _ in curves}
    handles = tuple(
        Handle.make(2, labels[eid], {f"@{m}": v for m, v in thread.items()}, kind)
        for eid, kind, thread in curves
    )
    tau = {labels[eid]: labels.get(pairing[eid], labels[eid]) for eid, _, _ in curves}
    return Cobordism(boundary_of(g), sphere(), handles, "T", tau)


def protocork_as_cobordism(g: ProtocorkGraph, stage) -> Cobordism:
    """``S3 -> Y`` obtained from the stage diagram by removing a ball."""
    _require_connected(g, "N minus a ball")
    d = build_diagram(g, stage)
    if d.stage not in (0, 1):
        raise ValueError("only the stages 0 and 1 are protocorks")
    dotted = [c.id for c in d.components if c.kind == DOTTED]
    handles = [Handle.make(1, cid, curve="dotted circle") for cid in dotted]
    handles += [
        Handle.make(2, c.id, {t: linking_number(d, c.id, t) for t in dotted}, "0-framed circle")
        for c in d.components
        if c.kind == FRAMED
    ]
    return Cobordism(sphere(), boundary_of(g), tuple(handles), f"N{int(d.stage)}")


# ----------------------------------------------------------------------------
# composition and cancellation


def compose(c1: Cobordism, c2: Cobordism) -> Cobordism:
    """``c2 o c1``: first ``c1``, then ``c2``."""
    if c1.target != c2.source:
        raise BoundaryMismatch(f"cannot glue {c1.target} to {c2.source}")
    known = set(c1.labels())
    handles = list(c1.handles)
    for h in c2.handles:
        attach = {}
        for key, v in h.attach:
            if key.startswith("@") and key[1:] in known:
                key = key[1:]
            attach[key] = attach.get(key, 0) + v
        handles.append(Handle.make(h.index, h.label, attach, h.curve))
    name = f"{c2.name}o{c1.name}" if c1.name and c2.name else c1.name or c2.name
    return Cobordism(c1.source, c2.target, tuple(handles), name)


@dataclass(frozen=True)
class CancellationResult:
    trivial: bool
    trace: tuple[tuple[str, str], ...]
    remaining: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.trivial

    def to_json(self) -> dict:
        return {
            "trivial": self.trivial,
            "trace": [list(p) for p in self.trace],
            "remaining": list(self.remaining),
        }


def check_trivial(c: Cobordism, rng: random.Random | None = None) -> CancellationResult:
    """Cancel handle pairs with a unit entry until none is left.

    The pair chosen at each step is the first one in handle order, or a random
    one when ``rng`` is given.  Unresolved ``"@"`` entries refer to the
    incoming boundary and do not obstruct cancellation.
    """
    index = {h.label: h.index for h in c.handles}
    order = [h.label for h in c.handles]
    attach = {
        h.label: {k: v for k, v in h.attach if k in index and index[k] == h.index - 1}
        for h in c.handles
    }
    trace = []
    while True:
        candidates = [
            (lo, hi)
            for hi in order
            for lo, v in attach[hi].items()
            if abs(v) == 1
        ]
        if not candidates:
            break
        lo, hi = rng.choice(candidates) if rng is not None else candidates[0]
        s = attach[hi][lo]
        pivot_row = attach[hi]
        for x in order:
            if x == hi or index[x] != index[hi]:
                continue
            coeff = attach[x].get(lo, 0)
            if coeff:
                row = attach[x]
                for key, v in pivot_row.items():
                    row[key] = row.get(key, 0) - coeff * s * v
                row.pop(lo, None)
                for key in [k for k, v in row.items() if v == 0]:
                    del row[key]
        for x in order:
            attach[x].pop(hi, None)
        order = [x for x in order if x not in (lo, hi)]
        del attach[lo], attach[hi]
        trace.append((lo, hi))
    return CancellationResult(not order, tuple(trace), tuple(order))


def homology_orientation_dim(c: Cobordism | None, h1: int, iplus: int, h1_out: int) -> int:
    """Dimension of the space whose top exterior power is the homology
    orientation line; 0 means the orientation is canonical."""
    if min(h1, iplus, h1_out) < 0:
        raise ValueError("ranks must be non-negative")
    return h1 + iplus + h1_out

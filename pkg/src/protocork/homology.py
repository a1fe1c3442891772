"""Integral homology of protocorks and of their boundary.

A stage diagram has a single 0-handle, one 1-handle per dotted circle and one
2-handle per 0-framed circle.  The only nonzero boundary map sends a 2-handle
to its vector of linking numbers with the dotted circles.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import ProtocorkGraph
from .kirby import FRAMED, DOTTED, build_diagram, linking_number, parse_stage, surgery_presentation
from .linalg import AbelianGroup, inertia, int_matrix, smith_form

__all__ = [
    "IntChainComplex",
    "HomologyProfile",
    "BoundaryPresentation",
    "AmbientRecord",
    "handle_complex",
    "protocork_homology",
    "boundary_presentation",
    "torus_pairing_matrix",
    "torus_intersection_check",
    "ambient_bookkeeping",
]


@dataclass(frozen=True)
class IntChainComplex:
    """``ranks[k]`` free generators in degree ``k``; ``boundaries[k]`` is the
    matrix of ``C_k -> C_{k-1}`` (rows indexed by ``C_{k-1}``)."""

    ranks: tuple[int, ...]
    boundaries: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)

    def boundary(self, k: int) -> np.ndarray:
        if k in self.boundaries:
            return self.boundaries[k]
        rows = self.ranks[k - 1] if 0 < k <= len(self.ranks) else 0
        cols = self.ranks[k] if 0 <= k < len(self.ranks) else 0
        return np.zeros((rows, cols), dtype=object)

    def is_complex(self) -> bool:
        return all(
            not (self.boundary(k - 1).dot(self.boundary(k))).any()
            for k in range(2, len(self.ranks))
        )

    def homology(self, k: int) -> AbelianGroup:
        # C_k / ker d_k embeds in C_{k-1}, so torsion comes from coker d_{k+1}
        if not 0 <= k < len(self.ranks):
            return AbelianGroup(0)
        d_in = smith_form(self.boundary(k + 1))
        d_out = smith_form(self.boundary(k)) if k > 0 else None
        kernel_rank = self.ranks[k] - (d_out.rank if d_out else 0)
        return AbelianGroup(kernel_rank - d_in.rank, d_in.cokernel.torsion)


@dataclass(frozen=True)
class HomologyProfile:
    H0: AbelianGroup
    H1: AbelianGroup
    H2: AbelianGroup
    H3: AbelianGroup
    b_plus: int

    def to_json(self) -> dict:
        return {
            "H0": self.H0.to_json(),
            "H1": self.H1.to_json(),
            "H2": self.H2.to_json(),
            "H3": self.H3.to_json(),
            "b_plus": self.b_plus,
        }


def handle_complex(g: ProtocorkGraph, stage) -> tuple[IntChainComplex, np.ndarray]:
    """Handle chain complex of a stage and the linking matrix of its 2-handles."""
    d = build_diagram(g, parse_stage(stage))
    dotted = [c.id for c in d.components if c.kind == DOTTED]
    framed = [c.id for c in d.components if c.kind == FRAMED]
    d2 = int_matrix(
        [[linking_number(d, f, t) for f in framed] for t in dotted], (len(dotted), len(framed))
    )
    lk = int_matrix(
        [[linking_number(d, f, h) for h in framed] for f in framed], (len(framed), len(framed))
    )
    cx = IntChainComplex(
        (1, len(dotted), len(framed)),
        {2: d2},
        {0: ["0-handle"], 1: dotted, 2: framed},
    )
    return cx, lk


def protocork_homology(g: ProtocorkGraph, stage) -> HomologyProfile:
    cx, lk = handle_complex(g, stage)
    H = [cx.homology(k) for k in range(3)]
    kernel = smith_form(cx.boundary(2)).kernel()
    form = kernel.T.dot(lk).dot(kernel) if kernel.shape[1] else np.zeros((0, 0), dtype=object)
    b_plus = inertia(form)[0] if form.shape[0] else 0
    return HomologyProfile(H[0], H[1], H[2], AbelianGroup(0), b_plus)


@dataclass(frozen=True)
class BoundaryPresentation:
    matrix: np.ndarray
    labels: tuple[str, ...]
    h1: AbelianGroup


def boundary_presentation(g: ProtocorkGraph) -> BoundaryPresentation:
    """All-0-framed surgery presentation of the boundary and its ``H_1``."""
    mat, _, labels = surgery_presentation(build_diagram(g, 0))
    return BoundaryPresentation(mat, tuple(labels), smith_form(mat).cokernel)


def torus_pairing_matrix(g: ProtocorkGraph) -> np.ndarray:
    """Pairing of the plumbing-torus classes (one per edge).

    The tori sit in pairwise disjoint plumbing regions of the boundary and each
    can be pushed off itself along its normal direction, so every entry is 0.
    """
    size = len(g.edges)
    return np.zeros((size, size), dtype=object)


def torus_intersection_check(g: ProtocorkGraph) -> bool:
    m = torus_pairing_matrix(g)
    return m.shape == (len(g.edges), len(g.edges)) and not m.any()


@dataclass(frozen=True)
class AmbientRecord:
    bplus_M: int
    h1_M_rank: int | None = None
    h2_M_rank: int | None = None
    spin_c_bijection: bool | None = None

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def ambient_bookkeeping(bplus_X: int, b2_X: int, b1_Y: int, h1_X_is_zero: bool) -> AmbientRecord:
    """Invariants of the manifold ``M`` obtained by gluing a protocork into a
    closed 4-manifold ``X``.  The ``H_1``-dependent fields need ``H_1(X) = 0``."""
    if min(bplus_X, b2_X, b1_Y) < 0:
        raise ValueError("ranks must be non-negative")
    if not h1_X_is_zero:
        return AmbientRecord(bplus_X)
    return AmbientRecord(bplus_X, 0, b2_X + b1_Y, True)

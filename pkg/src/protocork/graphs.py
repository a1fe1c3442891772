"""Protocork plumbing graphs.

A protocork plumbing graph of sphere-number ``n`` has vertices ``A_1..A_n`` and
``B_1..B_n``; every edge joins some ``A_i`` to some ``B_j`` and carries a sign.
The signed number of edges between ``A_i`` and ``B_j`` must be the Kronecker
delta, so the geometric count ``r(i, i)`` is odd and ``r(i, j)`` (``i != j``) is
even.

Edges are stored as :class:`SignedEdge` records ``(a, b, sign, ordinal)``.  The
ordinal numbers parallel edges inside one ``(a, b, sign)`` class so every edge
has a stable identifier such as ``"(1,1,+)#2"``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    DeltaConstraintViolated,
    GraphFormatError,
    IndexOutOfRange,
    NotSymmetric,
)

__all__ = [
    "SignedEdge",
    "ProtocorkGraph",
    "GraphStats",
    "validate",
    "from_counts",
    "reflect",
    "permute",
    "symmetry_pairing",
    "is_symmetric",
    "is_trivial",
    "components",
    "component_graphs",
    "is_connected",
    "spanning_forest",
    "stats",
    "canonical_form",
    "is_isomorphic",
    "enumerate_graphs",
    "torus_action",
]


def _sign_char(sign: int) -> str:
    return "+" if sign > 0 else "-"


@dataclass(frozen=True, order=True)
class SignedEdge:
    a: int
    b: int
    sign: int
    ordinal: int = 0

    @property
    def id(self) -> str:
        return f"({self.a},{self.b},{_sign_char(self.sign)})#{self.ordinal}"

    @property
    def is_diagonal(self) -> bool:
        return self.a == self.b

    def sort_key(self):
        # positive edges before negative ones inside an (a, b) pair
        return (self.a, self.b, -self.sign, self.ordinal)

    def as_triple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.sign)


@dataclass(frozen=True)
class ProtocorkGraph:
    """A validated protocork plumbing graph.  Build it with :func:`validate`."""

    n: int
    edges: tuple[SignedEdge, ...]
    _index: Mapping[str, int] = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {e.id: k for k, e in enumerate(self.edges)})

    def __len__(self) -> int:
        return len(self.edges)

    def edge(self, edge_id: str) -> SignedEdge:
        return self.edges[self._index[edge_id]]

    def position(self, edge_id: str) -> int:
        """Position of an edge in :attr:`edges` (the basis order used everywhere)."""
        return self._index[edge_id]

    def signed_count(self, i: int, j: int) -> int:
        return sum(e.sign for e in self.edges if e.a == i and e.b == j)

    def geometric_count(self, i: int, j: int) -> int:
        return sum(1 for e in self.edges if e.a == i and e.b == j)

    def count_matrices(self) -> tuple[list[list[int]], list[list[int]]]:
        """0-based ``(plus, minus)`` edge-count matrices."""
        plus = [[0] * self.n for _ in range(self.n)]
        minus = [[0] * self.n for _ in range(self.n)]
        for e in self.edges:
            (plus if e.sign > 0 else minus)[e.a - 1][e.b - 1] += 1
        return plus, minus

    def triples(self) -> list[tuple[int, int, int]]:
        return [e.as_triple() for e in self.edges]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(t) for t in self.triples()]}


@dataclass(frozen=True)
class GraphStats:
    edge_count: int
    component_count: int
    b1_boundary: int
    forest_edges: tuple[str, ...]
    excess_edges: tuple[str, ...]
    is_symmetric: bool
    is_trivial: bool

    def to_json(self) -> dict:
        return {
            "edge_count": self.edge_count,
            "component_count": self.component_count,
            "b1_boundary": self.b1_boundary,
            "forest_edges": list(self.forest_edges),
            "excess_edges": list(self.excess_edges),
            "is_symmetric": self.is_symmetric,
            "is_trivial": self.is_trivial,
        }


# ----------------------------------------------------------------------------
# construction and validation


def _is_int(x) -> bool:
    return isinstance(x, (int, np.integer)) and not isinstance(x, bool)


def _parse(raw) -> tuple[int, list[tuple[int, int, int]]]:
    if isinstance(raw, ProtocorkGraph):
        return raw.n, raw.triples()
    if isinstance(raw, Mapping):
        if "n" not in raw or "edges" not in raw:
            raise GraphFormatError("graph data needs the keys 'n' and 'edges'")
        n, edges = raw["n"], raw["edges"]
    else:
        try:
            n, edges = raw
        except (TypeError, ValueError):
            raise GraphFormatError("graph data must be a mapping or an (n, edges) pair") from None
    if not _is_int(n) or n < 1:
        raise GraphFormatError(f"sphere-number must be a positive integer, got {n!r}")
    if isinstance(edges, (str, bytes)) or not isinstance(edges, Iterable):
        raise GraphFormatError("'edges' must be a list of [a, b, sign] triples")
    triples = []
    for item in edges:
        if isinstance(item, SignedEdge):
            item = item.as_triple()
        if isinstance(item, (str, bytes)) or not isinstance(item, Sequence) or len(item) != 3:
            raise GraphFormatError(f"malformed edge {item!r}")
        a, b, s = item
        if not (_is_int(a) and _is_int(b) and _is_int(s)):
            raise GraphFormatError(f"edge entries must be integers: {item!r}")
        if s not in (1, -1):
            raise GraphFormatError(f"edge sign must be 1 or -1: {item!r}")
        triples.append((int(a), int(b), int(s)))
    return int(n), triples


def _build(n: int, triples: Iterable[tuple[int, int, int]]) -> ProtocorkGraph:
    seen: Counter = Counter()
    edges = []
    for a, b, s in sorted(triples, key=lambda t: (t[0], t[1], -t[2])):
        edges.append(SignedEdge(a, b, s, seen[(a, b, s)]))
        seen[(a, b, s)] += 1
    return ProtocorkGraph(n, tuple(edges))


def validate(raw) -> ProtocorkGraph:
    """Parse and check candidate graph data.

    ``raw`` is a mapping ``{"n": int, "edges": [[a, b, sign], ...]}``, an
    ``(n, edges)`` pair or an existing graph.  Every pair ``(i, j)`` whose
    signed edge count differs from ``delta(i, j)`` is reported in a single
    :class:`DeltaConstraintViolated`.
    """
    n, triples = _parse(raw)
    for t in triples:
        if not (1 <= t[0] <= n and 1 <= t[1] <= n):
            raise IndexOutOfRange(t, n)
    signed: Counter = Counter()
    for a, b, s in triples:
        signed[(a, b)] += s
    violations = [
        (i, j, signed[(i, j)])
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if signed[(i, j)] != int(i == j)
    ]
    if violations:
        raise DeltaConstraintViolated(violations)
    return _build(n, triples)


def from_counts(plus: Sequence[Sequence[int]], minus: Sequence[Sequence[int]]) -> ProtocorkGraph:
    """Graph with ``plus[i][j]`` positive and ``minus[i][j]`` negative edges (0-based)."""
    n = len(plus)
    triples = []
    for i in range(n):
        for j in range(n):
            triples += [(i + 1, j + 1, 1)] * plus[i][j]
            triples += [(i + 1, j + 1, -1)] * minus[i][j]
    return validate((n, triples))


# ----------------------------------------------------------------------------
# elementary transformations


def reflect(g: ProtocorkGraph) -> ProtocorkGraph:
    """Swap the roles of the A- and B-parts."""
    return _build(g.n, [(e.b, e.a, e.sign) for e in g.edges])


def permute(g: ProtocorkGraph, perm) -> ProtocorkGraph:
    """Apply the index permutation ``i -> perm[i]`` to both parts at once.

    ``perm`` is a mapping on ``1..n`` or a sequence whose ``k``-th entry is the
    image of ``k + 1``.
    """
    image = dict(perm) if isinstance(perm, Mapping) else {k + 1: p for k, p in enumerate(perm)}
    if sorted(image) != list(range(1, g.n + 1)) or sorted(image.values()) != list(range(1, g.n + 1)):
        raise ValueError("perm must be a permutation of 1..n")
    return _build(g.n, [(image[e.a], image[e.b], e.sign) for e in g.edges])


def symmetry_pairing(g: ProtocorkGraph) -> dict[str, str] | None:
    """Pair every edge ``(i, j, s)#k`` with ``(j, i, s)#k``.

    Diagonal edges are paired with themselves.  Returns ``None`` when the
    geometric counts are not transpose-symmetric.  Since off-diagonal signed
    counts vanish, equal geometric counts force equal counts per sign, so the
    ordinal-matching pairing always exists for symmetric graphs.
    """
    counts = Counter(e.as_triple() for e in g.edges)
    for (a, b, s), c in counts.items():
        if counts.get((b, a, s), 0) != c:
            return None
    return {e.id: SignedEdge(e.b, e.a, e.sign, e.ordinal).id for e in g.edges}


def is_symmetric(g: ProtocorkGraph) -> bool:
    return symmetry_pairing(g) is not None


def is_trivial(g: ProtocorkGraph) -> bool:
    """True when every diagonal pair is joined by exactly one edge."""
    return all(g.geometric_count(i, i) == 1 for i in range(1, g.n + 1))


# ----------------------------------------------------------------------------
# connectivity


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[max(rx, ry)] = min(rx, ry)
        return True


def _vertices(n):
    return [("A", i) for i in range(1, n + 1)] + [("B", i) for i in range(1, n + 1)]


def _forest_priority(e: SignedEdge):
    return (not e.is_diagonal, e.a, e.b, -e.sign, e.ordinal)


def spanning_forest(g: ProtocorkGraph) -> tuple[list[SignedEdge], list[SignedEdge]]:
    """Deterministic spanning forest and its complement (the excess edges).

    Kruskal's algorithm over the edges sorted by: diagonal first (lowest
    index), then lexicographic ``(a, b)``, positive sign first.  Excess edges are
    returned in graph order.
    """
    uf = _UnionFind(_vertices(g.n))
    tree = set()
    for e in sorted(g.edges, key=_forest_priority):
        if uf.union(("A", e.a), ("B", e.b)):
            tree.add(e.id)
    forest = [e for e in g.edges if e.id in tree]
    excess = [e for e in g.edges if e.id not in tree]
    return forest, excess


def components(g: ProtocorkGraph) -> list[tuple[int, ...]]:
    """Connected components as sorted index tuples.

    Each ``A_i`` is joined to ``B_i`` (the diagonal signed count is 1), so a
    component is determined by its set of indices.
    """
    uf = _UnionFind(range(1, g.n + 1))
    for e in g.edges:
        uf.union(e.a, e.b)
    groups: dict[int, list[int]] = {}
    for i in range(1, g.n + 1):
        groups.setdefault(uf.find(i), []).append(i)
    return sorted(tuple(v) for v in groups.values())


def is_connected(g: ProtocorkGraph) -> bool:
    return len(components(g)) == 1


def component_graphs(g: ProtocorkGraph) -> list[ProtocorkGraph]:
    """The components, each relabelled to indices ``1..n_k`` in increasing order."""
    out = []
    for comp in components(g):
        relabel = {i: k + 1 for k, i in enumerate(comp)}
        out.append(
            _build(
                len(comp),
                [(relabel[e.a], relabel[e.b], e.sign) for e in g.edges if e.a in relabel],
            )
        )
    return out


def stats(g: ProtocorkGraph) -> GraphStats:
    forest, excess = spanning_forest(g)
    c = len(components(g))
    return GraphStats(
        edge_count=len(g.edges),
        component_count=c,
        b1_boundary=len(g.edges) - 2 * g.n + c,
        forest_edges=tuple(e.id for e in forest),
        excess_edges=tuple(e.id for e in excess),
        is_symmetric=is_symmetric(g),
        is_trivial=is_trivial(g),
    )


# ----------------------------------------------------------------------------
# canonical form under simultaneous index permutations


def _refine(n, plus, minus, colors):
    while True:
        sigs = []
        for i in range(n):
            out_nb = sorted((plus[i][j], minus[i][j], colors[j]) for j in range(n) if j != i)
            in_nb = sorted((plus[j][i], minus[j][i], colors[j]) for j in range(n) if j != i)
            sigs.append((colors[i], plus[i][i], minus[i][i], tuple(out_nb), tuple(in_nb)))
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _leaf_code(n, plus, minus, colors):
    order = sorted(range(n), key=lambda i: colors[i])
    return tuple((plus[i][j], minus[i][j]) for i in order for j in order)


def _search(n, plus, minus, colors):
    if len(set(colors)) == n:
        return _leaf_code(n, plus, minus, colors)
    cell_color = min(c for c in set(colors) if colors.count(c) > 1)
    best = None
    for v in (i for i in range(n) if colors[i] == cell_color):
        # individualise v: it precedes the rest of its cell
        split = [2 * c + (0 if (i == v or c != cell_color) else 1) for i, c in enumerate(colors)]
        code = _search(n, plus, minus, _refine(n, plus, minus, split))
        if best is None or code < best:
            best = code
    return best


def canonical_form(g: ProtocorkGraph) -> bytes:
    """Byte string equal for two graphs iff they differ by a simultaneous
    permutation of the indices (colour refinement plus exhaustive
    individualisation)."""
    plus, minus = g.count_matrices()
    code = _search(g.n, plus, minus, _refine(g.n, plus, minus, [0] * g.n))
    body = ";".join(f"{p},{m}" for p, m in code)
    return f"ppg1|{g.n}|{body}".encode("ascii")


def is_isomorphic(g1: ProtocorkGraph, g2: ProtocorkGraph) -> bool:
    return g1.n == g2.n and len(g1) == len(g2) and canonical_form(g1) == canonical_form(g2)


# ----------------------------------------------------------------------------
# enumeration


def _distributions(units: int, slots: int) -> Iterator[tuple[int, ...]]:
    if slots == 0:
        if units == 0:
            yield ()
        return
    for first in range(units + 1):
        for rest in _distributions(units - first, slots - 1):
            yield (first,) + rest


def enumerate_graphs(n: int, max_edges: int, *, cap: int = 100_000) -> list[ProtocorkGraph]:
    """One graph per isomorphism class with sphere-number ``n`` and at most
    ``max_edges`` edges, sorted by edge count and then canonical form.

    A valid graph is a diagonal of single positive edges plus any number of
    ``(+, -)`` pairs placed on the ``n * n`` slots, so the edge count is
    ``n + 2 * pairs``.
    """
    if n < 1 or max_edges < n:
        raise ValueError("enumeration needs n >= 1 and max_edges >= n")
    slots = [(i, j) for i in range(n) for j in range(n)]
    classes: dict[bytes, ProtocorkGraph] = {}
    for pairs in range((max_edges - n) // 2 + 1):
        for dist in _distributions(pairs, len(slots)):
            plus = [[int(i == j) for j in range(n)] for i in range(n)]
            minus = [[0] * n for _ in range(n)]
            for (i, j), k in zip(slots, dist):
                plus[i][j] += k
                minus[i][j] += k
            g = from_counts(plus, minus)
            key = canonical_form(g)
            if key not in classes:
                classes[key] = g
                if len(classes) > cap:
                    raise BudgetExceeded(f"more than {cap} isomorphism classes")
    return sorted(classes.values(), key=lambda g: (len(g), canonical_form(g)))


# ----------------------------------------------------------------------------
# induced action on plumbing-torus classes


def torus_action(g: ProtocorkGraph, which: str) -> np.ndarray:
    """Signed permutation matrix on ``Z^|E|`` (one plumbing torus per edge).

    ``which`` is ``"rho_A"``, ``"rho_B"`` or ``"tau"``.  Both reflections reverse
    every torus.  ``tau`` sends the torus of ``e`` to minus the torus of its
    partner under :func:`symmetry_pairing`; column ``k`` is the image of the
    ``k``-th basis vector.
    """
    size = len(g.edges)
    if which in ("rho_A", "rho_B"):
        return -np.eye(size, dtype=int)
    if which != "tau":
        raise ValueError(f"unknown action {which!r}")
    pairing = symmetry_pairing(g)
    if pairing is None:
        raise NotSymmetric("tau is defined only on symmetric graphs")
    m = np.zeros((size, size), dtype=int)
    for k, e in enumerate(g.edges):
        m[g.position(pairing[e.id]), k] = -1
    return m

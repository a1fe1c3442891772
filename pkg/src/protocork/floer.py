"""Graded Z[U]-modules for the Floer groups of protocork boundaries.

For a boundary ``Y`` with first Betti number ``b1`` each flavor splits as the
standard part of ``#b1(S1xS2)`` plus a finite reduced part.  The standard part
is ``Lambda^*(Z^b1)`` tensored with a tower ring:

* hat (``FromTower``): ``Z[U]``;
* check (``ToTower``): ``Z[U^-1, U] / Z[U]``;
* bar (``BarTower``): ``Z[U^-1, U]]``.

``U`` lowers the grading by 2.  Absolute gradings are tracked for the hat
flavor only; a wedge of degree ``k`` tensored with 1 sits in grading
``(k - 1) - b1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import BarHasReduced, InconsistentGradings, MismatchedShapes

__all__ = [
    "FROM",
    "TO",
    "BAR",
    "FLAVORS",
    "TowerSummand",
    "CyclicSummand",
    "FiniteUModule",
    "FloerPackage",
    "SequenceMaps",
    "CriticalPointData",
    "MSGate",
    "standard_package",
    "split_package",
    "default_maps",
    "exact_sequence_check",
    "u_power",
    "torsion_order",
    "cobordism_map_degree",
    "ms_gate",
    "formal_dimension",
    "bar_gr",
    "dimension_additivity_check",
    "morgan_szabo_number",
    "ms_consistency",
    "reduced_membership_hint",
]

FROM, TO, BAR = "from", "to", "bar"
FLAVORS = {"hat": FROM, "check": TO, "bar": BAR}


def _frac_str(x: Fraction | None) -> str | None:
    if x is None:
        return None
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class TowerSummand:
    kind: str
    k: int
    multiplicity: int
    top_grading: Fraction | None = None

    def to_json(self) -> dict:
        out = {"k": self.k, "mult": self.multiplicity}
        if self.top_grading is not None:
            out["top_gr"] = _frac_str(self.top_grading)
        return out


@dataclass(frozen=True)
class CyclicSummand:
    """``Z[U] / U^order`` generated in degree ``grading``."""

    grading: Fraction
    order: int

    def __post_init__(self):
        if isinstance(self.order, bool) or not isinstance(self.order, int) or self.order < 1:
            raise ValueError("torsion order must be a positive integer")
        object.__setattr__(self, "grading", Fraction(self.grading))

    def to_json(self) -> dict:
        return {"gr": _frac_str(self.grading), "order": self.order}


@dataclass(frozen=True)
class FiniteUModule:
    summands: tuple[CyclicSummand, ...] = ()

    @staticmethod
    def of(items: Iterable) -> "FiniteUModule":
        """Build from ``CyclicSummand``s, ``(grading, order)`` pairs or
        ``{"gr": ..., "order": ...}`` records."""
        out = []
        for it in items:
            if isinstance(it, CyclicSummand):
                out.append(it)
            elif isinstance(it, Mapping):
                out.append(CyclicSummand(Fraction(str(it["gr"])), it["order"]))
            else:
                gr, order = it
                out.append(CyclicSummand(Fraction(gr), order))
        return FiniteUModule(tuple(out))

    def __len__(self) -> int:
        return len(self.summands)

    @property
    def rank(self) -> int:
        """Rank of the underlying free abelian group."""
        return sum(s.order for s in self.summands)

    def to_json(self) -> list:
        return [s.to_json() for s in self.summands]


@dataclass(frozen=True)
class FloerPackage:
    flavor: str
    b1: int
    standard: tuple[TowerSummand, ...]
    reduced: FiniteUModule = field(default_factory=FiniteUModule)

    @property
    def tower_rank(self) -> int:
        return sum(t.multiplicity for t in self.standard)

    def to_json(self) -> dict:
        return {
            "flavor": self.flavor,
            "b1": self.b1,
            "towers": [t.to_json() for t in self.standard],
            "reduced": self.reduced.to_json(),
        }


def _flavor(flavor: str) -> str:
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {sorted(FLAVORS)}, got {flavor!r}")
    return flavor


def standard_package(b1: int, flavor: str) -> FloerPackage:
    if isinstance(b1, bool) or not isinstance(b1, int) or b1 < 0:
        raise ValueError("b1 must be a non-negative integer")
    kind = FLAVORS[_flavor(flavor)]
    towers = tuple(
        TowerSummand(kind, k, comb(b1, k), Fraction(k - 1 - b1) if flavor == "hat" else None)
        for k in range(b1 + 1)
    )
    return FloerPackage(flavor, b1, towers)


def split_package(b1: int, flavor: str, reduced: FiniteUModule | None = None) -> FloerPackage:
    reduced = reduced or FiniteUModule()
    if flavor == "bar" and len(reduced):
        raise BarHasReduced("the bar flavor has no reduced part")
    base = standard_package(b1, flavor)
    return FloerPackage(flavor, b1, base.standard, reduced)


# ----------------------------------------------------------------------------
# the exact sequence check -> hat -> bar


@dataclass(frozen=True)
class SequenceMaps:
    """Summand-wise coefficients of ``j: check -> hat`` and ``p: hat -> bar``.

    Tower entries are indexed by the wedge degree ``k``, reduced entries by the
    position of the cyclic summand.
    """

    j_tower: tuple[int, ...]
    j_reduced: tuple[int, ...]
    p_tower: tuple[int, ...]
    p_reduced: tuple[int, ...]

    def replace(self, field_name: str, position: int, value: int) -> "SequenceMaps":
        values = list(getattr(self, field_name))
        values[position] = value
        return SequenceMaps(**{**self.__dict__, field_name: tuple(values)})

    def corruptions(self) -> list["SequenceMaps"]:
        """Every single-summand change that breaks exactness of the default maps."""
        out = []
        for k in range(len(self.j_tower)):
            out.append(self.replace("j_tower", k, 1 - self.j_tower[k]))
            out.append(self.replace("p_tower", k, 1 - self.p_tower[k]))
        for s in range(len(self.j_reduced)):
            out.append(self.replace("j_reduced", s, 1 - self.j_reduced[s]))
            out.append(self.replace("p_reduced", s, 1 - self.p_reduced[s]))
        return out


def default_maps(b1: int, reduced_count: int) -> SequenceMaps:
    """``j = 0 + id`` and ``p = p_std + 0``."""
    return SequenceMaps(
        (0,) * (b1 + 1), (1,) * reduced_count, (1,) * (b1 + 1), (0,) * reduced_count
    )


def _check_shapes(check: FloerPackage, hat: FloerPackage, bar: FloerPackage, maps: SequenceMaps):
    if (check.flavor, hat.flavor, bar.flavor) != ("check", "hat", "bar"):
        raise MismatchedShapes("expected packages of flavors check, hat, bar")
    if not check.b1 == hat.b1 == bar.b1:
        raise MismatchedShapes("packages disagree on b1")
    if len(bar.reduced):
        raise MismatchedShapes("the bar package must have an empty reduced part")
    if [s.order for s in check.reduced.summands] != [s.order for s in hat.reduced.summands]:
        raise MismatchedShapes("check and hat reduced parts differ")
    towers = hat.b1 + 1
    if (len(maps.j_tower), len(maps.p_tower)) != (towers, towers) or (
        len(maps.j_reduced), len(maps.p_reduced)
    ) != (len(hat.reduced),) * 2:
        raise MismatchedShapes("map coefficients do not match the summands")


def exact_sequence_check(
    check: FloerPackage, hat: FloerPackage, bar: FloerPackage, maps: SequenceMaps | None = None
) -> bool:
    """Whether ``im j = ker p`` on every summand of the hat package.

    On a tower ``Z[U]`` a nonzero multiple is injective, so ``ker p`` is the
    whole summand or zero; ``im j`` is everything for a unit coefficient, zero
    for 0 and a proper nonzero submodule otherwise.  A finite summand has no
    nonzero map to the torsion-free bar tower, so a nonzero ``p`` coefficient
    there is not a module map and fails the check.
    """
    maps = maps or default_maps(hat.b1, len(hat.reduced))
    _check_shapes(check, hat, bar, maps)

    def image(c):
        return "all" if abs(c) == 1 else "zero" if c == 0 else "proper"

    for jc, pc in zip(maps.j_tower, maps.p_tower):
        if image(jc) != ("all" if pc == 0 else "zero"):
            return False
    for jc, pc in zip(maps.j_reduced, maps.p_reduced):
        if pc != 0 or image(jc) != "all":
            return False
    return True


# ----------------------------------------------------------------------------
# elements of finite U-modules


def _normalise(element) -> dict[int, dict[int, int]]:
    """``{summand: {U-power: coefficient}}`` from a mapping or ``(summand, power, coeff)`` triples."""
    out: dict[int, dict[int, int]] = {}
    items = (
        ((s, p, c) for s, poly in element.items() for p, c in poly.items())
        if isinstance(element, Mapping)
        else element
    )
    for s, p, c in items:
        if p < 0:
            raise ValueError("U-power offsets must be non-negative")
        poly = out.setdefault(int(s), {})
        poly[int(p)] = poly.get(int(p), 0) + int(c)
    return out


def u_power(m: FiniteUModule, element, a: int) -> dict[int, dict[int, int]]:
    """``U^a`` applied to ``element``; terms at or beyond the order vanish."""
    out = {}
    for s, poly in _normalise(element).items():
        d = m.summands[s].order
        kept = {p + a: c for p, c in poly.items() if c and p + a < d}
        if kept:
            out[s] = kept
    return out


def torsion_order(m: FiniteUModule, element) -> int:
    """Smallest ``d >= 0`` with ``U^d * element = 0``."""
    best = 0
    for s, poly in _normalise(element).items():
        if not 0 <= s < len(m.summands):
            raise IndexError(f"no summand {s}")
        d = m.summands[s].order
        live = [p for p, c in poly.items() if c and p < d]
        if live:
            best = max(best, d - min(live))
    return best


# ----------------------------------------------------------------------------
# gradings and dimensions


def cobordism_map_degree(c1_sq: int, chi: int, sigma: int, b1_in: int, b1_out: int) -> Fraction:
    return Fraction(c1_sq - 2 * chi - 3 * sigma, 4) - Fraction(b1_out - b1_in, 2)


@dataclass(frozen=True)
class MSGate:
    d: Fraction
    passes: bool

    def to_json(self) -> dict:
        return {"d": _frac_str(self.d), "passes": self.passes}


def ms_gate(c1_sq: int, chi: int, sigma: int, d_delta: int) -> MSGate:
    if d_delta < 0:
        raise ValueError("d_delta must be non-negative")
    d = Fraction(c1_sq - 2 * chi - 3 * sigma, 4)
    return MSGate(d, d >= 2 * d_delta)


def _check_index(b1: int, index_f: int):
    if not 0 <= index_f <= b1:
        raise ValueError(f"index_f must lie in 0..{b1}")


def formal_dimension(b1: int, index_f: int, i: int) -> int:
    _check_index(b1, index_f)
    return b1 - index_f - 2 * i - (1 if i >= 0 else 2)


def bar_gr(index_f_a: int, i: int, index_f_b: int, j: int) -> int:
    """Relative grading between two reducible generators."""
    return index_f_a - index_f_b + 2 * (i - j)


def dimension_additivity_check(b1: int, index_f: int, i: int) -> bool:
    _check_index(b1, index_f)
    eps = 1 if i < 0 else 0
    return formal_dimension(b1, index_f, i) == -1 + bar_gr(b1, 0, index_f, i) - eps


@dataclass(frozen=True)
class CriticalPointData:
    """Reducibles by Morse index and irreducibles by grading relative to a base.

    ``pairwise`` optionally lists measured relative gradings ``gr(a, b)``; they
    must agree with the differences of the base-relative gradings.
    """

    b1: int
    reducible_indices: tuple[int, ...]
    irreducibles: Mapping[str, int]
    pairwise: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        if any(not 0 <= r <= self.b1 for r in self.reducible_indices):
            raise ValueError("reducible Morse indices must lie in 0..b1")
        if list(self.reducible_indices).count(self.b1) != 1:
            raise ValueError("exactly one reducible must have Morse index b1")


def morgan_szabo_number(cp: CriticalPointData) -> int:
    if not cp.irreducibles:
        raise ValueError("need at least one irreducible")
    g = cp.irreducibles
    for (a, b), v in cp.pairwise.items():
        if a not in g or b not in g:
            raise InconsistentGradings(f"unknown irreducible in pair {(a, b)}")
        if v != g[a] - g[b]:
            raise InconsistentGradings(f"gr({a},{b}) = {v} but the base gradings give {g[a] - g[b]}")
    return 2 + max(g.values()) - min(g.values())


def ms_consistency(cp: CriticalPointData, d_delta: int) -> bool:
    """Whether ``n_MS >= 2 d_delta`` holds for the supplied data."""
    return morgan_szabo_number(cp) >= 2 * d_delta


def reduced_membership_hint(package: FloerPackage, tower: Sequence[int], reduced: Sequence[int]) -> bool:
    """True iff an element given in summand coordinates has no tower component.

    ``tower`` has one coordinate per tower generator (``2^b1`` of them) and
    ``reduced`` one per cyclic summand.
    """
    if len(tower) != package.tower_rank or len(reduced) != len(package.reduced):
        raise MismatchedShapes("coordinates do not match the package")
    return all(c == 0 for c in tower)

"""Tower gradings, the exact triangle on summands, and the degree gate.

Run with ``python demos/floer_bookkeeping.py``.
"""
from fractions import Fraction

from protocork.floer import (
    FiniteUModule,
    default_maps,
    exact_sequence_check,
    formal_dimension,
    ms_gate,
    split_package,
    standard_package,
    torsion_order,
)

for b1 in range(4):
    p = standard_package(b1, "hat")
    row = "  ".join(f"{t.multiplicity}@{t.top_grading}" for t in p.standard)
    print(f"b1={b1}: {row}")

red = FiniteUModule.of([(Fraction(-2), 2), (Fraction(0), 3)])
pk = [split_package(2, f, red if f != "bar" else None) for f in ("check", "hat", "bar")]
maps = default_maps(2, len(red))
print("\nexact with j = 0 + id, p = p_std + 0:", exact_sequence_check(*pk, maps))
broken = maps.replace("j_tower", 0, 1)
print("after sending a tower by the identity:", exact_sequence_check(*pk, broken))

# an element x = g0 + U g1 of Z[U]/U^2 + Z[U]/U^3
x = {0: {0: 1}, 1: {1: 1}}
d = torsion_order(red, x)
print(f"\nd of x = {d}")
for chi in (4, 0, -4, -8):
    gate = ms_gate(0, chi, 0, d)
    print(f"  chi={chi:>3}: d(s0) = {gate.d}, passes = {gate.passes}")

print("\nformal dimensions at the top reducible:")
for b1 in range(4):
    print(f"  b1={b1}: i=0 -> {formal_dimension(b1, b1, 0)}, i=-1 -> {formal_dimension(b1, b1, -1)}")

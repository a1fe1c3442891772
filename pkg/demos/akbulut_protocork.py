"""The smallest nontrivial protocork: one A-sphere, one B-sphere, three edges.

Run with ``python demos/akbulut_protocork.py``.
"""
from protocork.graphs import stats, validate, torus_action
from protocork.homology import boundary_presentation, protocork_homology
from protocork.kirby import build_diagram, diagram_counts, render

g = validate({"n": 1, "edges": [[1, 1, 1], [1, 1, 1], [1, 1, -1]]})
s = stats(g)
print(f"{len(g)} edges, b1 of the boundary = {s.b1_boundary}")
print("excess edges:", ", ".join(s.excess_edges))

# Two of the three clasps get a dotted meridian; the third is the tree edge.
for stage in (0, "half", 1):
    d = build_diagram(g, stage)
    p = protocork_homology(g, stage)
    print(f"stage {stage:>4}: {diagram_counts(d)}  H1={p.H1}  H2={p.H2}  b+={p.b_plus}")

print()
print(render(build_diagram(g, 0), "text").decode(), end="")

# Boundary: 0-surgery on every circle.  Only the A/B clasps link, so both
# vertex meridians die and the two excess meridians survive.
bp = boundary_presentation(g)
print("\nlinking matrix of the boundary presentation:")
for label, row in zip(bp.labels, bp.matrix.tolist()):
    print(f"  {label:>12} {row}")
print("H1(Y) =", bp.h1)

# tau reverses every plumbing torus; on the excess diagonal edges this is -1,
# which is what keeps the involution from being homologically trivial.
print("\ntau on torus classes:\n", torus_action(g, "tau"))

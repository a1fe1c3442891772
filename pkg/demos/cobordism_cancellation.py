"""Handle cancellation for the compositions Q o W, C o N0, C o N1 and T o N0.

Run with ``python demos/cobordism_cancellation.py``.
"""
from protocork.cobordisms import (
    build_C,
    build_Q,
    build_T,
    build_W,
    check_trivial,
    compose,
    protocork_as_cobordism,
)
from protocork.graphs import enumerate_graphs, is_connected, is_symmetric, validate

sym = validate(
    {"n": 2, "edges": [[1, 1, 1], [2, 2, 1], [1, 2, 1], [1, 2, -1], [2, 1, 1], [2, 1, -1]]}
)
t = build_T(sym)
print("curves of T for the six-edge symmetric graph:")
for h in t.handles:
    print(f"  {h.label:<18} {h.curve:<8} threads {dict(h.attach)}  tau -> {t.symmetry[h.label]}")

c = compose(protocork_as_cobordism(sym, 0), t)
result = check_trivial(c)
print("\nT o N0 trivial:", result.trivial)
for lo, hi in result.trace:
    print(f"  cancel {lo} against {hi}")

print("\nsweep over every connected class with n <= 3, |E| <= 7:")
tally = {"QW": 0, "C0": 0, "C1": 0, "T": 0}
for n in (1, 2, 3):
    for g in enumerate_graphs(n, 7):
        if not is_connected(g):
            continue
        tally["QW"] += bool(check_trivial(compose(build_W(g), build_Q(g))))
        tally["C0"] += bool(check_trivial(compose(protocork_as_cobordism(g, 0), build_C(g))))
        tally["C1"] += bool(check_trivial(compose(protocork_as_cobordism(g, 1), build_C(g))))
        if is_symmetric(g):
            tally["T"] += bool(check_trivial(compose(protocork_as_cobordism(g, 0), build_T(g))))
print(" ", tally)

"""Acceptance criteria; the terminal summary prints one PASS/FAIL line each."""
import json
import random
import time
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from conftest import AKBULUT, corpus
from oracles import cokernel_by_sympy
from protocork.cli import main
from protocork.cobordisms import (
    Cobordism,
    Handle,
    build_C,
    build_Q,
    build_T,
    build_W,
    check_trivial,
    compose,
    protocork_as_cobordism,
)
from protocork.floer import (
    FiniteUModule,
    cobordism_map_degree,
    default_maps,
    dimension_additivity_check,
    exact_sequence_check,
    formal_dimension,
    ms_gate,
    split_package,
    standard_package,
)
from protocork.graphs import is_connected, is_symmetric, is_trivial, stats, torus_action, validate
from protocork.homology import boundary_presentation, protocork_homology
from protocork.kirby import build_diagram, diagram_counts, render
from protocork.linalg import AbelianGroup


@pytest.mark.criterion(1, "Akbulut graph: b1, H_*(N0), H1(Y), stage-0 diagram counts")
def test_criterion_1_akbulut():
    start = time.perf_counter()
    g = validate(AKBULUT)
    assert stats(g).b1_boundary == 2
    p = protocork_homology(g, 0)
    assert (p.H1, p.H2, p.H3, p.b_plus) == (AbelianGroup(2), AbelianGroup(0), AbelianGroup(0), 0)
    bp = boundary_presentation(g)
    assert bp.h1 == AbelianGroup(2) and bp.h1.is_free
    c = diagram_counts(build_diagram(g, 0))
    assert (c["framed"], c["dotted"]) == (1, 3)
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(2, "boundary SNF rank and stage 0/1 homology on n<=2, |E|<=6")
def test_criterion_2_homology_corpus():
    start = time.perf_counter()
    graphs = corpus(2, 6)
    assert len(graphs) == 3 + 9  # n=1: |E| in {1,3,5}; n=2: nine classes
    for g in graphs:
        b1 = len(g) - 2 * g.n + stats(g).component_count
        bp = boundary_presentation(g)
        assert cokernel_by_sympy(bp.matrix.tolist(), bp.matrix.shape) == (b1, [])
        assert bp.h1 == AbelianGroup(b1)
        for stage in (0, 1):
            p = protocork_homology(g, stage)
            assert (p.H1, p.H2, p.H3, p.b_plus) == (AbelianGroup(b1), AbelianGroup(0), AbelianGroup(0), 0)
    assert time.perf_counter() - start < 30.0


@pytest.mark.criterion(3, "QW, C o N0, C o N1, T o N0 cancel; mutated control does not")
def test_criterion_3_cobordisms():
    checked = 0
    for g in corpus(2, 6):
        if not is_connected(g):
            continue
        assert check_trivial(compose(build_W(g), build_Q(g)))
        assert check_trivial(compose(protocork_as_cobordism(g, 0), build_C(g)))
        assert check_trivial(compose(protocork_as_cobordism(g, 1), build_C(g)))
        if is_symmetric(g):
            assert check_trivial(compose(protocork_as_cobordism(g, 0), build_T(g)))
            checked += 1
    assert checked > 0
    g = validate(AKBULUT)
    c = compose(protocork_as_cobordism(g, 0), build_C(g))
    handles = list(c.handles)
    last = handles[-1]
    handles[-1] = Handle.make(last.index, last.label, {k: 2 * v for k, v in last.attach}, last.curve)
    assert not check_trivial(Cobordism(c.source, c.target, tuple(handles), c.name))


@pytest.mark.criterion(4, "standard package shape for b1<=8; exact sequence with corruptions for b1<=5")
def test_criterion_4_floer():
    for b1 in range(9):
        p = standard_package(b1, "hat")
        assert [(t.multiplicity, t.top_grading) for t in p.standard] == [
            (comb(b1, k), Fraction(k - 1 - b1)) for k in range(b1 + 1)
        ]
    assert standard_package(0, "hat").standard[0].top_grading == -1
    rnd = random.Random(4)
    for b1 in range(6):
        for _ in range(100):
            red = FiniteUModule.of(
                (Fraction(rnd.randint(-9, 9), rnd.choice([1, 2])), rnd.randint(1, 6))
                for _ in range(rnd.randint(0, 5))
            )
            pk = (split_package(b1, "check", red), split_package(b1, "hat", red), split_package(b1, "bar"))
            maps = default_maps(b1, len(red))
            assert exact_sequence_check(*pk, maps)
            for bad in maps.corruptions():
                assert not exact_sequence_check(*pk, bad)


@pytest.mark.criterion(5, "formal dimension -1 / 0 at the top reducible; additivity exhaustive")
def test_criterion_5_dimensions():
    for b1 in range(9):
        assert formal_dimension(b1, b1, 0) == -1
        assert formal_dimension(b1, b1, -1) == 0
    for b1 in range(6):
        for f in range(b1 + 1):
            for i in range(-5, 6):
                assert dimension_additivity_check(b1, f, i)


@pytest.mark.criterion(6, "ms_gate on 10^4 random inputs; degree 0 for F and W")
def test_criterion_6_gate():
    rnd = random.Random(6)
    for _ in range(10_000):
        c, chi, sig = (rnd.randint(-200, 200) for _ in range(3))
        dd = rnd.randint(0, 60)
        gate = ms_gate(c, chi, sig, dd)
        assert gate.d * 4 == c - 2 * chi - 3 * sig
        assert gate.passes == (c - 2 * chi - 3 * sig >= 8 * dd)
    # F: b1 copies of S1 x D3 boundary-summed, minus a ball, for b1 = 2
    assert cobordism_map_degree(0, -2, 0, 0, 2) == 0
    for b in range(9):
        assert cobordism_map_degree(0, 0, 0, b, b) == 0


@pytest.mark.criterion(7, "torus action relations; tau fixes minus an excess diagonal torus iff nontrivial")
def test_criterion_7_group():
    seen = 0
    for g in corpus(3, 7):
        if not is_symmetric(g):
            continue
        seen += 1
        I = np.eye(len(g), dtype=int)
        ra, rb, t = (torus_action(g, w) for w in ("rho_A", "rho_B", "tau"))
        for m in (ra, rb, t):
            assert (m @ m == I).all()
        assert (ra @ rb == rb @ ra).all() and (t @ rb @ t == ra).all()
        diag_excess = [e for e in stats(g).excess_edges if g.edge(e).is_diagonal]
        if is_trivial(g):
            assert not diag_excess
        else:
            assert any(t[g.position(e), g.position(e)] == -1 for e in diag_excess)
    assert seen > 0


@pytest.mark.criterion(8, "byte-identical reports and SVG across two runs on the corpus")
def test_criterion_8_determinism(tmp_path, capsys):
    paths = []
    for k, g in enumerate(corpus(3, 7)):
        p = tmp_path / f"g{k:03d}.json"
        p.write_text(json.dumps(g.to_json()))
        paths.append(p)

    def sweep(out):
        reports = []
        for p in paths:
            for argv in (
                ["info", str(p)],
                ["kirby", str(p), "--format", "svg", "--out", str(out)],
                ["cobordism", str(p), "--check", "QW"],
            ):
                main(argv)
                r = json.loads(capsys.readouterr().out)
                r.pop("timing")
                reports.append(json.dumps(r, sort_keys=True))
        svgs = {q.name: q.read_bytes() for q in sorted(out.iterdir())}
        return reports, svgs

    first = sweep(tmp_path / "a")
    second = sweep(tmp_path / "b")
    assert first == second
    for g in corpus(3, 7):
        assert render(build_diagram(g, "half"), "svg") == render(build_diagram(g, "half"), "svg")

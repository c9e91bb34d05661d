import itertools
import math
import random

import numpy as np
import pytest

from conftest import brute_span
from zpkcodes.codes import Code
from zpkcodes.graph import (
    CosetGraph,
    NotSrgBySpectrum,
    SrgUndefined,
    WellDefinednessError,
    ZeroColumnError,
    adjacency_from_edges,
    build_coset_graph,
    character_check,
    check_srg_relations,
    degree_formula_check,
    lambda_comparison,
    lambda_mu_identities,
    measure_srg,
    spectrum_via_dual_weights,
    srg_report,
    unit_cayley_graph,
    verify_character_eigenvectors,
)
from zpkcodes.ring import RingSpec


def brute_coset_graph(D: Code):
    """Quotient Z_q^n / D built from the codeword set, adjacency by unit-vector differences."""
    spec, n = D.spec, D.n
    words = brute_span(D.generator, spec)
    cls = {}
    reps = []
    for v in itertools.product(range(spec.q), repeat=n):
        if v in cls:
            continue
        idx = len(reps)
        reps.append(v)
        for w in words:
            cls[tuple((a + b) % spec.q for a, b in zip(v, w))] = idx
    V = len(reps)
    A = np.zeros((V, V), dtype=int)
    M = np.zeros((V, V), dtype=int)
    for a, v in enumerate(reps):
        seen = set()
        for i in range(n):
            for u in spec.unit_list:
                w = list(v)
                w[i] = (w[i] + u) % spec.q
                b = cls[tuple(w)]
                M[a, b] += 1
                seen.add(b)
        for b in seen - {a}:
            A[a, b] = 1
    return reps, A, M


def brute_srg(A):
    V = len(A)
    C2 = A @ A
    lam = {C2[i, j] for i in range(V) for j in range(V) if i != j and A[i, j]}
    mu = {C2[i, j] for i in range(V) for j in range(V) if i != j and not A[i, j]}
    return lam, mu


CASES = [
    ("ternary dual", RingSpec(3, 1), [[1, 1, 2]]),
    ("Z9 repetition", RingSpec(3, 2), [[1, 1]]),
    ("Z9 zero", RingSpec(3, 2), [[0]]),
    ("Z4 mixed", RingSpec(2, 2), [[1, 2, 3]]),
    ("Z9 two rows", RingSpec(3, 2), [[1, 0, 3], [0, 3, 3]]),
    ("Z8", RingSpec(2, 3), [[1, 2]]),
    ("Z5", RingSpec(5, 1), [[1, 2, 3]]),
]


@pytest.mark.parametrize("name, spec, G", CASES, ids=[c[0] for c in CASES])
def test_graph_matches_brute_force(name, spec, G):
    D = Code(G, spec)
    g = build_coset_graph(D)
    reps, A, M = brute_coset_graph(D)
    assert g.order == len(reps) == spec.q**D.n // D.size
    # brute-force scan order is lexicographic too, so the first member is the least
    assert [tuple(r) for r in g.vertices] == reps
    assert (g.adjacency_matrix() == A).all()
    assert (g.generator_matrix() == M).all()
    Ag = g.adjacency_matrix()
    assert (Ag == Ag.T).all() and not np.diag(Ag).any()
    assert (Ag.sum(axis=1) == g.degree).all()


@pytest.mark.parametrize("name, spec, G", CASES, ids=[c[0] for c in CASES])
def test_spectrum_matches_numeric_eigenvalues(name, spec, G):
    D = Code(G, spec)
    g = build_coset_graph(D)
    closed = spectrum_via_dual_weights(D)
    assert sum(closed.values()) == g.order
    ev = np.linalg.eigvalsh(g.generator_matrix().astype(float))
    assert sorted(np.rint(ev).astype(int).tolist()) == sorted(
        e for e, m in closed.items() for _ in range(m))
    chars = character_check(g)
    simple = np.linalg.eigvalsh(g.adjacency_matrix().astype(float))
    assert sorted(np.rint(simple).astype(int).tolist()) == sorted(
        e for e, m in chars.simple_spectrum.items() for _ in range(m))
    assert chars.simple_residual < 1e-9
    assert verify_character_eigenvectors(g, 1e-9) < 1e-9


def test_build_examples():
    g = build_coset_graph(Code([[1, 1, 2]], RingSpec(3, 1)))
    assert (g.order, g.degree) == (9, 6)
    g = build_coset_graph(Code.zero(1, RingSpec(3, 1)))
    assert g.order == 3 and g.connection == (1, 2)
    assert [tuple(v) for v in g.vertices] == [(0,), (1,), (2,)]
    g = build_coset_graph(Code.full(2, RingSpec(3, 1)))
    assert g.order == 1 and g.degree == 0
    with pytest.raises(SrgUndefined, match="edgeless"):
        measure_srg(g)
    with pytest.raises(SrgUndefined, match="complete"):
        measure_srg(unit_cayley_graph(RingSpec(3, 1)))


def test_zero_column_rejected(Z3):
    # e_1 lies in the code, so column 1 of its parity check vanishes
    with pytest.raises(ZeroColumnError):
        build_coset_graph(Code([[1, 0], [0, 0]], Z3))


def test_degree_formula_examples(ternary, Z9):
    assert degree_formula_check(build_coset_graph(ternary.dual())).holds
    chk = degree_formula_check(build_coset_graph(Code([[1, 1]], Z9)))
    assert not chk and (chk.measured, chk.expected) == (6, 12)
    chk = degree_formula_check(build_coset_graph(Code.zero(1, Z9)))
    assert chk and chk.measured == 6


def test_measure_examples(ternary, Z9):
    assert measure_srg(build_coset_graph(ternary.dual())).parameters == (9, 6, 3, 6)
    assert measure_srg(unit_cayley_graph(Z9)).parameters == (9, 6, 3, 6)
    c5 = adjacency_from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert measure_srg(c5).parameters == (5, 2, 0, 1)


def test_measure_witness():
    # path on 4 vertices is not regular; 6-cycle is regular but not strongly regular
    p4 = adjacency_from_edges(4, [(0, 1), (1, 2), (2, 3)])
    m = measure_srg(p4)
    assert not m.strongly_regular and m.reason == "not regular"
    c6 = adjacency_from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    m = measure_srg(c6)
    assert not m.strongly_regular and m.reason == "mu not constant"
    assert m.witness["count"] != m.witness["other_count"]


def test_measure_agrees_with_brute_force():
    rng = random.Random(7)
    rings = [RingSpec.from_modulus(q) for q in (3, 4, 5, 9)]
    for _ in range(25):
        spec = rng.choice(rings)
        n = rng.randint(1, 3)
        G = [[rng.randrange(spec.q) for _ in range(n)] for _ in range(rng.randint(1, 2))]
        D = Code(G, spec)
        try:
            g = build_coset_graph(D)
        except ZeroColumnError:
            continue
        _, A, _ = brute_coset_graph(D)
        try:
            m = measure_srg(g)
        except SrgUndefined:
            assert A.sum() == 0 or (A + np.eye(len(A), dtype=int) == 1).all()
            continue
        lam, mu = brute_srg(A)
        assert m.strongly_regular == (len(lam) == 1 and len(mu) == 1)
        if m.strongly_regular:
            assert {m.lam} == lam and {m.mu} == mu


def test_translation_reduced_scan_agrees(monkeypatch, ternary):
    import zpkcodes.graph as graph
    g = build_coset_graph(ternary.dual())
    full = measure_srg(g)
    monkeypatch.setattr(graph, "DENSE_PAIR_LIMIT", 1)
    reduced = measure_srg(g)
    assert reduced.pair_scan == "translation-reduced"
    assert reduced.parameters == full.parameters


def test_spectrum_examples(ternary, Z9):
    assert spectrum_via_dual_weights(ternary.dual()) == {6: 1, 0: 6, -3: 2}
    assert spectrum_via_dual_weights(Code.full(2, Z9)) == {12: 1}
    assert spectrum_via_dual_weights(Code([[1, 1]], Z9)) == {12: 1, 0: 6, -6: 2}


def test_eigenvector_examples(ternary, Z9):
    assert verify_character_eigenvectors(build_coset_graph(ternary.dual())) < 1e-9
    assert verify_character_eigenvectors(build_coset_graph(Code([[1, 1]], Z9))) < 1e-9
    chars = character_check(build_coset_graph(Code([[1, 1]], Z9)))
    assert chars.simple_spectrum == {6: 1, 0: 6, -3: 2}


def test_well_definedness_guard(ternary):
    g = build_coset_graph(ternary.dual())
    # (1,0,0) is not orthogonal to the base code, so its character is not constant on cosets
    with pytest.raises(WellDefinednessError):
        character_check(g, words=[[1, 0, 0]])
    assert character_check(g, words=[[1, 1, 2]]).closed_form_residual < 1e-9


def test_relations_examples():
    assert all(check_srg_relations(6, 3, 6, [0, -3]).values())
    r, s = (-1 + math.sqrt(5)) / 2, (-1 - math.sqrt(5)) / 2
    assert all(check_srg_relations(2, 0, 1, [r, s]).values())
    assert not all(check_srg_relations(6, 3, 5, [0, -3]).values())
    with pytest.raises(NotSrgBySpectrum):
        check_srg_relations(6, 3, 6, [0, -3, 1])


def test_five_cycle_relations_from_numeric_spectrum():
    c5 = adjacency_from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    m = measure_srg(c5)
    ev = sorted(np.linalg.eigvalsh(c5.astype(float)))
    restricted = [round(x, 12) for x in ev[:-1]]
    assert all(check_srg_relations(m.eta, m.lam, m.mu, restricted).values())


def test_lambda_comparison_examples(Z9, Z3):
    rec = lambda_comparison(Z9, unit_cayley_graph(Z9))
    assert rec == {"formula_lambda": 2, "measured_lambda": 3}
    rec = lambda_comparison(Z3, unit_cayley_graph(Z3))
    assert rec == {"formula_lambda": 1, "measured_lambda": 1}
    assert lambda_comparison(RingSpec(5, 2), unit_cayley_graph(RingSpec(5, 2)))["formula_lambda"] == 8


def test_lambda_mu_identity_examples():
    eqs = lambda_mu_identities(2, 3, 3, 6, 6, 3)
    assert eqs["lambda_minus_mu"] and eqs["gap_squared"] and eqs["gap_squared_via_mu"]
    assert eqs["p_divides_lambda_minus_mu"] and eqs["p_divides_4mu"]
    assert not lambda_mu_identities(2, 3, 3, 5, 6, 3)["lambda_minus_mu"]


def test_srg_report_pipeline(ternary):
    rep = srg_report(ternary.dual())
    assert rep.is_srg and rep.parameters == (9, 6, 3, 6)
    assert rep.restricted == (0, -3)
    assert all(rep.relations.values())
    assert rep.dual_weights == (2, 3)
    assert all(rep.lambda_mu.values())
    assert rep.eigenvalue_source == "closed-form"


def test_srg_report_with_collisions(Z4):
    # <(1,1,1,1)> over Z_4: every column equal, so the connection set collapses
    C = Code([[1, 1, 1, 1]], Z4)
    rep = srg_report(C.dual())
    assert rep.parameters == (4, 2, 0, 2)
    assert rep.eigenvalue_source == "simple-graph"
    assert all(rep.relations.values())
    assert rep.lambda_mu is None and "not applicable" in rep.lambda_mu_note

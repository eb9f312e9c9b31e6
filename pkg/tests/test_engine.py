import random
from fractions import Fraction

import pytest

from balancegraph.defects import validate_certificate
from balancegraph.engine import (
    EngineConfig,
    Status,
    classify_shape,
    decide,
    label_cycle,
    label_four,
    label_tree,
)
from balancegraph.graph import GraphError, Permutation, WeightedGraph, apply_permutation, verify_labeling
from balancegraph.oracle import enumerate_graphs
from balancegraph.sweep import random_graph

from conftest import F2, F3, F5, Q

K4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
FIG5 = {(1, 2): 0, (1, 4): 0, (2, 3): 0, (1, 5): 1, (2, 5): 1, (3, 4): 1}


def pairs(labels):
    return [(str(a), str(b)) for a, b in labels]


def test_classify_examples():
    g1 = WeightedGraph(Q, 4, {(1, 2): 1, (1, 3): 1, (2, 3): 1, (3, 4): 1})
    shape = classify_shape(g1)
    assert shape.name == "Gamma1" and shape.normalizer == Permutation.identity(4)

    cyc = WeightedGraph(Q, 4, {(1, 3): 1, (2, 3): 1, (2, 4): 1, (1, 4): 1})
    shape = classify_shape(cyc)
    assert shape.name == "Gamma4"
    assert apply_permutation(cyc, shape.normalizer).edge_keys() == {(1, 2), (2, 3), (3, 4), (1, 4)}

    star = WeightedGraph(Q, 4, {(1, 2): 1, (2, 3): 1, (2, 4): 1})
    shape = classify_shape(star)
    assert shape.name == "Gamma6" and shape.normalizer(2) == 1


def test_classify_rejects_bad_input():
    with pytest.raises(GraphError):
        classify_shape(WeightedGraph(Q, 4, {(1, 2): 1, (3, 4): 1}))
    with pytest.raises(GraphError):
        classify_shape(WeightedGraph(Q, 5, {(1, 2): 1, (2, 3): 1, (3, 4): 1, (4, 5): 1}))


def test_tree_examples():
    assert pairs(label_tree(WeightedGraph(Q, 2, {(1, 2): 5}))) == [("0", "1"), ("-5", "0")]
    g = WeightedGraph(Q, 3, {(1, 2): 0, (2, 3): 1})
    labels = label_tree(g)
    assert pairs(labels)[1] == ("0", "1")
    assert verify_labeling(g, labels) == []
    star = WeightedGraph(Q, 4, {(1, 2): 0, (1, 3): 0, (1, 4): 0})
    assert pairs(label_tree(star)) == [("0", "1")] * 4


def test_tree_labels_are_nonzero():
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(2, 8)
        edges = {}
        for v in range(2, n + 1):
            u = rng.randint(1, v - 1)
            edges[(u, v)] = rng.randrange(3)
        g = WeightedGraph(F3, n, edges)
        labels = label_tree(g)
        assert verify_labeling(g, labels) == []
        assert all(a or b for a, b in labels)


def test_cycle_examples():
    tri = WeightedGraph(Q, 3, {(1, 2): 1, (1, 3): 0, (2, 3): 1})
    assert pairs(label_cycle(tri)) == [("0", "1"), ("-1", "0"), ("0", "-1")]
    zero = WeightedGraph(Q, 3, {(1, 2): 0, (1, 3): 0, (2, 3): 0})
    assert pairs(label_cycle(zero)) == [("0", "0")] * 3
    sq = WeightedGraph(Q, 4, {(1, 2): 1, (2, 3): 1, (3, 4): 1, (1, 4): 1})
    labels = label_cycle(sq)
    assert pairs(labels)[2:] == [("1", "-1"), ("-1", "2")]
    assert verify_labeling(sq, labels) == []


def test_cycles_of_any_length():
    rng = random.Random(5)
    for _ in range(300):
        k = rng.randint(3, 9)
        F = rng.choice([F2, F3, F5, Q])
        order = list(range(1, k + 1))
        rng.shuffle(order)
        edges = {}
        for i in range(k):
            u, v = order[i], order[(i + 1) % k]
            edges[(min(u, v), max(u, v))] = F(rng.randint(-3, 3))
        g = WeightedGraph(F, k, edges)
        assert verify_labeling(g, label_cycle(g)) == []


def test_label_four_examples():
    g1 = WeightedGraph(Q, 4, {(1, 2): 2, (1, 3): 3, (2, 3): 5, (3, 4): 4})
    dec = label_four(g1)
    assert dec.status is Status.LABELABLE
    assert pairs(dec.labeling) == [("3", "0"), ("5", "2/3"), ("0", "1"), ("-4", "0")]
    assert dec.diagnostics["shape"] == "Gamma1" and dec.diagnostics["case"] == "1"

    k4 = WeightedGraph(Q, 4, {e: (2 if e == (1, 3) else 1) for e in K4})
    dec = label_four(k4)
    assert pairs(dec.labeling) == [("0", "1"), ("-1", "1"), ("-2", "1"), ("-1", "0")]
    assert dec.diagnostics["case"] == "3a"

    ones = WeightedGraph(Q, 4, {e: 1 for e in K4})
    dec = label_four(ones)
    assert dec.status is Status.NOT_LABELABLE and dec.certificate.code == "4C"


def test_label_four_preconditions():
    with pytest.raises(GraphError):
        label_four(WeightedGraph(Q, 4, {(1, 2): 0, (2, 3): 1, (3, 4): 1}))
    with pytest.raises(GraphError):
        label_four(WeightedGraph(Q, 3, {(1, 2): 1, (2, 3): 1}))


@pytest.mark.parametrize("p", [2, 3])
def test_round_trip_against_oracle(p):
    """label_four refutes exactly when a published defect exists."""
    from balancegraph.defects import detect_all
    from balancegraph.graph import connected_components, null_vertices

    for g in enumerate_graphs(4, p):
        if null_vertices(g) or len(connected_components(g)) != 1:
            continue
        dec = label_four(g)
        assert (dec.status is Status.NOT_LABELABLE) == bool(detect_all(g))


def test_every_gamma3_case_is_reached():
    seen = set()
    for g in enumerate_graphs(4, 3):
        if len(g) == 6 and not any(not any(g.weight(*e) for e in K4 if v in e) for v in range(1, 5)):
            seen.add(label_four(g).diagnostics["case"])
    assert {"3a", "3a-defect", "3b", "3b-defect", "3c", "3c-defect", "3d", "3d-defect", "3e-defect"} <= seen


def test_seeded_parameters_never_change_decisions():
    rng = random.Random(6)
    for _ in range(300):
        F = rng.choice([F3, F5, Q])
        g = random_graph(4, 3, rng) if F is F3 else WeightedGraph(
            F, 4, {e: F(rng.randint(-2, 2)) for e in K4 if rng.random() < 0.7}
        )
        base = decide(g)
        seeded = decide(g, EngineConfig(seed=rng.randrange(1000)))
        assert base.status == seeded.status
        if seeded.labeling is not None:
            assert verify_labeling(g, seeded.labeling) == []


def test_decide_figure5():
    assert decide(WeightedGraph(F3, 5, FIG5)).status is Status.NOT_LABELABLE_ORACLE
    assert decide(WeightedGraph(F5, 5, FIG5)).status is Status.NOT_LABELABLE_ORACLE
    assert decide(WeightedGraph(Q, 5, FIG5)).status is Status.UNKNOWN
    assert decide(WeightedGraph(F3, 5, FIG5), EngineConfig(use_oracle=False)).status is Status.UNKNOWN


def test_decide_with_null_vertex():
    g = WeightedGraph(Q, 5, {(1, 2): 1, (1, 3): 0, (2, 3): 0, (3, 4): 1})
    dec = decide(g)
    assert dec.status is Status.NOT_LABELABLE
    assert dec.certificate.vertices == (3, 1, 2, 4)
    assert dec.diagnostics["null_vertices"] == [5]
    ok = WeightedGraph(Q, 5, {(1, 2): 2, (1, 3): 3, (2, 3): 5, (3, 4): 4, (4, 5): 0})
    dec = decide(ok)
    assert dec.status is Status.LABELABLE and dec.labeling[4] == (Q(0), Q(0))


def test_decide_lifts_certificates_from_components():
    # K4 of ones on vertices 2, 4, 5, 7 plus an unrelated edge
    edges = {(a, b): 1 for a, b in [(2, 4), (2, 5), (2, 7), (4, 5), (4, 7), (5, 7)]}
    edges[(1, 3)] = 3
    g = WeightedGraph(Q, 7, edges)
    dec = decide(g)
    assert dec.status is Status.NOT_LABELABLE
    assert set(dec.certificate.vertices) == {2, 4, 5, 7}
    assert validate_certificate(g, dec.certificate)


def test_decide_is_isomorphism_invariant():
    rng = random.Random(7)
    for _ in range(500):
        n = rng.randint(2, 6)
        g = random_graph(n, 3, rng)
        images = list(range(1, n + 1))
        rng.shuffle(images)
        h = apply_permutation(g, Permutation(tuple(images)))
        assert decide(g).status == decide(h).status


def test_rational_tables_exact():
    g = WeightedGraph(Q, 4, {(1, 2): Fraction(7, 3), (1, 3): Fraction(-2, 5), (2, 3): 11, (3, 4): Fraction(1, 9)})
    dec = decide(g)
    assert dec.status is Status.LABELABLE and verify_labeling(g, dec.labeling) == []

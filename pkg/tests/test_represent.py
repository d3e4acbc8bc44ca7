from fractions import Fraction as F
from functools import cmp_to_key

import pytest
from hypothesis import given, settings, strategies as st

from mtg.construct import construct_cluster_main
from mtg.exactnum import ExactReal, compare, make
from mtg.graphs import Graph, complement, complete, cycle, empty, induced_subgraph, linear_forest, path
from mtg.oracle import exists_representation
from mtg.represent import (
    Representation,
    VerificationError,
    check_coloring_lemmas,
    color_triangles,
    complement_representation,
    reflect_representation,
    region_index,
    verify,
)

HALF = F(1, 2)
C4_REP = Representation((1, -1, 1, -1), (-HALF, HALF))


def test_region_index_examples():
    rep = Representation((), (-HALF, HALF))
    assert region_index(rep, 0) == 1
    assert region_index(rep, HALF) == 2
    assert region_index(Representation((), ()), 17) == 0


def test_thresholds_must_increase():
    with pytest.raises(ValueError):
        Representation((0,), (1, 1))


def test_verify_examples():
    assert verify(cycle(4), C4_REP).ok
    two_p2 = linear_forest([0, 2])
    assert verify(two_p2, Representation((1, -1, 2, -2), (-HALF, HALF))).ok
    report = verify(path(4), C4_REP)
    assert [(v.pair, v.region, v.expected_parity) for v in report.violations] == [((0, 3), 1, "even")]
    with pytest.raises(VerificationError):
        verify(path(3), C4_REP)


def test_verify_lists_every_violation():
    report = verify(complete(4), Representation((0, 0, 0, 0), (1,)))
    assert len(report.violations) == 6


def test_color_examples():
    c = construct_cluster_main(0, 0, 2)
    tris = [(0, 1, 2), (3, 4, 5)]
    assert color_triangles(c.graph, c.representation, tris) == [(1, 1, 1), (2, 2, 2)]
    k3 = Representation((1, 1, 1), (1,))
    assert color_triangles(complete(3), k3, [(0, 1, 2)]) == [(1, 1, 1)]
    c = construct_cluster_main(0, 0, 4)
    assert (1, 2, 3) in color_triangles(c.graph, c.representation, [(9, 10, 11)])


def test_coloring_lemma_examples():
    assert check_coloring_lemmas([(1, 1, 1), (2, 2, 2), (1, 2, 3)]) is None
    assert "both appear" in check_coloring_lemmas([(1, 2, 2), (1, 3, 3)])
    assert "appears 2 times" in check_coloring_lemmas([(1, 2, 3), (1, 2, 3)])
    # {1,1,1} read with i=1, j=1 clashes with {1,2,2}
    assert check_coloring_lemmas([(1, 1, 1), (1, 2, 2)]) is not None


def test_complement_representation_examples():
    rep = complement_representation(empty(3), Representation((0, 0, 0), ()))
    assert rep.thresholds == (ExactReal(-1),)
    assert verify(complete(3), rep).ok
    rep = complement_representation(cycle(4), C4_REP)
    assert rep.k == 3 and verify(complement(cycle(4)), rep).ok
    c = construct_cluster_main(0, 0, 2)
    rep = complement_representation(c.graph, c.representation)
    assert rep.k == 4 and verify(complement(c.graph), rep).ok


def test_complement_representation_rejects_bad_input():
    with pytest.raises(VerificationError):
        complement_representation(path(4), C4_REP)


def test_reflection():
    c = construct_cluster_main(0, 0, 3)
    assert c.k == 5
    rep = reflect_representation(c.graph, c.representation)
    assert rep.k == 5 and verify(complement(c.graph), rep).ok
    rep = reflect_representation(cycle(4), C4_REP)
    assert verify(cycle(4), rep).ok


def test_json_round_trip():
    rep = construct_cluster_main(1, 1, 2).representation
    assert Representation.from_json(rep.to_json()) == rep
    assert rep.dumps() == Representation.from_json(rep.to_json()).dumps()


small = st.fractions(min_value=-5, max_value=5, max_denominator=7)
reals = st.builds(lambda u, a, b: make({2: a, 3: b}, u), small, small, small)


@settings(max_examples=200, deadline=None)
@given(st.lists(reals, min_size=0, max_size=5, unique=True), reals, reals)
def test_region_index_monotone(ts, s, t):
    rep = Representation((), tuple(sorted(ts, key=cmp_to_key(compare))))
    if compare(s, t) > 0:
        s, t = t, s
    assert region_index(rep, s) <= region_index(rep, t)


@st.composite
def small_graph_with_rep(draw):
    n = draw(st.integers(2, 5))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])
    for k in range(0, 11):
        res = exists_representation(g, k)
        if res.status == "yes":
            return g, res.representation
    raise AssertionError(f"no representation with <= 10 thresholds for {g}")


@settings(max_examples=40, deadline=None)
@given(small_graph_with_rep(), st.data())
def test_vertex_deletion_keeps_validity(gr, data):
    g, rep = gr
    vs = sorted(data.draw(st.sets(st.integers(0, g.n - 1), min_size=1)))
    sub = induced_subgraph(g, vs)
    assert verify(sub, Representation(tuple(rep.ranks[v] for v in vs), rep.thresholds)).ok


@settings(max_examples=40, deadline=None)
@given(small_graph_with_rep())
def test_complement_adds_one_threshold(gr):
    g, rep = gr
    new = complement_representation(g, rep)
    assert new.k == rep.k + 1 and verify(complement(g), new).ok

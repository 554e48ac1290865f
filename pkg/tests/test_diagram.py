from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bns.diagram import (
    UNKNOT,
    PlanarDiagram,
    connected_sum,
    from_crossings,
    mirror,
    parse_pd,
    reidemeister1,
    reidemeister2,
    relabel_consecutive,
)
from bns.errors import EdgeMultiplicity, InconsistentOrientation, MalformedToken, NotAKnot
from knotdata import FIGURE_EIGHT, HOPF, LEFT_TREFOIL, corpus, knotinfo
from oracles import trace_signs

CORPUS = corpus()


def test_trefoil_counts():
    D = parse_pd(LEFT_TREFOIL)
    assert D.crossing_count == 3
    assert D.edge_count == 6
    assert D.component_count == 1
    assert D.basepoint_edge == 1


def test_trefoil_signs_match_tracer():
    D = parse_pd(LEFT_TREFOIL)
    assert list(D.signs) == trace_signs(D.crossings)
    assert (D.n_plus, D.n_minus, D.writhe) == (0, 3, -3)


def test_figure_eight_writhe():
    D = parse_pd(FIGURE_EIGHT)
    assert D.writhe == 0 and D.n_plus == 2


@pytest.mark.parametrize("name,D", CORPUS, ids=[n for n, _ in CORPUS])
def test_corpus_signs_match_tracer(name, D):
    assert list(D.signs) == trace_signs(D.crossings)
    assert D.n_plus + D.n_minus == D.crossing_count
    assert sum(D.signs) == D.writhe


def test_unknot():
    D = parse_pd("unknot")
    assert D.crossing_count == 0 and D.component_count == 1
    assert D is UNKNOT
    assert mirror(D).crossing_count == 0


@pytest.mark.parametrize(
    "text",
    ["X(1,2,3)", "Y(1,2,3,4)", "X(1,2,3,4) garbage", "hello", "X(a,b,c,d)"],
)
def test_malformed(text):
    with pytest.raises(MalformedToken):
        parse_pd(text)


@pytest.mark.parametrize("text", ["X(1,2,3,4)", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,7)", "X(1,1,1,2) X(2,3,3,3)"])
def test_edge_multiplicity(text):
    with pytest.raises(EdgeMultiplicity):
        parse_pd(text)


def test_inconsistent_orientation():
    with pytest.raises(InconsistentOrientation):
        parse_pd("X(1,2,3,4) X(1,2,3,4)")


def test_accepts_wrappers_and_separators():
    a = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]")
    b = parse_pd("X(1,4,2,5),X(3,6,4,1);X(5,2,6,3)")
    assert a.crossings == b.crossings == parse_pd(LEFT_TREFOIL).crossings


def test_basepoint_override_and_validation():
    D = parse_pd(LEFT_TREFOIL, basepoint=4)
    assert D.basepoint_edge == 4
    with pytest.raises(ValueError):
        parse_pd(LEFT_TREFOIL, basepoint=99)


def test_round_trip_corpus():
    for _, D in CORPUS:
        E = parse_pd(D.to_pd())
        assert E.crossings == D.crossings
        assert str(E) == str(D)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
def test_arbitrary_edge_labels(item, rnd):
    _, D = item
    labels = rnd.sample(range(1, 10_000), D.edge_count)
    new = dict(zip(D.edges, labels))
    E = from_crossings([[new[e] for e in x] for x in D.crossings])
    assert E.signs == D.signs
    assert parse_pd(E.to_pd()).crossings == E.crossings
    assert relabel_consecutive(E).signs == D.signs


def test_mirror_swaps_signs():
    for _, D in CORPUS:
        M = mirror(D)
        assert (M.n_plus, M.n_minus) == (D.n_minus, D.n_plus)
        assert mirror(M).crossings == D.crossings
        assert M.edges == D.edges


def test_connected_sum_counts():
    A = parse_pd(LEFT_TREFOIL)
    B = parse_pd(FIGURE_EIGHT)
    S = connected_sum(A, B)
    assert S.crossing_count == 7
    assert S.is_knot()
    assert (S.n_plus, S.n_minus) == (A.n_plus + B.n_plus, A.n_minus + B.n_minus)
    assert S.basepoint_edge == A.basepoint_edge
    assert connected_sum(A, UNKNOT) is A
    assert connected_sum(UNKNOT, A) is A


def test_connected_sum_rejects_links():
    L = parse_pd(HOPF)
    assert L.component_count == 2
    with pytest.raises(NotAKnot):
        connected_sum(L, parse_pd(LEFT_TREFOIL))


@pytest.mark.parametrize("name,D", CORPUS[:40], ids=[n for n, _ in CORPUS[:40]])
def test_dt_codes_decode_to_same_chirality(name, D):
    dt = knotinfo()[name]["dt"]
    E = parse_pd("dt:" + dt)
    assert E.crossing_count == D.crossing_count
    assert E.writhe == D.writhe


def test_alphabetical_dt():
    D = parse_pd("dt:nanbhEmGkCiaLfNdJ")
    assert D.crossing_count == 14 and D.is_knot()


def test_faces_euler_characteristic():
    for _, D in CORPUS:
        assert len(D.faces) == D.crossing_count + 2


@pytest.mark.parametrize("kind", range(4))
def test_reidemeister_one(kind):
    D = parse_pd(LEFT_TREFOIL)
    E = reidemeister1(D, 3, kind)
    assert E.crossing_count == 4 and E.is_knot()
    assert abs(E.writhe - D.writhe) == 1
    assert len(E.faces) == 6
    K = reidemeister1(UNKNOT, 1, kind)
    assert K.crossing_count == 1 and K.is_knot()


def test_reidemeister_two():
    D = parse_pd(LEFT_TREFOIL)
    made = 0
    for fi, face in enumerate(D.faces):
        labels = sorted({D.crossings[k][(i + 1) % 4] for k, i in face})
        if len(labels) < 2:
            continue
        E = reidemeister2(D, fi, labels[0], labels[1])
        assert E.crossing_count == 5
        assert E.writhe == D.writhe
        assert len(E.faces) == 7
        made += 1
    assert made >= 2


def test_is_frozen():
    D = parse_pd(LEFT_TREFOIL)
    with pytest.raises(Exception):
        D.crossings = ()
    assert isinstance(D, PlanarDiagram)


def test_alphabetical_dt_rejects_links_and_bad_lengths():
    with pytest.raises(MalformedToken):
        parse_pd("dt:cbcbca")
    with pytest.raises(MalformedToken):
        parse_pd("dt:cabbca")

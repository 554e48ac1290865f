from __future__ import annotations

import pytest

from bns.algebra import PrimeField
from bns.algebra.graded import FilteredCohomology
from bns.bncomplex import (
    BNComplex,
    build_reduced,
    build_unreduced,
    involution,
    lee_generator,
    lee_generators,
    tmap,
)
from bns.cube import Cube, all_orientations
from bns.diagram import UNKNOT, mirror, parse_pd
from bns.invariants import khovanov_table
from knotdata import FIGURE_EIGHT, HOPF, LEFT_TREFOIL, corpus, diagram
from oracles import trace_circles

SMALL = corpus(7)
IDS = [n for n, _ in SMALL]


def basis(B: BNComplex):
    return [g for h in range(B.hmin, B.hmax + 1) for g in B.generators(h)]


def add(a: dict, b: dict, s: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


def test_unknot_complexes():
    C = build_unreduced(UNKNOT)
    assert sorted(C.qs(0)) == [-1, 1] and not any(C.differential(0))
    R = build_reduced(UNKNOT)
    assert R.q == {0: [0]}
    assert lee_generator(UNKNOT).chain == {(0, 1): 1}


def test_trefoil_differential_squares_to_zero():
    D = parse_pd(LEFT_TREFOIL)
    for C in (build_unreduced(D), build_reduced(D)):
        C.check()
        assert C.filtration_jumps() == {0, 2}


@pytest.mark.parametrize("name,D", SMALL, ids=IDS)
def test_complex_shape(name, D):
    B = BNComplex(D)
    R = BNComplex(D, reduced=True)
    C = B.full()
    C.check()
    assert C.filtration_jumps() <= {0, 2}
    n = D.crossing_count
    expected = sum(2 ** trace_circles(D.crossings, [(m >> k) & 1 for k in range(n)]) for m in range(1 << n))
    assert C.rank() == expected
    for h in range(B.hmin, B.hmax + 1):
        assert len(B.generators(h)) == 2 * len(R.generators(h))
    Cr = R.full()
    Cr.check()
    assert all(q % 2 == 0 for h in Cr.degrees for q in Cr.qs(h))
    assert FilteredCohomology(Cr, 0).total_group() == (1, ())


def test_generator_gradings():
    D = parse_pd(LEFT_TREFOIL)
    B = BNComplex(D)
    cube = Cube(D)
    for g in basis(B):
        gen = B.describe(g)
        ones = gen.labels.count("1")
        xs = gen.labels.count("x")
        assert ones + xs == cube.circles(g[0])[0]
        assert gen.h == gen.smoothing.weight - D.n_minus
        assert gen.q == ones - xs + gen.smoothing.weight + D.n_plus - 2 * D.n_minus
    R = BNComplex(D, reduced=True)
    for g in basis(R):
        assert R.describe(g).labels[R.basepoint_circle(g[0])] == "x"
        assert R.q_of(g) == B.q_of(g) + 1


def test_generators_are_sorted():
    D = parse_pd(FIGURE_EIGHT)
    B = BNComplex(D)
    for h in range(B.hmin, B.hmax + 1):
        keys = [
            (B.describe(g).smoothing.bits, tuple(l == "x" for l in B.describe(g).labels)) for g in B.generators(h)
        ]
        assert keys == sorted(keys)


@pytest.mark.parametrize("pd", [LEFT_TREFOIL, FIGURE_EIGHT])
def test_involution(pd):
    D = parse_pd(pd)
    B = BNComplex(D)
    for g in basis(B):
        u = {g: 1}
        assert B.involution(B.involution(u)) == u
        assert B.apply(B.involution(u)) == B.involution(B.apply(u))
    assert involution(D, {basis(B)[0]: 1}) == B.involution({basis(B)[0]: 1})


def test_tmap_and_splitting():
    D = parse_pd(LEFT_TREFOIL)
    B = BNComplex(D)
    R = BNComplex(D, reduced=True)
    for g in basis(R):
        xu = {g: 1}
        assert B.tmap(xu) == {}
        S = B.splitting(xu)
        assert B.tmap(S) == xu
    for g in basis(B):
        u = {g: 1}
        t = B.tmap(u)
        assert B.is_reduced_chain(t)
        assert B.apply(t) == B.tmap(B.apply(u))
    assert tmap(D, {basis(R)[0]: 1}) == {}


@pytest.mark.parametrize("name", ["3_1", "4_1", "6_2"])
def test_filtration_step_of_involution(name):
    D = diagram(name)
    for Dm in (D, mirror(D)):
        B = BNComplex(Dm)
        eps = B.epsilon()
        for j, e in eps.items():
            if (j + 2) % 4 in eps:
                assert eps[(j + 2) % 4] == -e
        for g in basis(B):
            j = B.q_of(g)
            image = add({g: 1}, B.involution({g: 1}), eps[j % 4])
            assert all(B.q_of(t) >= j + 2 for t in image), (g, image)


@pytest.mark.parametrize("name,D", SMALL, ids=IDS)
def test_lee_generators(name, D):
    B = BNComplex(D)
    gens = lee_generators(D)
    assert len(gens) == 2
    for L in gens:
        assert B.apply(L.chain) == {}
        assert all(B.h_of(k) == 0 for k in L.chain)
    reduced = [B.is_reduced_chain(L.chain) for L in gens]
    assert sorted(reduced) == [False, True]


def test_lee_generators_of_a_link():
    D = parse_pd(HOPF)
    B = BNComplex(D)
    gens = [B.lee_generator(o) for o in all_orientations(D)]
    assert len(gens) == 4
    for L in gens:
        assert B.apply(L.chain) == {}
    assert all(L.chain for L in gens)


def test_lee_generator_on_kinks():
    from bns.diagram import reidemeister1

    for kind in range(4):
        D = reidemeister1(parse_pd(LEFT_TREFOIL), 2, kind)
        B = BNComplex(D)
        for L in lee_generators(D):
            assert B.apply(L.chain) == {}


def _dims(table):
    return {k: g.rank for k, g in table.items()}


@pytest.mark.parametrize("name,D", corpus(6), ids=[n for n, _ in corpus(6)])
def test_f2_splitting(name, D):
    F2 = PrimeField(2)
    big = _dims(khovanov_table(D, reduced=False, ring=F2))
    small = _dims(khovanov_table(D, reduced=True, ring=F2))
    keys = set(big) | {(h, q + 1) for h, q in small} | {(h, q - 1) for h, q in small}
    for h, q in keys:
        assert big.get((h, q), 0) == small.get((h, q - 1), 0) + small.get((h, q + 1), 0)


@pytest.mark.parametrize("name,D", corpus(6), ids=[n for n, _ in corpus(6)])
def test_f2_splitting_of_filtration(name, D):
    from bns.algebra import graded_pieces

    F2 = PrimeField(2)
    big = BNComplex(D).reduced_levels(-2, 1, F2)
    small = BNComplex(D, reduced=True).reduced_levels(-2, 1, F2)
    a = {p.q: p.rank for p in graded_pieces(big, 0, F2) if p.rank}
    b = {p.q: p.rank for p in graded_pieces(small, 0, F2) if p.rank}
    (s,) = b
    assert a == {s - 1: 1, s + 1: 1}


def test_reduced_torsion_free_iff_unreduced():
    from bns.algebra import graded_pieces

    for _, D in corpus(6):
        for ring_p in (2, 3):
            R = BNComplex(D, reduced=True).reduced_levels(-2, 1)
            U = BNComplex(D).reduced_levels(-2, 1)
            red = all(p.order is None or p.order % ring_p for p in graded_pieces(R, 0))
            unr = all(p.order is None or p.order % ring_p for p in graded_pieces(U, 0))
            assert red == unr

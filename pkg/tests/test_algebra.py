from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from bns.algebra import (
    QQ,
    ZZ,
    FilteredComplex,
    PrimeField,
    SparseIntMatrix,
    elementary_divisors,
    gauss_reduce,
    graded_pieces,
    homology,
    smith_normal_form,
)
from bns.algebra.complex import tensor
from bns.algebra.gauss import reduce_pair
from bns.algebra.graded import Group
from bns.algebra.matrix import diagonal
from bns.bncomplex import BNComplex
from knotdata import corpus
from oracles import oracle_h0_groups, oracle_h0_pieces, pieces_as_dict


def staircase(p: int) -> FilteredComplex:
    return FilteredComplex.from_dump(
        f"""
        # degree -1 generator hits the top generator by 1 and the lower one by p
        g a h=-1 q=-2
        g top h=0 q=0
        g low h=0 q=-2
        d a top 1
        d a low {p}
        """
    )


def as_dict(pieces):
    return {p.q: str(p) for p in pieces if not p.is_zero}


# -- Smith normal form -----------------------------------------------------


def test_snf_identity():
    I = SparseIntMatrix.identity(4)
    U, S, V = smith_normal_form(I)
    assert U.to_dense() == S.to_dense() == V.to_dense() == I.to_dense()


def test_snf_example():
    M = SparseIntMatrix.from_dense([[2, 4], [6, 8]])
    U, S, V = smith_normal_form(M)
    assert diagonal(S) == [2, 4]
    assert (U @ M @ V).to_dense() == S.to_dense()


def test_snf_zero():
    M = SparseIntMatrix(3, 2, {})
    U, S, V = smith_normal_form(M)
    assert S.is_zero()


def test_sparse_matrix_stores_no_zeros():
    M = SparseIntMatrix.from_dense([[0, 1], [2, 0]])
    assert M.nnz == 2
    assert M.transpose().to_dense() == [[0, 2], [1, 0]]


@settings(max_examples=80, deadline=None)
@given(
    st.integers(1, 6).flatmap(
        lambda r: st.integers(1, 6).flatmap(
            lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
)
def test_snf_against_sympy(rows):
    M = SparseIntMatrix.from_dense(rows)
    U, S, V = smith_normal_form(M)
    assert (U @ M @ V).to_dense() == S.to_dense()
    assert abs(Matrix(U.to_dense()).det()) == 1
    assert abs(Matrix(V.to_dense()).det()) == 1
    d = diagonal(S)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    ref = sympy_snf(Matrix(rows))
    ref_diag = [abs(ref[i, i]) for i in range(min(ref.shape)) if ref[i, i]]
    assert sorted(nz) == sorted(ref_diag)
    assert elementary_divisors(M) == nz


def test_big_entries():
    big = 2**80 + 1
    M = SparseIntMatrix.from_dense([[big, 0], [0, big * 3]])
    assert elementary_divisors(M) == [big, 3 * big]


# -- complexes and the dump format -------------------------------------------


def test_dump_round_trip():
    C = staircase(3)
    D = FilteredComplex.from_dump(C.to_dump())
    assert D.q == C.q and D.d == C.d
    C.check()


def test_dump_rejects_bad_lines():
    with pytest.raises(ValueError):
        FilteredComplex.from_dump("g a h=0 q=0\nd a b 1\n")
    with pytest.raises(ValueError):
        FilteredComplex.from_dump("g a h=0 q=0\ng b h=0 q=2\nd a b 1\n")
    with pytest.raises(ValueError):
        FilteredComplex.from_dump("x y z\n")


def test_check_catches_problems():
    C = FilteredComplex.from_dump("g a h=0 q=2\ng b h=1 q=0\nd a b 1\n")
    with pytest.raises(AssertionError):
        C.check()
    C = FilteredComplex.from_dump("g a h=0 q=0\ng b h=1 q=0\ng c h=2 q=0\nd a b 1\nd b c 1\n")
    with pytest.raises(AssertionError):
        C.check()


# -- Gauss elimination ---------------------------------------------------------


def test_single_cancellation_empties():
    C = FilteredComplex.from_dump("g a h=0 q=0\ng b h=1 q=0\nd a b -1\n")
    R = gauss_reduce(C)
    assert R.rank() == 0


def test_raising_unit_is_not_cancelled():
    C = FilteredComplex.from_dump("g a h=0 q=0\ng b h=1 q=2\nd a b 1\n")
    assert gauss_reduce(C).rank() == 2


@pytest.mark.parametrize("p", [2, 3, 5])
def test_staircase_survives_reduction(p):
    C = staircase(p)
    R = gauss_reduce(C)
    assert R.q == C.q and R.d == C.d


@pytest.mark.parametrize("p", [2, 3, 5])
def test_staircase_pieces(p):
    C = staircase(p)
    for method in ("generic", "rank1"):
        assert as_dict(graded_pieces(C, 0, method=method)) == {0: "Z", -2: f"Z/{p}"}
    # over Q the free part sits on top, over F_p the torsion moves it down
    assert as_dict(graded_pieces(C, 0, QQ)) == {0: "Z"}
    assert as_dict(graded_pieces(C, 0, PrimeField(p))) == {-2: "Z"}
    other = 7 if p != 7 else 3
    assert as_dict(graded_pieces(C, 0, PrimeField(other))) == {0: "Z"}


def test_free_module_pieces():
    C = FilteredComplex.from_dump("g a h=0 q=4\ng b h=0 q=2\n")
    assert as_dict(graded_pieces(C, 0)) == {4: "Z", 2: "Z"}


def test_unknot_reduced_pieces():
    from bns.diagram import UNKNOT

    C = BNComplex(UNKNOT, reduced=True).full()
    assert C.q == {0: [0]}
    assert as_dict(graded_pieces(C, 0)) == {0: "Z"}


def test_reduce_pair_prefers_sparse_pivots():
    cols = [{0: 1, 1: 1}, {0: 1}]
    kept_s, kept_t, new = reduce_pair(cols, [0, 0], [0, 0], ZZ)
    assert kept_s == [] and kept_t == []


def random_complex(rnd: random.Random) -> FilteredComplex:
    """Small pieces in degrees 0..2, scrambled by filtered changes of basis."""
    q = {0: [], 1: [], 2: []}
    d = {0: [], 1: [], 2: []}
    for _ in range(rnd.randint(2, 6)):
        h = rnd.randint(0, 2)
        qa = rnd.choice([-2, 0, 2])
        if h < 2 and rnd.random() < 0.7:
            qb = qa + rnd.choice([0, 0, 2, 4])
            q[h].append(qa)
            d[h].append({len(q[h + 1]): rnd.choice([-1, 1, 2, 3, -4])})
            q[h + 1].append(qb)
            d[h + 1].append({})
        else:
            q[h].append(qa)
            d[h].append({})
    C = FilteredComplex(q, d)
    for _ in range(rnd.randint(0, 12)):
        h = rnd.randint(0, 2)
        n = len(q[h])
        if n < 2:
            continue
        i, j = rnd.sample(range(n), 2)
        if q[h][j] < q[h][i]:
            i, j = j, i
        c = rnd.choice([-2, -1, 1, 2])
        # new generator e_i + c e_j: add c times column j to column i of d_h ...
        col = C.d[h][i]
        for t, v in C.d[h][j].items():
            col[t] = col.get(t, 0) + c * v
        C.d[h][i] = {t: v for t, v in col.items() if v}
        # ... and subtract c times row i from row j of d_{h-1}
        if h - 1 in C.d:
            for src in C.d[h - 1]:
                if i in src:
                    src[j] = src.get(j, 0) - c * src[i]
                    if not src[j]:
                        del src[j]
    return C


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_reduction_preserves_pieces_random(seed):
    C = random_complex(random.Random(seed))
    C.check()
    R = gauss_reduce(C)
    R.check()
    for h in (0, 1, 2):
        assert as_dict(graded_pieces(R, h, method="generic")) == as_dict(graded_pieces(C, h, method="generic"))
        assert homology(R, h) == homology(C, h)
        for ring in (QQ, PrimeField(2)):
            assert as_dict(graded_pieces(R, h, ring)) == as_dict(graded_pieces(C, h, ring))


@pytest.mark.parametrize("name,D", corpus(6), ids=[n for n, _ in corpus(6)])
def test_reduction_preserves_pieces_on_knots(name, D):
    C = BNComplex(D, reduced=True).full()
    R = gauss_reduce(C)
    R.check()
    assert R.filtration_jumps() <= {0, 2, 4, 6, 8}
    a = graded_pieces(C, 0, method="generic")
    b = graded_pieces(R, 0)
    assert as_dict(a) == as_dict(b)
    assert pieces_as_dict(b) == oracle_h0_pieces(D)
    # the reduced complex has no remaining equal-q unit entries
    for h in R.degrees:
        qs, qt = R.qs(h), R.qs(h + 1)
        for i, col in enumerate(R.differential(h)):
            assert not any(abs(v) == 1 and qt[j] == qs[i] for j, v in col.items())


def test_free_ranks_sum_to_cohomology_rank():
    for _, D in corpus(6):
        C = BNComplex(D, reduced=True).reduced_levels(-2, 1)
        pieces = graded_pieces(C, 0)
        assert sum(p.rank for p in pieces) == 1


def test_homology_fields():
    # only the q-preserving entry p survives in the associated graded complex
    C = staircase(2)
    assert homology(C, 0) == {0: Group(1), -2: Group(0, (2,))}
    assert homology(C, 0, PrimeField(2)) == {0: Group(1), -2: Group(1)}
    assert homology(C, 0, QQ) == {0: Group(1)}
    assert homology(C, -1, PrimeField(2)) == {-2: Group(1)}


def test_tensor_product_differential_squares_to_zero():
    A = staircase(2)
    B = staircase(3)
    T = tensor(A, B)
    T.check()
    assert T.size(0) == 4 and T.size(-1) == 4 and T.size(-2) == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_lattice_oracle_on_staircase(p):
    assert oracle_h0_groups(staircase(p)) == {0: (1, ()), -2: (0, (p,))}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_lattice_oracle_agrees_on_random_complexes(seed):
    C = random_complex(random.Random(seed))
    for h in (0, 1, 2):
        got = {p.q: (p.rank, tuple(p.torsion)) for p in graded_pieces(C, h, method="generic") if not p.is_zero}
        assert got == oracle_h0_groups(C, h)

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from indcx.complex import boundary_matrix, complex_from_facets, independence_complex
from indcx.graphs import build
from indcx.homology import SparseIntMatrix, rank_mod_p, rational_rank, smith_normal_form
from oracles import RP2_FACETS, dense_boundary, determinantal_divisors, minors_gcd, rank_q


def snf(rows):
    return smith_normal_form(SparseIntMatrix.from_dense(rows)).divisors


def test_examples():
    assert snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == (1, 1, 1)
    assert snf([[2, 0], [0, 3]]) == (1, 6)
    assert snf([[2, 4], [6, 8]]) == (2, 4)


def test_zero_and_empty():
    assert snf([[0, 0], [0, 0]]) == ()
    assert smith_normal_form(SparseIntMatrix(0, 0, ())).divisors == ()


def test_large_entries_do_not_overflow():
    big = 2 ** 80 + 1
    assert snf([[big, 0], [0, big * 3]]) == (big, 3 * big)


def _random_matrix(rng, rows=6, cols=6, lo=-9, hi=9, density=1.0):
    return [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]


def test_determinantal_divisor_oracle_500():
    rng = random.Random(20261014)
    for trial in range(500):
        m = _random_matrix(rng, density=rng.choice([0.3, 0.6, 1.0]))
        d = smith_normal_form(SparseIntMatrix.from_dense(m)).divisors
        dd = determinantal_divisors(m)
        assert len(d) == len(dd), (trial, m)
        prod = 1
        for k, dk in enumerate(d):
            prod *= dk
            assert prod == dd[k], (trial, m)
        assert all(b % a == 0 for a, b in zip(d, d[1:]))


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.integers(1, 7), st.integers(1, 7), st.data())
def test_ranks_agree(r, c, data):
    m = [[data.draw(st.integers(-4, 4)) for _ in range(c)] for _ in range(r)]
    sm = SparseIntMatrix.from_dense(m)
    truth = rank_q(m)
    assert smith_normal_form(sm).rank == truth
    assert rational_rank(sm) == truth
    assert smith_normal_form(sm).rank <= min(r, c)


def test_rank_mod_p_sees_torsion():
    m = [[2, 0], [0, 1]]
    sm = SparseIntMatrix.from_dense(m)
    assert rank_mod_p(sm, 2) == 1 and rank_mod_p(sm, 3) == 2


def test_rp2_torsion():
    x = complex_from_facets(RP2_FACETS)
    d2 = boundary_matrix(x, 2)
    assert d2.shape == (15, 10)
    dense = dense_boundary(list(x.faces(2)), list(x.faces(1)))
    assert d2.to_dense() == dense
    # oracle: full rank 10 and D_10 = 2 force divisors (1,...,1,2)
    assert rank_q(dense) == 10
    assert minors_gcd(dense, 10) == 2
    assert smith_normal_form(d2).divisors == (1,) * 9 + (2,)


@pytest.mark.parametrize("spec", ["C6xK3", "K3xK4", "Q(3,3)", "W(4,3)", "C7xK2"])
def test_snf_rank_equals_rational_rank_on_instances(spec):
    x = independence_complex(build(spec))
    for q in range(1, x.dim + 1):
        d = boundary_matrix(x, q)
        assert smith_normal_form(d).rank == rational_rank(d)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(graphs(max_order=9))
def test_snf_rank_vs_rational_rank_random(g):
    x = independence_complex(g)
    for q in range(1, x.dim + 1):
        d = boundary_matrix(x, q)
        assert smith_normal_form(d).rank == rational_rank(d)


def test_non_unit_entries_use_general_phase():
    rng = random.Random(7)
    vals = [0, 0, 2, -2, 3, -3, 4, 6, -6, 9]
    for trial in range(200):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = [[rng.choice(vals) for _ in range(c)] for _ in range(r)]
        d = snf(m)
        dd = determinantal_divisors(m)
        prod = 1
        assert len(d) == len(dd), (trial, m)
        for k, dk in enumerate(d):
            prod *= dk
            assert prod == dd[k], (trial, m)

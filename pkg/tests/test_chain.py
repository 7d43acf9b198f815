import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import from_exact, to_exact
from spectral_chain.chain import (
    chain_report,
    classify_point,
    drazin,
    point_spectrum_region,
    rational_eigenvalues,
)
from spectral_chain.errors import IncompleteFactorization, NonSquareMatrix
from spectral_chain.linalg import ExactMatrix, matrix_power
from spectral_chain.region import Point, SpectralRegion
from spectral_chain.scalar import ExactScalar

J3 = ExactMatrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
I = ExactScalar(0, 1)


def oracle_report(m):
    return oracles.chain_dims(from_exact(m))


def test_nilpotent_jordan_chain():
    rep = chain_report(J3)
    assert (list(rep.c), list(rep.c_prime)) == oracle_report(J3)
    assert list(rep.c) == [1, 1, 1, 0]
    assert list(rep.k) == [0, 0, 1]
    assert rep.ascent == rep.descent == rep.drazin_index == 3


def test_identity_chain():
    rep = chain_report(ExactMatrix.identity(4))
    assert set(rep.c) == {0} and set(rep.c_prime) == {0}
    assert rep.ascent == rep.descent == 0


def test_diag_001_chain_uses_codimension_of_range():
    # c_0 = dim X / R(T) = 2 here; the oracle agrees
    m = ExactMatrix.diagonal([0, 0, 1])
    rep = chain_report(m)
    assert (list(rep.c), list(rep.c_prime)) == oracle_report(m) == ([2, 0, 0, 0], [2, 0, 0, 0])
    assert rep.ascent == rep.descent == 1


def test_essential_quantities_are_zero():
    rep = chain_report(J3)
    assert rep.essential_ascent == rep.essential_descent == 0


def test_non_square_rejected():
    with pytest.raises(NonSquareMatrix):
        chain_report(ExactMatrix.from_rows([[1, 2]]))


def check_drazin_axioms(m, data):
    t, d, k = from_exact(m), from_exact(data.inverse), data.index
    assert oracles.matmul(d, t) == oracles.matmul(t, d)
    assert oracles.matmul(oracles.matmul(d, t), d) == d
    assert oracles.matmul(oracles.matpow(t, k + 1), d) == oracles.matpow(t, k)


def test_drazin_invertible():
    m = ExactMatrix.from_rows([[2, 1], [1, 1]])
    data = drazin(m)
    assert data.index == 0
    assert data.inverse @ m == ExactMatrix.identity(2)
    assert data.nilpotent_part.is_zero()


def test_drazin_nilpotent():
    data = drazin(J3)
    assert data.index == 3 and data.inverse.is_zero()
    check_drazin_axioms(J3, data)


def test_drazin_block_diagonal():
    m = ExactMatrix.from_rows([[2, 0, 0], [0, 0, 1], [0, 0, 0]])
    data = drazin(m)
    assert data.index == 2
    assert data.inverse == ExactMatrix.diagonal([ExactScalar("1/2"), 0, 0])
    check_drazin_axioms(m, data)


def test_classify_examples():
    eye = ExactMatrix.identity(3)
    one = classify_point(eye, 1)
    assert one.in_spectrum and one.pole_order == 1
    zero = classify_point(eye, 0)
    assert not zero.in_spectrum and zero.pole_order == 0
    assert classify_point(J3, 0).pole_order == 3


def test_eigenvalue_examples():
    rep = rational_eigenvalues(ExactMatrix.diagonal([1, 2, 2]))
    assert rep.complete
    assert dict(rep.eigenvalues) == {ExactScalar(1): 1, ExactScalar(2): 2}
    rep = rational_eigenvalues(J3)
    assert rep.complete and dict(rep.eigenvalues) == {ExactScalar(0): 3}
    companion = ExactMatrix.from_rows([[0, 2], [1, 0]])
    rep = rational_eigenvalues(companion)
    coeffs = [(c.re, c.im) for c in rep.charpoly]
    assert oracles.brute_force_rational_roots(coeffs) == set()
    assert rep.eigenvalues == () and not rep.complete
    with pytest.raises(IncompleteFactorization):
        point_spectrum_region(companion)


def test_point_spectrum_examples():
    pts = lambda *zs: SpectralRegion.from_primitives([Point(ExactScalar.coerce(z)) for z in zs])
    assert point_spectrum_region(ExactMatrix.diagonal([0, 1])) == pts(0, 1)
    assert point_spectrum_region(J3) == pts(0)
    assert point_spectrum_region(ExactMatrix.diagonal([0, 1, I, -I])) == pts(0, 1, I, -I)


seeds = st.integers(0, 10**6)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 6))
def test_chain_report_matches_rank_oracle(seed, n):
    rng = random.Random(seed)
    m = to_exact(oracles.conjugated_jordan(rng, oracles.random_jordan_blocks(rng, n)))
    rep = chain_report(m)
    c, cp = oracles.chain_dims(from_exact(m))
    assert list(rep.c) == c and list(rep.c_prime) == cp
    for j in range(n):
        assert rep.k[j] == c[j] - c[j + 1] == cp[j] - cp[j + 1]
    assert all(a >= b for a, b in zip(c, c[1:]))


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 6))
def test_drazin_axioms_random(seed, n):
    rng = random.Random(seed)
    m = to_exact(oracles.conjugated_jordan(rng, oracles.random_jordan_blocks(rng, n)))
    data = drazin(m)
    check_drazin_axioms(m, data)
    assert data.core_part + data.nilpotent_part == m
    assert matrix_power(data.nilpotent_part, data.index).is_zero() or data.index == 0


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 6))
def test_pole_order_is_largest_block(seed, n):
    rng = random.Random(seed)
    blocks = oracles.random_jordan_blocks(rng, n)
    m = to_exact(oracles.conjugated_jordan(rng, blocks))
    for lam, size in oracles.largest_blocks(blocks).items():
        pc = classify_point(m, ExactScalar(*lam))
        assert pc.in_spectrum and pc.pole_order == size

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import from_exact, to_exact
from spectral_chain.errors import DimensionMismatch, InvalidInput, NonSquareMatrix
from spectral_chain.linalg import (
    ExactMatrix,
    Subspace,
    charpoly,
    determinant,
    inverse,
    kernel,
    matrix_power,
    range_space,
    rank,
    subspace_intersect,
    subspace_sum,
)
from spectral_chain.scalar import ExactScalar


def random_matrix(seed, rows, cols, zero_bias=0.3):
    rng = random.Random(seed)
    return [
        [oracles.ZERO if rng.random() < zero_bias else oracles.random_gaussian(rng) for _ in range(cols)]
        for _ in range(rows)
    ]


seeds = st.integers(0, 10**6)
dims = st.integers(1, 6)


@settings(max_examples=60, deadline=None)
@given(seeds, dims, dims)
def test_rank_matches_oracle(seed, r, c):
    mat = random_matrix(seed, r, c)
    assert rank(to_exact(mat)) == oracles.rank(mat)


@settings(max_examples=60, deadline=None)
@given(seeds, dims, dims, dims)
def test_matmul_matches_oracle(seed, a, b, c):
    x, y = random_matrix(seed, a, b), random_matrix(seed + 1, b, c)
    assert from_exact(to_exact(x) @ to_exact(y)) == oracles.matmul(x, y)


@settings(max_examples=40, deadline=None)
@given(seeds, dims, dims)
def test_rank_nullity(seed, r, c):
    m = to_exact(random_matrix(seed, r, c))
    assert kernel(m).dim + range_space(m).dim == c
    assert range_space(m).dim == rank(m)


@settings(max_examples=40, deadline=None)
@given(seeds, dims, dims)
def test_kernel_vectors_are_annihilated(seed, r, c):
    m = to_exact(random_matrix(seed, r, c))
    for v in kernel(m).basis:
        col = ExactMatrix(c, 1, list(v))
        assert (m @ col).is_zero()


@settings(max_examples=40, deadline=None)
@given(seeds, dims)
def test_range_contains_columns(seed, n):
    m = to_exact(random_matrix(seed, n, n))
    r = range_space(m)
    for j in range(n):
        assert r.contains([m[i, j] for i in range(n)])


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5))
def test_subspace_lattice_dimension_formula(seed, n):
    rng = random.Random(seed)
    a = Subspace.span(n, [[ExactScalar(*oracles.random_gaussian(rng)) for _ in range(n)] for _ in range(rng.randint(0, n))])
    b = Subspace.span(n, [[ExactScalar(*oracles.random_gaussian(rng)) for _ in range(n)] for _ in range(rng.randint(0, n))])
    s, i = subspace_sum(a, b), subspace_intersect(a, b)
    assert s.dim + i.dim == a.dim + b.dim
    for v in i.basis:
        assert a.contains(v) and b.contains(v)


def test_canonical_subspace_equality():
    a = Subspace.span(2, [[1, 1]])
    b = Subspace.span(2, [[ExactScalar(0, 2), ExactScalar(0, 2)]])
    assert a == b and hash(a) == hash(b)


@settings(max_examples=40, deadline=None)
@given(seeds, dims)
def test_inverse_matches_oracle(seed, n):
    rng = random.Random(seed)
    p, pinv = oracles.random_unimodular(rng, n)
    assert from_exact(inverse(to_exact(p))) == pinv


def test_singular_inverse_raises():
    with pytest.raises(Exception):
        inverse(ExactMatrix.from_rows([[1, 2], [2, 4]]))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5))
def test_charpoly_roots_match_brute_force(seed, n):
    rng = random.Random(seed)
    blocks = oracles.random_jordan_blocks(rng, n)
    m = to_exact(oracles.conjugated_jordan(rng, blocks))
    coeffs = [(c.re, c.im) for c in charpoly(m)]
    assert oracles.brute_force_rational_roots(coeffs) == {lam for lam, _ in blocks}


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5))
def test_determinant_is_product_of_eigenvalues(seed, n):
    rng = random.Random(seed)
    blocks = oracles.random_jordan_blocks(rng, n)
    m = to_exact(oracles.conjugated_jordan(rng, blocks))
    prod = oracles.ONE
    for lam, size in blocks:
        for _ in range(size):
            prod = oracles.gmul(prod, lam)
    d = determinant(m)
    assert (d.re, d.im) == prod


def test_matrix_power_zero_is_identity():
    m = ExactMatrix.from_rows([[1, 2], [3, 4]])
    assert matrix_power(m, 0) == ExactMatrix.identity(2)
    assert matrix_power(m, 3) == m @ m @ m


def test_json_round_trip_and_nested_layout():
    m = ExactMatrix.from_rows([[ExactScalar(Fraction(1, 2), 1), 0], [0, 3]])
    assert ExactMatrix.from_json(m.to_json()) == m
    nested = {"rows": 2, "cols": 2, "entries": [[["1/2", "1"], ["0", "0"]], [["0", "0"], ["3", "0"]]]}
    assert ExactMatrix.from_json(nested) == m


def test_errors():
    with pytest.raises(InvalidInput):
        ExactMatrix.from_json({"rows": 2, "cols": 2, "entries": [["1", "0"]]})
    with pytest.raises(DimensionMismatch):
        ExactMatrix.from_rows([[1, 2]]) @ ExactMatrix.from_rows([[1, 2]])
    with pytest.raises(NonSquareMatrix):
        charpoly(ExactMatrix.from_rows([[1, 2]]))

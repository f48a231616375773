import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leibcoh.errors import ChainMapError, LinAlgError
from leibcoh.fields import QQ, PrimeField
from leibcoh.linalg import (
    Eliminated,
    QuotientSpace,
    SparseMatrix,
    Subspace,
    dense_rank,
    image_basis,
    induced_map,
    kernel_basis,
    preimage,
    rank,
)

F3 = PrimeField(3)
F5 = PrimeField(5)


def random_matrix(rng, field, rows, cols, density=0.5, bound=3):
    cols_data = []
    for _ in range(cols):
        col = {}
        for r in range(rows):
            if rng.random() < density:
                col[r] = field.from_int(rng.randint(-bound, bound))
        cols_data.append(col)
    return SparseMatrix.from_columns(field, rows, cols_data)


def random_subspace(rng, field, ambient, gens):
    cols = []
    for _ in range(gens):
        cols.append({i: field.from_int(rng.randint(-2, 2)) for i in range(ambient)})
    return Subspace.from_columns(field, ambient, cols)


def test_rank_identity_and_zero():
    assert rank(SparseMatrix.identity(QQ, 3)) == 3
    assert rank(SparseMatrix.zero(QQ, 4, 7)) == 0


def test_kernel_identity_and_zero():
    assert kernel_basis(SparseMatrix.identity(F5, 4)).dim == 0
    k = kernel_basis(SparseMatrix.zero(F5, 3, 6))
    assert k.dim == 6 and k == Subspace.full(F5, 6)


def test_image_identity_and_duplicate_columns():
    assert image_basis(SparseMatrix.identity(QQ, 3)) == Subspace.full(QQ, 3)
    m = SparseMatrix.from_dense(QQ, [[1, 1, 2], [0, 0, 1]])
    assert image_basis(m).dim == 2


def test_rank_nullity_and_multiply_back_random():
    rng = random.Random(20240901)
    for _ in range(60):
        field = QQ if rng.random() < 0.5 else F3
        rows, cols = rng.randint(1, 9), rng.randint(1, 9)
        m = random_matrix(rng, field, rows, cols)
        r = rank(m)
        k = kernel_basis(m)
        assert r + k.dim == cols
        for v in k.basis_columns():
            assert m.matvec(v) == {}
        assert image_basis(m).dim == r


def test_sparse_vs_dense_rank_small_random():
    rng = random.Random(7)
    for _ in range(40):
        field = QQ if rng.random() < 0.5 else F5
        m = random_matrix(rng, field, rng.randint(1, 12), rng.randint(1, 12))
        assert rank(m) == dense_rank(m)


def test_sparse_vs_dense_rank_200x200():
    rng = random.Random(11)
    m = random_matrix(rng, F5, 200, 200, density=0.03)
    assert rank(m) == dense_rank(m)


def test_sparse_vs_dense_rank_rationals_midsize():
    rng = random.Random(13)
    m = random_matrix(rng, QQ, 80, 60, density=0.08)
    assert rank(m) == dense_rank(m)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(2, 6), st.integers(2, 6))
def test_rank_nullity_hypothesis(seed, rows, cols):
    rng = random.Random(seed)
    m = random_matrix(rng, F3, rows, cols, density=0.6)
    assert rank(m) + kernel_basis(m).dim == cols


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_modular_law_hypothesis(seed):
    rng = random.Random(seed)
    field = QQ if seed % 2 else F5
    amb = rng.randint(1, 6)
    a = random_subspace(rng, field, amb, rng.randint(0, amb))
    b = random_subspace(rng, field, amb, rng.randint(0, amb))
    s, x = a.sum(b), a.intersection(b)
    assert a.dim + b.dim == s.dim + x.dim
    assert a.contains(x) and b.contains(x)
    assert s.contains(a) and s.contains(b)


def test_subspace_idempotence_and_zero():
    rng = random.Random(3)
    a = random_subspace(rng, QQ, 5, 3)
    z = Subspace.zero(QQ, 5)
    assert a.intersection(a) == a
    assert a.sum(a) == a
    assert a.intersection(z) == z
    assert a.sum(z) == a


def test_subspace_equality_is_canonical():
    # same space from different spanning sets
    a = Subspace.from_columns(QQ, 3, [{0: 1, 1: 2}, {1: 1, 2: 1}])
    b = Subspace.from_columns(QQ, 3, [{0: 2, 1: 5, 2: 1}, {0: -1, 1: -1, 2: 1}])
    assert a == b
    assert hash(a) == hash(b)


def test_quotient_dim_rejects_non_subspace():
    a = Subspace.from_columns(QQ, 3, [{0: 1}])
    b = Subspace.from_columns(QQ, 3, [{1: 1}])
    with pytest.raises(LinAlgError):
        a.quotient_dim(b)
    assert a.sum(b).quotient_dim(a) == 1


def test_preimage_trivial_cases():
    rng = random.Random(5)
    m = random_matrix(rng, QQ, 4, 6)
    assert preimage(m, Subspace.full(QQ, 4)) == Subspace.full(QQ, 6)
    assert preimage(m, Subspace.zero(QQ, 4)) == kernel_basis(m)


def test_preimage_membership_oracle():
    rng = random.Random(17)
    for _ in range(20):
        m = random_matrix(rng, F5, 5, 7)
        w = random_subspace(rng, F5, 5, 2)
        pre = preimage(m, w)
        assert pre.contains(kernel_basis(m))
        for v in pre.basis_columns():
            assert w.contains_vector(m.matvec(v))


def test_scalar_canonical_forms():
    rng = random.Random(23)
    m = random_matrix(rng, QQ, 6, 6)
    k = kernel_basis(m)
    for col in k.mat.columns:
        for _, v in col:
            assert v.denominator > 0
            from math import gcd

            assert gcd(int(v.numerator), int(v.denominator)) == 1
    m5 = random_matrix(rng, F5, 6, 6)
    sub = image_basis(m5)
    for col in sub.mat.columns:
        for _, v in col:
            assert 0 <= v < 5


def test_induced_map_identity_and_zero():
    s = Subspace.full(QQ, 3)
    q = Subspace.from_columns(QQ, 3, [{0: 1, 1: 1}])
    pair = QuotientSpace(s, q)
    ident = induced_map(SparseMatrix.identity(QQ, 3), pair, pair)
    assert rank(ident) == pair.dim == 2
    # map sending everything into the denominator induces zero
    tozero = SparseMatrix.from_columns(QQ, 3, [{0: 1, 1: 1}, {0: 2, 1: 2}, {}])
    z = induced_map(tozero, pair, pair)
    assert z.is_zero()


def test_induced_map_rejects_chain_violation():
    s1 = Subspace.from_columns(QQ, 3, [{0: 1}])
    q1 = Subspace.zero(QQ, 3)
    s2 = Subspace.from_columns(QQ, 3, [{1: 1}])
    q2 = Subspace.zero(QQ, 3)
    bad = SparseMatrix.identity(QQ, 3)  # does not map span{e0} into span{e1}
    with pytest.raises(ChainMapError):
        induced_map(bad, QuotientSpace(s1, q1), QuotientSpace(s2, q2))


def test_solve_round_trip():
    rng = random.Random(29)
    for _ in range(20):
        field = QQ if rng.random() < 0.5 else F3
        m = random_matrix(rng, field, 5, 4)
        elim = Eliminated(m, history=True)
        x = {j: field.from_int(rng.randint(-2, 2)) for j in range(4)}
        v = m.matvec(x)
        sol = elim.solve(v)
        assert sol is not None
        assert m.matvec(sol) == v

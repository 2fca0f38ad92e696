import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablecat.linalg import Field, Subspace

PRIMES = st.sampled_from([2, 3, 5, 101])


@st.composite
def matrices(draw, max_dim=6):
    p = draw(PRIMES)
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    return Field(p), np.array(entries, dtype=np.int64).reshape(rows, cols)


@given(matrices())
def test_rank_plus_nullity(data):
    fld, a = data
    assert fld.rank(a) + fld.kernel_basis(a).dim == a.shape[1]


@given(matrices())
def test_rref_is_idempotent_and_row_equivalent(data):
    fld, a = data
    r, pivots, rank = fld.rref(a)
    assert np.array_equal(fld.rref(r)[0], r)
    if a.shape[0]:
        # same row space
        assert fld.span(a, a.shape[1]) == fld.span(r[:rank], a.shape[1])


@given(matrices(), st.data())
def test_solve_affine_on_consistent_systems(data, draw):
    fld, a = data
    x0 = np.array(draw.draw(st.lists(st.integers(0, fld.p - 1), min_size=a.shape[1], max_size=a.shape[1])))
    b = (a @ x0) % fld.p
    x, ker = fld.solve_affine(a, b)
    assert not np.any((a @ x - b) % fld.p)
    assert not np.any((a @ ker.basis.T) % fld.p)


def test_solve_affine_reports_inconsistency():
    fld = Field(5)
    assert fld.solve_affine(np.array([[1, 1], [2, 2]]), [1, 3]) is None


def test_kernel_matches_brute_force_over_f2():
    fld = Field(2)
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = rng.integers(0, 2, size=(rng.integers(1, 4), rng.integers(1, 5)))
        ker = fld.kernel_basis(a)
        brute = {v for v in itertools.product((0, 1), repeat=a.shape[1]) if not np.any((a @ np.array(v)) % 2)}
        assert len(brute) == 2 ** ker.dim
        assert all(np.array(v) in ker for v in brute)


def test_field_rejects_composite_modulus():
    with pytest.raises(ValueError):
        Field(6)


@given(PRIMES, st.integers(1, 10 ** 6))
def test_inverse(p, a):
    fld = Field(p)
    if a % p:
        assert (fld.inv(a) * a) % p == 1


@settings(max_examples=50)
@given(matrices(max_dim=5))
def test_extend_to_basis_completes_column_space(data):
    fld, a = data
    cols = fld.column_basis(a.T) if a.shape[0] else np.zeros((a.shape[1], 0), dtype=np.int64)
    ext = fld.extend_to_basis(cols, a.shape[1])
    assert fld.rank(np.concatenate([cols, ext], axis=1)) == a.shape[1]


def test_subspace_membership_and_equality():
    fld = Field(3)
    s = fld.span([[1, 2, 0], [0, 0, 1]])
    assert [2, 1, 0] in s
    assert [1, 0, 0] not in s
    assert s == fld.span([[1, 2, 1], [0, 0, 2]])
    assert Subspace.zero(fld, 3).dim == 0
    assert Subspace.full(fld, 3).dim == 3

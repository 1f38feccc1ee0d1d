import numpy as np
import numpy.testing as nptest
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import holdscan as hs
from holdscan.errors import (
    AllZeroMatrix,
    DimensionMismatch,
    DuplicateLabel,
    InactiveSupport,
    NegativeEntry,
    NotNormalized,
)

from conftest import random_active

positive_matrices = arrays(
    np.float64,
    st.tuples(st.integers(1, 6), st.integers(1, 6)),
    elements=st.floats(0.01, 1.0, allow_nan=False),
)


def test_normalize_golden(golden):
    nptest.assert_allclose(
        golden.entries, [[0.30, 0.10], [0.05, 0.25], [0.15, 0.15]], rtol=0, atol=1e-15
    )


def test_normalize_single_cell():
    assert hs.normalize([[1.0]]).entries[0, 0] == 1.0


def test_normalize_uniform():
    nptest.assert_array_equal(hs.normalize([[2, 2], [2, 2]]).entries, np.full((2, 2), 0.25))


def test_normalize_rejects_all_zero():
    with pytest.raises(AllZeroMatrix):
        hs.normalize([[0.0, 0.0]])


def test_normalize_rejects_negative():
    with pytest.raises(NegativeEntry):
        hs.normalize([[1.0, -0.5]])


def test_normalize_rejects_label_mismatch():
    with pytest.raises(DimensionMismatch):
        hs.normalize([[1.0, 1.0]], investor_labels=["a", "b"])


def test_duplicate_labels_rejected():
    with pytest.raises(DuplicateLabel):
        hs.normalize([[1.0], [1.0]], investor_labels=["x", "x"])


def test_matrix_requires_unit_mass():
    with pytest.raises(NotNormalized):
        hs.OwnershipMatrix(np.array([[0.5, 0.6]]))


def test_marginals_golden(golden):
    marg = hs.marginals(golden)
    nptest.assert_allclose(marg.p, [0.40, 0.30, 0.30], rtol=0, atol=1e-15)
    nptest.assert_allclose(marg.s, [0.50, 0.50], rtol=0, atol=1e-15)


@pytest.mark.parametrize(
    "entries",
    [np.diag([0.5, 0.5]), np.full((2, 2), 0.25)],
)
def test_marginals_symmetric_cases(entries):
    marg = hs.marginals(hs.OwnershipMatrix(entries))
    nptest.assert_array_equal(marg.p, [0.5, 0.5])
    nptest.assert_array_equal(marg.s, [0.5, 0.5])


def test_profiles_golden(golden):
    prof = hs.profiles(golden)
    nptest.assert_allclose(prof.row_profiles[0], [0.75, 0.25], atol=1e-15)
    nptest.assert_allclose(prof.row_profiles[1], [1 / 6, 5 / 6], atol=1e-15)
    nptest.assert_allclose(prof.row_profiles[2], [0.5, 0.5], atol=1e-15)
    # owner shares of the first stock: divide the column by its mass 0.5
    nptest.assert_allclose(prof.col_profiles[:, 0], [0.6, 0.1, 0.3], atol=1e-15)


def test_profiles_of_product_benchmark_repeat_the_market():
    p = np.array([0.5, 0.3, 0.2])
    s = np.array([0.6, 0.4])
    prof = hs.profiles(hs.OwnershipMatrix(np.outer(p, s)))
    for row in prof.row_profiles:
        nptest.assert_allclose(row, s, atol=1e-15)


def test_profiles_reject_inactive():
    matrix = hs.OwnershipMatrix(np.array([[0.5, 0.5], [0.0, 0.0]]))
    with pytest.raises(InactiveSupport):
        hs.profiles(matrix)


def test_restrict_active_drops_zero_row():
    matrix = hs.OwnershipMatrix(
        np.array([[0.5, 0.2], [0.0, 0.0], [0.1, 0.2]]), ["a", "b", "c"]
    )
    active = hs.restrict_active(matrix)
    assert active.investor_labels == ("a", "c")
    nptest.assert_array_equal(active.entries, [[0.5, 0.2], [0.1, 0.2]])


def test_restrict_active_noop_on_active(golden):
    assert hs.restrict_active(golden) is golden


def test_restrict_active_drops_row_and_column():
    matrix = hs.OwnershipMatrix(np.array([[0.5, 0.0, 0.5], [0.0, 0.0, 0.0]]))
    active = hs.restrict_active(matrix)
    assert active.shape == (1, 2)
    nptest.assert_array_equal(active.entries, [[0.5, 0.5]])
    assert abs(active.entries.sum() - 1.0) <= hs.TOL_NORM


@given(positive_matrices)
@settings(max_examples=60)
def test_normalize_idempotent(raw):
    first = hs.normalize(raw)
    again = hs.normalize(first.entries)
    nptest.assert_allclose(again.entries, first.entries, rtol=0, atol=hs.TOL_NORM)


@given(positive_matrices, st.floats(0.001, 1e6))
@settings(max_examples=60)
def test_normalize_scale_invariant(raw, scale):
    base = hs.normalize(raw)
    scaled = hs.normalize(raw * scale)
    nptest.assert_allclose(scaled.entries, base.entries, rtol=0, atol=1e-12)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40)
def test_profile_reconstruction(seed):
    rng = np.random.default_rng(seed)
    matrix = random_active(rng, int(rng.integers(1, 8)), int(rng.integers(1, 8)))
    marg = hs.marginals(matrix)
    prof = hs.profiles(matrix)
    nptest.assert_allclose(
        marg.p[:, None] * prof.row_profiles, matrix.entries, rtol=0, atol=1e-12
    )
    nptest.assert_allclose(
        marg.s[None, :] * prof.col_profiles, matrix.entries, rtol=0, atol=1e-12
    )


def test_label_lookup(golden):
    assert golden.investor_index("inv2") == 1
    assert golden.stock_index("stk2") == 1
    with pytest.raises(hs.errors.LabelNotFound):
        golden.investor_index("nobody")


def test_entries_are_read_only(golden):
    with pytest.raises(ValueError):
        golden.entries[0, 0] = 0.5

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gorenstein_lab.linalg import GF, QQ, field_from_spec


def matrices(p, max_side=6):
    return st.tuples(st.integers(0, max_side), st.integers(0, max_side), st.integers(0, 2**32 - 1)).map(
        lambda t: np.random.default_rng(t[2]).integers(0, p, size=(t[0], t[1]), dtype=np.int64))


@given(matrices(5))
def test_kernel_is_annihilated_and_has_right_dimension(m):
    F = GF(5)
    k = F.kernel(m)
    assert k.shape == (m.shape[1], m.shape[1] - F.rank(m))
    if m.size and k.size:
        assert F.is_zero(F.matmul(m, k))


@given(matrices(3))
def test_rref_is_idempotent_and_preserves_rowspace(m):
    F = GF(3)
    if m.shape[0] == 0:
        return
    r, piv = F.rref(m)
    r2, piv2 = F.rref(r)
    assert piv == piv2 and F.equal(r, r2)
    assert F.rank(np.concatenate([m, r])) == len(piv)


@given(matrices(7), st.integers(0, 2**32 - 1))
def test_solve_recovers_consistent_systems(m, seed):
    F = GF(7)
    if m.shape[1] == 0:
        return
    x = F.random((m.shape[1], 2), np.random.default_rng(seed))
    b = F.matmul(m, x)
    sol = F.solve(m, b)
    assert sol is not None and F.equal(F.matmul(m, sol), b)


def test_solve_reports_inconsistency():
    F = GF(2)
    assert F.solve(F.array([[1, 1], [1, 1]]), F.array([[0], [1]])) is None


def test_inverse_over_rationals():
    m = QQ.array([[2, 1], [1, 1]])
    inv = QQ.inverse(m)
    assert QQ.equal(QQ.matmul(m, inv), QQ.eye(2))
    assert QQ.inverse(QQ.array([[1, 2], [2, 4]])) is None


def test_rational_rank_needs_exact_arithmetic():
    m = QQ.array([[Fraction(1, 3), Fraction(1, 6)], [2, 1]])
    assert QQ.rank(m) == 1


def test_prime_field_scalars_and_json():
    F = GF(3)
    assert F.scalar("1/2") == 2
    assert F.array([[4, -1]]).tolist() == [[1, 2]]
    assert QQ.to_json(QQ.array([Fraction(1, 2), 3])) == ["1/2", 3]


def test_field_specs():
    assert field_from_spec({"Fp": 5}) == GF(5)
    assert field_from_spec("Q") == QQ
    with pytest.raises(ValueError):
        field_from_spec({"Fp": 6})
    with pytest.raises(ValueError):
        GF(2**31 + 11)

import json

import numpy as np
import pytest

from gorenstein_lab.algebra import (
    Algebra,
    AlgebraError,
    dump_algebra,
    find_algebra_isomorphism,
    is_algebra_map,
    load_algebra,
    preset,
    quotient_algebra,
    short_local,
    truncated_polynomial,
    two_sided_ideal,
)
from gorenstein_lab.linalg import GF, QQ

from conftest import PRESET_NAMES, algebra

# (dim, simples, Loewy length, self-injective, Hilbert type or None)
EXPECTED = {
    "k": (1, 1, 1, True, (0, 0)),
    "kx2": (2, 1, 2, True, (1, 0)),
    "kx3": (3, 1, 3, True, (1, 1)),
    "rad2": (3, 1, 2, False, (2, 0)),
    "comm2": (4, 1, 3, True, (2, 1)),
    "a2": (3, 2, 2, False, None),
}


@pytest.mark.parametrize("name", PRESET_NAMES)
@pytest.mark.parametrize("field", ["F2", "F3", "Q"])
def test_preset_invariants(name, field):
    alg = algebra(name, field)
    alg.verify()
    dim, r, ll, selfinj, ht = EXPECTED[name]
    assert (alg.dim, alg.r, alg.loewy_length) == (dim, r, ll)
    assert alg.is_self_injective == selfinj
    got = alg.hilbert_type
    assert (None if got is None else (got.e, got.a)) == ht
    assert alg.is_connected


def test_opposite_is_an_involution(any_preset):
    op = any_preset.opposite()
    assert op.opposite() is any_preset
    assert op.is_opposite and not any_preset.is_opposite
    op.verify()


def test_a2_opposite_swaps_the_arrow():
    a2 = algebra("a2")
    # alpha = e2 alpha e1 in A, so alpha = e1 alpha e2 in the opposite
    assert a2.block(1, 0).shape[0] == 1 and a2.block(0, 1).shape[0] == 0
    assert a2.opposite().block(0, 1).shape[0] == 1


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_json_round_trip(name):
    alg = algebra(name)
    data = json.loads(json.dumps(dump_algebra(alg, inline=True)))
    back = load_algebra(data)
    assert np.array_equal(back.mul, alg.mul)
    assert load_algebra(dump_algebra(alg)).dim == alg.dim  # by preset name


def test_associativity_violation_is_rejected():
    F = GF(2)
    mul = np.zeros((2, 2, 2), dtype=int)
    mul[0, 0, 0] = mul[0, 1, 1] = mul[1, 0, 1] = 1
    mul[1, 1, 0] = 1  # x^2 = 1 with x nilpotent declared
    with pytest.raises(AlgebraError) as err:
        Algebra(F, mul, [1, 0], [[1, 0]], [[0, 1]])
    assert err.value.invariant in ("radical", "associativity")


def test_bad_unit_and_missing_keys():
    with pytest.raises(AlgebraError, match="unit"):
        Algebra(GF(2), [[[1]]], [0], [[1]], np.zeros((0, 1), dtype=int))
    with pytest.raises(AlgebraError, match="missing key"):
        load_algebra({"dim": 1})


def test_non_split_radical_declaration_is_rejected():
    # k[x]/(x^2) with an empty radical declared: dim A/J = 2 but one idempotent
    with pytest.raises(AlgebraError, match="split basic"):
        Algebra(GF(2), truncated_polynomial(2).mul, [1, 0], [[1, 0]], np.zeros((0, 2), dtype=int))


def test_quotient_algebra_kx3_by_x2():
    kx3 = algebra("kx3")
    ideal = two_sided_ideal(kx3, [[0, 0, 1]])
    quo, proj = quotient_algebra(kx3, ideal)
    assert quo.dim == 2 and quo.loewy_length == 2
    assert is_algebra_map(kx3, quo, proj)


def test_quotient_of_a2_by_corner_is_k():
    a2 = algebra("a2")
    ideal = two_sided_ideal(a2, a2.idempotents[1:2])
    assert ideal.shape[0] == 2  # A e2 A = span(e2, alpha)
    quo, proj = quotient_algebra(a2, ideal)
    assert quo.dim == 1 and quo.r == 1


@pytest.mark.parametrize("name", ["kx3", "rad2", "comm2", "a2"])
def test_isomorphism_search_finds_the_identity_class(name):
    alg = algebra(name)
    theta = find_algebra_isomorphism(alg, alg)
    assert theta is not None and is_algebra_map(alg, alg, theta)


def test_isomorphism_search_rejects_non_isomorphic():
    assert find_algebra_isomorphism(algebra("kx3"), algebra("rad2")) is None


def test_a2_is_isomorphic_to_its_opposite():
    a2 = algebra("a2")
    op = a2.opposite()
    theta = find_algebra_isomorphism(a2, op)
    assert theta is not None and is_algebra_map(a2, op, theta)


def test_short_local_hilbert_type():
    coeffs = np.zeros((2, 2, 1), dtype=int)
    coeffs[0, 1, 0] = coeffs[1, 0, 0] = 1
    alg = short_local(2, 1, coeffs, GF(3))
    assert (alg.hilbert_type.e, alg.hilbert_type.a) == (2, 1)
    degenerate = short_local(2, 1, np.zeros((2, 2, 1), dtype=int), GF(3))
    assert degenerate.hilbert_type.a == 0


def test_preset_over_rationals():
    alg = preset("comm2", QQ)
    assert alg.field == QQ and alg.is_self_injective


def test_unknown_preset():
    with pytest.raises(ValueError, match="unknown algebra preset"):
        preset("nope")

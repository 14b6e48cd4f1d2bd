import pytest
from hypothesis import given
from hypothesis import strategies as st

from gorenstein_lab import gorenstein as G
from gorenstein_lab.complexes import ComplexError, phi, syzygy
from gorenstein_lab.explorer import enumerate_modules
from gorenstein_lab.modrep import (
    ModuleError,
    direct_sum,
    is_isomorphic,
    projective,
    radical_of,
    regular_module,
    simple,
    zero_module,
)

from conftest import PRESET_NAMES, algebra, modules


# -- predicates -----------------------------------------------------------


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_projectives_are_sgp_and_gp(name):
    alg = algebra(name)
    for i in range(alg.r):
        p = projective(alg, i)
        assert G.is_sgp(p, 6) and G.is_gp(p, 6)
        assert G.is_reflexive(p)
        assert G.is_inf_torsionfree(p, 6)


def test_sgp_examples():
    assert G.is_sgp(simple(algebra("kx3"), 0), 10).holds
    v = G.is_sgp(simple(algebra("rad2"), 0), 4)
    assert v.status == G.FAILS and v.witness == {"degree": 1, "dim": 3}
    assert v.bound == 4
    with pytest.raises(ValueError):
        G.is_sgp(simple(algebra("kx3"), 0), 0)


@given(modules(), st.integers(1, 4))
def test_bound_monotonicity(m, extra):
    v = G.is_sgp(m, 2)
    if not v:
        w = G.is_sgp(m, 2 + extra)
        assert not w and w.witness == v.witness


@given(modules())
def test_gp_is_stable_under_adding_projectives(m):
    s = direct_sum([m, projective(m.algebra, 0)])[0]
    assert G.is_gp(s, 4).status == G.is_gp(m, 4).status


def test_torsionless_and_reflexive():
    s = simple(algebra("rad2"), 0)
    assert G.is_torsionless(s) and not G.is_reflexive(s)
    assert G.is_reflexive(zero_module(algebra("rad2")))
    assert not G.is_gp(s, 4)


def test_infinitely_torsionfree_examples():
    assert G.is_inf_torsionfree(simple(algebra("kx3"), 0), 10)
    right_simple = simple(algebra("rad2").opposite(), 0)
    assert not G.is_inf_torsionfree(right_simple, 4)


def test_every_small_module_over_kx3_is_gp():
    for m in enumerate_modules(algebra("kx3"), 3):
        assert G.is_gp(m, 8), m
        assert phi(m).is_iso


def test_nunke_examples():
    assert G.nunke_check(zero_module(algebra("kx2")), 4)
    assert not G.nunke_check(projective(algebra("kx2"), 0), 4)


# -- the main complex -----------------------------------------------------


def test_main_complex_rejects_non_reduced():
    with pytest.raises(G.NotReduced, match="not reduced"):
        G.build_main_complex(regular_module(algebra("kx2")), 3)


def test_main_complex_rejects_non_sgp():
    with pytest.raises(G.PreconditionFailed, match="sGp test failed") as err:
        G.build_main_complex(simple(algebra("rad2"), 0), 3)
    assert err.value.verdict.witness == {"degree": 1, "dim": 3}


def test_main_complex_of_simple_over_kx3():
    rep = G.build_main_complex(simple(algebra("kx3"), 0), 6)
    assert (rep.complex.lo, rep.complex.hi) == (-7, 7)
    assert all(d == 0 for d in rep.homology.values())
    assert all(v for v in rep.checks.values())
    assert "Ker=0" in rep.diagram() and "Cok=0" in rep.diagram()


def test_complex_to_module_round_trip_and_shift():
    s = simple(algebra("kx3"), 0)
    rep = G.build_main_complex(s, 4)
    m, info = G.complex_to_module(rep.complex)
    assert is_isomorphic(m, s) and info["sgp_M"]["status"] == G.HOLDS
    shifted, _ = G.complex_to_module(rep.complex.shift(1))
    assert is_isomorphic(shifted, syzygy(s, 1))


def test_complex_to_module_rejects_interior_homology():
    rep = G.build_main_complex(simple(algebra("kx3"), 0), 4)
    broken = rep.complex.with_differential(3, rep.complex.differentials[3].zeroed())
    with pytest.raises(ComplexError, match="interior homology"):
        G.complex_to_module(broken)


def test_main_complex_isomorphism_of_isomorphic_inputs():
    s = simple(algebra("comm2"), 0)
    r1 = G.build_main_complex(s, 2)
    m, _ = G.complex_to_module(r1.complex)
    r2 = G.build_main_complex(m, 2)
    alpha = is_isomorphic(s, m).hom
    assert G.main_complex_isomorphism(r1, r2, alpha)


# -- four-term exactness criterion ----------------------------------------


def _window(c, at):
    return c.differentials[at - 1], c.differentials[at], c.differentials[at + 1]


def test_exactness_criterion_on_complete_resolution():
    c = G.build_main_complex(simple(algebra("kx3"), 0), 3).complex
    for at in range(c.lo + 2, c.hi):
        rep = G.check_exactness_criterion(*_window(c, at))
        assert rep.exact and rep.zeta_exists and rep.triangles


def test_exactness_criterion_on_zero_differentials():
    c = G.build_main_complex(simple(algebra("kx3"), 0), 3).complex
    d_m1, d0, d1 = _window(c, 0)
    rep = G.check_exactness_criterion(d_m1.zeroed(), d0.zeroed(), d1.zeroed())
    assert rep.exact is False and rep.zeta_exists is False


def test_exactness_criterion_on_dualized_resolution_over_rad2():
    res = simple(algebra("rad2"), 0).resolution
    # Q_1 = P_0^*, Q_0 = P_1^*, Q_-1 = P_2^*, Q_-2 = P_3^*: not exact at P_1^*
    d1, d0, d_m1 = (res.differential(i).dual() for i in (1, 2, 3))
    rep = G.check_exactness_criterion(d_m1, d0, d1)
    assert rep.exact is False and rep.zeta_exists is False


# -- transpose bijection and section 3 ---------------------------------------


def test_tr_bijection_examples():
    rep = G.check_tr_bijection(simple(algebra("kx3"), 0), 6)
    assert rep["holds"]
    with pytest.raises(G.NotReduced):
        G.check_tr_bijection(projective(algebra("kx3"), 0), 4)
    for m in enumerate_modules(algebra("comm2"), 3):
        red = G.reduce(m).reduced
        if red.dim:
            assert G.check_tr_bijection(red, 4)["holds"]


def test_epi_mono_shift_examples():
    for m in enumerate_modules(algebra("comm2"), 3):
        rep = G.check_epi_mono_shift(m, 3)
        assert rep["holds"] and rep["part1"]["lhs"] and rep["part1"]["rhs"]
    p = projective(algebra("a2"), 0)
    assert G.check_epi_mono_shift(p, 3)["holds"]
    with pytest.raises(G.PreconditionFailed):
        G.check_epi_mono_shift(simple(algebra("rad2"), 0), 3)


def test_transpose_pd_and_3_4():
    rad2 = algebra("rad2")
    rep = G.check_projective_dual(simple(rad2, 0), 4)
    assert rep["agree"] and not rep["i"] and not rep["ii"]
    assert G.check_projective_dual(projective(rad2, 0), 4)["i"]
    assert G.check_projective_dual(zero_module(rad2), 4)["agree"]
    assert G.check_transpose_pd(projective(rad2, 0), 4)["holds"]
    assert G.check_transpose_pd(zero_module(rad2), 4)["holds"]


def test_audit_contract_and_trivial_case():
    k = algebra("k")
    with pytest.raises(ValueError):
        G.audit_conjectures(k, [simple(k, 0)], 0)
    rep = G.audit_conjectures(k, [simple(k, 0)], 4)
    assert rep["candidates"] == [] and rep["simple_injective"] == [0]


def test_simple_injectivity():
    a2 = algebra("a2")
    assert G.is_simple_injective(a2, 0) and not G.is_simple_injective(a2, 1)
    assert not G.is_simple_injective(algebra("rad2"), 0)


# -- one-point extensions ---------------------------------------------------


def test_one_point_extension_by_zero_is_product():
    k = algebra("k")
    ext = G.one_point_extension(k, zero_module(k), bound=3)
    a = ext.algebra
    assert (a.dim, a.r) == (2, 2) and not a.is_connected
    assert ext.checks["S injective"] and ext.checks["Omega S = M"] == "isomorphic"
    assert ext.checks["simple_injective_sides"]["S_sgp"] and ext.checks["simple_injective_sides"]["agree"]


def test_one_point_extension_by_k():
    from gorenstein_lab.algebra import find_algebra_isomorphism
    from gorenstein_lab.modrep import restrict_scalars

    k = algebra("k")
    ext = G.one_point_extension(k, simple(k, 0), bound=4)
    a, a2 = ext.algebra, algebra("a2")
    assert a.dim == 3
    theta = find_algebra_isomorphism(a, a2)
    assert theta is not None
    assert is_isomorphic(regular_module(a), restrict_scalars(regular_module(a2), a, theta))
    sides = ext.checks["simple_injective_sides"]
    assert not sides["S_sgp"] and not sides["rhs_at_bound_minus_1"]


def test_one_point_extension_requires_a_brick():
    kx2 = algebra("kx2")
    with pytest.raises(ModuleError, match="End\\(M\\) not a division ring over k"):
        G.one_point_extension(kx2, regular_module(kx2))


def test_simple_injective_sides_on_a2():
    rep = G.check_simple_injective_extension(algebra("a2"), 0, 4)
    assert rep["holds"] and rep["auxiliary"]["e"] is True
    with pytest.raises(G.PreconditionFailed):
        G.check_simple_injective_extension(algebra("a2"), 1, 4)


def test_simple_injective_sides_on_extension_of_kx2_by_its_simple():
    kx2 = algebra("kx2")
    ext = G.one_point_extension(kx2, simple(kx2, 0), bound=4)
    rep = G.check_simple_injective_extension(ext.algebra, ext.s_index, 4)
    assert rep["holds"]


# -- section 4 ---------------------------------------------------------------


def test_local_projective_dual_examples():
    kx3 = algebra("kx3")
    assert G.check_local_projective_dual(projective(kx3, 0), 6)["holds"]
    rep = G.check_local_projective_dual(simple(kx3, 0), 6)
    assert rep["holds"] and not rep["applicable"]
    from gorenstein_lab.algebra import AlgebraError

    with pytest.raises(AlgebraError, match="not local"):
        G.check_local_projective_dual(simple(algebra("a2"), 0), 4)


def test_short_local_phi_and_dimension_vectors():
    kx3 = algebra("kx3")
    for m in enumerate_modules(kx3, 3):
        rep = G.check_short_local_phi(m, 4)
        assert rep["holds"] and rep["ker_phi"] == rep["cok_phi"] == 0
    j = radical_of(regular_module(kx3))[0]
    assert G.dimension_vector(j) == (1, 1)
    with pytest.raises(G.LoewyLengthError):
        G.dimension_vector(regular_module(kx3))


def test_dual_of_reduced_lies_in_radical():
    rad2 = algebra("rad2")
    for m in enumerate_modules(rad2, 3):
        assert G.check_local_projective_dual(m, 3)["dual_in_radical"]

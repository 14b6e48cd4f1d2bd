"""Semi-Gorenstein-projectivity and friends, with instance-level auditors.

Every statement about vanishing of ``Ext^i(-, A)`` for all ``i >= 1`` is
checked only for ``1 <= i <= bound``; the verdicts carry that bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, AlgebraError, quotient_algebra, two_sided_ideal
from .complexes import (
    Complex,
    ComplexError,
    a_dual,
    complex_isomorphism,
    cosyzygy,
    dual_hom,
    ext_dims,
    ext_dims_into,
    lift_chain_map,
    phi,
    projective_dimension,
    syzygy,
    transpose,
)
from .linalg import PrimeField
from .modrep import (
    INCONCLUSIVE,
    ISOMORPHIC,
    EXHAUSTIVE_LIMIT,
    Module,
    ModuleError,
    ModuleHom,
    ProjMap,
    _vectors_to_elements,
    _batch_nonsingular,
    cokernel,
    free_module,
    hom_basis,
    hom_dim,
    is_injective,
    is_isomorphic,
    is_projective,
    k_dual,
    kernel,
    module_from_dict,
    projective,
    reduce,
    regular_module,
    restrict_scalars,
    simple,
)

__all__ = [
    "HOLDS",
    "FAILS",
    "BoundedVerdict",
    "NotReduced",
    "PreconditionFailed",
    "InternalConsistencyError",
    "is_sgp",
    "is_inf_torsionfree",
    "is_torsionless",
    "is_reflexive",
    "is_gp",
    "is_gorenstein_projective",
    "nunke_check",
    "MainComplexReport",
    "build_main_complex",
    "complex_to_module",
    "main_complex_isomorphism",
    "ExactnessReport",
    "check_exactness_criterion",
    "check_omega2_tr_dual",
    "check_tr_bijection",
    "check_epi_mono_shift",
    "check_transpose_pd",
    "check_projective_dual",
    "check_simple_injective_extension",
    "audit_conjectures",
    "verify_certificate",
    "one_point_extension",
    "OnePointExtension",
    "check_local_projective_dual",
    "check_short_local_phi",
    "dimension_vector",
    "is_simple_injective",
    "iso_with_retry",
]

HOLDS = "holds"
FAILS = "fails"


class NotReduced(ValueError):
    """The module has a non-zero projective direct summand."""


class PreconditionFailed(ValueError):
    """An auditor was called outside its hypotheses."""

    def __init__(self, message: str, verdict: "BoundedVerdict | None" = None):
        super().__init__(message)
        self.verdict = verdict


class InternalConsistencyError(AssertionError):
    """A property guaranteed by the theory failed: this is an implementation bug."""


@dataclass
class BoundedVerdict:
    status: str
    bound: int
    witness: dict | None = None
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def inconclusive(self) -> bool:
        return self.status == INCONCLUSIVE

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        out = {"status": self.status, "bound": self.bound}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


def _verdict(ok: bool, bound: int, witness=None, detail="") -> BoundedVerdict:
    return BoundedVerdict(HOLDS if ok else FAILS, bound, None if ok else witness, detail)


def _check_bound(bound: int):
    if bound < 1:
        raise ValueError("bound must be at least 1")


def iso_with_retry(m: Module, n: Module, seed: int = 0, retries: int = 32):
    """``is_isomorphic`` followed by one deterministic retry with a fresh seed if inconclusive."""
    res = is_isomorphic(m, n, seed=seed, retries=retries)
    if res.inconclusive:
        res = is_isomorphic(m, n, seed=seed + 1_000_003, retries=8 * retries)
        res.reason = (res.reason + " (after retry)").strip()
    return res


# ---------------------------------------------------------------------------
# predicates


def is_sgp(m: Module, bound: int) -> BoundedVerdict:
    """``Ext^i(M, A) = 0`` for ``1 <= i <= bound``; the witness is the first non-zero degree."""
    _check_bound(bound)
    dims = ext_dims(m, bound, stop_at_first=True)
    for i, d in enumerate(dims, start=1):
        if d:
            return _verdict(False, bound, {"degree": i, "dim": d}, f"Ext^{i} has dim {d}")
    return _verdict(True, bound, detail=f"Ext^1..{bound} vanish")


def is_inf_torsionfree(m: Module, bound: int) -> BoundedVerdict:
    """``Tr M`` is semi-Gorenstein-projective up to ``bound``."""
    return is_sgp(transpose(m), bound)


def is_torsionless(m: Module) -> bool:
    return phi(m).is_mono


def is_reflexive(m: Module) -> bool:
    return phi(m).is_iso


def is_gp(m: Module, bound: int) -> BoundedVerdict:
    """Gorenstein-projective up to ``bound``: ``M`` and ``M*`` sGp and ``M`` reflexive."""
    v = is_sgp(m, bound)
    if not v:
        return _verdict(False, bound, {"part": "M", **v.witness}, f"M is not sGp: {v.detail}")
    vd = is_sgp(a_dual(m), bound)
    if not vd:
        return _verdict(False, bound, {"part": "M*", **vd.witness}, f"M* is not sGp: {vd.detail}")
    ph = phi(m)
    if not ph.is_iso:
        return _verdict(False, bound, {"part": "phi", "kernel_dim": ph.kernel_dim, "cokernel_dim": ph.cokernel_dim},
                        "M is not reflexive")
    return _verdict(True, bound)


is_gorenstein_projective = is_gp


def nunke_check(m: Module, bound: int) -> BoundedVerdict:
    """``M`` is a Nunke module up to ``bound``: ``M* = 0`` and ``M`` sGp."""
    dual_dim = a_dual(m).dim
    if dual_dim:
        return _verdict(False, bound, {"dual_dim": dual_dim}, f"M* has dim {dual_dim}")
    v = is_sgp(m, bound)
    return v if not v else _verdict(True, bound, detail="M* = 0 and " + v.detail)


def _require_reduced(m: Module):
    red = reduce(m)
    if red.projective_part.dim:
        raise NotReduced(f"not reduced: a projective summand of dim {red.projective_part.dim} splits off")


def _require_sgp(m: Module, bound: int, what: str):
    v = is_sgp(m, bound)
    if not v:
        raise PreconditionFailed(f"sGp test failed for {what}: {v.detail}", v)


# ---------------------------------------------------------------------------
# the main complex


@dataclass
class MainComplexReport:
    module: Module
    bound: int
    complex: Complex
    dual: Module
    double_dual: Module
    e: ModuleHom
    q_star: np.ndarray
    f0: ProjMap
    phi_kernel_dim: int
    phi_cokernel_dim: int
    homology: dict
    dual_homology: dict
    checks: dict
    inconclusive: list = field(default_factory=list)

    @property
    def interior_homology_zero(self) -> bool:
        return all(d == 0 for i, d in self.homology.items() if i not in (0, -1))

    def diagram(self) -> str:
        return render_main_complex(self)

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "complex": self.complex.to_dict(),
            "homology": {str(i): d for i, d in sorted(self.homology.items())},
            "dual_homology": {str(i): d for i, d in sorted(self.dual_homology.items())},
            "ker_phi": self.phi_kernel_dim,
            "cok_phi": self.phi_cokernel_dim,
            "checks": dict(self.checks),
            "inconclusive": list(self.inconclusive),
        }


def _iso_check(name, m, n, checks, inconclusive):
    res = iso_with_retry(m, n)
    if res.inconclusive:
        inconclusive.append(name)
        checks[name] = None
    else:
        checks[name] = res.status == ISOMORPHIC


def build_main_complex(m: Module, bound: int, verify: bool = True) -> MainComplexReport:
    """The minimal complex ``P_bullet`` on the window ``[-bound-1, bound+1]``.

    ``P_i`` (``i >= 0``) come from the resolution of ``M``, ``P_{-i}`` from the
    dualized resolution of ``M*``, and ``f_0 = q^* phi_M e``.
    """
    _check_bound(bound)
    _require_reduced(m)
    _require_sgp(m, bound, "M")
    mstar = a_dual(m)
    _require_sgp(mstar, bound, "M*")
    F, alg = m.field, m.algebra
    op = alg.opposite()
    res, rstar = m.resolution, mstar.resolution
    n = bound
    patterns = {i: res.pattern(i) for i in range(n + 2)}
    patterns.update({-i: rstar.pattern(i - 1) for i in range(1, n + 2)})
    diffs = {i: res.differential(i) for i in range(1, n + 2)}
    diffs.update({-i: rstar.differential(i).dual() for i in range(1, n + 1)})
    # f_0 sends the a-th top generator of M to the a-th components of the generators of M*
    data = mstar.dual_data
    gens = mstar.cover.generators
    if gens.shape[0] and data.rows.shape[0]:
        ys = _vectors_to_elements(op, data.pattern, F.matmul(gens, data.rows))
    else:
        ys = F.zeros((len(patterns[-1]), len(patterns[0]), alg.dim))
    diffs[0] = ProjMap(alg, patterns[0], patterns[-1], ys)
    cx = Complex(alg, -n - 1, n + 1, patterns, diffs, check=verify)
    mss = a_dual(mstar)
    ph = phi(m)
    e = res.augmentation
    q_star = mss.dual_data.rows.T.copy() if mss.dim else F.zeros((diffs[0].matrix.shape[0], 0))
    homology = {i: cx.homology_dim(i) for i in cx.interior()}
    dual = cx.dual()
    dual_homology = {-j: dual.homology_dim(j) for j in dual.interior()}
    checks, inconclusive = {}, []
    if verify:
        lhs = diffs[0].matrix
        rhs = F.matmul(F.matmul(q_star, ph.hom.matrix), e.matrix) if m.dim else F.zeros(lhs.shape)
        checks["f0 = q* phi e"] = F.equal(lhs, rhs)
        checks["minimal"] = cx.is_minimal()
        checks["interior homology zero"] = all(d == 0 for i, d in homology.items() if i not in (0, -1))
        checks["dim H0 = dim Ker phi"] = homology.get(0, ph.kernel_dim) == ph.kernel_dim
        checks["dim H-1 = dim Cok phi"] = homology.get(-1, ph.cokernel_dim) == ph.cokernel_dim
        checks["dual acyclic"] = all(d == 0 for d in dual_homology.values())
        if n >= 1:
            _iso_check("H0 = Ker phi", cx.homology(0), kernel(ph.hom)[0], checks, inconclusive)
            _iso_check("H-1 = Cok phi", cx.homology(-1), cokernel(ph.hom)[0], checks, inconclusive)
        _iso_check("M = Cok f1", cokernel(diffs[1].hom())[0], m, checks, inconclusive)
        d1 = rstar.differential(1)
        _iso_check("M* = Cok f-1*", cokernel(d1.hom())[0], mstar, checks, inconclusive)
        _iso_check("M** = Ker f-1", kernel(diffs[-1].hom())[0], mss, checks, inconclusive)
        bad = [k for k, v in checks.items() if v is False]
        if bad:
            raise InternalConsistencyError("main complex checks failed: " + ", ".join(bad))
    return MainComplexReport(m, bound, cx, mstar, mss, e, q_star, diffs[0], ph.kernel_dim, ph.cokernel_dim,
                             homology, dual_homology, checks, inconclusive)


def render_main_complex(rep: MainComplexReport) -> str:
    """Aligned text: homology row, ``P_bullet`` with ranks, and the acyclicity row of ``P_bullet^*``."""
    cx = rep.complex
    idx = list(range(cx.hi, cx.lo - 1, -1))
    width = 9

    def cell(s):
        return str(s).center(width)

    def hom_label(i):
        if i not in rep.homology:
            return ""
        if i == 0:
            return f"Ker={rep.homology[i]}"
        if i == -1:
            return f"Cok={rep.homology[i]}"
        return str(rep.homology[i])

    rows = [
        "H_i(P)   " + "".join(cell(hom_label(i)) for i in idx),
        "P        " + "".join(cell(f"P{i}") for i in idx),
        "rank     " + "".join(cell(len(cx.patterns[i])) for i in idx),
        "H(P*)    " + "".join(cell(rep.dual_homology.get(i, "")) for i in idx),
    ]
    arrows = "         " + "".join(cell("") if i == idx[0] else cell("<-" if False else f"f{i + 1}->")[:width] for i in idx)
    rows.insert(2, arrows)
    rows.append(f"M = Cok f1 (dim {rep.module.dim}), M* dim {rep.dual.dim}, M** dim {rep.double_dual.dim}, "
                f"phi: Ker {rep.phi_kernel_dim}, Cok {rep.phi_cokernel_dim}; bound {rep.bound}")
    return "\n".join(r.rstrip() for r in rows)


def complex_to_module(c: Complex, bound: int | None = None):
    """``M = Cok f_1`` for a minimal complex whose homology is concentrated in degrees 0 and -1.

    Returns ``(M, report)``; the report carries bounded sGp verdicts for ``M``
    and ``M*``.
    """
    if c.lo > -1 or c.hi < 1:
        raise ComplexError("window must contain degrees -1..1")
    if not c.is_minimal():
        raise ComplexError("complex is not minimal")
    bad = [i for i in c.interior() if i not in (0, -1) and c.homology_dim(i)]
    if bad:
        raise ComplexError(f"non-zero interior homology at degree {bad[0]}")
    dual = c.dual()
    bad = [j for j in dual.interior() if dual.homology_dim(j)]
    if bad:
        raise ComplexError(f"dual complex is not exact at P_{-bad[0]}^*")
    m = cokernel(c.differentials[1].hom())[0]
    red = reduce(m)
    if red.projective_part.dim:
        raise InternalConsistencyError("Cok f_1 has a projective summand")
    b = bound if bound is not None else max(1, min(c.hi - 1, -c.lo - 1))
    report = {
        "bound": b,
        "sgp_M": is_sgp(m, b).to_dict(),
        "sgp_M*": is_sgp(a_dual(m), b).to_dict(),
        "reduced": True,
    }
    return m, report


def main_complex_isomorphism(rep1: MainComplexReport, rep2: MainComplexReport, alpha: ModuleHom) -> bool:
    """Extend an isomorphism ``alpha: M -> M'`` to the main complexes and check it is a chain isomorphism."""
    n = rep1.bound
    if rep2.bound != n:
        return False
    pos = lift_chain_map(alpha, n + 1)
    beta = dual_hom(alpha)  # M'* -> M*
    neg = lift_chain_map(beta, n)
    maps = {i: pos[i] for i in range(n + 2)}
    maps.update({-i - 1: neg[i].dual() for i in range(n + 1)})
    return complex_isomorphism(rep1.complex, rep2.complex, maps)


# ---------------------------------------------------------------------------
# the four-term exactness criterion


@dataclass
class ExactnessReport:
    exact: bool
    zeta_exists: bool | None  # None: inconclusive invertibility search
    triangles: bool | None
    detail: str = ""
    zeta: np.ndarray | None = None

    @property
    def agree(self) -> bool | None:
        if self.zeta_exists is None:
            return None
        return self.exact == self.zeta_exists

    def to_dict(self) -> dict:
        return {"exact": self.exact, "zeta_exists": self.zeta_exists, "agree": self.agree,
                "triangles": self.triangles, "detail": self.detail}


def _module_rank(F, mat):
    return F.rank(mat) if mat.size else 0


def _find_invertible(F, particular, directions, seed=0, retries=32):
    """An invertible matrix in ``particular + span(directions)``; ``(matrix, certain)``."""
    n = particular.shape[0]
    if particular.shape != (n, n):
        return None, True
    if F.rank(particular) == n:
        return particular, True
    h = len(directions)
    if h == 0:
        return None, True
    stack = np.stack(directions).reshape(h, n * n)
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        c = F.random(h, rng)
        cand = F.add(particular, F.matmul(c.reshape(1, h), stack).reshape(n, n))
        if F.rank(cand) == n:
            return cand, True
    if isinstance(F, PrimeField) and F.p ** h <= EXHAUSTIVE_LIMIT:
        p = F.p
        total = p ** h
        for start in range(0, total, 4096):
            ids = np.arange(start, min(total, start + 4096))
            digits = (ids[:, None] // (p ** np.arange(h))[None, :]) % p
            mats = (F.matmul(digits.astype(np.int64), stack) + particular.reshape(1, -1)) % p
            ok = _batch_nonsingular(p, mats.reshape(-1, n, n))
            if ok.any():
                return mats[int(np.argmax(ok))].reshape(n, n), True
        return None, True
    return None, False


def check_exactness_criterion(d_m1: ProjMap, d0: ProjMap, d1: ProjMap, seed: int = 0) -> ExactnessReport:
    """Both sides of the exactness criterion for ``Q_-2 <- Q_-1 <- Q_0 <- Q_1``.

    (i) exactness at ``Q_-1`` and ``Q_0``; (ii) an isomorphism ``zeta: N -> M*``
    with ``d_0^* = c^* zeta^* phi_M e``, where ``e: Q_-1^* -> M`` is a cokernel of
    ``d_-1^*`` and ``c: Q_0 -> N`` a cokernel of ``d_1``.
    """
    alg = d0.algebra
    F = alg.field
    if d_m1.source != d0.target or d0.source != d1.target:
        raise ComplexError("maps are not composable")
    for a, b in ((d_m1, d0), (d0, d1)):
        if a.matrix.size and b.matrix.size and not F.is_zero(F.matmul(a.matrix, b.matrix)):
            raise ComplexError("composition is not zero")
    q_m1 = free_module(alg, d0.target)
    q0 = free_module(alg, d0.source)
    r_m1, r0, r1 = _module_rank(F, d_m1.matrix), _module_rank(F, d0.matrix), _module_rank(F, d1.matrix)
    exact = (q_m1.dim - r_m1 == r0) and (q0.dim - r0 == r1)

    dual_m1 = d_m1.dual()
    m, e = cokernel(dual_m1.hom())
    n, c = cokernel(d1.hom())
    mstar = a_dual(m)
    if n.dim != mstar.dim:
        return ExactnessReport(exact, False, None, f"dim N = {n.dim} but dim M* = {mstar.dim}")
    ph = phi(m).hom
    cstar = dual_hom(c)
    basis = hom_basis(n, mstar)
    target = d0.dual().matrix
    if not basis:
        ok = n.dim == 0 and F.is_zero(target)
        zeta = F.zeros((0, 0)) if ok else None
        return ExactnessReport(exact, ok, ok if ok else None, "Hom(N, M*) = 0", zeta)
    images = []
    for z in basis:
        zs = dual_hom(z)  # M** -> N*
        images.append(F.matmul(F.matmul(F.matmul(cstar.matrix, zs.matrix), ph.matrix), e.matrix).reshape(-1))
    system = np.stack(images).T
    sol = F.solve(system, target.reshape(-1, 1))
    if sol is None:
        return ExactnessReport(exact, False, None, "factorization identity has no solution")
    null = F.kernel(system)
    stack = np.stack([z.matrix for z in basis])
    h = len(basis)

    def combo(coeffs):
        return F.matmul(coeffs.reshape(1, h), stack.reshape(h, -1)).reshape(stack.shape[1:])

    particular = combo(sol[:, 0])
    directions = [combo(null[:, k]) for k in range(null.shape[1])]
    zeta, certain = _find_invertible(F, particular, directions, seed=seed)
    if zeta is None:
        return ExactnessReport(exact, False if certain else None, None,
                             "no invertible solution" if certain else "invertibility search inconclusive")
    zeta_hom = ModuleHom(n, mstar, zeta, check=False)
    q = F.matmul(zeta, c.matrix)
    q_ok = _module_rank(F, q) == mstar.dim and q0.dim - _module_rank(F, q) == r1
    if d1.matrix.size and q.size:
        q_ok = q_ok and F.is_zero(F.matmul(q, d1.matrix))
    estar = dual_hom(e)  # M* -> Q_-1
    tri = F.equal(F.matmul(estar.matrix, q), d0.matrix) if q.size else F.is_zero(d0.matrix)
    del zeta_hom
    return ExactnessReport(exact, True, bool(q_ok and tri), "zeta found", zeta)


# ---------------------------------------------------------------------------
# transpose identities and checks on the dual side


def check_omega2_tr_dual(m: Module, seed: int = 0):
    """``Omega^2 M`` versus ``(Tr M)*``; returns the isomorphism verdict."""
    return iso_with_retry(syzygy(m, 2), a_dual(transpose(m)), seed=seed)


def _status(flag):
    if flag is None:
        return INCONCLUSIVE
    return HOLDS if flag else FAILS


def check_tr_bijection(m: Module, bound: int) -> dict:
    """Instance check for the transpose bijection onto reduced infinitely torsionfree right modules."""
    _check_bound(bound)
    _require_reduced(m)
    _require_sgp(m, bound, "M")
    _require_sgp(a_dual(m), bound, "M*")
    z = transpose(m)
    trz = transpose(z)
    checks = {}
    r = iso_with_retry(trz, m)
    checks["Tr Tr M = M"] = _status(None if r.inconclusive else r.status == ISOMORPHIC)
    checks["Z infinitely torsionfree"] = is_inf_torsionfree(z, bound).status
    checks["Z reduced"] = _status(reduce(z).projective_part.dim == 0)
    r = iso_with_retry(syzygy(z, 2), a_dual(m))
    checks["Omega^2 Z = M*"] = _status(None if r.inconclusive else r.status == ISOMORPHIC)
    checks["Omega^2 Z sGp"] = is_sgp(syzygy(z, 2), bound).status
    return {"bound": bound, "Z_dim": z.dim, "checks": checks, "holds": all(v == HOLDS for v in checks.values())}


def check_epi_mono_shift(m: Module, bound: int) -> dict:
    """Both biconditionals of the epimorphism/monomorphism proposition on one instance.

    Part (1) compares ``M*`` sGp up to ``bound`` with ``phi_M`` epi against
    ``(Omega M)*`` sGp up to ``bound + 1``; part (2), run when ``M`` is
    torsionless, compares ``M*`` sGp up to ``bound + 1`` against ``N*`` sGp up
    to ``bound`` with ``phi_N`` epi for ``N`` the cosyzygy of ``M``.
    """
    _check_bound(bound)
    _require_sgp(m, bound, "M")
    out = {"bound": bound}
    ph = phi(m)
    lhs = bool(is_sgp(a_dual(m), bound)) and ph.is_epi
    rhs = bool(is_sgp(a_dual(syzygy(m, 1)), bound + 1))
    out["part1"] = {"lhs": lhs, "rhs": rhs, "agree": lhs == rhs}
    if ph.is_mono:
        mo = cosyzygy(m)
        pm = phi(mo)
        sgp_mo = bool(is_sgp(mo, bound + 1))
        lhs2 = bool(is_sgp(a_dual(m), bound + 1))
        rhs2 = bool(is_sgp(a_dual(mo), bound)) and pm.is_epi
        out["part2"] = {"cosyzygy_sgp": sgp_mo, "lhs": lhs2, "rhs": rhs2, "agree": lhs2 == rhs2 and sgp_mo}
    # the reduced case: M reduced, M and M* sGp, phi_M epi
    red = reduce(m).reduced
    if red.dim and lhs and reduce(m).projective_part.dim == 0:
        omega = syzygy(m, 1)
        back = cosyzygy(omega)
        rt = iso_with_retry(reduce(back).reduced, red)
        ker = kernel(ph.hom)[0]
        cok_omega = cokernel(phi(omega).hom)[0]
        k1 = iso_with_retry(cok_omega, ker)
        # the printed form compares a right module with a left one; only dimensions are comparable
        cok_dual = phi(a_dual(m)).cokernel_dim
        out["reduced_case"] = {
            "cosyzygy of Omega M = M": rt.status,
            "Cok phi_(Omega M) = Ker phi_M": k1.status,
            "dim Cok phi_(M*) = dim Ker phi_M (as printed)": cok_dual == ker.dim,
        }
    agree = out["part1"]["agree"] and out.get("part2", {}).get("agree", True)
    if "reduced_case" in out:
        agree = agree and out["reduced_case"]["cosyzygy of Omega M = M"] == ISOMORPHIC \
            and out["reduced_case"]["Cok phi_(Omega M) = Ker phi_M"] == ISOMORPHIC
    out["holds"] = agree
    return out


def check_transpose_pd(m: Module, bound: int) -> dict:
    """For sGp ``M`` with ``M*`` projective: ``pd Tr M <= 2``, and ``<= 1`` when ``M* = 0``."""
    _check_bound(bound)
    sgp = is_sgp(m, bound)
    mstar = a_dual(m)
    out = {"bound": bound, "sgp": sgp.status, "applicable": bool(sgp) and is_projective(mstar)}
    if not out["applicable"]:
        out["holds"] = True
        return out
    z = transpose(m)
    pd = projective_dimension(z, max(bound, 2))
    limit = 1 if mstar.dim == 0 else 2
    out.update({"dual_zero": mstar.dim == 0, "pd_Tr": pd, "limit": limit,
                "Tr infinitely torsionfree": is_inf_torsionfree(z, bound).status})
    out["holds"] = pd is not None and pd <= limit
    return out


def check_projective_dual(m: Module, bound: int) -> dict:
    """(i) sGp, ``phi_M`` epi, ``M*`` projective  versus  (ii) projective plus Nunke."""
    _check_bound(bound)
    sgp = is_sgp(m, bound)
    i_side = bool(sgp) and phi(m).is_epi and is_projective(a_dual(m))
    red = reduce(m)
    ii_side = bool(nunke_check(red.reduced, bound))
    return {"bound": bound, "i": i_side, "ii": ii_side, "agree": i_side == ii_side,
            "projective_part_dim": red.projective_part.dim, "reduced_dim": red.reduced.dim}


def is_simple_injective(alg: Algebra, i: int) -> bool:
    """Compare ``S_i`` with the indecomposable injective ``D(e_i A)`` whose socle it is."""
    inj = k_dual(projective(alg.opposite(), i))
    res = is_isomorphic(simple(alg, i), inj)
    return res.status == ISOMORPHIC


def _module_certificate(m: Module) -> dict:
    return m.to_dict(inline=True)


def _module_from_certificate(data: dict) -> Module:
    return module_from_dict(data)


def _simple_index(m: Module):
    if m.dim != 1:
        return None
    for i in range(m.algebra.r):
        if m.idempotent_part(i).shape[0]:
            return i
    return None


def _ladder(m: Module, bound: int, simple_injective: dict) -> dict:
    """Which of the conditions (2)-(6) this module violates (instance level)."""
    sgp = bool(is_sgp(m, bound))
    violations = {}
    if m.dim == 0:
        return violations
    proj = is_projective(m)
    if sgp and not proj:
        mstar = a_dual(m)
        pd = projective_dimension(mstar, bound)
        if pd is not None:
            violations["2"] = {"pd_dual": pd}
        if is_projective(mstar):
            violations["3"] = {"dual_dim": mstar.dim}
    nunke = bool(nunke_check(m, bound))
    if nunke:
        violations["4"] = {}
        idx = _simple_index(m)
        if idx is not None:
            violations["5"] = {"simple": idx}
            if simple_injective.get(idx):
                violations["6"] = {"simple": idx}
    return violations


def audit_conjectures(alg: Algebra, modules, bound: int) -> dict:
    """Instance checks of conditions (2)-(6) of the conjecture ladder.

    Every violation is returned as a self-contained COUNTEREXAMPLE CANDIDATE
    certificate; sGp is truncated at ``bound`` so a candidate is evidence, not proof.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    simple_inj = {i: is_simple_injective(alg, i) for i in range(alg.r)}
    counts = {k: 0 for k in ("2", "3", "4", "5", "6")}
    candidates = []
    for idx, m in enumerate(modules):
        if m.algebra is not alg:
            raise ModuleError("module over a different algebra")
        for cond, info in _ladder(m, bound, simple_inj).items():
            counts[cond] += 1
            candidates.append({
                "kind": "COUNTEREXAMPLE CANDIDATE",
                "condition": cond,
                "module_index": idx,
                "bound": bound,
                "caveat": f"sGp checked only for Ext degrees 1..{bound}",
                "info": info,
                "module": _module_certificate(m),
            })
    return {"bound": bound, "modules": len(modules), "violations": counts, "candidates": candidates,
            "simple_injective": [i for i, v in simple_inj.items() if v]}


def verify_certificate(cert: dict) -> bool:
    """Re-run a counterexample-candidate certificate from its serialized form."""
    m = _module_from_certificate(cert["module"])
    alg = m.algebra
    simple_inj = {i: is_simple_injective(alg, i) for i in range(alg.r)}
    return cert["condition"] in _ladder(m, cert["bound"], simple_inj)


# ---------------------------------------------------------------------------
# one-point extensions


@dataclass
class OnePointExtension:
    algebra: Algebra
    s_index: int
    base: Algebra
    module: Module
    inclusion: np.ndarray  # dim A x dim B: the embedding of B as a (non-unital) subalgebra
    projection: np.ndarray  # dim B x dim A: the quotient map A -> A / A e A = B
    checks: dict

    def inflate(self, u: Module) -> Module:
        """A ``B``-module as an ``A``-module on which the new corner acts by zero."""
        return restrict_scalars(u, self.algebra, self.projection)


def _brick_or_zero(m: Module):
    if m.dim and hom_dim(m, m) != 1:
        raise ModuleError("End(M) not a division ring over k")


def one_point_extension(b: Algebra, m: Module, bound: int | None = None) -> OnePointExtension:
    """The triangular algebra ``[[B, M], [0, k]]`` and the index of its new simple.

    Basis: the basis of ``B``, then a basis of ``M``, then the corner idempotent.
    """
    if m.algebra is not b:
        raise ModuleError("module must be a left module over the given algebra")
    _brick_or_zero(m)
    F = b.field
    db, dm = b.dim, m.dim
    d = db + dm + 1
    eps = d - 1
    mul = F.zeros((d, d, d))
    mul[:db, :db, :db] = b.mul
    act = m.action  # act[x][t, s]: coefficient of mu_t in b_x mu_s
    for x in range(db):
        for s in range(dm):
            mul[x, db + s, db:db + dm] = act[x][:, s]
    for s in range(dm):
        mul[db + s, eps, db + s] = 1
    mul[eps, eps, eps] = 1
    unit = F.zeros(d)
    unit[:db] = b.unit
    unit[eps] = 1
    idem = F.zeros((b.r + 1, d))
    idem[:b.r, :db] = b.idempotents
    idem[b.r, eps] = 1
    rad = F.zeros((b.radical.shape[0] + dm, d))
    rad[:b.radical.shape[0], :db] = b.radical
    rad[b.radical.shape[0]:, db:db + dm] = F.eye(dm)
    labels = list(b.labels) + [f"m{s + 1}" for s in range(dm)] + ["eps"]
    a = Algebra(F, mul, unit, idem, rad if rad.shape[0] else np.zeros((0, d), dtype=int), labels,
                name=f"[{b.name or 'B'}, M; 0, k]")
    inclusion = F.zeros((d, db))
    inclusion[:db, :db] = F.eye(db)
    projection = F.zeros((db, d))
    projection[:db, :db] = F.eye(db)
    ext = OnePointExtension(a, b.r, b, m, inclusion, projection, {})
    s = simple(a, b.r)
    ext.checks["S injective"] = is_injective(s)
    r = iso_with_retry(syzygy(s, 1), ext.inflate(m))
    ext.checks["Omega S = M"] = r.status
    if bound is not None:
        ext.checks["simple_injective_sides"] = _simple_injective_sides(a, b.r, b, m, ext.inflate, bound)
    return ext


def _nunke_at(m: Module, bound: int) -> bool:
    """Nunke up to ``bound``; at bound 0 only ``M* = 0`` is required."""
    if a_dual(m).dim:
        return False
    return bound < 1 or bool(is_sgp(m, bound))


def _simple_injective_sides(a: Algebra, s_index: int, b: Algebra, m: Module, inflate, bound: int) -> dict:
    """Side (i) at ``bound`` against side (ii) at ``bound - 1`` (and at ``bound`` for reference)."""
    s = simple(a, s_index)
    lhs = bool(is_sgp(s, bound))

    def rhs_at(n):
        if m.dim == 0:
            return True
        ext_mm = ext_dims_into(m, m, n)[1:] if n >= 1 else []
        return _nunke_at(m, n) and not any(ext_mm) and hom_dim(m, m) == 1

    rhs = rhs_at(bound - 1)
    return {"bound": bound, "S_sgp": lhs, "rhs_at_bound_minus_1": rhs, "rhs_at_bound": rhs_at(bound),
            "agree": lhs == rhs}


def check_simple_injective_extension(a: Algebra, s_index: int, bound: int, lemma_modules=None) -> dict:
    """Instance check for a simple injective ``S``: ``B = A / A e A`` and ``M = Omega S``.

    Also checks the auxiliary statements (b)-(e) on ``lemma_modules`` (``B``-modules; defaults to
    the simples of ``B`` and ``M``).
    """
    _check_bound(bound)
    s = simple(a, s_index)
    if not is_injective(s):
        raise PreconditionFailed("S is not injective")
    F = a.field
    ideal = two_sided_ideal(a, a.idempotents[s_index:s_index + 1])
    out = {"bound": bound}
    omega = syzygy(s, 1)
    if ideal.shape[0] == a.dim:
        raise PreconditionFailed("A e A is the whole algebra")
    b, proj = quotient_algebra(a, ideal, name="A/AeA")
    # the non-pivot basis elements of A represent the basis of B
    piv = set(F.rowspace(ideal)[1])
    keep = [c for c in range(a.dim) if c not in piv]
    lift = F.zeros((a.dim, b.dim))
    for k, c in enumerate(keep):
        lift[c, k] = 1
    if omega.dim:
        m = restrict_scalars(omega, b, lift)
    else:
        m = Module(b, F.zeros((b.dim, 0, 0)), dim=0)

    def inflate(u):
        return restrict_scalars(u, a, proj)

    out["sides"] = _simple_injective_sides(a, s_index, b, m, inflate, bound)
    us = lemma_modules if lemma_modules is not None else [simple(b, i) for i in range(b.r)] + ([m] if m.dim else [])
    ps = projective(a, s_index)
    breg = regular_module(b)
    lem = {"b": True, "c": True, "d": True, "e": None}
    for u in us:
        ua = inflate(u)
        for u2 in us:
            if ext_dims_into(ua, inflate(u2), bound) != ext_dims_into(u, u2, bound):
                lem["b"] = False
        if ext_dims_into(ua, ps, bound) != ext_dims_into(u, m, bound):
            lem["c"] = False
        sgp_a = bool(is_sgp(ua, bound))
        sgp_b = bool(is_sgp(u, bound)) and not any(ext_dims_into(u, m, bound)[1:])
        if sgp_a != sgp_b:
            lem["d"] = False
    if m.dim:
        inc = s.resolution.syzygy_inclusion(1).matrix
        inc_mod = s.resolution.syzygy(1)
        homs_a = hom_basis(inc_mod, regular_module(a))
        through = [F.matmul(g.matrix, inc) for g in hom_basis(ps, regular_module(a))]
        span_through = F.rank(np.stack([t.reshape(-1) for t in through])) if through else 0
        approx = span_through == len(homs_a)
        criterion = hom_dim(m, m) == 1 and hom_dim(m, breg) == 0
        lem["e"] = approx == criterion
        out["left_approximation"] = approx
    out["auxiliary"] = lem
    out["holds"] = out["sides"]["agree"] and all(v is not False for v in lem.values())
    return out


# ---------------------------------------------------------------------------
# local and short local algebras


def check_local_projective_dual(m: Module, bound: int) -> dict:
    """Over a local algebra: sGp ``M`` with projective ``M*`` is projective."""
    alg = m.algebra
    if not alg.is_local:
        raise AlgebraError("local", "algebra not local")
    _check_bound(bound)
    sgp = is_sgp(m, bound)
    out = {"bound": bound, "sgp": sgp.status}
    red = reduce(m).reduced
    rstar = a_dual(red)
    if rstar.dim:
        # M* sits inside P_0^*; for reduced M it lies in the radical of P_0^*
        data = rstar.dual_data
        amb = free_module(alg.opposite(), data.pattern)
        F = alg.field
        jrows = amb.radical_rows
        inside = F.rank(np.concatenate([jrows, data.rows])) == jrows.shape[0]
    else:
        inside = True
    out["dual_in_radical"] = inside
    if not sgp:
        out.update({"applicable": False, "holds": inside})
        return out
    dual_proj = is_projective(a_dual(m))
    out["applicable"] = dual_proj
    out["holds"] = inside and (not dual_proj or is_projective(m))
    return out


class LoewyLengthError(ValueError):
    pass


def dimension_vector(m: Module) -> tuple[int, int]:
    """``(dim top M, dim JM)`` for a module with ``J^2 M = 0``."""
    jm = m.radical_rows
    if jm.shape[0]:
        from .modrep import submodule

        sub = submodule(m, jm)[0]
        if sub.radical_rows.shape[0]:
            raise LoewyLengthError("dimension vector needs Loewy length at most 2")
    return m.dim - jm.shape[0], jm.shape[0]


def check_short_local_phi(m: Module, bound: int) -> dict:
    """(b) ``dim Ker phi = dim Cok phi`` when ``M``, ``M*`` are sGp; (a) ranks and dimension vectors."""
    alg = m.algebra
    if not alg.is_short_local:
        raise AlgebraError("short local", "algebra not short local")
    _check_bound(bound)
    out = {"bound": bound}
    both = bool(is_sgp(m, bound)) and bool(is_sgp(a_dual(m), bound))
    out["applicable"] = both
    if not both:
        out["holds"] = True
        return out
    ph = phi(m)
    out["ker_phi"], out["cok_phi"] = ph.kernel_dim, ph.cokernel_dim
    ok = ph.kernel_dim == ph.cokernel_dim
    red = reduce(m).reduced
    if not alg.is_self_injective and red.dim:
        rep = build_main_complex(red, bound, verify=False)
        dual = rep.complex.dual()
        ranks = {j: len(dual.patterns[j]) for j in range(dual.lo, dual.hi + 1)}
        t = ranks[dual.lo]
        a_val = alg.hilbert_type.a
        vecs = {}
        for j in range(dual.lo + 1, dual.hi + 1):
            img = _image_module(dual.differentials[j])
            vecs[j] = dimension_vector(img)
        out["ranks"] = sorted(set(ranks.values()))
        out["dimension_vectors"] = sorted(set(vecs.values()))
        part_a = len(set(ranks.values())) == 1 and all(v == (t, a_val * t) for v in vecs.values())
        out["part_a"] = part_a
        ok = ok and part_a
    out["holds"] = ok
    return out


def _image_module(f: ProjMap) -> Module:
    from .modrep import image

    return image(f.hom())[0]

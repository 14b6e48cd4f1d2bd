"""Minimal projective resolutions, the A-dual, transposes and Ext.

Resolutions are built lazily, one degree at a time.  Each syzygy is kept as
a subspace of a standard free module, and each differential as a
:class:`~gorenstein_lab.modrep.ProjMap`, so dualizing a resolution is just
transposing element matrices over the opposite algebra.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .algebra import Algebra
from .modrep import (
    Module,
    ModuleError,
    ModuleHom,
    ProjMap,
    _complement_indices,
    _elements_to_vectors,
    _offsets,
    _vectors_to_elements,
    cokernel,
    free_module,
    quotient,
    submodule,
    zero_module,
)

__all__ = [
    "Resolution",
    "Complex",
    "ComplexError",
    "NotTorsionless",
    "Phi",
    "a_dual",
    "dual_hom",
    "phi",
    "min_resolution",
    "syzygy",
    "cosyzygy",
    "transpose",
    "ext_dims",
    "ext_dims_into",
    "ext_dims_bruteforce",
    "projective_dimension",
    "lift_chain_map",
    "hom_of_dual_element",
    "complex_isomorphism",
]


class ComplexError(ValueError):
    """A complex violates a required property."""


class NotTorsionless(ModuleError):
    """The cosyzygy was requested for a module whose canonical map is not injective."""


# ---------------------------------------------------------------------------
# resolutions


def _empty_map(alg: Algebra, source, target) -> ProjMap:
    return ProjMap(alg, source, target, alg.field.zeros((len(target), len(source), alg.dim)))


class Resolution:
    """Minimal projective resolution ``... -> P_1 -> P_0 -> M -> 0``, computed on demand."""

    def __init__(self, module: Module):
        self.module = module
        self.algebra = module.algebra
        F = self.field = module.field
        cov = module.cover
        self._patterns = [cov.pattern]
        self._diffs: list[ProjMap | None] = [None]
        ker = F.kernel(cov.matrix).T if cov.matrix.shape[1] else F.zeros((0, 0))
        self._kernels = [None, F.rowspace(ker)]
        self._syz: dict[int, Module] = {0: module}

    def __repr__(self):
        return f"<Resolution of {self.module!r}, {len(self._patterns)} terms computed>"

    def _extend(self):
        F, alg = self.field, self.algebra
        i = len(self._patterns)
        prev = self._patterns[i - 1]
        rows, piv = self._kernels[i]
        if rows.shape[0] == 0:
            self._patterns.append(())
            self._diffs.append(_empty_map(alg, (), prev))
            self._kernels.append((F.zeros((0, 0)), []))
            return
        ambient = free_module(alg, prev)
        radical = [ambient.apply(r, rows) for r in alg.radical]
        base = F.rowspace(np.concatenate(radical))[0] if radical else F.zeros((0, rows.shape[1]))
        pattern, gens = [], []
        for j in range(alg.r):
            cand = F.rowspace(ambient.apply(alg.idempotents[j], rows))[0]
            pick = _complement_indices(F, base, cand)
            if pick:
                chosen = cand[pick]
                gens.append(chosen)
                pattern.extend([j] * len(pick))
                base = np.concatenate([base, chosen])
        gens = np.concatenate(gens)
        elements = _vectors_to_elements(alg, prev, gens).transpose(1, 0, 2)
        f = ProjMap(alg, tuple(pattern), prev, elements)
        self._patterns.append(tuple(pattern))
        self._diffs.append(f)
        mat = f.matrix[piv, :] if piv else F.zeros((0, f.matrix.shape[1]))
        self._kernels.append(F.rowspace(F.kernel(mat).T))

    def _ensure(self, i: int):
        while len(self._patterns) <= i:
            self._extend()

    def pattern(self, i: int) -> tuple:
        """Summand pattern of ``P_i``."""
        self._ensure(i)
        return self._patterns[i]

    def term(self, i: int) -> Module:
        return free_module(self.algebra, self.pattern(i))

    def rank(self, i: int) -> int:
        return len(self.pattern(i))

    def differential(self, i: int) -> ProjMap:
        """``f_i: P_i -> P_{i-1}`` for ``i >= 1``."""
        if i < 1:
            raise ValueError("differentials start at degree 1")
        self._ensure(i)
        return self._diffs[i]

    @property
    def augmentation(self) -> ModuleHom:
        cov = self.module.cover
        return ModuleHom(self.term(0), self.module, cov.matrix, check=False)

    def kernel_rows(self, i: int):
        """RREF rows and pivots of ``Omega^i M`` inside ``P_{i-1}`` (``i >= 1``)."""
        self._ensure(i - 1)
        while len(self._kernels) <= i:
            self._extend()
        return self._kernels[i]

    def syzygy(self, i: int) -> Module:
        if i not in self._syz:
            rows, _ = self.kernel_rows(i)
            if rows.shape[0] == 0:
                self._syz[i] = zero_module(self.algebra)
            else:
                self._syz[i] = submodule(self.term(i - 1), rows)[0]
        return self._syz[i]

    def syzygy_inclusion(self, i: int) -> ModuleHom:
        rows, _ = self.kernel_rows(i)
        return ModuleHom(self.syzygy(i), self.term(i - 1), rows.T.copy(), check=False)

    def is_minimal(self, upto: int) -> bool:
        return all(self.differential(i).is_minimal() for i in range(1, upto + 1))


def min_resolution(m: Module, bound: int) -> Resolution:
    """The cached resolution of ``m`` with terms computed through degree ``bound + 1``."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    res = m.resolution
    res.kernel_rows(bound + 1)
    return res


def syzygy(m: Module, i: int = 1) -> Module:
    """``Omega^i M`` (no projective summands are stripped)."""
    if i < 0:
        raise ValueError("syzygy degree must be non-negative")
    return m.resolution.syzygy(i)


def projective_dimension(m: Module, bound: int) -> int | None:
    """Least ``i`` with ``Omega^{i+1} M = 0`` if it is at most ``bound``, else ``None``.

    The zero module is reported with projective dimension 0.
    """
    res = m.resolution
    for i in range(bound + 1):
        if res.kernel_rows(i + 1)[0].shape[0] == 0:
            return i
    return None


# ---------------------------------------------------------------------------
# the A-dual


class _DualData(NamedTuple):
    of: Module  # the module being dualized
    pattern: tuple  # summands of P_0(of), dualized
    rows: np.ndarray  # basis of the dual inside P_0(of)^*
    pivots: list


def a_dual(m: Module) -> Module:
    """``M* = Hom_A(M, A)`` as a module over the opposite algebra.

    It is realized as the kernel of ``f_1^*: P_0^* -> P_1^*``; the element with
    components ``y_a`` is the hom sending the a-th top generator of ``M`` to ``y_a``.
    """
    cached = m.__dict__.get("_a_dual")
    if cached is not None:
        return cached
    F, alg = m.field, m.algebra
    op = alg.opposite()
    if m.pattern is not None:
        out = free_module(op, m.pattern)
        n = out.dim
        # the two standard free modules are each other's duals
        out.__dict__["dual_data"] = _DualData(m, m.pattern, F.eye(n), list(range(n)))
        m.__dict__.setdefault("dual_data", _DualData(out, m.pattern, F.eye(m.dim), list(range(m.dim))))
        out.__dict__["_a_dual"] = m
    else:
        res = m.resolution
        p0 = res.pattern(0)
        f1 = res.differential(1)
        ambient = free_module(op, p0)
        kern = F.kernel(f1.dual().matrix) if f1.source else F.eye(ambient.dim)
        rows, piv = F.rowspace(kern.T)
        out = submodule(ambient, rows)[0] if rows.shape[0] else zero_module(op)
        out.__dict__["dual_data"] = _DualData(m, p0, rows, piv)
    m.__dict__["_a_dual"] = out
    return out


def hom_of_dual_element(mstar: Module, coords: np.ndarray) -> np.ndarray:
    """Matrices ``(n, dim A, dim M)`` of the homs ``M -> A`` given by rows of ``coords``."""
    data = mstar.dual_data
    m, alg = data.of, data.of.algebra
    F = alg.field
    coords = np.asarray(coords).reshape(-1, mstar.dim)
    n = coords.shape[0]
    if m.dim == 0 or n == 0:
        return F.zeros((n, alg.dim, m.dim))
    op = alg.opposite()
    vecs = F.matmul(coords, data.rows)  # in P_0^*
    ys = _vectors_to_elements(op, data.pattern, vecs)  # (n, t, d)
    section = m.cover.section
    so = _offsets(alg, data.pattern)
    out = F.zeros((n, alg.dim, m.dim))
    R = alg.right_regular
    for a, i in enumerate(data.pattern):
        basis = alg.projective_basis(i)[0]
        if basis.shape[0] == 0:
            continue
        # u -> u y_a on A e_i, then composed with the section of the cover
        tens = F.matmul(ys[:, a, :], R.reshape(alg.dim, -1)).reshape(n, alg.dim, alg.dim)
        block = np.stack([F.matmul(F.matmul(t, basis.T), section[so[a]:so[a + 1], :]) for t in tens])
        out = F.add(out, block)
    return out


def _dual_coords(mstar: Module, homs: np.ndarray) -> np.ndarray:
    """Coordinates in ``M*`` (rows) of hom matrices ``(n, dim A, dim M)``."""
    data = mstar.dual_data
    m, alg = data.of, data.of.algebra
    F = alg.field
    n = homs.shape[0]
    if n == 0 or mstar.dim == 0:
        return F.zeros((n, mstar.dim))
    gens = m.cover.generators  # (t, dim M)
    ys = np.stack([F.matmul(h, gens.T).T for h in homs])  # (n, t, d)
    vecs = _elements_to_vectors(alg.opposite(), data.pattern, ys)
    coords = vecs[:, data.pivots]
    if not F.equal(F.matmul(coords, data.rows), vecs):
        raise AssertionError("hom does not lie in the dual module")
    return coords


def dual_hom(f: ModuleHom) -> ModuleHom:
    """``f^*: N^* -> M^*``, ``g -> g o f``, for ``f: M -> N``."""
    ms, ns = a_dual(f.source), a_dual(f.target)
    F = f.source.field
    if ns.dim == 0 or ms.dim == 0:
        return ModuleHom(ns, ms, F.zeros((ms.dim, ns.dim)), check=False)
    homs = hom_of_dual_element(ns, F.eye(ns.dim))
    composed = np.stack([F.matmul(h, f.matrix) for h in homs])
    return ModuleHom(ns, ms, _dual_coords(ms, composed).T.copy(), check=False)


class Phi(NamedTuple):
    hom: ModuleHom
    kernel_dim: int
    cokernel_dim: int

    @property
    def is_mono(self) -> bool:
        return self.kernel_dim == 0

    @property
    def is_epi(self) -> bool:
        return self.cokernel_dim == 0

    @property
    def is_iso(self) -> bool:
        return self.kernel_dim == 0 and self.cokernel_dim == 0


def _evaluation_into_free(m: Module) -> np.ndarray:
    """``q^* phi_M``: ``M -> Q_0^*`` where ``Q_0 -> M^*`` is the projective cover."""
    F, alg = m.field, m.algebra
    mstar = a_dual(m)
    cov = mstar.cover
    total = sum(alg.projective_basis(j)[0].shape[0] for j in cov.pattern)
    if total == 0 or m.dim == 0:
        return F.zeros((total, m.dim))
    homs = hom_of_dual_element(mstar, cov.generators)
    blocks = [homs[c][alg.projective_basis(j)[1], :] for c, j in enumerate(cov.pattern)]
    return np.concatenate(blocks)


def phi(m: Module) -> Phi:
    """The canonical evaluation map ``phi_M: M -> M**``."""
    F = m.field
    mss = a_dual(a_dual(m))
    into = _evaluation_into_free(m)
    piv = mss.dual_data.pivots
    mat = into[piv, :] if mss.dim else F.zeros((0, m.dim))
    hom = ModuleHom(m, mss, mat, check=False)
    r = F.rank(mat) if mat.size else 0
    return Phi(hom, m.dim - r, mss.dim - r)


def transpose(m: Module) -> Module:
    """``Tr M = Cok(f_1^*: P_0^* -> P_1^*)``, a module over the opposite algebra."""
    op = m.algebra.opposite()
    f1 = m.resolution.differential(1)
    if not f1.source:
        return zero_module(op)
    d = f1.dual()
    return quotient(free_module(op, f1.source), d.matrix.T)[0]


def cosyzygy(m: Module) -> Module:
    """``Cok(M -> Q_0^*)`` through the canonical map; defined for torsionless ``M``."""
    ph = phi(m)
    if not ph.is_mono:
        raise NotTorsionless(f"phi_M has a {ph.kernel_dim}-dimensional kernel")
    pattern = a_dual(m).cover.pattern
    target = free_module(m.algebra, pattern)
    return cokernel(ModuleHom(m, target, _evaluation_into_free(m), check=False))[0]


# ---------------------------------------------------------------------------
# Ext


def _dual_rank(res: Resolution, i: int) -> int:
    """Rank of ``f_i^*`` (zero for ``i = 0``)."""
    if i < 1:
        return 0
    f = res.differential(i)
    if not f.source or not f.target:
        return 0
    return res.field.rank(f.dual().matrix)


def _dual_term_dim(res: Resolution, i: int) -> int:
    op = res.algebra.opposite()
    return sum(op.projective_basis(j)[0].shape[0] for j in res.pattern(i))


def ext_dims(m: Module, bound: int, stop_at_first: bool = False) -> list[int]:
    """``[dim Ext^i(M, A) for i in 1..bound]`` from the dualized minimal resolution."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    res = m.resolution
    out = []
    prev = _dual_rank(res, 1)
    for i in range(1, bound + 1):
        nxt = _dual_rank(res, i + 1)
        out.append(_dual_term_dim(res, i) - prev - nxt)
        prev = nxt
        if stop_at_first and out[-1]:
            break
    return out


def _cochain_matrix(res: Resolution, i: int, n: Module) -> np.ndarray:
    """``Hom(P_{i-1}, N) -> Hom(P_i, N)``, with ``Hom(A e_j, N) = e_j N``."""
    F = res.field
    f = res.differential(i)
    src_parts = [n.idempotent_part(j) for j in f.target]
    tgt_parts = [n.idempotent_part(j) for j in f.source]
    so = np.cumsum([0] + [p.shape[0] for p in src_parts])
    to = np.cumsum([0] + [p.shape[0] for p in tgt_parts])
    out = F.zeros((int(to[-1]), int(so[-1])))
    for c, tp in enumerate(tgt_parts):
        for a, sp in enumerate(src_parts):
            x = f.elements[a, c]
            if sp.shape[0] and tp.shape[0] and np.any(x != 0):
                img = n.apply(x, sp)  # rows: images of the basis of e_j N
                out[to[c]:to[c + 1], so[a]:so[a + 1]] = img[:, _pivots(F, tp)].T
    return out


def _pivots(F, rows):
    return F.rowspace(rows)[1]


def ext_dims_into(m: Module, n: Module, bound: int) -> list[int]:
    """``[dim Ext^i(M, N) for i in 0..bound]`` from ``Hom(P_bullet, N)``."""
    res = m.resolution
    F = m.field

    def rank(i):
        if i < 1:
            return 0
        mat = _cochain_matrix(res, i, n)
        return F.rank(mat) if mat.size else 0

    def term(i):
        return sum(n.idempotent_part(j).shape[0] for j in res.pattern(i))

    out = []
    prev = 0
    for i in range(bound + 1):
        nxt = rank(i + 1)
        out.append(term(i) - prev - nxt)
        prev = nxt
    return out


def ext_dims_bruteforce(m: Module, bound: int) -> list[int]:
    """``dim Ext^i(M, A)`` for ``i = 1..bound`` by brute force (test oracle).

    Each ``Hom(P_i, A)`` is solved as a raw intertwiner system against the
    regular module and the coboundary ``g -> g o f_i`` is composed literally,
    so nothing here uses the element-matrix dual.
    """
    from .modrep import hom_basis_naive, regular_module

    F, alg = m.field, m.algebra
    res = m.resolution
    reg = regular_module(alg)

    def dense(pattern):
        p = free_module(alg, pattern)
        return Module(alg, p.action.copy(), dim=p.dim, check=False)

    terms = [dense(res.pattern(i)) for i in range(bound + 2)]
    bases = [np.stack([h.matrix.reshape(-1) for h in hom_basis_naive(t, reg)]) if t.dim else F.zeros((0, 0))
             for t in terms]

    def coboundary_rank(i):  # Hom(P_{i-1}, A) -> Hom(P_i, A)
        src, tgt = bases[i - 1], bases[i]
        if src.shape[0] == 0 or tgt.shape[0] == 0:
            return 0
        f = res.differential(i).matrix
        d = alg.dim
        images = np.stack([F.matmul(g.reshape(d, -1), f).reshape(-1) for g in src])
        sol = F.solve(tgt.T, images.T)
        if sol is None:
            raise AssertionError("composite is not a homomorphism")
        return F.rank(sol)

    return [bases[i].shape[0] - coboundary_rank(i) - coboundary_rank(i + 1) for i in range(1, bound + 1)]


# ---------------------------------------------------------------------------
# chain maps


def _lift_generators(alg: Algebra, pattern, target_images: np.ndarray, onto: np.ndarray,
                     target_pattern) -> ProjMap:
    """ProjMap ``F(pattern) -> F(target_pattern)`` with ``onto @ image(gen_a) = target_images[a]``."""
    F = alg.field
    if not pattern:
        return _empty_map(alg, (), target_pattern)
    sol = F.solve(onto, target_images.T)
    if sol is None:
        raise ComplexError("map does not lift through the resolution")
    ambient = free_module(alg, target_pattern)
    vecs = np.stack([ambient.apply(alg.idempotents[i], sol[:, a].reshape(1, -1))[0]
                     for a, i in enumerate(pattern)])
    el = _vectors_to_elements(alg, target_pattern, vecs).transpose(1, 0, 2)
    return ProjMap(alg, pattern, target_pattern, el)


def lift_chain_map(alpha: ModuleHom, upto: int) -> list[ProjMap]:
    """Lifts ``alpha_i: P_i(M) -> P_i(N)`` of ``alpha: M -> N`` for ``0 <= i <= upto``."""
    m, n = alpha.source, alpha.target
    alg, F = m.algebra, m.field
    rm, rn = m.resolution, n.resolution
    maps = []
    images = F.matmul(m.cover.generators, alpha.matrix.T)
    maps.append(_lift_generators(alg, rm.pattern(0), images, n.cover.matrix, rn.pattern(0)))
    for i in range(1, upto + 1):
        f, g = rm.differential(i), rn.differential(i)
        prev = maps[-1]
        gens = _elements_to_vectors(alg, f.target, f.elements.transpose(1, 0, 2))
        images = F.matmul(gens, prev.matrix.T) if gens.shape[0] else F.zeros((0, prev.matrix.shape[0]))
        onto = g.matrix if g.source else F.zeros((g.matrix.shape[0], 0))
        maps.append(_lift_generators(alg, f.source, images, onto, g.source))
    return maps


# ---------------------------------------------------------------------------
# complexes of standard projectives


class Complex:
    """``P_i`` for ``lo <= i <= hi`` with ``f_i: P_i -> P_{i-1}`` for ``lo < i <= hi``."""

    def __init__(self, algebra: Algebra, lo: int, hi: int, patterns: dict, differentials: dict,
                 check: bool = True):
        if hi < lo:
            raise ComplexError("empty window")
        self.algebra = algebra
        self.lo, self.hi = lo, hi
        self.patterns = {i: tuple(patterns[i]) for i in range(lo, hi + 1)}
        self.differentials = {}
        for i in range(lo + 1, hi + 1):
            f = differentials[i]
            if f.source != self.patterns[i] or f.target != self.patterns[i - 1]:
                raise ComplexError(f"differential {i} has the wrong source or target")
            self.differentials[i] = f
        if check:
            self.verify()

    def __repr__(self):
        ranks = " ".join(str(len(self.patterns[i])) for i in range(self.hi, self.lo - 1, -1))
        return f"<Complex [{self.lo}, {self.hi}] ranks {ranks}>"

    @property
    def field(self):
        return self.algebra.field

    @property
    def side(self) -> str:
        return "right" if self.algebra.is_opposite else "left"

    def term(self, i: int) -> Module:
        return free_module(self.algebra, self.patterns[i])

    def matrix(self, i: int) -> np.ndarray:
        return self.differentials[i].matrix

    def verify(self) -> None:
        F = self.field
        for i in range(self.lo + 2, self.hi + 1):
            a, b = self.matrix(i - 1), self.matrix(i)
            if a.size and b.size and not F.is_zero(F.matmul(a, b)):
                raise ComplexError(f"f_{i - 1} f_{i} != 0")

    def _rank(self, i: int) -> int:
        if i <= self.lo or i > self.hi:
            return 0
        m = self.matrix(i)
        return self.field.rank(m) if m.size else 0

    def homology_dim(self, i: int) -> int:
        if not self.lo < i < self.hi:
            raise ComplexError(f"homology at {i} needs both neighbours inside [{self.lo}, {self.hi}]")
        return self.term(i).dim - self._rank(i) - self._rank(i + 1)

    def homology(self, i: int) -> Module:
        """``H_i = Ker f_i / Im f_{i+1}`` as a module."""
        self.homology_dim(i)
        F = self.field
        p = self.term(i)
        a = self.matrix(i)
        krows = F.rowspace(F.kernel(a).T)[0] if a.shape[0] else F.eye(p.dim)
        if krows.shape[0] == 0:
            return zero_module(self.algebra)
        k, _ = submodule(p, krows)
        img = self.matrix(i + 1).T
        piv = F.rowspace(krows)[1]
        return quotient(k, img[:, piv] if img.size else F.zeros((0, k.dim)))[0]

    def interior(self):
        return range(self.lo + 1, self.hi)

    def is_acyclic_in_window(self, skip=()) -> bool:
        return all(self.homology_dim(i) == 0 for i in self.interior() if i not in skip)

    def is_minimal(self) -> bool:
        return all(f.is_minimal() for f in self.differentials.values())

    def dual(self) -> "Complex":
        """``P_bullet^*`` re-indexed so that ``D_j = P_{-j}^*`` with ``D_j -> D_{j-1}``."""
        op = self.algebra.opposite()
        pats = {j: self.patterns[-j] for j in range(-self.hi, -self.lo + 1)}
        diffs = {j: self.differentials[-j + 1].dual() for j in range(-self.hi + 1, -self.lo + 1)}
        return Complex(op, -self.hi, -self.lo, pats, diffs, check=False)

    def shift(self, k: int) -> "Complex":
        """The complex with ``P'_i = P_{i+k}``."""
        pats = {i - k: p for i, p in self.patterns.items()}
        diffs = {i - k: f for i, f in self.differentials.items()}
        return Complex(self.algebra, self.lo - k, self.hi - k, pats, diffs, check=False)

    def truncate(self, lo: int, hi: int) -> "Complex":
        if lo < self.lo or hi > self.hi:
            raise ComplexError("truncation window must lie inside the complex")
        return Complex(self.algebra, lo, hi, self.patterns,
                       {i: self.differentials[i] for i in range(lo + 1, hi + 1)}, check=False)

    def with_differential(self, i: int, f: ProjMap) -> "Complex":
        diffs = dict(self.differentials)
        diffs[i] = f
        return Complex(self.algebra, self.lo, self.hi, self.patterns, diffs, check=False)

    def to_dict(self, algebra_ref=None) -> dict:
        from .algebra import dump_algebra

        return {
            "algebra": algebra_ref if algebra_ref is not None else dump_algebra(self.algebra),
            "side": self.side,
            "window": [self.lo, self.hi],
            "objects": {str(i): list(self.patterns[i]) for i in range(self.lo, self.hi + 1)},
            "differentials": {str(i): self.differentials[i].to_dict() for i in range(self.lo + 1, self.hi + 1)},
        }

    @classmethod
    def from_dict(cls, data: dict, algebra: Algebra | None = None) -> "Complex":
        from .algebra import load_algebra

        alg = algebra if algebra is not None else load_algebra(data["algebra"])
        if data.get("side", "left") == "right" and not alg.is_opposite:
            alg = alg.opposite()
        lo, hi = data["window"]
        pats = {int(i): tuple(p) for i, p in data["objects"].items()}
        F = alg.field
        diffs = {}
        for key, f in data["differentials"].items():
            el = F.array(f["elements"]) if len(f["target"]) and len(f["source"]) else F.zeros((len(f["target"]), len(f["source"]), alg.dim))
            diffs[int(key)] = ProjMap(alg, f["source"], f["target"], el)
        return cls(alg, lo, hi, pats, diffs)


def complex_isomorphism(c1: Complex, c2: Complex, maps: dict) -> bool:
    """Check that ``maps[i]: P_i -> P'_i`` are isomorphisms commuting with the differentials."""
    F = c1.field
    if (c1.lo, c1.hi) != (c2.lo, c2.hi):
        return False
    for i in range(c1.lo, c1.hi + 1):
        mat = maps[i].matrix
        if mat.shape[0] != mat.shape[1] or (mat.size and F.rank(mat) != mat.shape[0]):
            return False
    for i in range(c1.lo + 1, c1.hi + 1):
        lhs = F.matmul(maps[i - 1].matrix, c1.matrix(i))
        rhs = F.matmul(c2.matrix(i), maps[i].matrix)
        if not F.equal(lhs, rhs):
            return False
    return True


"""Finite-dimensional modules over a split basic algebra.

A module is a list of action matrices, one per algebra basis element.  Right
modules are left modules over ``algebra.opposite()``; the ``side`` property
reports which one we have.  Standard projectives ``P = A e_{i_1} + ... +
A e_{i_t}`` remember their summand ``pattern`` so that maps between them can
be kept as matrices of algebra elements (:class:`ProjMap`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .algebra import Algebra
from .linalg import Field, FieldMismatch, PrimeField, field_from_spec

__all__ = [
    "Module",
    "ModuleHom",
    "ProjMap",
    "ModuleError",
    "IsoResult",
    "ISOMORPHIC",
    "NOT_ISOMORPHIC",
    "INCONCLUSIVE",
    "free_module",
    "projective",
    "regular_module",
    "simple",
    "zero_module",
    "k_dual",
    "submodule",
    "quotient",
    "hom_basis",
    "hom_basis_naive",
    "hom_dim",
    "kernel",
    "cokernel",
    "image",
    "direct_sum",
    "radical_of",
    "top_of",
    "socle_of",
    "is_projective",
    "is_injective",
    "projective_cover",
    "is_isomorphic",
    "reduce",
    "Reduction",
    "identity",
    "zero_hom",
    "projmap_from_matrix",
    "restrict_scalars",
    "module_from_dict",
]


class ModuleError(ValueError):
    """Invalid module data or an operation on incompatible modules."""


# ---------------------------------------------------------------------------
# small subspace helpers (row-vector convention, RREF bases)


def _coords(rows_pivots, vectors):
    """Coordinates of row vectors lying in the span of an RREF basis."""
    _, pivots = rows_pivots
    return vectors[:, pivots]


def _complement_indices(F: Field, base: np.ndarray, candidates: np.ndarray) -> list[int]:
    """Indices of a greedy maximal subset of ``candidates`` independent modulo ``base``."""
    if candidates.shape[0] == 0:
        return []
    stacked = np.concatenate([base, candidates]).T
    _, pivots = F.rref(stacked)
    b = base.shape[0]
    return [p - b for p in pivots if p >= b]


def _runs(pattern):
    """Group consecutive equal summand indices: yields (idempotent, start, count)."""
    start = 0
    for i, grp in itertools.groupby(pattern):
        n = len(list(grp))
        yield i, start, n
        start += n


# ---------------------------------------------------------------------------
# modules


class Module:
    """A left module over ``algebra`` (right modules: ``algebra`` is an opposite)."""

    def __init__(self, algebra: Algebra, action=None, *, dim: int | None = None, pattern=None,
                 check: bool = True, name: str | None = None):
        self.algebra = algebra
        self.field = algebra.field
        self.name = name
        self.pattern = tuple(pattern) if pattern is not None else None
        if action is not None and pattern is not None:
            raise ModuleError("a pattern marks a standard free module; do not pass action matrices with it")
        if action is None:
            if self.pattern is None:
                raise ModuleError("action matrices are required")
            self.dim = sum(algebra.projective_basis(i)[0].shape[0] for i in self.pattern)
        else:
            act = self.field.array(action)
            d = algebra.dim
            if act.size == 0:
                n = dim if dim is not None else (act.shape[-1] if act.ndim == 3 else 0)
                act = self.field.zeros((d, n, n))
            if act.ndim != 3 or act.shape[0] != d or act.shape[1] != act.shape[2]:
                raise ModuleError(f"expected {d} square action matrices, got shape {act.shape}")
            self.__dict__["action"] = act
            self.dim = act.shape[1]
            if check:
                self.verify()

    def __repr__(self):
        extra = f" pattern={list(self.pattern)}" if self.pattern is not None else ""
        return f"<{self.side} Module dim={self.dim}{extra} over {self.algebra.name or 'A'}>"

    @property
    def side(self) -> str:
        return "right" if self.algebra.is_opposite else "left"

    @cached_property
    def action(self) -> np.ndarray:
        # only standard projectives reach this lazily
        F, alg = self.field, self.algebra
        d, n = alg.dim, self.dim
        act = F.zeros((d, n, n))
        pos = 0
        for i in self.pattern:
            rows, piv = alg.projective_basis(i)
            k = rows.shape[0]
            for b in range(d):
                act[b, pos:pos + k, pos:pos + k] = F.matmul(alg.left_regular[b], rows.T)[piv, :]
            pos += k
        return act

    def verify(self) -> None:
        F, alg = self.field, self.algebra
        d, n = alg.dim, self.dim
        if n == 0:
            return
        act = self.action
        if not F.equal(self.act(alg.unit), F.eye(n)):
            raise ModuleError("unit acts as a non-identity")
        lhs = F.matmul(act.reshape(d * n, n), act.transpose(1, 0, 2).reshape(n, d * n))
        lhs = lhs.reshape(d, n, d, n).transpose(0, 2, 1, 3)
        rhs = F.matmul(alg.mul.reshape(d * d, d), act.reshape(d, n * n)).reshape(d, d, n, n)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            i, j = bad[0][:2]
            raise ModuleError(f"action is not multiplicative on b{i} b{j}")

    # -- acting -------------------------------------------------------
    def act(self, x) -> np.ndarray:
        """Matrix of the algebra element ``x`` (coefficient vector)."""
        d, n = self.algebra.dim, self.dim
        return self.field.matmul(np.asarray(x).reshape(1, d), self.action.reshape(d, n * n)).reshape(n, n)

    def apply(self, x, rows: np.ndarray) -> np.ndarray:
        """``x . v`` for every row ``v`` of ``rows``."""
        F = self.field
        if rows.shape[0] == 0 or self.dim == 0:
            return F.zeros(rows.shape)
        if self.pattern is None:
            return F.matmul(rows, self.act(x).T)
        alg = self.algebra
        out = F.zeros(rows.shape)
        pos = 0
        for i, start, count in _runs(self.pattern):
            basis, piv = alg.projective_basis(i)
            k = basis.shape[0]
            block = F.matmul(alg.left_matrix(x), basis.T)[piv, :]  # k x k
            sl = slice(pos, pos + k * count)
            chunk = rows[:, sl].reshape(rows.shape[0] * count, k)
            out[:, sl] = F.matmul(chunk, block.T).reshape(rows.shape[0], k * count)
            pos += k * count
        return out

    def images_of_generator(self, i: int, m: np.ndarray) -> np.ndarray:
        """Columns ``u . m`` for the basis ``u`` of ``A e_i``: the map ``A e_i -> M`` at ``m``."""
        F, alg = self.field, self.algebra
        basis, _ = alg.projective_basis(i)
        if self.pattern is not None:
            if basis.shape[0] == 0:
                return F.zeros((self.dim, 0))
            return np.concatenate([self.apply(u, m.reshape(1, -1)) for u in basis]).T
        d, n = alg.dim, self.dim
        am = F.matmul(self.action.reshape(d * n, n), m.reshape(n, 1)).reshape(d, n)
        return F.matmul(basis, am).T

    def idempotent_part(self, i: int) -> np.ndarray:
        """RREF basis (rows) of ``e_i M``."""
        cache = self.__dict__.setdefault("_epart", {})
        if i not in cache:
            e = self.algebra.idempotents[i]
            cache[i] = self.field.rowspace(self.apply(e, self.field.eye(self.dim)))[0]
        return cache[i]

    @cached_property
    def radical_rows(self) -> np.ndarray:
        """RREF basis of ``J M``."""
        F = self.field
        J = self.algebra.radical
        if J.shape[0] == 0 or self.dim == 0:
            return F.zeros((0, self.dim))
        eye = F.eye(self.dim)
        return F.rowspace(np.concatenate([self.apply(r, eye) for r in J]))[0]

    @cached_property
    def socle_rows(self) -> np.ndarray:
        F = self.field
        J = self.algebra.radical
        if J.shape[0] == 0 or self.dim == 0:
            return F.eye(self.dim)
        stacked = np.concatenate([self.act(r) for r in J])
        return F.rowspace(F.kernel(stacked).T)[0]

    def top_multiplicities(self) -> tuple[int, ...]:
        F = self.field
        rad = self.radical_rows
        out = []
        for i in range(self.algebra.r):
            part = self.idempotent_part(i)
            out.append(len(_complement_indices(F, rad, part)))
        return tuple(out)

    def dimension_signature(self) -> tuple:
        """Cheap isomorphism invariants: dimensions of idempotent parts, radical layers, socle."""
        layers = []
        cur = self
        while cur.dim:
            layers.append(cur.dim)
            if cur.radical_rows.shape[0] == cur.dim:
                break
            cur = submodule(cur, cur.radical_rows)[0]
        return (
            self.dim,
            tuple(self.idempotent_part(i).shape[0] for i in range(self.algebra.r)),
            self.top_multiplicities(),
            tuple(layers),
            self.socle_rows.shape[0],
        )

    # -- cached homological data -------------------------------------
    @cached_property
    def cover(self) -> "_Cover":
        return _compute_cover(self)

    @cached_property
    def resolution(self):
        from .complexes import Resolution

        return Resolution(self)

    def to_dict(self, algebra_ref=None, inline: bool = False) -> dict:
        from .algebra import dump_algebra

        return {
            "algebra": algebra_ref if algebra_ref is not None else dump_algebra(self.algebra, inline=inline),
            "side": self.side,
            "dim": self.dim,
            "action": self.field.to_json(self.action),
        }


class _Cover(NamedTuple):
    pattern: tuple
    generators: np.ndarray  # rows, one per summand, in module coordinates
    matrix: np.ndarray  # dim M x dim P
    section: np.ndarray  # dim P x dim M, matrix @ section = identity


def _compute_cover(m: Module) -> _Cover:
    F, alg = m.field, m.algebra
    if m.pattern is not None:
        # standard generators e_i of each summand
        gens = F.zeros((len(m.pattern), m.dim))
        pos = 0
        for a, i in enumerate(m.pattern):
            basis, piv = alg.projective_basis(i)
            gens[a, pos:pos + basis.shape[0]] = alg.idempotents[i][piv]
            pos += basis.shape[0]
        eye = F.eye(m.dim)
        return _Cover(m.pattern, gens, eye, eye)
    pattern, gens = [], []
    rad = m.radical_rows
    for i in range(alg.r):
        part = m.idempotent_part(i)
        for s in _complement_indices(F, rad, part):
            pattern.append(i)
            gens.append(part[s])
    gens = np.array(gens, dtype=F.dtype).reshape(len(gens), m.dim)
    cols = [m.images_of_generator(i, g) for i, g in zip(pattern, gens)]
    matrix = np.concatenate(cols, axis=1) if cols else F.zeros((m.dim, 0))
    section = F.solve(matrix, F.eye(m.dim))
    if section is None:
        raise AssertionError("projective cover is not surjective")
    return _Cover(tuple(pattern), gens, matrix, section)


def free_module(algebra: Algebra, pattern) -> Module:
    """The standard projective ``A e_{i_1} + ... + A e_{i_t}``.

    One object per (algebra, pattern), so duals and resolutions of equal
    standard projectives are shared.
    """
    pattern = tuple(int(i) for i in pattern)
    cache = algebra.__dict__.setdefault("_free", {})
    if pattern not in cache:
        for i in pattern:
            if not 0 <= i < algebra.r:
                raise ModuleError(f"idempotent index {i} out of range 0..{algebra.r - 1}")
        cache[pattern] = Module(algebra, pattern=pattern)
    return cache[pattern]


def projective(algebra: Algebra, i: int) -> Module:
    """The indecomposable projective ``P(i) = A e_i``."""
    return free_module(algebra, (i,))


def regular_module(algebra: Algebra) -> Module:
    return Module(algebra, algebra.left_regular, check=False, name="A")


def simple(algebra: Algebra, i: int) -> Module:
    if not 0 <= i < algebra.r:
        raise ModuleError(f"simple index {i} out of range 0..{algebra.r - 1}")
    act = algebra.characters[:, i].reshape(algebra.dim, 1, 1)
    return Module(algebra, act, check=False, name=f"S{i + 1}")


def zero_module(algebra: Algebra) -> Module:
    return Module(algebra, algebra.field.zeros((algebra.dim, 0, 0)), check=False, name="0")


def k_dual(m: Module) -> Module:
    """``D M = Hom_k(M, k)``, a module over the opposite algebra."""
    return Module(m.algebra.opposite(), m.action.transpose(0, 2, 1).copy(), check=False)


def submodule(m: Module, rows: np.ndarray) -> tuple[Module, "ModuleHom"]:
    """The submodule spanned by ``rows`` (must be closed under the action)."""
    F = m.field
    basis, piv = F.rowspace(np.asarray(rows, dtype=F.dtype).reshape(-1, m.dim))
    k, d = basis.shape[0], m.algebra.dim
    act = F.zeros((d, k, k))
    if k:
        for b in range(d):
            img = m.apply(m.algebra.basis_vector(b), basis)
            act[b] = img[:, piv].T
            if not F.equal(F.matmul(act[b].T, basis), img):
                raise ModuleError("rows do not span a submodule")
    sub = Module(m.algebra, act, dim=k, check=False)
    return sub, ModuleHom(sub, m, basis.T.copy(), check=False)


def quotient(m: Module, rows: np.ndarray) -> tuple[Module, "ModuleHom"]:
    """``M / U`` for the submodule ``U`` spanned by ``rows``."""
    F = m.field
    n = m.dim
    basis, piv = F.rowspace(np.asarray(rows, dtype=F.dtype).reshape(-1, n))
    keep = [c for c in range(n) if c not in set(piv)]

    def project(vecs):  # rows in M -> rows in M/U
        if basis.shape[0]:
            vecs = F.sub(vecs, F.matmul(vecs[:, piv], basis))
        return vecs[:, keep]

    k, d = len(keep), m.algebra.dim
    act = F.zeros((d, k, k))
    eye = F.eye(n)
    reps = eye[keep]
    if k:
        for b in range(d):
            act[b] = project(m.apply(m.algebra.basis_vector(b), reps)).T
    q = Module(m.algebra, act, dim=k, check=False)
    return q, ModuleHom(m, q, project(eye).T.copy(), check=False)


# ---------------------------------------------------------------------------
# homomorphisms


class ModuleHom:
    """An intertwiner; ``matrix`` has shape ``(target.dim, source.dim)``."""

    def __init__(self, source: Module, target: Module, matrix, check: bool = True):
        if source.algebra is not target.algebra:
            raise ModuleError("homomorphism between modules over different algebras (or sides)")
        self.source, self.target = source, target
        F = source.field
        self.matrix = F.array(matrix).reshape(target.dim, source.dim) if not isinstance(matrix, np.ndarray) else matrix.reshape(target.dim, source.dim)
        if check:
            self.verify()

    def __repr__(self):
        return f"<ModuleHom {self.source.dim} -> {self.target.dim}>"

    def verify(self) -> None:
        F, alg = self.source.field, self.source.algebra
        for b in range(alg.dim):
            x = alg.basis_vector(b)
            if not F.equal(F.matmul(self.matrix, self.source.act(x)), F.matmul(self.target.act(x), self.matrix)):
                raise ModuleError(f"matrix does not intertwine the action of {alg.labels[b]}")

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        """``self o other``."""
        if other.target is not self.source:
            raise ModuleError("composition of non-composable homomorphisms")
        return ModuleHom(other.source, self.target, self.source.field.matmul(self.matrix, other.matrix), check=False)

    __matmul__ = compose

    @property
    def rank(self) -> int:
        return self.source.field.rank(self.matrix)

    def is_zero(self) -> bool:
        return self.source.field.is_zero(self.matrix)

    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.rank == self.source.dim


def identity(m: Module) -> ModuleHom:
    return ModuleHom(m, m, m.field.eye(m.dim), check=False)


def zero_hom(m: Module, n: Module) -> ModuleHom:
    return ModuleHom(m, n, m.field.zeros((n.dim, m.dim)), check=False)



def _offsets(algebra: Algebra, pattern) -> np.ndarray:
    sizes = [algebra.projective_basis(i)[0].shape[0] for i in pattern]
    return np.concatenate([[0], np.cumsum(sizes, dtype=np.int64)]).astype(np.int64)


def _transfer_tensor(algebra: Algebra, i: int, j: int) -> np.ndarray:
    """``T[b]``: matrix of ``A e_i -> A e_j, u -> u b_b`` read in the standard bases."""
    cache = algebra.__dict__.setdefault("_transfer", {})
    if (i, j) not in cache:
        F = algebra.field
        bi = algebra.projective_basis(i)[0]
        _, pj = algebra.projective_basis(j)
        R = algebra.right_regular
        cache[i, j] = np.stack([F.matmul(R[b], bi.T)[pj, :] for b in range(algebra.dim)])
    return cache[i, j]


def _elements_to_matrix(alg: Algebra, source, target, elements) -> np.ndarray:
    F = alg.field
    so, to = _offsets(alg, source), _offsets(alg, target)
    out = F.zeros((int(to[-1]), int(so[-1])))
    if not source or not target:
        return out
    src, tgt = np.asarray(source), np.asarray(target)
    nonzero = np.any(elements != 0, axis=2)
    for i in sorted(set(source)):
        for j in sorted(set(target)):
            bs, as_ = np.nonzero(nonzero & (tgt[:, None] == j) & (src[None, :] == i))
            if bs.size == 0:
                continue
            T = _transfer_tensor(alg, i, j)
            kj, ki = T.shape[1], T.shape[2]
            if kj == 0 or ki == 0:
                continue
            blocks = F.matmul(elements[bs, as_], T.reshape(alg.dim, kj * ki)).reshape(-1, kj, ki)
            rows = to[bs][:, None, None] + np.arange(kj)[None, :, None]
            cols = so[as_][:, None, None] + np.arange(ki)[None, None, :]
            out[rows, cols] = blocks
    return out


def _vectors_to_elements(alg: Algebra, pattern, vectors: np.ndarray) -> np.ndarray:
    """Split free-module vectors into per-summand algebra elements: ``(n, t, d)``."""
    F = alg.field
    off = _offsets(alg, pattern)
    out = F.zeros((vectors.shape[0], len(pattern), alg.dim))
    for b, i in enumerate(pattern):
        basis = alg.projective_basis(i)[0]
        if basis.shape[0]:
            out[:, b, :] = F.matmul(vectors[:, off[b]:off[b + 1]], basis)
    return out


def _elements_to_vectors(alg: Algebra, pattern, elements: np.ndarray) -> np.ndarray:
    """Inverse of :func:`_vectors_to_elements` (elements must lie in the summands)."""
    F = alg.field
    off = _offsets(alg, pattern)
    out = F.zeros((elements.shape[0], int(off[-1])))
    for b, i in enumerate(pattern):
        _, piv = alg.projective_basis(i)
        out[:, off[b]:off[b + 1]] = elements[:, b, piv]
    return out


def projmap_from_matrix(alg: Algebra, source, target, matrix: np.ndarray) -> "ProjMap":
    """Recover the element matrix of a module map between standard projectives."""
    F = alg.field
    so = _offsets(alg, source)
    gens = F.zeros((len(source), int(so[-1])))
    for a, i in enumerate(source):
        basis, piv = alg.projective_basis(i)
        gens[a, so[a]:so[a + 1]] = alg.idempotents[i][piv]
    images = F.matmul(gens, matrix.T) if len(source) else F.zeros((0, matrix.shape[0]))
    el = _vectors_to_elements(alg, target, images)  # (source, target, d)
    return ProjMap(alg, source, target, el.transpose(1, 0, 2))


class ProjMap:
    """A map between standard projectives as a matrix of algebra elements.

    ``elements[b, a]`` is the image of the generator of source summand ``a``
    in target summand ``b``; it lies in ``e_{source[a]} A e_{target[b]}``.
    """

    def __init__(self, algebra: Algebra, source, target, elements):
        self.algebra = algebra
        self.source = tuple(source)
        self.target = tuple(target)
        d = algebra.dim
        el = np.asarray(elements, dtype=algebra.field.dtype)
        self.elements = el.reshape(len(self.target), len(self.source), d)

    def __repr__(self):
        return f"<ProjMap {list(self.source)} -> {list(self.target)}>"

    @cached_property
    def matrix(self) -> np.ndarray:
        """The k-linear matrix in the standard bases of the two free modules."""
        alg = self.algebra
        return _elements_to_matrix(alg, self.source, self.target, self.elements)

    def dual(self) -> "ProjMap":
        """``Hom(-, A)`` of this map: the transposed element matrix over the opposite algebra."""
        return ProjMap(self.algebra.opposite(), self.target, self.source, self.elements.transpose(1, 0, 2))

    def compose(self, other: "ProjMap") -> "ProjMap":
        """``self o other``: generators of ``other.source`` go through ``other`` then ``self``."""
        if other.target != self.source or other.algebra is not self.algebra:
            raise ModuleError("composition of non-composable projective maps")
        alg, F = self.algebra, self.algebra.field
        d = alg.dim
        out = F.zeros((len(self.target), len(other.source), d))
        for c in range(len(other.source)):
            for b in range(len(self.target)):
                acc = F.zeros(d)
                for a in range(len(self.source)):
                    y, x = other.elements[a, c], self.elements[b, a]
                    if np.any(y != 0) and np.any(x != 0):
                        acc = F.add(acc, alg.product(y, x))
                out[b, c] = acc
        return ProjMap(alg, other.source, self.target, out)

    def is_zero(self) -> bool:
        return not np.any(self.elements != 0)

    def is_minimal(self) -> bool:
        """All entries lie in the radical (image inside the radical of the target)."""
        F, alg = self.algebra.field, self.algebra
        chi = alg.characters
        flat = self.elements.reshape(-1, alg.dim)
        return flat.shape[0] == 0 or F.is_zero(F.matmul(flat, chi))

    def zeroed(self) -> "ProjMap":
        return ProjMap(self.algebra, self.source, self.target, self.algebra.field.zeros(self.elements.shape))

    def hom(self, source: Module | None = None, target: Module | None = None) -> ModuleHom:
        src = source or free_module(self.algebra, self.source)
        tgt = target or free_module(self.algebra, self.target)
        return ModuleHom(src, tgt, self.matrix, check=False)

    def to_dict(self) -> dict:
        return {
            "source": list(self.source),
            "target": list(self.target),
            "elements": self.algebra.field.to_json(self.elements),
            "matrix": self.algebra.field.to_json(self.matrix),
        }


# ---------------------------------------------------------------------------
# Hom spaces


def _check_same(m: Module, n: Module):
    if m.field != n.field:
        raise FieldMismatch("modules over different fields")
    if m.algebra is not n.algebra:
        raise ModuleError("modules over different algebras or sides")


def _hom_matrices(m: Module, n: Module, values: list[np.ndarray]) -> np.ndarray:
    """Stacked hom matrices ``M -> N``; ``values[a][s]`` is where hom ``s`` sends cover generator ``a``."""
    F, alg = m.field, m.algebra
    cov = m.cover
    cols = []
    for i, v in zip(cov.pattern, values):
        for u in alg.projective_basis(i)[0]:
            cols.append(F.matmul(v, n.act(u).T))  # row s: u . values[a][s]
    g = np.stack(cols, axis=2)  # homs x dim N x dim P
    k = g.shape[0]
    return F.matmul(g.reshape(k * n.dim, -1), cov.section).reshape(k, n.dim, m.dim)


def _hom_solutions(m: Module, n: Module):
    """Kernel of the relation system: one column per hom, in coordinates of ``e_i N`` per generator."""
    F = m.field
    cov = m.cover
    parts = [n.idempotent_part(i) for i in cov.pattern]
    offsets = np.cumsum([0] + [p.shape[0] for p in parts])
    nvars = int(offsets[-1])
    if m.dim == 0 or n.dim == 0 or nvars == 0:
        return F.zeros((0, 0)), parts, offsets
    f1 = m.resolution.differential(1)
    eqs = []
    for c in range(len(f1.source)):
        # sum_a E[a, c] . n_a = 0
        block = F.zeros((n.dim, nvars))
        for a in range(len(cov.pattern)):
            x = f1.elements[a, c]
            if np.any(x != 0) and parts[a].shape[0]:
                block[:, offsets[a]:offsets[a + 1]] = F.matmul(n.act(x), parts[a].T)
        eqs.append(block)
    sol = F.kernel(np.concatenate(eqs)) if eqs else F.eye(nvars)
    return sol, parts, offsets


def hom_basis(m: Module, n: Module) -> list[ModuleHom]:
    """A basis of ``Hom_A(M, N)``.

    A hom is determined by where the top generators of ``M`` go (into ``e_i N``);
    the relations of ``M`` (its first syzygy) cut out the admissible choices.
    """
    _check_same(m, n)
    sol = _hom_solutions(m, n)
    if sol[0].shape[1] == 0:
        return []
    mats = _combine_homs(m, n, sol, m.field.eye(sol[0].shape[1]))
    return [ModuleHom(m, n, mats[k].copy(), check=False) for k in range(mats.shape[0])]


def _combine_homs(m: Module, n: Module, solutions, coeffs: np.ndarray) -> np.ndarray:
    """Matrices of the homs ``sum_j coeffs[k, j] b_j`` for the solution basis ``b`` of ``_hom_solutions``."""
    F = m.field
    sol, parts, offsets = solutions
    t = F.matmul(coeffs, sol.T)
    values = [F.matmul(t[:, offsets[a]:offsets[a + 1]], parts[a]) for a in range(len(parts))]
    return _hom_matrices(m, n, values)


def hom_dim(m: Module, n: Module) -> int:
    _check_same(m, n)
    return _hom_solutions(m, n)[0].shape[1]


def hom_basis_naive(m: Module, n: Module) -> list[ModuleHom]:
    """Brute-force intertwiner system over every basis element (reference oracle)."""
    _check_same(m, n)
    F, alg = m.field, m.algebra
    p, q = n.dim, m.dim
    if p == 0 or q == 0:
        return []
    rows = []
    for b in range(alg.dim):
        x = alg.basis_vector(b)
        am, an = m.act(x), n.act(x)
        # vec(X am - an X) with X of shape (p, q), row-major vec
        rows.append(F.sub(np.kron(F.eye(p), am.T), np.kron(an, F.eye(q))))
    sol = F.kernel(np.concatenate(rows))
    return [ModuleHom(m, n, sol[:, k].reshape(p, q).copy(), check=False) for k in range(sol.shape[1])]


# ---------------------------------------------------------------------------
# kernels, cokernels, sums, radical layers


def kernel(f: ModuleHom) -> tuple[Module, ModuleHom]:
    F = f.source.field
    return submodule(f.source, F.kernel(f.matrix).T)


def image(f: ModuleHom) -> tuple[Module, ModuleHom, ModuleHom]:
    F = f.source.field
    im, inc = submodule(f.target, f.matrix.T)
    basis = inc.matrix.T
    piv = F.rowspace(basis)[1]
    corestriction = ModuleHom(f.source, im, f.matrix[piv, :], check=False)
    return im, inc, corestriction


def cokernel(f: ModuleHom) -> tuple[Module, ModuleHom]:
    return quotient(f.target, f.matrix.T)


def direct_sum(ms: list[Module], algebra: Algebra | None = None):
    """Block-diagonal sum with its injections and projections."""
    if not ms:
        if algebra is None:
            raise ModuleError("empty direct sum needs an algebra")
        z = zero_module(algebra)
        return z, [], []
    alg = ms[0].algebra
    for m in ms:
        _check_same(ms[0], m)
    F = alg.field
    n = sum(m.dim for m in ms)
    if all(m.pattern is not None for m in ms):
        total = free_module(alg, sum((m.pattern for m in ms), ()))
    else:
        act = F.zeros((alg.dim, n, n))
        pos = 0
        for m in ms:
            act[:, pos:pos + m.dim, pos:pos + m.dim] = m.action
            pos += m.dim
        total = Module(alg, act, dim=n, check=False)
    inj, proj = [], []
    pos = 0
    for m in ms:
        e = F.zeros((n, m.dim))
        e[pos:pos + m.dim] = F.eye(m.dim)
        inj.append(ModuleHom(m, total, e, check=False))
        proj.append(ModuleHom(total, m, e.T.copy(), check=False))
        pos += m.dim
    return total, inj, proj


def radical_of(m: Module):
    return submodule(m, m.radical_rows)


def top_of(m: Module):
    return quotient(m, m.radical_rows)


def socle_of(m: Module):
    return submodule(m, m.socle_rows)


def projective_cover(m: Module) -> tuple[Module, ModuleHom]:
    cov = m.cover
    p = free_module(m.algebra, cov.pattern)
    return p, ModuleHom(p, m, cov.matrix, check=False)


def is_projective(m: Module) -> bool:
    return sum(m.algebra.projective_basis(i)[0].shape[0] for i in m.cover.pattern) == m.dim


def is_injective(m: Module) -> bool:
    return is_projective(k_dual(m))


# ---------------------------------------------------------------------------
# isomorphism testing

ISOMORPHIC = "isomorphic"
NOT_ISOMORPHIC = "not isomorphic"
INCONCLUSIVE = "inconclusive"


@dataclass
class IsoResult:
    status: str
    hom: ModuleHom | None = None
    reason: str = ""

    @property
    def inconclusive(self) -> bool:
        return self.status == INCONCLUSIVE

    def __bool__(self):
        return self.status == ISOMORPHIC


def _batch_nonsingular(p: int, mats: np.ndarray) -> np.ndarray:
    """Which of the square matrices ``mats[k]`` over F_p are invertible."""
    a = mats.astype(np.int64) % p
    B, n, _ = a.shape
    ok = np.ones(B, dtype=bool)
    idx = np.arange(B)
    for col in range(n):
        has = a[:, col:, col] != 0
        ok &= has.any(axis=1)
        piv = col + np.argmax(has, axis=1)
        top = a[idx, col].copy()
        a[idx, col] = a[idx, piv]
        a[idx, piv] = top
        x = a[:, col, col]
        inv = np.ones(B, dtype=np.int64)
        base, e = x.copy(), p - 2
        while e:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        a[:, col] = a[:, col] * inv[:, None] % p
        if col + 1 < n:
            f = a[:, col + 1:, col]
            a[:, col + 1:] = (a[:, col + 1:] - f[:, :, None] * a[:, col][:, None, :]) % p
    return ok


EXHAUSTIVE_LIMIT = 10**6


def is_isomorphic(m: Module, n: Module, seed: int = 0, retries: int = 32) -> IsoResult:
    """Find an isomorphism ``M -> N`` or certify that none exists.

    Certified negatives come from invariant mismatches (dimensions, radical
    layers, Hom dimensions) or an exhaustive scan of ``Hom(M, N)`` over small
    prime fields.  A failed random search over a large space is reported as
    inconclusive.
    """
    _check_same(m, n)
    F = m.field
    if m.dim != n.dim:
        return IsoResult(NOT_ISOMORPHIC, reason="dimension")
    if m.dim == 0:
        return IsoResult(ISOMORPHIC, ModuleHom(m, n, F.zeros((0, 0)), check=False))
    if m.dimension_signature() != n.dimension_signature():
        return IsoResult(NOT_ISOMORPHIC, reason="radical/socle/top dimensions")
    solutions = _hom_solutions(m, n)
    h = solutions[0].shape[1]
    if h == 0:
        return IsoResult(NOT_ISOMORPHIC, reason="Hom(M, N) = 0")
    if h != hom_dim(n, m) or h != hom_dim(m, m) or h != hom_dim(n, n):
        return IsoResult(NOT_ISOMORPHIC, reason="Hom dimensions differ")
    rng = np.random.default_rng(seed)
    dim = m.dim
    for _ in range(retries):
        mat = _combine_homs(m, n, solutions, F.random(h, rng).reshape(1, h))[0]
        if F.rank(mat) == dim:
            return IsoResult(ISOMORPHIC, ModuleHom(m, n, mat, check=False))
    if isinstance(F, PrimeField) and F.p ** h <= EXHAUSTIVE_LIMIT:
        p = F.p
        flat = _combine_homs(m, n, solutions, F.eye(h)).reshape(h, dim * dim)
        total = p ** h
        chunk = max(1, min(total, 4096))
        for start in range(1, total, chunk):
            ids = np.arange(start, min(total, start + chunk))
            digits = (ids[:, None] // (p ** np.arange(h))[None, :]) % p
            mats = F.matmul(digits.astype(np.int64), flat).reshape(-1, dim, dim)
            ok = _batch_nonsingular(p, mats)
            if ok.any():
                return IsoResult(ISOMORPHIC, ModuleHom(m, n, mats[int(np.argmax(ok))].copy(), check=False))
        return IsoResult(NOT_ISOMORPHIC, reason="exhaustive scan of Hom(M, N)")
    return IsoResult(INCONCLUSIVE, reason=f"no invertible element in {retries} random samples of a {h}-dim Hom space")


# ---------------------------------------------------------------------------
# splitting off projective summands


class Reduction(NamedTuple):
    reduced: Module
    projective_part: Module
    inclusion: ModuleHom  # reduced -> m
    projective_inclusion: ModuleHom  # projective_part -> m


def _split_one(m: Module):
    """Find ``i`` and maps ``f: P(i) -> M``, ``g: M -> P(i)`` with ``g f = 1``, or ``None``."""
    F, alg = m.field, m.algebra
    targets = [i for i in range(alg.r) if m.idempotent_part(i).shape[0]]
    for i in targets:
        pi = projective(alg, i)
        gs = hom_basis(m, pi)
        if not gs:
            continue
        rows, piv = alg.projective_basis(i)
        chi = alg.characters[:, i]
        part = m.idempotent_part(i)
        for s in range(part.shape[0]):
            for g in gs:
                val = F.matmul(g.matrix, part[s])  # coordinates in A e_i
                elem = F.matmul(val.reshape(1, -1), rows).reshape(-1)
                if F.matmul(elem.reshape(1, -1), chi.reshape(-1, 1))[0, 0] != 0:
                    f = m.images_of_generator(i, part[s])
                    u = F.matmul(g.matrix, f)
                    uinv = F.inverse(u)
                    return i, f, F.matmul(uinv, g.matrix)
    return None


def reduce(m: Module) -> Reduction:
    """Split ``M = reduced + projective_part`` with ``reduced`` having no projective summand.

    The bilinear pairing ``(m, g) -> g(m) mod J`` on ``e_i M x Hom(M, P(i))``
    detects a summand ``P(i)`` exactly, so no randomness is involved.
    """
    F = m.field
    cur = m
    inc = F.eye(m.dim)  # columns: basis of cur inside m
    pattern, pieces = [], []
    while True:
        found = _split_one(cur)
        if found is None:
            break
        i, f, g = found
        pattern.append(i)
        pieces.append(F.matmul(inc, f))
        sub, sub_inc = submodule(cur, F.kernel(g).T)
        inc = F.matmul(inc, sub_inc.matrix)
        cur = sub
    order = sorted(range(len(pattern)), key=lambda k: pattern[k])
    pattern = [pattern[k] for k in order]
    pieces = [pieces[k] for k in order]
    proj = free_module(m.algebra, pattern)
    pmat = np.concatenate(pieces, axis=1) if pieces else F.zeros((m.dim, 0))
    return Reduction(cur, proj, ModuleHom(cur, m, inc, check=False), ModuleHom(proj, m, pmat, check=False))


def restrict_scalars(m: Module, algebra: Algebra, theta: np.ndarray) -> Module:
    """``M`` viewed over ``algebra`` through the algebra map ``theta: algebra -> m.algebra``.

    ``theta`` has shape ``(m.algebra.dim, algebra.dim)``; inflation along a
    quotient map and pullback along an isomorphism are both instances.
    """
    F = m.field
    d, n = algebra.dim, m.dim
    act = F.matmul(theta.T, m.action.reshape(m.algebra.dim, n * n)).reshape(d, n, n) if n else F.zeros((d, 0, 0))
    return Module(algebra, act, dim=n)


def module_from_dict(data: dict, algebra: Algebra | None = None) -> Module:
    """Inverse of :meth:`Module.to_dict`; ``algebra`` overrides the embedded description."""
    from .algebra import load_algebra

    for key in ("dim", "action"):
        if key not in data:
            raise ModuleError(f"module description is missing {key!r}")
    alg = algebra if algebra is not None else load_algebra(data["algebra"])
    embedded = data.get("algebra")
    if algebra is not None and isinstance(embedded, dict) and "field" in embedded:
        if field_from_spec(embedded["field"]) != alg.field:
            raise FieldMismatch(f"module is over {embedded['field']}, algebra over {alg.field.to_spec()}")
    if data.get("side", "left") == "right" and not alg.is_opposite:
        alg = alg.opposite()
    n = int(data["dim"])
    if n == 0:
        return zero_module(alg)
    act = alg.field.array(data["action"])
    if act.shape != (alg.dim, n, n):
        raise ModuleError(f"'action' must have shape {(alg.dim, n, n)}, got {act.shape}")
    return Module(alg, act, dim=n)

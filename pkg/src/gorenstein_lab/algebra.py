"""Split basic finite-dimensional algebras given by structure constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import Field, PrimeField, field_from_spec

__all__ = [
    "Algebra",
    "AlgebraError",
    "HilbertType",
    "Classification",
    "load_algebra",
    "dump_algebra",
    "preset",
    "PRESETS",
    "point",
    "truncated_polynomial",
    "radical_square_zero_local",
    "commutative_xy",
    "a2_path",
    "short_local",
    "quotient_algebra",
    "two_sided_ideal",
    "find_algebra_isomorphism",
    "is_algebra_map",
]


class AlgebraError(ValueError):
    """An algebra description violates one of the required invariants."""

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)


@dataclass(frozen=True)
class HilbertType:
    e: int
    a: int


@dataclass(frozen=True)
class Classification:
    is_local: bool
    is_short_local: bool
    hilbert_type: HilbertType | None
    is_self_injective: bool
    is_connected: bool


class Algebra:
    """A split basic algebra with ``b_i b_j = sum_k mul[i, j, k] b_k``.

    ``idempotents`` is a complete set of primitive orthogonal idempotents and
    ``radical`` spans the Jacobson radical; both are part of the input and
    are verified, not discovered.
    """

    def __init__(self, field: Field, mul, unit, idempotents, radical, labels=None,
                 name: str | None = None, check: bool = True):
        self.field = field
        self.mul = field.array(mul)
        d = self.mul.shape[0]
        if self.mul.shape != (d, d, d) or d == 0:
            raise AlgebraError("shape", f"structure constants must be d x d x d with d > 0, got {self.mul.shape}")
        self.dim = d
        self.unit = field.array(unit).reshape(d)
        self.idempotents = field.array(idempotents).reshape(-1, d)
        rad = field.array(radical).reshape(-1, d)
        self.radical, self.radical_pivots = field.rowspace(rad)
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(d)]
        if len(self.labels) != d:
            raise AlgebraError("labels", f"expected {d} labels, got {len(self.labels)}")
        self.name = name
        self.is_opposite = False
        self._opposite: Algebra | None = None
        if check:
            self.verify()

    def __repr__(self):
        tag = self.name or "algebra"
        return f"<Algebra {tag} dim={self.dim} r={self.r} over {self.field!r}{' (op)' if self.is_opposite else ''}>"

    # -- basic data ---------------------------------------------------
    @property
    def r(self) -> int:
        return self.idempotents.shape[0]

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    @cached_property
    def left_regular(self) -> np.ndarray:
        """``L[b]`` is the matrix of ``x -> b_b x``."""
        return np.ascontiguousarray(self.mul.transpose(0, 2, 1))

    @cached_property
    def right_regular(self) -> np.ndarray:
        """``R[b]`` is the matrix of ``x -> x b_b``."""
        return np.ascontiguousarray(self.mul.transpose(1, 2, 0))

    def left_matrix(self, x) -> np.ndarray:
        d = self.dim
        return self.field.matmul(np.asarray(x).reshape(1, d), self.left_regular.reshape(d, d * d)).reshape(d, d)

    def right_matrix(self, y) -> np.ndarray:
        d = self.dim
        return self.field.matmul(np.asarray(y).reshape(1, d), self.right_regular.reshape(d, d * d)).reshape(d, d)

    def product(self, x, y) -> np.ndarray:
        return self.field.matmul(self.left_matrix(x), np.asarray(y))

    def products(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """All products ``x y`` for rows ``x`` of ``xs`` and ``y`` of ``ys``."""
        d = self.dim
        if xs.shape[0] == 0 or ys.shape[0] == 0:
            return self.field.zeros((0, d))
        t = self.field.matmul(xs, self.mul.reshape(d, d * d)).reshape(-1, d, d)
        return np.concatenate([self.field.matmul(ys, t[s]) for s in range(t.shape[0])], axis=0)

    # -- verification -------------------------------------------------
    def verify(self) -> None:
        F, d = self.field, self.dim
        m2 = self.mul.reshape(d * d, d)
        lhs = F.matmul(m2, self.mul.reshape(d, d * d)).reshape(d, d, d, d)  # (b_i b_j) b_k
        rhs = F.matmul(m2, self.mul.transpose(1, 0, 2).reshape(d, d * d)).reshape(d, d, d, d)  # [j,k,i,m]
        rhs = rhs.transpose(2, 0, 1, 3)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            i, j, k, _ = bad[0]
            raise AlgebraError("associativity", f"(b{i} b{j}) b{k} != b{i} (b{j} b{k})")
        eye = F.eye(d)
        if not (F.equal(self.left_matrix(self.unit), eye) and F.equal(self.right_matrix(self.unit), eye)):
            raise AlgebraError("unit", "declared unit is not a two-sided identity")
        r = self.r
        if r == 0:
            raise AlgebraError("idempotents", "no idempotents given")
        for i in range(r):
            for j in range(r):
                p = self.product(self.idempotents[i], self.idempotents[j])
                want = self.idempotents[i] if i == j else F.zeros(d)
                if not F.equal(p, want):
                    raise AlgebraError("idempotents", f"e{i} e{j} != {'e' + str(i) if i == j else '0'}")
        if not F.equal(F.normalize(self.idempotents.sum(axis=0)), self.unit):
            raise AlgebraError("idempotents", "idempotents do not sum to the unit")
        J = self.radical
        basis = F.eye(d)
        if J.shape[0]:
            for side, prods in (("left", self.products(basis, J)), ("right", self.products(J, basis))):
                if not self._in_span(prods, J):
                    raise AlgebraError("radical", f"declared radical is not a {side} ideal")
        if self.radical_power(d + 1).shape[0] != 0:
            raise AlgebraError("radical", "declared radical is not nilpotent")
        if d - J.shape[0] != r:
            raise AlgebraError("split basic", f"dim A/J = {d - J.shape[0]} but {r} idempotents given")

    def _in_span(self, vectors, basis) -> bool:
        F = self.field
        if vectors.shape[0] == 0:
            return True
        return F.rank(np.concatenate([basis, vectors])) == F.rank(basis) if basis.shape[0] else F.is_zero(vectors)

    # -- radical filtration -------------------------------------------
    def radical_power(self, n: int) -> np.ndarray:
        """RREF basis (rows) of ``J^n``; ``J^0 = A``."""
        return self._radical_powers(n)[n]

    def _radical_powers(self, n: int) -> list[np.ndarray]:
        cache = self.__dict__.setdefault("_jpow", [self.field.eye(self.dim), self.radical])
        while len(cache) <= n:
            prev = cache[-1]
            if prev.shape[0] == 0:
                cache.append(prev)
                continue
            cache.append(self.field.rowspace(self.products(prev, self.radical))[0])
        return cache

    @cached_property
    def loewy_length(self) -> int:
        n = 0
        while self.radical_power(n).shape[0]:
            n += 1
        return n

    # -- opposite -----------------------------------------------------
    def opposite(self) -> "Algebra":
        if self._opposite is None:
            op = Algebra(self.field, self.mul.transpose(1, 0, 2), self.unit, self.idempotents,
                         self.radical, self.labels, name=self.name, check=False)
            op.is_opposite = not self.is_opposite
            op._opposite = self
            self._opposite = op
        return self._opposite

    # -- idempotent decomposition -------------------------------------
    def block(self, i: int, j: int) -> np.ndarray:
        """RREF basis of ``e_i A e_j``."""
        cache = self.__dict__.setdefault("_blocks", {})
        if (i, j) not in cache:
            F = self.field
            m = F.matmul(self.left_matrix(self.idempotents[i]), self.right_matrix(self.idempotents[j]))
            cache[i, j] = F.rowspace(m.T)[0]
        return cache[i, j]

    def projective_basis(self, i: int) -> tuple[np.ndarray, list[int]]:
        """RREF basis and pivots of the left ideal ``A e_i``."""
        cache = self.__dict__.setdefault("_proj", {})
        if i not in cache:
            cache[i] = self.field.rowspace(self.right_matrix(self.idempotents[i]).T)
        return cache[i]

    @cached_property
    def characters(self) -> np.ndarray:
        """``characters[b, i]``: the scalar by which ``b_b`` acts on the simple ``S_i``."""
        F = self.field
        basis = np.concatenate([self.idempotents, self.radical])
        inv = F.inverse(basis)
        if inv is None:
            raise AlgebraError("split basic", "idempotents and radical do not span A")
        return np.ascontiguousarray(inv[:, : self.r])

    @cached_property
    def is_connected(self) -> bool:
        r = self.r
        adj = {i: set() for i in range(r)}
        for i in range(r):
            for j in range(r):
                if i != j and self.block(i, j).shape[0]:
                    adj[i].add(j)
                    adj[j].add(i)
        seen, stack = {0}, [0]
        while stack:
            for j in adj[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == r

    @property
    def is_local(self) -> bool:
        return self.r == 1

    @property
    def is_short_local(self) -> bool:
        return self.is_local and self.radical_power(3).shape[0] == 0

    @property
    def hilbert_type(self) -> HilbertType | None:
        if not self.is_short_local:
            return None
        j1, j2 = self.radical_power(1).shape[0], self.radical_power(2).shape[0]
        return HilbertType(j1 - j2, j2)

    @cached_property
    def is_self_injective(self) -> bool:
        from .modrep import is_isomorphic, regular_module, k_dual, ISOMORPHIC

        # for a basic algebra: self-injective iff D(A_A) is isomorphic to the left regular module
        right_regular = regular_module(self.opposite())
        verdict = is_isomorphic(k_dual(right_regular), regular_module(self), seed=0)
        if verdict.inconclusive:
            verdict = is_isomorphic(k_dual(right_regular), regular_module(self), seed=1, retries=256)
        return verdict.status == ISOMORPHIC

    def classify(self) -> Classification:
        return Classification(
            is_local=self.is_local,
            is_short_local=self.is_short_local,
            hilbert_type=self.hilbert_type,
            is_self_injective=self.is_self_injective,
            is_connected=self.is_connected,
        )


# ---------------------------------------------------------------------------
# constructions


def _from_rules(field: Field, labels, rule, unit, idempotents, radical, name) -> Algebra:
    """Build structure constants from ``rule(i, j) -> {k: coeff}``."""
    d = len(labels)
    mul = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(d):
            for k, c in rule(i, j).items():
                mul[i][j][k] = c
    return Algebra(field, mul, unit, idempotents, radical, labels, name=name)


def _unit_vec(d, i):
    v = [0] * d
    v[i] = 1
    return v


def point(field: Field = PrimeField(2)) -> Algebra:
    return Algebra(field, [[[1]]], [1], [[1]], np.zeros((0, 1), dtype=int), ["1"], name="k")


def truncated_polynomial(n: int, field: Field = PrimeField(2)) -> Algebra:
    """``k[x]/(x^n)`` with basis ``1, x, ..., x^(n-1)``."""
    if n < 1:
        raise ValueError("n must be positive")
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]

    def rule(i, j):
        return {i + j: 1} if i + j < n else {}

    rad = [_unit_vec(n, i) for i in range(1, n)] or np.zeros((0, n), dtype=int)
    return _from_rules(field, labels, rule, _unit_vec(n, 0), [_unit_vec(n, 0)], rad, f"k[x]/(x^{n})")


def radical_square_zero_local(field: Field = PrimeField(2)) -> Algebra:
    """``k<x,y>/(x^2, y^2, xy, yx)``, basis ``1, x, y``."""

    def rule(i, j):
        if i == 0:
            return {j: 1}
        if j == 0:
            return {i: 1}
        return {}

    return _from_rules(field, ["1", "x", "y"], rule, [1, 0, 0], [[1, 0, 0]], [[0, 1, 0], [0, 0, 1]],
                       "k<x,y>/(x^2,y^2,xy,yx)")


def commutative_xy(field: Field = PrimeField(2)) -> Algebra:
    """``k[x,y]/(x^2, y^2)``, basis ``1, x, y, xy``; self-injective of dim 4."""
    monomials = [(0, 0), (1, 0), (0, 1), (1, 1)]

    def rule(i, j):
        a = (monomials[i][0] + monomials[j][0], monomials[i][1] + monomials[j][1])
        return {monomials.index(a): 1} if a in monomials else {}

    return _from_rules(field, ["1", "x", "y", "xy"], rule, [1, 0, 0, 0], [[1, 0, 0, 0]],
                       [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], "k[x,y]/(x^2,y^2)")


def a2_path(field: Field = PrimeField(2)) -> Algebra:
    """Path algebra of ``1 --alpha--> 2``: basis ``e1, e2, alpha`` with ``alpha = e2 alpha e1``."""
    table = {(0, 0): {0: 1}, (1, 1): {1: 1}, (1, 2): {2: 1}, (2, 0): {2: 1}}
    return _from_rules(field, ["e1", "e2", "alpha"], lambda i, j: table.get((i, j), {}),
                       [1, 1, 0], [[1, 0, 0], [0, 1, 0]], [[0, 0, 1]], "A2")


def short_local(e: int, a: int, coeffs, field: Field) -> Algebra:
    """Local algebra with ``J^3 = 0``: basis ``1, x_1..x_e, z_1..z_a`` and
    ``x_i x_j = sum_k coeffs[i][j][k] z_k``; all other radical products vanish.
    """
    d = 1 + e + a
    coeffs = np.asarray(coeffs).reshape(e, e, a) if a else np.zeros((e, e, 0), dtype=int)
    labels = ["1"] + [f"x{i + 1}" for i in range(e)] + [f"z{k + 1}" for k in range(a)]

    def rule(i, j):
        if i == 0:
            return {j: 1}
        if j == 0:
            return {i: 1}
        if i <= e and j <= e:
            return {1 + e + k: int(coeffs[i - 1, j - 1, k]) for k in range(a) if coeffs[i - 1, j - 1, k]}
        return {}

    rad = [_unit_vec(d, i) for i in range(1, d)] or np.zeros((0, d), dtype=int)
    return _from_rules(field, labels, rule, _unit_vec(d, 0), [_unit_vec(d, 0)], rad, f"short({e},{a})")


PRESETS = {
    "k": lambda field, **kw: point(field),
    "k_x_mod_xn": lambda field, n=2, **kw: truncated_polynomial(int(n), field),
    "kx2": lambda field, **kw: truncated_polynomial(2, field),
    "kx3": lambda field, **kw: truncated_polynomial(3, field),
    "rad2": lambda field, **kw: radical_square_zero_local(field),
    "comm2": lambda field, **kw: commutative_xy(field),
    "a2": lambda field, **kw: a2_path(field),
}


def preset(name: str, field: Field | None = None, **params) -> Algebra:
    if name not in PRESETS:
        raise ValueError(f"unknown algebra preset {name!r}; known: {', '.join(sorted(PRESETS))}")
    alg = PRESETS[name](field if field is not None else PrimeField(2), **params)
    alg.preset = {"preset": name, **params}
    return alg


def quotient_algebra(alg: Algebra, ideal_rows, name: str | None = None):
    """``A / I`` for a two-sided ideal spanned by ``ideal_rows``.

    Returns the quotient algebra and the projection matrix (``dim A/I x dim A``);
    idempotents that become zero are dropped.
    """
    F = alg.field
    basis, piv = F.rowspace(F.array(ideal_rows).reshape(-1, alg.dim))
    keep = [c for c in range(alg.dim) if c not in set(piv)]

    def project(vecs):
        vecs = np.asarray(vecs).reshape(-1, alg.dim)
        if basis.shape[0]:
            vecs = F.sub(vecs, F.matmul(vecs[:, piv], basis))
        return vecs[:, keep]

    d = len(keep)
    if d == 0:
        raise AlgebraError("shape", "quotient by the whole algebra")
    reps = F.eye(alg.dim)[keep]
    mul = np.stack([project(alg.products(reps[i:i + 1], reps)) for i in range(d)])
    idem = project(alg.idempotents)
    idem = idem[np.any(idem != 0, axis=1)]
    rad = project(alg.radical)
    rad = F.rowspace(rad)[0] if rad.shape[0] else F.zeros((0, d))
    quo = Algebra(F, mul, project(alg.unit)[0], idem, rad if rad.shape[0] else np.zeros((0, d), dtype=int),
                  [alg.labels[c] for c in keep], name=name)
    return quo, project(F.eye(alg.dim)).T.copy()


def two_sided_ideal(alg: Algebra, generators) -> np.ndarray:
    """RREF basis of the two-sided ideal generated by the rows of ``generators``."""
    F = alg.field
    gens = F.array(generators).reshape(-1, alg.dim)
    eye = F.eye(alg.dim)
    left = alg.products(eye, gens)
    both = alg.products(left, eye)
    return F.rowspace(both)[0]


def is_algebra_map(a1: Algebra, a2: Algebra, theta: np.ndarray) -> bool:
    """``theta`` (``dim a2 x dim a1``) is a unital multiplicative linear map."""
    F = a1.field
    if not F.equal(F.matmul(theta, a1.unit.reshape(-1, 1)).reshape(-1), a2.unit):
        return False
    d = a1.dim
    images = theta.T  # row b: image of b_b
    lhs = F.matmul(a1.mul.reshape(d * d, d), images)  # theta(b_i b_j)
    rhs = a2.products(images, images)  # theta(b_i) theta(b_j), ordered (i, j)
    return F.equal(lhs, rhs)


def find_algebra_isomorphism(a1: Algebra, a2: Algebra, seed: int = 0, tries: int = 64):
    """Search for an algebra isomorphism ``a1 -> a2``; returns its matrix or ``None``.

    Idempotents are matched by a permutation, generators of each block of
    ``J/J^2`` are sent to random elements of the matching block, and the map
    is extended to products of generators.  Any candidate is verified, so a
    returned matrix is always an isomorphism; ``None`` only means none was found.
    """
    F = a1.field
    if a1.field != a2.field or a1.dim != a2.dim or a1.r != a2.r:
        return None
    rng = np.random.default_rng(seed)
    r = a1.r
    j2 = (a1.radical_power(2), a2.radical_power(2))

    def top_block(alg, sq, i, j):
        """Basis of ``e_i J e_j`` and lifts of a basis of its image in ``J/J^2``."""
        left = alg.products(alg.idempotents[i:i + 1], alg.radical)
        blk = F.rowspace(alg.products(left, alg.idempotents[j:j + 1]))[0] if left.shape[0] else left
        if blk.shape[0] == 0:
            return blk, blk
        base = sq if sq.shape[0] else F.zeros((0, alg.dim))
        stacked = np.concatenate([base, blk]).T
        pick = [p - base.shape[0] for p in F.rref(stacked)[1] if p >= base.shape[0]]
        return blk, blk[pick]

    blocks1 = {(i, j): top_block(a1, j2[0], i, j) for i in range(r) for j in range(r)}
    blocks2 = {(i, j): top_block(a2, j2[1], i, j) for i in range(r) for j in range(r)}
    for perm in itertools.permutations(range(r)):
        if any(blocks1[i, j][1].shape[0] != blocks2[perm[i], perm[j]][1].shape[0]
               or blocks1[i, j][0].shape[0] != blocks2[perm[i], perm[j]][0].shape[0]
               for i in range(r) for j in range(r)):
            continue
        for _ in range(tries):
            src = [a1.idempotents[i] for i in range(r)]
            dst = [a2.idempotents[perm[i]] for i in range(r)]
            gsrc, gdst = [], []
            for (i, j), (_, gens) in blocks1.items():
                if gens.shape[0] == 0:
                    continue
                rad_blk2 = blocks2[perm[i], perm[j]][0]
                for g in gens:
                    coeffs = F.random(rad_blk2.shape[0], rng)
                    gsrc.append(g)
                    gdst.append(F.matmul(coeffs.reshape(1, -1), rad_blk2)[0])
            words1, words2 = list(src) + gsrc, list(dst) + gdst
            layer1, layer2 = list(gsrc), list(gdst)
            for _ in range(a1.loewy_length):
                new1, new2 = [], []
                for x, y in zip(layer1, layer2):
                    for g, h in zip(gsrc, gdst):
                        new1.append(a1.product(x, g))
                        new2.append(a2.product(y, h))
                layer1, layer2 = new1, new2
                words1 += new1
                words2 += new2
            w1 = np.array(words1, dtype=F.dtype)
            w2 = np.array(words2, dtype=F.dtype)
            if F.rank(w1) != a1.dim:
                continue
            theta_t = F.solve(w1, w2)  # w1 @ theta_t = w2
            if theta_t is None:
                continue
            theta = theta_t.T.copy()
            if F.rank(theta) == a1.dim and is_algebra_map(a1, a2, theta):
                return theta
    return None


# ---------------------------------------------------------------------------
# JSON


def load_algebra(description: dict) -> Algebra:
    """Build and verify an algebra from its JSON description."""
    if not isinstance(description, dict):
        raise AlgebraError("format", "algebra description must be a JSON object")
    field = field_from_spec(description.get("field", {"Fp": 2}))
    if "preset" in description:
        params = {k: v for k, v in description.items() if k not in ("preset", "field")}
        return preset(description["preset"], field, **params)
    for key in ("dim", "mul", "unit", "idempotents"):
        if key not in description:
            raise AlgebraError("format", f"missing key {key!r}")
    d = int(description["dim"])
    mul = description["mul"]
    if len(mul) != d or any(len(row) != d for row in mul) or any(len(v) != d for row in mul for v in row):
        raise AlgebraError("format", f"'mul' must be a {d} x {d} table of length-{d} vectors")
    radical = description.get("radical", [])
    radical = radical if len(radical) else np.zeros((0, d), dtype=int)
    return Algebra(field, mul, description["unit"], description["idempotents"], radical,
                   description.get("labels"), name=description.get("name"))


def dump_algebra(alg: Algebra, inline: bool = False) -> dict:
    """JSON description; presets serialize by name unless ``inline``."""
    base = alg.opposite() if alg.is_opposite else alg
    if getattr(base, "preset", None) and not inline:
        return {**base.preset, "field": base.field.to_spec()}
    F = base.field
    return {
        "field": F.to_spec(),
        "name": base.name,
        "dim": base.dim,
        "labels": base.labels,
        "unit": F.to_json(base.unit),
        "mul": F.to_json(base.mul),
        "idempotents": F.to_json(base.idempotents),
        "radical": F.to_json(base.radical),
    }


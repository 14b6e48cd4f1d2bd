"""Exact scalars and dense matrices over F_p and Q.

Matrices are plain numpy arrays: ``int64`` reduced mod p for prime fields,
``object`` arrays of :class:`fractions.Fraction` for the rationals.  A field
object carries every operation, so the same elimination code serves both.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = [
    "Field",
    "PrimeField",
    "RationalField",
    "QQ",
    "GF",
    "FieldMismatch",
    "field_from_spec",
]


class FieldMismatch(ValueError):
    """Raised when objects over different fields are combined."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """Base class for an exact field; subclasses fix the element encoding."""

    dtype: object = object
    characteristic: int = 0

    # -- construction -------------------------------------------------
    def array(self, data) -> np.ndarray:
        raise NotImplementedError

    def zeros(self, shape) -> np.ndarray:
        raise NotImplementedError

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    @property
    def one(self):
        raise NotImplementedError

    @property
    def zero(self):
        raise NotImplementedError

    def scalar(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def normalize(self, a: np.ndarray) -> np.ndarray:
        return a

    def random(self, shape, rng: np.random.Generator, spread: int = 3) -> np.ndarray:
        raise NotImplementedError

    # -- arithmetic ---------------------------------------------------
    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.normalize(a @ b)

    def add(self, a, b):
        return self.normalize(a + b)

    def sub(self, a, b):
        return self.normalize(a - b)

    def neg(self, a):
        return self.normalize(-a)

    def scale(self, c, a):
        return self.normalize(a * c)

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a != 0)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and not np.any(a != b)

    # -- elimination --------------------------------------------------
    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row-echelon form and pivot columns of ``m``."""
        r = np.array(m, dtype=self.dtype, copy=True)
        if r.ndim != 2:
            raise ValueError("rref expects a 2-d matrix")
        rows, cols = r.shape
        pivots: list[int] = []
        row = 0
        for col in range(cols):
            if row >= rows:
                break
            nz = np.nonzero(r[row:, col])[0]
            if nz.size == 0:
                continue
            piv = row + int(nz[0])
            if piv != row:
                r[[row, piv]] = r[[piv, row]]
            inv = self.inv(r[row, col])
            r[row] = self.normalize(r[row] * inv)
            others = np.nonzero(r[:, col])[0]
            others = others[others != row]
            if others.size:
                factors = r[others, col].reshape(-1, 1)
                r[others] = self.normalize(r[others] - factors * r[row])
            pivots.append(col)
            row += 1
        return r, pivots

    def rank(self, m: np.ndarray) -> int:
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def kernel(self, m: np.ndarray) -> np.ndarray:
        """Columns form a basis of ``{v : m v = 0}``."""
        rows, cols = m.shape
        if rows == 0:
            return self.eye(cols)
        r, pivots = self.rref(m)
        free = [c for c in range(cols) if c not in set(pivots)]
        out = self.zeros((cols, len(free)))
        for k, f in enumerate(free):
            out[f, k] = self.one
            for i, p in enumerate(pivots):
                out[p, k] = self.normalize(-r[i, f])
        return out

    def solve(self, m: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """Some ``X`` with ``m X = b``, or ``None`` when no solution exists."""
        if m.shape[0] != b.shape[0]:
            raise ValueError(
                f"solve: row mismatch, matrix has {m.shape[0]} rows, rhs has {b.shape[0]}"
            )
        rows, cols = m.shape
        k = b.shape[1]
        if rows == 0:
            return self.zeros((cols, k))
        aug = np.concatenate([np.asarray(m, dtype=self.dtype), np.asarray(b, dtype=self.dtype)], axis=1)
        r, pivots = self.rref(aug)
        if pivots and pivots[-1] >= cols:
            return None
        x = self.zeros((cols, k))
        for i, p in enumerate(pivots):
            x[p] = r[i, cols:]
        return x

    def inverse(self, m: np.ndarray) -> np.ndarray | None:
        n = m.shape[0]
        if m.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(m, self.eye(n))
        if x is None or not self.equal(self.matmul(m, x), self.eye(n)):
            return None
        return x

    def rowspace(self, vectors: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """RREF basis (rows) of the span of the rows of ``vectors``."""
        vectors = np.asarray(vectors, dtype=self.dtype)
        if vectors.shape[0] == 0:
            return self.zeros((0, vectors.shape[1])), []
        r, pivots = self.rref(vectors)
        return r[: len(pivots)], pivots


class PrimeField(Field):
    """The prime field F_p, elements stored as int64 residues in [0, p)."""

    dtype = np.int64

    def __init__(self, p: int):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p > 2**31:
            raise ValueError(f"prime {p} exceeds 2^31")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    @property
    def one(self):
        return 1

    @property
    def zero(self):
        return 0

    def to_spec(self):
        return {"Fp": self.p}

    def scalar(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def array(self, data) -> np.ndarray:
        a = np.asarray(data, dtype=object)
        if a.size and any(isinstance(v, (str, Fraction)) for v in a.flat):
            a = np.vectorize(self.scalar, otypes=[object])(a)
        return np.asarray(a.astype(object) % self.p, dtype=np.int64).reshape(a.shape)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(x, -1, self.p)

    def normalize(self, a):
        return np.mod(a, self.p)

    def matmul(self, a, b):
        inner = a.shape[-1] if a.ndim else 1
        if inner and (self.p - 1) ** 2 * inner < 2**62:
            return np.mod(a @ b, self.p)
        out = (a.astype(object) @ b.astype(object)) % self.p
        return np.asarray(out, dtype=np.int64)

    def random(self, shape, rng, spread=3):
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def elements(self):
        return range(self.p)

    def to_json(self, a):
        return np.asarray(a).tolist()


class RationalField(Field):
    """The rationals; entries are ``Fraction`` objects (always lowest terms)."""

    dtype = object
    characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    @property
    def one(self):
        return Fraction(1)

    @property
    def zero(self):
        return Fraction(0)

    def to_spec(self):
        return "Q"

    def scalar(self, x):
        return Fraction(x)

    def array(self, data) -> np.ndarray:
        a = np.asarray(data, dtype=object)
        flat = [Fraction(v) for v in a.flat]
        out = np.empty(a.shape, dtype=object)
        out.flat[:] = flat
        return out

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(x)

    def normalize(self, a):
        # Fraction arithmetic already canonicalizes; ints from numpy ops are lifted.
        if isinstance(a, np.ndarray) and a.dtype != object:
            return self.array(a)
        return a

    def matmul(self, a, b):
        # clear denominators, multiply integers (machine ints when they cannot overflow), rescale
        an, da = _integer_form(a)
        bn, db = _integer_form(b)
        big = max(_max_abs(an), 1) * max(_max_abs(bn), 1) * max(a.shape[-1], 1)
        if big < 2**62:
            prod = an.astype(np.int64) @ bn.astype(np.int64)
        else:
            prod = an @ bn
        d = da * db
        out = np.empty(prod.shape, dtype=object)
        vals = prod.ravel().tolist()
        out.flat[:] = [Fraction(x) for x in vals] if d == 1 else [Fraction(x, d) for x in vals]
        return out

    def random(self, shape, rng, spread=3):
        vals = rng.integers(-spread, spread + 1, size=shape)
        return self.array(vals)

    def to_json(self, a):
        def enc(x):
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        a = np.asarray(a, dtype=object)
        out = np.empty(a.shape, dtype=object)
        out.flat[:] = [enc(x) for x in a.flat]
        return out.tolist()


def _integer_form(a):
    """``(N, d)`` with ``a = N / d`` entrywise and ``N`` an array of Python or machine ints."""
    a = np.asarray(a)
    if a.dtype.kind in "iu":
        return a, 1
    flat = a.ravel().tolist()
    d = math.lcm(*[x.denominator for x in flat]) if flat else 1
    out = np.empty(a.shape, dtype=object)
    if d == 1:
        out.flat[:] = [x.numerator for x in flat]
    else:
        out.flat[:] = [x.numerator * (d // x.denominator) for x in flat]
    return out, d


def _max_abs(a) -> int:
    return max((abs(x) for x in a.flat), default=0)


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec) -> Field:
    """Decode the JSON field tag: ``"Q"`` or ``{"Fp": p}``."""
    if spec in ("Q", "QQ"):
        return QQ
    if isinstance(spec, dict) and "Fp" in spec:
        return PrimeField(spec["Fp"])
    if isinstance(spec, int):
        return PrimeField(spec)
    raise ValueError(f"unknown field specification {spec!r}")

"""Seed-deterministic searches for unusual modules, and exhaustive small-module enumeration.

Random modules are syzygies of random quotients of free modules, which always
satisfy the algebra relations and lean towards torsionless modules.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .algebra import Algebra, AlgebraError, load_algebra, short_local
from .complexes import a_dual, phi, syzygy, transpose
from .gorenstein import (
    INCONCLUSIVE,
    InternalConsistencyError,
    _ladder,
    _module_certificate,
    _module_from_certificate,
    is_gp,
    is_sgp,
    is_simple_injective,
    nunke_check,
)
from .linalg import PrimeField
from .modrep import Module, free_module, is_isomorphic, quotient

__all__ = [
    "TARGETS",
    "SearchSpec",
    "SearchReport",
    "run_search",
    "sample_short_local",
    "random_quotient",
    "random_module",
    "generated_rows",
    "enumerate_modules",
    "isomorphism_classes",
    "verify_search_certificate",
    "short_local_survey",
]

TARGETS = ("nunke", "nonreflexive-both-sgp", "ladder")


# ---------------------------------------------------------------------------
# sampling


def sample_short_local(e: int, a: int, p: int, rng: np.random.Generator) -> Algebra | None:
    """A random local algebra with ``J^3 = 0`` and Hilbert type ``(e, a)`` over F_p.

    Returns ``None`` when the sampled products do not span an ``a``-dimensional
    ``J^2`` (the caller counts these as discards).
    """
    F = PrimeField(p)
    coeffs = rng.integers(0, p, size=(e, e, a))
    try:
        alg = short_local(e, a, coeffs, F)
    except AlgebraError:
        return None
    ht = alg.hilbert_type
    if ht is None or (ht.e, ht.a) != (e, a):
        return None
    alg.sample = {"e": e, "a": a, "p": p, "coeffs": coeffs.tolist()}
    return alg


def generated_rows(m: Module, vectors: np.ndarray) -> np.ndarray:
    """RREF basis of the submodule generated by the rows of ``vectors``."""
    F, alg = m.field, m.algebra
    if vectors.shape[0] == 0:
        return F.zeros((0, m.dim))
    images = [m.apply(alg.basis_vector(b), vectors) for b in range(alg.dim)]
    return F.rowspace(np.concatenate(images))[0]


def random_quotient(alg: Algebra, max_rank: int, rng: np.random.Generator) -> Module:
    """``P / U`` for a random standard free ``P`` of rank ``<= max_rank`` and ``U`` inside ``JP``."""
    F = alg.field
    rank = int(rng.integers(1, max_rank + 1))
    pattern = sorted(int(i) for i in rng.integers(0, alg.r, size=rank))
    p = free_module(alg, pattern)
    rad = p.radical_rows
    if rad.shape[0] == 0:
        return quotient(p, F.zeros((0, p.dim)))[0]
    count = int(rng.integers(0, rad.shape[0] + 1))
    vecs = F.matmul(F.random((count, rad.shape[0]), rng), rad) if count else F.zeros((0, p.dim))
    return quotient(p, generated_rows(p, vecs))[0]


def random_module(alg: Algebra, max_rank: int, depth: int, rng: np.random.Generator):
    """``(Omega^k (P/U), k)`` with ``k`` uniform in ``0..depth``."""
    base = random_quotient(alg, max_rank, rng)
    k = int(rng.integers(0, depth + 1))
    return (syzygy(base, k) if k else base), k


# ---------------------------------------------------------------------------
# exhaustive enumeration over finite fields


def _maximal_submodules(p: Module, rows: np.ndarray):
    """RREF bases (inside ``p``) of the maximal submodules of the submodule spanned by ``rows``."""
    F, alg = p.field, p.algebra
    if rows.shape[0] == 0:
        return
    rad = generated_rows(p, np.concatenate([p.apply(r, rows) for r in alg.radical])) if alg.radical.shape[0] \
        else F.zeros((0, p.dim))
    parts = [F.rowspace(p.apply(alg.idempotents[i], rows))[0] for i in range(alg.r)]
    for i in range(alg.r):
        base = np.concatenate([rad] + [parts[j] for j in range(alg.r) if j != i])
        stacked = np.concatenate([base, parts[i]]).T
        piv = F.rref(stacked)[1]
        top = parts[i][[c - base.shape[0] for c in piv if c >= base.shape[0]]]
        k = top.shape[0]
        for c in _projective_points(F, k):
            ker = F.kernel(c.reshape(1, k))
            hyper = F.matmul(ker.T, top) if ker.shape[1] else F.zeros((0, p.dim))
            yield F.rowspace(np.concatenate([base, hyper]))[0]


def _projective_points(F: PrimeField, k: int):
    """One non-zero vector per line of ``F^k`` (first non-zero entry 1)."""
    for lead in range(k):
        for tail in itertools.product(range(F.p), repeat=k - lead - 1):
            v = np.zeros(k, dtype=np.int64)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def enumerate_modules(alg: Algebra, max_dim: int, max_top: int | None = None):
    """Every ``P/U`` with ``P`` standard free, ``U`` a submodule of ``JP`` and ``dim P/U <= max_dim``.

    Each isomorphism class of modules of dimension ``<= max_dim`` (and top of
    dimension ``<= max_top``) appears at least once; distinct ``U`` are listed
    once.  Only finite fields are supported.
    """
    F = alg.field
    if not isinstance(F, PrimeField):
        raise ValueError("enumeration needs a finite field")
    max_top = max_dim if max_top is None else max_top
    out = []
    for t in range(0, max_top + 1):
        for pattern in itertools.combinations_with_replacement(range(alg.r), t):
            p = free_module(alg, pattern)
            if t == 0:
                continue
            jp = p.radical_rows
            budget = max_dim - (p.dim - jp.shape[0])
            if budget < 0:
                continue
            seen = {}
            frontier = [jp]
            seen[(jp.shape, jp.tobytes())] = jp
            for _ in range(budget):
                nxt = []
                for rows in frontier:
                    for sub in _maximal_submodules(p, rows):
                        key = (sub.shape, sub.tobytes())
                        if key not in seen:
                            seen[key] = sub
                            nxt.append(sub)
                frontier = nxt
            for rows in seen.values():
                if p.dim - rows.shape[0] <= max_dim:
                    out.append(quotient(p, rows)[0])
    return out


def isomorphism_classes(modules, seed: int = 0):
    """Representatives of the isomorphism classes; ``inconclusive`` pairs are kept apart."""
    groups: dict = {}
    reps, inconclusive = [], 0
    for m in modules:
        bucket = groups.setdefault(m.dimension_signature(), [])
        for r in bucket:
            res = is_isomorphic(m, r, seed=seed)
            if res.inconclusive:
                inconclusive += 1
            elif res:
                break
        else:
            bucket.append(m)
            reps.append(m)
    return reps, inconclusive


# ---------------------------------------------------------------------------
# searches


@dataclass
class SearchSpec:
    """What to search: a fixed algebra or sampled short local ones, and how to make modules."""

    trials: int = 100
    seed: int = 0
    bound: int = 6
    max_rank: int = 2
    depth: int = 2
    algebra: dict | None = None  # JSON description; None means sample
    hilbert_type: tuple = (2, 1)
    prime: int = 2
    targets: tuple = TARGETS
    workers: int = 1

    def to_dict(self) -> dict:
        out = asdict(self)
        out["hilbert_type"] = list(self.hilbert_type)
        out["targets"] = list(self.targets)
        out.pop("workers")
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SearchSpec":
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        if "hilbert_type" in known:
            known["hilbert_type"] = tuple(known["hilbert_type"])
        if "targets" in known:
            bad = [t for t in known["targets"] if t not in TARGETS]
            if bad:
                raise ValueError(f"unknown search target {bad[0]!r}")
            known["targets"] = tuple(known["targets"])
        return cls(**known)


@dataclass
class SearchReport:
    spec: dict
    trials: int = 0
    discards: int = 0
    tallies: dict = field(default_factory=dict)
    inconclusive: int = 0
    certificates: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    def summary(self) -> str:
        t = self.tallies
        done = self.trials - self.discards
        lines = [f"trials {self.trials}, algebras discarded {self.discards}, modules examined {done}"]
        for key in sorted(t):
            lines.append(f"  {key}: {t[key]}")
        lines.append(f"target hits: {len(self.certificates)}")
        return "\n".join(lines)


def _verdicts(m: Module, bound: int, simple_inj: dict) -> dict:
    mstar = a_dual(m)
    ph = phi(m)
    sgp, sgp_dual = is_sgp(m, bound), is_sgp(mstar, bound)
    gp = is_gp(m, bound)
    tr_dual = is_gp(transpose(mstar), bound)
    return {
        "dim": m.dim,
        "dual_dim": mstar.dim,
        "sgp": sgp.status,
        "sgp_dual": sgp_dual.status,
        "gp": gp.status,
        "torsionless": ph.is_mono,
        "reflexive": ph.is_iso,
        "phi_epi": ph.is_epi,
        "ker_phi": ph.kernel_dim,
        "cok_phi": ph.cokernel_dim,
        "nunke": nunke_check(m, bound).status,
        "tr_dual_gp": tr_dual.status,
        "ladder": sorted(_ladder(m, bound, simple_inj)),
    }


def _hits(v: dict, targets) -> list[str]:
    out = []
    if "nunke" in targets and v["dim"] and v["nunke"] == "holds":
        out.append("nunke")
    if "nonreflexive-both-sgp" in targets and v["sgp"] == v["sgp_dual"] == "holds" and not v["reflexive"]:
        out.append("nonreflexive-both-sgp")
    if "ladder" in targets and v["ladder"]:
        out.append("ladder")
    return out


def _trial_algebra(spec: SearchSpec, rng):
    if spec.algebra is not None:
        return load_algebra(spec.algebra)
    e, a = spec.hilbert_type
    return sample_short_local(e, a, spec.prime, rng)


def _run_trial(spec: SearchSpec, trial: int) -> dict:
    rng = np.random.default_rng([spec.seed, trial])
    alg = _trial_algebra(spec, rng)
    if alg is None:
        return {"trial": trial, "discarded": True}
    m, k = random_module(alg, spec.max_rank, spec.depth, rng)
    simple_inj = {i: is_simple_injective(alg, i) for i in range(alg.r)}
    v = _verdicts(m, spec.bound, simple_inj)
    if k >= 1 and not v["torsionless"]:
        raise InternalConsistencyError("a syzygy module is not torsionless")
    out = {"trial": trial, "discarded": False, "syzygy_depth": k, "verdicts": v}
    hits = _hits(v, spec.targets)
    if hits:
        out["certificate"] = {
            "kind": "SEARCH HIT",
            "trial": trial,
            "targets": hits,
            "bound": spec.bound,
            "caveat": f"sGp checked only for Ext degrees 1..{spec.bound}",
            "verdicts": v,
            "module": _module_certificate(m),
        }
    return out


def run_search(spec: SearchSpec) -> SearchReport:
    """Run ``spec.trials`` independent trials; the report depends only on the spec."""
    if spec.trials < 0:
        raise ValueError("trials must be non-negative")
    idx = range(spec.trials)
    if spec.workers > 1 and spec.trials > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            results = list(pool.map(_run_trial, itertools.repeat(spec), idx))
    else:
        results = [_run_trial(spec, t) for t in idx]
    report = SearchReport(spec.to_dict(), trials=spec.trials)
    tallies: dict = {}
    for r in results:
        if r["discarded"]:
            report.discards += 1
            continue
        v = r["verdicts"]
        for key in ("sgp", "sgp_dual", "gp", "nunke", "tr_dual_gp"):
            name = f"{key}={v[key]}"
            tallies[name] = tallies.get(name, 0) + 1
            if v[key] == INCONCLUSIVE:
                report.inconclusive += 1
        if not v["dim"]:
            tallies["zero module"] = tallies.get("zero module", 0) + 1
        for key in ("torsionless", "reflexive", "phi_epi"):
            if v[key]:
                tallies[key] = tallies.get(key, 0) + 1
        if "certificate" in r:
            report.certificates.append(r["certificate"])
    report.tallies = dict(sorted(tallies.items()))
    return report


def verify_search_certificate(cert: dict) -> bool:
    """Recompute the verdicts of a search hit from its serialized module alone."""
    m = _module_from_certificate(cert["module"])
    alg = m.algebra
    simple_inj = {i: is_simple_injective(alg, i) for i in range(alg.r)}
    v = _verdicts(m, cert["bound"], simple_inj)
    return v == cert["verdicts"] and set(cert["targets"]) <= set(_hits(v, TARGETS))



def short_local_survey(hilbert_types=((2, 1), (3, 2)), p: int = 3, samples: int = 10, modules: int = 8,
                       bound: int = 6, seed: int = 0, max_attempts: int = 50) -> dict:
    """Run the local and short-local propositions on sampled algebras and random modules.

    ``samples`` verified algebras are drawn per Hilbert type; checks whose
    hypotheses fail are counted as vacuous passes.
    """
    from .gorenstein import check_local_projective_dual, check_short_local_phi

    out = {"bound": bound, "p": p, "algebras": 0, "discards": 0, "modules": 0,
           "local_projective_dual": {"checked": 0, "vacuous": 0, "violations": 0},
           "short_local_phi": {"checked": 0, "vacuous": 0, "violations": 0}, "violations": []}
    for e, a in hilbert_types:
        for s in range(samples):
            rng = np.random.default_rng([seed, e, a, s])
            alg = None
            for _ in range(max_attempts):
                alg = sample_short_local(e, a, p, rng)
                if alg is not None:
                    break
                out["discards"] += 1
            if alg is None:
                continue
            out["algebras"] += 1
            for t in range(modules):
                m, _ = random_module(alg, 2, 2, rng)
                out["modules"] += 1
                for key, check in (("local_projective_dual", check_local_projective_dual), ("short_local_phi", check_short_local_phi)):
                    rep = check(m, bound)
                    applicable = rep.get("applicable", True)
                    out[key]["checked" if applicable else "vacuous"] += 1
                    if not rep["holds"]:
                        out[key]["violations"] += 1
                        out["violations"].append({"check": key, "hilbert_type": [e, a], "sample": s,
                                                  "module": _module_certificate(m), "report": rep})
    return out

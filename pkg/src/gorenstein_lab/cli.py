"""``gorenstein-lab``: command-line access to the module computations.

Exit codes: 0 holds/completed, 1 fails, 2 input error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import gorenstein as G
from .algebra import Algebra, AlgebraError, dump_algebra, load_algebra, preset
from .complexes import (
    Complex,
    ComplexError,
    a_dual,
    ext_dims,
    ext_dims_into,
    phi,
    projective_dimension,
    syzygy,
    transpose,
)
from .explorer import SearchSpec, enumerate_modules, run_search, short_local_survey
from .linalg import FieldMismatch, field_from_spec
from .modrep import (
    Module,
    ModuleError,
    is_injective,
    is_projective,
    module_from_dict,
    projective,
    reduce,
    regular_module,
    simple,
    zero_module,
)

OK, FAIL, INPUT_ERROR, INCONCLUSIVE = 0, 1, 2, 3


class InputError(Exception):
    """Bad flags or unreadable input; reported with exit code 2."""


@dataclass
class Session:
    """Everything a subcommand needs: the algebra, named modules, field, bound and seed."""

    algebra: Algebra | None = None
    modules: dict = field(default_factory=dict)
    field_spec: object = None
    bound: int | None = None
    seed: int = 0

    def default_bound(self) -> int:
        if self.bound is not None:
            if self.bound < 1:
                raise InputError("--bound must be at least 1")
            return self.bound
        return 2 * self.algebra.dim

    def add_module(self, name: str, m: Module):
        if name in self.modules:
            raise InputError(f"module name {name!r} used twice")
        self.modules[name] = m


@dataclass
class Outcome:
    code: int
    payload: dict
    lines: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# input


def _read_json(path: str):
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _preset_file(name: str) -> Path | None:
    ref = resources.files("gorenstein_lab").joinpath("presets", name)
    return Path(str(ref)) if ref.is_file() else None


def resolve_algebra(spec: str, field_spec=None) -> Algebra:
    """``preset:NAME`` or a JSON file; ``presets/NAME.json`` also finds the bundled presets."""
    f = field_from_spec(field_spec) if field_spec is not None else None
    try:
        if spec.startswith("preset:"):
            return preset(spec.split(":", 1)[1], f)
        path = Path(spec)
        if not path.exists():
            bundled = _preset_file(path.name)
            if path.parent.name == "presets" and bundled is not None:
                path = bundled
        data = _read_json(str(path))
        if f is not None:
            data = {**data, "field": f.to_spec()}
        return load_algebra(data)
    except (AlgebraError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{spec}: {exc}") from None


def _index(text: str, alg: Algebra, what: str) -> int:
    try:
        i = int(text) - 1
    except ValueError:
        raise InputError(f"{what} index must be an integer, got {text!r}") from None
    if not 0 <= i < alg.r:
        raise InputError(f"{what} index {text} out of range 1..{alg.r}")
    return i


def resolve_module(spec: str, alg: Algebra) -> tuple[Module, str]:
    """``simple:i``, ``projective:i`` (1-based), ``regular``, ``zero`` or a JSON file."""
    kind, _, arg = spec.partition(":")
    if kind == "simple":
        return simple(alg, _index(arg, alg, "simple")), "S"
    if kind == "projective":
        return projective(alg, _index(arg, alg, "projective")), "P"
    if kind == "regular":
        return regular_module(alg), "A"
    if kind == "zero":
        return zero_module(alg), "0"
    data = _read_json(spec)
    try:
        return module_from_dict(data, alg), "M"
    except (ModuleError, FieldMismatch, ValueError) as exc:
        raise InputError(f"{spec}: {exc}") from None


def _emit(path: str | None, payload):
    if path:
        Path(path).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")


def _status_code(status: str) -> int:
    return {G.HOLDS: OK, G.FAILS: FAIL}.get(status, INCONCLUSIVE)


# ---------------------------------------------------------------------------
# commands


def cmd_check_algebra(args, s: Session) -> Outcome:
    alg = s.algebra
    c = alg.classify()
    payload = {
        "name": alg.name,
        "dim": alg.dim,
        "idempotents": alg.r,
        "field": alg.field.to_spec(),
        "loewy_length": alg.loewy_length,
        "local": c.is_local,
        "short_local": c.is_short_local,
        "hilbert_type": [c.hilbert_type.e, c.hilbert_type.a] if c.hilbert_type else None,
        "self_injective": c.is_self_injective,
        "connected": c.is_connected,
    }
    lines = [f"{alg.name or 'algebra'}: dim {alg.dim}, {alg.r} simple(s), Loewy length {payload['loewy_length']}",
             "local" if c.is_local else "not local",
             f"short local of Hilbert type {tuple(payload['hilbert_type'])}" if c.is_short_local else "not short local",
             "self-injective" if c.is_self_injective else "not self-injective"]
    _emit(args.emit, dump_algebra(alg, inline=True))
    return Outcome(OK, payload, lines)


def _module_payload(m: Module) -> dict:
    red = reduce(m)
    return {
        "dim": m.dim,
        "side": m.side,
        "idempotent_dims": [m.idempotent_part(i).shape[0] for i in range(m.algebra.r)],
        "top": list(m.top_multiplicities()),
        "radical_layers": list(m.dimension_signature()[3]),
        "socle_dim": m.socle_rows.shape[0],
        "projective": is_projective(m),
        "injective": is_injective(m),
        "reduced_dim": red.reduced.dim,
        "projective_summands": [i + 1 for i in red.projective_part.pattern],
    }


def cmd_module_info(args, s: Session) -> Outcome:
    m = s.modules["M"]
    p = _module_payload(m)
    lines = [f"dim {p['dim']} ({p['side']} module), top {p['top']}, radical layers {p['radical_layers']}, "
             f"socle dim {p['socle_dim']}",
             f"projective: {p['projective']}, injective: {p['injective']}",
             f"projective summands {p['projective_summands'] or 'none'}; reduced part dim {p['reduced_dim']}"]
    _emit(args.emit, m.to_dict(inline=True))
    return Outcome(OK, p, lines)


def cmd_resolve(args, s: Session) -> Outcome:
    m, n = s.modules["M"], s.default_bound()
    res = m.resolution
    terms = [[i + 1 for i in res.pattern(k)] for k in range(n + 1)]
    syz = [syzygy(m, k).dim for k in range(1, n + 1)]
    pd = projective_dimension(m, n)
    payload = {"bound": n, "terms": terms, "syzygy_dims": syz, "projective_dimension": pd,
               "minimal": res.is_minimal(n)}
    lines = [f"P_{k}: rank {len(t)} {t}" for k, t in enumerate(terms)]
    lines.append(f"dim Omega^1..{n}: {syz}")
    lines.append(f"projective dimension {pd}" if pd is not None else f"projective dimension > {n}")
    if args.emit:
        _emit(args.emit, {"bound": n, "differentials": [res.differential(k).to_dict() for k in range(1, n + 1)],
                          "terms": terms})
    return Outcome(OK, payload, lines)


def cmd_dual(args, s: Session) -> Outcome:
    ms = a_dual(s.modules["M"])
    p = _module_payload(ms)
    _emit(args.emit, ms.to_dict(inline=True))
    return Outcome(OK, p, [f"M* has dim {ms.dim} ({ms.side} module), top {p['top']}"])


def cmd_transpose(args, s: Session) -> Outcome:
    z = transpose(s.modules["M"])
    p = _module_payload(z)
    _emit(args.emit, z.to_dict(inline=True))
    return Outcome(OK, p, [f"Tr M has dim {z.dim} ({z.side} module), top {p['top']}"])


def cmd_ext(args, s: Session) -> Outcome:
    m, n = s.modules["M"], s.default_bound()
    label = s.modules.get("_label", "M")
    if args.target:
        t, tl = resolve_module(args.target, s.algebra)
        dims = ext_dims_into(m, t, n)
        lines = [f"Ext^{i}({label}, {tl}) = {d}" for i, d in enumerate(dims)]
        return Outcome(OK, {"bound": n, "ext": dims, "from_degree": 0}, lines)
    dims = ext_dims(m, n)
    lines = [f"Ext^{i}({label}, A) = {d}" for i, d in enumerate(dims, start=1)]
    return Outcome(OK, {"bound": n, "ext": dims, "from_degree": 1}, lines)


def _verdict_outcome(v: G.BoundedVerdict, ok_line: str, fail_prefix: str) -> Outcome:
    if v.holds:
        return Outcome(OK, v.to_dict(), [ok_line])
    return Outcome(_status_code(v.status), v.to_dict(), [f"{fail_prefix}: {v.detail}"])


def cmd_sgp(args, s: Session) -> Outcome:
    m, n = s.modules["M"], s.default_bound()
    label = s.modules.get("_label", "M")
    v = G.is_sgp(m, n)
    return _verdict_outcome(v, f"Ext^1..{n} ({label}, A) = 0", "not semi-Gorenstein-projective")


def cmd_gp(args, s: Session) -> Outcome:
    m, n = s.modules["M"], s.default_bound()
    v = G.is_gp(m, n)
    return _verdict_outcome(v, f"Gorenstein-projective up to bound {n}", "not Gorenstein-projective")


def cmd_phi(args, s: Session) -> Outcome:
    ph = phi(s.modules["M"])
    payload = {"kernel_dim": ph.kernel_dim, "cokernel_dim": ph.cokernel_dim,
               "torsionless": ph.is_mono, "reflexive": ph.is_iso}
    lines = [f"phi_M: Ker dim {ph.kernel_dim}, Cok dim {ph.cokernel_dim}",
             "reflexive" if ph.is_iso else ("torsionless, not reflexive" if ph.is_mono else "not torsionless")]
    return Outcome(OK, payload, lines)


def cmd_main_complex(args, s: Session) -> Outcome:
    m, n = s.modules["M"], s.default_bound()
    try:
        rep = G.build_main_complex(m, n)
    except G.NotReduced as exc:
        raise InputError(str(exc)) from None
    except G.PreconditionFailed as exc:
        return Outcome(FAIL, {"error": str(exc), "verdict": exc.verdict.to_dict()}, [str(exc)])
    payload = rep.to_dict()
    _emit(args.emit, payload)
    code = INCONCLUSIVE if rep.inconclusive else OK
    return Outcome(code, payload, rep.diagram().splitlines())


def cmd_lemma22(args, s: Session) -> Outcome:
    if args.complex:
        c = Complex.from_dict(_read_json(args.complex), s.algebra)
    else:
        if "M" not in s.modules:
            raise InputError("lemma22 needs --complex or --module")
        try:
            c = G.build_main_complex(s.modules["M"], s.default_bound(), verify=False).complex
        except G.NotReduced as exc:
            raise InputError(str(exc)) from None
        except G.PreconditionFailed as exc:
            return Outcome(FAIL, {"error": str(exc)}, [str(exc)])
    at = args.at
    # the window Q_-2 <- Q_-1 <- Q_0 <- Q_1 with Q_0 = P_at
    if not (c.lo + 1 <= at - 1 and at + 1 <= c.hi):
        raise InputError(f"--at must satisfy {c.lo + 2} <= at <= {c.hi - 1} for this complex")
    d_m1, d0, d1 = c.differentials[at - 1], c.differentials[at], c.differentials[at + 1]
    if args.break_window:
        d0 = d0.zeroed()
    rep = G.check_exactness_criterion(d_m1, d0, d1, seed=s.seed)
    payload = {"at": at, "broken": bool(args.break_window), **rep.to_dict()}
    lines = [f"(i) exact: {rep.exact}", f"(ii) zeta exists: {rep.zeta_exists}",
             "sides agree" if rep.agree else ("inconclusive" if rep.agree is None else "sides DISAGREE")]
    code = INCONCLUSIVE if rep.agree is None else (OK if rep.agree else FAIL)
    return Outcome(code, payload, lines)


def cmd_tr_bijection(args, s: Session) -> Outcome:
    m, n = s.modules["M"], s.default_bound()
    try:
        rep = G.check_tr_bijection(m, n)
    except G.NotReduced as exc:
        raise InputError(str(exc)) from None
    except G.PreconditionFailed as exc:
        return Outcome(FAIL, {"error": str(exc)}, [str(exc)])
    lines = [f"{k}: {v}" for k, v in rep["checks"].items()]
    statuses = set(rep["checks"].values())
    code = OK if rep["holds"] else (FAIL if G.FAILS in statuses else INCONCLUSIVE)
    return Outcome(code, rep, lines)


def cmd_audit(args, s: Session) -> Outcome:
    n = s.default_bound()
    modules = [s.modules["M"]] if "M" in s.modules else enumerate_modules(s.algebra, args.max_dim)
    rep = G.audit_conjectures(s.algebra, modules, n)
    _emit(args.emit, rep)
    lines = [f"{rep['modules']} modules at bound {n}; violations per condition: "
             + ", ".join(f"({k}) {v}" for k, v in rep["violations"].items())]
    for cert in rep["candidates"]:
        lines.append(f"COUNTEREXAMPLE CANDIDATE for condition ({cert['condition']}): module #{cert['module_index']}")
    return Outcome(FAIL if rep["candidates"] else OK, rep, lines)


def cmd_one_point_ext(args, s: Session) -> Outcome:
    m = s.modules["M"]
    n = s.default_bound()
    try:
        ext = G.one_point_extension(s.algebra, m, bound=n)
    except ModuleError as exc:
        raise InputError(str(exc)) from None
    a = ext.algebra
    sides = ext.checks["simple_injective_sides"]
    payload = {"dim": a.dim, "new_simple": ext.s_index + 1, "S_injective": ext.checks["S injective"],
               "omega_S_is_M": ext.checks["Omega S = M"], "simple_injective_sides": sides}
    _emit(args.emit, dump_algebra(a, inline=True))
    lines = [f"A has dim {a.dim}; the new simple is S{ext.s_index + 1}",
             f"S injective: {payload['S_injective']}; Omega S = M: {payload['omega_S_is_M']}",
             f"S sGp up to {n}: {sides['S_sgp']}; M Nunke, rigid, brick up to {n - 1}: "
             f"{sides['rhs_at_bound_minus_1']}"]
    ok = payload["S_injective"] and payload["omega_S_is_M"] == "isomorphic" and sides["agree"]
    return Outcome(OK if ok else FAIL, payload, lines)


def cmd_short_local(args, s: Session) -> Outcome:
    types = [tuple(int(x) for x in t.split(",")) for t in args.hilbert]
    rep = short_local_survey(types, args.prime, args.samples, args.modules, s.bound or 6, s.seed)
    _emit(args.emit, rep)
    lines = [f"{rep['algebras']} algebras ({rep['discards']} discarded), {rep['modules']} modules, bound {rep['bound']}"]
    for key in ("local_projective_dual", "short_local_phi"):
        r = rep[key]
        lines.append(f"{key}: {r['checked']} checked, {r['vacuous']} vacuous, {r['violations']} violations")
    bad = rep["local_projective_dual"]["violations"] + rep["short_local_phi"]["violations"]
    return Outcome(FAIL if bad else OK, rep, lines)


def cmd_search(args, s: Session) -> Outcome:
    data = _read_json(args.spec) if args.spec else {}
    for key in ("trials", "seed", "bound", "workers", "prime", "max_rank", "depth"):
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    if args.hilbert:
        data["hilbert_type"] = [int(x) for x in args.hilbert.split(",")]
    if args.target:
        data["targets"] = args.target
    if s.algebra is not None:
        data["algebra"] = dump_algebra(s.algebra, inline=True)
    try:
        spec = SearchSpec.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise InputError(f"search spec: {exc}") from None
    rep = run_search(spec)
    if args.emit:
        out = Path(args.emit)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(rep.to_json() + "\n")
        for k, cert in enumerate(rep.certificates):
            (out / f"certificate_{k:04d}.json").write_text(json.dumps(cert, indent=1, sort_keys=True) + "\n")
    code = INCONCLUSIVE if rep.inconclusive else OK
    return Outcome(code, rep.to_dict(), rep.summary().splitlines())


# ---------------------------------------------------------------------------
# parser


MODULE_COMMANDS = {
    "module-info": (cmd_module_info, "dimensions, top, socle and projective summands of a module"),
    "resolve": (cmd_resolve, "minimal projective resolution up to the bound"),
    "dual": (cmd_dual, "the A-dual M* = Hom(M, A)"),
    "transpose": (cmd_transpose, "the transpose Tr M"),
    "ext": (cmd_ext, "dimensions of Ext^i(M, A) (or Ext^i(M, N) with --target)"),
    "sgp": (cmd_sgp, "semi-Gorenstein-projectivity up to the bound"),
    "gp": (cmd_gp, "Gorenstein-projectivity up to the bound"),
    "phi": (cmd_phi, "kernel and cokernel of the canonical map M -> M**"),
    "main-complex": (cmd_main_complex, "the minimal complex attached to a reduced module"),
    "tr-bijection": (cmd_tr_bijection, "instance check of the transpose bijection"),
    "one-point-ext": (cmd_one_point_ext, "one-point extension of the algebra by the module"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="JSON file or preset:NAME (presets: k, kx2, kx3, rad2, comm2, a2)")
    common.add_argument("--field", help="override the field of the algebra: a prime p or Q")
    common.add_argument("--bound", type=int, help="Ext degrees / resolution length to check (default 2 dim A)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--emit", help="write the machine-readable result here")
    common.add_argument("--json", action="store_true", help="print the JSON result")
    common.add_argument("--quiet", action="store_true", help="suppress human-readable text")
    common.add_argument("--verify", action="store_true",
                        help="re-run from the serialized module and require identical results")

    parser = argparse.ArgumentParser(prog="gorenstein-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check-algebra", parents=[common], help="verify an algebra and classify it")
    p.set_defaults(func=cmd_check_algebra, needs_module=False)
    for name, (func, text) in MODULE_COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--module", required=True, help="JSON file, simple:i, projective:i, regular or zero")
        p.set_defaults(func=func, needs_module=True)
        if name == "ext":
            p.add_argument("--target", help="second module N for Ext^i(M, N)")
    p = sub.add_parser("lemma22", parents=[common], help="both sides of the four-term exactness criterion")
    p.add_argument("--module", help="take the window from the main complex of this module")
    p.add_argument("--complex", help="take the window from a serialized complex")
    p.add_argument("--at", type=int, default=0, help="degree of the middle term Q_0")
    p.add_argument("--break", dest="break_window", action="store_true", help="zero the middle differential")
    p.set_defaults(func=cmd_lemma22, needs_module=False)
    p = sub.add_parser("audit", parents=[common], help="instance checks of the conjecture ladder")
    p.add_argument("--module", help="audit one module instead of all small ones")
    p.add_argument("--max-dim", type=int, default=3, help="enumerate all modules up to this dimension")
    p.set_defaults(func=cmd_audit, needs_module=False)
    p = sub.add_parser("short-local", parents=[common], help="propositions for sampled short local algebras")
    p.add_argument("--hilbert", nargs="+", default=["2,1", "3,2"], help="Hilbert types e,a")
    p.add_argument("--prime", type=int, default=3)
    p.add_argument("--samples", type=int, default=10, help="verified algebras per Hilbert type")
    p.add_argument("--modules", type=int, default=8, help="random modules per algebra")
    p.set_defaults(func=cmd_short_local, needs_module=False, needs_algebra=False)
    p = sub.add_parser("search", parents=[common], help="randomized search over modules")
    p.add_argument("--spec", help="search.json")
    p.add_argument("--trials", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--prime", type=int)
    p.add_argument("--max-rank", dest="max_rank", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--hilbert", help="sample short local algebras of Hilbert type e,a")
    p.add_argument("--target", nargs="+", help="nunke, nonreflexive-both-sgp, ladder")
    p.set_defaults(func=cmd_search, needs_module=False, needs_algebra=False)
    return parser


def _run(args, s: Session) -> Outcome:
    out = args.func(args, s)
    if args.verify and "M" in s.modules:
        m = s.modules["M"]
        text = json.dumps(m.to_dict(inline=True))
        again = Session(s.algebra, {}, s.field_spec, s.bound, s.seed)
        again.modules["M"] = module_from_dict(json.loads(text), s.algebra if m.side == "left" else None)
        again.modules["_label"] = s.modules.get("_label", "M")
        twice = args.func(argparse.Namespace(**{**vars(args), "emit": None}), again)
        if json.dumps(twice.payload, sort_keys=True, default=str) != json.dumps(out.payload, sort_keys=True, default=str):
            raise G.InternalConsistencyError("re-verification from the serialized module gave a different result")
        out.lines.append("re-verified from the serialized module")
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    s = Session(field_spec=args.field, bound=args.bound, seed=args.seed)
    try:
        if s.field_spec is not None and s.field_spec not in ("Q", "QQ"):
            try:
                s.field_spec = int(s.field_spec)
            except ValueError:
                raise InputError(f"--field must be a prime or Q, got {args.field!r}") from None
        if args.algebra:
            s.algebra = resolve_algebra(args.algebra, s.field_spec)
        elif getattr(args, "needs_algebra", True):
            raise InputError("--algebra is required")
        mod = getattr(args, "module", None)
        if mod:
            m, label = resolve_module(mod, s.algebra)
            s.add_module("M", m)
            s.modules["_label"] = label
        out = _run(args, s)
    except InputError as exc:
        print(f"gorenstein-lab: error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (AlgebraError, ModuleError, ComplexError, FieldMismatch) as exc:
        print(f"gorenstein-lab: error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except G.InternalConsistencyError as exc:
        print(f"gorenstein-lab: internal consistency failure: {exc}", file=sys.stderr)
        return FAIL
    if args.json:
        print(json.dumps(out.payload, sort_keys=True, default=_json_default))
    if not args.quiet:
        for line in out.lines:
            print(line)
    return out.code


def _json_default(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    return str(x)


if __name__ == "__main__":
    sys.exit(main())

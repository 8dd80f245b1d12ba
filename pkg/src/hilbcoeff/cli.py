"""Command-line interface: ``hilbcoeff <command> [options]``.

Exit codes: 0 success, 1 input error, 2 resource budget or postulation cap,
3 a verified identity failed.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Callable, Dict, List, Optional, Sequence

from . import explorer, hilbert
from . import semigroup as sg
from .errors import (
    HilbCoeffError,
    IdentityViolation,
    InputError,
    ParseError,
    PostulationError,
    ResourceError,
)
from .groebner import h0_length
from .parser import RingDocument, parse_ring
from .report import build_report, dumps, render_text


class CliError(InputError):
    """Bad command line (argparse failures are routed here instead of exiting)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise CliError(f"expected a comma-separated integer list, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--nmax", type=int, default=hilbert.DEFAULT_NMAX, help="postulation search cap")
    common.add_argument("--char", type=int, default=None, help="characteristic (overrides document and HILB_CHAR)")
    common.add_argument("--budget", type=int, default=None, help="S-pair budget per Groebner basis")

    ringed = _Parser(add_help=False, parents=[common])
    ringed.add_argument("--ring", required=True, help="ring document")
    ringed.add_argument("--q", default="Q", help="parameter ideal: name, m, or inline generators")
    ringed.add_argument("--k", default=None, help="m-primary ideal K")
    ringed.add_argument("--module", default="R", help="R, R/<ideal> or <ideal>")

    sampled = _Parser(add_help=False)
    sampled.add_argument("--samples", type=int, default=20)
    sampled.add_argument("--seed", type=int, default=0)
    sampled.add_argument("--powers", default="1,2", help="exponent range lo,hi for sampled generators")
    sampled.add_argument("--explicit", action="store_true", help="use only --q instead of sampling")

    top = _Parser(prog="hilbcoeff", description="Hilbert coefficient workbench")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("length", parents=[ringed], help="l(R/Q), Krull dimension, Groebner basis")
    p = sub.add_parser("coeffs", parents=[ringed], help="e (and g, f when --k is given)")
    p.add_argument("--kind", choices=["e", "g", "f", "all"], default=None)
    sub.add_parser("identities", parents=[ringed], help="check the K-relative coefficient identities")
    sub.add_parser("i-invariant", parents=[ringed], help="I(Q;M) = l(M/QM) - e_0(Q,M)")
    p = sub.add_parser("h0", parents=[common], help="l(H^0_m(R))")
    p.add_argument("--ring", required=True)

    p = sub.add_parser("explore", help="sampled sweeps")
    esub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("lambda", "delta"):
        q = esub.add_parser(name, parents=[ringed, sampled])
        q.add_argument("--i", type=int, default=1)
        q.add_argument("--target", choices=["g", "e"], default="g")
    q = esub.add_parser("bounds", parents=[ringed, sampled])
    q.add_argument("--lh", default="", help="l(H^1),...,l(H^{d-1})")
    q.add_argument("--im", type=int, default=None, help="I(M) for envelope and |e_1| checks")
    q.add_argument("--kappa", type=int, default=None)
    q.add_argument("--envelope-n", type=int, default=6)
    esub.add_parser("probe", parents=[ringed, sampled])

    p = sub.add_parser("semigroup", help="numerical semigroup backend")
    ssub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("info", "e1", "delta", "oversemigroups", "identities"):
        q = ssub.add_parser(name, parents=[common])
        q.add_argument("--gens", required=True, help="semigroup generators, e.g. 3,4,5")
        q.add_argument("--q", default="m", help="ideal I: m or generator list")
        q.add_argument("--k", default="m", help="ideal K: m, R or generator list")
        q.add_argument("--cap", type=int, default=sg.DEFAULT_GAP_CAP)

    p = sub.add_parser("scaling", parents=[common], help="(e_0, e_1)(I^k) against the closed forms")
    p.add_argument("--ring", default=None)
    p.add_argument("--gens", default=None)
    p.add_argument("--q", default="m")
    p.add_argument("--module", default="R")
    p.add_argument("--kmax", type=int, default=3)
    return top


# -- helpers -------------------------------------------------------------------

def _load(args, inputs: dict) -> RingDocument:
    try:
        with open(args.ring, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.ring}: {exc.strerror}")
    env = os.environ.get("HILB_CHAR")
    default = None
    if env:
        try:
            default = int(env)
        except ValueError:
            raise InputError(f"HILB_CHAR={env!r} is not an integer")
    doc = parse_ring(text, args.char, default)
    if args.budget is not None:
        if args.budget < 1:
            raise InputError("budget must be positive")
        doc.ring.budget = args.budget
    inputs["ring"] = text
    inputs["characteristic"] = doc.ring.characteristic
    return doc


def _ideal(doc: RingDocument, spec: Optional[str], inputs: dict, key: str):
    if spec is None:
        raise InputError(f"--{key} is required")
    ideal = doc.ideal(spec)
    inputs.setdefault("ideals", {})[key] = ", ".join(str(g) for g in ideal.generators) or "0"
    return ideal


def _module(doc: RingDocument, spec: str, inputs: dict) -> hilbert.ModuleSpec:
    spec = spec.strip()
    inputs.setdefault("ideals", {})["module"] = spec
    if spec == "R":
        return hilbert.ModuleSpec.ring()
    if spec.startswith("R/"):
        return hilbert.ModuleSpec.quotient(doc.ideal(spec[2:]))
    return hilbert.ModuleSpec.of_ideal(doc.ideal(spec))


def _cfg(args) -> explorer.SamplerConfig:
    lo, hi = (_int_list(args.powers) + [0, 0])[:2]
    return explorer.SamplerConfig(seed=args.seed, samples=args.samples, power_range=(lo, hi or lo))


def _samples_or_explicit(args, doc, inputs):
    if args.explicit:
        return None, [_ideal(doc, args.q, inputs, "q")]
    return _cfg(args), None


def _sg_ideal(s: sg.NumericalSemigroup, spec: str) -> sg.SemigroupIdeal:
    spec = spec.strip()
    if spec == "m":
        return s.maximal_ideal
    if spec == "R":
        return s.whole
    return s.ideal(_int_list(spec))


# -- commands ------------------------------------------------------------------

def cmd_length(args, inputs):
    doc = _load(args, inputs)
    q = _ideal(doc, args.q, inputs, "q")
    gb = q.groebner_basis()
    length = q.length()
    return {
        "length": "infinite" if length == float("inf") else length,
        "krull_dim": q.krull_dim(),
        "ring_dim": doc.ring.dim,
        "groebner_basis": [str(g) for g in gb],
        "is_m_primary": q.is_m_primary,
        "is_parameter": q.is_parameter,
    }


def cmd_coeffs(args, inputs):
    doc = _load(args, inputs)
    q = _ideal(doc, args.q, inputs, "q")
    kind = args.kind or ("all" if args.k else "e")
    out = {}
    if kind in ("e", "all"):
        out["e"] = hilbert.e_coeffs(q, _module(doc, args.module, inputs), args.nmax).to_dict()
    if kind in ("g", "f", "all"):
        k = _ideal(doc, args.k, inputs, "k")
        if kind in ("g", "all"):
            out["g"] = hilbert.g_coeffs(k, q, args.nmax).to_dict()
        if kind in ("f", "all"):
            out["f"] = hilbert.f_coeffs(k, q, args.nmax).to_dict()
    return out


def cmd_identities(args, inputs):
    doc = _load(args, inputs)
    q = _ideal(doc, args.q, inputs, "q")
    k = _ideal(doc, args.k, inputs, "k")
    rep = hilbert.check_identities(k, q, args.nmax)
    return rep.to_dict(), None if rep.ok else IdentityViolation(f"{len(rep.failures())} identities failed")


def cmd_i_invariant(args, inputs):
    doc = _load(args, inputs)
    q = _ideal(doc, args.q, inputs, "q")
    return hilbert.i_invariant(q, _module(doc, args.module, inputs), args.nmax).to_dict()


def cmd_h0(args, inputs):
    doc = _load(args, inputs)
    return {"h0_length": h0_length(doc.ring), "ring_dim": doc.ring.dim}


def cmd_explore(args, inputs):
    doc = _load(args, inputs)
    ring = doc.ring
    cfg, explicit = _samples_or_explicit(args, doc, inputs)
    if cfg is not None:
        inputs["sampler"] = cfg.to_dict()
    if args.action in ("lambda", "delta"):
        k = _ideal(doc, args.k or "m", inputs, "k") if args.target == "g" else None
        module = _module(doc, args.module, inputs)
        if args.action == "delta":
            if explicit is not None:
                raise InputError("delta sets are sampled inside K; drop --explicit")
            rep = explorer.explore_delta(ring, k, args.i, cfg, args.nmax)
        else:
            rep = explorer.explore_lambda(ring, k, args.i, cfg, args.target, module, explicit, args.nmax)
        return {"report": rep.to_dict()}
    if args.action == "bounds":
        k = _ideal(doc, args.k or "m", inputs, "k")
        lh = _int_list(args.lh)
        out = {"g1_bounds": explorer.check_g1_bounds(ring, k, lh, cfg, explicit, args.nmax).to_dict()}
        if args.im is not None:
            module = _module(doc, args.module, inputs)
            out["e1_bound"] = explorer.check_e1_bound(ring, module, args.im, cfg, explicit, args.kappa,
                                                      args.nmax).to_dict()
            if args.q in doc.ideals or explicit:
                q = _ideal(doc, args.q, inputs, "q")
                out["envelope"] = explorer.check_growth_envelope(q, module, args.im, args.envelope_n,
                                                                 args.nmax).to_dict()
        return out
    k = _ideal(doc, args.k or "m", inputs, "k")
    return {"report": explorer.buchsbaum_probe(ring, k, cfg, explicit, args.nmax).to_dict()}


def cmd_semigroup(args, inputs):
    gens = _int_list(args.gens)
    inputs["semigroup"] = gens
    s = sg.NumericalSemigroup(gens)
    if args.action == "info":
        return s.to_dict()
    if args.action == "oversemigroups":
        overs = sg.oversemigroups(s, args.cap)
        return {"count": len(overs), "oversemigroups": [b.to_dict() for b in overs]}
    k = _sg_ideal(s, args.k)
    inputs.setdefault("ideals", {})["k"] = args.k
    if args.action == "delta":
        return sg.delta_sets(s, k, args.cap, args.nmax).to_dict()
    i = _sg_ideal(s, args.q)
    inputs["ideals"]["q"] = args.q
    if args.action == "e1":
        red = sg.minimal_reduction(i)
        blow = sg.e1_via_blowup(i, k)
        interp = sg.e_coeffs(i, k, args.nmax)
        return {
            "ideal": i.to_dict(),
            "module": k.to_dict(),
            "reduction": red.to_dict(),
            "e1_blowup": blow,
            "e_interpolated": interp.to_dict(),
            "agree": blow == interp[1],
        }
    rep = sg.check_identities(k, i, args.nmax)
    return rep.to_dict(), None if rep.ok else IdentityViolation(f"{len(rep.failures())} identities failed")


def cmd_scaling(args, inputs):
    if args.gens:
        gens = _int_list(args.gens)
        inputs["semigroup"] = gens
        s = sg.NumericalSemigroup(gens)
        i = _sg_ideal(s, args.q)
        module = None if args.module == "R" else _sg_ideal(s, args.module)
        rows = sg.scaling_check(i, module, args.kmax, args.nmax)
        return {"rows": rows, "ok": all(r["holds"] for r in rows)}
    if not args.ring:
        raise InputError("scaling needs --ring or --gens")
    doc = _load(args, inputs)
    i = _ideal(doc, args.q, inputs, "q")
    rep = explorer.power_scaling_check(i, _module(doc, args.module, inputs), args.kmax, args.nmax)
    return {"report": rep.to_dict(), "ok": rep.ok}


COMMANDS: Dict[str, Callable] = {
    "length": cmd_length,
    "coeffs": cmd_coeffs,
    "identities": cmd_identities,
    "i-invariant": cmd_i_invariant,
    "h0": cmd_h0,
    "explore": cmd_explore,
    "semigroup": cmd_semigroup,
    "scaling": cmd_scaling,
}


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, IdentityViolation):
        return 3
    if isinstance(exc, (ResourceError, PostulationError)):
        return 2
    return 1


def _error_dict(exc: BaseException) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        err.update(line=exc.line, column=exc.column)
    return err


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    as_json = "--json" in argv
    name = " ".join(a for a in argv[:2] if not a.startswith("-")) or "hilbcoeff"
    inputs: dict = {}
    results = None
    failure: Optional[BaseException] = None
    args = None
    try:
        args = build_parser().parse_args(argv)
        name = args.command + (f" {args.action}" if getattr(args, "action", None) else "")
        out = COMMANDS[args.command](args, inputs)
        if isinstance(out, tuple):
            results, failure = out
        else:
            results = out
    except (HilbCoeffError, ValueError) as exc:
        failure = exc
    code = 0 if failure is None else _exit_code(failure)
    extra = {}
    if args is not None:
        extra = {"seed": getattr(args, "seed", None), "budget": getattr(args, "budget", None),
                 "n_max": getattr(args, "nmax", None)}
    report = build_report(name, argv, inputs, results, code,
                          None if failure is None else _error_dict(failure), **extra)
    if as_json:
        print(dumps(report), file=stdout)
    else:
        if results is not None or failure is None:
            print(render_text(report), file=stdout)
        if failure is not None:
            print(f"hilbcoeff: {type(failure).__name__}: {failure}", file=stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

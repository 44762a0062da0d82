"""Command line front end with deterministic text and JSON reports.

Every subcommand prints its main numeric result as ``value ± bound`` and
exits 0 on success, 1 when a requested precision could not be certified,
2 on invalid input, and 3 when an internal cross-check fails.  Identical
arguments produce byte-identical output.  Interfaces use decimal strings
only, so reports can be compared across machines and languages.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import eulerfun, feynper, g2, symbolic
from .mzv import multiphi, mzv as mzv_value, stuffle_residual
from .errors import (
    Disconnected,
    DomainError,
    InputError,
    InternalCheckError,
    NoConvergence,
    NonFiniteSample,
    NotPrimitive,
    ParseError,
    PrecisionNotMet,
    SchemaError,
    TooLarge,
)
from .numkernel import BigReal, bernoulli, check_prec, working_dps

_GRAPH_NAMES = ("bubble", "triangle", "k4", "w4")
_IDENTITY_KINDS = ("dilog-reflection", "cotangent", "euler-product", "phi-funceq")
_COEFF_MODES = ("exact-bracket", "as-printed", "registry", "consistent")


@dataclass
class RunConfig:
    """Settings shared by all subcommands."""

    prec: int = 15
    registry_path: str | None = None
    seed: int = 42
    output_format: str = "PLAIN"


# ---------------------------------------------------------------------------
# Formatting helpers
# ---------------------------------------------------------------------------


def _certified_line(x: BigReal) -> tuple[list[str], dict]:
    """Render a fully certified value as ``value ± 1e-prec``."""
    x.demand()
    with mpmath.workdps(working_dps(x.prec)):
        value = mpmath.nstr(x.value, x.prec)
    bound = f"1e-{x.prec}"
    return [f"{value} ± {bound}"], {"value": value, "bound": bound}


def _measured_line(x: BigReal) -> tuple[list[str], dict]:
    """Render a value whose bound is honest but possibly above 1e-prec."""
    with mpmath.workdps(working_dps(x.prec)):
        value = mpmath.nstr(x.value, x.prec)
        bound = mpmath.nstr(x.err, 2)
    return [f"{value} ± {bound}"], {"value": value, "bound": bound}


def _rational(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{what} must be a rational number (like 3, 0.25 or 1/3), got {text!r}") from None


def _registry_rows(config: RunConfig):
    path = config.registry_path or os.environ.get("EULER_PERIODS_REGISTRY")
    if path:
        return g2.load_registry(path)
    return list(g2.load_registry())


# ---------------------------------------------------------------------------
# Subcommand implementations: each returns (lines, payload, exit code)
# ---------------------------------------------------------------------------


def _cmd_zeta(args, config):
    return *_certified_line(eulerfun.zeta(_rational(args.s, "s"), config.prec)), 0


def _cmd_phi(args, config):
    return *_certified_line(eulerfun.phi(_rational(args.s, "s"), config.prec)), 0


def _cmd_polylog(args, config):
    z = _rational(args.z, "z")
    return *_certified_line(eulerfun.polylog(args.n, z, config.prec)), 0


def _cmd_gamma(args, config):
    return *_certified_line(eulerfun.gamma_const(config.prec, args.method)), 0


def _cmd_bernoulli(args, config):
    value = str(bernoulli(args.n))
    return [value], {"value": value, "exact": True}, 0


def _cmd_mzv(args, config):
    return *_certified_line(mzv_value(tuple(args.parts), config.prec)), 0


def _cmd_multiphi(args, config):
    value = multiphi(tuple(args.parts), config.prec, cutoff=args.cutoff)
    return *_certified_line(value), 0


def _cmd_stuffle_check(args, config):
    r = stuffle_residual(args.m, args.n, config.prec)
    with mpmath.workdps(working_dps(r.prec)):
        resid = abs(r.value)
        ok = bool(resid <= r.err)
        resid_text = mpmath.nstr(resid, 3)
        bound_text = mpmath.nstr(r.err, 3)
    verdict = "pass" if ok else "FAIL"
    line = f"residual {resid_text} within bound {bound_text}: {verdict}"
    payload = {"residual": resid_text, "bound": bound_text, "passed": ok}
    return [line], payload, 0 if ok else 3


def _cmd_identity_check(args, config):
    kind = args.kind.upper().replace("-", "_")
    params: dict[str, object] = {}
    if args.x is not None:
        params["x"] = _rational(args.x, "x")
    if args.s is not None:
        params["s"] = _rational(args.s, "s")
    if args.terms is not None:
        params["terms"] = args.terms
    if args.prime_bound is not None:
        params["prime_bound"] = args.prime_bound
    r = eulerfun.identity_residual(kind, params, config.prec)
    with mpmath.workdps(working_dps(r.prec)):
        magnitude = abs(r.value)
        resid = mpmath.nstr(magnitude, 3)
        bound = mpmath.nstr(r.err, 2)
        ok = bool(magnitude <= args.tol) if args.tol is not None else True
    payload = {"kind": kind, "residual": resid, "bound": bound}
    if args.tol is not None:
        verdict = "pass" if ok else "FAIL"
        payload["tol"] = f"{args.tol:g}"
        payload["passed"] = ok
        return [f"residual {resid} ± {bound} (tol {args.tol:g}: {verdict})"], payload, 0 if ok else 3
    return [f"residual {resid} ± {bound}"], payload, 0


def _cmd_coact(args, config):
    expr = symbolic.parse_expr(args.expr)
    tensor = symbolic.coact(expr)
    text = str(tensor)
    return [text], {"expr": str(expr), "tensor": text}, 0


def _cmd_conjugates(args, config):
    expr = symbolic.parse_expr(args.expr)
    conj, dim = symbolic.galois_conjugates(expr)
    lines = [str(c) for c in conj]
    lines.append(f"span dimension {dim}")
    return lines, {"expr": str(expr), "conjugates": [str(c) for c in conj], "dimension": dim}, 0


def _cmd_per(args, config):
    expr = symbolic.parse_expr(args.expr)
    return *_certified_line(symbolic.period_map(expr, config.prec)), 0


def _graph_from_arg(text: str) -> feynper.MultiGraph:
    if text.lower() in _GRAPH_NAMES:
        return feynper.named_graph(text)
    try:
        return feynper.load_graph(text)
    except OSError as exc:
        raise InputError(
            f"{text!r} is neither a named graph {list(_GRAPH_NAMES)} nor a readable JSON file: {exc}"
        ) from None


def _cmd_period(args, config):
    graph = _graph_from_arg(args.graph)
    est = feynper.period_mc(graph, args.samples, seed=config.seed, prec_report=config.prec)
    text = str(est)
    value, bound = text.split(" ± ")
    payload = {"value": value, "bound": bound, "samples": est.samples, "seed": est.seed}
    return [text], payload, 0


def _cmd_selftest(args, config):
    report = feynper.integrator_selftest(args.samples, seed=config.seed)
    lines = str(report).split("\n")
    payload = {
        "passed": report.passed,
        "samples": report.samples,
        "seed": report.seed,
        "entries": [str(e) for e in report.entries],
    }
    return lines, payload, 0 if report.passed else 3


def _coefficients(args) -> g2.CoefficientSet:
    kw = {}
    if getattr(args, "a2_mode", None):
        kw["a2_mode"] = g2.CoeffMode[args.a2_mode.upper().replace("-", "_")]
    if getattr(args, "a3_mode", None):
        kw["a3_mode"] = g2.CoeffMode[args.a3_mode.upper().replace("-", "_")]
    return g2.CoefficientSet(**kw)


def _cmd_g2_assemble(args, config):
    rows = _registry_rows(config)
    if args.alpha_inv is None:
        alpha = g2.lookup(rows, "alpha:rb:2011").as_bigreal(config.prec)
    else:
        alpha = args.alpha_inv
    value = g2.assemble(alpha, _coefficients(args), order=args.order,
                        prec=config.prec, registry=rows)
    lines, payload = _measured_line(value)
    payload["order"] = args.order
    return lines, payload, 0


def _cmd_g2_invert_alpha(args, config):
    rows = _registry_rows(config)
    try:
        target = g2.lookup(rows, args.target)
    except InputError:
        try:
            target = BigReal.from_decimal(args.target, config.prec)
        except ValueError:
            raise InputError(
                f"target {args.target!r} is neither a registry label nor a decimal number") from None
    trace: list[float] = []
    value = g2.invert_alpha(target, _coefficients(args), order=args.order,
                            prec=config.prec, registry=rows, trace=trace)
    lines, payload = _measured_line(value)
    payload["iterations"] = len(trace)
    return lines, payload, 0


def _cmd_g2_compare(args, config):
    rows = _registry_rows(config)
    result = g2.compare(g2.lookup(rows, args.a), g2.lookup(rows, args.b))
    text = str(result)
    difference, uncertainty = text.split(" ± ")
    payload = {
        "difference": difference,
        "uncertainty": uncertainty,
        "pull": f"{result.pull:.3f}",
    }
    return [text], payload, 0


def _cmd_registry_list(args, config):
    rows = _registry_rows(config)
    lines = []
    entries = []
    for m in rows:
        with mpmath.workdps(working_dps(m.value.prec)):
            value = mpmath.nstr(m.value.value, 15)
        total = f"{m.total_uncertainty:.2g}" if m.total_uncertainty else "0"
        lines.append(f"{m.label:<16} {value} ± {total}  ({m.year}, {m.source})")
        entries.append({"label": m.label, "value": value, "total_uncertainty": total,
                        "year": m.year, "source": m.source})
    return lines, {"entries": entries}, 0


_COMMANDS = {
    "zeta": _cmd_zeta,
    "phi": _cmd_phi,
    "polylog": _cmd_polylog,
    "gamma": _cmd_gamma,
    "bernoulli": _cmd_bernoulli,
    "mzv": _cmd_mzv,
    "multiphi": _cmd_multiphi,
    "stuffle-check": _cmd_stuffle_check,
    "identity-check": _cmd_identity_check,
    "coact": _cmd_coact,
    "conjugates": _cmd_conjugates,
    "per": _cmd_per,
    "period": _cmd_period,
    "selftest": _cmd_selftest,
    "g2-assemble": _cmd_g2_assemble,
    "g2-invert-alpha": _cmd_g2_invert_alpha,
    "g2-compare": _cmd_g2_compare,
    "registry-list": _cmd_registry_list,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="euler-periods",
        description="Certified evaluation of Euler-type sums, graph periods and the electron g-2 series.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add(name: str, help_text: str, registry: bool = False, seed: bool = False):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--prec", type=int, default=15, metavar="N",
                       help="requested decimal precision (default 15)")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        if registry:
            p.add_argument("--registry", metavar="PATH", default=None,
                           help="measurement registry JSON (default: packaged, or EULER_PERIODS_REGISTRY)")
        if seed:
            p.add_argument("--seed", type=int, default=42, metavar="N",
                           help="random seed (default 42)")
        return p

    p = add("zeta", "Riemann zeta at a real point s > 1.")
    p.add_argument("s", help="argument, a rational like 2 or 3/2")

    p = add("phi", "Alternating zeta phi(s) for s > 0.")
    p.add_argument("s", help="argument, a rational like 1 or 1/2")

    p = add("polylog", "Polylogarithm Li_n(z) on the real interval [-1, 1].")
    p.add_argument("n", type=int, help="integer order n >= 1")
    p.add_argument("z", help="argument, a rational in [-1, 1]")

    p = add("gamma", "Euler's constant.")
    p.add_argument("--method", choices=("EM", "ZETA_SERIES"), default="EM",
                   help="summation route (default EM)")

    p = add("bernoulli", "Exact Bernoulli number B_n (B_1 = -1/2).")
    p.add_argument("n", type=int, help="index n >= 0")

    p = add("mzv", "Multiple zeta value zeta(n1, ..., nd), depth <= 3.")
    p.add_argument("parts", type=int, nargs="+", help="index parts, last must be >= 2")

    p = add("multiphi", "Alternating multiple sum phi(n1, ..., nd).")
    p.add_argument("parts", type=int, nargs="+", help="index parts")
    p.add_argument("--cutoff", type=int, default=None, metavar="N",
                   help="override the internal summation cutoff")

    p = add("stuffle-check", "Verify zeta(m) zeta(n) = zeta(m,n) + zeta(n,m) + zeta(m+n).")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)

    p = add("identity-check", "Evaluate the defect of a classical identity.")
    p.add_argument("kind", choices=_IDENTITY_KINDS)
    p.add_argument("--x", default=None, help="point for dilog-reflection / cotangent")
    p.add_argument("--s", default=None, help="exponent for euler-product / phi-funceq")
    p.add_argument("--terms", type=int, default=None, help="cotangent truncation order")
    p.add_argument("--prime-bound", type=int, default=None, help="euler-product prime cap")
    p.add_argument("--tol", type=float, default=None,
                   help="fail (exit 3) when the residual exceeds this")

    p = add("coact", "Galois coaction of a motivic expression.")
    p.add_argument("expr", help="expression in zeta_m(n), Li_m(n; z), twopi_i")

    p = add("conjugates", "Galois conjugates and their span dimension.")
    p.add_argument("expr", help="expression in zeta_m(n), Li_m(n; z), twopi_i")

    p = add("per", "Numerical period of a motivic expression.")
    p.add_argument("expr", help="expression in zeta_m(n), Li_m(n; z), twopi_i")

    p = add("period", "Monte-Carlo period of a primitive log-divergent graph.", seed=True)
    p.add_argument("graph", help="named graph (bubble, triangle, k4, w4) or a JSON file")
    p.add_argument("--samples", type=int, default=100_000, metavar="N",
                   help="sample count (default 100000)")

    p = add("selftest", "Integrator self-test on known volumes.", seed=True)
    p.add_argument("--samples", type=int, default=100_000, metavar="N",
                   help="sample count (default 100000)")

    p = add("g2-assemble", "Partial sum of the a_e series through a given order.", registry=True)
    p.add_argument("alpha_inv", nargs="?", default=None,
                   help="1/alpha as a decimal (default: the rubidium value from the registry)")
    p.add_argument("--order", type=int, default=4, choices=(1, 2, 3, 4))
    p.add_argument("--a2-mode", choices=_COEFF_MODES[:3], default=None)
    p.add_argument("--a3-mode", choices=_COEFF_MODES, default=None)

    p = add("g2-invert-alpha", "Solve the a_e series for 1/alpha.", registry=True)
    p.add_argument("target", help="a_e as a registry label (like exp:2008) or a decimal")
    p.add_argument("--order", type=int, default=4, choices=(1, 2, 3, 4))
    p.add_argument("--a2-mode", choices=_COEFF_MODES[:3], default=None)
    p.add_argument("--a3-mode", choices=_COEFF_MODES, default=None)

    p = add("g2-compare", "Difference of two registry values with combined uncertainty.", registry=True)
    p.add_argument("a", help="registry label")
    p.add_argument("b", help="registry label")

    add("registry-list", "List the measurement registry.", registry=True)

    return parser


def dispatch(argv: list[str] | None = None) -> int:
    """Run one subcommand; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else 2
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    config = RunConfig(
        prec=args.prec,
        registry_path=getattr(args, "registry", None),
        seed=getattr(args, "seed", 42),
        output_format="JSON" if args.json else "PLAIN",
    )
    try:
        check_prec(config.prec)
        lines, payload, code = _COMMANDS[args.command](args, config)
    except PrecisionNotMet as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1
    except (DomainError, InputError, ParseError, SchemaError, Disconnected,
            TooLarge, NotPrimitive) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except (InternalCheckError, NoConvergence, NonFiniteSample) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 3
    if config.output_format == "JSON":
        doc = {"command": args.command, **payload, "output": "\n".join(lines)}
        print(json.dumps(doc, ensure_ascii=False))
    else:
        for line in lines:
            print(line)
    return code


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

"""Command-line workbench: count, marginal, exact, verify-decay, gen.

Exit codes: 0 success, 1 input/parse error, 2 invalid instance,
3 unsatisfiable instance (the count is 0), 4 exact-oracle capacity exceeded.
``verify-decay`` exits 0 iff every check passes and 5 otherwise.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .counter import DepthPolicy, FixedDepth, TargetEpsilon, approx_count, depth_for_epsilon
from .decay import CASE_GROUPS, CHECKS, THRESHOLDS, composite_reports, run_check
from .errors import (
    CapacityError,
    ContractError,
    InputError,
    InvalidInstanceError,
    UnsatisfiableError,
)
from .estimator import Estimator, classify_boundary
from .exact import count_colorings, exact_marginal
from .formats import GraphFile, lists_to_json, load_instance
from .generators import CorpusSpec, generate
from .instance import check_reachable

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_UNSAT = 3
EXIT_CAPACITY = 4
EXIT_CHECK_FAILED = 5

EXIT_CODES = {
    InputError: EXIT_PARSE,
    InvalidInstanceError: EXIT_INVALID,
    UnsatisfiableError: EXIT_UNSAT,
    CapacityError: EXIT_CAPACITY,
}

DEFAULT_DEPTH = 8
SCHEMA_VERSION = 1
SCHEMA_PATH = Path(__file__).with_name("schemas") / "run_report.schema.json"

FAMILY_ALIASES = {
    "k4": "complete_k4",
    "complete_k4": "complete_k4",
    "cycle": "cycle",
    "path": "path",
    "star3": "star3",
    "petersen": "petersen",
    "kp33": "kp33",
    "cubic": "random_cubic",
    "random_cubic": "random_cubic",
    "subcubic": "random_subcubic",
    "random_subcubic": "random_subcubic",
}


def _num(x):
    """JSON-friendly number; rationals also get an exact string elsewhere."""
    return float(x) if isinstance(x, Fraction) else x


def _exact_str(x) -> str | None:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return None


def _report(command: str, config: dict, result: dict, start: float, digest: str | None = None,
            factors: list | None = None, warnings: list | None = None) -> dict:
    rep = {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "command": command,
        "input_digest": digest,
        "config": config,
        "result": result,
        "elapsed": time.perf_counter() - start,
    }
    if factors is not None:
        rep["factors"] = factors
    if warnings:
        rep["warnings"] = warnings
    return rep


def _emit(rep: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(rep, indent=2))
    else:
        print(text)


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def cmd_count(args) -> int:
    start = time.perf_counter()
    inst, gf, digest = load_instance(args.graph, args.lists)
    warnings = []
    if args.epsilon is not None:
        policy = DepthPolicy(TargetEpsilon(args.epsilon, args.constant))
        depth = depth_for_epsilon(policy, max(inst.num_vertices, 1))
        warnings.append(
            f"epsilon schedule gives depth {depth}; the worst-case decay rate makes this"
            " far deeper than needed in practice and it may not finish"
        )
    else:
        depth = args.depth
        if depth is None:
            depth = DEFAULT_DEPTH
            warnings.append(
                f"no --depth or --epsilon given; using depth {depth}."
                " Accuracy at fixed depth is empirical, not guaranteed"
            )
    for w in warnings:
        _warn(w)
    res = approx_count(inst, FixedDepth(depth), backend=args.backend, threads=args.threads)
    est = res.estimate
    factors = [{"vertex": v + gf.base, "color": c, "marginal": _num(p)} for v, c, p in res.factors]
    config = {
        "depth": depth,
        "epsilon": args.epsilon,
        "constant": args.constant if args.epsilon is not None else None,
        "backend": args.backend,
        "threads": args.threads,
    }
    result = {"count": _num(est), "count_exact": _exact_str(est)}
    rep = _report("count", config, result, start, digest, factors, warnings)
    shown = _exact_str(est) or f"{est:.10g}"
    _emit(rep, args.json, f"count: {shown}")
    return EXIT_UNSAT if res.is_zero else EXIT_OK


def cmd_marginal(args) -> int:
    start = time.perf_counter()
    inst, gf, digest = load_instance(args.graph, args.lists)
    v = args.vertex - gf.base
    if not inst.graph.has_vertex(v):
        raise InputError(f"vertex {args.vertex} is not in the graph")
    if args.color not in (1, 2, 3, 4):
        raise InputError("colour must be one of 1, 2, 3, 4")
    warnings = []
    depth = args.depth
    if depth is None:
        depth = DEFAULT_DEPTH
        warnings.append(f"no --depth given; using depth {depth}")
        _warn(warnings[-1])
    bad = inst.validity_violation()
    if bad is not None:
        raise InvalidInstanceError(bad)
    est = Estimator(inst.graph, args.backend, threads=args.threads)
    try:
        p = est.estimate(inst, v, args.color, depth)
    except ContractError as e:
        raise InvalidInstanceError(str(e)) from None
    finally:
        est.close()
    cls = None
    if check_reachable(inst, v).satisfied:
        cls = classify_boundary(inst, v, args.color).kind
    config = {"depth": depth, "backend": args.backend, "threads": args.threads}
    result = {"marginal": _num(p), "marginal_exact": _exact_str(p), "boundary_class": cls}
    rep = _report("marginal", config, result, start, digest, warnings=warnings)
    shown = _exact_str(p) or f"{p:.12g}"
    _emit(rep, args.json, f"marginal: {shown}" + (f"\nclass: {cls}" if cls else ""))
    return EXIT_OK


def cmd_exact(args) -> int:
    start = time.perf_counter()
    inst, gf, digest = load_instance(args.graph, args.lists)
    config = {"cap": args.cap}
    if args.marginal:
        v, i = args.marginal
        v -= gf.base
        if not inst.graph.has_vertex(v):
            raise InputError(f"vertex {args.marginal[0]} is not in the graph")
        m = exact_marginal(inst, v, i, args.cap)
        s = _exact_str(m.value)
        rep = _report("exact", config, {"marginal": float(m.value), "marginal_exact": s}, start, digest)
        _emit(rep, args.json, s)
        return EXIT_OK
    z = count_colorings(inst, args.cap).value
    rep = _report("exact", config, {"count": z, "count_exact": str(z)}, start, digest)
    _emit(rep, args.json, str(z))
    return EXIT_UNSAT if z == 0 else EXIT_OK


def _parse_threshold(s: str) -> tuple[str, Fraction]:
    name, _, val = s.partition("=")
    if name not in CHECKS or not val:
        raise InputError(f"--threshold expects NAME=VALUE with NAME one of {sorted(CHECKS)}")
    try:
        return name, Fraction(val)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad threshold value {val!r}") from None


def cmd_verify_decay(args) -> int:
    start = time.perf_counter()
    if args.resolution <= 0:
        raise InputError("resolution must be positive")
    overrides = dict(_parse_threshold(t) for t in args.threshold or [])
    if args.case == "all":
        names = [n for g in CASE_GROUPS.values() for n in g]
    elif args.case in CASE_GROUPS:
        names = CASE_GROUPS[args.case]
    elif args.case in CHECKS:
        names = [args.case]
    else:
        raise InputError(f"unknown case {args.case!r}; choose all, {', '.join(CASE_GROUPS)} or a check name")
    found = {n: run_check(n, args.resolution, overrides.get(n), threads=args.threads) for n in names}
    reports = list(found.values())
    if args.case == "all":
        reports += composite_reports(found)
    ok = all(r.passed for r in reports)
    config = {"resolution": args.resolution, "case": args.case, "threads": args.threads}
    result = {"all_pass": ok, "reports": [r.to_json() for r in reports]}
    rep = _report("verify-decay", config, result, start)
    lines = [f"numerical evidence at resolution {args.resolution}"]
    for r in reports:
        arg = ", ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}" for k, v in r.argmax.items())
        lines.append(
            f"{'PASS' if r.passed else 'FAIL'}  {r.name:28s} max={r.max_found:.8f}"
            f"  threshold={r.threshold} ({float(r.threshold):.6f})  argmax: {arg}"
        )
    lines.append("all checks pass" if ok else "SOME CHECKS FAILED")
    _emit(rep, args.json, "\n".join(lines))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_gen(args) -> int:
    start = time.perf_counter()
    fam = FAMILY_ALIASES.get(args.family)
    if fam is None:
        raise InputError(f"unknown family {args.family!r}")
    spec = CorpusSpec(fam, n=args.n, p=args.p, seed=args.seed, lists=args.lists_policy)
    inst = generate(spec)
    gf = GraphFile(inst.graph.n, tuple(inst.graph.edges()), base=1 if args.dimacs else 0, dimacs=args.dimacs)
    Path(args.out).write_text(gf.to_text())
    outputs = [str(args.out)]
    if args.lists_out:
        Path(args.lists_out).write_text(lists_to_json(inst.lists, gf.base) + "\n")
        outputs.append(str(args.lists_out))
    config = {"seed": args.seed, "family": fam, "n": inst.graph.n, "p": args.p, "lists": args.lists_policy}
    rep = _report("gen", config, {"outputs": outputs}, start)
    _emit(rep, args.json, f"wrote {', '.join(outputs)} ({inst.graph.n} vertices, {len(gf.edges)} edges)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="colorcount", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def instance_args(p):
        p.add_argument("graph", help="graph file ('p edge n m' or 'n m' header)")
        p.add_argument("lists", nargs="?", help="optional JSON lists file")
        p.add_argument("--json", action="store_true", help="print a JSON RunReport")

    p = sub.add_parser("count", help="approximate number of proper list colourings")
    instance_args(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--depth", type=int)
    g.add_argument("--epsilon", type=float)
    p.add_argument("--constant", type=float, default=1.0, help="decay constant C for --epsilon")
    p.add_argument("--backend", choices=("float", "rational"), default="float")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("marginal", help="estimate Pr[c(v)=i]")
    instance_args(p)
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--color", type=int, required=True)
    p.add_argument("--depth", type=int)
    p.add_argument("--backend", choices=("float", "rational"), default="float")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_marginal)

    p = sub.add_parser("exact", help="exact count or marginal by exhaustive search")
    instance_args(p)
    p.add_argument("--marginal", type=int, nargs=2, metavar=("V", "I"))
    p.add_argument("--cap", type=int, default=26, help="refuse instances with more vertices")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify-decay", help="grid-check the contraction-rate inequalities")
    p.add_argument("--resolution", type=float, default=0.005)
    p.add_argument("--case", default="all")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--threshold", action="append", metavar="NAME=VALUE",
                   help="override a check's threshold (negative controls)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_decay)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("--family", required=True, help=", ".join(sorted(FAMILY_ALIASES)))
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--p", type=float, default=0.5, help="edge probability for subcubic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lists-policy", choices=("full", "random_valid"), default="full")
    p.add_argument("--out", required=True)
    p.add_argument("--lists-out")
    p.add_argument("--dimacs", action="store_true", help="write 'p edge' format, 1-indexed")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except tuple(EXIT_CODES) as e:
        code = next(c for t, c in EXIT_CODES.items() if isinstance(e, t))
        print(f"error: {e}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())

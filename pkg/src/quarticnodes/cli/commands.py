from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Callable

from ..conditions import conditions_defect, separating_form_oracle
from ..config import AgpThresholds, DegenerateConfigurationError, PointConfiguration, agp_check
from ..core.fields import GF, QQ, is_prime
from ..families import (
    FAMILY_CONSTITUENTS,
    FAMILY_EQUATIONS,
    FamilyError,
    NotOnHypersurfaceError,
    NotRationalError,
    QuarticSpec,
    build_family,
    classify_singularity,
    designed_nodes,
    scan,
)
from ..invariants import (
    bound_verdict,
    cynk_invariants,
    discriminant_class,
    fr_canonical,
    shokurov_verdict,
    valera_verdict,
)
from ..separators import SeparatorError, build_separating_cubic
from .parsing import ParseError, format_points, format_spec, parse_form, parse_point, read_points, read_spec
from .report import Report

CONSTITUENT_FLAGS = ("h3", "g3", "a2", "b2", "b3", "h2", "g2", "g1", "F")


class UsageError(Exception):
    """Invalid flags or values; reported with exit code 2."""


@dataclass(frozen=True)
class CliResult:
    code: int
    output: str
    error: str


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit the process
        raise UsageError(message)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return v


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}") from None


def _prime(text: str) -> int:
    p = _int(text)
    if p < 5 or not is_prime(p):
        raise argparse.ArgumentTypeError(f"need a prime >= 5, got {text!r}")
    return p


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit the structured JSON report")
    p.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")
    p.add_argument("--timestamps", action="store_true", help="add a timestamp to the report")


def _family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", metavar="PATH", help="quartic spec file (bundled names are accepted)")
    p.add_argument("--family", choices=sorted(FAMILY_CONSTITUENTS), help="family tag")
    for name in CONSTITUENT_FLAGS:
        p.add_argument(f"--{name}", metavar="POLY", help=f"constituent {name}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quarticnodes", description="Exact computations on nodal quartic threefolds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("defect", help="defect of points with respect to forms of a degree")
    p.add_argument("--points", required=True, metavar="PATH")
    p.add_argument("--degree", type=_positive_int, default=3)
    _common(p)

    p = sub.add_parser("separator", help="cubic through all points but one")
    p.add_argument("--points", required=True, metavar="PATH")
    p.add_argument("--exclude", required=True, type=_nonneg_int, metavar="INDEX")
    p.add_argument("--degree", type=_positive_int, default=3)
    p.add_argument("--method", choices=("constructive", "oracle"), default="constructive")
    _common(p)

    p = sub.add_parser("agp", help="almost-general-position check")
    p.add_argument("--points", required=True, metavar="PATH")
    p.add_argument("--max-line", type=_positive_int, default=3)
    p.add_argument("--max-conic", type=_positive_int, default=6)
    p.add_argument("--max-plane", type=_positive_int, default=8)
    p.add_argument("--conic-semantics", choices=("inclusive", "smooth"), default="inclusive")
    _common(p)

    p = sub.add_parser("family", help="assemble a family quartic and locate its designed nodes")
    _family_flags(p)
    p.add_argument("--solve", action="store_true", help="solve the node system exactly")
    p.add_argument("--write-spec", metavar="PATH")
    p.add_argument("--write-points", metavar="PATH")
    _common(p)

    p = sub.add_parser("scan", help="exhaustive singular-point scan over F_p")
    _family_flags(p)
    p.add_argument("--prime", required=True, type=_prime)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--write-points", metavar="PATH")
    _common(p)

    p = sub.add_parser("classify", help="smooth / node / degenerate classification of a point")
    _family_flags(p)
    p.add_argument("--point", required=True, metavar="A:B:C:D:E")
    p.add_argument("--prime", type=_prime)
    _common(p)

    p = sub.add_parser("invariants", help="Hodge numbers and Euler characteristic")
    p.add_argument("--nodes", type=_nonneg_int)
    p.add_argument("--defect", type=_nonneg_int)
    p.add_argument("--points", metavar="PATH", help="compute nodes and defect from a node file")
    _common(p)

    p = sub.add_parser("verdict", help="rationality and Q-factoriality verdicts")
    p.add_argument("--rule", choices=("bound", "valera", "shokurov"))
    p.add_argument("--degree", type=_int)
    p.add_argument("--nodes", type=_nonneg_int)
    p.add_argument("--defect", type=_nonneg_int)
    p.add_argument("--plane", action="store_true", help="the hypersurface contains a plane")
    p.add_argument("--quadric", action="store_true", help="the hypersurface contains a quadric surface")
    p.add_argument("--chi", type=_int)
    p.add_argument("--standard", action="store_true", help="assert a standard del Pezzo fibration")
    p.add_argument("--k2l", type=_int)
    p.add_argument("--k2s", type=_int)
    p.add_argument("--r", type=_nonneg_int)
    _common(p)
    return parser


# -- input helpers -------------------------------------------------------------

def _points(path: str, field=None):
    try:
        return read_points(path, field)
    except FileNotFoundError:
        raise UsageError(f"no such points file: {path!r}") from None


def _configuration(path: str) -> PointConfiguration:
    pts = _points(path)
    if not pts:
        raise UsageError(f"points file {path!r} contains no points")
    try:
        return PointConfiguration(pts)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _spec(args) -> QuarticSpec:
    given = {n: getattr(args, n) for n in CONSTITUENT_FLAGS if getattr(args, n) is not None}
    if args.spec:
        if args.family or given:
            raise UsageError("--spec cannot be combined with --family or constituent flags")
        try:
            return read_spec(args.spec)
        except FileNotFoundError:
            raise UsageError(f"no such spec file: {args.spec!r}") from None
    if not args.family:
        raise UsageError("need --spec PATH or --family TAG")
    forms = {}
    for name, text in given.items():
        try:
            forms[name] = parse_form(text)
        except ParseError as exc:
            raise ParseError(exc.message, exc.token, f"--{name}") from None
    return build_family(args.family, forms)


def _spec_inputs(args, spec: QuarticSpec) -> dict:
    if args.spec:
        return {"spec": args.spec}
    return {"family": spec.tag, **{n: f for n, f in spec.constituents}}


# -- commands ------------------------------------------------------------------

def cmd_defect(args) -> Report:
    cfg = _configuration(args.points)
    rep = conditions_defect(cfg, args.degree)
    nonsep = [i for i, ok in enumerate(rep.separable) if not ok]
    return Report(
        "defect",
        {"points": args.points, "degree": args.degree},
        {
            "points": rep.num_points,
            "ambient_dimension": rep.n,
            "degree": rep.degree,
            "monomials": comb(rep.n + rep.degree, rep.degree),
            "rank": rep.rank,
            "defect": rep.defect,
            "independent": rep.independent,
            "non_separable": nonsep,
        },
        ["defect-evaluation-rank"],
    )


def cmd_separator(args) -> Report:
    cfg = _configuration(args.points)
    if args.degree != 3 and args.method == "constructive":
        raise UsageError(f"the constructive separator only builds cubics, got --degree {args.degree}")
    if args.exclude >= len(cfg):
        raise UsageError(f"--exclude {args.exclude} out of range for {len(cfg)} points")
    p = cfg[args.exclude]
    sigma = [q for i, q in enumerate(cfg) if i != args.exclude]
    inputs = {"points": args.points, "exclude": args.exclude, "degree": args.degree, "method": args.method}
    if args.method == "oracle":
        form = separating_form_oracle(sigma, p, args.degree)
        results = {"excluded_point": p, "separable": form is not None,
                   "form": form if form is not None else None}
        return Report("separator", inputs, results, ["separating-form-oracle"])
    cert = build_separating_cubic(sigma, p)
    results = {
        "excluded_point": p,
        "case": cert.trace.get("case"),
        "form": cert.form,
        "verified": cert.verify(),
        "trace": cert.trace,
    }
    return Report("separator", inputs, results, ["separating-cubic-construction"])


def cmd_agp(args) -> Report:
    cfg = _configuration(args.points)
    try:
        th = AgpThresholds(args.max_line, args.max_conic, args.max_plane)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = agp_check(cfg, th, args.conic_semantics)
    return Report(
        "agp",
        {"points": args.points, "max_line": th.max_on_line, "max_conic": th.max_on_conic,
         "max_plane": th.max_on_plane, "conic_semantics": args.conic_semantics},
        {
            "points": len(cfg),
            "max_on_line": rep.max_on_line,
            "max_on_conic": rep.max_on_conic,
            "max_on_plane": rep.max_on_plane,
            "line_ok": rep.line_ok,
            "conic_ok": rep.conic_ok,
            "plane_ok": rep.plane_ok,
            "passed": rep.passed,
            "witness_line": list(rep.witnesses["line"]),
            "witness_conic": list(rep.witnesses["conic"]),
            "witness_plane": list(rep.witnesses["plane"]),
        },
        ["almost-general-position"],
    )


def cmd_family(args) -> Report:
    spec = _spec(args)
    results = {"family": spec.tag, "equation": FAMILY_EQUATIONS[spec.tag], "F": spec.form}
    for name, f in spec.constituents:
        results[name] = f
    citations = [f"family-equation:{spec.tag}"]
    if args.write_points and not args.solve:
        raise UsageError("--write-points needs --solve")
    if args.solve:
        nodes = designed_nodes(spec)
        kinds = [classify_singularity(spec, P).classification for P in nodes]
        results["nodes"] = len(nodes)
        results["node_points"] = list(nodes)
        results["classification"] = dict(sorted(Counter(kinds).items()))
        citations.append("node-system-exact-solution")
        if args.write_points:
            Path(args.write_points).write_text(format_points(nodes, kinds))
    if args.write_spec:
        Path(args.write_spec).write_text(format_spec(spec))
    return Report("family", _spec_inputs(args, spec), results, citations)


def cmd_scan(args) -> Report:
    spec = _spec(args)
    res = scan(spec, args.prime, args.threads)
    kinds = [r.classification for r in res.reports]
    if args.write_points:
        Path(args.write_points).write_text(format_points([r.point for r in res.reports], kinds))
    results = {
        "prime": args.prime,
        "points_enumerated": res.points_enumerated,
        "singular_points": len(res.reports),
        "classification": dict(sorted(Counter(kinds).items())),
        "points": [f"{r.point} {k}" for r, k in zip(res.reports, kinds)],
    }
    inputs = {**_spec_inputs(args, spec), "prime": args.prime, "threads": args.threads}
    return Report("scan", inputs, results, ["exhaustive-chart-scan"])


def cmd_classify(args) -> Report:
    spec = _spec(args)
    field = GF(args.prime) if args.prime else QQ
    try:
        P = parse_point(args.point, field, 4)
    except ParseError as exc:
        raise ParseError(exc.message, exc.token, "--point") from None
    rep = classify_singularity(spec, P)
    inputs = {**_spec_inputs(args, spec), "point": args.point, "field": str(field)}
    results = {
        "point": rep.point,
        "on_hypersurface": rep.on_hypersurface,
        "gradient_vanishes": rep.gradient_vanishes,
        "hessian_rank": rep.hessian_rank,
        "classification": rep.classification,
    }
    return Report("classify", inputs, results, ["hessian-rank-node-criterion"])


def cmd_invariants(args) -> Report:
    inputs: dict = {}
    if args.points is not None:
        if args.nodes is not None or args.defect is not None:
            raise UsageError("--points cannot be combined with --nodes/--defect")
        cfg = _configuration(args.points)
        nodes, defect = len(cfg), conditions_defect(cfg, 3).defect
        inputs["points"] = args.points
    else:
        if args.nodes is None or args.defect is None:
            raise UsageError("need --nodes and --defect (or --points)")
        nodes, defect = args.nodes, args.defect
        inputs.update(nodes=nodes, defect=defect)
    inv = cynk_invariants(nodes, defect)
    return Report("invariants", inputs, inv.as_dict(), ["cynk-hodge-formula"])


def _infer_rule(args) -> str:
    if args.rule:
        return args.rule
    if args.k2l is not None or args.k2s is not None:
        return "shokurov"
    if args.chi is not None or args.standard:
        return "valera"
    return "bound"


def _require(args, names: tuple[str, ...], rule: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"rule {rule} needs {' '.join(missing)}")


def _forbid(args, names: tuple[str, ...], rule: str) -> None:
    extra = [f"--{n}" for n in names if getattr(args, n) not in (None, False)]
    if extra:
        raise UsageError(f"rule {rule} does not take {' '.join(extra)}")


def cmd_verdict(args) -> Report:
    rule = _infer_rule(args)
    results: dict = {}
    if rule == "bound":
        _require(args, ("degree", "nodes"), rule)
        _forbid(args, ("chi", "standard", "k2l", "k2s", "r", "defect"), rule)
        inputs = {"rule": rule, "degree": args.degree, "nodes": args.nodes,
                  "plane": args.plane, "quadric": args.quadric}
        v = bound_verdict(args.degree, args.nodes, args.plane, args.quadric)
    elif rule == "valera":
        _forbid(args, ("k2l", "k2s", "r", "degree", "plane", "quadric"), rule)
        if args.chi is None:
            _require(args, ("nodes", "defect"), rule)
            inv = cynk_invariants(args.nodes, args.defect)
            chi = inv.chi
            results["chi_from"] = f"nodes={args.nodes}, defect={args.defect}"
        else:
            _forbid(args, ("nodes", "defect"), rule)
            chi = args.chi
        inputs = {"rule": rule, "chi": chi, "standard": args.standard}
        results["chi"] = chi
        v = valera_verdict(chi, args.standard)
    else:
        _require(args, ("k2l", "k2s", "r"), rule)
        _forbid(args, ("chi", "standard", "degree", "nodes", "defect", "plane", "quadric"), rule)
        inputs = {"rule": rule, "k2l": args.k2l, "k2s": args.k2s, "r": args.r}
        delta = discriminant_class(args.k2l, args.k2s, args.r)
        c = 2 * fr_canonical(args.r) + delta
        results.update(discriminant=[delta.a, delta.b], canonical=[*fr_canonical(args.r).coefficients],
                       twice_canonical_plus_discriminant=[c.a, c.b])
        v = shokurov_verdict(delta)
    results.update(conclusion=v.conclusion, rule=v.rule, proven=not v.conjectural)
    if v.detail:
        results["detail"] = v.detail
    return Report("verdict", inputs, results, [v.rule], list(v.assumptions))


COMMANDS: dict[str, Callable] = {
    "defect": cmd_defect,
    "separator": cmd_separator,
    "agp": cmd_agp,
    "family": cmd_family,
    "scan": cmd_scan,
    "classify": cmd_classify,
    "invariants": cmd_invariants,
    "verdict": cmd_verdict,
}

# errors raised by the mathematical modules when a precondition or a
# construction fails; everything input-related maps to exit code 2
_COMPUTATION_ERRORS = (SeparatorError, NotRationalError, DegenerateConfigurationError,
                       NotOnHypersurfaceError, ArithmeticError, ValueError)


def execute(argv: list[str]) -> CliResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report = COMMANDS[args.command](args)
        text = report.render(as_json=args.json, timestamp=args.timestamps)
        if args.out:
            Path(args.out).write_text(text)
            return CliResult(0, "", "")
        return CliResult(0, text, "")
    except (UsageError, ParseError, FamilyError) as exc:
        return CliResult(2, "", f"quarticnodes: error: {exc}\n")
    except _COMPUTATION_ERRORS as exc:
        return CliResult(1, "", f"quarticnodes: computation error: {exc}\n")
    except OSError as exc:
        return CliResult(1, "", f"quarticnodes: I/O error: {exc}\n")

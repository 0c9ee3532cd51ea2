"""Command-line front end.

Every command builds a report with the fields command, inputs_echo, results,
provenance and errors.  With ``--json`` the report is printed as JSON with
sorted keys and every integer written as a decimal string; otherwise a short
table is printed.

Exit codes: 0 success, 2 input error, 3 uncertified verification.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from .arrangement import (
    Arrangement,
    char_poly,
    classify,
    critical_class_bidegrees,
    csm_vector_arrangement,
    decone,
    ml_degree_arrangement,
    region_counts,
    triple,
)
from .critical import CountReport, critical_count_r1, critical_count_r2, curve_critical_count, draw_exponents
from .errors import ComputationError, NonGenericError, ZeroPolynomialError
from .exactmath import UniPoly, as_rational, logconcave_no_internal_zeros
from .newton import (
    HomogeneousPolynomial,
    LaurentPolynomial,
    csm_hypersurface_vector,
    gradient_degree,
    newton_polytope,
    statistical_ml_degree,
)
from .parsing import arrangement_document, format_laurent, parse_arrangement, parse_laurent

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNCERTIFIED = 3

DEFAULT_TRIALS = 3


class InputError(Exception):
    pass


def _encode(value: Any) -> Any:
    """JSON-ready copy with integers and rationals as decimal strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def render_json(report: dict) -> str:
    return json.dumps(_encode(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_table(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    for key in sorted(report["results"]):
        value = _encode(report["results"][key])
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"  {key}: {value}")
    for err in report["errors"]:
        lines.append(f"error: {err}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def _polynomial(text: str) -> LaurentPolynomial:
    g = parse_laurent(text)
    if g.is_zero():
        raise InputError("polynomial is zero")
    return g


def _homogeneous(text: str) -> HomogeneousPolynomial:
    g = _polynomial(text)
    try:
        return HomogeneousPolynomial(g.nvars, g.terms)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _arrangement(source: str) -> Arrangement:
    """Inline JSON or a path to a JSON file."""
    text = source
    if not source.lstrip().startswith("{"):
        path = Path(source)
        if not path.is_file():
            raise InputError(f"not inline JSON and no such file: {source}")
        text = path.read_text(encoding="utf-8")
    return parse_arrangement(text)


def _split_values(items: list[str]) -> list[str]:
    out = []
    for item in items:
        out.extend(p for p in item.replace(",", " ").split() if p)
    if not out:
        raise InputError("no values given")
    return out


def _integers(items: list[str]) -> list[int]:
    try:
        return [int(v) for v in _split_values(items)]
    except ValueError as exc:
        raise InputError(f"expected integers: {exc}") from None


def _rationals(items: list[str]) -> list[Fraction]:
    try:
        return [as_rational(v) for v in _split_values(items)]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"expected rational numbers: {exc}") from None


def _poly_echo(g: LaurentPolynomial) -> dict:
    return {"polynomial": format_laurent(g), "nvars": g.nvars}


def _charpoly_results(chi: UniPoly) -> dict:
    return {"charpoly": str(chi), "coefficients": list(chi.coeffs)}


# ---------------------------------------------------------------------------
# command handlers: each returns (inputs_echo, results, notes)
# ---------------------------------------------------------------------------


def _hyp(args):
    g = _polynomial(args.polynomial)
    n = g.nvars
    v = csm_hypersurface_vector(newton_polytope(g), n)
    results: dict[str, Any] = {"n": n}
    if args.action == "csm":
        props = v.properties()
        results.update(
            v=list(v.values),
            signed=v.signed(),
            euler_characteristic=v.euler,
            ml_degree=v.ml_degree,
            logconcave=props.logconcave,
            no_internal_zeros=props.no_internal_zeros,
            nonnegative=props.nonnegative,
        )
    elif args.action == "ml":
        results["ml_degree"] = v.ml_degree
    else:
        results["v"] = list(v.values)
        results["statistical_ml_degree"] = statistical_ml_degree(newton_polytope(g), n)
    return _poly_echo(g), results, []


def _proj(args):
    h = _homogeneous(args.polynomial)
    rep = gradient_degree(h)
    results: dict[str, Any] = {"n": h.nvars - 1, "degree": h.degree}
    if args.action == "csm":
        results["nu"] = list(rep.nu)
        results["csm"] = [(-1) ** i * v for i, v in enumerate(rep.nu)]
    elif args.action == "grad":
        results.update(
            vtable=[list(row) for row in rep.vtable.entries],
            nu=list(rep.nu),
            mu=list(rep.mu.values),
            gradient_degree=rep.gradient_degree,
            homaloidal=rep.homaloidal,
        )
    else:
        results.update(gradient_degree=rep.gradient_degree, homaloidal=rep.homaloidal)
    return _poly_echo(h), results, []


def _needs_hyperplane(args, a: Arrangement) -> int:
    if args.hyperplane is None:
        raise InputError(f"arr {args.action} needs --hyperplane INDEX")
    if not 0 <= args.hyperplane < len(a):
        raise InputError(f"--hyperplane {args.hyperplane} out of range for {len(a)} hyperplanes")
    return args.hyperplane


def _arr(args):
    a = _arrangement(args.arrangement)
    echo = arrangement_document(a)
    notes: list[str] = []
    action = args.action
    if action == "charpoly":
        results = _charpoly_results(char_poly(a))
        c = classify(a)
        results.update(essential=c.essential, central=c.central, boolean=c.boolean)
    elif action == "csm":
        v = csm_vector_arrangement(a)
        props = v.properties()
        results = {
            "v": list(v.values),
            "signed": v.signed(),
            "euler_characteristic": v.euler,
            "logconcave": props.logconcave,
            "no_internal_zeros": props.no_internal_zeros,
            "nonnegative": props.nonnegative,
        }
    elif action == "ml":
        results = {"ml_degree": ml_degree_arrangement(a)}
        if classify(a).boolean:
            notes.append("complement is a torus")
    elif action == "triple":
        i = _needs_hyperplane(args, a)
        t = triple(a, i)
        chi1, chi, chi0 = char_poly(a), char_poly(t.deletion), char_poly(t.restriction)
        results = {
            "hyperplane": i,
            "deletion": arrangement_document(t.deletion),
            "restriction": arrangement_document(t.restriction),
            "charpoly_full": str(chi1),
            "charpoly_deletion": str(chi),
            "charpoly_restriction": str(chi0),
            "deletion_restriction_holds": chi1 == chi - chi0,
        }
        if all(classify(x).essential for x in (a, t.deletion, t.restriction)):
            ml = [ml_degree_arrangement(x) for x in (a, t.deletion, t.restriction)]
            results["ml_degrees"] = {"full": ml[0], "deletion": ml[1], "restriction": ml[2]}
            results["ml_additivity_holds"] = ml[1] == ml[0] - ml[2]
    elif action == "decone":
        i = _needs_hyperplane(args, a)
        d = decone(a, i)
        results = {"hyperplane": i, "decone": arrangement_document(d)}
        results.update(_charpoly_results(char_poly(d)))
    elif action == "regions":
        rc = region_counts(a)
        results = {"regions": rc.regions, "bounded": rc.bounded}
        if not rc.essential:
            notes.append("arrangement is not essential; no region is bounded in the strict sense")
    else:
        results = {
            "bidegrees": [
                {"coefficient": v, "bidegree": list(bd)} for v, bd in critical_class_bidegrees(a)
            ]
        }
    return echo, results, notes


def _count_summary(rep: CountReport) -> dict:
    return {
        "exponents": list(rep.exponents),
        "count": rep.count,
        "expected": rep.expected,
        "certified": rep.certified,
        "agrees": rep.agrees,
        "squarefree": rep.squarefree,
        "shears_used": rep.shears_used,
        "degenerate_draws": rep.degenerate_draws,
        "counts": rep.counts,
    }


def _verify(args):
    trials = args.trials if args.trials is not None else DEFAULT_TRIALS
    if trials < 1:
        raise InputError("--trials must be at least 1")
    rng = random.Random(args.seed)
    fixed = _integers([args.exponents]) if args.exponents else None
    if args.kind == "r1":
        points = _rationals(args.inputs)
        echo: dict[str, Any] = {"points": [str(p) for p in points]}
        n_exp = len(points)
    elif args.kind == "r2":
        a = _arrangement(" ".join(args.inputs))
        echo = arrangement_document(a)
        n_exp = len(a)
    else:
        g = _polynomial(" ".join(args.inputs))
        if g.nvars != 2:
            raise InputError("verify curve needs a polynomial in x and y")
        echo = _poly_echo(g)
        n_exp = 2
    if fixed is not None and len(fixed) != n_exp:
        raise InputError(f"expected {n_exp} exponents, got {len(fixed)}")
    runs = []
    for _ in range(1 if fixed is not None else trials):
        u = tuple(fixed) if fixed is not None else draw_exponents(n_exp, rng)
        shear_seed = rng.randrange(2**32)
        if args.kind == "r1":
            rep = critical_count_r1(points, u)
        elif args.kind == "r2":
            rep = critical_count_r2(a, u, seed=shear_seed)
        else:
            rep = curve_critical_count(g, u, seed=shear_seed)
        runs.append(rep)
    results = {
        "trials": [_count_summary(r) for r in runs],
        "certified": all(r.certified for r in runs),
        "all_agree": all(r.agrees for r in runs),
    }
    return echo, results, []


def _props(args):
    seq = _integers(args.values)
    p = logconcave_no_internal_zeros(seq)
    results = {
        "logconcave": p.logconcave,
        "no_internal_zeros": p.no_internal_zeros,
        "nonnegative": p.nonnegative,
        "all": p.all,
    }
    return {"sequence": seq}, results, []


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit the report as JSON")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for exponent and shear draws (default 0)")
    common.add_argument("--trials", type=int, default=argparse.SUPPRESS,
                        help=f"number of exponent draws for verify (default {DEFAULT_TRIALS})")
    return common


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(
        prog="mldegree",
        description="CSM classes, ML degrees and gradient degrees from exact polytope and arrangement combinatorics.",
        parents=[common],
    )
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    hyp = groups.add_parser("hyp", parents=[common], help="hypersurfaces in the torus")
    hyp.add_argument("action", choices=["csm", "ml", "stat-ml"])
    hyp.add_argument("polynomial", help='Laurent polynomial, e.g. "x*y + x + y^-1"')
    hyp.set_defaults(handler=_hyp)

    proj = groups.add_parser("proj", parents=[common], help="projective hypersurfaces")
    proj.add_argument("action", choices=["csm", "grad", "homaloidal"])
    proj.add_argument("polynomial", help='homogeneous polynomial, e.g. "x^2 + y^2 + z^2"')
    proj.set_defaults(handler=_proj)

    arr = groups.add_parser("arr", parents=[common], help="hyperplane arrangements")
    arr.add_argument("action", choices=["charpoly", "csm", "ml", "triple", "decone", "regions", "bidegrees"])
    arr.add_argument("arrangement", help="arrangement JSON, inline or as a file path")
    arr.add_argument("--hyperplane", type=int, help="hyperplane index for triple and decone")
    arr.set_defaults(handler=_arr)

    ver = groups.add_parser("verify", parents=[common], help="count critical points by elimination")
    ver.add_argument("kind", choices=["r1", "r2", "curve"])
    ver.add_argument("inputs", nargs="+",
                     help="r1: points like 0,1,2; r2: arrangement JSON or path; curve: polynomial in x, y")
    ver.add_argument("--exponents", help="fixed exponent vector such as 3,-5,7 instead of random draws")
    ver.set_defaults(handler=_verify)

    props = groups.add_parser("props", parents=[common], help="sequence properties")
    props.add_argument("check", choices=["logconcave"])
    props.add_argument("values", nargs="+", help="integers, comma or space separated")
    props.set_defaults(handler=_props)
    return parser


def _options(argv: list[str] | None) -> argparse.Namespace:
    args = build_parser().parse_args(argv)
    args.json = getattr(args, "json", False)
    args.seed = getattr(args, "seed", 0)
    args.trials = getattr(args, "trials", None)
    return args


def run(args: argparse.Namespace) -> tuple[dict, int]:
    """Run a parsed command; returns (report, exit code)."""
    sub = getattr(args, "action", None) or getattr(args, "kind", None) or getattr(args, "check")
    report: dict[str, Any] = {
        "command": f"{args.group} {sub}",
        "inputs_echo": {},
        "results": {},
        "provenance": {"seed": args.seed, "trials": 0},
        "errors": [],
    }
    code = EXIT_OK
    try:
        echo, results, notes = args.handler(args)
        report["inputs_echo"] = echo
        report["results"] = results
        if notes:
            results["notes"] = notes
        if args.group == "verify":
            report["provenance"]["trials"] = len(results["trials"])
            if not results["certified"]:
                code = EXIT_UNCERTIFIED
    except (NonGenericError, ZeroPolynomialError) as exc:
        report["errors"].append(f"{type(exc).__name__}: {exc}")
        if args.group == "verify":
            report["results"] = {"certified": False}
            code = EXIT_UNCERTIFIED
        else:
            code = EXIT_INPUT
    except (InputError, ComputationError, ValueError) as exc:
        report["errors"].append(f"{type(exc).__name__}: {exc}")
        code = EXIT_INPUT
    return report, code


def dispatch(argv: list[str] | None = None) -> tuple[dict, int]:
    """Parse ``argv``, run the command and return (report, exit code)."""
    return run(_options(argv))


def main(argv: list[str] | None = None) -> int:
    args = _options(argv)
    report, code = run(args)
    out = render_json(report) if args.json else render_table(report)
    stream = sys.stdout if args.json or code != EXIT_INPUT else sys.stderr
    stream.write(out)
    stream.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())

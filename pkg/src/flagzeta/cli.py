"""The `flagzeta` command line: predict, alpha, cfunction, count, verify, zeta-curve.

Machine-readable results go to stdout, logs to stderr. Exit status is 0 on
success, 1 when a verification check fails, 2 on usage or cap errors and 3
when an internal consistency check of the exact arithmetic fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections.abc import Callable
from fractions import Fraction
from typing import Any

from .cone_lq import (
    alpha_star,
    alpha_star_via_limit,
    chi_value,
    effective_cone,
    lq_bruteforce,
    lq_line,
    lq_tail_bound,
)
from .counter import table_to_csv, table_to_json
from .curve_zeta import (
    CurveZeta,
    curve_places,
    curve_residue,
    make_curve,
    parse_numerator,
    point_counts,
    zeta_at,
    zeta_rat,
)
from .eisenstein import global_c, rho_line
from .errors import ConfigurationError, FlagZetaError
from .rational_fn import fraction_to_json, pole_order, ratfn_to_json, scaled_to_json
from .root_system import (
    RootSystem,
    WeylElt,
    identity,
    longest_element,
    multiply,
    parabolic_datum,
    parse_group,
    parse_parabolic,
    simple_reflection,
)
from .tamagawa import predict
from .types import VerifyOptions
from .verify import count_variety, default_max_degree, get_variety, report_to_json, verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


# ============================================================================
# Argument parsing
# ============================================================================


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=2, help="size of the constant field F_q")
    common.add_argument("--genus", type=int, default=0, help="genus of the base curve")
    common.add_argument(
        "--zeta-numerator",
        default="1",
        help="coefficients of P(t) from degree 0, comma separated (default: P^1)",
    )
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for counting")
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="flagzeta",
        description="Height zeta residues of split flag varieties over F_q(t).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", parents=[common], help="θ*(V) by both residue pipelines")
    p.add_argument("--group", required=True, help='e.g. "A2", "B2", "G2", "A1xA1"')
    p.add_argument("--parabolic", default="", help='1-based simple roots of I, e.g. "2"')
    p.add_argument("--truncate", type=int, default=None, help="Euler product degree bound")

    p = sub.add_parser("alpha", parents=[common], help="α*(V) and the cone sum L_q")
    p.add_argument("--group", required=True)
    p.add_argument("--parabolic", default="")
    p.add_argument("--s0", type=Fraction, default=Fraction(2), help="evaluation point > 1")
    p.add_argument("--cap", type=int, default=20, help="bound on <y, ω^{-1}> in the sum")

    p = sub.add_parser("cfunction", parents=[common], help="global c-function along ρ + u·ρ")
    p.add_argument("--group", required=True)
    p.add_argument("--w", default="longest", help='"longest", "identity" or a word "1,2,1"')
    p.add_argument("--parabolic", default=None, help="with --w longest: use w̄_I")

    p = sub.add_parser("count", parents=[common], help="points of bounded height")
    p.add_argument("--variety", required=True, help="P1, P2, P3, P4, P1xP1 or FL3")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--strategy", choices=["auto", "scan", "sieve"], default="auto")

    p = sub.add_parser("verify", parents=[common], help="compare all three pipelines")
    p.add_argument("--variety", required=True)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--truncate", type=int, default=12)

    p = sub.add_parser("zeta-curve", parents=[common], help="zeta data of the base curve")
    p.add_argument("--max-degree", type=int, default=6, help="largest place degree listed")
    return parser


def _curve(args: argparse.Namespace) -> CurveZeta:
    return make_curve(args.q, args.genus, parse_numerator(args.zeta_numerator))


def _group(args: argparse.Namespace) -> tuple[RootSystem, frozenset[int]]:
    rs = parse_group(args.group)
    return rs, parse_parabolic(args.parabolic or "", rs)


def _parse_word(text: str, rs: RootSystem) -> WeylElt:
    if text == "identity":
        return identity(rs)
    w = identity(rs)
    for token in text.split(","):
        token = token.strip()
        if not token.isdigit() or not 1 <= int(token) <= rs.rank:
            raise ConfigurationError(f'Invalid Weyl word "{text}" for {rs}')
        w = multiply(rs, w, simple_reflection(rs, int(token) - 1))
    return w


# ============================================================================
# Commands
# ============================================================================


def cmd_predict(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    curve = _curve(args)
    rs, I = _group(args)
    prediction = predict(curve, rs, I, truncate=args.truncate)
    out: dict[str, Any] = {
        "group": str(rs),
        "parabolic": sorted(i + 1 for i in I),
        "q": curve.q,
        "genus": curve.genus,
        "alpha_star": fraction_to_json(prediction.alpha_star),
        "beta": prediction.beta,
        "tau": scaled_to_json(prediction.tau),
        "theta_star": scaled_to_json(prediction.theta_star),
        "theta_star_value": prediction.theta_star.value(curve.q),
        "lhs": scaled_to_json(prediction.lhs),
        "identity_holds": prediction.identity_holds,
    }
    if prediction.truncated_tau is not None:
        out["truncated_tau"] = prediction.truncated_tau.value
        out["truncated_tau_tail"] = prediction.truncated_tau.tail
    return out, EXIT_OK


def cmd_alpha(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    rs, I = _group(args)
    pd = parabolic_datum(rs, I)
    cone = effective_cone(pd)
    a = pd.anticanonical_coords
    lq = lq_line(cone, a, args.q)
    s0 = Fraction(args.s0)
    summed = lq_bruteforce(cone, a, args.q, s0, args.cap)
    at_s0 = lq(Fraction(1, args.q ** int(s0))) if s0.denominator == 1 else None
    return {
        "group": str(rs),
        "parabolic": sorted(i + 1 for i in I),
        "q": args.q,
        "anticanonical": list(a),
        "alpha_star": fraction_to_json(alpha_star(pd)),
        "alpha_star_via_limit": fraction_to_json(alpha_star_via_limit(pd, args.q)),
        "chi": fraction_to_json(chi_value(cone, a)),
        "lq_line": ratfn_to_json(lq),
        "s0": fraction_to_json(s0),
        "lq_at_s0": None if at_s0 is None else fraction_to_json(at_s0),
        "lq_bruteforce": fraction_to_json(summed) if isinstance(summed, Fraction) else summed,
        "tail_bound": lq_tail_bound(pd.t, args.q, s0, args.cap),
    }, EXIT_OK


def cmd_cfunction(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    curve = _curve(args)
    rs = parse_group(args.group)
    if args.w == "longest":
        J = parse_parabolic(args.parabolic, rs) if args.parabolic is not None else frozenset(range(rs.rank))
        w = longest_element(rs, J)
    else:
        w = _parse_word(args.w, rs)
    f = global_c(curve, rs, w, rho_line(rs, rs.rho))
    return {
        "group": str(rs),
        "q": curve.q,
        "w": [k + 1 for k in w.word],
        "line": {"base": list(rs.rho), "direction": list(rs.rho)},
        "c": ratfn_to_json(f),
        "pole_order": pole_order(f, 1),
    }, EXIT_OK


def cmd_count(args: argparse.Namespace) -> tuple[dict[str, Any] | str, int]:
    variety = get_variety(args.variety)
    max_degree = args.max_degree if args.max_degree is not None else default_max_degree(variety, args.q)
    table = count_variety(variety, args.q, max_degree, jobs=args.jobs, strategy=args.strategy)
    if args.format == "csv":
        return table_to_csv(table), EXIT_OK
    out = {"variety": variety.name, "q": args.q, **table_to_json(table)}
    return out, EXIT_OK


def cmd_verify(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    if args.genus != 0 or parse_numerator(args.zeta_numerator) != (1,):
        raise ConfigurationError("verify counts points over F_q(t) and needs the rational base curve")
    options = VerifyOptions(
        q=args.q,
        max_degree=args.max_degree,
        truncate=args.truncate,
        jobs=args.jobs,
        timings=args.timings,
    )
    report = verify(args.variety, options)
    return report_to_json(report), EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_zeta_curve(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    curve = _curve(args)
    D = args.max_degree
    return {
        "q": curve.q,
        "genus": curve.genus,
        "numerator": list(curve.numerator),
        "class_number": curve.class_number,
        "zeta": ratfn_to_json(zeta_rat(curve)),
        "residue": scaled_to_json(curve_residue(curve)),
        "zeta_2": fraction_to_json(zeta_at(curve, 2)),
        "zeta_3": fraction_to_json(zeta_at(curve, 3)),
        "point_counts": point_counts(curve, D),
        "places_by_degree": curve_places(curve, D),
    }, EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], tuple[dict[str, Any] | str, int]]] = {
    "predict": cmd_predict,
    "alpha": cmd_alpha,
    "cfunction": cmd_cfunction,
    "count": cmd_count,
    "verify": cmd_verify,
    "zeta-curve": cmd_zeta_curve,
}


# ============================================================================
# Entry point
# ============================================================================


def _emit(result: dict[str, Any] | str, fmt: str) -> None:
    if isinstance(result, str):
        sys.stdout.write(result)
        return
    if fmt == "csv":
        raise ConfigurationError("csv output is only available for count")
    sys.stdout.write(json.dumps(result, indent=2, ensure_ascii=False) + "\n")


def _case(args: argparse.Namespace) -> str:
    """The inputs that identify a run, e.g. "group=A2 parabolic=2 q=3"."""
    keys = ("variety", "group", "parabolic", "q", "genus", "zeta_numerator")
    parts = [
        f"{k}={getattr(args, k)}" for k in keys if getattr(args, k, None) not in (None, "")
    ]
    return " ".join(parts) or "no case arguments"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    start = time.perf_counter()
    try:
        if args.jobs < 1:
            raise ConfigurationError(f"--jobs must be >= 1, got {args.jobs}")
        result, status = COMMANDS[args.command](args)
        if args.timings and isinstance(result, dict) and "timings" not in result:
            result["timings"] = {"total": round(time.perf_counter() - start, 6)}
        _emit(result, args.format)
    except FlagZetaError as err:
        print(f"flagzeta {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as err:
        logger.debug("internal consistency check failed", exc_info=True)
        print(
            f"flagzeta {args.command}: internal error ({_case(args)}): {err}",
            file=sys.stderr,
        )
        return EXIT_INTERNAL
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Cross-checks of the three residue pipelines on the test varieties."""

from __future__ import annotations

import logging
import time
from typing import Any

from .counter import (
    CountTable,
    Strategy,
    empirical_residue,
    enumerate_flag_sl3,
    enumerate_p1xp1,
    enumerate_projective,
)
from .curve_zeta import default_curve
from .errors import ConfigurationError
from .limits import EMPIRICAL_TOLERANCE, TRUNCATION_TOLERANCE
from .rational_fn import scaled_to_json
from .root_system import parabolic_datum, parse_group, parse_parabolic
from .tamagawa import predict
from .types import VARIETIES, EmpiricalCheck, Variety, VerifyOptions, VerifyReport

logger = logging.getLogger(__name__)


def get_variety(name: str) -> Variety:
    try:
        return VARIETIES[name]
    except KeyError as err:
        raise ConfigurationError(
            f'Unknown variety "{name}". Expected one of {", ".join(VARIETIES)}'
        ) from err


def default_max_degree(variety: Variety, q: int) -> int:
    if variety.kind == "projective":
        if variety.n == 1:
            return 10 if q <= 3 else 6
        return {2: 4, 3: 3, 4: 2}[variety.n]
    return 6 if variety.kind == "product" else 4


def count_variety(
    variety: Variety,
    q: int,
    max_degree: int,
    jobs: int = 1,
    strategy: Strategy = "auto",
) -> CountTable:
    """Counts on the box d_i <= max_degree (Σ d_i <= max_degree for products)."""
    if variety.kind == "projective":
        return enumerate_projective(variety.n, q, max_degree, strategy=strategy, jobs=jobs)
    if variety.kind == "product":
        return enumerate_p1xp1(q, max_degree, max_degree, max_total=max_degree, jobs=jobs)
    return enumerate_flag_sl3(q, max_degree, max_degree, max_total=max_degree, jobs=jobs)


def verify(name: str, options: VerifyOptions) -> VerifyReport:
    variety = get_variety(name)
    curve = default_curve(options.q)
    rs = parse_group(variety.group)
    I = parse_parabolic(variety.parabolic, rs)
    pd = parabolic_datum(rs, I)
    max_degree = (
        options.max_degree
        if options.max_degree is not None
        else default_max_degree(variety, options.q)
    )
    timings: dict[str, float] = {}

    start = time.perf_counter()
    prediction = predict(curve, rs, I, truncate=options.truncate)
    timings["predict"] = time.perf_counter() - start

    truncated = prediction.truncated_tau
    if truncated is None:
        raise ConfigurationError("verify needs a truncation degree")
    closed = float(prediction.tau.coeff)
    relerr = abs(truncated.value - closed) / closed

    start = time.perf_counter()
    table = count_variety(variety, options.q, max_degree, jobs=options.jobs)
    timings["count"] = time.perf_counter() - start

    start = time.perf_counter()
    residue = empirical_residue(table, pd, options.q)
    timings["residue"] = time.perf_counter() - start

    target = float(prediction.theta_star.coeff)
    exact_match = None if residue.exact is None else residue.exact == prediction.theta_star
    empirical = EmpiricalCheck(
        max_degree=max_degree,
        exact=residue.exact,
        exact_match=exact_match,
        estimate=residue.estimate,
        relative_error=abs(residue.estimate - target) / target,
        threshold=EMPIRICAL_TOLERANCE[variety.tolerance_key],
    )
    if exact_match is None:
        logger.warning(
            "%s at q=%d: no exact fit, comparing estimate %.6g with %.6g (threshold %.2f)",
            name, options.q, residue.estimate, target, empirical.threshold,
        )

    report = VerifyReport(
        variety=name,
        group=variety.group,
        parabolic=sorted(i + 1 for i in I),
        q=options.q,
        theta_star=prediction.theta_star,
        lhs=prediction.lhs,
        tau_truncated_relerr=relerr,
        truncation_tolerance=TRUNCATION_TOLERANCE,
        empirical=empirical,
        timings=timings if options.timings else {},
    )
    if not report.passed:
        logger.warning("verification of %s at q=%d failed", name, options.q)
    return report


def report_to_json(report: VerifyReport) -> dict[str, Any]:
    emp = report.empirical
    out: dict[str, Any] = {
        "case": {"variety": report.variety, "group": report.group,
                 "parabolic": report.parabolic, "q": report.q},
        "theta_star": scaled_to_json(report.theta_star),
        "lhs": scaled_to_json(report.lhs),
        "identity_holds": report.identity_holds,
        "tau_truncated_relerr": report.tau_truncated_relerr,
        "empirical": {
            "max_degree": emp.max_degree,
            "exact": None if emp.exact is None else scaled_to_json(emp.exact),
            "exact_match": emp.exact_match,
            "estimate": emp.estimate,
            "relative_error": emp.relative_error,
            "threshold": emp.threshold,
        },
        "passed": report.passed,
    }
    if report.timings:
        out["timings"] = {k: round(v, 6) for k, v in report.timings.items()}
    return out

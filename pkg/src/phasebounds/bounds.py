"""Closed-form precision bounds and the constrained optimization over b.

Every function returns a lower bound on the summed variance (radians^2) of
an unbiased simultaneous estimate of d phases, assuming one experimental
repetition (scale by 1/nu for nu repetitions).  The optimized
entangled-coherent bounds come in two regimes: Interior, where the
unconstrained optimizer b_star is admissible and the bound takes its
headline closed form, and Clamped, where normalizability caps the weight at
b^2 = Gamma and the general trace expression is evaluated there.

The headline closed forms (valid in the Interior regime) are, with
n = photon-number argument,

    coherent, m=1:  d (sqrt d + 1)^2 / (4 (1 + alpha_sq)^2)
    coherent, m=2:  d (sqrt d + 1)^2 / 4 * ((1 + mu)/(mu^3 + 6 mu^2 + 7 mu + 1))^2
    NOON,     m=1:  d (sqrt d + 1)^2 / (4 n^2)
    NOON,     m=2:  d (sqrt d + 1)^2 / (4 n^4)

plus independent-estimation baselines and Bayesian (Ziv-Zakai) bounds for
phases drawn from a wide uniform prior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateInputError, RegionError
from .moments import coherent_number_moment
from .states import domain_geometry

__all__ = [
    "BoundKind",
    "Regime",
    "BoundReport",
    "RegionCell",
    "ZIV_ZAKAI_LAMBDA",
    "REPETITIONS",
    "ecs_linear_value",
    "ecs_nonlinear_value",
    "noon_linear_value",
    "noon_nonlinear_value",
    "minimize_bound_over_b",
    "qcrb_ecs_linear",
    "qcrb_ecs_nonlinear",
    "qcrb_noon_linear",
    "qcrb_noon_nonlinear",
    "two_mode_ecs_norm_sq",
    "independent_ecs_total_photons",
    "qcrb_independent_ecs",
    "independent_ecs_vs_ntot",
    "qcrb_independent_noon",
    "zzb_noon",
    "zzb_ecs",
    "region_classify",
    "grid_scan_minimizer",
]

# First-branch constant of the Ziv-Zakai bounds; known only numerically.
# Exposed as a keyword on the zzb functions for sensitivity checks.
ZIV_ZAKAI_LAMBDA = 0.7246

# All bounds are stated per repetition; the trace inequality carries a 1/nu.
REPETITIONS = 1


class BoundKind(str, Enum):
    ECS_LINEAR = "ecs-linear"
    ECS_NONLINEAR = "ecs-nonlinear"
    NOON_LINEAR = "noon-linear"
    NOON_NONLINEAR = "noon-nonlinear"
    INDEPENDENT_ECS = "independent-ecs"
    INDEPENDENT_NOON = "independent-noon"
    ZIV_ZAKAI_ECS = "zzb-ecs"
    ZIV_ZAKAI_NOON = "zzb-noon"
    GENERAL_ECS_AT_B = "ecs-at-b"


class Regime(str, Enum):
    INTERIOR = "interior"
    CLAMPED = "clamped"
    NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class BoundReport:
    """A named bound value with the regime it was obtained in and its inputs."""

    value: float
    kind: BoundKind
    regime: Regime
    params: Mapping[str, float]


@dataclass(frozen=True)
class RegionCell:
    """One cell of the attainability partition: is b_star inside the domain?"""

    d: int
    alpha: float
    m: int
    b_star: float
    sqrt_gamma: float
    interior: bool


def _check_d(d: int) -> None:
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ValueError(f"parameter count d must be a positive int, got {d!r}")


def _check_positive(name: str, x: float) -> None:
    if not x > 0.0 or math.isinf(x):
        raise DegenerateInputError(f"{name} must be finite and > 0, got {x}")


def _check_photons(n: float) -> None:
    if not n >= 1.0 or math.isinf(n):
        raise DegenerateInputError(f"photon-number argument must be >= 1, got {n}")


def _headline_scale(d: int) -> float:
    """Common d-scaling of all optimized bounds: d (sqrt d + 1)^2 / 4."""
    return d * (math.sqrt(d) + 1.0) ** 2 / 4.0


def _ecs_kind(m: int) -> BoundKind:
    if m == 1:
        return BoundKind.ECS_LINEAR
    if m == 2:
        return BoundKind.ECS_NONLINEAR
    return BoundKind.GENERAL_ECS_AT_B


def ecs_linear_value(d: int, alpha_sq: float) -> float:
    """Interior-regime coherent-probe optimum for m = 1 (raw formula, unchecked)."""
    _check_d(d)
    _check_positive("alpha_sq", alpha_sq)
    return _headline_scale(d) / (1.0 + alpha_sq) ** 2


def ecs_nonlinear_value(d: int, alpha_sq: float) -> float:
    """Interior-regime coherent-probe optimum for m = 2 (raw formula, unchecked)."""
    _check_d(d)
    _check_positive("alpha_sq", alpha_sq)
    mu = alpha_sq
    cubic = ((mu + 6.0) * mu + 7.0) * mu + 1.0  # f(4)/mu
    return _headline_scale(d) * ((1.0 + mu) / cubic) ** 2


def noon_linear_value(d: int, photon_number: float) -> float:
    _check_d(d)
    _check_photons(photon_number)
    return _headline_scale(d) / photon_number ** 2


def noon_nonlinear_value(d: int, photon_number: float) -> float:
    _check_d(d)
    _check_photons(photon_number)
    return _headline_scale(d) / photon_number ** 4


def minimize_bound_over_b(d: int, m: int, alpha_sq: float) -> BoundReport:
    """Minimum of the total-variance bound over the admissible weight b.

    Interior regime (b_star^2 <= Gamma): value
    d (sqrt d + 1)^2 / 4 * f(m)^2 / f(2m)^2 at b = b_star.  Otherwise the
    minimum sits at the cap, b^2 = Gamma, where the general trace expression
    is evaluated.  Clamping implies g > Gamma (d + sqrt d), so the clamped
    expression is always well defined; the guard below is defensive.
    """
    geom = domain_geometry(d, m, alpha_sq)
    f_m = coherent_number_moment(m, alpha_sq)
    f_2m = coherent_number_moment(2 * m, alpha_sq)
    params = {"d": d, "m": m, "alpha_sq": alpha_sq, "b_star": geom.b_star,
              "gamma_cap": geom.gamma_cap, "g": geom.g}
    if geom.interior:
        value = _headline_scale(d) * (f_m / f_2m) ** 2
        return BoundReport(value=value, kind=_ecs_kind(m), regime=Regime.INTERIOR,
                           params={**params, "b_sq_used": geom.b_star ** 2})
    slack = geom.g - geom.gamma_cap * d
    if slack <= 0.0:
        raise DegenerateInputError(
            f"clamped bound undefined: g - Gamma d = {slack:.3e} <= 0 "
            f"(unreachable for this probe family)")
    value = d / (4.0 * f_2m) * (1.0 / geom.gamma_cap + 1.0 / slack)
    return BoundReport(value=value, kind=_ecs_kind(m), regime=Regime.CLAMPED,
                       params={**params, "b_sq_used": geom.gamma_cap})


def qcrb_ecs_linear(d: int, alpha_sq: float) -> BoundReport:
    """Linear-protocol coherent-probe optimum, valid only in the Interior regime.

    Raises RegionError when b_star is beyond the domain cap; use
    :func:`minimize_bound_over_b` there for the clamped optimum.
    """
    return _checked_ecs(d, 1, alpha_sq, ecs_linear_value(d, alpha_sq))


def qcrb_ecs_nonlinear(d: int, alpha_sq: float) -> BoundReport:
    """Quadratic-generator coherent-probe optimum; Interior regime only."""
    return _checked_ecs(d, 2, alpha_sq, ecs_nonlinear_value(d, alpha_sq))


def _checked_ecs(d: int, m: int, alpha_sq: float, value: float) -> BoundReport:
    geom = domain_geometry(d, m, alpha_sq)
    if not geom.interior:
        raise RegionError(
            f"b_star = {geom.b_star:.6g} exceeds sqrt(Gamma) = "
            f"{math.sqrt(geom.gamma_cap):.6g} at d={d}, m={m}, alpha_sq={alpha_sq}; "
            "use minimize_bound_over_b for the clamped optimum")
    return BoundReport(value=value, kind=_ecs_kind(m), regime=Regime.INTERIOR,
                       params={"d": d, "m": m, "alpha_sq": alpha_sq,
                               "b_star": geom.b_star, "gamma_cap": geom.gamma_cap,
                               "b_sq_used": geom.b_star ** 2})


def qcrb_noon_linear(d: int, photon_number: float) -> BoundReport:
    """NOON-probe optimum for m = 1, at the optimal b = 1/sqrt(d + sqrt d)."""
    return BoundReport(value=noon_linear_value(d, photon_number),
                       kind=BoundKind.NOON_LINEAR, regime=Regime.INTERIOR,
                       params={"d": d, "m": 1, "photon_number": photon_number})


def qcrb_noon_nonlinear(d: int, photon_number: float) -> BoundReport:
    """NOON-probe optimum for m = 2, at the same optimal b."""
    return BoundReport(value=noon_nonlinear_value(d, photon_number),
                       kind=BoundKind.NOON_NONLINEAR, regime=Regime.INTERIOR,
                       params={"d": d, "m": 2, "photon_number": photon_number})


def two_mode_ecs_norm_sq(alpha_sq: float) -> float:
    """Squared normalization 1/(2(1 + e^{-alpha_sq})) of one two-mode coherent probe."""
    _check_positive("alpha_sq", alpha_sq)
    return 1.0 / (2.0 * (1.0 + math.exp(-alpha_sq)))


def independent_ecs_total_photons(d: int, alpha_sq: float) -> float:
    """Mean total photons across d independent two-mode probes: 2 d N^2 alpha_sq."""
    _check_d(d)
    return 2.0 * d * two_mode_ecs_norm_sq(alpha_sq) * alpha_sq


def qcrb_independent_ecs(d: int, alpha_sq: float) -> BoundReport:
    """d separate two-mode coherent probes, one phase each.

    d times the single-probe variance 1/(4 N^2 alpha_sq [1 + alpha_sq (1 - N^2)]).
    """
    _check_d(d)
    n_sq = two_mode_ecs_norm_sq(alpha_sq)
    single = 1.0 / (4.0 * n_sq * alpha_sq * (1.0 + alpha_sq * (1.0 - n_sq)))
    return BoundReport(value=d * single, kind=BoundKind.INDEPENDENT_ECS,
                       regime=Regime.NOT_APPLICABLE,
                       params={"d": d, "alpha_sq": alpha_sq,
                               "n_tot": independent_ecs_total_photons(d, alpha_sq)})


def independent_ecs_vs_ntot(d: int, n_tot: float) -> BoundReport:
    """Independent-probe baseline parameterized by the mean total photon number.

    Inverts n_tot = 2 d N^2(alpha) alpha_sq (strictly increasing in alpha_sq)
    for the per-probe intensity and evaluates
    d^3 / (n_tot [2 d + n_tot (N^{-2} - 1)]); for matched arguments this
    agrees with :func:`qcrb_independent_ecs` to rounding.
    """
    _check_d(d)
    _check_positive("n_tot", n_tot)
    # bracket: h(x) = d x / (1 + e^{-x}) satisfies d x / 2 <= h(x) <= d x
    lo = n_tot / (2.0 * d)
    hi = 2.0 * n_tot / d + 1.0
    alpha_sq = brentq(lambda x: d * x / (1.0 + math.exp(-x)) - n_tot,
                      lo, hi, xtol=1e-14, rtol=8.9e-16)
    inv_n_sq = 2.0 * (1.0 + math.exp(-alpha_sq))
    value = d ** 3 / (n_tot * (2.0 * d + n_tot * (inv_n_sq - 1.0)))
    return BoundReport(value=value, kind=BoundKind.INDEPENDENT_ECS,
                       regime=Regime.NOT_APPLICABLE,
                       params={"d": d, "n_tot": n_tot, "alpha_sq": alpha_sq})


def qcrb_independent_noon(d: int, n_tot: float) -> BoundReport:
    """d separate two-mode NOON probes sharing n_tot photons: d^3 / n_tot^2."""
    _check_d(d)
    _check_positive("n_tot", n_tot)
    return BoundReport(value=d ** 3 / n_tot ** 2, kind=BoundKind.INDEPENDENT_NOON,
                       regime=Regime.NOT_APPLICABLE, params={"d": d, "n_tot": n_tot})


def _zzb_branches(d: int, photon_sq: float, lam: float) -> tuple[float, float]:
    s = d + math.sqrt(d)
    core = d * s * s / photon_sq
    first = core / (80.0 * lam * lam)
    second = (math.pi ** 2 / 16.0 - 0.5) * core / (s - 1.0)
    return first, second


def zzb_noon(d: int, photon_number: float, lam: float = ZIV_ZAKAI_LAMBDA) -> BoundReport:
    """Bayesian bound for the NOON probe under a wide uniform prior.

    The exact maximum of two branches,

        d (d + sqrt d)^2 / (80 lam^2 N^2)   and
        (pi^2/16 - 1/2) d (d + sqrt d)^2 / ((d + sqrt d - 1) N^2),

    with no smoothing; the first dominates for large d (d >= 4).
    """
    _check_d(d)
    _check_photons(photon_number)
    first, second = _zzb_branches(d, float(photon_number) ** 2, lam)
    return BoundReport(value=max(first, second), kind=BoundKind.ZIV_ZAKAI_NOON,
                       regime=Regime.NOT_APPLICABLE,
                       params={"d": d, "photon_number": photon_number, "lam": lam,
                               "branch_first": first, "branch_second": second})


def zzb_ecs(d: int, alpha_sq: float, lam: float = ZIV_ZAKAI_LAMBDA) -> BoundReport:
    """Bayesian bound for the coherent probe: the NOON form with N^2 -> (alpha_sq + 1)^2."""
    _check_d(d)
    _check_positive("alpha_sq", alpha_sq)
    first, second = _zzb_branches(d, (alpha_sq + 1.0) ** 2, lam)
    return BoundReport(value=max(first, second), kind=BoundKind.ZIV_ZAKAI_ECS,
                       regime=Regime.NOT_APPLICABLE,
                       params={"d": d, "alpha_sq": alpha_sq, "lam": lam,
                               "branch_first": first, "branch_second": second})


def region_classify(d: int, alpha: float, m: int) -> RegionCell:
    """Classify whether the unconstrained optimizer is attainable at (d, alpha, m)."""
    _check_positive("alpha", alpha)
    geom = domain_geometry(d, m, alpha * alpha)
    return RegionCell(d=d, alpha=alpha, m=m, b_star=geom.b_star,
                      sqrt_gamma=math.sqrt(geom.gamma_cap), interior=geom.interior)


def grid_scan_minimizer(d: int, m: int, alpha_sq: float,
                        grid_points: int = 10_000) -> BoundReport:
    """Brute-force verification of the closed-form optimum.

    Scans b^2 uniformly over (0, min(Gamma, g/d)], including the endpoint
    only when the normalizability cap is the binding constraint (the bound
    diverges at b^2 = g/d, so that endpoint stays open), and returns the
    smallest trace bound found.  Matches :func:`minimize_bound_over_b`
    within the grid resolution.
    """
    if grid_points < 1000:
        raise ValueError(f"grid_points must be >= 1000, got {grid_points}")
    geom = domain_geometry(d, m, alpha_sq)
    f_2m = coherent_number_moment(2 * m, alpha_sq)
    pole = geom.g / d
    hi = min(geom.gamma_cap, pole)
    beta = np.linspace(0.0, hi, grid_points + 1)[1:]
    if pole <= geom.gamma_cap:
        beta = beta[:-1]
    values = d / (4.0 * f_2m) * (1.0 / beta + 1.0 / (geom.g - beta * d))
    i = int(np.argmin(values))
    at_cap = geom.gamma_cap < pole and i == len(beta) - 1
    return BoundReport(value=float(values[i]), kind=BoundKind.GENERAL_ECS_AT_B,
                       regime=Regime.CLAMPED if at_cap else Regime.INTERIOR,
                       params={"d": d, "m": m, "alpha_sq": alpha_sq,
                               "b_sq_used": float(beta[i]), "grid_points": grid_points})

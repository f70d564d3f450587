"""Probe-state parameterizations for multimode phase estimation.

Two probe families over d sensing modes plus one reference mode (mode 0):
an entangled coherent probe, with a coherent branch on each sensing mode
and one on the reference, and the analogous NOON probe with Fock branches.
Coherent branches overlap, so the normalization constraint is quadratic in
the branch coefficients and caps the sensing weight b^2 at a finite limit
Gamma = 1/(u - v^2).  NOON branches are orthogonal and the constraint is
simply d b^2 + c^2 = 1.

By convention b is real and nonnegative: the bounds depend only on |b|^2,
and the global phase can always be chosen to make c real, so nothing is
lost and the normalization quadratic stays real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CoefficientDomainError, DegenerateInputError, NormalizationError
from .moments import second_moment_ratio

__all__ = [
    "EcsParams",
    "NoonParams",
    "DomainGeometry",
    "uv_coefficients",
    "solve_c",
    "b_domain_limit",
    "b_star",
    "domain_geometry",
    "mean_total_photons",
    "noon_optimal_b",
    "validate_ecs",
    "validate_noon",
    "ecs_params",
    "noon_params",
]

NORMALIZATION_ATOL = 1e-12
DOMAIN_ATOL = 1e-12


@dataclass(frozen=True)
class EcsParams:
    """Entangled coherent probe: b sum_j |alpha>_j + c |alpha>_0.

    d sensing modes, coherent intensity alpha_sq = |alpha|^2, sensing-branch
    coefficient b (real, >= 0), reference coefficient c, and generator order
    m for the per-mode phase generator (a^dag a)^m.
    """

    d: int
    alpha_sq: float
    b: float
    c: float
    m: int = 1


@dataclass(frozen=True)
class NoonParams:
    """NOON probe: b sum_j |N>_j + c |N>_0 with orthogonal Fock branches."""

    d: int
    photon_number: int
    b: float
    c: float
    m: int = 1


@dataclass(frozen=True)
class DomainGeometry:
    """Geometry of the sensing weight b^2: its cap, the unconstrained
    optimizer of the variance bound, the moment ratio g, and whether the
    optimizer falls inside the cap."""

    gamma_cap: float
    b_star: float
    g: float
    interior: bool


def _check_d(d: int) -> None:
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ValueError(f"mode count d must be a positive int, got {d!r}")


def _check_m(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f"generator order m must be a positive int, got {m!r}")


def _check_alpha_sq(alpha_sq: float, allow_zero: bool) -> None:
    lo_ok = alpha_sq >= 0.0 if allow_zero else alpha_sq > 0.0
    if not lo_ok or math.isinf(alpha_sq):
        bound = ">= 0" if allow_zero else "> 0"
        raise DegenerateInputError(f"alpha_sq must be finite and {bound}, got {alpha_sq}")


def uv_coefficients(d: int, alpha_sq: float) -> tuple[float, float]:
    """Overlap sums entering the normalization quadratic.

    u = d + d(d-1) e^{-alpha_sq} collects the sensing-branch mutual overlaps
    and v = d e^{-alpha_sq} the sensing-reference overlaps; u >= v > 0 for
    finite alpha_sq.
    """
    _check_d(d)
    _check_alpha_sq(alpha_sq, allow_zero=True)
    x = math.exp(-alpha_sq)
    return d + d * (d - 1) * x, d * x


def _u_minus_v_sq(d: int, alpha_sq: float) -> float:
    """u - v^2 in the cancellation-free factored form d (1 - x)(1 + d x).

    The direct difference loses precision at small alpha_sq where u and v^2
    are both close to d^2; the factorization with 1 - x = -expm1(-alpha_sq)
    keeps full relative accuracy.
    """
    _check_d(d)
    _check_alpha_sq(alpha_sq, allow_zero=True)
    x = math.exp(-alpha_sq)
    return d * (-math.expm1(-alpha_sq)) * (1.0 + d * x)


def solve_c(b: float, d: int, alpha_sq: float, *, smaller_root: bool = False) -> float:
    """Reference coefficient normalizing the probe at the given b.

    Solves c^2 + 2 b v c + b^2 u - 1 = 0 for c and returns the root
    continuously connected to c = 1 at b = 0; ``smaller_root=True`` selects
    the other branch.

    Raises
    ------
    CoefficientDomainError
        If b^2 exceeds the cap Gamma, i.e. the discriminant is negative and
        no real c exists.
    """
    if not (math.isfinite(b) and b >= 0.0):
        raise CoefficientDomainError(f"b must be finite and >= 0, got {b}")
    _, v = uv_coefficients(d, alpha_sq)
    denom = _u_minus_v_sq(d, alpha_sq)
    disc = 1.0 - b * b * denom
    if disc < 0.0:
        if disc < -DOMAIN_ATOL:
            raise CoefficientDomainError(
                f"b^2 = {b * b:.12g} is not normalizable: discriminant "
                f"{disc:.3e} < 0 (cap Gamma = {1.0 / denom:.12g})")
        disc = 0.0
    root = math.sqrt(disc)
    return -b * v - root if smaller_root else -b * v + root


def b_domain_limit(d: int, alpha_sq: float) -> float:
    """Largest admissible sensing weight, Gamma = 1/(u - v^2).

    At alpha_sq = 0 every branch collapses to vacuum and u - v^2 vanishes;
    that input is rejected rather than assigned a limit value.
    """
    denom = _u_minus_v_sq(d, alpha_sq)
    if denom <= 0.0:
        raise DegenerateInputError(
            f"b-domain cap undefined: u - v^2 = {denom:.3e} <= 0 at "
            f"alpha_sq={alpha_sq} (vacuum probe carries no phase information)")
    return 1.0 / denom


def b_star(d: int, m: int, alpha_sq: float) -> float:
    """Unconstrained optimizer of the variance bound: sqrt(g / (sqrt d + d)).

    g = f(2m)/f(m)^2 tends to 1 for large alpha_sq, where b_star approaches
    the orthogonal-branch value 1/sqrt(d + sqrt d).
    """
    _check_d(d)
    _check_m(m)
    _check_alpha_sq(alpha_sq, allow_zero=False)
    g = second_moment_ratio(m, alpha_sq)
    return math.sqrt(g / (math.sqrt(d) + d))


def domain_geometry(d: int, m: int, alpha_sq: float) -> DomainGeometry:
    """Cap, optimizer and regime flag in one record."""
    gamma_cap = b_domain_limit(d, alpha_sq)
    _check_m(m)
    _check_alpha_sq(alpha_sq, allow_zero=False)
    g = second_moment_ratio(m, alpha_sq)
    bs = math.sqrt(g / (math.sqrt(d) + d))
    return DomainGeometry(gamma_cap=gamma_cap, b_star=bs, g=g,
                          interior=bs * bs <= gamma_cap)


def mean_total_photons(p: EcsParams) -> float:
    """Mean photon number over all d+1 modes: alpha_sq (d b^2 + c^2).

    In the regime d e^{-alpha_sq} << 1 this is within O(d e^{-alpha_sq}) of
    alpha_sq itself.
    """
    validate_ecs(p)
    return p.alpha_sq * (p.d * p.b * p.b + p.c * p.c)


def noon_optimal_b(d: int) -> float:
    """Sensing coefficient minimizing the NOON-probe bound: 1/sqrt(d + sqrt d)."""
    _check_d(d)
    return 1.0 / math.sqrt(d + math.sqrt(d))


def validate_ecs(p: EcsParams) -> EcsParams:
    """Return p unchanged if every invariant holds, else raise naming the violation."""
    _check_d(p.d)
    _check_m(p.m)
    _check_alpha_sq(p.alpha_sq, allow_zero=True)
    if not (math.isfinite(p.b) and p.b >= 0.0):
        raise CoefficientDomainError(
            f"b must be finite and >= 0 under the real-b convention, got {p.b}")
    if not math.isfinite(p.c):
        raise NormalizationError(f"c must be finite, got {p.c}")
    # domain first: an out-of-cap b cannot be normalized by any choice of c
    if p.alpha_sq > 0.0:
        gamma_cap = b_domain_limit(p.d, p.alpha_sq)
        if p.b * p.b > gamma_cap + DOMAIN_ATOL:
            raise CoefficientDomainError(
                f"b^2 = {p.b * p.b:.12g} exceeds the domain cap Gamma = {gamma_cap:.12g}")
    u, v = uv_coefficients(p.d, p.alpha_sq)
    residual = p.c * p.c + 2.0 * p.b * v * p.c + p.b * p.b * u - 1.0
    if abs(residual) > NORMALIZATION_ATOL:
        raise NormalizationError(
            f"normalization violated: c^2 + 2bvc + b^2 u - 1 = {residual:.3e} "
            f"exceeds {NORMALIZATION_ATOL}")
    return p


def validate_noon(p: NoonParams) -> NoonParams:
    """Return p unchanged if every invariant holds, else raise naming the violation."""
    _check_d(p.d)
    _check_m(p.m)
    if isinstance(p.photon_number, bool) or not isinstance(p.photon_number, int) \
            or p.photon_number < 1:
        raise ValueError(f"photon_number must be a positive int, got {p.photon_number!r}")
    if not (math.isfinite(p.b) and p.b >= 0.0):
        raise CoefficientDomainError(f"b must be finite and >= 0, got {p.b}")
    residual = p.d * p.b * p.b + p.c * p.c - 1.0
    if abs(residual) > NORMALIZATION_ATOL:
        raise NormalizationError(
            f"NOON normalization violated: d b^2 + c^2 - 1 = {residual:.3e} "
            f"exceeds {NORMALIZATION_ATOL}")
    return p


def ecs_params(d: int, alpha_sq: float, b: float, m: int = 1) -> EcsParams:
    """Build a validated entangled coherent probe, solving for c."""
    c = solve_c(b, d, alpha_sq)
    return validate_ecs(EcsParams(d=d, alpha_sq=alpha_sq, b=b, c=c, m=m))


def noon_params(d: int, photon_number: int, b: float | None = None, m: int = 1) -> NoonParams:
    """Build a validated NOON probe; b defaults to the optimal 1/sqrt(d + sqrt d)."""
    if b is None:
        b = noon_optimal_b(d)
    remainder = 1.0 - d * b * b
    if remainder < 0.0:
        if remainder < -DOMAIN_ATOL:
            raise CoefficientDomainError(
                f"d b^2 = {d * b * b:.12g} exceeds 1; no normalizable c exists")
        remainder = 0.0
    c = math.sqrt(remainder)
    return validate_noon(NoonParams(d=d, photon_number=photon_number, b=b, c=c, m=m))

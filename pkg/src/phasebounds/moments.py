"""Moments of the photon-number distribution of a coherent state.

For a coherent state with mean photon number ``mu = |alpha|^2`` the photon
number is Poisson distributed, so ``<(a^dag a)^m>`` is the m-th raw moment
of a Poisson variable.  That moment is a polynomial in ``mu`` (a Touchard
polynomial) whose coefficients are Stirling numbers of the second kind:

    f(m) = sum_{k=0}^{m} S(m, k) mu^k

The closed form is exact for any order; :func:`moment_via_poisson_sum`
evaluates the defining series directly and serves as an independent check.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .errors import DegenerateInputError

__all__ = [
    "stirling2",
    "coherent_number_moment",
    "moment_via_poisson_sum",
    "second_moment_ratio",
]

# exp(-mu) underflows past this point and the series would silently lose all mass
_EXP_UNDERFLOW_MU = 700.0


@lru_cache(maxsize=None)
def _stirling_row(m: int) -> tuple[int, ...]:
    """Row m of the Stirling-second-kind triangle, S(m, 0..m), as exact ints."""
    if m == 0:
        return (1,)
    prev = _stirling_row(m - 1)
    row = [0] * (m + 1)
    for k in range(1, m + 1):
        above = prev[k] if k < m else 0
        row[k] = k * above + prev[k - 1]
    return tuple(row)


def stirling2(m: int, k: int) -> int:
    """Stirling number of the second kind S(m, k).

    Uses the recurrence S(m, k) = k S(m-1, k) + S(m-1, k-1) on Python
    integers, so every value is exact regardless of magnitude.
    """
    if m < 0 or k < 0:
        raise ValueError(f"stirling2 requires m, k >= 0, got m={m}, k={k}")
    if k > m:
        raise ValueError(f"stirling2 requires k <= m, got m={m}, k={k}")
    return _stirling_row(m)[k]


def _check_moment_args(m: int, mu: float) -> None:
    if isinstance(m, bool) or not isinstance(m, int):
        raise TypeError(f"moment order must be an int, got {m!r}")
    if m < 0:
        raise ValueError(f"moment order must be >= 0, got {m}")
    if not mu >= 0.0 or math.isinf(mu):
        raise ValueError(f"mean photon number must be finite and >= 0, got {mu}")


def coherent_number_moment(m: int, mu: float) -> float:
    """m-th photon-number moment of a coherent state with ``|alpha|^2 = mu``.

    Parameters
    ----------
    m : int
        Moment order, >= 0.
    mu : float
        Mean photon number, >= 0.

    Returns
    -------
    float
        ``sum_k S(m, k) mu^k`` evaluated in double precision.  Monotone
        nondecreasing in mu for m >= 1; equals 1 for m = 0 and 0 at mu = 0
        for m >= 1.

    Raises
    ------
    OverflowError
        If the polynomial exceeds the double-precision range; the result is
        never silently saturated.
    """
    _check_moment_args(m, mu)
    row = _stirling_row(m)
    total = 0.0
    power = 1.0  # mu^k
    for k in range(m + 1):
        total += row[k] * power
        power *= mu
    if not math.isfinite(total):
        raise OverflowError(f"coherent_number_moment overflows for m={m}, mu={mu}")
    return total


def moment_via_poisson_sum(m: int, mu: float, tail_tol: float) -> float:
    """Evaluate ``<n^m>`` by direct summation of the Poisson series.

    Independent of the Stirling closed form: sums ``exp(-mu) mu^n / n! * n^m``
    term by term and stops once the remaining tail is provably below
    ``tail_tol``.

    Stopping rule: once ``n >= 2m`` and ``n + 1 >= 2 sqrt(e) mu`` the term
    ratio ``mu/(n+1) (1 + 1/n)^m`` is at most 1/2, so the tail beyond the
    current term is bounded by the term itself via the geometric series.
    """
    _check_moment_args(m, mu)
    if not tail_tol > 0.0:
        raise ValueError(f"tail_tol must be > 0, got {tail_tol}")
    if mu > _EXP_UNDERFLOW_MU:
        raise OverflowError(
            f"exp(-mu) underflows for mu={mu}; direct summation is not representable")
    n_geometric = max(2 * m, math.ceil(2.0 * math.sqrt(math.e) * mu))
    pmf = math.exp(-mu)
    total = 0.0
    n = 0
    while True:
        term = pmf * float(n) ** m
        total += term
        if n >= n_geometric and term <= tail_tol:
            return total
        pmf *= mu / (n + 1)
        n += 1


def second_moment_ratio(m: int, mu: float) -> float:
    """Ratio ``f(2m)/f(m)^2`` of coherent-state number moments.

    At least 1 for mu > 0 by the Cauchy-Schwarz inequality; tends to 1 as
    mu grows.  Undefined at mu = 0 for m >= 1 (the probe holds no photons).
    """
    _check_moment_args(m, mu)
    if m >= 1 and mu == 0.0:
        raise DegenerateInputError("moment ratio undefined at mu=0: f(m, 0) = 0")
    f_m = coherent_number_moment(m, mu)
    f_2m = coherent_number_moment(2 * m, mu)
    return f_2m / (f_m * f_m)

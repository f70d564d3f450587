"""Quantum Fisher information of the probes under commuting local generators.

For both probe families the d x d information matrix has the two-scalar form

    F = gamma (I + omega J),    J_jk = 1 for all j, k,

because every sensing mode enters symmetrically.  Using J^2 = d J the
inverse is closed form,

    F^{-1} = (1/gamma) (I - omega/(1 + omega d) J),

and the eigenvalues are gamma (multiplicity d-1) and gamma (1 + omega d),
so inversion, traces and definiteness tests are all O(1).  Dense matrices
appear only for cross-checks against the brute-force oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, SingularMatrixError
from .moments import coherent_number_moment, second_moment_ratio
from .states import EcsParams, NoonParams, validate_ecs, validate_noon

__all__ = [
    "StructuredQfim",
    "ecs_qfim",
    "noon_qfim",
    "qfim_inverse",
    "to_dense",
    "fit_structured",
    "trace_inverse_bound",
    "effective_qfi_2param",
]


@dataclass(frozen=True)
class StructuredQfim:
    """d x d matrix gamma (I + omega J) stored by its two scalars."""

    d: int
    gamma: float
    omega: float

    @property
    def diagonal(self) -> float:
        return self.gamma * (1.0 + self.omega)

    @property
    def off_diagonal(self) -> float:
        return self.gamma * self.omega

    @property
    def is_positive_definite(self) -> bool:
        return self.gamma > 0.0 and 1.0 + self.omega * self.d > 0.0

    def trace(self) -> float:
        return self.d * self.diagonal


def ecs_qfim(p: EcsParams) -> StructuredQfim:
    """Information matrix of the entangled coherent probe.

    gamma = 4 b^2 f(2m) and omega = -b^2 f(m)^2 / f(2m), equivalent to the
    dense entries F_jk = 4 [delta_jk b^2 f(2m) - b^4 f(m)^2].
    """
    validate_ecs(p)
    if p.alpha_sq <= 0.0:
        raise DegenerateInputError("vacuum probe: information matrix is zero")
    if p.b == 0.0:
        raise DegenerateInputError(
            "b = 0 leaves the sensing branches empty: information matrix is zero")
    f_m = coherent_number_moment(p.m, p.alpha_sq)
    f_2m = coherent_number_moment(2 * p.m, p.alpha_sq)
    b_sq = p.b * p.b
    return StructuredQfim(d=p.d, gamma=4.0 * b_sq * f_2m, omega=-b_sq * f_m * f_m / f_2m)


def noon_qfim(p: NoonParams) -> StructuredQfim:
    """Information matrix of the NOON probe: gamma = 4 b^2 N^{2m}, omega = -b^2."""
    validate_noon(p)
    if p.b == 0.0:
        raise DegenerateInputError(
            "b = 0 leaves the sensing branches empty: information matrix is zero")
    b_sq = p.b * p.b
    n_pow = float(p.photon_number) ** (2 * p.m)
    return StructuredQfim(d=p.d, gamma=4.0 * b_sq * n_pow, omega=-b_sq)


def qfim_inverse(f: StructuredQfim) -> StructuredQfim:
    """Closed-form structured inverse.

    Singular exactly when 1 + omega d = 0, where the uniform eigenvector has
    zero eigenvalue; for the coherent probe that is the weight b^2 = g/d at
    which the total-variance bound diverges.
    """
    if f.gamma == 0.0:
        raise SingularMatrixError("gamma = 0: matrix is identically zero")
    denom = 1.0 + f.omega * f.d
    if denom == 0.0:
        raise SingularMatrixError("1 + omega d = 0: structured matrix is singular")
    return StructuredQfim(d=f.d, gamma=1.0 / f.gamma, omega=-f.omega / denom)


def to_dense(f: StructuredQfim) -> np.ndarray:
    """Dense realization: diagonal gamma(1 + omega), off-diagonal gamma omega."""
    out = np.full((f.d, f.d), f.off_diagonal, dtype=float)
    np.fill_diagonal(out, f.diagonal)
    return out


def fit_structured(dense: np.ndarray) -> StructuredQfim:
    """Recover (gamma, omega) from a dense matrix of the structured form.

    Fits the diagonal mean and off-diagonal mean.  A 1 x 1 matrix cannot
    separate the two scalars; omega is reported as 0 in that case.
    """
    a = np.asarray(dense, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    d = a.shape[0]
    diag = float(np.trace(a)) / d
    if d == 1:
        return StructuredQfim(d=1, gamma=diag, omega=0.0)
    off = float(a.sum() - np.trace(a)) / (d * (d - 1))
    gamma = diag - off
    if gamma == 0.0:
        raise SingularMatrixError("diagonal equals off-diagonal: gamma = 0 is not representable")
    return StructuredQfim(d=d, gamma=gamma, omega=off / gamma)


def trace_inverse_bound(p: EcsParams) -> float:
    """Total-variance lower bound Tr(F^{-1}) = d/(4 f(2m)) (1/b^2 + 1/(g - b^2 d)).

    Defined for 0 < b^2 < g/d; both endpoints are excluded because the bound
    diverges there, and callers optimizing over b must treat them as such.
    """
    validate_ecs(p)
    if p.alpha_sq <= 0.0 or p.b == 0.0:
        raise DegenerateInputError(
            "trace bound diverges: probe carries no photons in the sensing branches")
    f_2m = coherent_number_moment(2 * p.m, p.alpha_sq)
    g = second_moment_ratio(p.m, p.alpha_sq)
    b_sq = p.b * p.b
    if b_sq * p.d >= g:
        raise SingularMatrixError(
            f"b^2 = {b_sq:.12g} >= g/d = {g / p.d:.12g}: information matrix singular "
            "or indefinite, bound undefined")
    return p.d / (4.0 * f_2m) * (1.0 / b_sq + 1.0 / (g - b_sq * p.d))


def effective_qfi_2param(f: np.ndarray) -> float:
    """Effective scalar information det(F)/Tr(F) for the two-parameter case.

    Satisfies Tr(F^{-1}) = 1/F_e when d = 2.
    """
    a = np.asarray(f, dtype=float)
    if a.shape != (2, 2):
        raise ValueError(f"effective QFI is defined for 2x2 matrices, got shape {a.shape}")
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    tr = a[0, 0] + a[1, 1]
    if not (det > 0.0 and a[0, 0] > 0.0):
        raise SingularMatrixError(f"matrix is not positive definite (det={det:.3e})")
    return det / tr

"""Analytic toolbox: dispersion relations, group velocity, transfer matrices.

The plane-wave modes of the walk obey cosine dispersion relations.  With
the phase angle phi in the combined coin they read

    single walker      : cos(w + phi/2) = cos(th0) cos(k + phi/2)
    two walkers, uu/dd : cos(w + phi)   = cos(th0) cos(k + phi)
    two walkers, ud/du : cos(w + phi)   = cos(th0) cos(k)

At fixed mode frequency w the amplitudes at neighboring sites are related
by a transfer matrix whose determinant has unit modulus (flux
conservation); products of such matrices over a disordered chain give the
Lyapunov exponent and hence the localization length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import NonConvergenceError, SingularParameterError
from .evolve import DisorderSpec

__all__ = [
    "DISPERSION_VARIANTS",
    "DispersionCurve",
    "TransferMatrix",
    "LyapunovEstimate",
    "dispersion_omega",
    "dispersion_residual",
    "dispersion_curve",
    "group_velocity",
    "max_group_velocity",
    "transfer_matrix_1p",
    "transfer_matrix_2p",
    "lyapunov_localization_length",
]

DISPERSION_VARIANTS = ("single", "two_particle_xline", "two_particle_yline")

_SEC_TOL = 1e-12


@dataclass(frozen=True)
class DispersionCurve:
    """Sampled (kappa, omega) pairs of one dispersion branch."""

    kappa: np.ndarray
    omega: np.ndarray
    branch: str  # "+" | "-"
    variant: str
    theta0: float
    phi: float


@dataclass(frozen=True)
class TransferMatrix:
    """Site-to-site propagator at fixed mode frequency, with its parameters."""

    matrix: np.ndarray
    theta: float
    phi: float
    omega: float


@dataclass(frozen=True)
class LyapunovEstimate:
    """Transfer-chain growth rate gamma and localization length 1/gamma."""

    gamma: float
    localization_length: float
    half_estimates: tuple[float, float]


def _shifts(variant: str, phi: float) -> tuple[float, float]:
    """(omega offset, kappa offset) entering the cosine relation."""
    if variant == "single":
        return phi / 2.0, phi / 2.0
    if variant == "two_particle_xline":
        return phi, phi
    if variant == "two_particle_yline":
        return phi, 0.0
    raise ValueError(f"unknown dispersion variant {variant!r}; known: {DISPERSION_VARIANTS}")


def dispersion_omega(theta0: float, kappa, phi: float = 0.0, variant: str = "single"):
    """Both mode frequencies omega solving the dispersion relation.

    Returns (omega_plus, omega_minus); kappa may be a scalar or an array.
    """
    w_off, k_off = _shifts(variant, phi)
    rhs = np.cos(theta0) * np.cos(np.asarray(kappa) + k_off)
    root = np.arccos(np.clip(rhs, -1.0, 1.0))
    return root - w_off, -root - w_off


def dispersion_residual(theta0: float, kappa, omega, phi: float = 0.0, variant: str = "single"):
    """cos(omega + off_w) - cos(theta0) cos(kappa + off_k); zero on the curve."""
    w_off, k_off = _shifts(variant, phi)
    return np.cos(np.asarray(omega) + w_off) - np.cos(theta0) * np.cos(np.asarray(kappa) + k_off)


def dispersion_curve(
    theta0: float,
    kappa: np.ndarray,
    phi: float = 0.0,
    variant: str = "single",
    branch: str = "+",
) -> DispersionCurve:
    plus, minus = dispersion_omega(theta0, kappa, phi, variant)
    omega = plus if branch == "+" else minus
    return DispersionCurve(np.asarray(kappa), omega, branch, variant, theta0, phi)


def group_velocity(theta0: float, kappa, phi: float = 0.0):
    """Signed group velocity d(omega)/d(kappa) of the propagating branch.

    Bounded by cos(theta0) in magnitude.  The expression is singular only
    where cos(theta0) cos(kappa + phi/2) = +-1 (theta0 = 0 with the
    shifted kappa at 0 or pi), which is rejected.
    """
    arg = np.asarray(kappa, dtype=float) + phi / 2.0
    ct = math.cos(theta0)
    denom_sq = 1.0 - (ct * np.cos(arg)) ** 2
    if np.any(denom_sq <= 1e-30):
        raise SingularParameterError(
            "group velocity undefined: cos(theta0) cos(kappa + phi/2) = +-1"
        )
    result = ct * np.sin(arg) / np.sqrt(denom_sq)
    if np.ndim(kappa) == 0:
        return float(result)
    return result


def max_group_velocity(theta0: float, phi: float = 0.0) -> tuple[float, float]:
    """Numerically maximize the group velocity over kappa in (0, pi).

    Returns (kappa_star, v_max).  For phi = 0 the maximum sits at
    kappa = pi/2 with v = cos(theta0).
    """
    if math.cos(theta0) == 0.0:
        # flat band: velocity identically zero, report the symmetric point
        return math.pi / 2.0 - phi / 2.0, 0.0

    def neg_v(k):
        return -group_velocity(theta0, k, phi)

    lo = 1e-12 - phi / 2.0
    hi = math.pi - 1e-12 - phi / 2.0
    res = minimize_scalar(neg_v, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return float(res.x), float(-res.fun)


def _check_sec(theta: float):
    if abs(math.cos(theta)) < _SEC_TOL:
        raise SingularParameterError("transfer matrix undefined at theta = pi/2 (sec diverges)")


def transfer_matrix_1p(theta: float, phi: float, omega: float) -> TransferMatrix:
    """2x2 transfer matrix of the single-walker chain at frequency omega.

    Propagates the two-component field (up_x, down_{x-1}) from site x to
    x+1.  det = e^{-i phi} exactly.
    """
    _check_sec(theta)
    sec = 1.0 / math.cos(theta)
    tan = math.tan(theta)
    half = np.exp(-0.5j * phi)
    m = np.array(
        [
            [np.exp(1j * (omega + phi / 2.0)) * sec, -1j * np.exp(-0.5j * phi) * tan],
            [1j * np.exp(0.5j * phi) * tan, np.exp(-1j * (omega + phi / 2.0)) * sec],
        ],
        dtype=np.complex128,
    )
    return TransferMatrix(half * m, theta, phi, omega)


def transfer_matrix_2p(theta: float, phi: float, omega: float) -> TransferMatrix:
    """4x4 transfer matrix of the confined two-walker chain.

    Couples only the (uu, dd) pair and the (ud, du) pair; all entries
    between the pairs are exactly zero.  det = e^{-2i phi} exactly.
    """
    _check_sec(theta)
    sec = 1.0 / math.cos(theta)
    tan = math.tan(theta)
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = np.exp(1j * omega) * sec
    m[0, 3] = -1j * np.exp(-2j * phi) * tan
    m[1, 1] = np.exp(-1j * (omega + phi)) * sec
    m[1, 2] = 1j * tan
    m[2, 1] = -1j * tan
    m[2, 2] = np.exp(1j * (omega + phi)) * sec
    m[3, 0] = 1j * tan
    m[3, 3] = np.exp(-1j * (omega + 2.0 * phi)) * sec
    return TransferMatrix(m, theta, phi, omega)


def lyapunov_localization_length(
    disorder: DisorderSpec,
    theta: float,
    omega: float,
    chain_length: int,
    realization_index: int = 0,
    renorm_every: int = 16,
) -> LyapunovEstimate:
    """Lyapunov exponent of the disordered single-walker transfer chain.

    Multiplies chain_length transfer matrices with per-site phases drawn
    from the disorder spec, renormalizing the propagated vector every few
    sites and accumulating log norms.  gamma > 0 means exponential
    envelope decay with localization length 1/gamma; the clean chain at
    an allowed frequency gives gamma -> 0.

    Raises NonConvergenceError when the two half-chain estimates disagree
    by more than 1% (relative, with an absolute floor so the clean case
    does not trip the check).
    """
    if chain_length < 1000:
        raise ValueError(f"chain_length must be >= 1000, got {chain_length}")
    if disorder.kind == "temporal":
        raise ValueError("transfer chains take spatial disorder only (kind 'none' or 'spatial')")
    _check_sec(theta)

    if disorder.kind == "none":
        phis = np.zeros(chain_length)
    else:
        rng = np.random.default_rng([disorder.seed & ((1 << 64) - 1), realization_index])
        phis = rng.uniform(disorder.phase_min, disorder.phase_max, chain_length)

    # vectorized construction of all 2x2 matrices along the chain
    sec = 1.0 / math.cos(theta)
    tan = math.tan(theta)
    half = np.exp(-0.5j * phis)
    mats = np.empty((chain_length, 2, 2), dtype=np.complex128)
    mats[:, 0, 0] = half * np.exp(1j * (omega + phis / 2.0)) * sec
    mats[:, 0, 1] = half * (-1j * np.exp(-0.5j * phis) * tan)
    mats[:, 1, 0] = half * (1j * np.exp(0.5j * phis) * tan)
    mats[:, 1, 1] = half * np.exp(-1j * (omega + phis / 2.0)) * sec

    v = np.array([1.0, 1j / math.sqrt(13.0)], dtype=np.complex128)
    v /= np.linalg.norm(v)
    log_sum = 0.0
    half_logs = [0.0, 0.0]
    mid = chain_length // 2
    since_renorm = 0
    for i in range(chain_length):
        v = mats[i] @ v
        since_renorm += 1
        if since_renorm == renorm_every or i == chain_length - 1 or i == mid - 1:
            nrm = np.linalg.norm(v)
            log_sum += math.log(nrm)
            half_logs[0 if i < mid else 1] += math.log(nrm)
            v /= nrm
            since_renorm = 0

    gamma = log_sum / chain_length
    g1 = half_logs[0] / mid
    g2 = half_logs[1] / (chain_length - mid)
    spread = abs(g1 - g2)
    # absolute floor: a clean chain oscillates within a bounded transient,
    # so both halves sit at O(1/L) and must not trip the relative check
    if spread > max(0.01 * abs(gamma), 25.0 / chain_length):
        raise NonConvergenceError(
            f"half-chain estimates differ: {g1:.6g} vs {g2:.6g} (full {gamma:.6g})"
        )
    xi = 1.0 / gamma if gamma > 0 else math.inf
    return LyapunovEstimate(gamma, xi, (g1, g2))

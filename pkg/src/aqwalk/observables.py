"""Observables: position distributions, spread, localization, negativity.

Negativity conventions: for the pure walker state split between coin and
position space, the default route goes through the singular values s_i of
the coin-by-position amplitude matrix, N = ((sum_i s_i)^2 - 1)/2, which
equals the negative-eigenvalue sum of the partially transposed density
matrix.  The explicit partial-transpose route is kept as a cross-check
(method="partial_transpose") and as the only route for the mixed state of
two walkers after the position space is traced out.  Both bipartitions
used here are bounded by 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .state import DD, DU, UD, UU, SpinorField1P, TwoParticleField

__all__ = [
    "Distribution1D",
    "Distribution2D",
    "NegativityResult",
    "distribution",
    "sigma",
    "ipr",
    "front_position",
    "amplitude_matrix",
    "negativity_coin_position",
    "negativity_particle_particle",
    "reduced_particle_density",
]

STATE_NORM_TOL = 1e-8


@dataclass(frozen=True)
class Distribution1D:
    """Per-site probabilities over integer positions."""

    x: np.ndarray
    p: np.ndarray

    def total(self) -> float:
        return float(np.sum(self.p))


@dataclass(frozen=True)
class Distribution2D:
    """Per-site probabilities over a 2D integer lattice, p indexed [x, y]."""

    x: np.ndarray
    y: np.ndarray
    p: np.ndarray

    def total(self) -> float:
        return float(np.sum(self.p))


@dataclass(frozen=True)
class NegativityResult:
    value: float
    bipartition: str  # "coin_position" | "particle_particle"
    method: str  # "schmidt_pure" | "partial_transpose"


def distribution(state):
    """Position probability distribution of a walker state.

    One-particle and confined two-particle states give a Distribution1D
    along the active axis; full-2D states give a Distribution2D.
    """
    if isinstance(state, SpinorField1P):
        p = np.abs(state.up) ** 2 + np.abs(state.down) ** 2
        return Distribution1D(state.positions, p)
    if state.confinement == "xline":
        p = np.abs(state.uu) ** 2 + np.abs(state.dd) ** 2
        return Distribution1D(state.positions_x, p)
    if state.confinement == "yline":
        p = np.abs(state.ud) ** 2 + np.abs(state.du) ** 2
        return Distribution1D(state.positions_y, p)
    p = sum(np.abs(c) ** 2 for c in (state.uu, state.ud, state.du, state.dd))
    return Distribution2D(state.positions_x, state.positions_y, p)


def sigma(dist: Distribution1D) -> float:
    """Standard deviation sqrt(<x^2> - <x>^2) of a 1D distribution."""
    if np.ndim(dist.p) != 1:
        raise ValueError("sigma expects a 1D distribution")
    x = dist.x.astype(float)
    mean = float(np.dot(x, dist.p))
    second = float(np.dot(x * x, dist.p))
    var = second - mean * mean
    # variance can go epsilon-negative for a point mass
    return float(np.sqrt(var)) if var > 0.0 else 0.0


def ipr(dist: Distribution1D) -> float:
    """Inverse participation ratio sum_x p(x)^2.

    1 for a point distribution, ~1/support for a uniform one; higher
    means more localized.
    """
    if np.ndim(dist.p) != 1:
        raise ValueError("ipr expects a 1D distribution")
    return float(np.sum(np.asarray(dist.p) ** 2))


def front_position(dist: Distribution1D, tail_mass: float = 0.01) -> int:
    """Rightmost position where the right-tail probability still reaches tail_mass.

    Used to measure the ballistic front: front_position / t estimates the
    maximal group velocity of the walk.
    """
    tail = np.cumsum(dist.p[::-1])[::-1]  # tail[i] = sum of p from i to the end
    idx = np.nonzero(tail >= tail_mass)[0]
    if len(idx) == 0:
        raise ValueError("tail_mass exceeds the total probability")
    return int(dist.x[idx[-1]])


def amplitude_matrix(state) -> np.ndarray:
    """Coin-by-position amplitude matrix of a pure walker state.

    Shape (2, N) for one particle, (4, N) for a confined two-particle
    state (absent components are zero rows).  Full-2D states are not
    supported: the coin/position split used here is defined against a
    single position axis.
    """
    if isinstance(state, SpinorField1P):
        return np.vstack([state.up, state.down])
    if state.confinement == "xline":
        zeros = np.zeros_like(state.uu)
        return np.vstack([state.uu, zeros, zeros, state.dd])
    if state.confinement == "yline":
        zeros = np.zeros_like(state.ud)
        return np.vstack([zeros, state.ud, state.du, zeros])
    raise ValueError("coin/position bipartition is not supported for full-2D states")


def _check_normalized(m: np.ndarray):
    nrm = float(np.sum(np.abs(m) ** 2))
    if abs(nrm - 1.0) > STATE_NORM_TOL:
        raise ValueError(f"state must be normalized, |amp|^2 sums to {nrm!r}")


def _negativity_from_eigenvalues(eigvals: np.ndarray) -> float:
    lam = np.real(eigvals)
    return float(np.sum((np.abs(lam) - lam) / 2.0))


def negativity_schmidt(m: np.ndarray) -> float:
    """Negativity of a pure bipartite state from its amplitude matrix."""
    s = np.linalg.svd(m, compute_uv=False)
    value = (float(np.sum(s)) ** 2 - 1.0) / 2.0
    return max(value, 0.0)


def negativity_partial_transpose_pure(m: np.ndarray) -> float:
    """Dense partial-transpose negativity of a pure bipartite state.

    Builds the full density matrix, transposes the position index, and
    sums the negative eigenvalues.  O((dN)^3): intended as an oracle for
    moderate position dimension, not for production time series.
    """
    d, n = m.shape
    psi = m.reshape(-1)
    rho = np.outer(psi, psi.conj()).reshape(d, n, d, n)
    rho_pt = rho.transpose(0, 3, 2, 1).reshape(d * n, d * n)
    return _negativity_from_eigenvalues(np.linalg.eigvalsh(rho_pt))


def negativity_coin_position(state, method: str = "schmidt_pure") -> NegativityResult:
    """Entanglement negativity between coin and position space.

    The state must be pure and normalized.  method "schmidt_pure"
    (default) uses the singular-value form; "partial_transpose" builds
    the dense partially transposed density matrix.
    """
    m = amplitude_matrix(state)
    _check_normalized(m)
    if method == "schmidt_pure":
        value = negativity_schmidt(m)
    elif method == "partial_transpose":
        value = negativity_partial_transpose_pure(m)
    else:
        raise ValueError(f"unknown method {method!r}")
    return NegativityResult(value, "coin_position", method)


def reduced_particle_density(state: TwoParticleField) -> np.ndarray:
    """4x4 density matrix of the two-particle coin space, position traced out."""
    n = 4
    rho = np.zeros((n, n), dtype=np.complex128)
    if state.confinement == "xline":
        comps = {UU: state.uu, DD: state.dd}
    elif state.confinement == "yline":
        comps = {UD: state.ud, DU: state.du}
    else:
        comps = {UU: state.uu, UD: state.ud, DU: state.du, DD: state.dd}
    keys = sorted(comps)
    for i in keys:
        for j in keys:
            rho[i, j] = np.sum(comps[i] * comps[j].conj())
    return rho


def partial_transpose_second(rho4: np.ndarray) -> np.ndarray:
    """Partial transpose of a 4x4 two-qubit matrix on the second factor."""
    return rho4.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def negativity_particle_particle(state: TwoParticleField) -> NegativityResult:
    """Entanglement negativity between the two walkers.

    Traces out position, partially transposes the second particle, and
    sums (|lambda| - lambda)/2 over the four eigenvalues.
    """
    if abs(state.norm() - 1.0) > STATE_NORM_TOL:
        raise ValueError(f"state must be normalized, norm is {state.norm()!r}")
    rho = reduced_particle_density(state)
    value = _negativity_from_eigenvalues(np.linalg.eigvalsh(partial_transpose_second(rho)))
    return NegativityResult(max(value, 0.0), "particle_particle", "partial_transpose")

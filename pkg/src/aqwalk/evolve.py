"""Evolution engine: shift+coin steps, phase disorder, walk driver.

Conventions (fixed throughout the package):

* One particle: each step applies the combined coin at every site and
  then the shift that moves the up component one site left (x -> x-1)
  and the down component one site right (x -> x+1).  With the phase
  operator on the down branch, amplitudes update as

      up[x]   <-  cos(th) up[x+1] - i sin(th) down[x+1]
      down[x] <-  e^{i phi_{x-1}} (-i sin(th) up[x-1] + cos(th) down[x-1])

  i.e. the phase of the site where the coin acted travels with the
  down-moving branch.

* Two particles: uu moves to x-1, dd to x+1, ud to y+1, du to y-1, and
  the row phases (1, e^{i phi}, e^{i phi}, e^{2i phi}) of the combined
  4x4 coin travel with their components the same way.

* Disorder lives only in the phase angle phi (uniform over
  [phase_min, phase_max]); acceleration lives only in the coin angle
  schedule theta0 * exp(-a t).

All steps are unitary: the norm of the state is preserved to machine
precision, and boundary overflow is a hard error rather than a silent
truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coins import CoinSchedule, theta_at
from .errors import BoundaryOverflowError
from .observables import (
    Distribution1D,
    Distribution2D,
    distribution,
    ipr,
    negativity_coin_position,
    negativity_particle_particle,
    sigma,
)
from .state import InitialState, SpinorField1P, TwoParticleField, new_one_particle, new_two_particle

__all__ = [
    "DisorderSpec",
    "PhaseLandscape",
    "WalkSpec",
    "RunResult",
    "sample_landscape",
    "step_one_particle",
    "step_two_particle",
    "run_walk",
]

DISORDER_KINDS = ("none", "spatial", "temporal")

RECORD_KEYS = (
    "distribution",
    "sigma",
    "ipr",
    "negativity_coin_position",
    "negativity_particle_particle",
)

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class DisorderSpec:
    """What kind of phase disorder to draw and from which seeded stream.

    kind "none" means phi = 0 everywhere; "spatial" draws one phi per
    lattice site (frozen in time); "temporal" draws one phi per step
    (uniform in space).
    """

    kind: str = "none"
    phase_min: float = 0.0
    phase_max: float = math.pi
    seed: int = 0

    def __post_init__(self):
        if self.kind not in DISORDER_KINDS:
            raise ValueError(f"disorder kind must be one of {DISORDER_KINDS}, got {self.kind!r}")
        if self.phase_min > self.phase_max:
            raise ValueError("phase_min must be <= phase_max")


@dataclass(frozen=True)
class PhaseLandscape:
    """One realization of the phase disorder.

    values is a per-site array for spatial disorder, a per-step array for
    temporal disorder, and None for the clean walk.
    """

    kind: str
    values: np.ndarray | None = None


def sample_landscape(disorder: DisorderSpec, size: int, realization_index: int = 0) -> PhaseLandscape:
    """Draw one disorder realization, deterministic in (seed, index).

    size is the number of lattice sites (spatial) or steps (temporal).
    Each realization index keys an independent, reproducible stream.
    """
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    if realization_index < 0:
        raise ValueError("realization_index must be >= 0")
    if disorder.kind == "none":
        return PhaseLandscape("none", None)
    rng = np.random.default_rng([disorder.seed & _SEED_MASK, realization_index])
    values = rng.uniform(disorder.phase_min, disorder.phase_max, size)
    return PhaseLandscape(disorder.kind, values)


@dataclass(frozen=True)
class WalkSpec:
    """Complete description of a single walk run."""

    particle_count: int
    schedule: CoinSchedule
    init: InitialState
    steps: int
    disorder: DisorderSpec = field(default_factory=DisorderSpec)
    record: tuple[str, ...] = ("distribution", "sigma")
    layout: str = "auto"  # "full2d" keeps confined 2p walks on the 2D grid

    def __post_init__(self):
        if self.particle_count not in (1, 2):
            raise ValueError(f"particle_count must be 1 or 2, got {self.particle_count}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if self.layout not in ("auto", "full2d"):
            raise ValueError(f"layout must be 'auto' or 'full2d', got {self.layout!r}")
        if self.layout == "full2d" and self.particle_count != 2:
            raise ValueError("layout 'full2d' requires particle_count = 2")
        object.__setattr__(self, "record", tuple(self.record))
        for key in self.record:
            if key not in RECORD_KEYS:
                raise ValueError(f"unknown record key {key!r}; known keys: {RECORD_KEYS}")
        if "negativity_particle_particle" in self.record and self.particle_count != 2:
            raise ValueError("negativity_particle_particle requires particle_count = 2")
        expected_len = 2 if self.particle_count == 1 else 4
        if self.init.coin.shape != (expected_len,):
            raise ValueError(
                f"initial coin vector length {self.init.coin.shape[0]} does not match "
                f"particle_count {self.particle_count}"
            )


@dataclass
class RunResult:
    """Recorded time series of one walk (index 0 is the initial state)."""

    steps: int
    sigma: np.ndarray | None = None
    ipr: np.ndarray | None = None
    negativity_coin_position: np.ndarray | None = None
    negativity_particle_particle: np.ndarray | None = None
    distribution: Distribution1D | Distribution2D | None = None
    final_state: SpinorField1P | TwoParticleField | None = None

    def series(self, key: str) -> np.ndarray:
        value = getattr(self, key)
        if value is None:
            raise KeyError(f"observable {key!r} was not recorded")
        return value


def _phase_factors(phases, power: int = 1):
    """exp(i * power * phi) for a scalar or per-site phi, None for clean."""
    if phases is None:
        return None
    return np.exp(1j * power * np.asarray(phases))


def step_one_particle(state: SpinorField1P, theta: float, phases=None) -> SpinorField1P:
    """Advance a one-particle field by one coin+shift step.

    phases: None for the clean walk, a scalar phi (temporal disorder) or a
    per-site array of length 2*half_width+1 (spatial disorder).
    """
    c = math.cos(theta)
    s = math.sin(theta)
    up, down = state.up, state.down
    a = c * up - 1j * s * down
    b = -1j * s * up + c * down
    f = _phase_factors(phases)
    if f is not None:
        b = b * f
    if a[0] != 0:
        raise BoundaryOverflowError("up amplitude would leave the lattice at the left edge")
    if b[-1] != 0:
        raise BoundaryOverflowError("down amplitude would leave the lattice at the right edge")
    new_up = np.zeros_like(up)
    new_down = np.zeros_like(down)
    new_up[:-1] = a[1:]
    new_down[1:] = b[:-1]
    return SpinorField1P(state.half_width, new_up, new_down)


def _step_xline(state: TwoParticleField, c: float, s: float, phases) -> TwoParticleField:
    uu, dd = state.uu, state.dd
    a = c * uu - 1j * s * dd
    b = -1j * s * uu + c * dd
    f = _phase_factors(phases, power=2)  # dd row carries e^{2i phi}
    if f is not None:
        b = b * f
    if a[0] != 0:
        raise BoundaryOverflowError("uu amplitude would leave the lattice at the left edge")
    if b[-1] != 0:
        raise BoundaryOverflowError("dd amplitude would leave the lattice at the right edge")
    new_uu = np.zeros_like(uu)
    new_dd = np.zeros_like(dd)
    new_uu[:-1] = a[1:]
    new_dd[1:] = b[:-1]
    return TwoParticleField(
        "xline", state.half_width_x, 0, new_uu, None, None, new_dd, state.x0, state.y0
    )


def _step_yline(state: TwoParticleField, c: float, s: float, phases) -> TwoParticleField:
    ud, du = state.ud, state.du
    a = c * ud - 1j * s * du
    b = -1j * s * ud + c * du
    f = _phase_factors(phases)  # both rows carry e^{i phi}
    if f is not None:
        a = a * f
        b = b * f
    if a[-1] != 0:
        raise BoundaryOverflowError("ud amplitude would leave the lattice at the top edge")
    if b[0] != 0:
        raise BoundaryOverflowError("du amplitude would leave the lattice at the bottom edge")
    new_ud = np.zeros_like(ud)
    new_du = np.zeros_like(du)
    new_ud[1:] = a[:-1]
    new_du[:-1] = b[1:]
    return TwoParticleField(
        "yline", 0, state.half_width_y, None, new_ud, new_du, None, state.x0, state.y0
    )


def _step_full2d(state: TwoParticleField, c: float, s: float, phases) -> TwoParticleField:
    if phases is not None and np.ndim(phases) != 0:
        raise ValueError("spatial disorder is only supported on confined (single-line) walks")
    uu, ud, du, dd = state.uu, state.ud, state.du, state.dd
    a = c * uu - 1j * s * dd
    b = -1j * s * uu + c * dd
    cc = c * ud - 1j * s * du
    d = -1j * s * ud + c * du
    if phases is not None:
        e1 = np.exp(1j * float(phases))
        b = b * (e1 * e1)
        cc = cc * e1
        d = d * e1
    for leaving, name in ((a[0, :], "uu/left"), (b[-1, :], "dd/right"), (cc[:, -1], "ud/top"), (d[:, 0], "du/bottom")):
        if np.any(leaving != 0):
            raise BoundaryOverflowError(f"{name}: amplitude would leave the lattice")
    new_uu = np.zeros_like(uu)
    new_dd = np.zeros_like(dd)
    new_ud = np.zeros_like(ud)
    new_du = np.zeros_like(du)
    new_uu[:-1, :] = a[1:, :]
    new_dd[1:, :] = b[:-1, :]
    new_ud[:, 1:] = cc[:, :-1]
    new_du[:, :-1] = d[:, 1:]
    return TwoParticleField(
        "full2d", state.half_width_x, state.half_width_y, new_uu, new_ud, new_du, new_dd, state.x0, state.y0
    )


def step_two_particle(state: TwoParticleField, theta: float, phases=None) -> TwoParticleField:
    """Advance a two-particle field by one interacting coin+shift step.

    For confined fields the per-site phase array is indexed along the
    active axis; the frozen coordinate never sees a phase difference.
    """
    c = math.cos(theta)
    s = math.sin(theta)
    if state.confinement == "xline":
        return _step_xline(state, c, s, phases)
    if state.confinement == "yline":
        return _step_yline(state, c, s, phases)
    return _step_full2d(state, c, s, phases)


def landscape_size(spec: WalkSpec) -> int:
    """Number of random draws one realization of this walk needs."""
    if spec.disorder.kind == "temporal":
        return spec.steps
    return 2 * spec.steps + 1


def _new_state(spec: WalkSpec):
    if spec.particle_count == 1:
        return new_one_particle(spec.init, spec.steps)
    return new_two_particle(spec.init, spec.steps, force_full2d=(spec.layout == "full2d"))


def _check_landscape(spec: WalkSpec, landscape: PhaseLandscape):
    if landscape.kind != spec.disorder.kind:
        raise ValueError(
            f"landscape kind {landscape.kind!r} does not match disorder kind {spec.disorder.kind!r}"
        )
    if landscape.kind != "none" and len(landscape.values) != landscape_size(spec):
        raise ValueError(
            f"landscape has {len(landscape.values)} values, walk needs {landscape_size(spec)}"
        )


def run_walk(spec: WalkSpec, landscape: PhaseLandscape | None = None) -> RunResult:
    """Run a full walk, recording the requested observables at every step.

    landscape defaults to realization 0 of spec.disorder.  Scalar series
    (sigma, ipr, negativities) have steps+1 entries with index 0 the
    initial state; the distribution is recorded for the final state only.
    """
    if landscape is None:
        landscape = sample_landscape(spec.disorder, landscape_size(spec), 0)
    _check_landscape(spec, landscape)

    state = _new_state(spec)
    stepper = step_one_particle if spec.particle_count == 1 else step_two_particle

    result = RunResult(steps=spec.steps)
    n = spec.steps + 1
    scalar_keys = [k for k in spec.record if k != "distribution"]
    for key in scalar_keys:
        setattr(result, key, np.zeros(n))

    def record(t, st):
        if not scalar_keys:
            return
        dist = None
        if "sigma" in scalar_keys or "ipr" in scalar_keys:
            dist = distribution(st)
        if "sigma" in scalar_keys:
            result.sigma[t] = sigma(dist)
        if "ipr" in scalar_keys:
            result.ipr[t] = ipr(dist)
        if "negativity_coin_position" in scalar_keys:
            result.negativity_coin_position[t] = negativity_coin_position(st).value
        if "negativity_particle_particle" in scalar_keys:
            result.negativity_particle_particle[t] = negativity_particle_particle(st).value

    record(0, state)
    for t in range(1, spec.steps + 1):
        theta = theta_at(spec.schedule, t)
        if landscape.kind == "none":
            phases = None
        elif landscape.kind == "spatial":
            phases = landscape.values
        else:
            phases = landscape.values[t - 1]
        state = stepper(state, theta, phases)
        record(t, state)

    if "distribution" in spec.record:
        result.distribution = distribution(state)
    result.final_state = state
    return result

"""Declarative experiment configs: schema validation and spec construction.

Configs are YAML mappings with exactly one experiment kind.  Angles accept
plain numbers or strings like "pi", "pi/4", "3pi/4", "0.5*pi".  All
validation errors carry the dotted field path (exit code 2 territory).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np
import yaml

from .coins import CoinSchedule
from .errors import ConfigError
from .evolve import RECORD_KEYS, DisorderSpec, WalkSpec
from .ensemble import EnsembleSpec
from .spectral import DISPERSION_VARIANTS
from .state import InitialState

__all__ = ["Experiment", "load_config", "parse_config", "parse_angle"]

KINDS = ("walk", "ensemble", "surface", "dispersion", "transfer", "lyapunov", "schedule")

_NAMED_INITIALS_1P = ("up", "down", "symmetric")
_NAMED_INITIALS_2P = ("uu", "ud", "du", "dd")

_ANGLE_RE = re.compile(r"^([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?$")


def parse_angle(value, where: str) -> float:
    """Number or 'pi'-style string to radians."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, str):
        m = _ANGLE_RE.match(value.strip())
        if m:
            coef = m.group(1)
            coef_val = float(coef) if coef not in ("", "+", "-") else float(coef + "1")
            div = float(m.group(2)) if m.group(2) else 1.0
            return coef_val * math.pi / div
        try:
            return float(value)
        except ValueError:
            pass
    raise ConfigError(where, f"expected a number or a 'pi/4'-style angle, got {value!r}")


@dataclass
class Experiment:
    """Parsed config, ready to run."""

    name: str
    kind: str
    fmt: str = "csv"
    output_dir: str | None = None
    walk: WalkSpec | None = None
    ensemble: EnsembleSpec | None = None
    sweep_field: str | None = None
    sweep_values: list | None = None
    payload: dict = field(default_factory=dict)  # kind-specific extras
    raw: dict = field(default_factory=dict)  # config as given, echoed in the manifest


def load_config(path: str) -> dict:
    try:
        with open(path) as handle:
            data = yaml.safe_load(handle)
    except FileNotFoundError:
        raise ConfigError("config", f"file not found: {path}")
    except yaml.YAMLError as exc:
        raise ConfigError("config", f"invalid YAML: {exc}")
    if not isinstance(data, dict):
        raise ConfigError("config", "top level must be a mapping")
    return data


def _require(mapping: dict, key: str, where: str):
    if key not in mapping:
        raise ConfigError(f"{where}.{key}" if where else key, "missing required field")
    return mapping[key]


def _as_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(where, f"expected an integer, got {value!r}")
    return value


def _as_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(where, f"expected a number, got {value!r}")
    return float(value)


def _parse_initial(raw, particles: int, origin, where: str) -> InitialState:
    if isinstance(raw, str):
        label = raw.strip().lower()
        if particles == 1:
            if label not in _NAMED_INITIALS_1P:
                raise ConfigError(where, f"unknown one-particle initial state {raw!r}")
            return getattr(InitialState, label)(origin)
        if label not in _NAMED_INITIALS_2P:
            raise ConfigError(where, f"unknown two-particle initial state {raw!r}")
        return InitialState.basis_two_particle(label, origin)
    if isinstance(raw, list):
        try:
            amps = np.array([complex(pair[0], pair[1]) for pair in raw])
        except (TypeError, IndexError):
            raise ConfigError(where, "amplitudes must be [re, im] pairs")
        try:
            return InitialState(amps, origin)
        except ValueError as exc:
            raise ConfigError(where, str(exc))
    raise ConfigError(where, "expected a named state or a list of [re, im] pairs")


def _parse_disorder(raw, where: str) -> DisorderSpec:
    if raw is None:
        return DisorderSpec()
    if not isinstance(raw, dict):
        raise ConfigError(where, "expected a mapping")
    kind = raw.get("kind", "none")
    spec = dict(
        kind=kind,
        phase_min=parse_angle(raw.get("phase_min", 0.0), f"{where}.phase_min"),
        phase_max=parse_angle(raw.get("phase_max", math.pi), f"{where}.phase_max"),
        seed=_as_int(raw.get("seed", 0), f"{where}.seed"),
    )
    unknown = set(raw) - {"kind", "phase_min", "phase_max", "seed"}
    if unknown:
        raise ConfigError(where, f"unknown fields {sorted(unknown)}")
    try:
        return DisorderSpec(**spec)
    except ValueError as exc:
        raise ConfigError(where, str(exc))


def _parse_walk(raw, where: str) -> WalkSpec:
    if not isinstance(raw, dict):
        raise ConfigError(where, "expected a mapping")
    unknown = set(raw) - {
        "particles", "theta0", "acceleration", "steps", "initial", "origin", "disorder",
        "record", "layout",
    }
    if unknown:
        raise ConfigError(where, f"unknown fields {sorted(unknown)}")
    particles = _as_int(raw.get("particles", 1), f"{where}.particles")
    if particles not in (1, 2):
        raise ConfigError(f"{where}.particles", f"must be 1 or 2, got {particles}")
    theta0 = parse_angle(_require(raw, "theta0", where), f"{where}.theta0")
    accel = _as_number(raw.get("acceleration", 0.0), f"{where}.acceleration")
    steps = _as_int(_require(raw, "steps", where), f"{where}.steps")
    origin = raw.get("origin", 0 if particles == 1 else [0, 0])
    if particles == 2:
        if not (isinstance(origin, list) and len(origin) == 2):
            raise ConfigError(f"{where}.origin", "two-particle origin must be [x0, y0]")
        origin = (int(origin[0]), int(origin[1]))
    else:
        origin = _as_int(origin, f"{where}.origin")
    init = _parse_initial(raw.get("initial", "symmetric" if particles == 1 else "uu"),
                          particles, origin, f"{where}.initial")
    disorder = _parse_disorder(raw.get("disorder"), f"{where}.disorder")
    record = raw.get("record", ["distribution", "sigma"])
    if not isinstance(record, list) or not record:
        raise ConfigError(f"{where}.record", "expected a non-empty list")
    for key in record:
        if key not in RECORD_KEYS:
            raise ConfigError(f"{where}.record", f"unknown record key {key!r}; known: {RECORD_KEYS}")
    layout = raw.get("layout", "auto")
    try:
        schedule = CoinSchedule(theta0, accel)
        return WalkSpec(particles, schedule, init, steps, disorder, tuple(record), layout)
    except ValueError as exc:
        raise ConfigError(where, str(exc))


def _parse_sweep(raw, where: str):
    if raw is None:
        return None, None
    if not isinstance(raw, dict) or len(raw) != 1:
        raise ConfigError(where, "sweep must map exactly one field to a list of values")
    (key, values), = raw.items()
    if key not in ("acceleration", "theta0"):
        raise ConfigError(where, f"sweep field must be 'acceleration' or 'theta0', got {key!r}")
    if not isinstance(values, list) or not values:
        raise ConfigError(f"{where}.{key}", "expected a non-empty list")
    if key == "theta0":
        parsed = [parse_angle(v, f"{where}.{key}") for v in values]
    else:
        parsed = [_as_number(v, f"{where}.{key}") for v in values]
    return key, parsed


def parse_config(data: dict) -> Experiment:
    """Validate a config mapping and build the corresponding specs."""
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise ConfigError("name", "missing or empty experiment name")
    present = [k for k in KINDS if k in data]
    if len(present) != 1:
        raise ConfigError("kind", f"config must contain exactly one of {KINDS}, found {present}")
    kind = present[0]
    fmt = data.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("format", f"must be 'csv' or 'json', got {fmt!r}")
    output_dir = data.get("output_dir")
    known_top = {"name", "format", "output_dir", "sweep", kind}
    unknown = set(data) - known_top
    if unknown:
        raise ConfigError("config", f"unknown top-level fields {sorted(unknown)}")
    sweep_field, sweep_values = _parse_sweep(data.get("sweep"), "sweep")
    if sweep_field is not None and kind not in ("walk", "ensemble"):
        raise ConfigError("sweep", f"sweep is only supported for walk/ensemble, not {kind!r}")

    exp = Experiment(name=name, kind=kind, fmt=fmt, output_dir=output_dir,
                     sweep_field=sweep_field, sweep_values=sweep_values, raw=data)

    if kind == "walk":
        exp.walk = _parse_walk(data["walk"], "walk")
    elif kind == "ensemble":
        raw = data["ensemble"]
        if not isinstance(raw, dict):
            raise ConfigError("ensemble", "expected a mapping")
        walk = _parse_walk(_require(raw, "walk", "ensemble"), "ensemble.walk")
        runs = _as_int(_require(raw, "runs", "ensemble"), "ensemble.runs")
        base_seed = _as_int(raw.get("base_seed", 0), "ensemble.base_seed")
        try:
            exp.ensemble = EnsembleSpec(walk, runs, base_seed)
        except ValueError as exc:
            raise ConfigError("ensemble", str(exc))
    elif kind == "surface":
        raw = data["surface"]
        if not isinstance(raw, dict):
            raise ConfigError("surface", "expected a mapping")
        walk = _parse_walk(_require(raw, "walk", "surface"), "surface.walk")
        accels = raw.get("accelerations")
        if not isinstance(accels, list) or not accels:
            raise ConfigError("surface.accelerations", "expected a non-empty list")
        observable = raw.get("observable", "negativity_particle_particle")
        if observable not in RECORD_KEYS or observable == "distribution":
            raise ConfigError("surface.observable", f"not a per-step observable: {observable!r}")
        if observable not in walk.record:
            raise ConfigError("surface.walk.record", f"must include {observable!r}")
        exp.walk = walk
        exp.payload = {
            "accelerations": [_as_number(v, "surface.accelerations") for v in accels],
            "observable": observable,
        }
    elif kind == "dispersion":
        raw = data["dispersion"]
        if not isinstance(raw, dict):
            raise ConfigError("dispersion", "expected a mapping")
        variant = raw.get("variant", "single")
        if variant not in DISPERSION_VARIANTS:
            raise ConfigError("dispersion.variant", f"must be one of {DISPERSION_VARIANTS}")
        kgrid = raw.get("kappa", {})
        exp.payload = {
            "variant": variant,
            "theta0": parse_angle(_require(raw, "theta0", "dispersion"), "dispersion.theta0"),
            "phi": parse_angle(raw.get("phi", 0.0), "dispersion.phi"),
            "kappa_min": parse_angle(kgrid.get("min", -math.pi), "dispersion.kappa.min"),
            "kappa_max": parse_angle(kgrid.get("max", math.pi), "dispersion.kappa.max"),
            "kappa_count": _as_int(kgrid.get("count", 256), "dispersion.kappa.count"),
        }
    elif kind == "transfer":
        raw = data["transfer"]
        if not isinstance(raw, dict):
            raise ConfigError("transfer", "expected a mapping")
        particles = _as_int(raw.get("particles", 1), "transfer.particles")
        if particles not in (1, 2):
            raise ConfigError("transfer.particles", "must be 1 or 2")
        exp.payload = {
            "particles": particles,
            "theta": parse_angle(_require(raw, "theta", "transfer"), "transfer.theta"),
            "phi": parse_angle(raw.get("phi", 0.0), "transfer.phi"),
            "omega": parse_angle(_require(raw, "omega", "transfer"), "transfer.omega"),
        }
    elif kind == "lyapunov":
        raw = data["lyapunov"]
        if not isinstance(raw, dict):
            raise ConfigError("lyapunov", "expected a mapping")
        exp.payload = {
            "theta": parse_angle(_require(raw, "theta", "lyapunov"), "lyapunov.theta"),
            "omega": parse_angle(_require(raw, "omega", "lyapunov"), "lyapunov.omega"),
            "chain_length": _as_int(raw.get("chain_length", 200_000), "lyapunov.chain_length"),
            "disorder": _parse_disorder(raw.get("disorder", {"kind": "spatial"}), "lyapunov.disorder"),
        }
    elif kind == "schedule":
        raw = data["schedule"]
        if not isinstance(raw, dict):
            raise ConfigError("schedule", "expected a mapping")
        accels = raw.get("accelerations")
        if not isinstance(accels, list) or not accels:
            raise ConfigError("schedule.accelerations", "expected a non-empty list")
        exp.payload = {
            "theta0": parse_angle(_require(raw, "theta0", "schedule"), "schedule.theta0"),
            "accelerations": [_as_number(v, "schedule.accelerations") for v in accels],
            "steps": _as_int(raw.get("steps", 200), "schedule.steps"),
        }
    return exp

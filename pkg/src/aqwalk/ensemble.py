"""Disorder-ensemble driver: many realizations, deterministic aggregation.

Realization i always uses the landscape drawn with realization index i
from the ensemble's base seed, so any subset of realizations can be
recomputed independently.  Results are assembled into arrays ordered by
realization index before any reduction, which makes the output
bit-identical for every worker count (including 1).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import RealizationError
from .evolve import DisorderSpec, WalkSpec, landscape_size, run_walk, sample_landscape

__all__ = [
    "EnsembleSpec",
    "EnsembleSummary",
    "ConvergenceReport",
    "run_ensemble",
    "convergence_report",
]


@dataclass(frozen=True)
class EnsembleSpec:
    """A walk plus how many disorder realizations to average over.

    base_seed keys the landscape streams (it takes precedence over the
    seed inside walk.disorder, so the same WalkSpec can be reused across
    independent ensembles).
    """

    walk: WalkSpec
    runs: int
    base_seed: int = 0

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")


@dataclass
class EnsembleSummary:
    """Per-step mean and standard error of each recorded observable.

    mean/stderr map record keys to arrays of length steps+1; the final
    step distribution is aggregated per site.
    """

    runs: int
    steps: int
    mean: dict
    stderr: dict
    positions: np.ndarray | None = None
    mean_distribution: np.ndarray | None = None
    stderr_distribution: np.ndarray | None = None


@dataclass(frozen=True)
class ConvergenceReport:
    """Comparison of two ensemble summaries of the same walk."""

    max_abs_diff: dict
    frac_steps_within: dict
    flagged: dict

    @property
    def any_flagged(self) -> bool:
        return any(self.flagged.values())


def _effective_walk(spec: EnsembleSpec) -> WalkSpec:
    disorder = replace(spec.walk.disorder, seed=spec.base_seed)
    return replace(spec.walk, disorder=disorder)


def _one_realization(args):
    walk, index = args
    try:
        landscape = sample_landscape(walk.disorder, landscape_size(walk), index)
        result = run_walk(walk, landscape)
        scalars = {k: result.series(k) for k in walk.record if k != "distribution"}
        dist_p = result.distribution.p if result.distribution is not None else None
    except Exception as exc:
        raise RealizationError(index, exc) from exc
    return index, scalars, dist_p


def _stderr(samples: np.ndarray) -> np.ndarray:
    # sample standard error of the mean; zero for a single run
    runs = samples.shape[0]
    if runs < 2:
        return np.zeros(samples.shape[1])
    return np.std(samples, axis=0, ddof=1) / np.sqrt(runs)


def run_ensemble(spec: EnsembleSpec, workers: int | None = None) -> EnsembleSummary:
    """Run all realizations and aggregate means and standard errors.

    workers: process count for the realization map; None picks the CPU
    count.  The aggregation is order-fixed, so the result does not depend
    on the worker count.
    """
    walk = _effective_walk(spec)
    runs = spec.runs
    if workers is None:
        workers = os.cpu_count() or 1
    workers = max(1, min(workers, runs))

    if walk.disorder.kind == "none":
        # without disorder every realization is the same computation, so a
        # clean ensemble of any size collapses to one run exactly
        index, scalars, dist_p = _one_realization((walk, 0))
        mean = {k: v.copy() for k, v in scalars.items()}
        stderr = {k: np.zeros_like(v) for k, v in scalars.items()}
        summary = EnsembleSummary(runs=runs, steps=walk.steps, mean=mean, stderr=stderr)
        if dist_p is not None:
            summary.mean_distribution = dist_p
            summary.stderr_distribution = np.zeros_like(dist_p)
            summary.positions = np.arange(-walk.steps, walk.steps + 1)
        return summary

    tasks = [(walk, i) for i in range(runs)]
    if workers == 1:
        raw = map(_one_realization, tasks)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        raw = pool.map(_one_realization, tasks, chunksize=max(1, runs // (workers * 8)))

    scalar_keys = [k for k in walk.record if k != "distribution"]
    series = {k: np.zeros((runs, walk.steps + 1)) for k in scalar_keys}
    dists = None
    for index, scalars, dist_p in raw:
        for k in scalar_keys:
            series[k][index] = scalars[k]
        if dist_p is not None:
            if dists is None:
                dists = np.zeros((runs,) + dist_p.shape)
            dists[index] = dist_p
    if workers > 1:
        pool.shutdown()

    mean = {k: np.mean(series[k], axis=0) for k in scalar_keys}
    stderr = {k: _stderr(series[k]) for k in scalar_keys}

    summary = EnsembleSummary(runs=runs, steps=walk.steps, mean=mean, stderr=stderr)
    if dists is not None:
        flat = dists.reshape(runs, -1)
        summary.mean_distribution = np.mean(flat, axis=0).reshape(dists.shape[1:])
        summary.stderr_distribution = _stderr(flat).reshape(dists.shape[1:])
        # every field is sized to its step count, so the axis is fixed
        summary.positions = np.arange(-walk.steps, walk.steps + 1)
    return summary


def convergence_report(summary: EnsembleSummary, reference: EnsembleSummary) -> ConvergenceReport:
    """Compare mean curves of an ensemble against a reference ensemble.

    The reference must not be smaller.  For each observable the report
    gives the max absolute difference of the mean curves, the fraction of
    steps where the difference stays within 3x the pooled standard error,
    and a flag raised when more than 5% of steps exceed that band.
    """
    if reference.runs < summary.runs:
        raise ValueError("reference ensemble must have at least as many runs")
    if reference.steps != summary.steps:
        raise ValueError("ensembles must cover the same number of steps")
    max_abs_diff = {}
    frac_within = {}
    flagged = {}
    for key in summary.mean:
        if key not in reference.mean:
            continue
        diff = np.abs(summary.mean[key] - reference.mean[key])
        pooled = 3.0 * np.sqrt(summary.stderr[key] ** 2 + reference.stderr[key] ** 2)
        within = diff <= pooled
        max_abs_diff[key] = float(np.max(diff))
        frac_within[key] = float(np.mean(within))
        flagged[key] = frac_within[key] < 0.95
    return ConvergenceReport(max_abs_diff, frac_within, flagged)

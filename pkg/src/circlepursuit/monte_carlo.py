"""Seeded Monte Carlo estimates of cycle/coalesce probabilities.

Trial ``t`` of an experiment draws from its own generator, seeded by
``SeedSequence(seed, spawn_key=(tag, t))`` where ``tag`` identifies the
experiment row (the bug count, or the alpha index). Aggregation only sums
counts, so results do not depend on the number of workers or chunk order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernel
from .dynamics import TWO_PI, BugConfiguration, SimParams, _from_clusters

Z95 = 1.96
UNRELIABLE_FRACTION = 0.01


@dataclass(frozen=True)
class ProbabilityEstimate:
    """Bernoulli proportion with a normal-approximation 95% interval.

    ``p_hat`` is the share of cycling trials among the trials that classified;
    the standard error uses that same classified count.
    """

    p_hat: float
    m_trials: int
    std_err: float
    ci95_low: float
    ci95_high: float
    undetermined_count: int = 0

    @classmethod
    def from_counts(cls, hits: int, misses: int, undetermined: int = 0) -> "ProbabilityEstimate":
        m = hits + misses
        if m == 0:
            nan = float("nan")
            return cls(nan, undetermined, nan, nan, nan, undetermined)
        p = hits / m
        se = math.sqrt(p * (1 - p) / m)
        return cls(
            p_hat=p,
            m_trials=m + undetermined,
            std_err=se,
            ci95_low=max(0.0, p - Z95 * se),
            ci95_high=min(1.0, p + Z95 * se),
            undetermined_count=undetermined,
        )

    @property
    def reliable(self) -> bool:
        return (
            self.undetermined_count <= UNRELIABLE_FRACTION * self.m_trials
            and not math.isnan(self.p_hat)
        )

    def covers(self, p: float) -> bool:
        return self.ci95_low <= p <= self.ci95_high

    def complement(self) -> "ProbabilityEstimate":
        """The estimate for the opposite outcome (same error, mirrored interval)."""
        return ProbabilityEstimate(
            p_hat=1.0 - self.p_hat,
            m_trials=self.m_trials,
            std_err=self.std_err,
            ci95_low=1.0 - self.ci95_high,
            ci95_high=1.0 - self.ci95_low,
            undetermined_count=self.undetermined_count,
        )


@dataclass(frozen=True)
class SweepRow:
    n_bugs: int
    estimate: ProbabilityEstimate  # probability of coalescing
    seed: int
    dt: float


@dataclass(frozen=True)
class PowerLawFit:
    """``p ~ prefactor * N**exponent`` fitted by least squares in log-log space."""

    prefactor: float
    exponent: float
    rms_log_residual: float
    n_points: int

    def __call__(self, n):
        return self.prefactor * np.asarray(n, dtype=float) ** self.exponent


def trial_rng(seed: int, tag: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(tag, trial)))


def sample_initial(n: int, rng: np.random.Generator) -> BugConfiguration:
    """Bug 1 at angle 0, bugs 2..n independent and uniform on ``(0, 2*pi)``."""
    phi, starts = _sample_clusters(n, rng)
    return _from_clusters(phi, starts, n)


def _sample_clusters(n, rng, tol=1e-9):
    if n < 2:
        raise ValueError("need n >= 2")
    theta = np.empty(n)
    theta[0] = 0.0
    theta[1:] = rng.uniform(0.0, TWO_PI, n - 1)
    return _kernel.absorb_coincident(theta, np.arange(n), tol)


def _perturbed_clusters(alpha, rng, tol):
    """Three bugs with both gaps drawn from ``pi + U(-alpha, alpha)``."""
    while True:
        w1, w2 = math.pi + rng.uniform(-alpha, alpha, 2)
        if abs(w1 - math.pi) < tol and abs(w2 - math.pi) < tol:
            continue  # exact groups point
        theta = np.array([0.0, w1, (w1 + w2) % TWO_PI])
        phi, starts = _kernel.absorb_coincident(theta, np.arange(3), tol)
        if _kernel.classify(phi, tol)[0] != _kernel.GROUPS:
            return phi, starts


def _count_chunk(task):
    """Run trials ``lo..hi-1``; returns (cycles, coalesces, other)."""
    kind, n, arg, params, seed, tag, lo, hi = task
    counts = [0, 0, 0]
    tol = params.coincidence_tol
    for trial in range(lo, hi):
        rng = trial_rng(seed, tag, trial)
        if kind == "uniform":
            phi, starts = _sample_clusters(n, rng, tol)
        else:
            phi, starts = _perturbed_clusters(arg, rng, tol)
        code = _kernel.run_trial(
            phi, starts, params.dt, params.max_steps, params.check_every, tol
        )[0]
        if code == _kernel.CYCLE:
            counts[0] += 1
        elif code == _kernel.COALESCE:
            counts[1] += 1
        else:
            counts[2] += 1
    return counts


def _run_counts(tasks: list, workers: int) -> list[list[int]]:
    if workers <= 1:
        return [_count_chunk(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_count_chunk, tasks))


def _chunks(m: int, workers: int) -> list[tuple[int, int]]:
    size = max(1, math.ceil(m / max(1, 4 * workers)))
    return [(lo, min(m, lo + size)) for lo in range(0, m, size)]


def _estimate(kind, n, arg, m_trials, params, seed, tag, workers):
    if m_trials < 1:
        raise ValueError("m_trials must be >= 1")
    params.check(n)
    tasks = [(kind, n, arg, params, seed, tag, lo, hi) for lo, hi in _chunks(m_trials, workers)]
    cyc = coal = other = 0
    for a, b, c in _run_counts(tasks, workers):
        cyc, coal, other = cyc + a, coal + b, other + c
    return ProbabilityEstimate.from_counts(cyc, coal, other)


def estimate_cycle_probability(
    n: int,
    m_trials: int,
    params: Optional[SimParams] = None,
    seed: int = 0,
    workers: int = 1,
) -> ProbabilityEstimate:
    """Estimate the probability that ``n`` uniformly placed bugs cycle.

    Trials that time out are excluded from ``p_hat`` and counted in
    ``undetermined_count``; more than 1% of them marks the estimate unreliable.
    """
    params = params or SimParams.for_n(n)
    return _estimate("uniform", n, None, m_trials, params, seed, n, workers)


def stability_experiment(
    alphas: Sequence[float],
    m_trials: int,
    params: Optional[SimParams] = None,
    seed: int = 0,
    workers: int = 1,
) -> list[tuple[float, ProbabilityEstimate]]:
    """Cycle probability of three bugs perturbed from the groups point, per alpha."""
    params = params or SimParams.for_n(3)
    out = []
    for i, alpha in enumerate(alphas):
        if not 0 < alpha <= math.pi:
            raise ValueError(f"alpha must lie in (0, pi], got {alpha}")
        est = _estimate("perturbed", 3, float(alpha), m_trials, params, seed, i, workers)
        out.append((float(alpha), est))
    return out


def default_alphas(k: int = 20) -> np.ndarray:
    """``k`` values spaced uniformly in ``(0, pi]``, ending at ``pi``."""
    return math.pi * np.arange(1, k + 1) / k


def sweep(
    n_values: Iterable[int],
    m_trials: int,
    dt: Optional[float] = None,
    seed: int = 0,
    workers: int = 1,
    t_max: float = 100.0,
) -> list[SweepRow]:
    """Coalescence probability for each bug count (one independent row per N)."""
    rows = []
    for n in n_values:
        params = SimParams.for_n(n, dt, t_max=t_max)
        est = estimate_cycle_probability(n, m_trials, params, seed, workers)
        rows.append(SweepRow(int(n), est.complement(), seed, params.dt))
    return rows


def fit_power_law_arrays(n_values, probabilities) -> PowerLawFit:
    x = np.log(np.asarray(n_values, dtype=float))
    p = np.asarray(probabilities, dtype=float)
    if x.size < 3:
        raise ValueError("need at least 3 points to fit")
    if np.any(p <= 0):
        raise ValueError("probabilities must be positive for a log-log fit")
    y = np.log(p)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (intercept + slope * x)
    return PowerLawFit(
        prefactor=float(math.exp(intercept)),
        exponent=float(slope),
        rms_log_residual=float(np.sqrt(np.mean(resid**2))),
        n_points=int(x.size),
    )


def fit_power_law(rows: Sequence[SweepRow]) -> PowerLawFit:
    """Fit ``P(coalesce) ~ a * N**p`` to sweep rows.

    Rows with a zero or unreliable estimate are rejected, not skipped.
    """
    for r in rows:
        if not r.estimate.reliable:
            raise ValueError(f"row N={r.n_bugs} is flagged unreliable")
        if r.estimate.p_hat <= 0:
            raise ValueError(f"row N={r.n_bugs} has zero coalesce probability")
    return fit_power_law_arrays([r.n_bugs for r in rows], [r.estimate.p_hat for r in rows])

"""State and time stepping for N bugs in cyclic pursuit on the unit circle.

Bug ``j`` moves at unit angular speed toward bug ``j + 1`` along the shorter
arc (bug ``N`` chases bug 1), and stays put when its target is coincident or
antipodal. Index-adjacent bugs that meet merge into a cluster that chases the
first bug outside it; other meetings are pass-throughs.

Bug ids are 1-based wherever they appear in public output; arrays are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernel

TWO_PI = 2.0 * math.pi
DEFAULT_TOL = 1e-9


def wrap_angle(x):
    """Wrap angles (scalar or array) into the principal branch ``[0, 2*pi)``."""
    y = np.mod(x, TWO_PI)
    y = np.where(y >= TWO_PI, 0.0, y)
    return float(y) if np.ndim(y) == 0 else y


def default_dt(n: int) -> float:
    return min(0.01, math.pi / (2 * n))


@dataclass(frozen=True)
class SimParams:
    """Integration settings.

    ``dt`` must satisfy ``dt < pi / N`` for the bug count it is used with;
    :meth:`check` enforces that, and :meth:`for_n` builds a checked instance.
    """

    dt: float = 0.01
    t_max: float = 100.0
    check_every: int = 10
    coincidence_tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not self.t_max > 0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.check_every < 1:
            raise ValueError("check_every must be >= 1")
        if not 0 < self.coincidence_tol < self.dt:
            raise ValueError("coincidence_tol must lie in (0, dt)")

    @classmethod
    def for_n(cls, n: int, dt: float | None = None, **kwargs) -> "SimParams":
        params = cls(dt=default_dt(n) if dt is None else dt, **kwargs)
        params.check(n)
        return params

    def check(self, n: int) -> None:
        if not self.dt < math.pi / n:
            raise ValueError(
                f"time step dt={self.dt} violates dt < pi/N = {math.pi / n:.6g} "
                f"for N={n}; larger steps let a bug pass several bugs per step"
            )

    @property
    def max_steps(self) -> int:
        return int(math.floor(self.t_max / self.dt + 1e-9))


@dataclass(frozen=True, eq=False)
class BugConfiguration:
    """Angles of ``N`` bugs plus their cluster partition.

    ``starts`` holds the sorted 0-based index of the first bug of every
    cluster; cluster ``c`` spans bugs ``starts[c] .. starts[c+1] - 1``
    (cyclically, so the last cluster may wrap past bug ``N`` to bug 1).
    Use :func:`from_angles` rather than the constructor.
    """

    angles: np.ndarray
    starts: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.angles.setflags(write=False)
        self.starts.setflags(write=False)

    @property
    def n_bugs(self) -> int:
        return self.angles.shape[0]

    @property
    def n_clusters(self) -> int:
        return self.starts.shape[0]

    @property
    def is_terminal(self) -> bool:
        return self.n_clusters == 1

    @property
    def cluster_angles(self) -> np.ndarray:
        return self.angles[self.starts]

    @property
    def cluster_sizes(self) -> np.ndarray:
        return np.diff(np.append(self.starts, self.starts[0] + self.n_bugs))

    @property
    def clusters(self) -> list[tuple[int, ...]]:
        """Clusters as tuples of 1-based bug ids in chase order."""
        n = self.n_bugs
        return [
            tuple((s + i) % n + 1 for i in range(size))
            for s, size in zip(self.starts.tolist(), self.cluster_sizes.tolist())
        ]

    def rotated(self, phi: float) -> "BugConfiguration":
        return BugConfiguration(wrap_angle(self.angles + phi), self.starts.copy())

    def __eq__(self, other):
        if not isinstance(other, BugConfiguration):
            return NotImplemented
        return np.array_equal(self.angles, other.angles) and np.array_equal(
            self.starts, other.starts
        )

    def __hash__(self):
        return hash((self.angles.tobytes(), self.starts.tobytes()))


def _expand(phi: np.ndarray, starts: np.ndarray, n: int) -> np.ndarray:
    sizes = np.diff(np.append(starts, starts[0] + n))
    return np.roll(np.repeat(phi, sizes), starts[0])


def _from_clusters(phi: np.ndarray, starts: np.ndarray, n: int) -> BugConfiguration:
    return BugConfiguration(_expand(phi, starts, n), np.asarray(starts, dtype=np.int64))


def from_angles(angles: Sequence[float], tol: float = DEFAULT_TOL) -> BugConfiguration:
    """Build a configuration from raw angles (radians, any branch).

    Index-adjacent bugs whose angles agree within ``tol`` start out merged,
    including the bug ``N`` / bug 1 pair.
    """
    theta = np.asarray(angles, dtype=float).ravel()
    if theta.size < 2:
        raise ValueError("need at least two bugs")
    if not np.all(np.isfinite(theta)):
        raise ValueError("angles must be finite")
    theta = wrap_angle(theta)
    phi, starts = _kernel.absorb_coincident(theta.copy(), np.arange(theta.size), tol)
    return _from_clusters(phi, starts, theta.size)


def direction(theta_j: float, theta_target: float, tol: float = DEFAULT_TOL) -> int:
    """Angular velocity sign (+1, -1 or 0) of a bug at ``theta_j`` chasing ``theta_target``."""
    return int(_kernel.direction(wrap_angle(theta_target - theta_j), tol))


def directions(config: BugConfiguration, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Per-bug directions; every member of a cluster shares the cluster's."""
    d = _kernel.cluster_directions(config.cluster_angles.copy(), tol)
    return _expand(d, config.starts, config.n_bugs)


def _cyclic_gaps(config: BugConfiguration) -> np.ndarray:
    th = config.angles
    return wrap_angle(np.roll(th, -1) - th)


def gaps(config: BugConfiguration) -> np.ndarray:
    """Gaps ``mod(theta[j+1] - theta[j], 2*pi)`` for ``j = 1 .. N-1``."""
    return _cyclic_gaps(config)[:-1]


def gap_rates(config: BugConfiguration, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Rate of change of each of the ``N - 1`` gaps.

    +2 when a gap in ``(pi, 2pi)`` is followed by one in ``(0, pi)``, -2 in the
    mirrored case, 0 otherwise. The last rate uses the wrap-around gap
    from bug ``N`` to bug 1 as its successor.
    """
    w = _cyclic_gaps(config)
    lo = (w > tol) & (w < math.pi - tol)
    hi = (w > math.pi + tol) & (w < TWO_PI - tol)
    nxt_lo, nxt_hi = np.roll(lo, -1), np.roll(hi, -1)
    rates = 2 * (nxt_lo & hi).astype(np.int64) - 2 * (nxt_hi & lo).astype(np.int64)
    return rates[:-1]


def step(config: BugConfiguration, params: SimParams) -> BugConfiguration:
    """Advance one forward-Euler step of size ``params.dt``.

    A bug (or cluster) that would reach the bug it chases within the step is
    placed on that bug's end-of-step angle and the two merge. When every
    remaining link closes in the same step, everything collapses at the
    earliest meeting point.
    """
    params.check(config.n_bugs)
    phi, starts, _ = _kernel.advance(
        config.cluster_angles.copy(),
        config.starts.copy(),
        params.dt,
        params.coincidence_tol,
    )
    return _from_clusters(phi, starts, config.n_bugs)

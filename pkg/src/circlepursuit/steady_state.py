"""Steady-state certificates and trajectory runners.

Two sufficient conditions decide a trajectory early:

* every bug moves the same way (all +1 or all -1): gaps are frozen, so the
  bugs cycle forever;
* every bug lies in a closed half-circle: the spread can only shrink, so the
  bugs coalesce.

A configuration whose clusters all sit at antipodal pairs never moves
(``groups``); it is checked first because it also passes the half-circle test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from . import _kernel
from .dynamics import (
    DEFAULT_TOL,
    TWO_PI,
    BugConfiguration,
    SimParams,
    _from_clusters,
    _cyclic_gaps,
    directions,
)

OutcomeKind = Literal["coalesce", "cycle", "groups", "undetermined"]

_KINDS = {
    _kernel.UNDETERMINED: "undetermined",
    _kernel.COALESCE: "coalesce",
    _kernel.CYCLE: "cycle",
    _kernel.GROUPS: "groups",
}


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    cycle_direction: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KINDS.values():
            raise ValueError(f"unknown outcome kind {self.kind!r}")
        if (self.kind == "cycle") != (self.cycle_direction is not None):
            raise ValueError("cycle_direction is set iff kind == 'cycle'")
        if self.cycle_direction not in (None, -1, 1):
            raise ValueError("cycle_direction must be -1 or +1")

    @classmethod
    def _from_code(cls, code: int, sign: int) -> "Outcome":
        kind = _KINDS[int(code)]
        return cls(kind, int(sign) if kind == "cycle" else None)


@dataclass(frozen=True)
class TrialResult:
    outcome: Outcome
    t_classified: float
    steps: int
    final: BugConfiguration
    winding: Optional[int] = None
    trajectory: Optional[list[tuple[float, BugConfiguration]]] = field(
        default=None, repr=False
    )


def all_same_direction(config: BugConfiguration, tol: float = DEFAULT_TOL) -> Optional[int]:
    """Return +1 or -1 if every bug moves that way, else ``None``."""
    d = directions(config, tol)
    if d[0] != 0 and np.all(d == d[0]):
        return int(d[0])
    return None


def within_open_semicircle(config: BugConfiguration, tol: float = DEFAULT_TOL) -> bool:
    """True when all bugs fit in a closed half-circle.

    Equivalent to some diameter through a bug having every other bug on one
    side; bugs on the diameter itself count as on that side.
    """
    return bool(_kernel.largest_gap(config.cluster_angles.copy()) >= math.pi - tol)


def is_groups(config: BugConfiguration, tol: float = DEFAULT_TOL) -> bool:
    """Stationary antipodal clusters: every gap is ~0 or ~pi and one is ~pi."""
    w = _cyclic_gaps(config)
    near_zero = (w < tol) | (w > TWO_PI - tol)
    near_pi = np.abs(w - math.pi) < tol
    return bool(np.all(near_zero | near_pi) and np.any(near_pi))


def classify_now(config: BugConfiguration, tol: float = DEFAULT_TOL) -> Outcome:
    code, sign = _kernel.classify(config.cluster_angles.copy(), tol)
    return Outcome._from_code(code, sign)


def _cluster_winding(phi: np.ndarray) -> int:
    total = np.sum(np.mod(np.roll(phi, -1) - phi, TWO_PI))
    return int(round(total / TWO_PI))


def winding_number(config: BugConfiguration, tol: float = DEFAULT_TOL) -> int:
    """How many times the index order 1..N wraps around the circle.

    Requires distinct positions for index-adjacent bugs.
    """
    w = _cyclic_gaps(config)
    if np.any((w < tol) | (w > TWO_PI - tol)):
        raise ValueError("winding number needs distinct positions for adjacent bugs")
    total = float(np.sum(w))
    k = int(round(total / TWO_PI))
    assert abs(total - k * TWO_PI) <= config.n_bugs * 1e-12 * TWO_PI
    return k


def _result(code, sign, steps, phi, starts, n, params, trajectory=None) -> TrialResult:
    outcome = Outcome._from_code(code, sign)
    final = _from_clusters(phi, starts, n)
    winding = _cluster_winding(phi) if outcome.kind == "cycle" else None
    return TrialResult(
        outcome=outcome,
        t_classified=steps * params.dt,
        steps=int(steps),
        final=final,
        winding=winding,
        trajectory=trajectory,
    )


def run_to_classification(
    initial: BugConfiguration,
    params: SimParams,
    stride: Optional[int] = None,
) -> TrialResult:
    """Step until a certificate holds, checking every ``params.check_every`` steps.

    With ``stride`` set, every ``stride``-th state (and the last one) is kept in
    ``result.trajectory``. Reaching ``params.t_max`` yields an ``undetermined``
    outcome.
    """
    params.check(initial.n_bugs)
    n, tol = initial.n_bugs, params.coincidence_tol
    phi = initial.cluster_angles.copy()
    starts = initial.starts.copy()
    if stride is None:
        code, sign, steps, phi, starts = _kernel.run_trial(
            phi, starts, params.dt, params.max_steps, params.check_every, tol
        )
        return _result(code, sign, steps, phi, starts, n, params)

    traj = [(0.0, initial)]
    steps = 0
    while True:
        if steps % params.check_every == 0 or steps == params.max_steps:
            code, sign = _kernel.classify(phi, tol)
            if code != _kernel.UNDETERMINED or steps >= params.max_steps:
                break
        phi, starts, _ = _kernel.advance(phi, starts, params.dt, tol)
        steps += 1
        if steps % stride == 0:
            traj.append((steps * params.dt, _from_clusters(phi, starts, n)))
    if traj[-1][0] != steps * params.dt:
        traj.append((steps * params.dt, _from_clusters(phi, starts, n)))
    return _result(code, sign, steps, phi, starts, n, params, traj)


def run_full(initial: BugConfiguration, params: SimParams, stride: int = 1) -> TrialResult:
    """Run past classification so the whole approach to the steady state is recorded.

    Coalescing runs continue until one cluster remains; cycling runs continue
    for one full revolution (``2*pi`` time units) after the cycle is certified.
    ``t_classified`` is still the time the certificate first held.
    """
    params.check(initial.n_bugs)
    n, tol, dt = initial.n_bugs, params.coincidence_tol, params.dt
    phi = initial.cluster_angles.copy()
    starts = initial.starts.copy()
    traj = [(0.0, initial)]
    steps = 0
    code, sign = _kernel.UNDETERMINED, 0
    t_class = None
    stop_at = params.max_steps
    while True:
        if t_class is None and (steps % params.check_every == 0 or steps == stop_at):
            code, sign = _kernel.classify(phi, tol)
            if code == _kernel.GROUPS:
                t_class = steps
                break
            if code == _kernel.CYCLE:
                t_class = steps
                stop_at = min(stop_at, steps + int(math.ceil(TWO_PI / dt)))
            elif code == _kernel.COALESCE:
                t_class = steps
        if code == _kernel.COALESCE and phi.shape[0] == 1:
            break
        if steps >= stop_at:
            break
        phi, starts, _ = _kernel.advance(phi, starts, dt, tol)
        steps += 1
        if steps % stride == 0:
            traj.append((steps * dt, _from_clusters(phi, starts, n)))
    if traj[-1][0] != steps * dt:
        traj.append((steps * dt, _from_clusters(phi, starts, n)))
    result = _result(code, sign, t_class if t_class is not None else steps,
                     phi, starts, n, params, traj)
    return result

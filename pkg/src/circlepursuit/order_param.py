"""Kuramoto order parameter ``r * exp(i*psi) = mean_j exp(i*theta_j)``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .dynamics import TWO_PI, BugConfiguration

R_FLOOR = 1e-12


@dataclass(frozen=True)
class OrderParameterSample:
    t: float
    r: float
    psi: float
    psi_defined: bool = True


def order_parameter(config: BugConfiguration, t: float = 0.0) -> OrderParameterSample:
    """Mean of the bugs' unit vectors; a merged cluster of k bugs counts k times.

    ``psi`` is wrapped to ``[0, 2*pi)``; below ``r = 1e-12`` it is reported as
    0 with ``psi_defined=False``.
    """
    z = np.mean(np.exp(1j * config.angles))
    r = min(float(abs(z)), 1.0)
    if r < R_FLOOR:
        return OrderParameterSample(t, r, 0.0, False)
    psi = math.atan2(z.imag, z.real) % TWO_PI
    if psi >= TWO_PI:
        psi = 0.0
    return OrderParameterSample(t, r, psi, True)


def track(trajectory: Iterable[tuple[float, BugConfiguration]]) -> list[OrderParameterSample]:
    samples = [order_parameter(cfg, t) for t, cfg in trajectory]
    if not samples:
        raise ValueError("empty trajectory")
    return samples


def psi_slope(samples: list[OrderParameterSample]) -> float:
    """Least-squares slope of the unwrapped phase angle against time."""
    pts = [(s.t, s.psi) for s in samples if s.psi_defined]
    if len(pts) < 2:
        raise ValueError("need at least two samples with a defined phase")
    t, psi = np.array(pts).T
    return float(np.polyfit(t, np.unwrap(psi), 1)[0])

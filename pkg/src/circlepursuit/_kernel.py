"""Compiled stepping and classification kernels.

Everything here works on the *cluster-level* state: ``phi`` holds one angle
per cluster and ``starts`` the (0-based, sorted) index of the first bug in
each cluster. Cluster ``c`` chases cluster ``(c + 1) % K``. Merged bugs share
an angle and a direction, so a cluster obeys the same law as a single bug.
"""

import numpy as np
from numba import njit

TWO_PI = 2.0 * np.pi

UNDETERMINED = 0
COALESCE = 1
CYCLE = 2
GROUPS = 3


@njit(cache=True)
def wrap(x):
    y = x % TWO_PI
    # -1e-17 % 2pi rounds to 2pi
    if y >= TWO_PI:
        y = 0.0
    return y


@njit(cache=True)
def direction(gap, tol):
    """Sign of the angular velocity for a wrapped gap to the chased bug."""
    if gap < tol or gap > TWO_PI - tol or abs(gap - np.pi) < tol:
        return 0
    if gap < np.pi:
        return 1
    return -1


@njit(cache=True)
def cluster_directions(phi, tol):
    k = phi.shape[0]
    d = np.zeros(k, dtype=np.int64)
    if k == 1:
        return d
    for c in range(k):
        d[c] = direction(wrap(phi[(c + 1) % k] - phi[c]), tol)
    return d


@njit(cache=True)
def absorb_coincident(phi, starts, tol):
    """Merge adjacent clusters closer than ``tol`` until none remain."""
    while phi.shape[0] > 1:
        k = phi.shape[0]
        hit = -1
        for c in range(k):
            g = wrap(phi[(c + 1) % k] - phi[c])
            if g < tol or g > TWO_PI - tol:
                hit = c
                break
        if hit < 0:
            break
        gone = (hit + 1) % k
        phi[hit] = phi[gone]
        keep = np.ones(k, dtype=np.bool_)
        keep[gone] = False
        phi = phi[keep]
        starts = starts[keep]
    return phi, starts


@njit(cache=True)
def advance(phi, starts, dt, tol):
    """One forward-Euler step with merge handling.

    Returns ``(phi, starts, n_merged)``. A chaser that would reach its chased
    neighbour inside the step is placed on the neighbour's end-of-step angle;
    the merged cluster keeps the chased cluster's direction, so its motion is
    unaffected by the capture.
    """
    k = phi.shape[0]
    if k == 1:
        return phi.copy(), starts.copy(), 0
    d = cluster_directions(phi, tol)
    new = np.empty(k)
    for c in range(k):
        new[c] = wrap(phi[c] + d[c] * dt)

    merge = np.zeros(k, dtype=np.bool_)
    tau = np.full(k, np.inf)
    n_merge = 0
    for c in range(k):
        nxt = (c + 1) % k
        if d[c] == 1:
            gap = wrap(phi[nxt] - phi[c])
            rate = 1 - d[nxt]
        elif d[c] == -1:
            gap = wrap(phi[c] - phi[nxt])
            rate = 1 + d[nxt]
        else:
            continue
        if rate > 0 and gap <= rate * dt:
            merge[c] = True
            tau[c] = gap / rate
            n_merge += 1

    if n_merge == 0:
        phi_out, starts_out = absorb_coincident(new, starts.copy(), tol)
        return phi_out, starts_out, 0

    if n_merge == k:
        # every link closes this step: collapse at the earliest meeting point
        first = np.argmin(tau)
        pos = wrap(phi[first] + d[first] * tau[first])
        return np.array([pos]), starts[:1].copy(), n_merge

    free = 0
    while merge[free]:
        free += 1
    for i in range(1, k):
        c = (free - i) % k
        if merge[c]:
            new[c] = new[(c + 1) % k]

    keep = np.ones(k, dtype=np.bool_)
    for c in range(k):
        if merge[c]:
            keep[(c + 1) % k] = False
    phi_out, starts_out = absorb_coincident(new[keep], starts[keep], tol)
    return phi_out, starts_out, n_merge


@njit(cache=True)
def largest_gap(phi):
    k = phi.shape[0]
    if k == 1:
        return TWO_PI
    s = np.sort(phi)
    best = s[0] + TWO_PI - s[k - 1]
    for i in range(k - 1):
        g = s[i + 1] - s[i]
        if g > best:
            best = g
    return best


@njit(cache=True)
def classify(phi, tol):
    """Return ``(code, sign)``; precedence groups > cycle > coalesce."""
    k = phi.shape[0]
    if k == 1:
        return COALESCE, 0
    groups = True
    for c in range(k):
        if abs(wrap(phi[(c + 1) % k] - phi[c]) - np.pi) >= tol:
            groups = False
            break
    if groups:
        return GROUPS, 0
    d = cluster_directions(phi, tol)
    if d[0] != 0:
        same = True
        for c in range(1, k):
            if d[c] != d[0]:
                same = False
                break
        if same:
            return CYCLE, d[0]
    if largest_gap(phi) >= np.pi - tol:
        return COALESCE, 0
    return UNDETERMINED, 0


@njit(cache=True)
def run_trial(phi, starts, dt, max_steps, check_every, tol):
    """Step until a certificate holds or ``max_steps`` is reached.

    Returns ``(code, sign, steps, phi, starts)``.
    """
    steps = 0
    while True:
        if steps % check_every == 0 or steps == max_steps:
            code, sign = classify(phi, tol)
            if code != UNDETERMINED:
                return code, sign, steps, phi, starts
        if steps >= max_steps:
            return UNDETERMINED, 0, steps, phi, starts
        phi, starts, _ = advance(phi, starts, dt, tol)
        steps += 1

"""Independent reference implementations used only by the tests.

``exact_run`` integrates the pursuit exactly: directions are constant between
merges, so it jumps from one meeting to the next. It shares no code with the
package.
"""

import math

TWO_PI = 2 * math.pi


def _dir(gap, tol=1e-12):
    gap %= TWO_PI
    if gap < tol or gap > TWO_PI - tol or abs(gap - math.pi) < tol:
        return 0
    return 1 if gap < math.pi else -1


def exact_run(angles, t_end, tol=1e-12):
    """Return (positions, sizes, t) of clusters at ``t_end``, or earlier once
    a single cluster remains."""
    pos = [a % TWO_PI for a in angles]
    size = [1] * len(pos)
    # merge initially coincident neighbours
    changed = True
    while changed and len(pos) > 1:
        changed = False
        for c in range(len(pos)):
            nxt = (c + 1) % len(pos)
            g = (pos[nxt] - pos[c]) % TWO_PI
            if g < tol or g > TWO_PI - tol:
                size[c] += size[nxt]
                del pos[nxt], size[nxt]
                changed = True
                break
    t = 0.0
    while t < t_end and len(pos) > 1:
        k = len(pos)
        d = [_dir(pos[(c + 1) % k] - pos[c]) for c in range(k)]
        best, who = math.inf, None
        for c in range(k):
            nxt = (c + 1) % k
            if d[c] == 1:
                g, rate = (pos[nxt] - pos[c]) % TWO_PI, 1 - d[nxt]
            elif d[c] == -1:
                g, rate = (pos[c] - pos[nxt]) % TWO_PI, 1 + d[nxt]
            else:
                continue
            if rate > 0 and g / rate < best:
                best, who = g / rate, c
        dt = min(best, t_end - t)
        pos = [(p + dc * dt) % TWO_PI for p, dc in zip(pos, d)]
        t += dt
        if dt == best:
            nxt = (who + 1) % k
            pos[who] = pos[nxt]
            size[who] += size[nxt]
            del pos[nxt], size[nxt]
    return pos, size, t


def exact_outcome(angles, t_end=1000.0):
    pos, size, _ = exact_run(angles, t_end)
    if len(pos) == 1:
        return "coalesce"
    k = len(pos)
    d = [_dir(pos[(c + 1) % k] - pos[c]) for c in range(k)]
    if d[0] != 0 and all(x == d[0] for x in d):
        return "cycle"
    return "other"


def largest_gap_bruteforce(angles):
    """Largest empty arc, by testing each bug as the clockwise end of the arc."""
    best = 0.0
    for a in angles:
        others = [((b - a) % TWO_PI) for b in angles]
        nonzero = [x for x in others if x > 0]
        nearest = min(nonzero) if nonzero else TWO_PI
        best = max(best, nearest)
    return best

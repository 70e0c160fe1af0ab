"""Follow a handful of bugs until their fate is decided."""
import math

import numpy as np

from circlepursuit import (
    SimParams,
    directions,
    from_angles,
    gaps,
    order_parameter,
    run_full,
    run_to_classification,
)

# Three bugs equally spaced all run counterclockwise and never meet.
cfg = from_angles([0, 2 * math.pi / 3, 4 * math.pi / 3])
print("directions:", directions(cfg))
res = run_to_classification(cfg, SimParams())
print(res.outcome, "winding", res.winding)

# Bug 3 is more than half a turn behind bug 1, so it turns clockwise.
cfg = from_angles([0.0, 0.5, 2.0])
print("directions:", directions(cfg), "gaps:", gaps(cfg))
res = run_full(cfg, SimParams(dt=0.01), stride=25)
for t, c in res.trajectory:
    print(f"t={t:5.2f}  angles={np.round(c.angles, 3)}  clusters={c.clusters}")

# Eight random bugs; the order parameter shows whether they bunch up.
rng = np.random.default_rng(3)
cfg = from_angles(np.r_[0.0, rng.uniform(0, 2 * math.pi, 7)])
res = run_full(cfg, SimParams(dt=0.01), stride=100)
print(res.outcome, "after", res.steps, "steps")
for t, c in res.trajectory[:: max(1, len(res.trajectory) // 6)]:
    s = order_parameter(c, t)
    print(f"t={t:6.2f}  r={s.r:.4f}  psi={s.psi:.4f}")

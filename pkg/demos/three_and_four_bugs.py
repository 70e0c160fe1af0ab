"""Case analysis for three and four bugs, checked against the simulator."""
import math

import numpy as np

from circlepursuit import DegenerateConfiguration, SimParams, classify_3, classify_4, from_angles, run_to_classification

PI = math.pi
for w in [(2.0, 2.0), (4.5, 4.5), (0.5, 1.0), (PI, 1.0), (PI, PI)]:
    print(f"gaps {w}: {classify_3(*w)}")

# Share of the gap square where three bugs cycle.
rng = np.random.default_rng(0)
w = rng.uniform(0, 2 * PI, (100_000, 2))
print("cycling share:", np.mean([classify_3(a, b).startswith("cycle") for a, b in w.tolist()]))

params = SimParams(dt=0.01)
agree = total = 0
for th in rng.uniform(0, 2 * PI, (2000, 3)):
    try:
        label = classify_4(*th)
    except DegenerateConfiguration:
        continue
    total += 1
    agree += label == run_to_classification(from_angles([0, *th]), params).outcome.kind
print(f"four-bug rules match the simulator in {agree}/{total} cases")

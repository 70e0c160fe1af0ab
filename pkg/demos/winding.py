"""Bugs ordered around the circle once or twice."""
import math

from circlepursuit import SimParams, from_angles, run_to_classification, winding_number

once = [2 * math.pi * j / 5 for j in range(5)]
twice = [(4 * math.pi * j / 5) % (2 * math.pi) for j in range(5)]
for name, angles in (("once", once), ("twice", twice)):
    cfg = from_angles(angles)
    res = run_to_classification(cfg, SimParams())
    print(f"{name}: winding {winding_number(cfg)}, outcome {res.outcome}")

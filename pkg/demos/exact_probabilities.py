"""Closed-form cycle probabilities next to Monte Carlo estimates."""
from circlepursuit import (
    SimParams,
    estimate_cycle_probability,
    exact_cycle_probability,
    four_bug_probability_by_quadrature,
)

for n in (2, 3, 4):
    exact = exact_cycle_probability(n)
    est = estimate_cycle_probability(n, 5000, SimParams(dt=0.01), seed=1)
    print(f"N={n}: exact {exact} ({float(exact):.4f}), "
          f"estimate {est.p_hat:.4f} [{est.ci95_low:.4f}, {est.ci95_high:.4f}]")

# The four-bug value also follows from integrating the case rules on a grid.
for res in (64, 128, 256):
    print(f"quadrature at {res}^3: {four_bug_probability_by_quadrature(res):.5f}")

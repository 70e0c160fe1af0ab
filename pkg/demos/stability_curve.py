"""Kick three bugs away from the stationary antipodal point and see how often they cycle."""
from circlepursuit import SimParams, default_alphas, stability_experiment, stability_probability_3

curve = stability_experiment(default_alphas(10), 4000, SimParams(dt=0.01), seed=5)
print(" alpha   estimate   95% interval        formula")
for alpha, est in curve:
    exact = stability_probability_3(alpha)
    mark = "" if est.covers(exact) else "  <- miss"
    print(f"{alpha:6.3f}   {est.p_hat:.4f}   [{est.ci95_low:.4f}, {est.ci95_high:.4f}]   {exact:.4f}{mark}")

"""How the chance of coalescing falls off with the number of bugs."""
from circlepursuit import fit_power_law, sweep

rows = sweep(range(2, 41, 2), 1000, seed=7)
fit = fit_power_law(rows)
for r in rows:
    e = r.estimate
    print(f"N={r.n_bugs:3d}  P(coalesce)={e.p_hat:.3f} +- {1.96 * e.std_err:.3f}  fit {fit(r.n_bugs):.3f}")
print(f"P(coalesce) ~ {fit.prefactor:.3f} * N^{fit.exponent:.3f}  (rms log residual {fit.rms_log_residual:.3f})")

import math

import numpy as np
import pytest

from circlepursuit import (
    ProbabilityEstimate,
    SimParams,
    SweepRow,
    default_alphas,
    estimate_cycle_probability,
    fit_power_law,
    fit_power_law_arrays,
    sample_initial,
    stability_experiment,
    stability_probability_3,
    sweep,
    trial_rng,
)
from circlepursuit.dynamics import TWO_PI

PI = math.pi


def test_sample_initial():
    cfgs = [sample_initial(6, trial_rng(0, 6, t)) for t in range(3000)]
    assert all(c.angles[0] == 0.0 for c in cfgs)
    rest = np.concatenate([c.angles[1:] for c in cfgs])
    assert np.all((rest >= 0) & (rest < TWO_PI))
    assert rest.mean() == pytest.approx(PI, abs=0.05)
    again = sample_initial(6, trial_rng(0, 6, 17))
    assert again == cfgs[17]
    assert sample_initial(6, trial_rng(1, 6, 17)) != cfgs[17]


def test_from_counts():
    est = ProbabilityEstimate.from_counts(25, 75)
    assert est.p_hat == 0.25 and est.m_trials == 100
    assert est.std_err == pytest.approx(math.sqrt(0.25 * 0.75 / 100))
    assert est.ci95_low == pytest.approx(0.25 - 1.96 * est.std_err)
    assert est.reliable and est.covers(0.25)
    flagged = ProbabilityEstimate.from_counts(25, 73, 2)
    assert flagged.m_trials == 100 and not flagged.reliable
    assert ProbabilityEstimate.from_counts(25, 74, 1).reliable
    comp = est.complement()
    assert comp.p_hat == 0.75 and comp.ci95_high == pytest.approx(1 - est.ci95_low)
    empty = ProbabilityEstimate.from_counts(0, 0, 3)
    assert math.isnan(empty.p_hat) and not empty.reliable


def test_interval_calibration_on_bernoulli_draws():
    rng = np.random.default_rng(2024)
    p, m = 0.3, 2000
    hits = rng.binomial(m, p, size=1000)
    covered = sum(ProbabilityEstimate.from_counts(h, m - h).covers(p) for h in hits)
    assert 930 <= covered <= 970


def test_two_bugs_never_cycle():
    est = estimate_cycle_probability(2, 2000, seed=1)
    assert est.p_hat == 0.0 and est.undetermined_count == 0


def test_three_and_four_bugs():
    p3 = estimate_cycle_probability(3, 10_000, SimParams(dt=0.01), seed=3)
    p4 = estimate_cycle_probability(4, 10_000, SimParams(dt=0.01), seed=4)
    assert abs(p3.p_hat - 0.25) < 0.013 and p3.reliable
    assert abs(p4.p_hat - 1 / 3) < 0.014 and p4.reliable


def test_worker_count_does_not_change_results():
    params = SimParams(dt=0.01)
    one = estimate_cycle_probability(7, 600, params, seed=5, workers=1)
    three = estimate_cycle_probability(7, 600, params, seed=5, workers=3)
    assert one == three


def test_validation():
    with pytest.raises(ValueError):
        estimate_cycle_probability(3, 0)
    with pytest.raises(ValueError, match="pi/N"):
        estimate_cycle_probability(100, 10, SimParams(dt=0.1))
    with pytest.raises(ValueError):
        stability_experiment([0.0], 10)
    with pytest.raises(ValueError):
        stability_experiment([PI + 0.1], 10)


def test_default_alphas():
    a = default_alphas(20)
    assert len(a) == 20 and a[-1] == PI and a[0] > 0
    np.testing.assert_allclose(np.diff(a), PI / 20)


@pytest.mark.parametrize("alpha", [PI / 4, PI])
def test_stability_matches_formula(alpha):
    (_, est), = stability_experiment([alpha], 100_000, SimParams(dt=0.01), seed=9)
    target = stability_probability_3(alpha)
    assert abs(est.p_hat - target) < 4 * est.std_err


def test_power_law_recovery():
    n = np.arange(4, 200, 4)
    fit = fit_power_law_arrays(n, 1.3 * n**-0.5)
    assert fit.prefactor == pytest.approx(1.3, abs=1e-10)
    assert fit.exponent == pytest.approx(-0.5, abs=1e-10)
    assert fit.rms_log_residual < 1e-12 and fit.n_points == len(n)
    assert fit(16) == pytest.approx(1.3 / 4)
    with pytest.raises(ValueError):
        fit_power_law_arrays([2, 4], [0.5, 0.3])


def _row(n, hits, misses, undetermined=0):
    return SweepRow(n, ProbabilityEstimate.from_counts(hits, misses, undetermined), 0, 0.01)


def test_fit_rejects_bad_rows():
    good = [_row(n, 50, 50) for n in (2, 4, 8)]
    assert fit_power_law(good).exponent == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError, match="zero"):
        fit_power_law(good + [_row(16, 0, 100)])
    with pytest.raises(ValueError, match="unreliable"):
        fit_power_law(good + [_row(16, 40, 50, 10)])


def test_sweep_rows():
    rows = sweep([2, 6], 300, seed=2)
    assert [r.n_bugs for r in rows] == [2, 6]
    assert rows[0].estimate.p_hat == 1.0
    assert rows[1].dt == SimParams.for_n(6).dt
    # each row matches the standalone estimate with the same seed
    alone = estimate_cycle_probability(6, 300, SimParams.for_n(6), seed=2)
    assert rows[1].estimate == alone.complement()

import numpy as np
import pytest

from core.exceptions import NonFiniteValueError
from exploration.meta_explorer import (
    MetaConfig,
    MetaState,
    compute_beta,
    compute_sigma,
    initial_meta_state,
    meta_step,
    update_averages,
)


# slow, unsaturated controller for hand-checked trajectories
GENTLE = MetaConfig(tau1=10.0, tau2=100.0, mu=1.0, f_intercept=4.0, f_slope=2.0, g_slope=2.0, g_mid=-0.87)


def state(r_bar: float, r_bbar: float) -> MetaState:
    return MetaState(r_bar=r_bar, r_bbar=r_bbar, beta=4.0, sigma=3.0)


class TestAverages:

    def test_short_average_by_hand(self):
        out = update_averages(state(0.0, 0.0), MetaConfig(tau1=10.0), 1.0)
        assert out.r_bar == pytest.approx(0.1)

    def test_long_average_uses_fresh_short_average(self):
        out = update_averages(state(2.0, 1.0), MetaConfig(tau2=100.0), 2.0)
        assert out.r_bar == 2.0
        assert out.r_bbar == pytest.approx(1.01)

    def test_constant_reward_converges(self):
        cfg, s = GENTLE, state(-4.0, 7.0)
        for _ in range(5000):
            s = update_averages(s, cfg, 3.0)
        assert s.r_bar == pytest.approx(3.0, abs=1e-6)
        assert s.r_bbar == pytest.approx(3.0, abs=1e-6)
        assert s.trend == pytest.approx(0.0, abs=1e-6)

    def test_rejects_non_finite_reward(self):
        with pytest.raises(NonFiniteValueError):
            update_averages(state(0.0, 0.0), MetaConfig(), float("nan"))


class TestBeta:

    def test_no_trend_gives_intercept(self):
        assert compute_beta(state(1.3, 1.3), MetaConfig(f_intercept=4.0)) == 4.0

    def test_affine_by_hand(self):
        cfg = MetaConfig(f_intercept=4.0, f_slope=2.0, mu=1.0)
        assert compute_beta(state(0.5, 1.0), cfg) == pytest.approx(3.0)

    def test_floor(self):
        cfg = MetaConfig(f_min=0.01)
        assert compute_beta(state(-1e9, 0.0), cfg) == 0.01


class TestSigma:

    def test_midpoint_is_half_of_max(self):
        cfg = MetaConfig(g_max=20.0, g_mid=-0.87, mu=1.0)
        assert compute_sigma(state(-0.87, 0.0), cfg) == pytest.approx(10.0)

    def test_improving_performance_narrows(self):
        sigma = compute_sigma(state(1e6, 0.0), MetaConfig())
        assert 0.0 < sigma < 1e-3

    def test_collapsing_performance_widens(self):
        sigma = compute_sigma(state(-1e6, 0.0), MetaConfig())
        assert 19.99 < sigma < 20.0

    def test_default_start_is_wide(self):
        start = initial_meta_state(MetaConfig())
        assert start.beta == 6.0
        assert start.sigma == pytest.approx(20.0 / (1.0 + np.exp(-3.5)))
        assert start.sigma > 19.0

    def test_zero_reward_stream_keeps_sigma_wide(self):
        # a run whose engagement has died returns r = 0 forever
        cfg = MetaConfig()
        s = initial_meta_state(cfg)
        for _ in range(2000):
            s = meta_step(s, cfg, 0.0)
        assert s.trend == 0.0
        assert s.sigma == initial_meta_state(cfg).sigma
        assert s.sigma > 19.0

    def test_stalled_run_widens_after_a_collapse(self):
        cfg = MetaConfig()
        s = initial_meta_state(cfg)
        for _ in range(3000):
            s = meta_step(s, cfg, 3.0)
        for _ in range(3000):
            s = meta_step(s, cfg, 0.0)
        assert s.sigma > 15.0


class TestMetaStep:

    def test_reward_drop_widens_and_softens(self):
        cfg, s = GENTLE, initial_meta_state(GENTLE)
        for _ in range(3000):
            s = meta_step(s, cfg, 3.0)
        betas, sigmas = [s.beta], [s.sigma]
        for _ in range(int(cfg.tau1)):
            s = meta_step(s, cfg, 0.0)
            betas.append(s.beta)
            sigmas.append(s.sigma)
        assert np.all(np.diff(sigmas) > 0)
        assert np.all(np.diff(betas) < 0)

    def test_reward_rise_sharpens(self):
        cfg, s = MetaConfig(), initial_meta_state(MetaConfig())
        before = s
        s = meta_step(s, cfg, 5.0)
        assert s.beta > before.beta
        assert s.sigma < before.sigma

    def test_step_recomputes_from_updated_averages(self):
        cfg = MetaConfig()
        s = meta_step(initial_meta_state(cfg), cfg, 2.0)
        assert s.beta == compute_beta(s, cfg)
        assert s.sigma == compute_sigma(s, cfg)


@pytest.mark.parametrize("kwargs", [
    {"tau1": 1.0},
    {"tau1": 50.0, "tau2": 20.0},
    {"mu": 0.0},
    {"f_intercept": 0.0},
    {"f_min": 0.0},
    {"g_max": 25.0},
    {"g_slope": -1.0},
])
def test_config_bounds(kwargs):
    with pytest.raises(ValueError):
        MetaConfig(**kwargs)

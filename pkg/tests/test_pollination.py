import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from imfpa.model import Pollen, SystemModel, parse_model, random_test
from imfpa.pollination import (
    LevyConfig,
    discretize,
    global_pollinate,
    levy_step,
    local_pollinate,
    mantegna_sigma,
)

SIGMA_U_15 = 0.696574502557696792721522003436  # mpmath, 30 digits


def sigma_oracle(beta):
    b = mpmath.mpf(beta)
    num = mpmath.gamma(1 + b) * mpmath.sin(mpmath.pi * b / 2)
    den = mpmath.gamma((1 + b) / 2) * b * 2 ** ((b - 1) / 2)
    return float((num / den) ** (1 / b))


def test_sigma_u_matches_gamma_oracle():
    assert mantegna_sigma(1.5) == pytest.approx(SIGMA_U_15, abs=1e-9)
    for beta in (1.1, 1.3, 1.7, 1.9, 2.0):
        assert mantegna_sigma(beta) == pytest.approx(sigma_oracle(beta), rel=1e-9, abs=1e-15)


@pytest.mark.parametrize("beta, scale", [(1.0, 0.01), (2.1, 0.01), (1.5, 0.0), (1.5, -1.0)])
def test_levy_config_validation(beta, scale):
    with pytest.raises(ValueError):
        LevyConfig(beta, scale)


def test_levy_step_is_deterministic():
    a = levy_step(LevyConfig(), 64, np.random.default_rng(9))
    b = levy_step(LevyConfig(), 64, np.random.default_rng(9))
    assert a.tobytes() == b.tobytes()
    assert levy_step(LevyConfig(), (3, 5), np.random.default_rng(0)).shape == (3, 5)


@pytest.mark.parametrize("beta", [1.5, 2.0])
def test_levy_step_is_symmetric(beta):
    x = levy_step(LevyConfig(beta=beta), 10**6, np.random.default_rng(31))
    n = len(x)
    assert abs(x.mean()) < 3 * x.std() / math.sqrt(n)
    assert abs((x > 0).mean() - 0.5) < 3 * math.sqrt(0.25 / n)


def test_levy_step_is_heavy_tailed():
    cfg = LevyConfig()
    x = np.abs(levy_step(cfg, 10**6, np.random.default_rng(5)))
    # normal fitted to the bulk of the sample (robust scale from the median of |x|)
    sigma = np.median(x) / stats.norm.ppf(0.75)
    x0 = 5 * cfg.scale
    emp = (x > x0).mean()
    assert emp > 100 * 2 * stats.norm.sf(x0 / sigma)
    # power-law decay: P(|X| > 4 x0) / P(|X| > x0) close to 4**-beta
    slope = math.log((x > 4 * x0).mean() / emp) / math.log(4)
    assert -1.8 < slope < -1.2


def test_discretize_examples():
    m3 = parse_model("3^3 t=2")
    assert discretize([0.0, 1.99, 2.5], m3).values == (0, 1, 2)
    m = SystemModel((3, 3), 2)
    assert discretize([-0.3, 3.0], m).values == (0, 2)


def test_discretize_is_surjective_with_equal_cells():
    m = SystemModel((4, 4), 2)
    xs = np.linspace(0, 4, 400, endpoint=False)
    cells = [discretize([x, 0.0], m)[0] for x in xs]
    assert np.bincount(cells).tolist() == [100, 100, 100, 100]


def _pollen(model, pos):
    pos = np.asarray(pos, dtype=float)
    return Pollen(pos, discretize(pos, model))


def test_global_fixed_point(s1, rng):
    x = random_test(s1, rng)
    out = global_pollinate(x, x, LevyConfig(), s1, rng)
    assert np.array_equal(out.position, x.position)


def test_global_zero_step(s1, rng):
    x, g = random_test(s1, rng), random_test(s1, rng)
    out = global_pollinate(x, g, LevyConfig(), s1, rng, step=np.zeros(4))
    assert np.array_equal(out.position, x.position)
    assert out.test == x.test


def test_global_moves_toward_gbest(s1):
    x = _pollen(s1, [0.5, 0.5, 0.5, 0.5])
    g = _pollen(s1, [2.5, 0.5, 1.5, 0.0])
    out = global_pollinate(x, g, LevyConfig(), s1, None, step=np.full(4, 0.5))
    assert out.position.tolist() == [1.5, 0.5, 1.0, 0.25]


def test_local_identical_partners(s1, rng):
    x, y = random_test(s1, rng), random_test(s1, rng)
    out = local_pollinate(x, y, y, s1, rng)
    assert np.array_equal(out.position, x.position)


def test_local_zero_rho(s1, rng):
    x, y, z = (random_test(s1, rng) for _ in range(3))
    assert np.array_equal(local_pollinate(x, y, z, s1, rng, rho=0.0).position, x.position)


def test_local_uses_one_scalar_rho(s1):
    x = _pollen(s1, [1.0, 1.0, 1.0, 1.0])
    y = _pollen(s1, [2.0, 1.5, 0.0, 1.0])
    z = _pollen(s1, [0.0, 1.0, 1.0, 1.0])
    out = local_pollinate(x, y, z, s1, np.random.default_rng(3))
    rho = np.random.default_rng(3).random()
    assert out.position == pytest.approx([1 + 2 * rho, 1 + 0.5 * rho, 1 - rho, 1.0])


def test_clamping_keeps_the_open_upper_bound(s1):
    x = _pollen(s1, [2.9, 0.1, 1.0, 1.0])
    g = _pollen(s1, [0.0, 2.9, 1.0, 1.0])
    out = global_pollinate(x, g, LevyConfig(), s1, None, step=np.array([50.0, 50.0, 0.0, 0.0]))
    assert out.position[0] == 0.0
    assert 2.9 < out.position[1] < 3.0
    assert out.test.values[:2] == (0, 2)


@given(st.integers(0, 2**32), st.lists(st.integers(2, 7), min_size=2, max_size=8))
@settings(max_examples=300)
def test_operators_stay_in_box_and_are_pure(seed, cards):
    m = SystemModel(tuple(cards), 2)
    rng = np.random.default_rng(seed)
    x, g, y = (random_test(m, rng) for _ in range(3))
    snapshot = [p.position.copy() for p in (x, g, y)]
    hi = np.asarray(cards)
    for out in (
        global_pollinate(x, g, LevyConfig(scale=rng.uniform(0.01, 100)), m, rng),
        local_pollinate(x, g, y, m, rng),
    ):
        assert np.all(out.position >= 0) and np.all(out.position < hi)
        m.validate_test(out.test.values)
        assert out.test == discretize(out.position, m)
        assert out.position is not x.position
    for p, before in zip((x, g, y), snapshot):
        assert np.array_equal(p.position, before)


def test_global_in_box_over_many_cases():
    m = parse_model("3^2 5^2 2^1 t=2")
    rng = np.random.default_rng(77)
    hi = np.asarray(m.cardinalities)
    cfg = LevyConfig(scale=1.0)
    for _ in range(10**4):
        out = global_pollinate(random_test(m, rng), random_test(m, rng), cfg, m, rng)
        assert np.all(out.position >= 0) and np.all(out.position < hi)

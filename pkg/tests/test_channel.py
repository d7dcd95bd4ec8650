import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import rmts


def test_modulate_maps_bits_to_signs():
    out = rmts.modulate(np.array([0, 1, 0], dtype=np.uint8))
    assert out.tolist() == [1.0, -1.0, 1.0]


def test_modulate_all_zero_is_all_ones():
    assert rmts.modulate(np.zeros(8, dtype=np.uint8)).tolist() == [1.0] * 8


@pytest.mark.parametrize(
    "ebn0,rate,expected",
    [(0.0, 0.5, 1.0), (10.0, 0.5, 0.1), (0.0, 1.0, 0.5)],
)
def test_ebn0_to_sigma2(ebn0, rate, expected):
    assert rmts.ebn0_to_sigma2(ebn0, rate) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("rate", [0.0, -0.5, 1.5])
def test_ebn0_rejects_bad_rate(rate):
    with pytest.raises(ValueError):
        rmts.ebn0_to_sigma2(0.0, rate)


def test_channel_params_from_ebn0():
    p = rmts.ChannelParams.from_ebn0(0.0, 0.5)
    assert p.sigma2 == pytest.approx(1.0)
    assert p.ebn0_db == 0.0 and p.rate == 0.5


@pytest.mark.parametrize("y,sigma2,expected", [(1.5, 1.0, 3.0), (0.0, 1.0, 0.0), (-0.5, 0.5, -2.0)])
def test_llr_init_values(y, sigma2, expected):
    assert rmts.llr_init(np.array([y]), sigma2)[0] == pytest.approx(expected, rel=1e-12)


def test_llr_init_rejects_bad_sigma2():
    with pytest.raises(ValueError):
        rmts.llr_init(np.ones(4), 0.0)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-50, 50), min_size=1, max_size=16), st.floats(0.01, 10.0))
def test_llr_init_is_exact_scaling(y, sigma2):
    y = np.array(y)
    out = rmts.llr_init(y, sigma2)
    assert np.array_equal(out, (2.0 / sigma2) * y)
    assert np.all(np.sign(out) == np.sign(y))


def test_add_noise_rejects_bad_sigma2():
    rng = rmts.frame_rng(0, 0)
    with pytest.raises(ValueError):
        rmts.add_noise(np.ones(4), -1.0, rng)


def test_noise_is_deterministic_per_seed_and_frame():
    s = np.ones(64)
    a = rmts.add_noise(s, 0.5, rmts.frame_rng(42, 7))
    b = rmts.add_noise(s, 0.5, rmts.frame_rng(42, 7))
    c = rmts.add_noise(s, 0.5, rmts.frame_rng(42, 8))
    d = rmts.add_noise(s, 0.5, rmts.frame_rng(43, 7))
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


def test_frame_rng_rejects_negative_frame():
    with pytest.raises(ValueError):
        rmts.frame_rng(0, -1)


def test_noise_sample_mean_law_of_large_numbers():
    sigma2 = 4.0
    n = 10**6
    z = rmts.add_noise(np.zeros(n), sigma2, rmts.frame_rng(1, 0))
    bound = 5.0 * np.sqrt(sigma2) / 10**3
    assert abs(z.mean()) < bound
    assert z.var() == pytest.approx(sigma2, rel=0.02)

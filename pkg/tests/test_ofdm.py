import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leocov.ofdm import (link_attenuation, power_split, sinc, sinc_inverse,
                         sinr, sinr_linear)
from leocov.scenario import load_preset, with_overrides


class TestSinc:
    def test_zero(self):
        assert sinc(0.0) == 1.0

    def test_half(self):
        assert sinc(0.5) == pytest.approx(2 / math.pi, rel=1e-12)

    def test_first_null(self):
        assert sinc(1.0) == pytest.approx(0.0, abs=1e-15)

    def test_even(self):
        xs = np.linspace(0, 3, 50)
        assert np.allclose(sinc(xs), sinc(-xs), rtol=0, atol=0)


class TestSincInverse:
    def test_endpoints(self):
        assert sinc_inverse(1.0) == 0.0
        assert sinc_inverse(0.0) == 1.0

    def test_analytic_point(self):
        assert sinc_inverse(2 / math.pi) == pytest.approx(0.5, abs=1e-10)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            sinc_inverse(-0.01)
        with pytest.raises(ValueError):
            sinc_inverse(1.01)

    def test_round_trip_grid(self):
        ys = np.linspace(0.0, 1.0, 1000)
        for y in ys:
            assert abs(float(sinc(sinc_inverse(float(y)))) - y) <= 1e-10


class TestLinkAttenuation:
    def test_constructed_identity(self):
        # with unity gains eta reduces to lambda / (4 pi D)
        radio = with_overrides(load_preset("S"), sat_max_gain_dbi=0.0,
                               terminal_gain_dbi=0.0, rain_gain_db=0.0).radio
        assert link_attenuation(0.0, radio, 1.0) == pytest.approx(
            radio.wavelength_m / (4 * math.pi), rel=1e-12)
        assert link_attenuation(0.0, radio, radio.wavelength_m / (4 * math.pi)) \
            == pytest.approx(1.0, rel=1e-12)

    def test_strictly_decreasing(self):
        s = load_preset("S")
        xs = np.linspace(0, 500e3, 100)
        eta = link_attenuation(xs, s.radio, 600e3)
        assert np.all(np.diff(eta) < 0)

    def test_pinned_s_band_nadir(self):
        s = load_preset("S")
        assert link_attenuation(0.0, s.radio, 600e3) == pytest.approx(
            1.1672922251e-7, rel=1e-9)


class TestPowerSplit:
    def test_no_offset(self):
        useful, ici = power_split(0.0, 1e-4, 2.0)
        assert useful == 4.0
        assert ici == 0.0

    def test_null_offset(self):
        useful, ici = power_split(1e4, 1e-4, 2.0)
        assert useful == pytest.approx(0.0, abs=1e-25)
        assert ici == pytest.approx(4.0, rel=1e-12)

    def test_half_spacing(self):
        useful, _ = power_split(0.5e4, 1e-4, 1.0)
        assert useful == pytest.approx((2 / math.pi) ** 2, rel=1e-12)

    @given(st.floats(-5e4, 5e4), st.floats(1e-6, 1e-3), st.floats(1e-9, 1.0))
    @settings(max_examples=200)
    def test_conservation(self, offset, duration, eta):
        useful, ici = power_split(offset, duration, eta)
        assert useful + ici == pytest.approx(eta ** 2, rel=1e-12)

    def test_conservation_bulk(self):
        rng = np.random.default_rng(5)
        offsets = rng.uniform(-1e5, 1e5, 1000)
        durations = rng.uniform(1e-6, 1e-3, 1000)
        etas = rng.uniform(1e-8, 1.0, 1000)
        useful, ici = power_split(offsets, durations, etas)
        assert np.allclose(useful + ici, etas ** 2, rtol=1e-12, atol=0)


class TestSinr:
    def test_no_offset_is_pure_snr(self):
        s = load_preset("S")
        x = 30e3
        expected = s.radio.aggregate_gain / (
            (x ** 2 + 600e3 ** 2) * s.radio.noise_power_w)
        assert sinr(x, 0.0, s).sinr_linear == pytest.approx(expected, rel=1e-12)

    def test_null_offset_zero_sinr(self):
        s = load_preset("S")
        offset = s.radio.subcarrier_spacing_hz  # offset * T = 1
        assert sinr(30e3, offset, s).sinr_linear == pytest.approx(0.0, abs=1e-28)

    def test_pinned_cell_edge(self):
        s = load_preset("S")
        # at the default overhead geometry the residual offset is zero
        assert sinr(s.cell.cell_radius_m, 0.0, s).sinr_linear \
            == pytest.approx(3.8147050177, rel=1e-9)

    def test_even_in_offset(self):
        s = load_preset("S")
        for offset in (1e3, 5e3, 1.2e4):
            assert sinr(40e3, offset, s).sinr_linear == pytest.approx(
                sinr(40e3, -offset, s).sinr_linear, rel=1e-15)

    def test_matches_power_split_form(self):
        # ratio form equals P_tx * useful / (P_tx * ici + noise)
        s = load_preset("S")
        rng = np.random.default_rng(11)
        for _ in range(300):
            x = rng.uniform(0, 300e3)
            offset = rng.uniform(-2e4, 2e4)
            eta = link_attenuation(x, s.radio, s.orbit.altitude_m)
            useful, ici = power_split(offset, s.radio.symbol_duration_s, eta)
            expected = (s.radio.tx_power_w * useful
                        / (s.radio.tx_power_w * ici + s.radio.noise_power_w))
            assert sinr_linear(x, offset, s) == pytest.approx(expected, rel=1e-12)

    def test_vectorized(self):
        s = load_preset("S")
        xs = np.array([0.0, 20e3, 40e3])
        out = sinr_linear(xs, np.zeros(3), s)
        assert out.shape == (3,)
        assert np.all(np.diff(out) < 0)

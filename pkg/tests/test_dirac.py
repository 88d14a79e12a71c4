import csv
import io
import math

import numpy as np
import pytest

from wavenet.core import FieldState, LineParameters, wavefunction_from_fields
from wavenet.dirac import (
    EvolutionConfig,
    discrete_energy,
    energy_csv,
    energy_samples,
    evolve,
    initialize_plane_wave,
    measure_dispersion,
    random_fields,
    step,
)
from wavenet.errors import MeasurementTooShort


def leapfrog_dispersion(config, mode):
    """Closed-form frequency of the staggered scheme: sin(w dt/2) = nu sin(k dx/2)."""
    k = config.wavenumber(mode)
    return 2 / config.dt * math.asin(config.courant * math.sin(k * config.dx / 2))


class TestConfig:
    def test_cfl_violation(self):
        with pytest.raises(ValueError):
            EvolutionConfig(16, 0.1, 0.11, 10, LineParameters(1.0, 1.0))

    def test_cfl_limit_uses_lc(self):
        # speed 1/2 lets dt go up to 2*dx
        EvolutionConfig(16, 0.1, 0.2, 10, LineParameters(2.0, 2.0))

    @pytest.mark.parametrize("kwargs", [dict(num_cells=4), dict(steps=0), dict(dx=-1.0)])
    def test_bad_values(self, kwargs):
        base = dict(num_cells=16, dx=0.1, dt=0.05, steps=10, line=LineParameters(1.0, 1.0))
        base.update(kwargs)
        with pytest.raises(ValueError):
            EvolutionConfig(**base)


class TestPlaneWave:
    def test_amplitudes(self):
        line = LineParameters(1.0, 9.0)  # Z = 3
        cfg = EvolutionConfig.from_cfl(64, 10, line)
        s = initialize_plane_wave(cfg, 1)
        assert s.voltage.max() == pytest.approx(1.0)
        np.testing.assert_allclose(s.current * 3, np.cos(2 * math.pi * (np.arange(64) + 0.5) / 64))

    @pytest.mark.parametrize("mode", [0, 32, 40])
    def test_mode_range(self, mode):
        with pytest.raises(ValueError):
            initialize_plane_wave(EvolutionConfig.from_cfl(64, 10), mode)

    def test_initial_norm_identity(self):
        line = LineParameters(0.4, 1.7)
        s = initialize_plane_wave(EvolutionConfig.from_cfl(128, 1, line), 5)
        norm = np.sum(np.abs(wavefunction_from_fields(s)) ** 2)
        assert norm == pytest.approx(2 / 0.4 * s.total_energy, rel=1e-12)


class TestStep:
    def test_constant_fields_unchanged(self):
        cfg = EvolutionConfig.from_cfl(16, 1)
        s = FieldState(cfg.dx, np.full(16, 2.0), np.full(16, -0.5), cfg.line)
        out = step(s, cfg)
        np.testing.assert_array_equal(out.voltage, s.voltage)
        np.testing.assert_array_equal(out.current, s.current)

    def test_travelling_wave_against_continuum(self):
        cfg = EvolutionConfig.from_cfl(512, 700)
        s = initialize_plane_wave(cfg, 2)
        *_, (n, final) = evolve(s, cfg, every=700)
        t = n * cfg.dt
        k = cfg.wavenumber(2)
        x = np.arange(512) * cfg.dx
        # exact solution of the PDE; the scheme lags by a phase of about k*t*(k*dx)^2/24
        bound = 2 * k * t * (k * cfg.dx) ** 2 / 24
        np.testing.assert_allclose(final.voltage, np.cos(k * x - k * t), atol=bound)
        np.testing.assert_allclose(final.current, np.cos(k * (x + cfg.dx / 2) - k * t), atol=bound)

    def test_evolve_sampling(self):
        cfg = EvolutionConfig.from_cfl(32, 25)
        steps = [n for n, _ in evolve(initialize_plane_wave(cfg, 1), cfg, every=10)]
        assert steps == [0, 10, 20, 25]


class TestEnergy:
    def test_discrete_energy_conserved_random_fields(self):
        cfg = EvolutionConfig.from_cfl(256, 10_000, LineParameters(0.8, 1.9), cfl=0.5)
        samples = energy_samples(random_fields(cfg, seed=3), cfg, every=500)
        e0 = samples[0].discrete
        assert max(abs(s.discrete / e0 - 1) for s in samples) < 1e-6

    def test_field_energy_constant_for_travelling_mode(self):
        cfg = EvolutionConfig.from_cfl(256, 2000)
        samples = energy_samples(initialize_plane_wave(cfg, 4), cfg, every=100)
        u0 = samples[0].total
        assert max(abs(s.total / u0 - 1) for s in samples) < 1e-6

    def test_norm_identity_every_sample(self):
        line = LineParameters(0.3, 2.0)
        cfg = EvolutionConfig.from_cfl(128, 300, line)
        for s in energy_samples(random_fields(cfg, seed=1), cfg, every=7):
            assert s.norm == pytest.approx(2 / 0.3 * s.total, rel=1e-12)

    def test_discrete_energy_formula(self):
        # equals (C/2)|V|^2 + (L/2) <I^-, I^+> built from explicit half steps
        cfg = EvolutionConfig.from_cfl(64, 1, LineParameters(1.3, 0.7))
        s = random_fields(cfg, seed=5)
        dv = np.roll(s.voltage, -1) - s.voltage
        kick = cfg.dt / (2 * cfg.line.inductance_per_length * cfg.dx)
        i_minus, i_plus = s.current + kick * dv, s.current - kick * dv
        expected = 0.5 * 1.3 * s.voltage @ s.voltage + 0.5 * 0.7 * i_minus @ i_plus
        assert discrete_energy(s, cfg) == pytest.approx(expected, rel=1e-13)

    def test_csv(self):
        cfg = EvolutionConfig.from_cfl(32, 4)
        text = energy_csv(energy_samples(initialize_plane_wave(cfg, 1), cfg, every=2))
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == ["step", "time", "U_E", "U_M", "U_T", "norm"]
        assert [r[0] for r in rows[1:]] == ["0", "2", "4"]


class TestDispersion:
    def test_matches_scheme_dispersion(self):
        cfg = EvolutionConfig.from_cfl(256, 512)
        r = measure_dispersion(cfg, 3)
        assert r.omega_measured == pytest.approx(leapfrog_dispersion(cfg, 3), rel=1e-9)

    def test_fine_grid_accuracy(self):
        cfg = EvolutionConfig.from_cfl(1024, 2048)
        assert measure_dispersion(cfg, 1).relative_error < 1e-3

    def test_second_order_convergence(self):
        errors = [measure_dispersion(EvolutionConfig.from_cfl(n, 2 * n), 1).relative_error for n in (256, 512, 1024)]
        ratios = [errors[i] / errors[i + 1] for i in range(2)]
        assert all(3.5 < r < 4.5 for r in ratios)

    def test_lc_scaling(self):
        base = measure_dispersion(EvolutionConfig.from_cfl(128, 400, LineParameters(1.0, 1.0)), 1)
        slow = measure_dispersion(EvolutionConfig.from_cfl(128, 400, LineParameters(2.0, 2.0)), 1)
        # same Courant number, same grid: only the time scale changes
        assert slow.omega_measured == pytest.approx(base.omega_measured / 2, rel=1e-12)

    def test_left_moving_sign(self):
        cfg = EvolutionConfig.from_cfl(128, 400)
        right = measure_dispersion(cfg, 2, +1)
        left = measure_dispersion(cfg, 2, -1)
        assert right.omega_measured > 0 > left.omega_measured
        assert left.omega_measured == pytest.approx(-right.omega_measured, rel=1e-9)

    def test_too_short(self):
        cfg = EvolutionConfig.from_cfl(1024, 10)
        with pytest.raises(MeasurementTooShort):
            measure_dispersion(cfg, 1)

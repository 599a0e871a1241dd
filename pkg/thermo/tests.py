import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given
from hypothesis.strategies import floats
from scipy.integrate import quad

from coherent.states import OscillatorConfig, occupation_from_amplitude
from coherent_thermo.exceptions import DomainError, SingularityError
from constants.units import ConstantsSet
from .relations import (
    OccupationModel, ThermoPoint, energy_from_occupation_slope, entropy_analytic, entropy_numeric,
    free_energy,
)
from .temperature import (
    area_law, bloch_distribution, bloch_temperature, bloch_width, closed_form_ode_residual,
    coherent_thermo_point, frequency_per_occupation, occupation_slope, self_consistency_residual,
    temperature_closed_form, temperature_from_alpha, temperature_ode_solve, zero_point,
)


def natural_oscillator(m=1.0, omega=1.0):
    return OscillatorConfig(m=m, omega=omega, cs=ConstantsSet.natural())


class FreeEnergyTests(SimpleTestCase):

    def setUp(self):
        self.cs = ConstantsSet.natural()

    def test_values(self):
        self.assertEqual(free_energy(7.0, 0.0, self.cs), 0.0)
        self.assertEqual(free_energy(1.0, 3.0, self.cs), -3.0)
        self.assertEqual(free_energy(2.0, 3.0, self.cs), 2.0 * free_energy(1.0, 3.0, self.cs))

    def test_rejects_nonpositive_temperature(self):
        with self.assertRaises(DomainError):
            free_energy(0.0, 1.0, self.cs)


class EntropyTests(SimpleTestCase):

    def setUp(self):
        self.cs = ConstantsSet.si()

    def test_constant_occupation(self):
        S = entropy_numeric(OccupationModel.constant(4.0), 300.0, self.cs)
        self.assertTrue(math.isclose(S, 4.0 * self.cs.k_B, rel_tol=1e-8))

    def test_linear_model_gives_twice_the_occupation(self):
        gamma, T = 0.25, 40.0
        S = entropy_numeric(OccupationModel.linear(gamma), T, self.cs)
        self.assertTrue(math.isclose(S, 2.0 * self.cs.k_B * gamma * T, rel_tol=1e-8))
        self.assertTrue(math.isclose(S, entropy_analytic(gamma * T, gamma * T, self.cs), rel_tol=1e-8))

    def test_smooth_nonlinear_model_agrees_with_analytic(self):
        model = OccupationModel(nbar_of_T=lambda T: T ** 1.5, description='power',
                                dnbar_dT=lambda T: 1.5 * T ** 0.5)
        T = 3.0
        analytic = entropy_analytic(model.nbar_of_T(T), T * model.dnbar_dT(T), self.cs)
        self.assertTrue(math.isclose(entropy_numeric(model, T, self.cs), analytic, rel_tol=1e-6))

    def test_domain_edge(self):
        with self.assertRaises(DomainError):
            entropy_numeric(OccupationModel.linear(1.0), 1e-13, self.cs)
        bounded = OccupationModel(nbar_of_T=lambda T: T, description='bounded', domain=(0.0, 1.0))
        with self.assertRaises(DomainError):
            entropy_numeric(bounded, 1.0 - 1e-9, self.cs)

    def test_analytic_values(self):
        cs = ConstantsSet.natural()
        self.assertEqual(entropy_analytic(0.0, 0.0, cs), 0.0)
        self.assertEqual(entropy_analytic(5.0, 5.0, cs), 10.0)
        with self.assertRaises(DomainError):
            entropy_analytic(-1.0, 0.0, cs)

    def test_linear_through(self):
        model = OccupationModel.linear_through(6.0, 3.0)
        self.assertTrue(model.is_linear)
        self.assertEqual(model.nbar_of_T(1.5), 3.0)


class SelfConsistencyTests(SimpleTestCase):

    def test_energy_from_occupation_slope(self):
        cs = ConstantsSet.natural()
        self.assertEqual(energy_from_occupation_slope(2.0, 0.0, cs), 0.0)
        self.assertEqual(energy_from_occupation_slope(2.0, 0.5, cs), 2.0)
        with self.assertRaises(DomainError):
            energy_from_occupation_slope(-1.0, 0.5, cs)

    def test_closed_form_balances_energy(self):
        cfg = OscillatorConfig(m=1e-26, omega=1e13, cs=ConstantsSet.si())
        for nbar in (0.1, 1.0, 37.0, 1e4):
            T = temperature_closed_form(cfg, nbar)
            residual = self_consistency_residual(cfg, nbar, T, occupation_slope(cfg, nbar))
            scale = cfg.cs.hbar * cfg.omega * (nbar + 0.5)
            self.assertLess(abs(residual) / scale, 1e-10, nbar)

    def test_cold_limit_leaves_full_energy(self):
        cfg = natural_oscillator()
        self.assertAlmostEqual(self_consistency_residual(cfg, 3.0, 1e-9, 1.0), 3.5, places=12)

    def test_vacuum_balance_point(self):
        cfg = natural_oscillator()
        T = 2.0
        self.assertEqual(self_consistency_residual(cfg, 0.0, T, 0.5 / (T * T)), 0.0)


class ClosedFormTemperatureTests(SimpleTestCase):

    def test_unit_occupation(self):
        self.assertAlmostEqual(temperature_closed_form(natural_oscillator(), 1.0), 1.2332, delta=1e-4)

    def test_high_occupation(self):
        value = temperature_closed_form(natural_oscillator(), 100.0)
        self.assertAlmostEqual(value, 1.00251, delta=1e-4)
        self.assertAlmostEqual(value, 1.0 + 1.0 / 400.0 - 1.0 / 480000.0 + 1.0 / 192e6, delta=1e-10)

    def test_approaches_limit_monotonically_from_above(self):
        values = [temperature_closed_form(natural_oscillator(), n) for n in 10.0 ** np.arange(0, 9)]
        self.assertTrue(all(v > 1.0 for v in values))
        self.assertTrue(all(b < a for a, b in zip(values, values[1:])))

    def test_no_cancellation_at_large_occupation(self):
        self.assertAlmostEqual(temperature_closed_form(natural_oscillator(), 1e12) - 1.0, 2.5e-13, delta=2e-15)

    def test_linear_in_omega(self):
        self.assertAlmostEqual(temperature_closed_form(natural_oscillator(omega=3.0), 5.0),
                               3.0 * temperature_closed_form(natural_oscillator(), 5.0), places=13)

    def test_vacuum_is_rejected(self):
        with self.assertRaises(DomainError):
            temperature_closed_form(natural_oscillator(), 0.0)

    def test_subnormal_occupation(self):
        cfg = natural_oscillator()
        T = temperature_closed_form(cfg, 1e-320)
        self.assertTrue(math.isfinite(T))
        self.assertTrue(math.isclose(T, 0.5 / (1e-320 * math.log(0.5e320)), rel_tol=1e-6))
        point = coherent_thermo_point(cfg, 1e-320)
        self.assertTrue(all(math.isfinite(v) for v in (point.T, point.E, point.F, point.S)))

    def test_overflowing_temperature_is_rejected(self):
        cfg = OscillatorConfig(m=1.0, omega=1e15, cs=ConstantsSet.si())
        with self.assertRaises(DomainError):
            temperature_closed_form(cfg, 1e-320)

    def test_frequency_per_occupation(self):
        cfg = natural_oscillator(m=2.0, omega=3.0)
        d = 0.7
        alpha = frequency_per_occupation(cfg, d)
        self.assertAlmostEqual(alpha * occupation_from_amplitude(cfg, d), cfg.omega, places=13)
        nbar = occupation_from_amplitude(cfg, d)
        self.assertAlmostEqual(temperature_from_alpha(alpha, nbar, cfg.cs),
                               temperature_closed_form(cfg, nbar), places=12)

    def test_closed_form_solves_ode(self):
        cs = ConstantsSet.natural()
        for nbar in np.geomspace(0.1, 1e4, 100):
            self.assertLess(closed_form_ode_residual(2.0, float(nbar), cs), 1e-10)


class TemperatureOdeTests(SimpleTestCase):

    def setUp(self):
        self.cs = ConstantsSet.natural()

    def test_tracks_closed_form(self):
        start = temperature_from_alpha(1.0, 0.5, self.cs)
        trajectory = temperature_ode_solve(1.0, 0.5, 100.0, start, 1e-9, self.cs)
        for nbar, T in trajectory.samples():
            self.assertTrue(math.isclose(T, temperature_from_alpha(1.0, nbar, self.cs), rel_tol=1e-6), nbar)
        for nbar, T in trajectory.resample(25):
            self.assertTrue(math.isclose(T, temperature_from_alpha(1.0, nbar, self.cs), rel_tol=1e-6), nbar)
        self.assertEqual(trajectory.method, 'DOP853')
        self.assertGreater(trajectory.n_steps, 0)

    def test_zero_right_hand_side_keeps_start(self):
        cs = ConstantsSet.si(hbar=1.0, k_B=1e-300)
        trajectory = temperature_ode_solve(1.0, 1.0, 10.0, 5.0, 1e-9, cs)
        self.assertAlmostEqual(float(trajectory(10.0)), 5.0, places=12)

    def test_reversible(self):
        start = temperature_from_alpha(1.0, 1.0, self.cs)
        forward = temperature_ode_solve(1.0, 1.0, 50.0, start, 1e-11, self.cs)
        back = temperature_ode_solve(1.0, 50.0, 1.0, float(forward.T[-1]), 1e-11, self.cs)
        self.assertTrue(math.isclose(float(back.T[-1]), start, rel_tol=1e-8))

    def test_singular_start(self):
        with self.assertRaises(SingularityError):
            temperature_ode_solve(1.0, 0.0, 1.0, 1.0, 1e-9, self.cs)
        with self.assertRaises(SingularityError):
            temperature_ode_solve(1.0, 1.0, -1.0, 1.0, 1e-9, self.cs)

    def test_rejects_bad_settings(self):
        with self.assertRaises(DomainError):
            temperature_ode_solve(1.0, 1.0, 1.0, 1.0, 1e-9, self.cs)
        with self.assertRaises(DomainError):
            temperature_ode_solve(1.0, 1.0, 2.0, 1.0, 1e-2, self.cs)
        with self.assertRaises(DomainError):
            temperature_ode_solve(1.0, 1.0, 2.0, 1.0, 1e-9, self.cs, method='Euler')


class AreaLawTests(SimpleTestCase):

    def test_unit_case(self):
        law = area_law(natural_oscillator(), math.sqrt(2.0))
        self.assertAlmostEqual(law.A_d, 2.0 * math.pi, places=12)
        self.assertEqual(law.l0, 1.0)
        self.assertAlmostEqual(law.nbar, 1.0, places=12)
        self.assertAlmostEqual(law.S, 2.0, places=12)

    def test_vacuum(self):
        law = area_law(natural_oscillator(), 0.0)
        self.assertEqual((law.A_d, law.nbar, law.S), (0.0, 0.0, 0.0))
        self.assertEqual(law.l0, 1.0)

    @given(floats(-30.0, -20.0), floats(5.0, 15.0), floats(-12.0, -8.0))
    def test_matches_amplitude_occupation(self, log_m, log_omega, log_d):
        cs = ConstantsSet.si()
        cfg = OscillatorConfig(m=10.0 ** log_m, omega=10.0 ** log_omega, cs=cs)
        d = 10.0 ** log_d
        law = area_law(cfg, d)
        self.assertTrue(math.isclose(law.nbar, occupation_from_amplitude(cfg, d), rel_tol=1e-14))
        self.assertTrue(math.isclose(law.S, 2.0 * cs.k_B * law.nbar, rel_tol=1e-12))

    def test_alternative_form_at_oscillator_temperature(self):
        cfg = natural_oscillator(m=2.0, omega=0.5)
        law = area_law(cfg, 1.3)
        T = cfg.cs.hbar * cfg.omega / cfg.cs.k_B
        self.assertAlmostEqual(law.occupation_at(T, cfg), law.nbar, places=12)


class BlochTests(SimpleTestCase):

    def test_cold_bath(self):
        self.assertAlmostEqual(bloch_temperature(natural_oscillator(), 0.01), 0.5, delta=1e-10)

    def test_classical_limit(self):
        self.assertAlmostEqual(bloch_temperature(natural_oscillator(), 10.0), 10.00833, delta=1e-4)

    def test_bounds_and_monotonicity(self):
        cfg = natural_oscillator()
        grid = np.geomspace(0.05, 100.0, 40)
        values = [bloch_temperature(cfg, float(T)) for T in grid]
        for T, value in zip(grid, values):
            self.assertGreaterEqual(value, max(T, 0.5))
        self.assertTrue(all(b > a for a, b in zip(values, values[1:])))

    def test_rejects_nonpositive_bath(self):
        with self.assertRaises(DomainError):
            bloch_temperature(natural_oscillator(), 0.0)

    def test_distribution(self):
        cfg = natural_oscillator(m=2.0, omega=1.5)
        T_hb = 0.7
        width = bloch_width(cfg, T_hb)
        self.assertAlmostEqual(bloch_distribution(cfg, T_hb, 0.0), 1.0 / (math.sqrt(2.0 * math.pi) * width),
                               places=12)
        q = np.linspace(0.1, 3.0, 9)
        np.testing.assert_array_equal(bloch_distribution(cfg, T_hb, q), bloch_distribution(cfg, T_hb, -q))
        total, _ = quad(lambda x: bloch_distribution(cfg, T_hb, x), -10.0 * width, 10.0 * width,
                        epsabs=0.0, epsrel=1e-11)
        self.assertAlmostEqual(total, 1.0, delta=1e-10)


class ThermoPointTests(SimpleTestCase):

    def test_zero_point(self):
        point = zero_point(natural_oscillator())
        self.assertEqual((point.T, point.E, point.F, point.S, point.lnQ), (0.5, 0.5, 0.0, 1.0, 0.0))
        self.assertEqual(point.E - point.T * point.S, point.F)
        self.assertTrue(math.isclose(bloch_temperature(natural_oscillator(), 0.01), point.T, rel_tol=1e-10))

    def test_coherent_points_close(self):
        cfg = OscillatorConfig(m=1e-26, omega=1e13, cs=ConstantsSet.si())
        for nbar in (0.0, 0.01, 1.0, 42.0, 1e6):
            point = coherent_thermo_point(cfg, nbar)
            self.assertTrue(point.is_closed(cfg.cs), (nbar, point.closure_residuals(cfg.cs)))

    def test_open_point_is_detected(self):
        cs = ConstantsSet.natural()
        self.assertFalse(ThermoPoint(T=1.0, lnQ=1.0, F=-1.0, S=2.0, E=2.0).is_closed(cs))
        self.assertTrue(ThermoPoint(T=1.0, lnQ=1.0, F=-1.0, S=2.0, E=1.0).is_closed(cs))

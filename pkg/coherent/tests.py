import cmath
import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given
from hypothesis.strategies import floats
from scipy.special import gammaln

from coherent_thermo.exceptions import DomainError
from constants.units import ConstantsSet
from .states import (
    FOCK_MAX_NBAR, CoherentAmplitude, OscillatorConfig, _log_poisson_mode, coherent_diagonal, fock_weights,
    log_partition_function, mean_energy, occupation_from_amplitude, overlap_sq, phase_area, phase_portrait,
)


def natural_oscillator(m=1.0, omega=1.0):
    return OscillatorConfig(m=m, omega=omega, cs=ConstantsSet.natural())


class OscillatorConfigTests(SimpleTestCase):

    def test_rejects_nonpositive_parameters(self):
        cs = ConstantsSet.natural()
        with self.assertRaises(DomainError):
            OscillatorConfig(m=0.0, omega=1.0, cs=cs)
        with self.assertRaises(DomainError):
            OscillatorConfig(m=1.0, omega=-1.0, cs=cs)
        with self.assertRaises(DomainError):
            OscillatorConfig(m=float('inf'), omega=1.0, cs=cs)

    def test_zero_point_amplitude(self):
        self.assertEqual(natural_oscillator(m=4.0).zero_point_amplitude, 0.5)

    def test_amplitude_for_occupation_inverts(self):
        cfg = natural_oscillator(m=2.0, omega=3.0)
        d = cfg.amplitude_for_occupation(7.0)
        self.assertAlmostEqual(occupation_from_amplitude(cfg, d), 7.0, places=12)


class OccupationTests(SimpleTestCase):

    def test_vacuum(self):
        self.assertEqual(occupation_from_amplitude(natural_oscillator(), 0), 0.0)

    def test_unit_arithmetic(self):
        self.assertEqual(occupation_from_amplitude(natural_oscillator(omega=2.0), 1.0), 1.0)

    def test_phase_invariance(self):
        cfg = natural_oscillator(m=1.3, omega=0.7)
        reference = occupation_from_amplitude(cfg, 2.0)
        for phase in np.linspace(0.0, 2.0 * math.pi, 7):
            self.assertAlmostEqual(occupation_from_amplitude(cfg, cmath.rect(2.0, phase)), reference, places=12)

    def test_coherent_amplitude_caches_occupation(self):
        amplitude = CoherentAmplitude(natural_oscillator(omega=2.0), 0.6, 0.8)
        self.assertAlmostEqual(amplitude.nbar, 1.0, places=15)
        self.assertEqual(amplitude.d, complex(0.6, 0.8))
        with self.assertRaises(DomainError):
            CoherentAmplitude(natural_oscillator(), float('nan'))


class FockWeightsTests(SimpleTestCase):

    def test_vacuum(self):
        weights = fock_weights(0.0)
        self.assertEqual(weights.n_max, 0)
        self.assertEqual(list(weights.weights), [1.0])

    def test_first_weight_at_unit_occupation(self):
        self.assertAlmostEqual(fock_weights(1.0).weights[0], 0.3678794412, delta=1e-9)

    def test_normalization(self):
        for nbar in (0.1, 1.0, 10.0, 30.0, 100.0, 1000.0):
            weights = fock_weights(nbar, tol=1e-12)
            self.assertLess(abs(1.0 - weights.total), 1e-12 if nbar <= 30 else 1e-10, nbar)

    def test_mode_anchored_branch(self):
        for nbar in (2e4, 1e5, 1e6):
            weights = fock_weights(nbar, tol=1e-12)
            self.assertLess(abs(1.0 - weights.total), 1e-12, nbar)
            self.assertTrue(math.isclose(weights.mean, nbar, rel_tol=1e-8), nbar)

    def test_mode_anchor_matches_log_gamma(self):
        for k, nbar in ((700, 700.4), (2000, 2000.9), (123456, 123456.5)):
            expected = k * math.log(nbar) - nbar - gammaln(k + 1)
            self.assertAlmostEqual(_log_poisson_mode(k, nbar), expected, delta=1e-9 * abs(expected))

    def test_refuses_occupations_too_large_to_tabulate(self):
        for nbar in (FOCK_MAX_NBAR * 2, 1e13, 4.7e33):
            with self.assertRaises(DomainError):
                fock_weights(nbar)

    def test_poisson_mean_and_variance(self):
        for nbar in (0.5, 7.0, 250.0):
            weights = fock_weights(nbar)
            self.assertTrue(math.isclose(weights.mean, nbar, rel_tol=1e-8), nbar)
            self.assertTrue(math.isclose(weights.variance, nbar, rel_tol=1e-8), nbar)

    def test_truncation_covers_the_peak(self):
        weights = fock_weights(100.0)
        self.assertGreaterEqual(weights.n_max, 100 + 10 * 10 + 20)
        self.assertFalse(weights.weights.flags.writeable)

    def test_rejects_bad_input(self):
        with self.assertRaises(DomainError):
            fock_weights(-1.0)
        with self.assertRaises(DomainError):
            fock_weights(float('nan'))
        with self.assertRaises(DomainError):
            fock_weights(1.0, tol=0.0)

    def test_energies(self):
        cfg = natural_oscillator(omega=2.0)
        self.assertEqual(list(fock_weights(0.01).energies(cfg)[:3]), [1.0, 3.0, 5.0])


class OverlapTests(SimpleTestCase):

    def setUp(self):
        self.cfg = natural_oscillator(m=1.0, omega=2.0)

    def test_self_overlap(self):
        self.assertEqual(overlap_sq(self.cfg, 1 + 2j, 1 + 2j), 1.0)

    def test_vacuum_overlap_is_inverse_partition_function(self):
        d = 1.5 - 0.5j
        nbar = occupation_from_amplitude(self.cfg, d)
        self.assertAlmostEqual(overlap_sq(self.cfg, d, 0), math.exp(-nbar), places=15)
        self.assertTrue(math.isclose(math.exp(log_partition_function(nbar)), 1.0 / overlap_sq(self.cfg, d, 0),
                                     rel_tol=1e-12))

    @given(floats(-3.0, 3.0), floats(-3.0, 3.0), floats(-3.0, 3.0), floats(-3.0, 3.0))
    def test_symmetry_and_range(self, d_re, d_im, f_re, f_im):
        d, f = complex(d_re, d_im), complex(f_re, f_im)
        value = overlap_sq(self.cfg, d, f)
        self.assertEqual(value, overlap_sq(self.cfg, f, d))
        self.assertGreater(value, 0.0)
        self.assertLessEqual(value, 1.0)

    @given(floats(-3.0, 3.0), floats(-3.0, 3.0), floats(-3.0, 3.0), floats(-3.0, 3.0))
    def test_diagonal_product_form_matches_overlap(self, d_re, d_im, f_re, f_im):
        d, f = complex(d_re, d_im), complex(f_re, f_im)
        self.assertTrue(math.isclose(coherent_diagonal(self.cfg, d, f), overlap_sq(self.cfg, d, f),
                                     rel_tol=1e-12))


class PartitionFunctionTests(SimpleTestCase):

    def test_log_partition_function(self):
        self.assertEqual(log_partition_function(0.0), 0.0)
        self.assertEqual(log_partition_function(1.0), 1.0)
        self.assertEqual(log_partition_function(1e6), 1e6)

    def test_mean_energy(self):
        self.assertEqual(mean_energy(natural_oscillator(), 0.0), 0.5)
        self.assertEqual(mean_energy(natural_oscillator(), 2.0), 2.5)
        with self.assertRaises(DomainError):
            mean_energy(natural_oscillator(), -0.1)


class PhasePortraitTests(SimpleTestCase):

    def test_orbit_is_a_circle_of_radius_d(self):
        cfg = natural_oscillator(m=2.0, omega=3.0)
        d = 0.3 + 0.4j
        q, p = phase_portrait(cfg, d, np.linspace(0.0, 2.0 * math.pi / cfg.omega, 50))
        radius = np.hypot(q, p / (cfg.m * cfg.omega))
        np.testing.assert_allclose(radius, abs(d), rtol=1e-12)
        self.assertAlmostEqual(q[0], d.real, places=15)

    def test_area(self):
        self.assertAlmostEqual(phase_area(2.0), 4.0 * math.pi, places=12)
        with self.assertRaises(DomainError):
            phase_area(-1.0)

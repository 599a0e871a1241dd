import math

import numpy as np
from django.test import SimpleTestCase

from coherent.states import OscillatorConfig
from coherent_thermo.exceptions import DomainError, OracleScaleError
from constants.units import ConstantsSet
from kgf_field.source import SourceProfile, SphericalSource, point_potential, yukawa_potential
from thermo.temperature import temperature_from_alpha, temperature_ode_rhs
from .oracles import (
    Observable, OracleReport, finite_difference_check, fock_sum_oracle, nested_quadrature_oracle,
)
from .suite import check_black_hole, check_yukawa, run_self_check
from .summation import CompensatedSum, compensated_sum


class CompensatedSumTests(SimpleTestCase):

    def test_recovers_what_naive_summation_drops(self):
        values = [1.0, 1e100, 1.0, -1e100]
        self.assertEqual(sum(values), 0.0)
        self.assertEqual(compensated_sum(values), 2.0)

    def test_many_small_terms(self):
        total = CompensatedSum()
        for _ in range(10 ** 5):
            total += 0.1
        self.assertEqual(total.count, 10 ** 5)
        self.assertAlmostEqual(total.value, 1e4, delta=1e-11)


class OracleReportTests(SimpleTestCase):

    def test_relative_comparison(self):
        report = OracleReport.compare('x', 1.0 + 1e-9, 1.0, 1e-8)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.relative_error, 1e-9, delta=1e-15)
        self.assertFalse(OracleReport.compare('x', 1.1, 1.0, 1e-8).passed)

    def test_absolute_fallback_at_zero(self):
        self.assertTrue(OracleReport.compare('x', 1e-12, 0.0, 1e-10).passed)
        self.assertFalse(OracleReport.compare('x', 1e-9, 0.0, 1e-10).passed)


class FockSumOracleTests(SimpleTestCase):

    def setUp(self):
        self.cfg = OscillatorConfig(m=1.0, omega=1.0, cs=ConstantsSet.natural())

    def test_norm(self):
        for nbar in (0.0, 0.1, 1.0, 10.0, 100.0, 1000.0, 1e4):
            self.assertAlmostEqual(fock_sum_oracle(self.cfg, nbar, Observable.NORM), 1.0, delta=1e-12)

    def test_mean_and_variance_are_nbar(self):
        self.assertAlmostEqual(fock_sum_oracle(self.cfg, 10.0, 'mean_n'), 10.0, delta=1e-8)
        self.assertAlmostEqual(fock_sum_oracle(self.cfg, 10.0, 'var_n'), 10.0, delta=1e-8)
        self.assertAlmostEqual(fock_sum_oracle(self.cfg, 37.5, 'mean_n'), 37.5, delta=1e-8)

    def test_energy(self):
        self.assertAlmostEqual(fock_sum_oracle(self.cfg, 2.0, Observable.ENERGY), 2.5, delta=1e-9)

    def test_scale_bound(self):
        with self.assertRaises(OracleScaleError):
            fock_sum_oracle(self.cfg, 2e4, Observable.NORM)
        with self.assertRaises(DomainError):
            fock_sum_oracle(self.cfg, -1.0, Observable.NORM)


class NestedQuadratureOracleTests(SimpleTestCase):

    def test_agrees_with_primary(self):
        src = SphericalSource(g=1.0, radius_d=1.0, lambda_C=0.7)
        for r in (1.2, 2.0, 4.5):
            self.assertTrue(math.isclose(nested_quadrature_oracle(src, r), yukawa_potential(src, r),
                                         rel_tol=1e-6), r)

    def test_small_ball_is_point_like(self):
        src = SphericalSource(g=2.0, radius_d=1e-3, lambda_C=1.0)
        self.assertTrue(math.isclose(nested_quadrature_oracle(src, 3.0), point_potential(2.0, 1.0, 3.0),
                                     rel_tol=1e-4))

    def test_positive_and_decreasing(self):
        src = SphericalSource(g=1.0, radius_d=0.5, lambda_C=1.0)
        values = [nested_quadrature_oracle(src, r) for r in np.linspace(0.6, 5.0, 8)]
        self.assertTrue(all(v > 0 for v in values))
        self.assertTrue(all(b < a for a, b in zip(values, values[1:])))

    def test_rejects_point_profile_and_inner_points(self):
        with self.assertRaises(DomainError):
            nested_quadrature_oracle(SphericalSource(1.0, 0.0, 1.0, SourceProfile.POINT_LIKE), 1.0)
        with self.assertRaises(DomainError):
            nested_quadrature_oracle(SphericalSource(1.0, 1.0, 1.0), 0.5)


class FiniteDifferenceCheckTests(SimpleTestCase):

    def test_linear_model_free_energy(self):
        cs = ConstantsSet.natural()
        gamma, T = 3.0, 2.0
        report = finite_difference_check(lambda t: -cs.k_B * t * gamma * t, T, -2.0 * cs.k_B * gamma * T)
        self.assertTrue(report.passed)

    def test_constant_function(self):
        report = finite_difference_check(lambda x: 5.0, 1.5, 0.0)
        self.assertTrue(report.passed)
        self.assertEqual(report.oracle_value, 0.0)

    def test_closed_form_temperature_slope(self):
        cs = ConstantsSet.natural()
        for nbar in (0.1, 1.0, 50.0, 1e4):
            T = temperature_from_alpha(1.0, nbar, cs)
            report = finite_difference_check(lambda n: temperature_from_alpha(1.0, n, cs), nbar,
                                             temperature_ode_rhs(1.0, nbar, T, cs), tolerance=1e-8)
            self.assertTrue(report.passed, report)

    def test_failure_is_a_report(self):
        report = finite_difference_check(math.sin, 0.3, 2.0)
        self.assertFalse(report.passed)


class SelfCheckTests(SimpleTestCase):

    def test_black_hole_checks_pass(self):
        self.assertTrue(all(report.passed for report in check_black_hole()))

    def test_yukawa_checks_pass(self):
        reports = check_yukawa(np.random.default_rng(7), count=3)
        self.assertEqual(len(reports), 4)
        self.assertTrue(all(report.passed for report in reports))

    def test_full_suite_passes(self):
        result = run_self_check()
        self.assertTrue(result.passed, [r.quantity for r in result.failures])
        self.assertGreater(len(result.reports), 150)

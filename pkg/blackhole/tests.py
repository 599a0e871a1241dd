import math

from django.test import SimpleTestCase

from coherent.states import log_partition_function
from coherent_thermo.exceptions import DomainError
from constants.units import ConstantsSet, planck_length
from .horizon import (
    SOLAR_MASS_KG, BlackHoleConfig, alpha_from_kappa, bekenstein_entropy,
    bekenstein_log_states, bh_entropy, coherent_equivalence_report, horizon_area,
    mass_for_area, schwarzschild_radius,
)


class HorizonAreaTests(SimpleTestCase):

    def test_natural_units(self):
        self.assertAlmostEqual(horizon_area(1.0, ConstantsSet.natural()), 16.0 * math.pi, places=12)

    def test_solar_mass(self):
        cs = ConstantsSet.si()
        area = horizon_area(SOLAR_MASS_KG, cs)
        self.assertAlmostEqual(area / 1.097e8, 1.0, delta=1e-3)
        self.assertAlmostEqual(schwarzschild_radius(SOLAR_MASS_KG, cs), 2954.0, delta=1.0)
        r_s = schwarzschild_radius(SOLAR_MASS_KG, cs)
        self.assertAlmostEqual(area / (4.0 * math.pi * r_s * r_s), 1.0, delta=1e-14)

    def test_quadratic_in_mass(self):
        cs = ConstantsSet.si()
        self.assertAlmostEqual(horizon_area(2e31, cs) / horizon_area(1e31, cs), 4.0, delta=1e-14)

    def test_mass_round_trip(self):
        cs = ConstantsSet.si()
        self.assertAlmostEqual(mass_for_area(horizon_area(SOLAR_MASS_KG, cs), cs) / SOLAR_MASS_KG,
                               1.0, delta=1e-14)

    def test_rejects_nonpositive_mass(self):
        with self.assertRaises(DomainError):
            horizon_area(0.0, ConstantsSet.si())
        with self.assertRaises(DomainError):
            horizon_area(-1.0, ConstantsSet.si())


class EntropyTests(SimpleTestCase):

    def test_single_unit_patch_is_one_k_b(self):
        cs = ConstantsSet.si()
        l_p = planck_length(cs)
        result = bh_entropy(4.0 * l_p * l_p, cs)
        self.assertAlmostEqual(result.ratio, 1.0, delta=1e-14)
        self.assertAlmostEqual(result.entropy / cs.k_B, 1.0, delta=1e-14)
        self.assertAlmostEqual(result.log_ratio, 0.0, delta=1e-12)

    def test_solar_mass_entropy(self):
        cs = ConstantsSet.si()
        result = bh_entropy(horizon_area(SOLAR_MASS_KG, cs), cs)
        self.assertAlmostEqual(result.ratio / 1.049e77, 1.0, delta=5e-3)
        self.assertAlmostEqual(result.log_ratio, math.log(result.ratio), delta=1e-12 * result.log_ratio)

    def test_linear_in_area(self):
        cs = ConstantsSet.natural()
        self.assertAlmostEqual(bh_entropy(6.0, cs).entropy, 3.0 * bh_entropy(2.0, cs).entropy, places=12)

    def test_no_overflow_for_huge_masses(self):
        cs = ConstantsSet.si()
        result = bh_entropy(horizon_area(1e12 * SOLAR_MASS_KG, cs), cs)
        self.assertTrue(math.isfinite(result.entropy))
        self.assertAlmostEqual(result.ratio / 1.049e101, 1.0, delta=5e-3)


class BekensteinTests(SimpleTestCase):

    def test_one_patch_with_two_states(self):
        cs = ConstantsSet.natural()
        self.assertAlmostEqual(bekenstein_log_states(3.0, 2, 3.0, cs), math.log(2.0), places=14)

    def test_ten_patches_with_four_states(self):
        cs = ConstantsSet.natural()
        self.assertAlmostEqual(bekenstein_log_states(10.0, 4, 1.0, cs), 13.8629436112, delta=1e-10)

    def test_alpha_from_kappa(self):
        self.assertAlmostEqual(alpha_from_kappa(4.0, 2), 2.7725887222, delta=1e-10)
        self.assertAlmostEqual(alpha_from_kappa(4.0, math.e, allow_real_kappa=True), 4.0, places=14)
        self.assertAlmostEqual(alpha_from_kappa(8.0, 3), 2.0 * alpha_from_kappa(4.0, 3), places=14)

    def test_kappa_must_be_integer_at_least_two(self):
        cs = ConstantsSet.natural()
        for kappa in (1, 0, 2.5, math.e):
            with self.assertRaises(DomainError):
                bekenstein_log_states(1.0, kappa, 1.0, cs)
        with self.assertRaises(DomainError):
            alpha_from_kappa(4.0, 1.0, allow_real_kappa=True)

    def test_kappa_cancels_once_alpha_follows_it(self):
        cs = ConstantsSet.si()
        area = horizon_area(SOLAR_MASS_KG, cs)
        expected = area / (4.0 * planck_length(cs) ** 2)
        for kappa in (2, 3, 10, 100):
            log_states = bekenstein_log_states(area, kappa, alpha_from_kappa(4.0, kappa), cs)
            self.assertTrue(math.isclose(log_states, expected, rel_tol=1e-12), kappa)

    def test_boltzmann_entropy(self):
        cs = ConstantsSet.si()
        self.assertEqual(bekenstein_entropy(0.0, cs), 0.0)
        self.assertAlmostEqual(bekenstein_entropy(2.0, cs), 2.0 * cs.k_B, delta=1e-36)
        with self.assertRaises(DomainError):
            bekenstein_entropy(-1.0, cs)

    def test_log_states_match_coherent_partition_function(self):
        cs = ConstantsSet.natural()
        nbar = 250.0 / 8.0
        log_states = bekenstein_log_states(250.0, 5, alpha_from_kappa(8.0, 5), cs)
        self.assertTrue(math.isclose(log_states, log_partition_function(nbar), rel_tol=1e-14))


class BlackHoleConfigTests(SimpleTestCase):

    def test_mass_derives_area_and_back(self):
        cs = ConstantsSet.si()
        cfg = BlackHoleConfig(cs=cs, beta=4.0, mass_M=SOLAR_MASS_KG)
        self.assertEqual(cfg.area_A, horizon_area(SOLAR_MASS_KG, cs))
        cfg = BlackHoleConfig(cs=cs, beta=4.0, area_A=1.0e8)
        self.assertAlmostEqual(horizon_area(cfg.mass_M, cs) / 1.0e8, 1.0, delta=1e-14)

    def test_exactly_one_source_of_truth(self):
        cs = ConstantsSet.si()
        with self.assertRaises(DomainError):
            BlackHoleConfig(cs=cs, beta=4.0)
        with self.assertRaises(DomainError):
            BlackHoleConfig(cs=cs, beta=4.0, mass_M=1.0, area_A=1.0)

    def test_rejects_bad_parameters(self):
        cs = ConstantsSet.si()
        with self.assertRaises(DomainError):
            BlackHoleConfig(cs=cs, beta=0.0, mass_M=1.0)
        with self.assertRaises(DomainError):
            BlackHoleConfig(cs=cs, beta=4.0, kappa=1, mass_M=1.0)
        with self.assertRaises(DomainError):
            BlackHoleConfig(cs=cs, beta=4.0, area_A=-1.0)


class EquivalenceReportTests(SimpleTestCase):

    def setUp(self):
        self.cs = ConstantsSet.si()

    def test_beta_four_matches_boltzmann_route(self):
        report = coherent_equivalence_report(
            BlackHoleConfig.from_solar_masses(1.0, self.cs, beta=4.0, kappa=2)
        )
        self.assertTrue(report.route1_matches)
        self.assertFalse(report.route2_matches)
        self.assertAlmostEqual(report.route2_entropy / report.bh_entropy, 2.0, delta=1e-12)
        self.assertAlmostEqual(report.bh_entropy_ratio / 1.049e77, 1.0, delta=5e-3)

    def test_beta_eight_matches_coherent_route(self):
        report = coherent_equivalence_report(
            BlackHoleConfig.from_solar_masses(1.0, self.cs, beta=8.0, kappa=3)
        )
        self.assertFalse(report.route1_matches)
        self.assertTrue(report.route2_matches)
        self.assertAlmostEqual(report.route1_entropy / report.bh_entropy, 0.5, delta=1e-12)

    def test_occupation_is_kappa_invariant(self):
        reports = [
            coherent_equivalence_report(BlackHoleConfig(cs=self.cs, beta=4.0, kappa=k, area_A=1e8))
            for k in (2, 3, 10, 100)
        ]
        for report in reports:
            self.assertTrue(report.kappa_invariant)
            self.assertTrue(math.isclose(report.log_states, reports[0].nbar, rel_tol=1e-12))

    def test_routes_close_for_any_area(self):
        for area in (1e-60, 1.0, 1e8, 1e32):
            four = coherent_equivalence_report(BlackHoleConfig(cs=self.cs, beta=4.0, area_A=area))
            eight = coherent_equivalence_report(BlackHoleConfig(cs=self.cs, beta=8.0, area_A=area))
            self.assertTrue(four.route1_matches, area)
            self.assertTrue(eight.route2_matches, area)

    def test_real_kappa_for_identity_checks(self):
        cfg = BlackHoleConfig(cs=ConstantsSet.natural(), beta=4.0, kappa=math.e, area_A=40.0,
                              allow_real_kappa=True)
        self.assertAlmostEqual(cfg.alpha, 4.0, places=14)
        self.assertAlmostEqual(coherent_equivalence_report(cfg).log_states, 10.0, places=12)

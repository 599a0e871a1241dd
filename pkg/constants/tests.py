import math

from django.test import SimpleTestCase

from coherent_thermo.exceptions import DomainError
from .units import ConstantsSet, UnitSystem, compton_wavelength, planck_length


class ConstantsSetTests(SimpleTestCase):

    def test_si_defaults_are_codata_2018(self):
        cs = ConstantsSet.si()
        self.assertEqual(cs.unit_system, UnitSystem.SI)
        self.assertEqual(cs.hbar, 1.054571817e-34)
        self.assertEqual(cs.k_B, 1.380649e-23)
        self.assertEqual(cs.c, 299792458.0)
        self.assertEqual(cs.G, 6.67430e-11)

    def test_si_overrides_pin_values(self):
        cs = ConstantsSet.si(G=1.0, c=2.0)
        self.assertEqual(cs.G, 1.0)
        self.assertEqual(cs.c, 2.0)

    def test_natural_units_fix_hbar_kb_c(self):
        cs = ConstantsSet.natural()
        self.assertEqual((cs.hbar, cs.k_B, cs.c, cs.G), (1.0, 1.0, 1.0, 1.0))
        self.assertEqual(ConstantsSet.natural(G=3.0).G, 3.0)

    def test_natural_units_reject_hbar_override(self):
        with self.assertRaises(DomainError):
            ConstantsSet.build('natural', {'hbar': 2.0})

    def test_build_accepts_g_override_in_natural_units(self):
        cs = ConstantsSet.build('natural', {'G': 0.5})
        self.assertEqual(cs.G, 0.5)
        self.assertEqual(cs.unit_system, UnitSystem.NATURAL)

    def test_rejects_nonpositive_constant(self):
        with self.assertRaises(DomainError):
            ConstantsSet.si(k_B=0.0)
        with self.assertRaises(DomainError):
            ConstantsSet.si(G=-1.0)
        with self.assertRaises(DomainError):
            ConstantsSet.si(c=float('nan'))

    def test_rejects_unknown_constant_and_unit_system(self):
        with self.assertRaises(DomainError):
            ConstantsSet.build('si', {'e': 1.0})
        with self.assertRaises(DomainError):
            ConstantsSet.build('cgs')

    def test_unit_strings(self):
        self.assertEqual(ConstantsSet.si().unit('temperature'), 'K')
        self.assertEqual(ConstantsSet.natural().unit('temperature'), 'natural:temperature')
        self.assertEqual(ConstantsSet.natural().unit('entropy'), 'k_B')


class PlanckLengthTests(SimpleTestCase):

    def test_natural_units(self):
        self.assertEqual(planck_length(ConstantsSet.natural()), 1.0)

    def test_si_value(self):
        self.assertAlmostEqual(planck_length(ConstantsSet.si()), 1.616255e-35, delta=1e-40)

    def test_quadrupling_g_doubles_length(self):
        base = planck_length(ConstantsSet.si())
        scaled = planck_length(ConstantsSet.si(G=4 * 6.67430e-11))
        self.assertTrue(math.isclose(scaled, 2 * base, rel_tol=1e-15))

    def test_round_trip_recovers_hbar(self):
        for cs in (ConstantsSet.si(), ConstantsSet.natural(G=7.0), ConstantsSet.si(G=2.5, c=3.0)):
            lp = planck_length(cs)
            self.assertTrue(math.isclose(lp ** 2 * cs.c ** 3 / cs.G, cs.hbar, rel_tol=1e-14))


class ComptonWavelengthTests(SimpleTestCase):

    def test_natural_units(self):
        self.assertEqual(compton_wavelength(ConstantsSet.natural(), 1.0), 1.0)

    def test_electron(self):
        value = compton_wavelength(ConstantsSet.si(), 9.1093837e-31)
        self.assertAlmostEqual(value, 3.8616e-13, delta=1e-16)

    def test_doubling_mass_halves_length(self):
        cs = ConstantsSet.si()
        self.assertTrue(math.isclose(
            compton_wavelength(cs, 2e-30), compton_wavelength(cs, 1e-30) / 2, rel_tol=1e-15))

    def test_nonpositive_mass(self):
        with self.assertRaises(DomainError):
            compton_wavelength(ConstantsSet.natural(), 0.0)
        with self.assertRaises(DomainError):
            compton_wavelength(ConstantsSet.natural(), -1.0)

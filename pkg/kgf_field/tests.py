import math
import os
import tempfile

from django.test import SimpleTestCase

from coherent.states import OscillatorConfig, mean_energy
from coherent_thermo.exceptions import DomainError, SpectrumParseError, UndefinedMeanError
from constants.units import ConstantsSet, compton_wavelength
from thermo.temperature import area_law, temperature_closed_form
from .source import (
    SourceProfile, SphericalSource, field_entropy_area, layer_volume_occupancy,
    occupancy_estimate, point_potential, yukawa_potential,
)
from .spectrum import (
    ModeSpectrum, field_energy, field_entropy, field_free_energy, field_log_partition_function,
    field_temperature, mean_frequency,
)


class ModeSpectrumTests(SimpleTestCase):

    def test_total_occupation(self):
        spec = ModeSpectrum(((1.0, 1.0), (2.0, 2.5), (3.0, 0.5)))
        self.assertEqual(spec.nbar_total, 4.0)
        self.assertEqual(list(spec.omegas), [1.0, 2.0, 3.0])

    def test_rejects_invalid_modes(self):
        with self.assertRaises(DomainError):
            ModeSpectrum(((0.0, 1.0),))
        with self.assertRaises(DomainError):
            ModeSpectrum(((1.0, -1.0),))

    def test_from_lines(self):
        spec = ModeSpectrum.from_lines(['omega,nbar\n', '1,1\n', '\n', '3, 1\n'])
        self.assertEqual(spec.modes, ((1.0, 1.0), (3.0, 1.0)))

    def test_from_csv_file(self):
        with tempfile.NamedTemporaryFile('w', suffix='.csv', delete=False, encoding='utf-8') as handle:
            handle.write('omega,nbar\n2.0,4.0\n')
        try:
            self.assertEqual(ModeSpectrum.from_csv(handle.name).modes, ((2.0, 4.0),))
        finally:
            os.remove(handle.name)

    def test_from_csv_rejects_invalid_utf8(self):
        with tempfile.NamedTemporaryFile('wb', suffix='.csv', delete=False) as handle:
            handle.write(b'omega,nbar\n1,1\n\xff\xfe,2\n')
        try:
            with self.assertRaises(SpectrumParseError) as ctx:
                ModeSpectrum.from_csv(handle.name)
        finally:
            os.remove(handle.name)
        self.assertTrue(str(ctx.exception).startswith('row 3:'), str(ctx.exception))

    def test_parse_errors_name_the_row(self):
        cases = [
            (['omega,n\n', '1,1\n'], 'row 1:'),
            (['omega,nbar\n', '1,1\n', '1,x\n'], 'row 3:'),
            (['omega,nbar\n', '1,1,1\n'], 'row 2:'),
            (['omega,nbar\n', '1,nan\n'], 'row 2:'),
            (['omega,nbar\n', '-1,1\n'], 'row 2:'),
        ]
        for lines, prefix in cases:
            with self.assertRaises(SpectrumParseError) as ctx:
                ModeSpectrum.from_lines(lines)
            self.assertTrue(str(ctx.exception).startswith(prefix), str(ctx.exception))


class FieldThermodynamicsTests(SimpleTestCase):

    def setUp(self):
        self.cs = ConstantsSet.natural()

    def test_mean_frequency(self):
        self.assertEqual(mean_frequency(ModeSpectrum.single(3.0, 5.0)), 3.0)
        self.assertEqual(mean_frequency(ModeSpectrum(((1.0, 1.0), (3.0, 1.0)))), 2.0)
        self.assertAlmostEqual(
            mean_frequency(ModeSpectrum(((1.0, 1.0), (2.0, 2.0), (3.0, 3.0)))), 14.0 / 6.0, delta=1e-12,
        )

    def test_mean_frequency_stays_in_occupied_range(self):
        spec = ModeSpectrum(((0.1, 1e-3), (7.0, 0.0), (0.1, 2e-3)))
        self.assertEqual(mean_frequency(spec), 0.1)

    def test_mean_frequency_undefined_without_quanta(self):
        with self.assertRaises(UndefinedMeanError):
            mean_frequency(ModeSpectrum(((1.0, 0.0), (2.0, 0.0))))

    def test_energy(self):
        spec = ModeSpectrum(((1.0, 1.0), (3.0, 1.0)))
        self.assertEqual(field_energy(spec, self.cs), 5.0)

    def test_temperature(self):
        self.assertEqual(field_temperature(ModeSpectrum.single(1.0, 100.0), self.cs).value, 1.0)
        self.assertFalse(field_temperature(ModeSpectrum.single(1.0, 100.0), self.cs).is_qualified)
        low = field_temperature(ModeSpectrum(((1.0, 1.0), (3.0, 1.0))), self.cs)
        self.assertEqual(low.value, 2.0)
        self.assertTrue(low.is_qualified)

    def test_temperature_is_high_occupation_limit_of_oscillator(self):
        cfg = OscillatorConfig(m=1.0, omega=1.0, cs=self.cs)
        field_T = field_temperature(ModeSpectrum.single(1.0, 50.0), self.cs).value
        self.assertAlmostEqual(temperature_closed_form(cfg, 50.0) / field_T, 1.00499, delta=1e-5)

    def test_entropy_and_partition_function(self):
        self.assertEqual(field_entropy(ModeSpectrum(((1.0, 0.0),)), self.cs), 0.0)
        spec = ModeSpectrum(((1.0, 3.0), (2.0, 4.0)))
        self.assertEqual(field_entropy(spec, self.cs), 14.0)
        self.assertEqual(field_log_partition_function(spec), 7.0)
        self.assertEqual(field_free_energy(spec, 2.0, self.cs), -14.0)

    def test_single_mode_reduces_to_oscillator(self):
        for omega, nbar in ((1.0, 1e12), (2.5, 3e13), (0.3, 7e14)):
            cfg = OscillatorConfig(m=1.7, omega=omega, cs=self.cs)
            spec = ModeSpectrum.single(omega, nbar)
            self.assertTrue(math.isclose(field_energy(spec, self.cs), mean_energy(cfg, nbar), rel_tol=1e-14))
            law = area_law(cfg, cfg.amplitude_for_occupation(nbar))
            self.assertTrue(math.isclose(field_entropy(spec, self.cs), law.S, rel_tol=1e-14))
            field_T = field_temperature(spec, self.cs).value
            self.assertTrue(math.isclose(field_T, temperature_closed_form(cfg, nbar), rel_tol=1e-11))

    def test_frequency_scaling(self):
        spec = ModeSpectrum(((1.0, 1.0), (3.0, 1.0)))
        self.assertAlmostEqual(field_energy(spec.scaled(2.0), self.cs), 2.0 * field_energy(spec, self.cs),
                               places=12)


class YukawaPotentialTests(SimpleTestCase):

    def test_point_source(self):
        src = SphericalSource(g=1.0, radius_d=0.0, lambda_C=1.0, profile=SourceProfile.POINT_LIKE)
        self.assertAlmostEqual(yukawa_potential(src, 1.0), 0.3678794, delta=1e-7)

    def test_small_ball_approaches_point_source(self):
        src = SphericalSource(g=1.0, radius_d=0.01, lambda_C=1.0)
        self.assertTrue(math.isclose(yukawa_potential(src, 10.0), point_potential(1.0, 1.0, 10.0),
                                     rel_tol=1e-4))

    def test_uniform_ball_form_factor(self):
        # x cosh x - sinh x = ((x - 1) e^x + (x + 1) e^{-x}) / 2 with x = d/λ.
        for d, lam, r in ((1.0, 1.0, 2.0), (3.0, 0.5, 3.5), (0.2, 2.0, 1.0), (50.0, 1.0, 55.0)):
            x = d / lam
            form = 1.5 / x ** 3 * ((x - 1.0) + (x + 1.0) * math.exp(-2.0 * x))
            expected = form * math.exp(-(r - d) / lam) / r
            src = SphericalSource(g=1.0, radius_d=d, lambda_C=lam)
            self.assertTrue(math.isclose(yukawa_potential(src, r), expected, rel_tol=1e-8), (d, lam, r))

    def test_decreases_with_distance(self):
        sources = (
            SphericalSource(g=1.0, radius_d=0.0, lambda_C=0.7, profile=SourceProfile.POINT_LIKE),
            SphericalSource(g=1.0, radius_d=1.5, lambda_C=0.7),
        )
        for src in sources:
            radii = [src.radius_d + 0.05 + 0.4 * i for i in range(25)]
            values = [yukawa_potential(src, r) for r in radii]
            for near, far in zip(values, values[1:]):
                self.assertGreater(near, far, src.profile)

    def test_point_source_screening(self):
        src = SphericalSource(g=2.0, radius_d=0.0, lambda_C=0.5, profile=SourceProfile.POINT_LIKE)
        for r in (0.01, 0.3, 1.0, 4.0, 12.0):
            self.assertTrue(math.isclose(yukawa_potential(src, r) * r * math.exp(r / 0.5), 2.0, rel_tol=1e-10))

    def test_linear_in_coupling(self):
        a = SphericalSource(g=1.0, radius_d=1.0, lambda_C=1.0)
        b = SphericalSource(g=-2.5, radius_d=1.0, lambda_C=1.0)
        self.assertAlmostEqual(yukawa_potential(b, 3.0), -2.5 * yukawa_potential(a, 3.0), places=14)

    def test_rejects_inner_points_and_bad_tolerance(self):
        src = SphericalSource(g=1.0, radius_d=1.0, lambda_C=1.0)
        with self.assertRaises(DomainError):
            yukawa_potential(src, 1.0)
        with self.assertRaises(DomainError):
            yukawa_potential(src, 2.0, quad_tol=1e-2)

    def test_uniform_ball_needs_radius(self):
        with self.assertRaises(DomainError):
            SphericalSource(g=1.0, radius_d=0.0, lambda_C=1.0)

    def test_from_field_mass(self):
        cs = ConstantsSet.si()
        src = SphericalSource.from_field_mass(1.0, 1e-15, 2.5e-28, cs)
        self.assertEqual(src.lambda_C, compton_wavelength(cs, 2.5e-28))


class AreaLawOccupancyTests(SimpleTestCase):

    def test_unit_sphere_warns(self):
        result = occupancy_estimate(1.0, 1.0)
        self.assertAlmostEqual(result.value, 4.0 * math.pi, places=12)
        self.assertEqual(len(result.warnings), 2)

    def test_large_source(self):
        result = occupancy_estimate(10.0, 0.1)
        self.assertAlmostEqual(result.value, 1.2566e5, delta=1.0)
        self.assertEqual(len(result.warnings), 1)
        self.assertIn('free parameter', result.warnings[0])

    def test_layer_volume_construction_agrees(self):
        self.assertAlmostEqual(layer_volume_occupancy(10.0, 0.1, 2.0) / occupancy_estimate(10.0, 0.1, 2.0).value,
                               1.0, delta=1e-14)

    def test_entropy(self):
        cs = ConstantsSet.natural()
        result = field_entropy_area(10.0, 0.1, 1.0, cs)
        self.assertAlmostEqual(result.value, 2.5133e5, delta=10.0)
        self.assertTrue(result.is_qualified)

    def test_entropy_matches_spectrum_with_estimated_occupancy(self):
        cs = ConstantsSet.natural()
        for d, lam, prefactor in ((10.0, 0.1, 1.0), (3.0, 0.2, 0.5), (0.5, 1.0, 2.0)):
            nbar = occupancy_estimate(d, lam, prefactor).value
            spec = ModeSpectrum.single(1.0, nbar)
            self.assertEqual(field_entropy_area(d, lam, prefactor, cs).value, field_entropy(spec, cs))

    def test_rejects_nonpositive_lengths(self):
        for args in ((0.0, 1.0), (1.0, 0.0), (-1.0, 1.0)):
            with self.assertRaises(DomainError):
                occupancy_estimate(*args)

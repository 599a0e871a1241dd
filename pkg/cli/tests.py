import json
import math
import os
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from coherent_thermo import SCHEMA_VERSION
from coherent_thermo.exceptions import ConvergenceError, DomainError
from .commands import CONVERGENCE_ERROR, USAGE_ERROR, run_validated, sweep_values
from .forms import BlochForm
from .management.commands.oscillator import Command as OscillatorCommand
from .records import OutputRecord, encode_json, format_number, records_to_csv

NATURAL = ('--units', 'natural')


def run(name, *args):
    out = StringIO()
    call_command(name, *args, stdout=out)
    return out.getvalue()


def run_json(name, *args):
    return json.loads(run(name, *args, '--format', 'json'))


def result(record, name):
    return record['results'][name]['value']


class FormatNumberTests(SimpleTestCase):

    def test_floats_keep_seventeen_digits(self):
        self.assertEqual(format_number(0.1), '0.10000000000000001')
        self.assertEqual(float(format_number(1 / 3)), 1 / 3)

    def test_flags_and_integers(self):
        self.assertEqual(format_number(True), 'true')
        self.assertEqual(format_number(12), '12')
        self.assertEqual(format_number(float('inf')), 'inf')

    def test_json_keeps_insertion_order(self):
        self.assertEqual(encode_json({'b': 1, 'a': [0.5, False]}), '{"b": 1, "a": [0.5, false]}')


class OutputRecordTests(SimpleTestCase):

    def make_record(self):
        record = OutputRecord('demo', {'units': 'natural'})
        record.add('T', 1.5, 'natural:temperature')
        record.warn('check me', 'check me')
        record.add_table('grid', ('x', 'y'), [(1, 2.0), (3, 4.0)])
        return record

    def test_key_order(self):
        data = json.loads(self.make_record().to_json())
        self.assertEqual(list(data), ['schema_version', 'command', 'inputs', 'results', 'warnings', 'tables'])
        self.assertEqual(data['schema_version'], SCHEMA_VERSION)
        self.assertEqual(data['warnings'], ['check me'])

    def test_tables_are_omitted_when_empty(self):
        self.assertNotIn('tables', OutputRecord('demo').as_dict())

    def test_long_csv(self):
        lines = self.make_record().to_csv().splitlines()
        self.assertEqual(lines[0], 'section,row,name,value,unit')
        self.assertIn('result,,T,1.5,natural:temperature', lines)
        self.assertIn('table:grid,1,y,4', lines)

    def test_wide_csv_for_several_records(self):
        lines = records_to_csv([self.make_record(), self.make_record()]).splitlines()
        self.assertEqual(len(lines), 3)
        self.assertEqual(lines[0], 'units,T [natural:temperature],warnings')
        self.assertEqual(lines[1], lines[2])

    def test_table_rendering(self):
        text = self.make_record().to_table()
        self.assertTrue(text.startswith('demo (schema %s)' % SCHEMA_VERSION))
        for heading in ('Inputs', 'Results', 'Warnings', 'Table grid'):
            self.assertIn(heading, text)
        self.assertNotIn('&#x27;', text)


class OscillatorCommandTests(SimpleTestCase):

    def oscillator(self, *args):
        return run_json('oscillator', *NATURAL, '--mass', '1', '--omega', '1', *args)

    def test_unit_occupation(self):
        record = self.oscillator('--nbar', '1')
        self.assertEqual(record['command'], 'oscillator')
        self.assertAlmostEqual(result(record, 'T'), 1.0 / (2.0 * math.log(1.5)), delta=1e-12)
        self.assertAlmostEqual(result(record, 'T'), 1.2332, delta=1e-4)
        self.assertAlmostEqual(result(record, 'E'), 1.5, delta=1e-12)
        self.assertAlmostEqual(result(record, 'S'), 2.0, delta=1e-12)
        self.assertAlmostEqual(result(record, 'F'), -result(record, 'T'), delta=1e-12)
        self.assertEqual(result(record, 'lnQ'), 1.0)
        self.assertFalse(result(record, 'zero_point_branch'))
        self.assertEqual(record['results']['T']['unit'], 'natural:temperature')
        self.assertEqual(record['results']['S']['unit'], 'k_B')

    def test_amplitude_input(self):
        # |d|² = 2 l0² n̄ with l0 = 1.
        by_amplitude = self.oscillator('--d-re', '1', '--d-im', '1')
        by_nbar = self.oscillator('--nbar', '1')
        self.assertAlmostEqual(result(by_amplitude, 'nbar'), 1.0, delta=1e-12)
        self.assertAlmostEqual(result(by_amplitude, 'T'), result(by_nbar, 'T'), delta=1e-12)

    def test_zero_point_branch(self):
        record = self.oscillator('--nbar', '0')
        self.assertTrue(result(record, 'zero_point_branch'))
        self.assertEqual(result(record, 'T'), 0.5)
        self.assertEqual(result(record, 'E'), 0.5)
        self.assertEqual(result(record, 'F'), 0.0)
        self.assertEqual(result(record, 'S'), 1.0)
        self.assertTrue(any('zero-point' in note for note in record['warnings']))

    def test_low_occupation_is_flagged(self):
        record = self.oscillator('--nbar', '0.25')
        self.assertGreater(result(record, 'T'), 1.0)
        self.assertTrue(any('below 1/2' in note for note in record['warnings']))

    def test_trajectory_table(self):
        record = self.oscillator('--nbar', '1', '--trajectory-to', '100', '--trajectory-points', '5')
        table = record['tables']['trajectory']
        self.assertEqual(table['columns'], ['nbar', 'T'])
        self.assertEqual(len(table['rows']), 5)
        first, last = table['rows'][0], table['rows'][-1]
        self.assertAlmostEqual(first[0], 1.0, delta=1e-12)
        self.assertAlmostEqual(last[0], 100.0, delta=1e-9)
        # Along ω = αn̄ the closed form reads T = α / (2 ln(1 + 1/(2n̄))).
        self.assertAlmostEqual(last[1], 1.0 / (2.0 * math.log1p(0.005)), delta=1e-6 * last[1])

    def test_negative_occupation_is_a_usage_error(self):
        with self.assertRaises(CommandError) as cm:
            self.oscillator('--nbar', '-1')
        self.assertEqual(cm.exception.returncode, USAGE_ERROR)

    def test_occupation_and_amplitude_are_exclusive(self):
        with self.assertRaises(CommandError) as cm:
            self.oscillator('--nbar', '1', '--d-re', '1')
        self.assertEqual(cm.exception.returncode, USAGE_ERROR)
        self.assertIn('not both', str(cm.exception))

    def test_missing_input(self):
        with self.assertRaises(CommandError) as cm:
            self.oscillator()
        self.assertEqual(cm.exception.returncode, USAGE_ERROR)

    def test_repeated_runs_are_byte_identical(self):
        args = ('oscillator', '--mass', '9.1e-31', '--omega', '1e13', '--nbar', '3.7', '--format', 'json')
        self.assertEqual(run(*args), run(*args))

    def test_macroscopic_occupation_skips_fock_weights(self):
        record = run_json('oscillator', '--units', 'si', '--mass', '1', '--omega', '1', '--d-re', '1')
        self.assertGreater(result(record, 'nbar'), 1e33)
        self.assertNotIn('fock_n_max', record['results'])
        self.assertNotIn('fock_norm', record['results'])
        self.assertTrue(any('not built' in note for note in record['warnings']))
        for name in ('T', 'E', 'S'):
            self.assertTrue(math.isfinite(result(record, name)) and result(record, name) > 0, name)

    def test_si_units(self):
        record = run_json('oscillator', '--units', 'si', '--mass', '1e-26', '--omega', '1e13', '--nbar', '42')
        self.assertEqual(record['inputs']['units'], 'si')
        self.assertEqual(record['results']['T']['unit'], 'K')

    def test_other_formats(self):
        args = (*NATURAL, '--mass', '1', '--omega', '1', '--nbar', '1')
        self.assertTrue(run('oscillator', *args, '--format', 'csv').startswith('section,row,name,value,unit\n'))
        self.assertIn('Results', run('oscillator', *args, '--format', 'table'))

    def test_version_carries_schema(self):
        self.assertIn(SCHEMA_VERSION, OscillatorCommand().get_version())


class BlochCommandTests(SimpleTestCase):

    def bloch(self, *args):
        return run_json('bloch', *NATURAL, '--omega', '1', *args)

    def test_cold_bath_reaches_zero_point(self):
        record = self.bloch('--t-hb', '0.01')
        self.assertAlmostEqual(result(record, 'T_Bl'), 0.5, delta=1e-10)
        self.assertEqual(result(record, 'T_zero_point'), 0.5)
        self.assertNotIn('q_width', record['results'])

    def test_hot_bath(self):
        self.assertAlmostEqual(result(self.bloch('--t-hb', '10'), 'T_Bl'), 10.0083, delta=1e-4)

    def test_distribution_table_is_symmetric(self):
        record = self.bloch('--t-hb', '1', '--mass', '1', '--q-points', '5')
        rows = record['tables']['distribution']['rows']
        self.assertEqual(len(rows), 5)
        self.assertEqual(rows[0][0], -rows[-1][0])
        self.assertEqual(rows[0][1], rows[-1][1])
        self.assertEqual(rows[2][1], result(record, 'b_peak'))

    def test_grid_needs_mass(self):
        with self.assertRaises(CommandError) as cm:
            self.bloch('--t-hb', '1', '--q-points', '5')
        self.assertEqual(cm.exception.returncode, USAGE_ERROR)


class FieldCommandTests(SimpleTestCase):

    def setUp(self):
        handle = tempfile.NamedTemporaryFile('w', suffix='.csv', delete=False)
        handle.write('omega,nbar\n1,1\n3,1\n')
        handle.close()
        self.addCleanup(os.remove, handle.name)
        self.spectrum = handle.name

    def field(self, *args):
        return run_json('field', *NATURAL, *args)

    def test_spectrum(self):
        record = self.field('--spectrum', self.spectrum)
        self.assertEqual(record['inputs']['modes'], 2)
        self.assertAlmostEqual(result(record, 'omega_bar'), 2.0, delta=1e-12)
        self.assertAlmostEqual(result(record, 'E'), 5.0, delta=1e-12)
        self.assertAlmostEqual(result(record, 'T'), 2.0, delta=1e-12)
        self.assertAlmostEqual(result(record, 'S'), 4.0, delta=1e-12)
        self.assertAlmostEqual(result(record, 'F'), -4.0, delta=1e-12)
        self.assertTrue(any('validity threshold' in note for note in record['warnings']))

    def test_area_law(self):
        record = self.field('--radius', '10', '--compton', '0.1')
        self.assertAlmostEqual(result(record, 'nbar_estimate'), 1.2566e5, delta=1.0)
        self.assertAlmostEqual(result(record, 'S_area_law'), 2.5133e5, delta=2.0)
        self.assertAlmostEqual(result(record, 'nbar_layer_volume'), result(record, 'nbar_estimate'),
                               delta=1e-9 * result(record, 'nbar_estimate'))

    def test_field_mass_sets_compton_wavelength(self):
        record = self.field('--radius', '10', '--field-mass', '10')
        self.assertAlmostEqual(result(record, 'lambda_C'), 0.1, delta=1e-15)

    def test_potential(self):
        record = self.field('--radius', '1', '--compton', '2', '--potential-at', '3', '--profile', 'point_like')
        self.assertAlmostEqual(result(record, 'phi'), math.exp(-1.5) / 3.0, delta=1e-15)

    def test_potential_inside_source_is_a_usage_error(self):
        with self.assertRaises(CommandError) as cm:
            self.field('--radius', '1', '--compton', '2', '--potential-at', '1')
        self.assertEqual(cm.exception.returncode, USAGE_ERROR)

    def test_missing_spectrum_file(self):
        with self.assertRaises(CommandError) as cm:
            self.field('--spectrum', self.spectrum + '.missing')
        self.assertEqual(cm.exception.returncode, USAGE_ERROR)

    def test_undecodable_spectrum_is_a_usage_error(self):
        with open(self.spectrum, 'wb') as handle:
            handle.write(b'omega,nbar\n1,1\n\xff\xfe,2\n')
        with self.assertRaises(CommandError) as cm:
            self.field('--spectrum', self.spectrum)
        self.assertEqual(cm.exception.returncode, USAGE_ERROR)
        self.assertIn('row 3', str(cm.exception))

    def test_radius_needs_one_length_scale(self):
        for extra in ((), ('--compton', '1', '--field-mass', '1')):
            with self.assertRaises(CommandError):
                self.field('--radius', '1', *extra)


class BlackholeCommandTests(SimpleTestCase):

    def test_boltzmann_route_at_beta_four(self):
        record = run_json('blackhole', '--units', 'si', '--solar-masses', '1', '--beta', '4')
        self.assertTrue(result(record, 'route1_matches'))
        self.assertFalse(result(record, 'route2_matches'))
        self.assertTrue(result(record, 'kappa_invariant'))
        self.assertAlmostEqual(result(record, 'r_s'), 2954.0, delta=2.0)
        self.assertAlmostEqual(math.log10(result(record, 'S_BH')), 77.02, delta=0.02)

    def test_coherent_route_at_beta_eight(self):
        record = run_json('blackhole', '--units', 'si', '--solar-masses', '1', '--beta', '8')
        self.assertFalse(result(record, 'route1_matches'))
        self.assertTrue(result(record, 'route2_matches'))

    def test_one_planck_patch(self):
        record = run_json('blackhole', *NATURAL, '--area', '4')
        self.assertAlmostEqual(result(record, 'S_BH'), 1.0, delta=1e-12)
        self.assertEqual(record['inputs']['kappa'], 2)

    def test_constant_override(self):
        # λ_P² = G in natural units.
        record = run_json('blackhole', *NATURAL, '--const', 'G=2', '--area', '8')
        self.assertEqual(record['inputs']['G'], 2.0)
        self.assertAlmostEqual(result(record, 'S_BH'), 1.0, delta=1e-12)

    def test_pinned_constant_cannot_be_overridden(self):
        with self.assertRaises(CommandError) as cm:
            run_json('blackhole', *NATURAL, '--const', 'c=2', '--area', '8')
        self.assertEqual(cm.exception.returncode, USAGE_ERROR)

    def test_solar_masses_need_si(self):
        with self.assertRaises(CommandError) as cm:
            run_json('blackhole', *NATURAL, '--solar-masses', '1')
        self.assertEqual(cm.exception.returncode, USAGE_ERROR)

    def test_exactly_one_size(self):
        with self.assertRaises(CommandError):
            run_json('blackhole', *NATURAL, '--mass', '1', '--area', '4')


class SweepTests(SimpleTestCase):

    def sweep(self, *args):
        return [json.loads(line) for line in run('sweep', *args).splitlines()]

    def test_values(self):
        self.assertEqual(sweep_values(1.0, 100.0, 3, 'log'), [1.0, 10.0, 100.0])
        self.assertEqual(sweep_values(0.0, 1.0, 5, 'linear'), [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_oscillator_occupation_sweep(self):
        records = self.sweep('oscillator', *NATURAL, '--var', 'nbar', '--from', '1', '--to', '100',
                             '--points', '5', '--mass', '1', '--omega', '1')
        self.assertEqual(len(records), 5)
        self.assertEqual([record['inputs']['nbar'] for record in records][0::4], [1.0, 100.0])
        temperatures = [result(record, 'T') for record in records]
        self.assertTrue(all(b < a for a, b in zip(temperatures, temperatures[1:])))
        # T approaches ħω/k_B at large occupation.
        self.assertAlmostEqual(temperatures[-1], 1.0, delta=0.01)

    def test_two_points_are_the_end_points(self):
        records = self.sweep('bloch', *NATURAL, '--var', 't-hb', '--from', '0.3', '--to', '7',
                             '--points', '2', '--omega', '1')
        self.assertEqual([record['inputs']['t_hb'] for record in records], [0.3, 7.0])

    def test_bloch_sweep_is_monotone(self):
        records = self.sweep('bloch', *NATURAL, '--var', 't-hb', '--from', '0.05', '--to', '50',
                             '--points', '12', '--omega', '1')
        values = [result(record, 'T_Bl') for record in records]
        self.assertTrue(all(b > a for a, b in zip(values, values[1:])))

    def test_swept_occupation_replaces_amplitude(self):
        records = self.sweep('oscillator', *NATURAL, '--var', 'nbar', '--from', '1', '--to', '2',
                             '--points', '2', '--mass', '1', '--omega', '1', '--d-re', '3')
        self.assertEqual(result(records[0], 'nbar'), 1.0)

    def test_blackhole_mass_sweep(self):
        records = self.sweep('blackhole', *NATURAL, '--var', 'mass', '--from', '1', '--to', '10',
                             '--points', '3', '--area', '4')
        ratios = [result(record, 'S_BH') for record in records]
        self.assertAlmostEqual(ratios[-1] / ratios[0], 100.0, delta=1e-9)

    @override_settings(SWEEP_WORKERS=1)
    def test_order_does_not_depend_on_workers(self):
        args = ('sweep', 'field', *NATURAL, '--var', 'radius', '--from', '1', '--to', '50', '--points', '7',
                '--compton', '0.5')
        serial = run(*args)
        with self.settings(SWEEP_WORKERS=6):
            self.assertEqual(run(*args), serial)

    def test_wide_csv(self):
        text = run('sweep', 'field', *NATURAL, '--var', 'radius', '--from', '1', '--to', '2',
                   '--points', '3', '--compton', '0.5', '--format', 'csv')
        lines = text.splitlines()
        self.assertEqual(len(lines), 4)
        self.assertIn('nbar_estimate [1]', lines[0].split(','))

    def test_bad_grids_are_usage_errors(self):
        base = ('oscillator', *NATURAL, '--mass', '1', '--omega', '1', '--var', 'nbar')
        for grid in (('--from', '5', '--to', '5', '--points', '3'),
                     ('--from', '0', '--to', '5', '--points', '3'),
                     ('--from', '1', '--to', '5', '--points', '1')):
            with self.assertRaises(CommandError) as cm:
                run('sweep', *base, *grid)
            self.assertEqual(cm.exception.returncode, USAGE_ERROR, grid)

    def test_unknown_variable(self):
        with self.assertRaises(CommandError) as cm:
            run('sweep', 'field', *NATURAL, '--var', 'nbar', '--from', '1', '--to', '2', '--points', '2')
        self.assertEqual(cm.exception.returncode, USAGE_ERROR)
        self.assertIn('radius', str(cm.exception))

    def test_linear_grid_may_start_at_zero(self):
        records = self.sweep('oscillator', *NATURAL, '--var', 'nbar', '--from', '0', '--to', '1',
                             '--points', '3', '--scale', 'linear', '--mass', '1', '--omega', '1')
        self.assertTrue(result(records[0], 'zero_point_branch'))


class SelfCheckCommandTests(SimpleTestCase):

    def test_passes(self):
        record = run_json('selfcheck')
        self.assertTrue(result(record, 'passed'))
        self.assertEqual(result(record, 'failures'), 0)
        self.assertEqual(len(record['tables']['reports']['rows']), result(record, 'checks'))
        self.assertEqual(record['warnings'], [])


class ErrorMappingTests(SimpleTestCase):

    def test_convergence_failures_exit_with_three(self):
        def diverging(data):
            raise ConvergenceError('step size underflow')

        with self.assertRaises(CommandError) as cm:
            run_validated(BlochForm, diverging, {'units': 'natural', 'omega': '1', 't_hb': '1'})
        self.assertEqual(cm.exception.returncode, CONVERGENCE_ERROR)

    def test_domain_errors_exit_with_two(self):
        def out_of_domain(data):
            raise DomainError('nbar must be >= 0')

        with self.assertRaises(CommandError) as cm:
            run_validated(BlochForm, out_of_domain, {'units': 'natural', 'omega': '1', 't_hb': '1'})
        self.assertEqual(cm.exception.returncode, USAGE_ERROR)

"""
Shared plumbing for the physics management commands.

Library errors are translated here: invalid options and DomainError exit
with status 2, ConvergenceError with status 3.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from coherent_thermo import SCHEMA_VERSION, __version__
from coherent_thermo.exceptions import ConvergenceError, DomainError

from .forms import BlackholeForm, BlochForm, FieldForm, OscillatorForm
from .runners import RUNNERS

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
CONVERGENCE_ERROR = 3

RECORD_FORMATS = ('json', 'csv', 'table')

# The swept option replaces these alternatives.
SWEEP_CLEARS = {
    ('oscillator', 'nbar'): ('d_re', 'd_im'),
    ('blackhole', 'mass'): ('solar_masses', 'area'),
}

SWEEP_FORMS = {
    'oscillator': OscillatorForm,
    'bloch': BlochForm,
    'field': FieldForm,
    'blackhole': BlackholeForm,
}

# Command-level options; they never reach a physics form.
DJANGO_OPTIONS = {
    'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color', 'force_color', 'skip_checks',
    'format', 'target', 'var', 'start', 'stop', 'points', 'scale',
}


def add_common_arguments(parser):
    parser.add_argument('--units', choices=['si', 'natural'], default=settings.DEFAULT_UNIT_SYSTEM,
                        help='Unit system (default from COHTHERM_UNITS)')
    parser.add_argument('--const', action='append', metavar='NAME=VALUE',
                        help='Override one of hbar, k_B, c, G; may be repeated')


def add_oscillator_arguments(parser):
    parser.add_argument('--mass', help='Oscillator mass')
    parser.add_argument('--omega', help='Angular frequency')
    parser.add_argument('--nbar', help='Mean occupation')
    parser.add_argument('--d-re', dest='d_re', help='Real part of the displacement d')
    parser.add_argument('--d-im', dest='d_im', help='Imaginary part of the displacement d')
    parser.add_argument('--trajectory-to', dest='trajectory_to',
                        help='Integrate the temperature equation from nbar to this occupation')
    parser.add_argument('--trajectory-points', dest='trajectory_points',
                        help='Samples in the trajectory table (default 20)')


def add_bloch_arguments(parser):
    parser.add_argument('--omega', help='Angular frequency')
    parser.add_argument('--t-hb', dest='t_hb', help='Heat-bath temperature')
    parser.add_argument('--mass', help='Oscillator mass, needed for the width and q-grid')
    parser.add_argument('--q-max', dest='q_max', help='Half-width of the q-grid (default 5 widths)')
    parser.add_argument('--q-points', dest='q_points', help='Points in the q-grid')


def add_field_arguments(parser):
    parser.add_argument('--spectrum', help='CSV file with header omega,nbar')
    parser.add_argument('--radius', help='Source radius d')
    parser.add_argument('--compton', help='Compton wavelength of the field quantum')
    parser.add_argument('--field-mass', dest='field_mass', help='Mass of the field quantum')
    parser.add_argument('--prefactor', help='Order-of-magnitude prefactor of the area law (default 1)')
    parser.add_argument('--coupling', help='Source coupling g (default 1)')
    parser.add_argument('--profile', choices=['uniform_ball', 'point_like'], help='Source density profile')
    parser.add_argument('--potential-at', dest='potential_at', help='Evaluate the Yukawa field at this radius')


def add_blackhole_arguments(parser):
    parser.add_argument('--solar-masses', dest='solar_masses', help='Mass in solar masses (SI only)')
    parser.add_argument('--mass', help='Mass')
    parser.add_argument('--area', help='Horizon area')
    parser.add_argument('--beta', help='Patch-area factor beta (default 4)')
    parser.add_argument('--kappa', help='States per patch (integer >= 2, default 2)')


def form_data(options):
    return {
        name: value for name, value in options.items()
        if name not in DJANGO_OPTIONS and value is not None
    }


def form_errors(form) -> str:
    messages = []
    for name, errors in form.errors.items():
        label = '' if name == '__all__' else f"--{name.replace('_', '-')}: "
        messages.extend(f"{label}{error}" for error in errors)
    return '; '.join(messages)


def run_validated(form_class, runner, data):
    """Bind ``data`` to the form, run, and map failures to exit statuses."""
    form = form_class(data=data)
    if not form.is_valid():
        raise CommandError(form_errors(form), returncode=USAGE_ERROR)
    try:
        return runner(form.cleaned_data)
    except ConvergenceError as exc:
        logger.error("%s: %s", runner.__name__, exc)
        raise CommandError(str(exc), returncode=CONVERGENCE_ERROR)
    except DomainError as exc:
        raise CommandError(str(exc), returncode=USAGE_ERROR)


class PhysicsCommand(BaseCommand):
    """A command that validates its options with ``form_class`` and prints one record."""
    form_class = None
    runner = None
    formats = RECORD_FORMATS
    default_format = 'table'
    requires_system_checks = []

    def get_version(self):
        return f"{__version__} (schema {SCHEMA_VERSION})"

    def add_arguments(self, parser):
        add_common_arguments(parser)
        parser.add_argument('--format', choices=self.formats, default=self.default_format,
                            help='Output format (default %(default)s)')
        self.add_physics_arguments(parser)

    def add_physics_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        record = run_validated(self.form_class, self.runner, form_data(options))
        self.stdout.write(record.render(options['format']), ending='')


def sweep_values(start: float, stop: float, points: int, scale: str):
    """Grid with the end points reproduced exactly."""
    grid = np.geomspace(start, stop, points) if scale == 'log' else np.linspace(start, stop, points)
    values = [float(value) for value in grid]
    values[0], values[-1] = start, stop
    return values


def run_sweep(target: str, field_name: str, values, base_data, workers: int):
    """Evaluate ``target`` at every value; records come back in input order."""
    form_class = SWEEP_FORMS[target]
    cleared = SWEEP_CLEARS.get((target, field_name), ())

    def evaluate(value):
        data = {name: option for name, option in base_data.items() if name not in cleared}
        data[field_name] = value
        return run_validated(form_class, RUNNERS[target], data)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        records = list(executor.map(evaluate, values))
    logger.info("sweep %s over %s: %d points", target, field_name, len(records))
    return records

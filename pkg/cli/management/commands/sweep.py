from django.conf import settings
from django.core.management.base import CommandError

from cli.commands import (
    USAGE_ERROR, PhysicsCommand, add_blackhole_arguments, add_bloch_arguments, add_field_arguments,
    add_oscillator_arguments, form_data, form_errors, run_sweep, sweep_values,
)
from cli.forms import SWEEP_VARIABLES, SweepForm
from cli.records import records_to_csv


class SharedOptions:
    """Adds each flag once; --mass and --omega are declared by several targets."""

    def __init__(self, parser):
        self.parser = parser
        self.seen = set()

    def add_argument(self, flag, *args, **kwargs):
        if flag not in self.seen:
            self.seen.add(flag)
            self.parser.add_argument(flag, *args, **kwargs)


class Command(PhysicsCommand):
    help = 'Evaluate one physics command over a grid of one of its inputs'
    formats = ('jsonl', 'csv')
    default_format = 'jsonl'

    def add_physics_arguments(self, parser):
        parser.add_argument('target', choices=list(SWEEP_VARIABLES), help='Command to sweep')
        parser.add_argument('--var', required=True,
                            help='Swept input: nbar or mass (oscillator), t-hb or mass (bloch), '
                                 'radius (field), mass (blackhole)')
        parser.add_argument('--from', dest='start', required=True, help='First grid value')
        parser.add_argument('--to', dest='stop', required=True, help='Last grid value')
        parser.add_argument('--points', required=True, help='Grid size (>= 2)')
        parser.add_argument('--scale', choices=['log', 'linear'], default='log',
                            help='Grid spacing (default %(default)s)')
        shared = SharedOptions(parser)
        for add_target_arguments in (add_oscillator_arguments, add_bloch_arguments,
                                     add_field_arguments, add_blackhole_arguments):
            add_target_arguments(shared)

    def handle(self, *args, **options):
        sweep = SweepForm(data={name: options.get(name) for name in SweepForm.base_fields})
        if not sweep.is_valid():
            raise CommandError(form_errors(sweep), returncode=USAGE_ERROR)
        grid = sweep.cleaned_data

        values = sweep_values(grid['start'], grid['stop'], grid['points'], grid['scale'])
        records = run_sweep(grid['target'], grid['field_name'], values, form_data(options),
                            settings.SWEEP_WORKERS)
        if options['format'] == 'csv':
            self.stdout.write(records_to_csv(records), ending='')
        else:
            self.stdout.write(''.join(record.to_jsonl() for record in records), ending='')

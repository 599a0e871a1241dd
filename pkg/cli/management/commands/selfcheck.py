from django.core.management.base import CommandError

from cli.commands import PhysicsCommand
from cli.records import OutputRecord
from verification.suite import DEFAULT_SEED, run_self_check

SELF_CHECK_FAILED = 1


class Command(PhysicsCommand):
    help = 'Run every computation against its independent oracle and report pass/fail'

    def add_arguments(self, parser):
        parser.add_argument('--seed', type=int, default=DEFAULT_SEED,
                            help='Seed for the randomized samples (default %(default)s)')
        parser.add_argument('--format', choices=self.formats, default=self.default_format,
                            help='Output format (default %(default)s)')

    def handle(self, *args, **options):
        result = run_self_check(options['seed'])
        record = OutputRecord('selfcheck', {'seed': options['seed']})
        record.add('checks', len(result.reports), '1')
        record.add('failures', len(result.failures), '1')
        record.add('passed', result.passed, '1')
        record.warn(*(f"{report.quantity}: relative error {report.relative_error:.3e} "
                      f"exceeds {report.tolerance:.1e}" for report in result.failures))
        record.add_table('reports', ('quantity', 'primary', 'oracle', 'relative_error', 'tolerance', 'passed'), [
            (report.quantity, report.primary_value, report.oracle_value, report.relative_error, report.tolerance,
             report.passed)
            for report in result.reports
        ])
        self.stdout.write(record.render(options['format']), ending='')
        if not result.passed:
            raise CommandError(f"{len(result.failures)} of {len(result.reports)} checks failed",
                               returncode=SELF_CHECK_FAILED)

from cli.commands import PhysicsCommand, add_blackhole_arguments
from cli.forms import BlackholeForm
from cli.runners import run_blackhole


class Command(PhysicsCommand):
    help = 'Horizon entropy and its two coherent-state routes (beta = 4 and beta = 8)'
    form_class = BlackholeForm
    runner = staticmethod(run_blackhole)

    def add_physics_arguments(self, parser):
        add_blackhole_arguments(parser)

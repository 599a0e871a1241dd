from cli.commands import PhysicsCommand, add_bloch_arguments
from cli.forms import BlochForm
from cli.runners import run_bloch


class Command(PhysicsCommand):
    help = 'Bloch temperature of an oscillator in a heat bath, optionally with b(q) on a grid'
    form_class = BlochForm
    runner = staticmethod(run_bloch)

    def add_physics_arguments(self, parser):
        add_bloch_arguments(parser)

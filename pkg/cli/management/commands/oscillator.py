from cli.commands import PhysicsCommand, add_oscillator_arguments
from cli.forms import OscillatorForm
from cli.runners import run_oscillator


class Command(PhysicsCommand):
    help = 'Thermodynamics of a coherent oscillator state given nbar or the displacement d'
    form_class = OscillatorForm
    runner = staticmethod(run_oscillator)

    def add_physics_arguments(self, parser):
        add_oscillator_arguments(parser)

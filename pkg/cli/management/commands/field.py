from cli.commands import PhysicsCommand, add_field_arguments
from cli.forms import FieldForm
from cli.runners import run_field


class Command(PhysicsCommand):
    help = 'Scalar-field coherent state: mode spectrum, area-law occupancy and Yukawa potential'
    form_class = FieldForm
    runner = staticmethod(run_field)

    def add_physics_arguments(self, parser):
        add_field_arguments(parser)

from django.apps import AppConfig


class ThermoConfig(AppConfig):
    name = 'thermo'
    verbose_name = 'Coherent-state thermodynamics'

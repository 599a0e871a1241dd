from django.apps import AppConfig


class CoherentConfig(AppConfig):
    name = 'coherent'
    verbose_name = 'Coherent states of the harmonic oscillator'

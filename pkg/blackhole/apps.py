from django.apps import AppConfig


class BlackholeConfig(AppConfig):
    name = 'blackhole'
    verbose_name = 'Horizon entropy'

from django.apps import AppConfig


class ConstantsConfig(AppConfig):
    name = 'constants'
    verbose_name = 'Physical constants and unit systems'

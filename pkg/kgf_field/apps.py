from django.apps import AppConfig


class KgfFieldConfig(AppConfig):
    name = 'kgf_field'
    verbose_name = 'Scalar field around a static source'

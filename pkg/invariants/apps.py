from django.apps import AppConfig


class InvariantsConfig(AppConfig):
    name = 'invariants'
    verbose_name = 'Equivariant Stanley-Reisner invariants'

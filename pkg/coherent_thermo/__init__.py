"""Thermodynamics of coherent states: oscillator, scalar field, horizon."""

__version__ = '1.0.0'

# Bumped whenever the OutputRecord layout changes.
SCHEMA_VERSION = '1.0'

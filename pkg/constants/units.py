"""
Physical constants, unit-system selection and derived length scales.

Every formula in the other apps takes its ħ, k_B, c and G from a
``ConstantsSet`` so that the same code path serves SI and natural units.
"""
import enum
import logging
import math
import numbers
from dataclasses import dataclass, replace
from typing import Dict, Mapping

from coherent_thermo.exceptions import DomainError

logger = logging.getLogger(__name__)


class UnitSystem(str, enum.Enum):
    SI = 'si'
    NATURAL = 'natural'


# CODATA 2018 recommended values.
CODATA_2018 = {
    'hbar': 1.054571817e-34,   # J·s (exact, from the defined h)
    'k_B': 1.380649e-23,       # J/K (exact)
    'c': 299792458.0,          # m/s (exact)
    'G': 6.67430e-11,          # m³/(kg·s²)
}

# Unit strings attached to CLI output, keyed by physical dimension.
SI_UNITS = {
    'action': 'J*s',
    'area': 'm^2',
    'dimensionless': '1',
    'energy': 'J',
    'entropy': 'k_B',
    'frequency': 'rad/s',
    'length': 'm',
    'mass': 'kg',
    'probability_density': '1/m',
    'temperature': 'K',
    'field': 'g/m',
}

CONSTANT_NAMES = ('hbar', 'k_B', 'c', 'G')


@dataclass(frozen=True)
class ConstantsSet:
    """
    Immutable bundle of ħ, k_B, c and G under one unit system.

    In natural units ħ = k_B = c = 1 exactly; only G may differ from 1.
    """
    hbar: float
    k_B: float
    c: float
    G: float
    unit_system: UnitSystem = UnitSystem.SI

    def __post_init__(self):
        for name in CONSTANT_NAMES:
            value = getattr(self, name)
            if not (isinstance(value, numbers.Real) and math.isfinite(value) and value > 0):
                raise DomainError(f"constant {name} must be a positive finite number, got {value!r}")
        if self.unit_system is UnitSystem.NATURAL:
            pinned = [name for name in ('hbar', 'k_B', 'c') if getattr(self, name) != 1]
            if pinned:
                raise DomainError(
                    f"natural units fix hbar = k_B = c = 1; cannot set {', '.join(pinned)}"
                )

    @classmethod
    def si(cls, **overrides: float) -> 'ConstantsSet':
        """CODATA 2018 SI values, any of which may be pinned by keyword."""
        values = dict(CODATA_2018)
        values.update(cls._check_names(overrides))
        return cls(unit_system=UnitSystem.SI, **values)

    @classmethod
    def natural(cls, G: float = 1.0) -> 'ConstantsSet':
        return cls(hbar=1.0, k_B=1.0, c=1.0, G=G, unit_system=UnitSystem.NATURAL)

    @classmethod
    def build(cls, unit_system, overrides: Mapping[str, float] = None) -> 'ConstantsSet':
        """Construct from a unit-system name and ``name=value`` overrides."""
        overrides = cls._check_names(overrides or {})
        try:
            unit_system = UnitSystem(unit_system)
        except ValueError:
            raise DomainError(f"unknown unit system {unit_system!r}; expected 'si' or 'natural'")
        if unit_system is UnitSystem.SI:
            return cls.si(**overrides)
        base = cls.natural()
        return replace(base, **overrides)

    @staticmethod
    def _check_names(overrides: Mapping[str, float]) -> Dict[str, float]:
        unknown = sorted(set(overrides) - set(CONSTANT_NAMES))
        if unknown:
            raise DomainError(
                f"unknown constant(s) {', '.join(unknown)}; expected one of {', '.join(CONSTANT_NAMES)}"
            )
        return {name: float(value) for name, value in overrides.items()}

    def unit(self, dimension: str) -> str:
        """Unit string for a physical dimension in this unit system."""
        if dimension not in SI_UNITS:
            raise KeyError(dimension)
        if dimension in ('entropy', 'dimensionless'):
            return SI_UNITS[dimension]
        if self.unit_system is UnitSystem.NATURAL:
            return f"natural:{dimension}"
        return SI_UNITS[dimension]

    def as_dict(self) -> Dict[str, object]:
        return {
            'unit_system': self.unit_system.value,
            'hbar': self.hbar,
            'k_B': self.k_B,
            'c': self.c,
            'G': self.G,
        }


def planck_length(cs: ConstantsSet) -> float:
    """λ_P = sqrt(ħG/c³)."""
    return math.sqrt(cs.hbar * cs.G / cs.c ** 3)


def compton_wavelength(cs: ConstantsSet, m: float) -> float:
    """λ_C = ħ/(mc) for a quantum of mass ``m``."""
    if not m > 0:
        raise DomainError(f"mass must be positive, got {m!r}")
    return cs.hbar / (m * cs.c)

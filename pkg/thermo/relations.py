"""
Generic thermodynamic relations built on a partition function.

    F = -k_B T ln Q,    S = -∂F/∂T,    E = F + T S

For coherent states ln Q = n̄, so the temperature dependence of the free
energy enters only through n̄(T). ``OccupationModel`` makes that
dependence an explicit object; the linear model n̄ ∝ T is the default.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from coherent_thermo.exceptions import DomainError
from constants.units import ConstantsSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThermoPoint:
    """Temperature, ln Q, free energy, entropy and energy of one state."""
    T: float
    lnQ: float
    F: float
    S: float
    E: float

    def closure_residuals(self, cs: ConstantsSet) -> Tuple[float, float]:
        """Relative residuals of F = -k_B T ln Q and E = F + T S."""
        f_expected = -cs.k_B * self.T * self.lnQ
        f_scale = max(abs(self.F), abs(f_expected), cs.k_B * self.T)
        e_expected = self.F + self.T * self.S
        e_scale = max(abs(self.E), abs(self.F), abs(self.T * self.S))
        return (
            abs(self.F - f_expected) / f_scale if f_scale else 0.0,
            abs(self.E - e_expected) / e_scale if e_scale else 0.0,
        )

    def is_closed(self, cs: ConstantsSet, rtol: float = 1e-12) -> bool:
        return all(residual <= rtol for residual in self.closure_residuals(cs))


@dataclass(frozen=True)
class OccupationModel:
    """
    Mean occupation as a function of temperature.

    ``dnbar_dT`` is optional; when absent, callers fall back to finite
    differences. ``domain`` is the open temperature interval on which
    ``nbar_of_T`` is defined.
    """
    nbar_of_T: Callable[[float], float]
    description: str
    dnbar_dT: Optional[Callable[[float], float]] = None
    domain: Tuple[float, float] = (0.0, math.inf)
    is_linear: bool = False

    @classmethod
    def linear(cls, gamma: float) -> 'OccupationModel':
        """n̄ = γT, the dependence implied by the area law."""
        if not gamma >= 0:
            raise DomainError(f"linear occupation slope must be >= 0, got {gamma!r}")
        return cls(
            nbar_of_T=lambda T: gamma * T,
            description=f"linear: nbar = {gamma!r} * T",
            dnbar_dT=lambda T: gamma,
            is_linear=True,
        )

    @classmethod
    def linear_through(cls, nbar: float, T: float) -> 'OccupationModel':
        """The linear model passing through (T, n̄)."""
        if not T > 0:
            raise DomainError(f"temperature must be positive, got {T!r}")
        return cls.linear(nbar / T)

    @classmethod
    def constant(cls, value: float) -> 'OccupationModel':
        if not value >= 0:
            raise DomainError(f"occupation must be >= 0, got {value!r}")
        return cls(
            nbar_of_T=lambda T: value,
            description=f"constant: nbar = {value!r}",
            dnbar_dT=lambda T: 0.0,
        )

    def contains(self, T: float) -> bool:
        low, high = self.domain
        return low < T < high


def _check_temperature(T: float):
    if not (math.isfinite(T) and T > 0):
        raise DomainError(f"temperature must be positive, got {T!r}")


def free_energy(T: float, lnQ: float, cs: ConstantsSet) -> float:
    """F = -k_B T ln Q."""
    _check_temperature(T)
    return -cs.k_B * T * lnQ


def entropy_numeric(model: OccupationModel, T: float, cs: ConstantsSet) -> float:
    """
    S = -∂F/∂T with F(T) = -k_B T n̄(T), by central differences.

    Step h = max(1e-6·T, 1e-12), refined by one Richardson level using
    h and h/2.
    """
    _check_temperature(T)
    h = max(1e-6 * T, 1e-12)
    if not (model.contains(T - h) and model.contains(T + h)):
        raise DomainError(
            f"temperature {T!r} is too close to the model domain {model.domain} "
            f"for a derivative step of {h!r}"
        )

    def minus_free_energy(t):
        return cs.k_B * t * model.nbar_of_T(t)

    def central(step):
        return (minus_free_energy(T + step) - minus_free_energy(T - step)) / (2.0 * step)

    coarse, fine = central(h), central(h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def entropy_analytic(nbar: float, T_dnbar_dT: float, cs: ConstantsSet) -> float:
    """
    S = k_B n̄ + k_B T ∂n̄/∂T.

    The second argument is the product T·∂n̄/∂T supplied by the caller's
    occupation model; it equals n̄ for the linear model.
    """
    if not nbar >= 0:
        raise DomainError(f"mean occupation must be >= 0, got {nbar!r}")
    return cs.k_B * (nbar + T_dnbar_dT)


def energy_from_occupation_slope(T: float, dnbar_dT: float, cs: ConstantsSet) -> float:
    """E = k_B T² ∂n̄/∂T."""
    _check_temperature(T)
    return cs.k_B * T * T * dnbar_dT

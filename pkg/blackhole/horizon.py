"""
Schwarzschild horizon thermodynamics and its coherent-state reading.

The horizon is tiled by patches of area αλ_P², each with κ states, so
ln Q_BH = (A/(αλ_P²)) ln κ. With α = β ln κ this becomes ln Q_BH = n̄,
n̄ = A/(βλ_P²), which is the coherent-state form Q = e^{n̄}. Two routes
then reach the Bekenstein–Hawking entropy k_B A/(4λ_P²):

  * Boltzmann, S = k_B ln Q = k_B n̄, which needs β = 4;
  * coherent state with n̄ ∝ T, S = 2 k_B n̄, which needs β = 8.

Both are reported; neither is preferred. State counts stay logarithms.
"""
import logging
import math
import numbers
from dataclasses import dataclass
from typing import Optional, Tuple

from coherent_thermo.exceptions import DomainError
from constants.units import ConstantsSet, planck_length

logger = logging.getLogger(__name__)

SOLAR_MASS_KG = 1.989e30

ROUTE_RTOL = 1e-12

KAPPA_PROBES = (2, 3, 10, 100)


def _check_positive(name: str, value: float):
    if not (isinstance(value, numbers.Real) and math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be positive, got {value!r}")


def _check_kappa(kappa, allow_real_kappa: bool):
    if allow_real_kappa:
        if not (isinstance(kappa, numbers.Real) and math.isfinite(kappa) and kappa > 1):
            raise DomainError(f"kappa must be a real number > 1, got {kappa!r}")
        return
    if isinstance(kappa, bool) or not isinstance(kappa, numbers.Integral) or kappa < 2:
        raise DomainError(f"kappa counts patch states and must be an integer >= 2, got {kappa!r}")


def schwarzschild_radius(M: float, cs: ConstantsSet) -> float:
    """r_s = 2GM/c²."""
    _check_positive('black-hole mass', M)
    return 2.0 * cs.G * M / (cs.c * cs.c)


def horizon_area(M: float, cs: ConstantsSet) -> float:
    """A = 16πG²M²/c⁴."""
    _check_positive('black-hole mass', M)
    return 16.0 * math.pi * (cs.G * M / (cs.c * cs.c)) ** 2


def mass_for_area(A: float, cs: ConstantsSet) -> float:
    """Inverse of ``horizon_area``."""
    _check_positive('horizon area', A)
    return cs.c * cs.c * math.sqrt(A / (16.0 * math.pi)) / cs.G


@dataclass(frozen=True)
class HorizonEntropy:
    entropy: float
    ratio: float
    log_ratio: float


def bh_entropy(A: float, cs: ConstantsSet) -> HorizonEntropy:
    """S_BH = k_B A / (4λ_P²), with S/k_B and ln(S/k_B)."""
    _check_positive('horizon area', A)
    l_p = planck_length(cs)
    log_ratio = math.log(A) - math.log(4.0) - 2.0 * math.log(l_p)
    ratio = A / (4.0 * l_p * l_p)
    return HorizonEntropy(entropy=cs.k_B * ratio, ratio=ratio, log_ratio=log_ratio)


def alpha_from_kappa(beta: float, kappa, allow_real_kappa: bool = False) -> float:
    """α = β ln κ."""
    _check_positive('beta', beta)
    _check_kappa(kappa, allow_real_kappa)
    return beta * math.log(kappa)


def bekenstein_log_states(A: float, kappa, alpha: float, cs: ConstantsSet,
                          allow_real_kappa: bool = False) -> float:
    """ln Q_BH = (A/(αλ_P²)) ln κ."""
    _check_positive('horizon area', A)
    _check_positive('alpha', alpha)
    _check_kappa(kappa, allow_real_kappa)
    l_p = planck_length(cs)
    return A / (alpha * l_p * l_p) * math.log(kappa)


def bekenstein_entropy(log_states: float, cs: ConstantsSet) -> float:
    """S = k_B ln Q_BH."""
    if not log_states >= 0:
        raise DomainError(f"log state count must be >= 0, got {log_states!r}")
    return cs.k_B * log_states


@dataclass(frozen=True)
class BlackHoleConfig:
    """
    Horizon given by its mass or its area; the other one is derived.

    ``allow_real_kappa`` relaxes κ to any real number above 1, which the
    identity checks use for κ = e.
    """
    cs: ConstantsSet
    beta: float
    kappa: float = 2
    mass_M: Optional[float] = None
    area_A: Optional[float] = None
    allow_real_kappa: bool = False

    def __post_init__(self):
        if (self.mass_M is None) == (self.area_A is None):
            raise DomainError("give exactly one of mass_M and area_A")
        _check_positive('beta', self.beta)
        _check_kappa(self.kappa, self.allow_real_kappa)
        if self.mass_M is not None:
            object.__setattr__(self, 'area_A', horizon_area(self.mass_M, self.cs))
        else:
            object.__setattr__(self, 'mass_M', mass_for_area(self.area_A, self.cs))

    @classmethod
    def from_solar_masses(cls, solar_masses: float, cs: ConstantsSet, beta: float,
                          kappa=2) -> 'BlackHoleConfig':
        _check_positive('solar masses', solar_masses)
        return cls(cs=cs, beta=beta, kappa=kappa, mass_M=solar_masses * SOLAR_MASS_KG)

    @property
    def alpha(self) -> float:
        return alpha_from_kappa(self.beta, self.kappa, self.allow_real_kappa)


@dataclass(frozen=True)
class EquivalenceReport:
    nbar: float
    log_states: float
    route1_entropy: float
    route2_entropy: float
    bh_entropy: float
    bh_entropy_ratio: float
    bh_entropy_log_ratio: float
    route1_matches: bool
    route2_matches: bool
    kappa_invariant: bool
    kappa_probes: Tuple[Tuple[int, float], ...]


def coherent_equivalence_report(cfg: BlackHoleConfig) -> EquivalenceReport:
    A, cs = cfg.area_A, cfg.cs
    l_p = planck_length(cs)
    nbar = A / (cfg.beta * l_p * l_p)
    log_states = bekenstein_log_states(A, cfg.kappa, cfg.alpha, cs, cfg.allow_real_kappa)
    target = bh_entropy(A, cs)
    route1 = bekenstein_entropy(log_states, cs)
    route2 = 2.0 * cs.k_B * nbar

    probes = tuple(
        (kappa, bekenstein_log_states(A, kappa, alpha_from_kappa(cfg.beta, kappa), cs))
        for kappa in KAPPA_PROBES
    )
    invariant = all(math.isclose(value, nbar, rel_tol=ROUTE_RTOL) for _, value in probes)
    if not invariant:
        logger.warning("ln Q_BH varies with kappa at fixed beta=%r: %r", cfg.beta, probes)

    return EquivalenceReport(
        nbar=nbar,
        log_states=log_states,
        route1_entropy=route1,
        route2_entropy=route2,
        bh_entropy=target.entropy,
        bh_entropy_ratio=target.ratio,
        bh_entropy_log_ratio=target.log_ratio,
        route1_matches=math.isclose(route1, target.entropy, rel_tol=ROUTE_RTOL),
        route2_matches=math.isclose(route2, target.entropy, rel_tol=ROUTE_RTOL),
        kappa_invariant=invariant,
        kappa_probes=probes,
    )

"""
Static spherical source of the scalar field: Yukawa potential outside the
source and the area-law estimate of the number of virtual quanta.

Outside a source of radius d the vacuum expectation of the field is

    φ(r) = g ∫ d³r' e^{-|r - r'|/λ_C} / |r - r'| ϱ(r'),    r > d,

with the density normalised to unit total. For a uniform ball the
angular integral is elementary:

    ∫ dΩ' e^{-R/λ}/R = (2πλ / (r r')) (e^{-|r - r'|/λ} - e^{-(r + r')/λ})

leaving a radial integral that is evaluated by adaptive quadrature.
"""
import enum
import logging
import math
from dataclasses import dataclass

from scipy.integrate import quad

from coherent_thermo.exceptions import AccuracyError, DomainError
from coherent_thermo.validity import QualifiedValue
from constants.units import ConstantsSet, compton_wavelength

logger = logging.getLogger(__name__)

# d ≫ λ_C is enforced as d >= VALIDITY_RATIO * λ_C.
VALIDITY_RATIO = 5.0

PREFACTOR_NOTE = (
    "nbar ~ A_d/lambda_C^2 is an order-of-magnitude estimate; "
    "prefactor {prefactor!r} is a free parameter, not a derived constant"
)


class SourceProfile(str, enum.Enum):
    UNIFORM_BALL = 'uniform_ball'
    POINT_LIKE = 'point_like'


@dataclass(frozen=True)
class SphericalSource:
    """Coupling g, radius d, screening length λ_C and density profile."""
    g: float
    radius_d: float
    lambda_C: float
    profile: SourceProfile = SourceProfile.UNIFORM_BALL

    def __post_init__(self):
        object.__setattr__(self, 'profile', SourceProfile(self.profile))
        if not (math.isfinite(self.radius_d) and self.radius_d >= 0):
            raise DomainError(f"source radius must be >= 0, got {self.radius_d!r}")
        if not (math.isfinite(self.lambda_C) and self.lambda_C > 0):
            raise DomainError(f"Compton wavelength must be positive, got {self.lambda_C!r}")
        if self.profile is SourceProfile.UNIFORM_BALL and not self.radius_d > 0:
            raise DomainError("a uniform ball needs a positive radius")
        if not math.isfinite(self.g):
            raise DomainError(f"coupling must be finite, got {self.g!r}")

    @classmethod
    def from_field_mass(cls, g: float, radius_d: float, m: float, cs: ConstantsSet,
                        profile: SourceProfile = SourceProfile.UNIFORM_BALL) -> 'SphericalSource':
        """Source whose screening length is the Compton wavelength ħ/(mc)."""
        return cls(g=g, radius_d=radius_d, lambda_C=compton_wavelength(cs, m), profile=profile)

    @property
    def density(self) -> float:
        """Uniform density 3/(4πd³) of a ball with unit total."""
        return 3.0 / (4.0 * math.pi * self.radius_d ** 3)


def point_potential(g: float, lambda_C: float, r: float) -> float:
    """g e^{-r/λ_C} / r."""
    return g * math.exp(-r / lambda_C) / r


def _radial_shell_integral(radius_d: float, lambda_C: float, quad_tol: float) -> float:
    """
    J = ∫_0^d r' (e^{-(d - r')/λ} - e^{-(d + r')/λ}) dr'.

    The field-point dependence factors out as e^{-(r - d)/λ}, so J depends
    on the source alone and every exponent stays non-positive.
    """
    def integrand(r_prime):
        return r_prime * (
            math.exp(-(radius_d - r_prime) / lambda_C) - math.exp(-(radius_d + r_prime) / lambda_C)
        )

    # The integrand is concentrated within a few λ of the surface.
    points = [radius_d - 20.0 * lambda_C] if radius_d > 40.0 * lambda_C else None
    result = quad(integrand, 0.0, radius_d, epsabs=0.0, epsrel=quad_tol, limit=200,
                  points=points, full_output=1)
    if len(result) >= 4:
        raise AccuracyError(f"radial Yukawa quadrature did not converge: {result[3]}")
    value, abserr = result[0], result[1]
    if abserr > 10.0 * quad_tol * abs(value):
        raise AccuracyError(
            f"radial Yukawa quadrature error estimate {abserr:.3e} exceeds tolerance {quad_tol:.1e}"
        )
    logger.debug("radial Yukawa integral J=%.17g (abserr %.3e, %d evaluations)",
                 value, abserr, result[2]['neval'])
    return value


def yukawa_potential(src: SphericalSource, r: float, quad_tol: float = 1e-10) -> float:
    """Field expectation ⟨0|φ(r)|0⟩ outside the source."""
    if not 1e-12 < quad_tol < 1e-3:
        raise DomainError(f"quad_tol must lie in (1e-12, 1e-3), got {quad_tol!r}")
    if not (math.isfinite(r) and r > src.radius_d and r > 0):
        raise DomainError(f"the potential is defined outside the source only: r={r!r}, d={src.radius_d!r}")

    if src.profile is SourceProfile.POINT_LIKE:
        return point_potential(src.g, src.lambda_C, r)

    shell = _radial_shell_integral(src.radius_d, src.lambda_C, quad_tol)
    prefactor = 2.0 * math.pi * src.lambda_C * src.density / r
    return src.g * prefactor * math.exp(-(r - src.radius_d) / src.lambda_C) * shell


def _check_geometry(radius_d: float, lambda_C: float, prefactor: float):
    if not (math.isfinite(radius_d) and radius_d > 0):
        raise DomainError(f"source radius must be positive, got {radius_d!r}")
    if not (math.isfinite(lambda_C) and lambda_C > 0):
        raise DomainError(f"Compton wavelength must be positive, got {lambda_C!r}")
    if not (math.isfinite(prefactor) and prefactor > 0):
        raise DomainError(f"prefactor must be positive, got {prefactor!r}")


def _qualify(value: float, radius_d: float, lambda_C: float, prefactor: float) -> QualifiedValue:
    result = QualifiedValue(value, (PREFACTOR_NOTE.format(prefactor=prefactor),))
    if radius_d < VALIDITY_RATIO * lambda_C:
        result = result.with_warning(
            f"the area-law estimate assumes d >> lambda_C; d/lambda_C = {radius_d / lambda_C!r} "
            f"is below {VALIDITY_RATIO!r}"
        )
    return result


def occupancy_estimate(radius_d: float, lambda_C: float, prefactor: float = 1.0) -> QualifiedValue:
    """n̄ ≈ prefactor · 4πd² / λ_C²."""
    _check_geometry(radius_d, lambda_C, prefactor)
    area = 4.0 * math.pi * radius_d * radius_d
    return _qualify(prefactor * area / (lambda_C * lambda_C), radius_d, lambda_C, prefactor)


def layer_volume_occupancy(radius_d: float, lambda_C: float, prefactor: float = 1.0) -> float:
    """
    The construction behind the estimate: a layer of thickness λ_C over
    the surface A_d, divided by the quantum volume element λ_C³.
    """
    _check_geometry(radius_d, lambda_C, prefactor)
    layer_volume = lambda_C * 4.0 * math.pi * radius_d * radius_d
    return prefactor * layer_volume / lambda_C ** 3


def field_entropy_area(radius_d: float, lambda_C: float, prefactor: float,
                       cs: ConstantsSet) -> QualifiedValue:
    """S_KGF ≈ 2 k_B n̄ with n̄ from ``occupancy_estimate``."""
    occupancy = occupancy_estimate(radius_d, lambda_C, prefactor)
    return QualifiedValue(2.0 * cs.k_B * occupancy.value, occupancy.warnings)

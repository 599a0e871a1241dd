"""
Independent oracles for the primary computations.

None of these share a code path with what they check: the Fock-space sum
builds its weights from log-space ratios anchored with a Stirling series
instead of the multiplicative recurrence, and the Yukawa oracle integrates
over (r', θ') directly instead of using the closed-form angular integral.
"""
import enum
import logging
import math
import warnings
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import IntegrationWarning, dblquad
from scipy.special import gammaln

from coherent.states import OscillatorConfig
from coherent_thermo.exceptions import AccuracyError, DomainError, OracleScaleError
from kgf_field.source import SourceProfile, SphericalSource

from .summation import CompensatedSum

logger = logging.getLogger(__name__)

FOCK_ORACLE_MAX_NBAR = 1e4

# Weights beyond the truncation carry less than this mass in total.
FOCK_ORACLE_TAIL = 1e-14

STIRLING_MIN_K = 30


class Observable(str, enum.Enum):
    NORM = 'norm'
    MEAN_N = 'mean_n'
    VAR_N = 'var_n'
    ENERGY = 'energy'


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    primary_value: float
    oracle_value: float
    relative_error: float
    tolerance: float
    passed: bool

    @classmethod
    def compare(cls, quantity: str, primary: float, oracle: float, tolerance: float) -> 'OracleReport':
        """Relative comparison, absolute when the oracle value is zero."""
        difference = abs(primary - oracle)
        error = difference / abs(oracle) if oracle != 0 else difference
        passed = bool(error <= tolerance)
        if not passed:
            logger.warning("%s: primary %.17g vs oracle %.17g (error %.3e > %.1e)",
                           quantity, primary, oracle, error, tolerance)
        return cls(quantity, float(primary), float(oracle), float(error), float(tolerance), passed)


def _log_poisson_at(k: int, nbar: float) -> float:
    """ln(e^{-n̄} n̄^k / k!) with the large cancellation split out analytically."""
    if k < STIRLING_MIN_K:
        return -nbar + k * math.log(nbar) - float(gammaln(k + 1.0))
    tail = 1.0 / (12.0 * k) - 1.0 / (360.0 * k ** 3) + 1.0 / (1260.0 * k ** 5)
    return (k - nbar) + k * math.log1p((nbar - k) / k) - 0.5 * math.log(2.0 * math.pi * k) - tail


def _observable(observable: Observable, nbar: float) -> Callable[[int], float]:
    if observable is Observable.NORM:
        return lambda n: 1.0
    if observable is Observable.MEAN_N:
        return lambda n: float(n)
    if observable is Observable.VAR_N:
        return lambda n: (n - nbar) ** 2
    return lambda n: n + 0.5


def fock_sum_oracle(cfg: OscillatorConfig, nbar: float, observable) -> float:
    """Σ_n ρ_nn f(n) over the Poisson diagonal, tail below 1e-14."""
    observable = Observable(observable)
    if not (math.isfinite(nbar) and nbar >= 0):
        raise DomainError(f"mean occupation must be >= 0, got {nbar!r}")
    if nbar > FOCK_ORACLE_MAX_NBAR:
        raise OracleScaleError(
            f"Fock-sum oracle is bounded to nbar <= {FOCK_ORACLE_MAX_NBAR:g}, got {nbar!r}"
        )
    f = _observable(observable, nbar)
    total = CompensatedSum()

    if nbar == 0:
        total.add(f(0))
    else:
        mode = int(math.floor(nbar))
        log_mode = _log_poisson_at(mode, nbar)
        total.add(math.exp(log_mode) * f(mode))

        # Upwards: ρ_{j}/ρ_{j-1} = n̄/j.
        log_weight = CompensatedSum(log_mode)
        j = mode
        while True:
            j += 1
            log_weight.add(math.log1p((nbar - j) / j))
            weight = math.exp(log_weight.value)
            total.add(weight * f(j))
            ratio = nbar / (j + 1)
            if ratio < 1.0 and weight * ratio / (1.0 - ratio) * max(1.0, abs(f(j + 1))) < FOCK_ORACLE_TAIL * 1e-2:
                break

        # Downwards: ρ_{j-1}/ρ_j = j/n̄.
        log_weight = CompensatedSum(log_mode)
        j = mode
        while j > 0:
            log_weight.add(math.log1p((j - nbar) / nbar))
            j -= 1
            weight = math.exp(log_weight.value)
            total.add(weight * f(j))
            ratio = j / nbar
            if ratio < 1.0 and weight * ratio / (1.0 - ratio) * max(1.0, abs(f(0))) < FOCK_ORACLE_TAIL * 1e-2:
                break

    logger.debug("fock_sum_oracle(%s, nbar=%g): %d terms", observable.value, nbar, total.count)
    value = total.value
    if observable is Observable.ENERGY:
        value *= cfg.cs.hbar * cfg.omega
    return value


def nested_quadrature_oracle(src: SphericalSource, r: float, epsrel: float = 1e-9) -> float:
    """
    g ∫∫ 2π r'² sin θ' ϱ e^{-R/λ}/R dθ' dr' for a uniform ball, with
    R² = r² + r'² - 2 r r' cos θ'.
    """
    if src.profile is not SourceProfile.UNIFORM_BALL:
        raise DomainError("the nested-quadrature oracle covers the uniform ball only")
    if not (math.isfinite(r) and r > src.radius_d):
        raise DomainError(f"field point must lie outside the source: r={r!r}, d={src.radius_d!r}")
    lam, d = src.lambda_C, src.radius_d
    shift = r - d

    def integrand(theta, r_prime):
        distance = math.sqrt(r * r + r_prime * r_prime - 2.0 * r * r_prime * math.cos(theta))
        return r_prime * r_prime * math.sin(theta) * math.exp(-(distance - shift) / lam) / distance

    with warnings.catch_warnings():
        warnings.simplefilter('error', IntegrationWarning)
        try:
            value, abserr = dblquad(integrand, 0.0, d, 0.0, math.pi, epsabs=0.0, epsrel=epsrel)
        except IntegrationWarning as exc:
            raise AccuracyError(f"nested Yukawa quadrature did not converge: {exc}")
    logger.debug("nested_quadrature_oracle: %.17g (abserr %.3e)", value, abserr)
    return src.g * 2.0 * math.pi * src.density * math.exp(-shift / lam) * value


def finite_difference_check(f: Callable[[float], float], x: float, analytic_df: float,
                            tolerance: float = 1e-6, quantity: str = 'derivative') -> OracleReport:
    """Central difference at h and h/2, one Richardson step, compared to ``analytic_df``."""
    h = 1e-3 * abs(x) if x != 0 else 1e-3

    def central(step):
        return (f(x + step) - f(x - step)) / (2.0 * step)

    estimate = (4.0 * central(h / 2.0) - central(h)) / 3.0
    return OracleReport.compare(quantity, analytic_df, estimate, tolerance)

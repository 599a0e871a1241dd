"""
Effective temperature of a coherent oscillator state.

Equating the mean energy ħω(n̄ + 1/2) with k_B T² ∂n̄/∂T defines T
self-consistently. Writing ω = αn̄ with α = 2ħ/(m|d|²) turns that into

    ħα n̄(n̄ + 1/2) dT/dn̄ = k_B T²

whose solution is T = ħω / (2 k_B n̄ ln(1 + 1/(2n̄))). The equation is
singular at n̄ = 0; the vacuum is handled separately by ``zero_point``,
whose temperature is the low-bath limit of the Bloch formula.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from coherent.states import (
    OscillatorConfig, log_partition_function, mean_energy, phase_area,
)
from coherent_thermo.exceptions import ConvergenceError, DomainError, SingularityError
from constants.units import ConstantsSet

from .relations import ThermoPoint, entropy_analytic, free_energy

logger = logging.getLogger(__name__)

ODE_METHODS = ('DOP853', 'RK45', 'RK23')


def _check_positive(name: str, value: float):
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be positive, got {value!r}")


def self_consistency_residual(cfg: OscillatorConfig, nbar: float, T: float, dnbar_dT: float) -> float:
    """ħω(n̄ + 1/2) - k_B T² ∂n̄/∂T; zero on the self-consistent curve."""
    _check_positive('temperature', T)
    return cfg.cs.hbar * cfg.omega * (nbar + 0.5) - cfg.cs.k_B * T * T * dnbar_dT


def frequency_per_occupation(cfg: OscillatorConfig, d_abs: float) -> float:
    """α = 2ħ/(m|d|²), so that ω = α n̄."""
    _check_positive('displacement magnitude', d_abs)
    return 2.0 * cfg.cs.hbar / (cfg.m * d_abs * d_abs)


def _log_term(nbar: float) -> float:
    """ln(1 + 1/(2n̄)) without cancellation at large n̄."""
    ratio = 0.5 / nbar
    if math.isinf(ratio):
        # Subnormal n̄: 1/(2n̄) overflows, and ln(1 + 1/(2n̄)) equals ln(1/(2n̄)) to double precision.
        return math.log(0.5) - math.log(nbar)
    return math.log1p(ratio)


def temperature_closed_form(cfg: OscillatorConfig, nbar: float) -> float:
    """T = ħω / (2 k_B n̄ ln(1 + 1/(2n̄))) at the oscillator's fixed ω."""
    if not (math.isfinite(nbar) and nbar > 0):
        raise DomainError(
            f"closed-form temperature needs nbar > 0, got {nbar!r}; use zero_point for the vacuum"
        )
    # n̄·ln(1 + 1/(2n̄)) stays representable down to subnormal n̄.
    T = cfg.cs.hbar * cfg.omega / (2.0 * cfg.cs.k_B) / (nbar * _log_term(nbar))
    if math.isinf(T):
        raise DomainError(f"closed-form temperature overflows at nbar = {nbar!r}")
    return T


def temperature_from_alpha(alpha: float, nbar: float, cs: ConstantsSet) -> float:
    """The closed form with ω = αn̄ substituted: T = ħα / (2 k_B ln(1 + 1/(2n̄)))."""
    _check_positive('alpha', alpha)
    _check_positive('nbar', nbar)
    return cs.hbar * alpha / (2.0 * cs.k_B * _log_term(nbar))


def temperature_slope(alpha: float, nbar: float, cs: ConstantsSet) -> float:
    """Analytic dT/dn̄ of ``temperature_from_alpha``."""
    _check_positive('alpha', alpha)
    _check_positive('nbar', nbar)
    log_term = _log_term(nbar)
    return cs.hbar * alpha / (2.0 * cs.k_B * log_term * log_term * nbar * (2.0 * nbar + 1.0))


def temperature_ode_rhs(alpha: float, nbar: float, T: float, cs: ConstantsSet) -> float:
    """dT/dn̄ = k_B T² / (ħα n̄(n̄ + 1/2))."""
    return cs.k_B * T * T / (cs.hbar * alpha * nbar * (nbar + 0.5))


def closed_form_ode_residual(alpha: float, nbar: float, cs: ConstantsSet) -> float:
    """Relative residual of the closed form and its derivative in the ODE."""
    T = temperature_from_alpha(alpha, nbar, cs)
    lhs = temperature_slope(alpha, nbar, cs)
    rhs = temperature_ode_rhs(alpha, nbar, T, cs)
    return abs(lhs - rhs) / abs(rhs)


def occupation_slope(cfg: OscillatorConfig, nbar: float) -> float:
    """
    ∂n̄/∂T along the closed-form curve through (n̄, ω).

    Inverts the analytic dT/dn̄ at α = ω/n̄.
    """
    return 1.0 / temperature_slope(cfg.omega / nbar, nbar, cfg.cs)


@dataclass(frozen=True)
class TemperatureTrajectory:
    """Accepted steps of the effective-temperature ODE plus dense output."""
    nbar: np.ndarray
    T: np.ndarray
    alpha: float
    rtol: float
    method: str
    n_steps: int
    _dense: object

    def __call__(self, nbar):
        """Interpolated T at any n̄ inside the integrated interval."""
        values = self._dense(np.asarray(nbar, dtype=float))
        return values[0]

    def samples(self) -> List[Tuple[float, float]]:
        return [(float(n), float(t)) for n, t in zip(self.nbar, self.T)]

    def resample(self, count: int, log: bool = True) -> List[Tuple[float, float]]:
        """``count`` dense-output samples between the end points."""
        low, high = self.nbar[0], self.nbar[-1]
        grid = np.geomspace(low, high, count) if log else np.linspace(low, high, count)
        return [(float(n), float(t)) for n, t in zip(grid, self(grid))]


def temperature_ode_solve(alpha: float, nbar_start: float, nbar_end: float, T_start: float,
                          rtol: float, cs: ConstantsSet,
                          method: str = 'DOP853') -> TemperatureTrajectory:
    """
    Integrate ħα n̄(n̄ + 1/2) dT/dn̄ = k_B T² from (nbar_start, T_start).

    Uses an adaptive embedded Runge–Kutta pair from scipy with dense
    output. Integration may run towards larger or smaller n̄.
    """
    if not (nbar_start > 0 and nbar_end > 0):
        raise SingularityError(
            f"the temperature equation is singular at nbar = 0; got start={nbar_start!r}, end={nbar_end!r}"
        )
    if nbar_start == nbar_end:
        raise DomainError("nbar_start and nbar_end must differ")
    _check_positive('alpha', alpha)
    _check_positive('T_start', T_start)
    if not 1e-12 < rtol < 1e-3:
        raise DomainError(f"rtol must lie in (1e-12, 1e-3), got {rtol!r}")
    if method not in ODE_METHODS:
        raise DomainError(f"unknown integration method {method!r}; expected one of {ODE_METHODS}")

    def rhs(nbar, y):
        return [temperature_ode_rhs(alpha, nbar, y[0], cs)]

    solution = solve_ivp(
        rhs,
        (nbar_start, nbar_end),
        [T_start],
        method=method,
        rtol=rtol,
        atol=1e-3 * rtol * T_start,
        dense_output=True,
    )
    if not solution.success:
        raise ConvergenceError(f"temperature ODE failed: {solution.message}")

    logger.debug(
        "temperature_ode_solve: %s %d steps, %d evaluations", method, len(solution.t) - 1, solution.nfev
    )
    return TemperatureTrajectory(
        nbar=solution.t,
        T=solution.y[0],
        alpha=alpha,
        rtol=rtol,
        method=method,
        n_steps=len(solution.t) - 1,
        _dense=solution.sol,
    )


@dataclass(frozen=True)
class AreaLaw:
    """Phase-portrait area, zero-point amplitude, occupation and entropy."""
    A_d: float
    l0: float
    nbar: float
    S: float

    def occupation_at(self, T: float, cfg: OscillatorConfig) -> float:
        """n̄ = k_B T m A_d / (2πħ²); equals ``nbar`` at T = ħω/k_B."""
        return cfg.cs.k_B * T * cfg.m * self.A_d / (2.0 * math.pi * cfg.cs.hbar ** 2)


def area_law(cfg: OscillatorConfig, d_abs: float) -> AreaLaw:
    """A_d = π|d|², l0 = sqrt(ħ/(mω)), n̄ = A_d/(2π l0²), S = k_B A_d/(π l0²)."""
    A_d = phase_area(d_abs)
    l0 = cfg.zero_point_amplitude
    return AreaLaw(
        A_d=A_d,
        l0=l0,
        nbar=A_d / (2.0 * math.pi * l0 * l0),
        S=cfg.cs.k_B * A_d / (math.pi * l0 * l0),
    )


def bloch_temperature(cfg: OscillatorConfig, T_hb: float) -> float:
    """T_Bl = (ħω/2k_B) coth(ħω/(2k_B T_hb))."""
    _check_positive('heat-bath temperature', T_hb)
    zero_point_T = cfg.cs.hbar * cfg.omega / (2.0 * cfg.cs.k_B)
    # coth as 1/tanh: tanh rounds to exactly 1 once the argument passes ~19.
    return zero_point_T / math.tanh(zero_point_T / T_hb)


def bloch_distribution(cfg: OscillatorConfig, T_hb: float, q):
    """Gaussian coordinate density b(q) at the Bloch temperature."""
    T_bl = bloch_temperature(cfg, T_hb)
    stiffness = cfg.m * cfg.omega * cfg.omega
    thermal = cfg.cs.k_B * T_bl
    q = np.asarray(q, dtype=float)
    density = math.sqrt(stiffness / (2.0 * math.pi * thermal)) * np.exp(-stiffness * q * q / (2.0 * thermal))
    return float(density) if density.ndim == 0 else density


def bloch_width(cfg: OscillatorConfig, T_hb: float) -> float:
    """Standard deviation sqrt(k_B T_Bl / (mω²)) of b(q)."""
    T_bl = bloch_temperature(cfg, T_hb)
    return math.sqrt(cfg.cs.k_B * T_bl / (cfg.m * cfg.omega * cfg.omega))


def zero_point(cfg: OscillatorConfig) -> ThermoPoint:
    """The n̄ = 0 branch: T = ħω/2k_B, E = ħω/2, F = 0, S = k_B, ln Q = 0."""
    hbar_omega = cfg.cs.hbar * cfg.omega
    return ThermoPoint(
        T=hbar_omega / (2.0 * cfg.cs.k_B),
        lnQ=0.0,
        F=0.0,
        S=cfg.cs.k_B,
        E=hbar_omega / 2.0,
    )


def coherent_thermo_point(cfg: OscillatorConfig, nbar: float) -> ThermoPoint:
    """
    Self-consistent thermodynamic state of a coherent state with mean n̄.

    T from the closed form, F = -k_B T n̄, E = ħω(n̄ + 1/2), and S from
    k_B n̄ + k_B T ∂n̄/∂T with the slope fixed by E = k_B T² ∂n̄/∂T.
    """
    if nbar == 0:
        return zero_point(cfg)
    lnQ = log_partition_function(nbar)
    T = temperature_closed_form(cfg, nbar)
    E = mean_energy(cfg, nbar)
    F = free_energy(T, lnQ, cfg.cs)
    S = entropy_analytic(nbar, E / (cfg.cs.k_B * T), cfg.cs)
    return ThermoPoint(T=T, lnQ=lnQ, F=F, S=S, E=E)


"""
Coherent states of the one-dimensional harmonic oscillator.

A coherent state |d⟩ is labelled by a complex displacement d (metres).
Its Fock-space diagonal is Poissonian with mean n̄ = mω|d|²/(2ħ), which
gives the partition function Q = e^{n̄} and the mean energy ħω(n̄ + 1/2).
Partition functions are handled as logarithms throughout.
"""
import logging
import math
import numbers
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from coherent_thermo.exceptions import DomainError
from constants.units import ConstantsSet

logger = logging.getLogger(__name__)

# Below this n̄ the recurrence starts from e^{-n̄} at n = 0; above it the
# start would underflow, so the recurrence is anchored at the mode instead.
DIRECT_START_LIMIT = 700.0

# Tail mass is driven below tol * TAIL_SAFETY before truncating.
TAIL_SAFETY = 1e-3

# Largest n̄ whose weight vector is built; beyond it the vector does not fit in memory.
FOCK_MAX_NBAR = 1e6


@dataclass(frozen=True)
class OscillatorConfig:
    """Mass and angular frequency of the oscillator H = (p² + m²ω²q²)/2m."""
    m: float
    omega: float
    cs: ConstantsSet

    def __post_init__(self):
        if not (math.isfinite(self.m) and self.m > 0):
            raise DomainError(f"oscillator mass must be positive, got {self.m!r}")
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise DomainError(f"angular frequency must be positive, got {self.omega!r}")

    @property
    def coupling(self) -> float:
        """mω/(2ħ), the factor that converts |d|² into quanta."""
        return self.m * self.omega / (2.0 * self.cs.hbar)

    @property
    def zero_point_amplitude(self) -> float:
        """l0 = sqrt(ħ/(mω))."""
        return math.sqrt(self.cs.hbar / (self.m * self.omega))

    def amplitude_for_occupation(self, nbar: float) -> float:
        """|d| that produces the mean occupation ``nbar``."""
        _check_occupation(nbar)
        return math.sqrt(nbar / self.coupling)


@dataclass(frozen=True)
class CoherentAmplitude:
    """Complex displacement d of a coherent state, with its cached n̄."""
    cfg: OscillatorConfig
    d_re: float
    d_im: float = 0.0
    nbar: float = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.d_re) and math.isfinite(self.d_im)):
            raise DomainError("displacement must be finite")
        object.__setattr__(self, 'nbar', occupation_from_amplitude(self.cfg, self.d))

    @property
    def d(self) -> complex:
        return complex(self.d_re, self.d_im)

    @property
    def abs_sq(self) -> float:
        return self.d_re * self.d_re + self.d_im * self.d_im


@dataclass(frozen=True)
class FockWeights:
    """Diagonal ρ_nn of a coherent state, n = 0..n_max."""
    nbar: float
    weights: np.ndarray
    n_max: int
    tol: float

    @property
    def total(self) -> float:
        return float(np.sum(self.weights))

    @property
    def mean(self) -> float:
        n = np.arange(self.n_max + 1)
        return float(np.dot(n, self.weights))

    @property
    def variance(self) -> float:
        n = np.arange(self.n_max + 1)
        return float(np.dot((n - self.nbar) ** 2, self.weights))

    def energies(self, cfg: OscillatorConfig) -> np.ndarray:
        """ħω(n + 1/2) for every retained level."""
        n = np.arange(self.n_max + 1)
        return cfg.cs.hbar * cfg.omega * (n + 0.5)


def _check_occupation(nbar: float):
    if not (isinstance(nbar, numbers.Real) and math.isfinite(nbar)) or nbar < 0:
        raise DomainError(f"mean occupation must be a finite number >= 0, got {nbar!r}")


def occupation_from_amplitude(cfg: OscillatorConfig, d: complex) -> float:
    """n̄ = mω|d|²/(2ħ). Depends on |d| only."""
    d = complex(d)
    abs_sq = d.real * d.real + d.imag * d.imag
    return cfg.coupling * abs_sq


def _poisson_run(start: float, nbar: float, first: int, count: int) -> np.ndarray:
    """Weights first..first+count-1 by the upward recurrence from ``start``."""
    n = np.arange(first + 1, first + count, dtype=float)
    ratios = np.concatenate(([start], nbar / n))
    return np.cumprod(ratios)


def _log_poisson_mode(k: int, nbar: float) -> float:
    """
    ln ρ_kk for k = floor(n̄) >= DIRECT_START_LIMIT, in saddle-point form.

    ln ρ_kk = -ln(2πk)/2 - stirlerr(k) - bd0(k, n̄), where stirlerr is the
    Stirling-series remainder of ln k! and bd0 = k ln(k/n̄) + n̄ - k is
    summed as a series in x = (k - n̄)/n̄, so no large terms cancel.
    """
    stirlerr = 1.0 / (12.0 * k) - 1.0 / (360.0 * k ** 3) + 1.0 / (1260.0 * k ** 5)
    x = (k - nbar) / nbar
    # (1 + x) ln(1 + x) - x = Σ_{j>=2} (-1)^j x^j / (j(j - 1)); |x| < 1/700 here.
    series = sum((-x) ** j / (j * (j - 1)) for j in range(2, 8))
    return -0.5 * math.log(2.0 * math.pi * k) - stirlerr - nbar * series


def _tail_bound(last_weight: float, nbar: float, n_last: int) -> float:
    """Geometric bound on the Poisson mass beyond index ``n_last``."""
    ratio = nbar / (n_last + 1)
    if ratio >= 1.0:
        return math.inf
    return last_weight * ratio / (1.0 - ratio)


def fock_weights(nbar: float, tol: float = 1e-12) -> FockWeights:
    """
    Poisson weights ρ_nn = e^{-n̄} n̄^n / n! with tail mass below ``tol``.

    The weights come from the multiplicative recurrence
    ρ_{n+1} = ρ_n · n̄/(n+1). The truncation index starts at
    ceil(n̄ + 10·sqrt(n̄) + 20) and grows until the geometric tail bound
    drops below tol·TAIL_SAFETY. Occupations above FOCK_MAX_NBAR are refused.
    """
    _check_occupation(nbar)
    if not 0 < tol < 1:
        raise DomainError(f"tolerance must lie in (0, 1), got {tol!r}")
    if nbar > FOCK_MAX_NBAR:
        raise DomainError(
            f"Fock weights are built for nbar <= {FOCK_MAX_NBAR:g}, got {nbar!r}; "
            "lnQ, E and T do not need them"
        )
    if nbar == 0:
        return FockWeights(nbar=0.0, weights=np.ones(1), n_max=0, tol=tol)

    n_max = int(math.ceil(nbar + 10.0 * math.sqrt(nbar) + 20.0))
    while True:
        if nbar <= DIRECT_START_LIMIT:
            weights = _poisson_run(math.exp(-nbar), nbar, 0, n_max + 1)
        else:
            # Anchor at the mode k in log space; recur up and down from it.
            k = int(math.floor(nbar))
            log_peak = _log_poisson_mode(k, nbar)
            upper = _poisson_run(math.exp(log_peak), nbar, k, n_max - k + 1)
            down = np.arange(k, 0, -1, dtype=float) / nbar
            lower = math.exp(log_peak) * np.cumprod(down)
            weights = np.concatenate((lower[::-1], upper))
        if _tail_bound(weights[-1], nbar, n_max) < tol * TAIL_SAFETY:
            break
        n_max += int(math.ceil(math.sqrt(nbar))) + 10

    weights.setflags(write=False)
    logger.debug("fock_weights: nbar=%g n_max=%d", nbar, n_max)
    return FockWeights(nbar=float(nbar), weights=weights, n_max=n_max, tol=tol)


def overlap_sq(cfg: OscillatorConfig, d: complex, f: complex) -> float:
    """|⟨f|d⟩|² = exp{-(mω/2ħ)|d - f|²}."""
    delta = complex(d) - complex(f)
    return math.exp(-cfg.coupling * (delta.real * delta.real + delta.imag * delta.imag))


def coherent_diagonal(cfg: OscillatorConfig, d: complex, f: complex) -> float:
    """
    ρ^d_ff written as the product of the f-independent normaliser e^{-n̄_d}
    and the f-dependent factor exp{(mω/2ħ)(-|f|² + d*f + f*d)}.

    Equal to ``overlap_sq`` up to rounding; exposed because the first
    factor is what defines the partition function.
    """
    d, f = complex(d), complex(f)
    cross = 2.0 * (d.conjugate() * f).real
    exponent = cfg.coupling * (-(f.real * f.real + f.imag * f.imag) + cross)
    return math.exp(-log_partition_function(occupation_from_amplitude(cfg, d)) + exponent)


def log_partition_function(nbar: float) -> float:
    """ln Q for Q = e^{n̄}; Q itself is never formed."""
    _check_occupation(nbar)
    return float(nbar)


def mean_energy(cfg: OscillatorConfig, nbar: float) -> float:
    """⟨d|H|d⟩ = ħω(n̄ + 1/2)."""
    _check_occupation(nbar)
    return cfg.cs.hbar * cfg.omega * (nbar + 0.5)


def phase_portrait(cfg: OscillatorConfig, d: complex, t) -> Tuple[np.ndarray, np.ndarray]:
    """
    Classical trajectory (⟨q(t)⟩, ⟨p(t)⟩) of the coherent state.

    ⟨q⟩ = Re(d e^{-iωt}); the orbit is a circle of radius |d| in the
    (q, p/(mω)) plane, enclosing the area π|d|².
    """
    d = complex(d)
    phase = cfg.omega * np.asarray(t, dtype=float)
    q = d.real * np.cos(phase) + d.imag * np.sin(phase)
    p = cfg.m * cfg.omega * (-d.real * np.sin(phase) + d.imag * np.cos(phase))
    return q, p


def phase_area(d_abs: float) -> float:
    """A_d = π|d|², the area of the phase-portrait circle."""
    if not d_abs >= 0:
        raise DomainError(f"displacement magnitude must be >= 0, got {d_abs!r}")
    return math.pi * d_abs * d_abs

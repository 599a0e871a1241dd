"""
Multimode coherent state of the scalar field around a static source.

The number of virtual quanta is Poisson distributed with mean
n̄ = Σ n̄_i, so ln Q = n̄ and S = 2 k_B n̄ exactly as for one oscillator.
The energy uses the occupation-weighted mean frequency ω̄ with a single
collective zero-point term: E = ħω̄(n̄ + 1/2).
"""
import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Tuple, Union

import numpy as np

from coherent_thermo.exceptions import DomainError, SpectrumParseError, UndefinedMeanError
from coherent_thermo.validity import QualifiedValue
from constants.units import ConstantsSet

logger = logging.getLogger(__name__)

CSV_HEADER = ('omega', 'nbar')

# T = ħω̄/k_B is stated for n̄ ≫ 1/2.
DEFAULT_NBAR_THRESHOLD = 10.0


@dataclass(frozen=True)
class ModeSpectrum:
    """Finite list of (ω_i, n̄_i) modes; n̄_total is summed in input order."""
    modes: Tuple[Tuple[float, float], ...]
    nbar_total: float = field(init=False)

    def __post_init__(self):
        modes = tuple((float(omega), float(nbar)) for omega, nbar in self.modes)
        for index, (omega, nbar) in enumerate(modes):
            if not (math.isfinite(omega) and omega > 0):
                raise DomainError(f"mode {index}: omega must be positive, got {omega!r}")
            if not (math.isfinite(nbar) and nbar >= 0):
                raise DomainError(f"mode {index}: nbar must be >= 0, got {nbar!r}")
        total = 0.0
        for _, nbar in modes:
            total += nbar
        object.__setattr__(self, 'modes', modes)
        object.__setattr__(self, 'nbar_total', total)

    @classmethod
    def single(cls, omega: float, nbar: float) -> 'ModeSpectrum':
        return cls(((omega, nbar),))

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> 'ModeSpectrum':
        """Read a UTF-8 CSV with header ``omega,nbar``, one mode per row."""
        with open(path, 'rb') as handle:
            raw_lines = handle.read().splitlines(keepends=True)
        lines = []
        for row_number, raw in enumerate(raw_lines, start=1):
            try:
                lines.append(raw.decode('utf-8-sig' if row_number == 1 else 'utf-8'))
            except UnicodeDecodeError as exc:
                raise SpectrumParseError(f"not valid UTF-8 ({exc.reason})", row=row_number)
        return cls.from_lines(lines)

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> 'ModeSpectrum':
        reader = csv.reader(lines)
        header = next(reader, None)
        if header is None or tuple(cell.strip() for cell in header) != CSV_HEADER:
            raise SpectrumParseError(f"expected header 'omega,nbar', got {header!r}", row=1)

        modes = []
        for row_number, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise SpectrumParseError(f"expected 2 columns, got {len(row)}", row=row_number)
            try:
                omega, nbar = (float(cell) for cell in row)
            except ValueError:
                raise SpectrumParseError(f"non-numeric value in {row!r}", row=row_number)
            if math.isnan(omega) or math.isnan(nbar):
                raise SpectrumParseError("NaN is not allowed", row=row_number)
            if not (math.isfinite(omega) and omega > 0):
                raise SpectrumParseError(f"omega must be positive, got {omega!r}", row=row_number)
            if not (math.isfinite(nbar) and nbar >= 0):
                raise SpectrumParseError(f"nbar must be >= 0, got {nbar!r}", row=row_number)
            modes.append((omega, nbar))

        logger.debug("Read spectrum with %d modes", len(modes))
        return cls(tuple(modes))

    @property
    def omegas(self) -> np.ndarray:
        return np.array([omega for omega, _ in self.modes])

    @property
    def occupations(self) -> np.ndarray:
        return np.array([nbar for _, nbar in self.modes])

    def scaled(self, factor: float) -> 'ModeSpectrum':
        """Same occupations with every frequency multiplied by ``factor``."""
        return ModeSpectrum(tuple((omega * factor, nbar) for omega, nbar in self.modes))


def mean_frequency(spec: ModeSpectrum) -> float:
    """ω̄ = Σ ω_i n̄_i / n̄."""
    if not spec.nbar_total > 0:
        raise UndefinedMeanError("mean frequency is undefined when every mode is empty")
    weighted = 0.0
    for omega, nbar in spec.modes:
        weighted += omega * nbar
    occupied = [omega for omega, nbar in spec.modes if nbar > 0]
    # Rounding can push the ratio past the occupied range by an ulp.
    return min(max(weighted / spec.nbar_total, min(occupied)), max(occupied))


def field_log_partition_function(spec: ModeSpectrum) -> float:
    """ln Q_KGF = n̄."""
    return spec.nbar_total


def field_free_energy(spec: ModeSpectrum, T: float, cs: ConstantsSet) -> float:
    """F_KGF = -k_B T n̄."""
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T!r}")
    return -cs.k_B * T * spec.nbar_total


def field_energy(spec: ModeSpectrum, cs: ConstantsSet) -> float:
    """E_KGF = n̄ħω̄ + ħω̄/2."""
    omega_bar = mean_frequency(spec)
    return cs.hbar * omega_bar * (spec.nbar_total + 0.5)


def field_temperature(spec: ModeSpectrum, cs: ConstantsSet,
                      threshold: float = DEFAULT_NBAR_THRESHOLD) -> QualifiedValue:
    """T_KGF = ħω̄/k_B, flagged when n̄ is below ``threshold``."""
    result = QualifiedValue(cs.hbar * mean_frequency(spec) / cs.k_B)
    if spec.nbar_total < threshold:
        result = result.with_warning(
            f"T_KGF = hbar*omega_bar/k_B holds for nbar >> 1/2; nbar = {spec.nbar_total!r} "
            f"is below the validity threshold {threshold!r}"
        )
    return result


def field_entropy(spec: ModeSpectrum, cs: ConstantsSet) -> float:
    """S_KGF = 2 k_B n̄."""
    return 2.0 * cs.k_B * spec.nbar_total

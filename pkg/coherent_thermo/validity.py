"""
Values that carry validity notes alongside the number.

Several formulas are only stated for a regime (n̄ ≫ 1/2, d ≫ λ_C) or carry
an order-of-magnitude prefactor. The notes travel with the value so the
CLI can publish them as data instead of log text.
"""
import logging
from dataclasses import dataclass, field
from typing import Tuple

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QualifiedValue:
    """A number plus the validity notes that apply to it"""
    value: float
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    def __float__(self):
        return float(self.value)

    def with_warning(self, note: str) -> 'QualifiedValue':
        logger.warning(note)
        return QualifiedValue(self.value, self.warnings + (note,))

    @property
    def is_qualified(self) -> bool:
        return bool(self.warnings)

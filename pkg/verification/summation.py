"""Running floating-point sum with a compensation term."""
from typing import Iterable


class CompensatedSum:
    """
    Neumaier's variant of Kahan summation, kept as a running total.

    The rounding error of every addition is carried in ``_c``; the
    reported sum is ``_s + _c``.
    """

    def __init__(self, start: float = 0.0):
        self._s = float(start)
        self._c = 0.0
        self.count = 0

    def add(self, value: float) -> 'CompensatedSum':
        value = float(value)
        total = self._s + value
        if abs(self._s) >= abs(value):
            self._c += (self._s - total) + value
        else:
            self._c += (value - total) + self._s
        self._s = total
        self.count += 1
        return self

    def __iadd__(self, value):
        return self.add(value)

    @property
    def value(self) -> float:
        return self._s + self._c

    def __float__(self):
        return self.value

    def __repr__(self):
        return f"CompensatedSum({self.value!r}, terms={self.count})"


def compensated_sum(values: Iterable[float]) -> float:
    accumulator = CompensatedSum()
    for value in values:
        accumulator.add(value)
    return accumulator.value

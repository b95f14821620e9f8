"""Exact half-integer arithmetic on a doubled-integer representation.

Midpoint pairs carry weight 1/2 in the pair-count model, so the four
class counts and the wing sums live on the half-integer lattice.
Storing ``value * 2`` as a plain int keeps every sum, comparison and
tie test exact; nothing in this module touches floating point.
"""

from __future__ import annotations


def _dbl(other) -> int:
    if isinstance(other, Half):
        return other.doubled
    if isinstance(other, int):
        return 2 * other
    raise TypeError(f"cannot combine Half with {type(other).__name__}")


class Half:
    """A half-integer, stored as its doubled value."""

    __slots__ = ("doubled",)

    def __init__(self, doubled: int):
        self.doubled = int(doubled)

    @classmethod
    def of(cls, units: int) -> "Half":
        """Whole-number constructor: Half.of(3) == 3."""
        return cls(2 * units)

    def __add__(self, other):
        return Half(self.doubled + _dbl(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Half(self.doubled - _dbl(other))

    def __rsub__(self, other):
        return Half(_dbl(other) - self.doubled)

    def __neg__(self):
        return Half(-self.doubled)

    def __eq__(self, other):
        try:
            return self.doubled == _dbl(other)
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self.doubled < _dbl(other)

    def __le__(self, other):
        return self.doubled <= _dbl(other)

    def __gt__(self, other):
        return self.doubled > _dbl(other)

    def __ge__(self, other):
        return self.doubled >= _dbl(other)

    def __hash__(self):
        return hash(("Half", self.doubled))

    def __float__(self):
        # doubled/2 is a power-of-two division: exact in binary floating point
        return self.doubled / 2

    def ceil(self) -> int:
        return (self.doubled + 1) // 2

    def floor(self) -> int:
        return self.doubled // 2

    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def __str__(self) -> str:
        if self.doubled % 2 == 0:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self) -> str:
        return f"Half({self})"


def parse_half(text: str) -> Half:
    """Inverse of str(Half): accepts "k" or "j/2" with j odd allowed."""
    s = text.strip()
    if s.endswith("/2"):
        return Half(int(s[:-2]))
    return Half(2 * int(s))

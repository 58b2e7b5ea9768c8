"""Base-b digit decomposition and the generalized digit-power-sum map.

Digit vectors are tuples of ints, least-significant digit first.  The
canonical vector of 0 is the empty tuple, so nothing downstream ever has
to strip leading zeros; the power sum of an empty vector is 0.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

DigitVector = tuple[int, ...]


@dataclass(frozen=True)
class DigitSystem:
    """Parameters of the map: digits taken in `base`, raised to `exponent`."""

    base: int = 10
    exponent: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.base, int) or self.base < 2:
            raise ValueError(f"base must be an integer >= 2, got {self.base!r}")
        if not isinstance(self.exponent, int) or self.exponent < 1:
            raise ValueError(f"exponent must be an integer >= 1, got {self.exponent!r}")

    @property
    def digit_weight(self) -> int:
        """Largest value a single digit can contribute: (base-1)**exponent."""
        return (self.base - 1) ** self.exponent


def as_natural(value) -> int:
    """Coerce to a nonnegative int, rejecting negatives and non-integers."""
    n = operator.index(value)
    if n < 0:
        raise ValueError(f"expected a nonnegative integer, got {n}")
    return n


def to_digits(n: int, sys: DigitSystem) -> DigitVector:
    """Decompose n in the system's base, least-significant digit first.

    Extraction is by repeated division so every base >= 2 is first-class;
    no string formatting is involved.
    """
    n = as_natural(n)
    digits = []
    while n:
        n, d = divmod(n, sys.base)
        digits.append(d)
    return tuple(digits)


def from_digits(digits, sys: DigitSystem) -> int:
    """Recompose a digit vector (least-significant first) into its value.

    Trailing most-significant zeros are allowed on input; the result
    re-decomposes to the canonical (zero-free) vector.
    """
    digits = tuple(digits)
    for i, d in enumerate(digits):
        if not 0 <= d < sys.base:
            raise ValueError(f"digit {d} at index {i} out of range [0, {sys.base - 1}]")
    value = 0
    for d in reversed(digits):
        value = value * sys.base + d
    return value


def digit_count(n: int, sys: DigitSystem) -> int:
    """Number of digits of n in the system's base; 0 has zero digits."""
    n = as_natural(n)
    count = 0
    while n:
        n //= sys.base
        count += 1
    return count


def digit_power_sum(n: int, sys: DigitSystem) -> int:
    """Sum of the exponent-th powers of the base-b digits of n.

    Leading-zero padding of the digit expansion cannot affect the result,
    so the map is well defined on values rather than digit strings.
    """
    n = as_natural(n)
    e = sys.exponent
    total = 0
    while n:
        n, d = divmod(n, sys.base)
        total += d**e
    return total


def repunit(p: int, sys: DigitSystem) -> int:
    """The number written with p digits equal to 1; repunit(0) is 0.

    Since 1**e = 1 for every exponent, digit_power_sum(repunit(p)) == p,
    which witnesses surjectivity of the map.
    """
    p = as_natural(p)
    return (sys.base**p - 1) // (sys.base - 1)

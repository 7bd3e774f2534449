"""Exact coin angles: rational multiples of pi plus an optional real offset.

The textual form is ``"7pi/5"``, ``"pi/3"``, ``"3pi/2"``, ``"pi"`` or ``"0"``
(``π`` and ``*`` are accepted on input).  A disorder offset is written after
the rational part, e.g. ``"pi/3+0.0125"``.  Plain decimals parse to an
offset-only angle and emit :class:`InexactAngleWarning`, because revival and
periodicity checks depend on the angle being an exact rational of pi.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidArgumentError

__all__ = ["Angle", "InexactAngleWarning", "as_angle", "parse_angle"]


class InexactAngleWarning(UserWarning):
    pass


_RATIONAL = re.compile(
    r"""^\s*
    (?P<sign>[+-]?)\s*
    (?:
        (?P<zero>0+)
      | (?P<num>\d+)?\s*\*?\s*(?:pi|π)\s*(?:/\s*(?P<den>\d+))?
    )
    \s*(?P<offset>[+-]\s*(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?
    \s*$""",
    re.VERBOSE,
)


@dataclass(frozen=True, order=True)
class Angle:
    """Angle equal to ``multiple * pi + offset`` radians.

    ``multiple`` is reduced into ``[0, 2)`` on construction so the rational
    part always lies in ``[0, 2pi)``.
    """

    multiple: Fraction = Fraction(0)
    offset: float = 0.0

    def __post_init__(self):
        m = Fraction(self.multiple) % 2
        object.__setattr__(self, "multiple", m)
        object.__setattr__(self, "offset", float(self.offset))
        if not math.isfinite(self.offset):
            raise InvalidArgumentError(f"angle offset must be finite, got {self.offset}")

    @classmethod
    def pi_fraction(cls, numerator: int, denominator: int = 1) -> Angle:
        if denominator == 0:
            raise InvalidArgumentError("denominator must be nonzero")
        return cls(Fraction(numerator, denominator))

    @classmethod
    def from_radians(cls, value: float) -> Angle:
        return cls(Fraction(0), float(value))

    @property
    def radians(self) -> float:
        base = float(self.multiple) * math.pi
        return base + self.offset if self.offset else base

    @property
    def is_exact(self) -> bool:
        return self.offset == 0.0

    def __float__(self) -> float:
        return self.radians

    def shifted(self, delta: float) -> Angle:
        """Same rational part, offset increased by ``delta``."""
        return Angle(self.multiple, self.offset + float(delta))

    def __str__(self) -> str:
        p, q = self.multiple.numerator, self.multiple.denominator
        if p == 0:
            rational = "0"
        else:
            rational = ("pi" if p == 1 else f"{p}pi") + ("" if q == 1 else f"/{q}")
        if self.offset == 0.0:
            return rational
        if p == 0:
            return repr(self.offset)
        return f"{rational}{'+' if self.offset > 0 else '-'}{abs(self.offset)!r}"


def parse_angle(text: str) -> Angle:
    """Parse an angle literal.

    >>> parse_angle("7pi/5")
    Angle(multiple=Fraction(7, 5), offset=0.0)
    """
    text = str(text).strip()
    match = _RATIONAL.match(text)
    if match:
        if match["zero"] is not None:
            multiple = Fraction(0)
        else:
            num = int(match["num"]) if match["num"] else 1
            den = int(match["den"]) if match["den"] else 1
            if den == 0:
                raise InvalidArgumentError(f"zero denominator in angle {text!r}")
            multiple = Fraction(num, den)
        if match["sign"] == "-":
            multiple = -multiple
        offset = float(match["offset"].replace(" ", "")) if match["offset"] else 0.0
        return Angle(multiple, offset)
    try:
        value = float(text)
    except ValueError:
        raise InvalidArgumentError(f"cannot parse angle {text!r}") from None
    if not math.isfinite(value):
        raise InvalidArgumentError(f"angle must be finite, got {text!r}")
    warnings.warn(
        f"angle {text!r} is not an exact multiple of pi; periodicity detection may be affected",
        InexactAngleWarning,
        stacklevel=2,
    )
    return Angle.from_radians(value)


def as_angle(value) -> Angle:
    """Coerce an Angle, literal string or float (radians) to an Angle."""
    if isinstance(value, Angle):
        return value
    if isinstance(value, str):
        return parse_angle(value)
    if isinstance(value, Fraction):
        return Angle(value)
    return Angle.from_radians(float(value))

"""Exact arithmetic on dyadic rationals m / 2**e.

Values are normalized so the numerator is odd unless the exponent is
zero (and 0 always has exponent 0); equality is then plain field
comparison.  Python integers are unbounded, so composition chains never
overflow.  The textual form is ``p/2^e`` with ``p`` odd, or a bare
integer; the parser additionally accepts ``p/q`` for any power-of-two
``q`` and rejects every other denominator.
"""

from __future__ import annotations

import re

from .errors import NotAPowerOfTwo, ParseError, ValidationError

_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^([+-]?\d+)/(\d+)$")
_POW_RE = re.compile(r"^([+-]?\d+)/2\^(\d+)$")


class Dyadic:
    """A rational num / 2**exp in normal form."""

    __slots__ = ("num", "exp")

    def __init__(self, num: int, exp: int = 0):
        if exp < 0:
            raise ValidationError("dyadic exponent must be non-negative")
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        if num == 0:
            exp = 0
        self.num = num
        self.exp = exp

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        text = text.strip()
        if _INT_RE.match(text):
            return cls(int(text))
        m = _POW_RE.match(text)
        if m:
            return cls(int(m.group(1)), int(m.group(2)))
        m = _FRAC_RE.match(text)
        if m:
            num, den = int(m.group(1)), int(m.group(2))
            if den <= 0 or den & (den - 1):
                raise ParseError(f"denominator {den} is not a power of two")
            return cls(num, den.bit_length() - 1)
        raise ParseError(f"cannot parse dyadic rational: {text!r}")

    def __str__(self) -> str:
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/2^{self.exp}"

    def __repr__(self) -> str:
        return f"Dyadic({self.num}, {self.exp})"

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Dyadic(self.num * (1 << o.exp) + o.num * (1 << self.exp),
                      self.exp + o.exp)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Dyadic(self.num * o.num, self.exp + o.exp)

    __rmul__ = __mul__

    def __abs__(self):
        return Dyadic(abs(self.num), self.exp)

    # -- comparison ---------------------------------------------------

    def _cmp(self, other) -> int:
        lhs = self.num * (1 << other.exp)
        rhs = other.num * (1 << self.exp)
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.exp == o.exp

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._cmp(o) < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._cmp(o) <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._cmp(o) > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._cmp(o) >= 0

    def __hash__(self):
        return hash((self.num, self.exp))

    def __bool__(self):
        return self.num != 0

    # -- queries ------------------------------------------------------

    def is_integer(self) -> bool:
        return self.exp == 0

    def floor(self) -> int:
        return self.num >> self.exp

    def half(self) -> "Dyadic":
        return Dyadic(self.num, self.exp + 1)


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)


def pow2(k: int) -> Dyadic:
    """2**k as an exact Dyadic, for any integer k."""
    return Dyadic(1 << k) if k >= 0 else Dyadic(1, -k)


def compare(a: Dyadic, b: Dyadic) -> int:
    """-1, 0 or 1 according to the rational order of a and b."""
    return a._cmp(b)


def log2_ratio(a: Dyadic, b: Dyadic) -> int:
    """The integer k with a/b == 2**k.

    Raises ValidationError unless both arguments are positive, and
    NotAPowerOfTwo when the ratio has a nontrivial odd part.
    """
    if a.num <= 0 or b.num <= 0:
        raise ValidationError("log2_ratio requires positive arguments")
    an, sa = a.num, 0
    while an % 2 == 0:
        an //= 2
        sa += 1
    bn, sb = b.num, 0
    while bn % 2 == 0:
        bn //= 2
        sb += 1
    if an != bn:
        raise NotAPowerOfTwo(f"{a}/{b} is not an integer power of two")
    return sa - sb + b.exp - a.exp

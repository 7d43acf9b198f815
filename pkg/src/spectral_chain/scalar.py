"""Gaussian rationals ``a/b + (c/d) i`` with exact arithmetic."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import InvalidInput

Rational = Union[int, Fraction]
ScalarLike = Union["ExactScalar", int, Fraction, str]


def parse_fraction(text: object) -> Fraction:
    """Parse ``"a/b"``, ``"3"`` or an int into a Fraction; floats are rejected."""
    if isinstance(text, bool):
        raise InvalidInput(f"not a fraction: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise InvalidInput(f"expected a fraction string, got {type(text).__name__}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"not a fraction: {text!r}") from exc


class ExactScalar:
    __slots__ = ("_re", "_im", "_hash")

    def __init__(self, re: Rational | str = 0, im: Rational | str = 0) -> None:
        self._re = parse_fraction(re)
        self._im = parse_fraction(im)
        self._hash: int | None = None

    @classmethod
    def coerce(cls, value: ScalarLike) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        return cls(value)

    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        """Parse ``"a/b,c/d"`` (real part, imaginary part) or a bare real."""
        parts = text.split(",")
        if len(parts) == 1:
            return cls(parts[0])
        if len(parts) == 2:
            return cls(parts[0], parts[1])
        raise InvalidInput(f"expected 're,im', got {text!r}")

    @classmethod
    def from_json(cls, value: object) -> "ExactScalar":
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return cls(parse_fraction(value[0]), parse_fraction(value[1]))
        if isinstance(value, (str, int)) and not isinstance(value, bool):
            return cls(parse_fraction(value))
        raise InvalidInput(f"expected [re, im] pair, got {value!r}")

    def to_json(self) -> list[str]:
        return [str(self._re), str(self._im)]

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @property
    def re_num(self) -> int:
        return self._re.numerator

    @property
    def re_den(self) -> int:
        return self._re.denominator

    @property
    def im_num(self) -> int:
        return self._im.numerator

    @property
    def im_den(self) -> int:
        return self._im.denominator

    def is_zero(self) -> bool:
        return not self._re and not self._im

    def is_real(self) -> bool:
        return not self._im

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self._re, -self._im)

    def norm(self) -> Fraction:
        """Squared modulus ``|z|^2``."""
        return self._re * self._re + self._im * self._im

    def __add__(self, other: ScalarLike) -> "ExactScalar":
        o = ExactScalar.coerce(other)
        return ExactScalar(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "ExactScalar":
        o = ExactScalar.coerce(other)
        return ExactScalar(self._re - o._re, self._im - o._im)

    def __rsub__(self, other: ScalarLike) -> "ExactScalar":
        return ExactScalar.coerce(other) - self

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self._re, -self._im)

    def __mul__(self, other: ScalarLike) -> "ExactScalar":
        o = ExactScalar.coerce(other)
        return ExactScalar(
            self._re * o._re - self._im * o._im, self._re * o._im + self._im * o._re
        )

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return ExactScalar(self._re / n, -self._im / n)

    def __truediv__(self, other: ScalarLike) -> "ExactScalar":
        return self * ExactScalar.coerce(other).inverse()

    def __rtruediv__(self, other: ScalarLike) -> "ExactScalar":
        return ExactScalar.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "ExactScalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = ExactScalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExactScalar):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Fraction)):
            return not self._im and self._re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._re, self._im))
        return self._hash

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self._re, self._im)

    def __repr__(self) -> str:
        return f"ExactScalar({str(self._re)!r}, {str(self._im)!r})"

    def __str__(self) -> str:
        if not self._im:
            return str(self._re)
        if not self._re:
            return f"{self._im}i"
        sign = "+" if self._im > 0 else "-"
        return f"{self._re}{sign}{abs(self._im)}i"


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 1)

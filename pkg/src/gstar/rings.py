"""Exact coefficient fields: the rationals and prime fields F_p.

Polynomial and matrix code stays field-agnostic by duck typing: it only
adds, negates, multiplies and truth-tests coefficients.  The field objects
below exist to coerce integers and rationals at the input boundary and to
name the ring in reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import GstarError


class FieldError(GstarError, ValueError):
    pass


@dataclass(frozen=True)
class Fp:
    """An element of the field with ``p`` elements, stored as 0 <= value < p."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other: "Fp") -> None:
        if self.p != other.p:
            raise FieldError(f"mixed moduli {self.p} and {other.p}")

    def __add__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp(self.value + other.value, self.p)

    def __sub__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp(self.value - other.value, self.p)

    def __mul__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp(self.value * other.value, self.p)

    def __neg__(self) -> "Fp":
        return Fp(-self.value, self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __str__(self) -> str:
        return str(self.value)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Rationals:
    """The field of rational numbers, backed by :class:`fractions.Fraction`."""

    name = "q"
    characteristic = 0

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    def coerce(self, x) -> Fraction:
        return Fraction(x)

    def __repr__(self) -> str:
        return "Rationals()"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("rationals")


class PrimeField:
    """The field F_p for a prime ``p``."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.name = f"modp:{p}"
        self.characteristic = p

    @property
    def one(self) -> Fp:
        return Fp(1, self.p)

    @property
    def zero(self) -> Fp:
        return Fp(0, self.p)

    def coerce(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldError(f"cannot coerce from F_{x.p} to F_{self.p}")
            return x
        if isinstance(x, Fraction):
            num = Fp(x.numerator, self.p)
            den = Fp(x.denominator, self.p)
            if not den:
                raise FieldError(f"denominator {x.denominator} vanishes mod {self.p}")
            return num * Fp(pow(den.value, self.p - 2, self.p), self.p)
        return Fp(int(x), self.p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("primefield", self.p))


RATIONALS = Rationals()


def parse_field(text: str):
    """Parse a coefficient-ring name: ``q`` or ``modp:P`` with P prime."""
    if text == "q":
        return RATIONALS
    if text.startswith("modp:"):
        try:
            p = int(text[5:])
        except ValueError:
            raise FieldError(f"bad modulus in {text!r}") from None
        return PrimeField(p)
    raise FieldError(f"unknown coefficient ring {text!r}; use 'q' or 'modp:P'")

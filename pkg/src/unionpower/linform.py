"""Exact linear forms a*alpha + b*beta over the rationals.

Every value this package reports (index entries, coalition worths, dividends,
potentials) is a :class:`LinearForm`: a pair of reduced fractions that stays
symbolic in the two market coefficients until someone asks for an evaluation.
No floating point enters anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer string into a reduced Fraction.

    Decimal notation is rejected on purpose: the whole pipeline is exact and
    a float-looking input is almost always a mistake.
    """
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal (use p/q or an integer): {text!r}")
    return Fraction(text)


def _coef(value: Fraction, symbol: str) -> str:
    return f"{value}*{symbol}"


@dataclass(frozen=True)
class LinearForm:
    """An exact value ``a*alpha + b*beta``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    @staticmethod
    def of(a, b) -> "LinearForm":
        return LinearForm(Fraction(a), Fraction(b))

    @staticmethod
    def zero() -> "LinearForm":
        return _ZERO

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "LinearForm":
        return LinearForm(-self.a, -self.b)

    def scaled(self, factor) -> "LinearForm":
        f = Fraction(factor)
        return LinearForm(self.a * f, self.b * f)

    def evaluate(self, alpha, beta) -> Fraction:
        return self.a * Fraction(alpha) + self.b * Fraction(beta)

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def render(self) -> str:
        """Canonical string, e.g. ``4*a + 23/3*b``, ``-2*b``, ``0``.

        Zero terms are omitted; a negative second term renders with a minus
        join so the output never contains ``+ -``.
        """
        if self.is_zero():
            return "0"
        parts = []
        if self.a:
            parts.append(_coef(self.a, "a"))
        if self.b:
            if parts:
                sign = " + " if self.b > 0 else " - "
                parts.append(sign + _coef(abs(self.b), "b"))
            else:
                parts.append(_coef(self.b, "b"))
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()


_ZERO = LinearForm()


def sum_forms(forms) -> LinearForm:
    a = Fraction(0)
    b = Fraction(0)
    for f in forms:
        a += f.a
        b += f.b
    return LinearForm(a, b)

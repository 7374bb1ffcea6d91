"""Truncated formal power series in ``q^(1/delta)`` with integer coefficients."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd, lcm
from typing import Iterable, Mapping

from ._backend import kernels


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or an integer. Whitespace is not accepted."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text)
    if not s or any(ch.isspace() for ch in s):
        raise ValueError(f"bad rational {text!r}")
    num, _, den = s.partition("/")
    try:
        value = Fraction(int(num), int(den)) if den else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad rational {text!r}") from None
    return value


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class QSeries:
    """``sum_e coeffs[e] q^(e/delta)`` for ``e/delta <= cutoff``.

    Coefficients are stored densely; ``coeffs[e]`` is the coefficient of
    ``q^(e/delta)``.
    """

    delta: int
    cutoff: Fraction
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.delta < 1:
            raise ValueError("delta must be positive")
        cutoff = Fraction(self.cutoff)
        if cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        object.__setattr__(self, "cutoff", cutoff)
        top = floor(cutoff * self.delta)
        coeffs = tuple(int(c) for c in self.coeffs[: top + 1])
        coeffs += (0,) * (top + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_terms(cls, delta: int, cutoff, terms: Mapping[int, int] | Iterable[tuple[int, int]]) -> QSeries:
        cutoff = Fraction(cutoff)
        top = floor(cutoff * delta)
        dense = [0] * (top + 1)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            if 0 <= e <= top:
                dense[e] += c
            elif e < 0:
                raise ValueError("negative exponent")
        return cls(delta, cutoff, tuple(dense))

    @classmethod
    def one(cls, cutoff, delta: int = 1) -> QSeries:
        return cls.from_terms(delta, cutoff, {0: 1})

    @classmethod
    def zero(cls, cutoff, delta: int = 1) -> QSeries:
        return cls.from_terms(delta, cutoff, {})

    @property
    def top(self) -> int:
        """Largest retained exponent numerator."""
        return len(self.coeffs) - 1

    def coefficient(self, exponent) -> int:
        x = Fraction(exponent)
        if x > self.cutoff:
            raise ValueError(f"exponent {exponent} lies beyond the cutoff {self.cutoff}")
        e = x * self.delta
        if x < 0 or e.denominator != 1:
            return 0
        return self.coeffs[int(e)]

    def terms(self) -> list[tuple[int, int]]:
        return [(e, c) for e, c in enumerate(self.coeffs) if c]

    def regrade(self, delta: int) -> QSeries:
        if delta % self.delta:
            raise ValueError(f"cannot regrade from delta={self.delta} to {delta}")
        f = delta // self.delta
        return QSeries.from_terms(delta, self.cutoff, {e * f: c for e, c in self.terms()})

    def truncate(self, cutoff) -> QSeries:
        cutoff = Fraction(cutoff)
        if cutoff > self.cutoff:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.delta, cutoff, self.coeffs)

    def _aligned(self, other: QSeries) -> tuple[QSeries, QSeries]:
        d = lcm(self.delta, other.delta)
        c = min(self.cutoff, other.cutoff)
        return self.regrade(d).truncate(c), other.regrade(d).truncate(c)

    def __add__(self, other):
        if isinstance(other, int):
            other = QSeries.from_terms(self.delta, self.cutoff, {0: other})
        a, b = self._aligned(other)
        return QSeries(a.delta, a.cutoff, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.delta, self.cutoff, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries(self.delta, self.cutoff, tuple(other * c for c in self.coeffs))
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._aligned(other)
        return QSeries(a.delta, a.cutoff, tuple(kernels.convolve(list(a.coeffs), list(b.coeffs), a.top)))

    __rmul__ = __mul__

    def shift(self, e: int) -> QSeries:
        """Multiply by ``q^(e/delta)``."""
        return QSeries.from_terms(self.delta, self.cutoff, {x + e: c for x, c in self.terms()})

    def agrees_with(self, other: QSeries) -> bool:
        """Equal after regrading to the common delta and truncating to the smaller cutoff."""
        a, b = self._aligned(other)
        return a.coeffs == b.coeffs

    def reduced(self) -> QSeries:
        """Same series on the smallest grading that carries all its exponents."""
        g = self.delta
        for e, _ in self.terms():
            g = gcd(g, e)
        if g <= 1:
            return self
        return QSeries.from_terms(self.delta // g, self.cutoff, {e // g: c for e, c in self.terms()})

    def to_text(self) -> str:
        parts = []
        for e, c in self.terms():
            parts.append(str(c) if e == 0 else f"{c} * q^({e}/{self.delta})")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"delta": self.delta, "cutoff": format_rational(self.cutoff), "terms": [[e, c] for e, c in self.terms()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(", ", ": "))

    @classmethod
    def from_json(cls, data: dict) -> QSeries:
        return cls.from_terms(int(data["delta"]), parse_rational(data["cutoff"]), [(int(e), int(c)) for e, c in data["terms"]])

    def __str__(self):
        return self.to_text()


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def _integer_length(cutoff: Fraction) -> int:
    return floor(Fraction(cutoff)) + 1


def _spread(coeffs, delta: int, cutoff) -> QSeries:
    return QSeries.from_terms(delta, cutoff, {i * delta: c for i, c in enumerate(coeffs) if c})


@lru_cache(maxsize=None)
def _pochhammer_coeffs(n: int, length: int) -> tuple[int, ...]:
    out = [0] * length
    out[0] = 1
    for j in range(1, min(n, length - 1) + 1):
        for m in range(length - 1, j - 1, -1):
            out[m] -= out[m - j]
    return tuple(out)


@lru_cache(maxsize=None)
def _inv_pochhammer_coeffs(n: int, length: int) -> tuple[int, ...]:
    base = [1] + [0] * (length - 1)
    return tuple(kernels.divide_by_pochhammer(base, n))


def pochhammer(n: int, cutoff, delta: int = 1) -> QSeries:
    """``(q)_n = prod_{k=1}^n (1 - q^k)`` truncated at ``cutoff``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    cutoff = Fraction(cutoff)
    return _spread(_pochhammer_coeffs(n, _integer_length(cutoff)), delta, cutoff)


def inv_pochhammer(n: int, cutoff, delta: int = 1) -> QSeries:
    """``1 / (q)_n`` truncated at ``cutoff``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    cutoff = Fraction(cutoff)
    return _spread(_inv_pochhammer_coeffs(n, _integer_length(cutoff)), delta, cutoff)


@lru_cache(maxsize=4096)
def inv_pochhammer_product(parts: tuple[int, ...], length: int) -> tuple[int, ...]:
    """Integer-graded coefficients of ``prod_i 1/(q)_{parts[i]}``, ``parts`` sorted decreasingly."""
    if not parts:
        return (1,) + (0,) * (length - 1)
    head = inv_pochhammer_product(parts[:-1], length)
    return tuple(kernels.divide_by_pochhammer(list(head), parts[-1]))

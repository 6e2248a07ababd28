"""
Exact rationals with p-adic valuation, and truncated p-adic expansions.

Coefficients live as :class:`fractions.Fraction` so that valuations, norms
and leading digits are exact.  A :class:`PadicNumber` is the value
``p**valuation * unit`` where ``unit`` is a p-adic unit known modulo
``p**precision``; digits are the canonical base-p digits of ``unit``,
least significant first.

A value with ``precision == 0`` is zero: either exactly (valuation is
``INFINITY``) or only known to be divisible by ``p**valuation``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import PrecisionError

INFINITY = math.inf
WORD_LIMIT = 2**31

Rational = Union[int, Fraction]

# Miller-Rabin with these bases is deterministic below 3_215_031_751.
_MR_BASES = (2, 3, 5, 7)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@functools.lru_cache(maxsize=256)
def check_prime(p: int) -> int:
    """Return ``p`` if it is a word-size prime, raise otherwise."""
    if isinstance(p, bool) or not isinstance(p, int):
        raise TypeError(f"prime must be an int, got {type(p).__name__}")
    if not 2 <= p < WORD_LIMIT:
        raise ValueError(f"prime must lie in [2, 2**31), got {p}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def as_rational(x: Rational | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as an exact rational")


def int_valuation(n: int, p: int) -> int:
    """Exponent of ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation_of(x: Rational, p: int) -> int | float:
    """ord_p(x); ``INFINITY`` for zero."""
    x = as_rational(x)
    if x == 0:
        return INFINITY
    num, den = x.numerator, x.denominator
    if num % p == 0:
        return int_valuation(num, p)
    if den % p == 0:
        return -int_valuation(den, p)
    return 0


def norm_of(x: Rational, p: int) -> Fraction:
    v = valuation_of(x, p)
    if v == INFINITY:
        return Fraction(0)
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


def unit_part(x: Rational, p: int) -> Fraction:
    """``x * |x|_p``, the exact unit with ``x = p**v * unit``."""
    x = as_rational(x)
    if x == 0:
        raise ValueError("zero has no unit part")
    v = valuation_of(x, p)
    return x / p**v if v >= 0 else x * p ** (-v)


def residue(x: Rational, p: int, k: int) -> int:
    """Image of the p-integral rational ``x`` in Z/p^k."""
    x = as_rational(x)
    mod = p**k
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not a p-adic integer for p={p}")
    return x.numerator * pow(x.denominator, -1, mod) % mod


def leading_digit(x: Rational, p: int) -> int:
    """First canonical digit of the unit part of a nonzero ``x``."""
    return residue(unit_part(x, p), p, 1)


@dataclass(frozen=True)
class PadicNumber:
    """``p**valuation * unit`` with ``unit`` known modulo ``p**precision``."""

    p: int
    valuation: int | float
    unit: int
    precision: int

    def __post_init__(self):
        if self.precision < 0:
            raise ValueError("precision must be non-negative")
        if self.precision == 0:
            if self.unit != 0:
                raise ValueError("a zero value has unit 0")
            return
        if not isinstance(self.valuation, int):
            raise ValueError("nonzero values need an integer valuation")
        if not 0 < self.unit < self.p**self.precision or self.unit % self.p == 0:
            raise ValueError("unit must be a p-adic unit reduced mod p**precision")

    @classmethod
    def zero(cls, p: int, absolute_precision: int | float = INFINITY) -> PadicNumber:
        return cls(p, absolute_precision, 0, 0)

    @classmethod
    def from_residue(cls, n: int, p: int, absolute_precision: int) -> PadicNumber:
        """The class of the integer ``n`` modulo ``p**absolute_precision``."""
        n %= p**absolute_precision
        if n == 0:
            return cls.zero(p, absolute_precision)
        v = int_valuation(n, p)
        return cls(p, v, n // p**v, absolute_precision - v)

    @property
    def is_zero(self) -> bool:
        return self.precision == 0

    @property
    def is_exact_zero(self) -> bool:
        return self.precision == 0 and self.valuation == INFINITY

    @property
    def absolute_precision(self) -> int | float:
        return self.valuation + self.precision

    @property
    def digits(self) -> tuple[int, ...]:
        out = []
        u = self.unit
        for _ in range(self.precision):
            u, d = divmod(u, self.p)
            out.append(d)
        return tuple(out)

    def to_fraction(self) -> Fraction:
        """The exact rational ``p**v * unit`` represented by the stored digits."""
        if self.is_zero:
            return Fraction(0)
        if self.valuation >= 0:
            return Fraction(self.unit * self.p**self.valuation)
        return Fraction(self.unit, self.p ** (-self.valuation))

    def truncate(self, precision: int) -> PadicNumber:
        if self.is_zero or precision >= self.precision:
            return self
        if precision < 1:
            raise PrecisionError("cannot truncate below one digit")
        return PadicNumber(self.p, self.valuation, self.unit % self.p**precision, precision)

    def shift(self, k: int) -> PadicNumber:
        """Multiply by ``p**k`` (no precision loss)."""
        if self.is_exact_zero:
            return self
        return PadicNumber(self.p, self.valuation + k, self.unit, self.precision)

    def agrees_with(self, other: PadicNumber, digits: int) -> bool:
        """Same valuation and the same first ``digits`` digits."""
        if self.p != other.p:
            return False
        if self.is_zero or other.is_zero:
            return False
        if self.valuation != other.valuation:
            return False
        if min(self.precision, other.precision) < digits:
            return False
        return (self.unit - other.unit) % self.p**digits == 0

    # -- arithmetic -------------------------------------------------------

    def _absolute(self, other) -> PadicNumber:
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise ValueError(f"mismatched primes {self.p} and {other.p}")
            return other
        x = as_rational(other)
        if x == 0:
            return PadicNumber.zero(self.p)
        target = self.absolute_precision
        if target == INFINITY:
            raise PrecisionError("both operands exact; expand the rational explicitly")
        v = valuation_of(x, self.p)
        if v >= target:
            return PadicNumber.zero(self.p, target)
        return expand(x, self.p, target - v)

    def _relative(self, other) -> PadicNumber:
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise ValueError(f"mismatched primes {self.p} and {other.p}")
            return other
        x = as_rational(other)
        if x == 0:
            return PadicNumber.zero(self.p)
        if self.is_zero:
            # only the valuation of x matters for a zero partner
            return PadicNumber(self.p, valuation_of(x, self.p), 1, 1)
        return expand(x, self.p, self.precision)

    def __add__(self, other):
        try:
            y = self._absolute(other)
        except TypeError:
            return NotImplemented
        return _add(self, y)

    __radd__ = __add__

    def __neg__(self) -> PadicNumber:
        if self.is_zero:
            return self
        mod = self.p**self.precision
        return PadicNumber(self.p, self.valuation, -self.unit % mod, self.precision)

    def __sub__(self, other):
        try:
            y = self._absolute(other)
        except TypeError:
            return NotImplemented
        return _add(self, -y)

    def __rsub__(self, other):
        try:
            y = self._absolute(other)
        except TypeError:
            return NotImplemented
        return _add(y, -self)

    def __mul__(self, other):
        try:
            y = self._relative(other)
        except TypeError:
            return NotImplemented
        return _mul(self, y)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            y = self._relative(other)
        except TypeError:
            return NotImplemented
        return _div(self, y)

    def __rtruediv__(self, other):
        try:
            y = self._relative(other)
        except TypeError:
            return NotImplemented
        return _div(y, self)

    def __pow__(self, n: int) -> PadicNumber:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return _div(expand(1, self.p, max(self.precision, 1)), self ** (-n))
        result = expand(1, self.p, max(self.precision, 1))
        base = self
        while n:
            if n & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            n >>= 1
        return result

    def __str__(self) -> str:
        if self.is_exact_zero:
            return "0"
        if self.is_zero:
            return f"O({self.p}^{self.valuation})"
        body = " ".join(str(d) for d in self.digits)
        return f"{self.p}^{self.valuation} * ({body})"


def _add(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    if x.is_exact_zero:
        return y
    if y.is_exact_zero:
        return x
    p = x.p
    target = min(x.absolute_precision, y.absolute_precision)
    parts = [(t.valuation, t.unit) for t in (x, y) if not t.is_zero]
    if not parts:
        return PadicNumber.zero(p, target)
    low = min(v for v, _ in parts)
    if low >= target:
        return PadicNumber.zero(p, target)
    total = sum(u * p ** (v - low) for v, u in parts) % p ** (target - low)
    if total == 0:
        return PadicNumber.zero(p, target)
    w = int_valuation(total, p)
    return PadicNumber(p, low + w, total // p**w, target - low - w)


def _mul(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    p = x.p
    if x.is_exact_zero or y.is_exact_zero:
        return PadicNumber.zero(p)
    if x.is_zero or y.is_zero:
        bound = (x.absolute_precision if x.is_zero else x.valuation) + (
            y.absolute_precision if y.is_zero else y.valuation
        )
        return PadicNumber.zero(p, bound)
    n = min(x.precision, y.precision)
    return PadicNumber(p, x.valuation + y.valuation, x.unit * y.unit % p**n, n)


def _div(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    p = x.p
    if y.is_zero:
        raise ZeroDivisionError("division by a p-adic value indistinguishable from zero")
    if x.is_exact_zero:
        return x
    if x.is_zero:
        return PadicNumber.zero(p, x.absolute_precision - y.valuation)
    n = min(x.precision, y.precision)
    mod = p**n
    return PadicNumber(p, x.valuation - y.valuation, x.unit * pow(y.unit, -1, mod) % mod, n)


def expand(x: Rational, p: int, precision: int) -> PadicNumber:
    """Canonical expansion of ``x`` with ``precision`` digits; exact zero for 0."""
    x = as_rational(x)
    if x == 0:
        return PadicNumber.zero(p)
    if precision < 1:
        raise PrecisionError("an expansion needs at least one digit")
    v = valuation_of(x, p)
    return PadicNumber(p, v, residue(unit_part(x, p), p, precision), precision)


@dataclass(frozen=True)
class UnitDecomposition:
    valuation: int
    unit: PadicNumber


def unit_decompose(x: PadicNumber) -> UnitDecomposition:
    if x.is_exact_zero:
        raise ValueError("exact zero has no unit decomposition")
    if x.is_zero:
        raise PrecisionError(f"value is zero to precision {x.valuation}; no reliable digit")
    return UnitDecomposition(x.valuation, PadicNumber(x.p, 0, x.unit, x.precision))

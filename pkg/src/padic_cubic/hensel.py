"""
Hensel lifting, q-th roots in Q_p, and the quadratic solver.

Lifting is Newton iteration with precision doubling on integers modulo
``p**k``.  A seed ``(theta, i)`` whose derivative has valuation ``i > 0``
is handled through the substitution ``x = theta + p**(i+1) * t``, which
turns the problem into one with a unit derivative in ``t``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import HenselSeedError, PrecisionError, UnsupportedCaseError
from .ffield import power_residue_test, qth_roots_fp
from .padic import (
    INFINITY,
    PadicNumber,
    Rational,
    as_rational,
    expand,
    residue,
    unit_part,
    valuation_of,
)


def _horner(coeffs, x, mod):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % mod
    return acc


def _derivative(coeffs):
    return [k * c for k, c in enumerate(coeffs)][1:]


@dataclass(frozen=True)
class IntegerPolynomial:
    """Polynomial with p-adic integer coefficients, lowest degree first.

    Coefficients may be ints, p-integral Fractions, or PadicNumbers of
    non-negative valuation (whose precision then bounds any lift).
    """

    p: int
    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if not coeffs:
            raise ValueError("empty polynomial")
        for c in coeffs:
            if isinstance(c, PadicNumber):
                if c.p != self.p:
                    raise ValueError("coefficient over a different prime")
                if not c.is_zero and c.valuation < 0:
                    raise ValueError(f"coefficient {c} is not a p-adic integer")
            elif as_rational(c).denominator % self.p == 0:
                raise ValueError(f"coefficient {c} is not a p-adic integer")
        lead = coeffs[-1]
        if (lead.is_exact_zero if isinstance(lead, PadicNumber) else lead == 0):
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def coefficient_precision(self) -> int | float:
        precs = [c.absolute_precision for c in self.coefficients if isinstance(c, PadicNumber)]
        return min(precs, default=INFINITY)

    def residues(self, k: int) -> list[int]:
        """Coefficients reduced modulo ``p**k``."""
        if k > self.coefficient_precision:
            raise PrecisionError(
                f"coefficients are only known mod p^{self.coefficient_precision}, need p^{k}"
            )
        out = []
        for c in self.coefficients:
            value = c.to_fraction() if isinstance(c, PadicNumber) else c
            out.append(residue(value, self.p, k))
        return out

    def evaluate(self, x: Rational) -> Fraction:
        """Exact value at ``x`` (PadicNumber coefficients at their stored digits)."""
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            value = c.to_fraction() if isinstance(c, PadicNumber) else as_rational(c)
            acc = acc * x + value
        return acc


@dataclass(frozen=True)
class LiftSeed:
    theta: int
    i: int = 0


def check_seed(f: IntegerPolynomial, seed: LiftSeed) -> None:
    p, i, theta = f.p, seed.i, seed.theta
    if i < 0:
        raise HenselSeedError("derivative level i must be non-negative")
    c = f.residues(2 * i + 2)
    if _horner(c, theta, p ** (2 * i + 1)) != 0:
        raise HenselSeedError(f"f(theta) is not 0 mod p^{2 * i + 1}")
    d = _horner(_derivative(c), theta, p ** (i + 1))
    if d % p**i:
        raise HenselSeedError(f"f'(theta) is not 0 mod p^{i}")
    if d == 0:
        raise HenselSeedError(f"f'(theta) is 0 mod p^{i + 1}")


def _newton(coeffs, x, target, p):
    dcoeffs = _derivative(coeffs)
    k = 1
    while k < target:
        k = min(2 * k, target)
        mod = p**k
        fx = _horner(coeffs, x, mod)
        x = (x - fx * pow(_horner(dcoeffs, x, mod), -1, mod)) % mod
    return x % p**target


def lift_residue(f: IntegerPolynomial, seed: LiftSeed, absolute: int) -> int:
    """The root selected by ``seed`` as an integer modulo ``p**absolute``."""
    check_seed(f, seed)
    p, i, theta = f.p, seed.i, seed.theta
    if absolute <= i + 1:
        return theta % p**absolute
    if i == 0:
        return _newton(f.residues(absolute), theta % p, absolute, p)
    c = f.residues(absolute + 2 * i + 1)
    mod = p ** (absolute + 2 * i + 1)
    scale = p ** (i + 1)
    # Taylor coefficients of f(theta + p^(i+1) t), divided by p^(2i+1)
    g = []
    for j in range(len(c)):
        tj = sum(c[k] * math.comb(k, j) * pow(theta, k - j, mod) for k in range(j, len(c))) % mod
        g.append(tj * scale**j // p ** (2 * i + 1) if j else tj // p ** (2 * i + 1))
    g = [gj % p**absolute for gj in g]
    t0 = -g[0] * pow(g[1], -1, p) % p
    t = _newton(g, t0, absolute - i - 1, p)
    return (theta + scale * t) % p**absolute


def hensel_lift(f: IntegerPolynomial, seed: LiftSeed, N: int) -> PadicNumber:
    """The unique root congruent to ``seed.theta`` mod ``p**(i+1)``, to N digits."""
    if N < 1:
        raise PrecisionError("need at least one digit")
    p = f.p
    absolute = N + seed.i + 1
    while True:
        x = lift_residue(f, seed, absolute)
        root = PadicNumber.from_residue(x, p, absolute)
        if not root.is_zero and root.precision >= N:
            return root.truncate(N)
        if root.is_zero and f.evaluate(0) == 0:
            return PadicNumber.zero(p)
        absolute *= 2


def digit_lift(f: IntegerPolynomial, seed: LiftSeed, absolute: int) -> int:
    """Digit-by-digit lift; a slow reference for :func:`lift_residue`."""
    check_seed(f, seed)
    p, i = f.p, seed.i
    c = f.residues(absolute + i + 1)
    x = seed.theta % p ** (i + 1)
    for k in range(i + 1, absolute):
        mod = p ** (k + i + 1)
        for d in range(p):
            if _horner(c, x + d * p**k, mod) == 0:
                x += d * p**k
                break
        else:
            raise AssertionError("no digit extends the root")
    return x % p**absolute


# -- roots of x^q = a -----------------------------------------------------


def _unit_qth_roots(u: int, q: int, p: int, absolute: int) -> list[int]:
    """Roots of ``y**q == u`` for a unit u, as integers mod p**absolute (p does not divide q)."""
    f = IntegerPolynomial(p, (-u,) + (0,) * (q - 1) + (1,))
    return [lift_residue(f, LiftSeed(s), absolute) for s in qth_roots_fp(u % p, q, p)]


def qth_root_qp(a: Rational, q: int, N: int, p: int) -> list[PadicNumber]:
    """All solutions of ``x**q == a`` in Q_p, each to N digits."""
    a = as_rational(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    if q < 1:
        raise ValueError("q must be a positive integer")
    if q % p == 0:
        raise UnsupportedCaseError(f"x^q = a with p | q (p={p}, q={q}) is not supported")
    v = valuation_of(a, p)
    if v % q:
        return []
    u = residue(unit_part(a, p), p, N)
    return [
        PadicNumber(p, v // q, y, N) for y in _unit_qth_roots(u, q, p, N)
    ]


def padic_qth_roots(x: PadicNumber, q: int) -> list[PadicNumber]:
    """q-th roots of a truncated p-adic number (p must not divide q)."""
    p = x.p
    if q % p == 0:
        raise UnsupportedCaseError(f"p-adic roots with p | q (p={p}, q={q}) are not supported")
    if x.is_zero:
        raise PrecisionError("root of a value indistinguishable from zero")
    if x.valuation % q:
        return []
    return [
        PadicNumber(p, x.valuation // q, y, x.precision)
        for y in _unit_qth_roots(x.unit, q, p, x.precision)
    ]


# -- quadratics -----------------------------------------------------------


def _sqrt_unit(u: int, p: int, absolute: int) -> int:
    """Some s with s*s == u mod p**absolute; u must be a square unit."""
    if p != 2:
        return _unit_qth_roots(u, 2, p, absolute)[0]
    if u % 8 != 1:
        raise ValueError("a 2-adic unit square is 1 mod 8")
    s = 1
    for k in range(3, absolute):
        if (s * s - u) % 2 ** (k + 1):
            s += 2 ** (k - 1)
    return s % 2**absolute


def is_square_qp(x: Rational, p: int) -> bool:
    x = as_rational(x)
    if x == 0:
        return True
    if valuation_of(x, p) % 2:
        return False
    u = unit_part(x, p)
    if p == 2:
        return residue(u, 2, 3) == 1
    return power_residue_test(residue(u, p, 1), 2, p)


def quadratic_solve_qp(q: Rational, r: Rational, N: int, p: int) -> list[tuple[PadicNumber, int]]:
    """Roots of ``x^2 + q x + r`` in Q_p as ``(root, multiplicity)`` pairs."""
    q, r = as_rational(q), as_rational(r)
    half = q / 2
    disc = half * half - r
    if disc == 0:
        return [(expand(-half, p, N), 2)]
    if r == 0:
        return sorted([(PadicNumber.zero(p), 1), (expand(-q, p, N), 1)], key=_root_key)
    if not is_square_qp(disc, p):
        return []
    v = valuation_of(disc, p)
    u = unit_part(disc, p)
    work = N + 4
    while True:
        s = _sqrt_unit(residue(u, p, work), p, work)
        reliable = work - 1 if p == 2 else work
        root_s = PadicNumber.from_residue(s, p, reliable).shift(v // 2)
        roots = [root_s - half, -root_s - half]
        if all(not x.is_zero and x.precision >= N for x in roots):
            return sorted(((x.truncate(N), 1) for x in roots), key=_root_key)
        work *= 2


def _root_key(item):
    x = item[0]
    return (x.valuation, x.unit)

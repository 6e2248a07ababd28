"""
Brute-force ground truth for root counts over F_p, Z_p^*, Z_p and Q_p.

Nothing here looks at norms of a and b or at any case table.  Roots are
found by walking residue classes of the cleared integer polynomial: a
class ``c mod p^j`` that still satisfies ``F(c) = 0 mod p^j`` is accepted
as a root once ``i = ord_p F'(c)`` satisfies ``i < j`` and ``j >= 2i + 1``
(the Hensel seed test), and is refined otherwise.  Repeated roots are
split off first with an exact gcd over Q.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .padic import as_rational, residue, unit_part, valuation_of

DEFAULT_K = 8
DEFAULT_T = 4
K_CAP = 64
T_CAP = 64


class InsufficientModulusError(ArithmeticError):
    """Some residue class could not be classified below p^K."""


class WindowTooSmallError(ArithmeticError):
    """A root could have a valuation outside the scanned window."""


@dataclass(frozen=True)
class Witness:
    residue: int  # representative of the root class, as an integer
    level: int  # the class is residue mod p^level
    derivative_valuation: int | float
    valuation: int = 0  # root = p^valuation * y with y in the class
    multiplicity: int = 1
    exact: Fraction | None = None  # the root itself, when it was found over Q


@dataclass(frozen=True)
class OracleVerdict:
    count: int
    witnesses: tuple[Witness, ...]
    K: int
    valuation_window: tuple[int, int] | None = None

    @property
    def count_distinct(self) -> int:
        return len(self.witnesses)


# -- F_p -----------------------------------------------------------------


def fp_bruteforce(a0: int, b0: int, p: int) -> OracleVerdict:
    """Every x in F_p with x^3 + a0 x = b0, with multiplicity."""
    found = []
    for x in range(p):
        if (x**3 + a0 * x - b0) % p:
            continue
        mult = 1
        if (3 * x * x + a0) % p == 0:
            mult = 3 if (6 * x) % p == 0 else 2
        found.append(Witness(x, 1, 0 if mult == 1 else 1, 0, mult))
    return OracleVerdict(sum(w.multiplicity for w in found), tuple(found), 1)


# -- exact polynomials over Q (lowest degree first) ----------------------


def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _divmod(f, g):
    f = [Fraction(c) for c in f]
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 1)
    while len(f) >= len(g) and f:
        c = f[-1] / g[-1]
        shift = len(f) - len(g)
        q[shift] = c
        for k, gk in enumerate(g):
            f[shift + k] -= c * gk
        f = _trim(f)
    return _trim(q), f


def _gcd(f, g):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, _divmod(f, g)[1]
    return [c / f[-1] for c in f]


def _derivative(f):
    return [k * c for k, c in enumerate(f)][1:]


def _split_repeated(f):
    """``(h, repeated)``: h has the simple roots of f, ``repeated`` the rest exactly."""
    g = _gcd(f, _derivative(f))
    if len(g) <= 1:
        return f, []
    rad = _divmod(g, _gcd(g, _derivative(g)))[0]
    if len(rad) != 2:
        raise NotImplementedError("repeated roots of degree > 1 over Q")
    r = -rad[0] / rad[1]
    mult = 1
    h = list(f)
    while True:
        quotient, rem = _divmod(h, [-r, Fraction(1)])
        if rem:
            break
        h, mult = quotient, mult + 1
    return h, [(r, mult - 1)]


def _cleared(f) -> list[int]:
    """Primitive integer polynomial with the roots of the rational poly f."""
    f = [as_rational(c) for c in f]
    den = math.lcm(*(c.denominator for c in f))
    ints = [int(c * den) for c in f]
    content = math.gcd(*ints)
    return [c // content for c in ints]


def _eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# -- Z_p tree search -----------------------------------------------------


def _simple_roots(F: list[int], p: int, K: int, units: bool) -> list[Witness]:
    """Classes of Z_p roots of a squarefree integer polynomial."""
    if len(F) <= 1:
        return []
    dF = _derivative(F)
    out = {}
    stack = [(c, 1) for c in range(1 if units else 0, p) if _eval(F, c) % p == 0]
    while stack:
        c, j = stack.pop()
        d = _eval(dF, c)
        i = valuation_of(d, p) if d else math.inf
        if i < j and j >= 2 * i + 1:
            # one root per class mod p^(i+1); siblings below it are the same root
            key = c % p ** (i + 1)
            out.setdefault(key, Witness(key, i + 1, i))
            continue
        if j >= K:
            raise InsufficientModulusError(f"class {c} mod {p}^{j} undecided at K={K}")
        step = p**j
        mod = step * p
        for digit in range(p):
            c2 = c + digit * step
            if _eval(F, c2) % mod == 0:
                stack.append((c2, j + 1))
    return sorted(out.values(), key=lambda w: w.residue)


def poly_zp_oracle(coeffs: Sequence, p: int, K: int = DEFAULT_K, units: bool = False) -> OracleVerdict:
    """Roots in Z_p (or Z_p^*) of a rational polynomial, lowest degree first."""
    f = _trim(as_rational(c) for c in coeffs)
    if len(f) < 2:
        raise ValueError("need a nonconstant polynomial")
    h, repeated = _split_repeated(f)
    witnesses = []
    for r, mult in repeated:
        v = valuation_of(r, p)
        if (v == 0) if units else (v >= 0):
            witnesses.append(Witness(residue(r, p, K), K, math.inf, 0, mult, r))
    witnesses.extend(_simple_roots(_cleared(h), p, K, units))
    return OracleVerdict(sum(w.multiplicity for w in witnesses), tuple(witnesses), K)


def _candidate_valuations(f, p) -> set[int]:
    """Integer root valuations: minus the slopes of the lower Newton hull."""
    pts = [(k, valuation_of(c, p)) for k, c in enumerate(f) if c != 0]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    out = set()
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        t = Fraction(y1 - y2, x2 - x1)
        if t.denominator == 1:
            out.add(int(t))
    return out


def _exact_witness(r: Fraction, mult: int, p: int, K: int) -> Witness:
    if r == 0:
        return Witness(0, K, math.inf, math.inf, mult, r)
    return Witness(residue(unit_part(r, p), p, K), K, math.inf, valuation_of(r, p), mult, r)


def poly_qp_oracle(coeffs: Sequence, p: int, K: int = DEFAULT_K, T: int = DEFAULT_T) -> OracleVerdict:
    """Roots in Q_p, scanning x = p^t y with t in [-T, T] and y a unit."""
    f = _trim(as_rational(c) for c in coeffs)
    if len(f) < 2:
        raise ValueError("need a nonconstant polynomial")
    outside = sorted(t for t in _candidate_valuations(f, p) if abs(t) > T)
    if outside:
        raise WindowTooSmallError(f"valuation {outside[0]} lies outside [-{T}, {T}]")
    h, repeated = _split_repeated(f)
    witnesses = [_exact_witness(r, m, p, K) for r, m in repeated]
    if h[0] == 0:
        witnesses.append(_exact_witness(Fraction(0), 1, p, K))
        h = h[1:]
    for t in range(-T, T + 1):
        scaled = [c * Fraction(p) ** (k * t) for k, c in enumerate(h)]
        for w in _simple_roots(_cleared(scaled), p, K, units=True):
            witnesses.append(Witness(w.residue, w.level, w.derivative_valuation, t))
    return OracleVerdict(sum(w.multiplicity for w in witnesses), tuple(witnesses), K, (-T, T))


# -- the depressed cubic -------------------------------------------------


def _cubic_coeffs(eq):
    if eq.ab_zero:
        raise ValueError("a = 0 or b = 0 is handled by the ab-zero path, not the oracle")
    return [-eq.b, eq.a, Fraction(0), Fraction(1)]


def zp_oracle(eq, K: int = DEFAULT_K, units: bool = False) -> OracleVerdict:
    return poly_zp_oracle(_cubic_coeffs(eq), eq.p, K, units)


def qp_oracle(eq, K: int = DEFAULT_K, T: int = DEFAULT_T) -> OracleVerdict:
    return poly_qp_oracle(_cubic_coeffs(eq), eq.p, K, T)


def escalating(oracle, *args, K: int = DEFAULT_K, T: int | None = None):
    """Call ``oracle`` doubling K (and T) on the explicit 'insufficient' errors."""
    while True:
        try:
            if T is None:
                return oracle(*args, K=K)
            return oracle(*args, K=K, T=T)
        except InsufficientModulusError:
            if K >= K_CAP:
                raise
            K = min(2 * K, K_CAP)
        except WindowTooSmallError:
            if T >= T_CAP:
                raise
            T = min(2 * T, T_CAP)


def oracle_count(eq, domain: str) -> OracleVerdict:
    """Oracle verdict for ``domain`` in {'units', 'zp', 'qp'}, escalating as needed."""
    if domain == "units":
        return escalating(lambda e, K: zp_oracle(e, K, units=True), eq)
    if domain == "zp":
        return escalating(lambda e, K: zp_oracle(e, K), eq)
    if domain == "qp":
        return escalating(lambda e, K, T: qp_oracle(e, K, T), eq, T=DEFAULT_T)
    raise ValueError(f"unknown domain {domain!r}")

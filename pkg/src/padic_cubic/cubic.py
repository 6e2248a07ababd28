"""
Solvability, root counts and roots of ``x^3 + a x = b`` over Z_p^*, Z_p
and Q_p for primes p > 3.

With ``alpha = ord_p(a)`` and ``beta = ord_p(b)``, a root ``x = p^k y``
(``y`` a unit) is a unit root of the scaled equation

    y^3 + A y = B,    A = p^(-2k) a,   B = p^(-3k) b.

Unit roots of the scaled equation only occur in four shapes:

* ``cube``      |A| < |B| = 1, seeds are cube roots of b0 mod p;
* ``sqrt``      |B| < |A| = 1, seeds are square roots of -a0 mod p;
* ``residual``  |A| = |B| = 1, seeds come from the cubic over F_p;
* ``linear``    |A| = |B| > 1, the seed solves a0 y = b0 mod p.

``solvable`` and ``count`` evaluate the norm/residue criteria directly;
``roots`` builds the roots from the scalings above.  Tests hold the
three against each other and against the brute-force oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property

from .errors import PrecisionError, UnsupportedCaseError
from .ffield import fp_cubic_classify, fp_cubic_count, power_residue_test, qth_roots_fp, u_term
from .hensel import IntegerPolynomial, LiftSeed, hensel_lift, lift_residue, qth_root_qp, quadratic_solve_qp
from .padic import (
    INFINITY,
    PadicNumber,
    Rational,
    as_rational,
    check_prime,
    expand,
    leading_digit,
    norm_of,
    residue,
    unit_part,
    valuation_of,
)

DEFAULT_PRECISION = 64
GUARD = 2


class Domain(str, Enum):
    UNITS = "units"
    INTEGERS = "zp"
    FIELD = "qp"

    def admits(self, valuation: int | float) -> bool:
        """Whether a root of this valuation (INFINITY for 0) lies in the domain."""
        if self is Domain.UNITS:
            return valuation == 0
        if self is Domain.INTEGERS:
            return valuation >= 0
        return True


@dataclass(frozen=True)
class CubicEquation:
    """``x^3 + a x = b`` over Q_p with exact rational coefficients."""

    p: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        check_prime(self.p)
        if self.p <= 3:
            raise UnsupportedCaseError(f"cubic criteria need p > 3, got p={self.p}")
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))

    @cached_property
    def alpha(self) -> int | float:
        return valuation_of(self.a, self.p)

    @cached_property
    def beta(self) -> int | float:
        return valuation_of(self.b, self.p)

    @cached_property
    def norm_a(self) -> Fraction:
        return norm_of(self.a, self.p)

    @cached_property
    def norm_b(self) -> Fraction:
        return norm_of(self.b, self.p)

    @property
    def ab_zero(self) -> bool:
        return self.a == 0 or self.b == 0

    @cached_property
    def a_unit(self) -> Fraction:
        return unit_part(self.a, self.p)

    @cached_property
    def b_unit(self) -> Fraction:
        return unit_part(self.b, self.p)

    @cached_property
    def a0(self) -> int:
        return leading_digit(self.a, self.p)

    @cached_property
    def b0(self) -> int:
        return leading_digit(self.b, self.p)

    @cached_property
    def disc(self) -> DiscriminantData:
        return discriminant_data(self)

    def evaluate(self, x: Rational) -> Fraction:
        x = as_rational(x)
        return x * x * x + self.a * x - self.b

    def residual_valuation(self, root: PadicNumber) -> int | float:
        """ord_p of ``x^3 + a x - b`` at the digits stored in ``root``."""
        return valuation_of(self.evaluate(root.to_fraction()), self.p)


@dataclass(frozen=True)
class DiscriminantData:
    """``D = -4 (a|a|)^3 - 27 (b|b|)^2`` and the residues derived from it."""

    D: Fraction
    is_zero: bool
    D_norm_log: int | None  # log_p |D|_p, i.e. -ord_p(D)
    d0: int | None  # leading digit of the unit part of D
    D0: int  # -4 a0^3 - 27 b0^2 mod p
    u: int  # u_{p-2}
    delta0: int | None  # smaller square root of -3 d0 mod p, when one exists


def discriminant_data(eq: CubicEquation) -> DiscriminantData:
    if eq.ab_zero:
        raise ValueError("discriminant data needs a and b nonzero")
    p = eq.p
    D = -4 * eq.a_unit**3 - 27 * eq.b_unit**2
    D0 = (-4 * eq.a0**3 - 27 * eq.b0**2) % p
    u = u_term(eq.a0, eq.b0, p, p - 2)
    if D == 0:
        return DiscriminantData(D, True, None, None, D0, u, None)
    d0 = leading_digit(D, p)
    delta0 = None
    if power_residue_test(-3 * d0, 2, p):
        delta0 = qth_roots_fp(-3 * d0, 2, p)[0]
    return DiscriminantData(D, False, -valuation_of(D, p), d0, D0, u, delta0)


@dataclass(frozen=True)
class SolvabilityReport:
    solvable: bool
    branch: str
    scaling_exponents: tuple[int, ...] = ()
    seed: int | None = None


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicities; ``roots`` is ``None`` for a count-only answer."""

    roots: tuple[tuple[PadicNumber, int], ...] | None
    count_with_multiplicity: int
    count_distinct: int
    branch: str


def _require_p(eq: CubicEquation) -> None:
    if eq.p <= 3:
        raise UnsupportedCaseError(f"cubic criteria need p > 3, got p={eq.p}")


def _cube_b0(eq: CubicEquation) -> bool:
    return power_residue_test(eq.b0, 3, eq.p)


def _sqrt_minus_a0(eq: CubicEquation) -> bool:
    return power_residue_test(-eq.a0, 2, eq.p)


def _residual_has_root(eq: CubicEquation) -> bool:
    dd = eq.disc
    return dd.D0 * dd.u * dd.u % eq.p != 9 * eq.a0 * eq.a0 % eq.p


def _residual_seed(eq: CubicEquation) -> int:
    report = fp_cubic_classify(eq.a0, eq.b0, eq.p)
    return next(x for x, m in report.roots if m == 1 and (3 * x * x + eq.a0) % eq.p)


# -- solvability ---------------------------------------------------------


def solvable(eq: CubicEquation, dom: Domain) -> SolvabilityReport:
    """Decide whether the equation has a root in ``dom``."""
    _require_p(eq)
    dom = Domain(dom)
    if eq.ab_zero:
        rs = ab_zero_solve(eq, dom, 4)
        ks = sorted({x.valuation for x, _ in rs.roots if not x.is_zero})
        return SolvabilityReport(bool(rs.roots), rs.branch, tuple(ks))
    al, be, p = eq.alpha, eq.beta, eq.p
    if dom is Domain.UNITS:
        if al > be == 0:
            ok = _cube_b0(eq)
            return SolvabilityReport(ok, "units:cube-of-b0", (0,) if ok else (),
                                     qth_roots_fp(eq.b0, 3, p)[0] if ok else None)
        if be > al == 0:
            ok = _sqrt_minus_a0(eq)
            return SolvabilityReport(ok, "units:sqrt-of-minus-a0", (0,) if ok else (),
                                     qth_roots_fp(-eq.a0, 2, p)[0] if ok else None)
        if al == be == 0:
            ok = _residual_has_root(eq)
            return SolvabilityReport(ok, "units:residual-cubic", (0,) if ok else (),
                                     _residual_seed(eq) if ok else None)
        if al == be < 0:
            return SolvabilityReport(True, "units:linear", (0,), eq.b0 * pow(eq.a0, -1, p) % p)
        return SolvabilityReport(False, "units:none")

    nonneg = dom is Domain.INTEGERS
    prefix = "integers" if nonneg else "field"
    if 3 * al > 2 * be:
        if (be >= 0 or not nonneg) and be % 3 == 0 and _cube_b0(eq):
            return SolvabilityReport(True, f"{prefix}:cube-of-b0", (be // 3,), qth_roots_fp(eq.b0, 3, p)[0])
    elif 3 * al == 2 * be:
        if (be >= 0 or not nonneg) and _residual_has_root(eq):
            return SolvabilityReport(True, f"{prefix}:residual-cubic", (al // 2,), _residual_seed(eq))
    elif not nonneg or al <= be:
        ks = []
        if al % 2 == 0 and (al >= 0 or not nonneg) and _sqrt_minus_a0(eq):
            ks.append(al // 2)
        ks.append(be - al)
        return SolvabilityReport(True, f"{prefix}:dominant-a", tuple(ks), eq.b0 * pow(eq.a0, -1, p) % p)
    return SolvabilityReport(False, f"{prefix}:none")


# -- counting ------------------------------------------------------------


def _residual_rows(eq: CubicEquation, prefix: str, gate: bool):
    """Counting rows for |a|^3 = |b|^2: (label, with multiplicity, distinct, holds)."""
    if not gate:
        return []
    p, dd = eq.p, eq.disc
    t = dd.D0 * dd.u * dd.u % p
    small = not dd.is_zero and dd.D_norm_log < 0
    even = small and dd.D_norm_log % 2 == 0
    d0_square = even and power_residue_test(dd.d0, 2, p)
    return [
        (f"{prefix}:residual:D=0", 3, 2, dd.is_zero),
        (f"{prefix}:residual:D-square", 3, 3, d0_square),
        (f"{prefix}:residual:D-nonsquare", 1, 1, even and not d0_square),
        (f"{prefix}:residual:D-odd", 1, 1, small and not even),
        (f"{prefix}:residual:u=0", 3, 3, not dd.is_zero and dd.D_norm_log == 0 and dd.u == 0),
        (f"{prefix}:residual:one-root", 1, 1, t != 0 and t != 9 * eq.a0 * eq.a0 % p),
    ]


def _count_rows(eq: CubicEquation, dom: Domain):
    al, be, p = eq.alpha, eq.beta, eq.p
    cube_three = p % 3 == 1 and _cube_b0(eq)
    cube_one = p % 3 == 2
    if dom is Domain.UNITS:
        return [
            ("units:cube-of-b0:three", 3, 3, al > be == 0 and cube_three),
            ("units:cube-of-b0:one", 1, 1, al > be == 0 and cube_one),
            ("units:sqrt-of-minus-a0", 2, 2, be > al == 0 and _sqrt_minus_a0(eq)),
            *_residual_rows(eq, "units", al == be == 0),
            ("units:linear", 1, 1, al == be < 0),
        ]
    nonneg = dom is Domain.INTEGERS
    prefix = "integers" if nonneg else "field"
    low_a = 3 * al > 2 * be and be % 3 == 0 and (be >= 0 or not nonneg)
    high_a = 3 * al < 2 * be and (al >= 0 or not nonneg)
    a_even = al % 2 == 0
    rows = [
        (f"{prefix}:cube-of-b0:three", 3, 3, low_a and cube_three),
        (f"{prefix}:cube-of-b0:one", 1, 1, low_a and cube_one),
        *_residual_rows(eq, prefix, 3 * al == 2 * be and (be >= 0 or not nonneg)),
        (f"{prefix}:dominant-a:three", 3, 3, high_a and a_even and _sqrt_minus_a0(eq)),
        (f"{prefix}:dominant-a:nonsquare", 1, 1, high_a and a_even and not _sqrt_minus_a0(eq)),
        (f"{prefix}:dominant-a:odd", 1, 1, high_a and not a_even),
    ]
    if nonneg:
        rows.append(("integers:dominant-a:large", 1, 1, 3 * al < 2 * be and be >= al and al < 0))
    return rows


def count(eq: CubicEquation, dom: Domain) -> RootSet:
    """Number of roots in ``dom`` (with multiplicity and distinct), no digits."""
    _require_p(eq)
    dom = Domain(dom)
    if eq.ab_zero:
        rs = ab_zero_solve(eq, dom, 4)
        return RootSet(None, rs.count_with_multiplicity, rs.count_distinct, rs.branch)
    matched = [row for row in _count_rows(eq, dom) if row[3]]
    if len(matched) > 1:
        raise AssertionError(f"overlapping counting branches: {[m[0] for m in matched]}")
    if not matched:
        return RootSet(None, 0, 0, f"{dom_prefix(dom)}:none")
    label, with_mult, distinct, _ = matched[0]
    return RootSet(None, with_mult, distinct, label)


def dom_prefix(dom: Domain) -> str:
    return {Domain.UNITS: "units", Domain.INTEGERS: "integers", Domain.FIELD: "field"}[dom]


# -- roots ---------------------------------------------------------------


def scalings(eq: CubicEquation) -> list[tuple[int, str]]:
    """Every ``(k, shape)`` for which the scaled equation can have unit roots."""
    al, be = eq.alpha, eq.beta
    if 3 * al > 2 * be:
        return [(be // 3, "cube")] if be % 3 == 0 else []
    if 3 * al == 2 * be:
        return [(al // 2, "residual")]
    out = [(al // 2, "sqrt")] if al % 2 == 0 else []
    out.append((be - al, "linear"))
    return out


def _emit(eq: CubicEquation, x: PadicNumber, N: int) -> PadicNumber:
    """Shortest truncation with at least N digits whose residual reaches N - GUARD."""
    if x.is_exact_zero:
        return x
    for m in range(N, x.precision + 1):
        t = x.truncate(m)
        if eq.residual_valuation(t) >= N - GUARD:
            return t
    raise PrecisionError(f"root {x} does not reach residual p^{N - GUARD}")


def _unit_roots(eq: CubicEquation, k: int, shape: str, work: int) -> list[tuple[PadicNumber, int]]:
    """Unit roots y of the k-scaled equation, returned as ``(p^k y, multiplicity)``."""
    p = eq.p
    A = eq.a / Fraction(p) ** (2 * k)
    B = eq.b / Fraction(p) ** (3 * k)
    if shape == "linear":
        m = -valuation_of(A, p)
        scale = Fraction(p) ** m
        f = IntegerPolynomial(p, (-B * scale, A * scale, 0, scale))
        seeds = [residue(B * scale, p, 1) * pow(residue(A * scale, p, 1), -1, p) % p]
    else:
        f = IntegerPolynomial(p, (-B, A, 0, 1))
        if shape == "cube":
            seeds = qth_roots_fp(residue(B, p, 1), 3, p)
        elif shape == "sqrt":
            seeds = qth_roots_fp(-residue(A, p, 1), 2, p)
        else:
            return _residual_roots(eq, f, k, A, work)
    return [(hensel_lift(f, LiftSeed(s), work).shift(k), 1) for s in seeds]


def _residual_roots(eq, f, k, A, work):
    p = eq.p
    a0, b0 = residue(A, p, 1), residue(-f.coefficients[0], p, 1)
    if fp_cubic_count(a0, b0, p).count == 0:
        return []
    report = fp_cubic_classify(a0, b0, p)
    if report.Dbar != 0:
        return [(hensel_lift(f, LiftSeed(s), work).shift(k), 1) for s, _ in report.roots]
    dd = eq.disc
    if dd.is_zero:
        double = 3 * eq.b / (2 * eq.a)
        return sorted(
            [(expand(double, p, work), 2), (expand(-2 * double, p, work), 1)],
            key=lambda item: (item[0].valuation, item[0].unit),
        )
    # Double root mod p but D != 0: lift the simple root xbar, then split
    # x^3 + A x - B = (x - xbar)(x^2 + xbar x + xbar^2 + A).
    simple = next(s for s, m in report.roots if m == 1)
    depth = -dd.D_norm_log
    wide = work + 2 * depth + 4
    xbar = lift_residue(f, LiftSeed(simple), wide)
    out = [(hensel_lift(f, LiftSeed(simple), work).shift(k), 1)]
    for rho, _ in quadratic_solve_qp(xbar, Fraction(xbar) ** 2 + A, wide, p):
        theta = int(rho.to_fraction()) % p**wide
        i = valuation_of(3 * theta * theta + A, p)
        out.append((hensel_lift(f, LiftSeed(theta, i), work).shift(k), 1))
    return out


def _working_precision(eq: CubicEquation, k: int, N: int) -> int:
    return N + GUARD + 2 + 3 * abs(k) + abs(eq.alpha) + abs(eq.beta)


def _root_set(found, branch: str) -> RootSet:
    found = sorted(found, key=lambda item: (item[0].valuation, item[0].unit))
    return RootSet(tuple(found), sum(m for _, m in found), len(found), branch)


def roots(eq: CubicEquation, dom: Domain, N: int = DEFAULT_PRECISION) -> RootSet:
    """All roots in ``dom``, each with at least N digits and residual >= N - 2."""
    _require_p(eq)
    dom = Domain(dom)
    if eq.ab_zero:
        return ab_zero_solve(eq, dom, N)
    found = []
    for k, shape in scalings(eq):
        if not dom.admits(k):
            continue
        for x, mult in _unit_roots(eq, k, shape, _working_precision(eq, k, N)):
            found.append((_emit(eq, x, N), mult))
    return _root_set(found, count(eq, dom).branch)


def ab_zero_solve(eq: CubicEquation, dom: Domain, N: int = DEFAULT_PRECISION) -> RootSet:
    """Roots when a = 0 or b = 0: x^3 = b, or x (x^2 + a) = 0."""
    dom = Domain(dom)
    p = eq.p
    zero = PadicNumber.zero(p)
    if eq.a == 0 and eq.b == 0:
        found = [(zero, 3)] if dom.admits(INFINITY) else []
        return _root_set(found, "ab-zero:a=b=0")
    if eq.a == 0:
        work = N + GUARD + 2 + 3 * abs(eq.beta)
        cands = [(r, 1) for r in qth_root_qp(eq.b, 3, work, p)]
        branch = "ab-zero:a=0"
    else:
        work = N + GUARD + 2 + 3 * abs(eq.alpha)
        cands = [(zero, 1)] + [(r, 1) for r in qth_root_qp(-eq.a, 2, work, p)]
        branch = "ab-zero:b=0"
    found = [(_emit(eq, r, N), m) for r, m in cands if dom.admits(r.valuation)]
    return _root_set(found, branch)

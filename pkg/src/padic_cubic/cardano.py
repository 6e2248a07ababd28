"""
When the Cardano radicals make sense in Q_p, and their evaluation.

The root is ``u + v`` with ``u^3 = b/2 + s``, ``v^3 = b/2 - s`` and
``s^2 = (a/3)^3 + (b/2)^2``.  Rather than extracting two cube roots
independently, ``v`` is derived as ``(-a/3) / u`` and then checked
against the second radicand, so ``u v = -a/3`` holds by construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cubic import GUARD, CubicEquation, _emit, _residual_has_root, _require_p
from .errors import PrecisionError
from .ffield import power_residue_test
from .hensel import padic_qth_roots, qth_root_qp
from .padic import PadicNumber, expand, valuation_of


@dataclass(frozen=True)
class CardanoReport:
    applicable: bool
    branch: str
    root: PadicNumber | None = None
    inner_sqrt: PadicNumber | None = None
    chosen_pair: tuple[PadicNumber, PadicNumber] | None = None
    delta0: int | None = None  # the square root of -3 d0 that passed, for |D| = 1


def _cube_residue(x: int, p: int) -> bool:
    return x % p != 0 and power_residue_test(x, 3, p)


def cardano_applicable(eq: CubicEquation) -> CardanoReport:
    """Flag and case label; no radicals are evaluated."""
    _require_p(eq)
    if eq.ab_zero:
        raise ValueError("Cardano applicability needs a and b nonzero")
    p, al, be = eq.p, eq.alpha, eq.beta
    if 3 * al > 2 * be:
        ok = be % 3 == 0 and _cube_residue(eq.b0, p)
        return CardanoReport(ok, "cardano:cube-of-b")
    if 3 * al < 2 * be:
        ok = al % 2 == 0 and power_residue_test(3 * eq.a0, 2, p)
        return CardanoReport(ok, "cardano:dominant-a")
    dd = eq.disc
    if dd.is_zero:
        return CardanoReport(_cube_residue(4 * eq.b0, p), "cardano:D=0")
    if dd.D_norm_log < 0:
        ok = (
            dd.D_norm_log % 2 == 0
            and power_residue_test(-3 * dd.d0, 2, p)
            and _cube_residue(4 * eq.b0, p)
        )
        return CardanoReport(ok, "cardano:D-small")
    if not _residual_has_root(eq) or dd.delta0 is None:
        return CardanoReport(False, "cardano:D-unit")
    # Both signs of Delta0 are tried; the product of the two radicands is a
    # cube, so they always agree, but the one that passed is recorded.
    for delta in (dd.delta0, p - dd.delta0):
        if _cube_residue(108 * eq.b0 + 12 * delta, p):
            return CardanoReport(True, "cardano:D-unit", delta0=delta)
    return CardanoReport(False, "cardano:D-unit")


def cardano_solve(eq: CubicEquation, N: int) -> CardanoReport:
    """Evaluate the radicals; the root satisfies the residual bound N - 2."""
    report = cardano_applicable(eq)
    if not report.applicable:
        raise ValueError(f"Cardano's formula does not apply ({report.branch})")
    R = (eq.a / 3) ** 3 + (eq.b / 2) ** 2
    work = N + GUARD + 6 + 3 * (abs(eq.alpha) + abs(eq.beta))
    while work < 64 * (N + 16):
        found = _evaluate(eq, R, N, work)
        if found is not None:
            root, s, u, v = found
            return CardanoReport(True, report.branch, root, s, (u, v), report.delta0)
        work *= 2
    raise PrecisionError("Cardano evaluation did not reach the requested precision")


def _evaluate(eq: CubicEquation, R: Fraction, N: int, work: int):
    p = eq.p
    half = expand(eq.b / 2, p, work)
    if R == 0:
        s = PadicNumber.zero(p)
        plus = minus = half
    else:
        candidates = qth_root_qp(R, 2, work, p)
        if not candidates:
            raise AssertionError("applicable case with a non-square inner radicand")
        # the sign that avoids cancellation in b/2 + s
        s = min(candidates, key=lambda c: (half + c).valuation if not (half + c).is_zero else float("inf"))
        plus, minus = half + s, half - s
    if plus.is_zero or minus.is_zero:
        return None
    third = expand(-eq.a / 3, p, work)
    target = N - GUARD
    for u in padic_qth_roots(plus, 3):
        v = third / u
        if valuation_of(v.to_fraction() ** 3 - minus.to_fraction(), p) < min(
            target, (v**3).absolute_precision, minus.absolute_precision
        ):
            continue
        x = u + v
        if x.is_zero or x.precision < N:
            return None
        if valuation_of(u.to_fraction() * v.to_fraction() + eq.a / 3, p) < target:
            return None
        try:
            root = _emit(eq, x, N)
        except PrecisionError:
            return None
        return root, s, u, v
    raise AssertionError("no cube root of the radicand pairs with -a/3")

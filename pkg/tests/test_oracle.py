import math
import random
from fractions import Fraction

import pytest

from padic_cubic.cubic import CubicEquation, Domain, count, roots
from padic_cubic.ffield import fp_cubic_count
from padic_cubic.hensel import IntegerPolynomial, LiftSeed, hensel_lift
from padic_cubic.padic import expand
from padic_cubic.oracle import (
    InsufficientModulusError,
    WindowTooSmallError,
    fp_bruteforce,
    oracle_count,
    poly_qp_oracle,
    poly_zp_oracle,
    qp_oracle,
    zp_oracle,
)


def eq(p, a, b):
    return CubicEquation(p, Fraction(a), Fraction(b))


def test_fp_examples():
    assert fp_bruteforce(1, 1, 7).count == 0
    assert [w.residue for w in fp_bruteforce(4, 5, 11).witnesses] == [1, 2, 8]
    assert [w.residue for w in fp_bruteforce(1, 2, 5).witnesses] == [1]


def test_fp_grid_against_recurrence():
    for p in (5, 7, 11, 13, 17, 19, 23, 29, 31):
        for a0 in range(1, p):
            for b0 in range(1, p):
                assert fp_bruteforce(a0, b0, p).count == fp_cubic_count(a0, b0, p).count


def test_zp_examples():
    v = zp_oracle(eq(5, 25, 250), K=6)
    assert v.count == 1 and v.witnesses[0].residue % 25 == 5
    v = zp_oracle(eq(5, -3, -2), K=6)
    assert v.count == 3 and v.count_distinct == 2
    assert {w.residue % 5 for w in v.witnesses} == {1, 3}
    assert [w.multiplicity for w in v.witnesses if w.exact == 1] == [2]
    assert zp_oracle(eq(5, -1, 5), K=6, units=True).count == 2


def test_qp_examples():
    v = qp_oracle(eq(5, 25, Fraction(626, 125)), K=8, T=3)
    assert v.count >= 1 and -1 in {w.valuation for w in v.witnesses}
    v = qp_oracle(eq(7, Fraction(-3, 7), Fraction(-4, 7)), K=8, T=2)
    assert v.count == 1 and v.witnesses[0].residue % 7 == 6


def test_ab_zero_goes_upstream():
    with pytest.raises(ValueError):
        qp_oracle(eq(5, 0, 5))


def test_explicit_insufficiency():
    with pytest.raises(InsufficientModulusError):
        zp_oracle(eq(5, -703, -702), K=2)
    with pytest.raises(WindowTooSmallError):
        qp_oracle(eq(5, Fraction(1, 5**6), 1), T=2)


def test_escalation_reaches_an_answer():
    assert oracle_count(eq(5, -703, -702), "zp").count == 3
    assert oracle_count(eq(5, 5**-6, 1), "qp").count >= 1


def test_generic_polynomials():
    # (x - 3)^2 (x + 1) and x^2 - 17 over Z_2
    v = poly_zp_oracle([9, 3, -5, 1], 7)
    assert (v.count, v.count_distinct) == (3, 2)
    assert poly_qp_oracle([-17, 0, 1], 2).count == 2
    assert poly_qp_oracle([-3, 0, 1], 2).count == 0


def test_random_instances_agree_with_count():
    rng = random.Random(7)
    for _ in range(200):
        p = rng.choice([5, 7, 11, 13])
        a = Fraction(p) ** rng.randint(-3, 3) * rng.choice([x for x in range(1, p * p) if x % p])
        b = Fraction(p) ** rng.randint(-3, 3) * rng.choice([x for x in range(1, p * p) if x % p])
        e = CubicEquation(p, a, b)
        for dom in Domain:
            o = oracle_count(e, dom.value)
            c = count(e, dom)
            assert (o.count, o.count_distinct) == (c.count_with_multiplicity, c.count_distinct)


def _scaled_integral(e, t):
    """p^(3t) y^3 + a p^t y - b, cleared to a primitive integer polynomial."""
    p = e.p
    scale = Fraction(p) ** t
    coeffs = [-e.b, e.a * scale, Fraction(0), scale**3]
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*ints)
    return IntegerPolynomial(p, tuple(c // g for c in ints))


def test_witnesses_lift_to_emitted_roots():
    rng = random.Random(11)
    N = 20
    for _ in range(80):
        p = rng.choice([5, 7, 11])
        e = CubicEquation(
            p,
            Fraction(p) ** rng.randint(-2, 2) * rng.randrange(1, p),
            Fraction(p) ** rng.randint(-2, 2) * rng.randrange(1, p),
        )
        emitted = [r for r, _ in roots(e, Domain.FIELD, N).roots]
        for w in oracle_count(e, "qp").witnesses:
            if w.exact is not None:
                x = expand(w.exact, p, N)
            else:
                f = _scaled_integral(e, w.valuation)
                x = hensel_lift(f, LiftSeed(w.residue, w.derivative_valuation), N).shift(w.valuation)
            assert any(x.agrees_with(r, N - 2) for r in emitted)

"""
The eight acceptance criteria, each checked exactly and reported on one line.

Counts and verdicts are compared with zero tolerance; roots must satisfy
``ord_p(x^3 + a x - b) >= N - 2`` at N = 64.
"""
import functools
import random
import time
from fractions import Fraction

import pytest

from padic_cubic.cardano import cardano_applicable, cardano_solve
from padic_cubic.cubic import CubicEquation, Domain, count, roots, solvable
from padic_cubic.ffield import fp_cubic_count
from padic_cubic.hensel import qth_root_qp, quadratic_solve_qp
from padic_cubic.oracle import escalating, fp_bruteforce, oracle_count, poly_qp_oracle
from padic_cubic.padic import expand, valuation_of

LINES = []
N = 64
GRID_PRIMES = (5, 7, 11, 13)
RANDOM_PER_PRIME = 1000
CARDANO_PER_BRANCH = 500


def verdict(n, title, failures, detail=""):
    ok = not failures
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}: {title}"
    if detail:
        line += f" [{detail}]"
    if failures:
        line += f" first failures: {failures[:3]}"
    LINES.append(line)
    print(line)
    assert ok, line


def P(p, k):
    return Fraction(p) ** k


# -- shared grid ------------------------------------------------------------


def _two_digit_unit(rng, p):
    return rng.randrange(1, p) + p * rng.randrange(p)


@functools.lru_cache(maxsize=None)
def instances():
    out = []
    for p in GRID_PRIMES:
        for al in range(-3, 4):
            for be in range(-3, 4):
                for a0 in range(1, p):
                    for b0 in range(1, p):
                        out.append(CubicEquation(p, P(p, al) * a0, P(p, be) * b0))
        rng = random.Random(1000 + p)
        for _ in range(RANDOM_PER_PRIME):
            a = P(p, rng.randint(-3, 3)) * _two_digit_unit(rng, p) * rng.choice((1, -1))
            b = P(p, rng.randint(-3, 3)) * _two_digit_unit(rng, p) * rng.choice((1, -1))
            out.append(CubicEquation(p, a, b))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def grid_results():
    """Per instance and domain: oracle, count, solvable and roots at N = 64."""
    rows = []
    for e in instances():
        per = {}
        for dom in Domain:
            o = oracle_count(e, dom.value)
            per[dom] = {
                "oracle": (o.count, o.count_distinct),
                "count": count(e, dom),
                "solvable": solvable(e, dom).solvable,
                "roots": roots(e, dom, N),
            }
        rows.append((e, per))
    return rows


# -- 1 ----------------------------------------------------------------------


def test_criterion_1_fp_count_formula():
    start = time.perf_counter()
    failures = []
    for p in (5, 7, 11, 13, 17, 19, 23, 29, 31):
        for a0 in range(1, p):
            for b0 in range(1, p):
                if fp_cubic_count(a0, b0, p).count != fp_bruteforce(a0, b0, p).count:
                    failures.append((p, a0, b0))
    for (p, a0, b0), want in {(7, 1, 1): 0, (5, 1, 2): 1, (11, 4, 5): 3}.items():
        if fp_cubic_count(a0, b0, p).count != want or fp_bruteforce(a0, b0, p).count != want:
            failures.append(("frozen", p, a0, b0))
    elapsed = time.perf_counter() - start
    if elapsed >= 10:
        failures.append(f"runtime {elapsed:.1f}s")
    verdict(1, "F_p recurrence count equals exhaustion for p <= 31", failures, f"{elapsed:.2f}s")


# -- 2 ----------------------------------------------------------------------


def test_criterion_2_criteria_against_oracle():
    start = time.perf_counter()
    failures = []
    rows = grid_results()
    for e, per in rows:
        for dom, r in per.items():
            c = r["count"]
            if (c.count_with_multiplicity, c.count_distinct) != r["oracle"]:
                failures.append((e.p, str(e.a), str(e.b), dom.value, r["oracle"], c.branch))
            if r["solvable"] != (r["oracle"][0] > 0):
                failures.append(("solvable", e.p, str(e.a), str(e.b), dom.value))
    elapsed = time.perf_counter() - start
    verdict(2, "solvable/count vs Z_p and Q_p oracles (full grid + 1000 random per p)",
            failures, f"{len(rows)} equations x 3 domains, {elapsed:.1f}s")


# -- 3 ----------------------------------------------------------------------


def test_criterion_3_worked_examples():
    failures = []
    for p in (5, 7):
        e = CubicEquation(p, P(p, 2), 2 * P(p, 3))
        if solvable(e, Domain.UNITS).solvable or not solvable(e, Domain.INTEGERS).solvable:
            failures.append(("x^3+p^2x=2p^3 verdicts", p))
        if p not in [r.to_fraction() for r, _ in roots(e, Domain.INTEGERS, N).roots]:
            failures.append(("root p", p))
        e = CubicEquation(p, P(p, 2), (1 + P(p, 4)) / P(p, 3))
        if solvable(e, Domain.INTEGERS).solvable:
            failures.append(("1/p: Z_p should be unsolvable", p))
        if Fraction(1, p) not in [r.to_fraction() for r, _ in roots(e, Domain.FIELD, N).roots]:
            failures.append(("root 1/p", p))
    for p in (5, 7, 11):
        e = CubicEquation(p, Fraction(-3, p), Fraction(-(p - 3), p))
        found = roots(e, Domain.FIELD, N).roots
        if not any(r.agrees_with(expand(-1, p, N), N) for r, _ in found):
            failures.append(("root -1", p))
        if cardano_applicable(e).applicable:
            failures.append(("Cardano should not apply", p))
    for p in (5, 7, 11, 13):
        if qth_root_qp(p, 3, N, p) or roots(CubicEquation(p, 0, p), Domain.FIELD, N).roots:
            failures.append(("x^3 = p", p))
    verdict(3, "worked examples: x=p, x=1/p, x=-1 without Cardano, x^3=p unsolvable", failures)


# -- 4 ----------------------------------------------------------------------


def test_criterion_4_root_residuals():
    failures, checked = [], 0
    for e, per in grid_results():
        for dom, r in per.items():
            for x, _ in r["roots"].roots:
                checked += 1
                if e.residual_valuation(x) < N - 2:
                    failures.append((e.p, str(e.a), str(e.b), dom.value, str(x)))
                if not dom.admits(x.valuation if not x.is_exact_zero else float("inf")):
                    failures.append(("domain", e.p, str(e.a), str(e.b), dom.value))
        if cardano_applicable(e).applicable:
            checked += 1
            x = cardano_solve(e, N).root
            if e.residual_valuation(x) < N - 2:
                failures.append(("cardano", e.p, str(e.a), str(e.b)))
    verdict(4, "every emitted root has ord_p(x^3+ax-b) >= 62 at N=64", failures, f"{checked} roots")


# -- 5 ----------------------------------------------------------------------


def _is_cube(x, p):
    x %= p
    return x != 0 and any(pow(y, 3, p) == x for y in range(1, p))


def _square_roots(x, p):
    x %= p
    return [y for y in range(1, p) if y * y % p == x] if x else []


CARDANO_PRIMES = (5, 7, 11, 13, 17, 19, 23)


def _unit(rng, p):
    return _two_digit_unit(rng, p) * rng.choice((1, -1))


def make_cube_branch(rng):
    p = rng.choice(CARDANO_PRIMES)
    beta = 3 * rng.randint(-1, 1)
    while True:
        bu = _unit(rng, p)
        if _is_cube(bu, p):
            break
    alpha = (2 * beta) // 3 + rng.randint(1, 3)
    return CubicEquation(p, P(p, alpha) * _unit(rng, p), P(p, beta) * bu)


def make_double_root(rng):
    p = rng.choice(CARDANO_PRIMES)
    c = P(p, rng.randint(-1, 1)) * _unit(rng, p)
    return CubicEquation(p, -3 * c * c, -2 * c**3)


def _from_s_t(p, s, t, k):
    # roots -2s and s +- t sqrt(-3), rescaled by p^k
    a = -3 * s * s + 3 * t * t
    b = -2 * s * (s * s + 3 * t * t)
    return CubicEquation(p, a * P(p, 2 * k), b * P(p, 3 * k))


def make_small_discriminant(rng):
    p = rng.choice(CARDANO_PRIMES)
    s = _unit(rng, p)
    t = P(p, rng.randint(1, 2)) * _unit(rng, p)
    return _from_s_t(p, s, t, rng.randint(-1, 1))


def make_unit_discriminant(rng):
    while True:
        p = rng.choice(CARDANO_PRIMES)
        k = rng.randint(-1, 1)
        au, bu = _unit(rng, p), _unit(rng, p)
        a0, b0 = au % p, bu % p
        D = -4 * au**3 - 27 * bu**2
        if D % p == 0:
            continue
        if not any((x**3 + a0 * x - b0) % p == 0 for x in range(p)):
            continue
        deltas = _square_roots(-3 * D, p)
        if not deltas or not any(_is_cube(108 * b0 + 12 * d, p) for d in deltas):
            continue
        return CubicEquation(p, au * P(p, 2 * k), bu * P(p, 3 * k))


def make_dominant_a(rng):
    p = rng.choice(CARDANO_PRIMES)
    alpha = 2 * rng.randint(-1, 1)
    while True:
        au = _unit(rng, p)
        if _square_roots(3 * au, p):
            break
    beta = (3 * alpha) // 2 + rng.randint(1, 3)
    return CubicEquation(p, P(p, alpha) * au, P(p, beta) * _unit(rng, p))


BRANCHES = {
    "cardano:cube-of-b": make_cube_branch,
    "cardano:D=0": make_double_root,
    "cardano:D-small": make_small_discriminant,
    "cardano:D-unit": make_unit_discriminant,
    "cardano:dominant-a": make_dominant_a,
}


def test_criterion_5_cardano_agreement():
    rng = random.Random(5)
    failures, deltas = [], {"first": 0, "second": 0}
    for branch, make in BRANCHES.items():
        for _ in range(CARDANO_PER_BRANCH):
            e = make(rng)
            flag = cardano_applicable(e)
            if not flag.applicable or flag.branch != branch:
                failures.append(("not applicable", branch, e.p, str(e.a), str(e.b)))
                continue
            sol = cardano_solve(e, N)
            if not any(sol.root.agrees_with(r, N - 2) for r, _ in roots(e, Domain.FIELD, N).roots):
                failures.append(("no matching root", branch, e.p, str(e.a), str(e.b)))
            u, v = sol.chosen_pair
            if valuation_of(u.to_fraction() * v.to_fraction() + e.a / 3, e.p) < N - 2:
                failures.append(("pairing", branch, e.p, str(e.a), str(e.b)))
            if sol.delta0 is not None:
                deltas["first" if sol.delta0 == e.disc.delta0 else "second"] += 1
    verdict(5, "Cardano root matches a Hensel root to 62 digits, u*v = -a/3, branches I.1-I.5",
            failures, f"{CARDANO_PER_BRANCH} per branch; Delta0 sign used {deltas}")


# -- 6 ----------------------------------------------------------------------


def test_criterion_6_double_root_closed_form():
    failures = []
    for c in (Fraction(1), Fraction(2), Fraction(3), Fraction(1, 5)):
        for p in GRID_PRIMES:
            e = CubicEquation(p, -3 * c * c, -2 * c**3)
            if 3 * e.b / (2 * e.a) != c or -3 * e.b / e.a != -2 * c:
                failures.append(("closed form", c, p))
            doms = [Domain.FIELD]
            if valuation_of(c, p) == 0:
                doms += [Domain.UNITS, Domain.INTEGERS]
            for dom in doms:
                rs = roots(e, dom, N)
                cnt = count(e, dom)
                for value, m in ((c, 2), (-2 * c, 1)):
                    x = [r for r, mm in rs.roots if mm == m]
                    if len(x) != 1 or not x[0].agrees_with(expand(value, p, x[0].precision), x[0].precision):
                        failures.append(("root", str(value), m, p, dom.value))
                if (cnt.count_with_multiplicity, cnt.count_distinct) != (3, 2) or len(rs.roots) != 2:
                    failures.append(("counts", str(c), p, dom.value))
    verdict(6, "D=0 gives roots c (mult 2) and -2c, counts 3 and 2", failures)


# -- 7 ----------------------------------------------------------------------


def _quadratic_grid(p):
    units = (1, 3, 5, 7, -1, -3) if p == 2 else tuple(range(1, p))
    vals = [P(p, i) * u for i in range(-3, 4) for u in units]
    return [0, *vals], vals


def test_criterion_7_quadratic_verdicts():
    failures, checked = [], 0
    for p in (2, 5, 7):
        qs, rs = _quadratic_grid(p)
        for q in qs:
            for r in rs:
                found = quadratic_solve_qp(q, r, 16, p)
                oracle = escalating(lambda q_, r_, K, T: poly_qp_oracle([r_, q_, 1], p, K, T), q, r, T=4)
                checked += 1
                if (sum(m for _, m in found), len(found)) != (oracle.count, oracle.count_distinct):
                    failures.append((p, str(q), str(r), len(found), oracle.count))
    for p in (5, 7, 11):
        if quadratic_solve_qp(Fraction(p - 3, p), Fraction(1, p**3), N, p):
            failures.append(("failing quadratic solved", p))
    verdict(7, "quadratic verdicts vs residue enumeration for p in {2,5,7}, incl. mod-8 rule",
            failures, f"{checked} quadratics")


# -- 8 ----------------------------------------------------------------------


def test_criterion_8_structural_counts():
    failures = []
    for e, per in grid_results():
        distinct = []
        for dom in (Domain.UNITS, Domain.INTEGERS, Domain.FIELD):
            r = per[dom]
            c = r["count"]
            if dom is not Domain.UNITS and c.count_with_multiplicity == 2:
                failures.append(("count 2", e.p, str(e.a), str(e.b), dom.value))
            if not (r["solvable"] == (c.count_with_multiplicity >= 1) == bool(r["roots"].roots)):
                failures.append(("triangle", e.p, str(e.a), str(e.b), dom.value))
            distinct.append(c.count_distinct)
        if not distinct[0] <= distinct[1] <= distinct[2]:
            failures.append(("monotone", e.p, str(e.a), str(e.b), distinct))
    verdict(8, "Z_p/Q_p counts never 2, distinct counts monotone, solvable <=> count>=1 <=> roots",
            failures, f"{len(grid_results())} equations")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))

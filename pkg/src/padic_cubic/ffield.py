"""
Arithmetic in F_p: power residues, q-th roots and depressed cubics.

Residues are plain ints in ``[0, p)``.  The cubic ``x^3 + a x = b`` is
classified through the order-3 recurrence

    u_1 = 0, u_2 = -a, u_3 = b,  u_{n+3} = b u_n - a u_{n+1},

whose term ``u_{p-2}`` together with ``D = -4a^3 - 27b^2`` decides the
root count.  ``u_{p-2}`` comes from a companion-matrix power, so large
word-size primes cost O(log p).
"""
from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass

EXHAUSTIVE_LIMIT = 10_000


def pow_mod(base: int, exp: int, p: int) -> int:
    return pow(base % p, exp, p)


def power_residue_test(a: int, q: int, p: int) -> bool:
    """True iff ``a`` is a q-th power in F_p* (Euler's criterion)."""
    a %= p
    if a == 0:
        raise ValueError("power residue test needs a nonzero residue")
    d = math.gcd(q, p - 1)
    return pow(a, (p - 1) // d, p) == 1


def qth_roots_fp(a: int, q: int, p: int) -> list[int]:
    """All ``x`` in F_p with ``x**q == a``, sorted."""
    a %= p
    if a == 0:
        raise ValueError("q-th roots are only taken of nonzero residues")
    if q < 1:
        raise ValueError("q must be a positive integer")
    if p < EXHAUSTIVE_LIMIT:
        return [x for x in range(1, p) if pow(x, q, p) == a]
    return sorted(_discrete_roots(a, q, p))


# -- discrete roots for large p ------------------------------------------


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@functools.lru_cache(maxsize=64)
def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = _factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root mod {p}")


def _bsgs(g: int, h: int, order: int, p: int) -> int:
    m = math.isqrt(order) + 1
    baby = {}
    e = 1
    for j in range(m):
        baby.setdefault(e, j)
        e = e * g % p
    step = pow(g, -m, p)
    gamma = h
    for i in range(m + 1):
        if gamma in baby:
            return (i * m + baby[gamma]) % order
        gamma = gamma * step % p
    raise ValueError("discrete log does not exist")


def discrete_log(h: int, p: int) -> int:
    """Exponent ``e`` with ``g**e == h`` for the primitive root ``g`` of p."""
    g = primitive_root(p)
    n = p - 1
    x, mod = 0, 1
    for q, e in _factorize(n).items():
        gamma = pow(g, n // q, p)
        xq = 0
        for k in range(e):
            hk = pow(pow(g, -xq, p) * h % p, n // q ** (k + 1), p)
            xq += _bsgs(gamma, hk, q, p) * q**k
        qe = q**e
        # CRT merge x (mod mod) with xq (mod qe)
        x += mod * ((xq - x) * pow(mod, -1, qe) % qe)
        mod *= qe
    return x % n


def _discrete_roots(a: int, q: int, p: int) -> list[int]:
    n = p - 1
    g = primitive_root(p)
    e = discrete_log(a, p)
    d = math.gcd(q, n)
    if e % d:
        return []
    nd = n // d
    y0 = (e // d) * pow(q // d, -1, nd) % nd if nd > 1 else 0
    return [pow(g, y0 + j * nd, p) for j in range(d)]


# -- the u-sequence ------------------------------------------------------


def _mat_mul(x, y, p):
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(3)) % p for j in range(3)) for i in range(3)
    )


def u_term(a: int, b: int, p: int, n: int) -> int:
    """``u_n`` of the recurrence, by companion-matrix exponentiation."""
    if n < 1:
        raise ValueError("the sequence starts at n = 1")
    seeds = (0, -a % p, b % p)
    if n <= 3:
        return seeds[n - 1]
    step = ((0, 1, 0), (0, 0, 1), (b % p, -a % p, 0))
    acc = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    e = n - 3
    while e:
        if e & 1:
            acc = _mat_mul(acc, step, p)
        step = _mat_mul(step, step, p)
        e >>= 1
    return sum(acc[2][j] * seeds[j] for j in range(3)) % p


def u_term_iterative(a: int, b: int, p: int, n: int) -> int:
    """Same as :func:`u_term`, stepping the recurrence one term at a time."""
    u = [0, -a % p, b % p]
    while len(u) < n:
        u.append((b * u[-3] - a * u[-2]) % p)
    return u[n - 1]


# -- depressed cubics over F_p -------------------------------------------


@dataclass(frozen=True)
class FpCubicReport:
    """Root data for ``x^3 + a x = b`` over F_p.

    ``count`` counts roots with multiplicity.  ``roots`` is ``None`` when
    only the count was asked for.
    """

    count: int
    Dbar: int
    u: int
    roots: tuple[tuple[int, int], ...] | None = None
    simple_root_exists: bool | None = None


def _check_cubic(a0: int, b0: int, p: int) -> tuple[int, int]:
    if p <= 3:
        raise ValueError(f"the F_p cubic criterion needs p > 3, got {p}")
    a0, b0 = a0 % p, b0 % p
    if a0 == 0 or b0 == 0:
        raise ValueError("both coefficients must be nonzero mod p")
    return a0, b0


def fp_cubic_count(a0: int, b0: int, p: int) -> FpCubicReport:
    """Number of roots (with multiplicity) of ``x^3 + a0 x - b0`` in F_p."""
    a0, b0 = _check_cubic(a0, b0, p)
    dbar = (-4 * a0**3 - 27 * b0**2) % p
    u = u_term(a0, b0, p, p - 2)
    t = dbar * u * u % p
    if t == 0:
        count = 3
    elif t == 9 * a0 * a0 % p:
        count = 0
    else:
        count = 1
    return FpCubicReport(count=count, Dbar=dbar, u=u)


def fp_cubic_classify(a0: int, b0: int, p: int) -> FpCubicReport:
    """Roots with multiplicities; requires the cubic to have a root."""
    report = fp_cubic_count(a0, b0, p)
    if report.count == 0:
        raise ValueError(f"x^3 + {a0}x - {b0} has no root mod {p}")
    a0, b0 = a0 % p, b0 % p
    if report.Dbar == 0:
        double = 3 * b0 * pow(2 * a0, -1, p) % p
        single = -3 * b0 * pow(a0, -1, p) % p
        roots = tuple(sorted([(double, 2), (single, 1)]))
    else:
        roots = tuple((x, 1) for x in cubic_roots_fp(a0, b0, p))
        if len(roots) != report.count:
            raise AssertionError(f"root search found {len(roots)}, count formula {report.count}")
    simple = any(m == 1 and (3 * x * x + a0) % p for x, m in roots)
    return FpCubicReport(report.count, report.Dbar, report.u, roots, simple)


def cubic_roots_fp(a0: int, b0: int, p: int) -> list[int]:
    """Distinct roots of ``x^3 + a0 x - b0`` in F_p, sorted."""
    if p < EXHAUSTIVE_LIMIT:
        return [x for x in range(p) if (x * x * x + a0 * x - b0) % p == 0]
    f = _trim([-b0 % p, a0 % p, 0, 1])
    g = _gcd(f, _sub(_powmod([0, 1], p, f, p), [0, 1], p), p)
    return sorted(_split(g, p, random.Random(p)))


# Dense polynomials over F_p, coefficient lists lowest degree first.


def _trim(f):
    while f and f[-1] == 0:
        f = f[:-1]
    return list(f)


def _sub(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def _mod(f, g, p):
    f = list(f)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        f = _trim(f)
    return f


def _mulmod(f, g, m, p):
    out = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, fi in enumerate(f):
        for j, gj in enumerate(g):
            out[i + j] = (out[i + j] + fi * gj) % p
    return _mod(_trim(out), m, p)


def _powmod(f, e, m, p):
    result, base = [1], _mod(f, m, p)
    while e:
        if e & 1:
            result = _mulmod(result, base, m, p)
        base = _mulmod(base, base, m, p)
        e >>= 1
    return result


def _gcd(f, g, p):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, _mod(f, g, p)
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def _split(g, p, rng):
    """Roots of a squarefree product of distinct linear factors."""
    if len(g) <= 1:
        return []
    if len(g) == 2:
        return [-g[0] * pow(g[1], -1, p) % p]
    while True:
        delta = rng.randrange(p)
        h = _sub(_powmod([delta, 1], (p - 1) // 2, g, p), [1], p)
        h = _gcd(g, h, p) if h else g
        if 1 < len(h) < len(g):
            q = _quotient(g, h, p)
            return _split(h, p, rng) + _split(q, p, rng)


def _quotient(f, g, p):
    f = list(f)
    inv = pow(g[-1], -1, p)
    out = [0] * (len(f) - len(g) + 1)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        out[shift] = c
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        f = f[:-1]
    return _trim(out)

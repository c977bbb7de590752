"""Brute-force arithmetic oracle over the integers.

The asymptotic components in hfunc predict the limiting value of a finite
expression: a ratio of sums over integers k <= K weighted by the Liouville
function lambda(k), the generalized divisor function d_r(k), and the von
Mangoldt function Lambda(n).  This module sieves those tables, builds the
literal coefficients a_k, and evaluates the finite ratio

    h_finite(c) = c - sum_{n k <= K} a_k a_{nk} g_c(n) Lambda(n) / sqrt(n)
                      / sum_{k <= K} a_k**2,

with g_c(n) = 2 sin(pi c log n / log T) / (pi log n) and K = floor(T / log(T)**2),
for empirical comparison against the limit computed by hfunc.  No error-term
bookkeeping is attempted; the comparison is a trend check, not an equality.

Tables are built once, are read-only afterwards, and can be shared freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hfunc import CoeffScheme

__all__ = [
    "SieveTable",
    "build_tables",
    "coeffs_ak",
    "finite_h",
    "finite_h_from_coeffs",
    "mertens_deficit",
    "dr_mean_square_trend",
    "MAX_TABLE_LIMIT",
]

MAX_TABLE_LIMIT = 10**8


@dataclass
class SieveTable:
    """Per-integer arithmetic tables up to `limit`, indexed 1..limit.

    Index 0 of every array is an unused sentinel so that table[n] is the
    value at the integer n.
    """

    limit: int
    r: float
    liouville: np.ndarray  # int8, lambda(k) in {-1, +1}
    dr: np.ndarray  # float64, d_r(k)
    mangoldt: np.ndarray  # float64, log p on prime powers p**a, else 0
    smallest_prime_factor: np.ndarray  # int32, spf(k); spf(1) = 1

    def __post_init__(self):
        for arr in (self.liouville, self.dr, self.mangoldt, self.smallest_prime_factor):
            arr.setflags(write=False)


def _primes_up_to(n: int) -> np.ndarray:
    """All primes <= n via a boolean Eratosthenes sieve."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def build_tables(r: float, limit: int) -> SieveTable:
    """Sieve lambda, d_r, Lambda and smallest prime factors up to `limit`.

    lambda and d_r are completely determined by prime-power exponents, so
    both are accumulated with one strided pass per prime power p**j: every
    multiple of p**j picks up a factor -1 (for lambda) respectively
    (j - 1 + r)/j (for d_r, the Gamma-ratio recurrence
    d_r(p**j) = d_r(p**(j-1)) * (j - 1 + r) / j).
    """
    limit = int(limit)
    if not (2 <= limit <= MAX_TABLE_LIMIT):
        raise ValueError(f"limit must lie in [2, {MAX_TABLE_LIMIT}]")
    if r <= 0:
        raise ValueError("r must be positive")

    primes = _primes_up_to(limit)

    spf = np.zeros(limit + 1, dtype=np.int32)  # limit <= 1e8 < 2**31
    for p in primes[primes * primes <= limit]:
        view = spf[p * p :: p]
        view[view == 0] = p
    untouched = np.flatnonzero(spf == 0)
    spf[untouched] = untouched  # primes, plus the 0 and 1 sentinels
    spf[1] = 1

    liouville = np.ones(limit + 1, dtype=np.int8)
    dr = np.ones(limit + 1, dtype=np.float64)
    mangoldt = np.zeros(limit + 1, dtype=np.float64)
    mangoldt[primes] = np.log(primes.astype(np.float64))

    for p in primes:
        p = int(p)
        pj = p
        j = 1
        while pj <= limit:
            liouville[pj::pj] *= -1
            dr[pj::pj] *= (j - 1 + r) / j
            if j > 1:
                mangoldt[pj] = math.log(p)
            pj *= p
            j += 1

    liouville[0] = 0
    dr[0] = 0.0
    return SieveTable(
        limit=limit,
        r=r,
        liouville=liouville,
        dr=dr,
        mangoldt=mangoldt,
        smallest_prime_factor=spf,
    )


def coeffs_ak(scheme: CoeffScheme, tables: SieveTable, upto: int) -> np.ndarray:
    """The literal coefficients a_k for 1 <= k <= upto, index-aligned (a[0] = 0).

    a_k = lambda(k) d_r(k) / sqrt(k) * [ f1(x_k) + S_P(k) * f1t(x_k) ]

    with x_k = log(upto / k) / log(upto) and S_P(k) the sum of
    P(log p / log(upto)) over the distinct primes p dividing k.
    """
    upto = int(upto)
    if upto < 2 or upto > tables.limit:
        raise ValueError("upto must lie in [2, tables.limit]")
    if abs(tables.r - scheme.r) > 1e-12:
        raise ValueError("tables were built with a different r")

    log_up = math.log(upto)
    k = np.arange(1, upto + 1, dtype=np.float64)
    x = 1.0 - np.log(k) / log_up

    psum = np.zeros(upto + 1)
    if not scheme.P.is_zero:
        for p in _primes_up_to(upto):
            p = int(p)
            psum[p::p] += scheme.P.eval(math.log(p) / log_up)

    a = np.zeros(upto + 1)
    a[1:] = (
        tables.liouville[1 : upto + 1]
        * tables.dr[1 : upto + 1]
        / np.sqrt(k)
        * (scheme.f1.eval(x) + psum[1:] * scheme.f1t.eval(x))
    )
    return a


def finite_h_from_coeffs(
    a: np.ndarray, tables: SieveTable, c: float, t_param: float
) -> tuple[float, float, float]:
    """Assemble (h_finite, num, den) from an explicit coefficient vector.

    `a` is index-aligned (a[0] ignored) and defines the mollifier length
    K = len(a) - 1.  Split out from finite_h so tests can inject coefficient
    vectors directly.
    """
    upto = len(a) - 1
    den = float(a[1:] @ a[1:])
    log_t = math.log(t_param)
    num = 0.0
    for n in np.flatnonzero(tables.mangoldt[: upto + 1]):
        n = int(n)
        m = upto // n
        g = 2.0 * math.sin(math.pi * c * math.log(n) / log_t) / (math.pi * math.log(n))
        num += (
            tables.mangoldt[n]
            * g
            / math.sqrt(n)
            * float(a[1 : m + 1] @ a[n :: n][:m])
        )
    return c - num / den, num, den


def finite_h(
    scheme: CoeffScheme, c: float, t_param: float
) -> tuple[float, float, float]:
    """Evaluate the finite ratio at mollifier length K = floor(T / log(T)**2).

    Returns (h_finite, num, den).  All prime powers n = p**j are kept in the
    numerator sum, since Lambda weights them, even though only n = p
    survives in the limit.
    """
    if t_param < 100:
        raise ValueError("T must be at least 100")
    upto = int(t_param / math.log(t_param) ** 2)
    if upto < 100:
        raise ValueError(f"T={t_param:g} gives mollifier length {upto} < 100")
    tables = build_tables(scheme.r, upto)
    a = coeffs_ak(scheme, tables, upto)
    return finite_h_from_coeffs(a, tables, c, t_param)


def mertens_deficit(y: int) -> float:
    """sum_{p <= y} log(p)/p - log(y); bounded as y grows."""
    y = int(y)
    if y < 2:
        raise ValueError("y must be at least 2")
    primes = _primes_up_to(y).astype(np.float64)
    return float(np.sum(np.log(primes) / primes)) - math.log(y)


def dr_mean_square_trend(
    r: float, x_list, tables: SieveTable | None = None
) -> list[tuple[int, float]]:
    """Normalized ratios (x, sum_{k<=x} d_r(k)**2 / k / log(x)**(r**2)).

    Their stabilization as x grows estimates the leading constant of the
    mean-square sum empirically.
    """
    xs = [int(x) for x in x_list]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("x_list must be strictly increasing")
    if xs[0] < 2:
        raise ValueError("entries must be at least 2")
    if tables is None:
        tables = build_tables(r, xs[-1])
    elif tables.limit < xs[-1] or abs(tables.r - r) > 1e-12:
        raise ValueError("tables do not cover the requested range")

    k = np.arange(1, xs[-1] + 1, dtype=np.float64)
    csum = np.cumsum(tables.dr[1 : xs[-1] + 1] ** 2 / k)
    return [(x, float(csum[x - 1]) / math.log(x) ** (r * r)) for x in xs]

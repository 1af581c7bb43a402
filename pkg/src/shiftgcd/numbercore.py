"""Exact integer utilities: gcd and height of vectors, primes, Mobius, omega,
the Jacobsthal function and a CRT solver.

Everything works on Python ints, so magnitudes are unbounded. numpy is used
only for sieving, where the arrays index small ranges.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError

DEFAULT_JACOBSTHAL_CAP = 10**8
DEFAULT_TRIAL_BOUND = 10**6

# First 13 primes as Miller-Rabin bases are deterministic below this bound
# (Sorenson & Webster 2015).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981

_SIEVE_CHUNK = 1 << 22


def as_vector(a: Iterable[int], *, allow_empty: bool = False) -> tuple[int, ...]:
    """Normalise an integer sequence to a tuple, rejecting non-integers."""
    vec = tuple(a)
    for x in vec:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            raise DomainError(f"vector entries must be integers, got {x!r}")
    vec = tuple(int(x) for x in vec)
    if not vec and not allow_empty:
        raise DomainError("vector must have at least one entry")
    return vec


def gcd_vec(a: Sequence[int]) -> int:
    """Non-negative gcd of all entries; 0 only for the all-zero vector."""
    vec = as_vector(a)
    return math.gcd(*vec)


def height(a: Sequence[int]) -> int:
    return max(abs(x) for x in as_vector(a))


def height_star(a: Sequence[int]) -> int:
    """min over i of the height of a with entry i removed."""
    vec = as_vector(a)
    if len(vec) < 2:
        raise DomainError("height_star needs at least two entries")
    mags = sorted(abs(x) for x in vec)
    # dropping the largest entry always gives the minimum
    return mags[-2]


def dot(a: Sequence[int], x: Sequence[int]) -> int:
    a, x = as_vector(a), as_vector(x)
    if len(a) != len(x):
        raise DomainError(f"length mismatch: {len(a)} vs {len(x)}")
    return sum(ai * xi for ai, xi in zip(a, x))


# -- primes -----------------------------------------------------------------

def small_primes(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if sieve[p]:
            sieve[p * p::2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


@lru_cache(maxsize=4)
def _trial_primes(bound: int) -> tuple[int, ...]:
    return tuple(int(p) for p in small_primes(bound))


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Miller-Rabin with the first 13 prime bases, proven exact below ~3.3e24.
    Larger inputs raise ResourceLimitError rather than returning a probable
    answer.
    """
    n = int(n)
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_DETERMINISTIC_LIMIT:
        raise ResourceLimitError(f"no deterministic primality proof available for {n.bit_length()}-bit input")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _segment_primes(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi) by a segmented sieve."""
    lo = max(lo, 2)
    if hi <= lo:
        return []
    seg = np.ones(hi - lo, dtype=bool)
    for p in small_primes(math.isqrt(hi - 1)):
        p = int(p)
        start = max(p * p, -(-lo // p) * p)
        seg[start - lo::p] = False
    return [lo + int(i) for i in np.flatnonzero(seg)]


def primes_above(threshold: int, count: int) -> tuple[int, ...]:
    """The first `count` primes strictly greater than `threshold`, ascending."""
    if count < 1:
        raise DomainError("count must be positive")
    threshold = max(int(threshold), 1)
    found: list[int] = []
    if threshold > 2**60:
        n = threshold + 1
        while len(found) < count:
            if is_prime(n):
                found.append(n)
            n += 1
        return tuple(found)
    lo = threshold + 1
    # prime number theorem guess for the span, doubled until enough
    span = max(64, int(2 * count * math.log(lo + count + 2)))
    while len(found) < count:
        found.extend(_segment_primes(lo, lo + span))
        lo += span
        span *= 2
    return tuple(found[:count])


# -- factorisation, omega, mobius ---------------------------------------------

def prime_factorization(k: int, trial_bound: int = DEFAULT_TRIAL_BOUND) -> dict[int, int]:
    """Factor k >= 1 by trial division over primes up to trial_bound.

    A leftover cofactor is accepted if it is provably prime or the square of
    a prime; anything else needs real factoring and raises ResourceLimitError.
    """
    k = int(k)
    if k < 1:
        raise DomainError(f"factorization needs a positive integer, got {k}")
    factors: dict[int, int] = {}
    for p in _trial_primes(trial_bound):
        if p * p > k:
            break
        if k % p == 0:
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            factors[p] = e
    if k == 1:
        return factors
    if k <= trial_bound * trial_bound or is_prime(k):
        factors[k] = factors.get(k, 0) + 1
        return factors
    r = math.isqrt(k)
    if r * r == k and is_prime(r):
        factors[r] = 2
        return factors
    raise ResourceLimitError(f"cofactor of {k.bit_length()} bits has no factor below {trial_bound}")


def omega(k: int) -> int:
    """Number of distinct prime divisors; omega(1) == 0."""
    if int(k) < 1:
        raise DomainError("omega is defined for k >= 1")
    return len(prime_factorization(k))


def mobius(d: int) -> int:
    if int(d) < 1:
        raise DomainError("mobius is defined for d >= 1")
    exps = prime_factorization(d).values()
    if any(e > 1 for e in exps):
        return 0
    return -1 if len(exps) % 2 else 1


def mobius_table(limit: int) -> np.ndarray:
    """mu(0..limit) as int8, mu(0) set to 0."""
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in small_primes(limit):
        p = int(p)
        mu[p::p] *= -1
        mu[p * p::p * p] = 0
    return mu


def radical(m: int) -> int:
    return math.prod(prime_factorization(m))


# -- Jacobsthal -----------------------------------------------------------------

def jacobsthal(m: int, cap: int = DEFAULT_JACOBSTHAL_CAP) -> int:
    """Largest gap between consecutive integers coprime to m.

    The pattern of integers coprime to m repeats with period rad(m), so one
    period of rad(m) is sieved in fixed-size chunks. rad(m) above `cap`
    raises ResourceLimitError.
    """
    m = int(m)
    if m < 1:
        raise DomainError("jacobsthal is defined for m >= 1")
    primes = sorted(prime_factorization(m))
    period = math.prod(primes)
    if period > cap:
        raise ResourceLimitError(f"period {period} exceeds sieve cap {cap}")
    if period == 1:
        return 1
    best = 0
    first = last = None
    for lo in range(0, period, _SIEVE_CHUNK):
        hi = min(lo + _SIEVE_CHUNK, period)
        mask = np.ones(hi - lo, dtype=bool)
        for p in primes:
            mask[(-lo) % p::p] = False
        idx = np.flatnonzero(mask)
        if idx.size == 0:
            continue
        idx = idx + lo
        if first is None:
            first = int(idx[0])
        else:
            best = max(best, int(idx[0]) - last)
        if idx.size > 1:
            best = max(best, int(np.diff(idx).max()))
        last = int(idx[-1])
    # gap that wraps into the next period
    best = max(best, first + period - last)
    return best


# -- CRT ---------------------------------------------------------------------

def crt(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    """Solve x = r_i (mod m_i) for pairwise coprime moduli.

    Returns (x, M) with 0 <= x < M = prod(m_i). Incremental Garner-style
    lifting; each step needs one modular inverse.
    """
    if len(residues) != len(moduli):
        raise DomainError("residues and moduli differ in length")
    x, big_m = 0, 1
    for r, m in zip(residues, moduli):
        m = int(m)
        if m < 1:
            raise DomainError(f"modulus must be positive, got {m}")
        try:
            inv = pow(big_m % m, -1, m)
        except ValueError:
            raise DomainError(f"modulus {m} is not coprime to the earlier moduli") from None
        t = (int(r) - x) * inv % m
        x += big_m * t
        big_m *= m
    return x, big_m

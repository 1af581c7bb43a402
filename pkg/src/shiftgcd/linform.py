"""Counting pairs of positive vectors whose linear forms stay coprime.

R(a, h) counts ordered pairs x, y in [1, h]^n with gcd(a.x, a.y) = gcd(a).
After dividing a by its gcd, inclusion-exclusion over d gives

    R(a, h) = sum_d mu(d) U_d(a, h)^2,

where U_d counts x in [1, h]^n with d | a.x. For positive a every a.x lies in
(0, n*H(a)*h], so the sum stops exactly at d_max = n*H(a)*h.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError
from .numbercore import as_vector, dot, gcd_vec, height, mobius, mobius_table

INV_ZETA2 = 6.0 / math.pi**2
U_BRUTE_GUARD = 10**7
R_BRUTE_GUARD = 10**8
D_BUDGET = 10**5
_CIRCULANT_MAX = 128

__all__ = [
    "CountReport", "BoundRow", "SweepRow", "dot", "u_d", "u_d_brute", "r_brute",
    "u_d_brute_many", "r_mobius", "count_r", "bound_audit", "convergence_sweep", "reduce_vector",
]


def _positive(a) -> tuple[int, ...]:
    vec = as_vector(a)
    if min(vec) < 1:
        raise DomainError("this counter requires positive entries in a")
    return vec


def reduce_vector(a: Sequence[int]) -> tuple[int, ...]:
    vec = _positive(a)
    g = gcd_vec(vec)
    return tuple(x // g for x in vec)


def _check_h(h):
    if int(h) < 1:
        raise DomainError("h must be a positive integer")
    return int(h)


def d_max(a: Sequence[int], h: int) -> int:
    return len(a) * height(a) * h


@lru_cache(maxsize=4096)
def _residue_occurrences(d: int, h: int):
    """Residues 0..d-1 and how many x in [1, h] fall in each."""
    s = np.arange(d, dtype=np.int64)
    s_pos = np.where(s == 0, d, s)
    occ = np.where(s_pos <= h, (h - s_pos) // d + 1, 0)
    return s, occ


@lru_cache(maxsize=256)
def _circulant(d: int) -> np.ndarray:
    ar = np.arange(d)
    return (ar[:, None] - ar[None, :]) % d


def u_d(a: Sequence[int], h: int, d: int) -> int:
    """Number of x in [1, h]^n with d | a.x, by dynamic programming on residues.

    Coordinates are folded in one at a time; the state is the count of
    partial vectors per residue of the partial sum mod d. A coordinate with
    coefficient c adds c*x for x in [1, h], which hits at most min(d, h)
    distinct residues, so each fold is a sum of that many rolled copies.
    """
    vec = _positive(a)
    h = _check_h(h)
    d = int(d)
    if d < 1:
        raise DomainError("d must be positive")
    n = len(vec)
    if d == 1:
        return h**n
    if d > n * height(vec) * h:
        return 0
    exact_int64 = h**n < 2**62
    dtype = np.int64 if exact_int64 else object

    s, occ = _residue_occurrences(d, h)
    state = np.zeros(d, dtype=dtype)
    state[0] = 1
    circulant = _circulant(d) if exact_int64 and d <= _CIRCULANT_MAX else None
    for c in vec:
        shifts = (c % d) * s % d
        weights = np.bincount(shifts, weights=occ, minlength=d).astype(np.int64)
        if circulant is not None:
            state = state[circulant] @ weights
            continue
        if not exact_int64:
            weights = weights.astype(object)
        new = np.zeros(d, dtype=dtype)
        for r in np.flatnonzero(weights):
            new += weights[r] * np.roll(state, int(r))
        state = new
    return int(state[0])


def u_d_brute(a: Sequence[int], h: int, d: int, guard: int = U_BRUTE_GUARD) -> int:
    vec = as_vector(a)
    h = _check_h(h)
    if h ** len(vec) > guard:
        raise ResourceLimitError(f"h^n = {h ** len(vec)} exceeds guard {guard}")
    return sum(1 for x in itertools.product(range(1, h + 1), repeat=len(vec)) if dot(vec, x) % d == 0)


def u_d_brute_many(a: Sequence[int], h: int, ds: Iterable[int], guard: int = U_BRUTE_GUARD) -> dict[int, int]:
    """u_d_brute for several d from one enumeration of the box."""
    vec = as_vector(a)
    h = _check_h(h)
    n = len(vec)
    if h**n > guard:
        raise ResourceLimitError(f"h^n = {h**n} exceeds guard {guard}")
    if n * height(vec) * h >= 2**62:
        return {int(d): u_d_brute(vec, h, d, guard) for d in ds}
    grids = np.meshgrid(*([np.arange(1, h + 1, dtype=np.int64)] * n), indexing="ij")
    values = sum(c * g for c, g in zip(vec, grids)).ravel()
    return {int(d): int(np.count_nonzero(values % int(d) == 0)) for d in ds}


def r_brute(a: Sequence[int], h: int, guard: int = R_BRUTE_GUARD) -> int:
    """Direct count of pairs (x, y) with gcd(a.x, a.y) == gcd(a).

    Vectors sharing the same value a.x are grouped, so the pair loop runs
    over distinct values with multiplicities.
    """
    vec = reduce_vector(a)
    h = _check_h(h)
    if h ** (2 * len(vec)) > guard:
        raise ResourceLimitError(f"h^(2n) = {h ** (2 * len(vec))} exceeds guard {guard}")
    values = Counter(sum(c * x for c, x in zip(vec, xs))
                     for xs in itertools.product(range(1, h + 1), repeat=len(vec)))
    items = list(values.items())
    return sum(cu * cv for u, cu in items for v, cv in items if math.gcd(u, v) == 1)


def r_mobius(a: Sequence[int], h: int, budget: int = D_BUDGET) -> int:
    vec = reduce_vector(a)
    h = _check_h(h)
    top = d_max(vec, h)
    if top > budget:
        raise ResourceLimitError(f"d_max = {top} exceeds budget {budget}")
    mu = mobius_table(top)
    return sum(int(mu[d]) * u_d(vec, h, d) ** 2 for d in range(1, top + 1) if mu[d])


@dataclass(frozen=True)
class CountReport:
    a: tuple[int, ...]
    h: int
    R: int
    d_max: int
    ud_table: tuple[tuple[int, int], ...] | None = None

    @property
    def main_term(self) -> float:
        return self.h ** (2 * len(self.a)) * INV_ZETA2

    @property
    def rel_error(self) -> float:
        return abs(self.R / self.h ** (2 * len(self.a)) - INV_ZETA2)


def count_r(a: Sequence[int], h: int, *, with_table: bool = False, budget: int = D_BUDGET) -> CountReport:
    vec = reduce_vector(a)
    h = _check_h(h)
    top = d_max(vec, h)
    if top > budget:
        raise ResourceLimitError(f"d_max = {top} exceeds budget {budget}")
    mu = mobius_table(top)
    table = tuple((d, u_d(vec, h, d)) for d in range(1, top + 1) if mu[d])
    R = sum(int(mu[d]) * u * u for d, u in table)
    return CountReport(tuple(as_vector(a)), h, R, top, table if with_table else None)


# -- estimates on U_d ------------------------------------------------------------

@dataclass(frozen=True)
class BoundRow:
    d: int
    U: int
    squarefree: bool
    asymp_applies: bool
    asymp_ok: bool | None
    bound1_ok: bool
    bound2_ok: bool | None

    @property
    def violation(self) -> bool:
        return self.asymp_ok is False or not self.bound1_ok or self.bound2_ok is False


def check_bounds(a: Sequence[int], h: int, d: int, U: int | None = None) -> BoundRow:
    """Exact integer versions of the three U_d estimates.

    asymptotic (1 <= d <= 2h/(3n)):  |U^2 d^2 - h^(2n)| <= 8 n h^(2n-1) d
    bound 1 (all d):                 U d <= (h + d)^n
    bound 2 (squarefree d):          U <= h^(n-1) + h^n d^(-1/n),
                                     i.e. (U - h^(n-1))^n d <= h^(n^2) when U > h^(n-1)
    """
    vec = _positive(a)
    n = len(vec)
    if U is None:
        U = u_d(vec, h, d)
    sqf = mobius(d) != 0
    asymp_applies = 3 * n * d <= 2 * h
    asymp_ok = None
    if asymp_applies:
        asymp_ok = abs(U * U * d * d - h ** (2 * n)) <= 8 * n * h ** (2 * n - 1) * d
    bound1_ok = U * d <= (h + d) ** n
    bound2_ok = None
    if sqf:
        excess = U - h ** (n - 1)
        bound2_ok = excess <= 0 or excess**n * d <= h ** (n * n)
    return BoundRow(d, U, sqf, asymp_applies, asymp_ok, bound1_ok, bound2_ok)


def bound_audit(a: Sequence[int], h: int, d_samples: Iterable[int]) -> list[BoundRow]:
    vec = _positive(a)
    if gcd_vec(vec) != 1:
        raise DomainError("bound audit needs gcd(a) == 1")
    h = _check_h(h)
    return [check_bounds(vec, h, int(d)) for d in d_samples]


# -- convergence ---------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    h: int
    R: int
    density: float
    error: float
    # log|R - h^(2n)/zeta(2)| / log h next to the exponent 2n - n/(n^2-n+1)
    observed_exponent: float | None
    predicted_exponent: float


def predicted_error_exponent(n: int) -> float:
    return 2 * n - n / (n * n - n + 1)


def convergence_sweep(a: Sequence[int], h_range: Iterable[int], budget: int = D_BUDGET) -> list[SweepRow]:
    vec = reduce_vector(a)
    n = len(vec)
    rows = []
    for h in h_range:
        R = r_mobius(vec, h, budget)
        total = h ** (2 * n)
        density = R / total
        gap = abs(R - total * INV_ZETA2)
        observed = math.log(gap) / math.log(h) if h > 1 and gap > 0 else None
        rows.append(SweepRow(h, R, density, abs(density - INV_ZETA2), observed, predicted_error_exponent(n)))
    return rows

"""Largest gcd reachable by shifting each entry of a by at most H.

The exact search scans candidate divisors d from max|a_i| + H downward and
stops at the first d for which every a_i lies within H of a multiple of d.
Residues are evaluated in numpy chunks when the values fit in int64.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from statistics import median
from typing import Sequence

import numpy as np

from .errors import DomainError, InvariantError, ResourceLimitError
from .numbercore import as_vector, gcd_vec, height

BRUTE_FORCE_GUARD = 10**8
_CHUNK = 1 << 16
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class ShiftGcdResult:
    a: tuple[int, ...]
    H: int
    d: int
    witness: tuple[int, ...]

    @property
    def exponent(self) -> float | None:
        if self.H < 2:
            return None
        return math.log(self.d) / math.log(self.H)

    @property
    def shifted(self) -> tuple[int, ...]:
        return tuple(x + h for x, h in zip(self.a, self.witness))


def _validate(a, H, strict):
    vec = as_vector(a)
    H = int(H)
    if H < 0:
        raise DomainError("H must be non-negative")
    if strict:
        if min(vec) < 1:
            raise DomainError("entries must be positive (pass strict=False to allow others)")
        if H >= min(vec):
            raise DomainError("H must be smaller than min(a) (pass strict=False to allow it)")
    elif all(x == 0 for x in vec):
        raise DomainError("the zero vector has no gcd")
    return vec, H


def _shift_options(x: int, d: int, H: int) -> list[int]:
    """Shifts h with |h| <= H and d | x + h, best first.

    Order: smaller |h| first, negative before positive on ties.
    """
    r = x % d
    opts = []
    h = -r
    while h >= -H:
        opts.append(h)
        h -= d
    h = d - r
    while h <= H:
        opts.append(h)
        h += d
    opts.sort(key=lambda s: (abs(s), s))
    return opts


def _witness_for(vec, d, H):
    """A shift realising divisor d with a + h not identically zero, or None."""
    choice = []
    for x in vec:
        opts = _shift_options(x, d, H)
        if not opts:
            return None
        choice.append(opts)
    picked = [opts[0] for opts in choice]
    if any(x + h != 0 for x, h in zip(vec, picked)):
        return tuple(picked)
    for i, opts in enumerate(choice):
        if len(opts) > 1:
            picked[i] = opts[1]
            return tuple(picked)
    return None


def _candidate_ds(vec, H, top):
    """Yield d from top down to 1 that pass the residue test."""
    if top + H < _INT64_SAFE:
        arr = np.array(vec, dtype=np.int64)
        hi = top
        while hi >= 1:
            lo = max(1, hi - _CHUNK + 1)
            ds = np.arange(hi, lo - 1, -1, dtype=np.int64)
            ok = np.ones(ds.size, dtype=bool)
            for x in arr:
                r = np.mod(x, ds)
                ok &= np.minimum(r, ds - r) <= H
            for d in ds[ok]:
                yield int(d)
            hi = lo - 1
    else:
        for d in range(top, 0, -1):
            if all(min(x % d, d - x % d) <= H for x in vec):
                yield d


def _certify(result: ShiftGcdResult) -> ShiftGcdResult:
    if height(result.witness) > result.H:
        raise InvariantError(f"witness {result.witness} exceeds height {result.H}")
    shifted = result.shifted
    if any(s % result.d for s in shifted):
        raise InvariantError(f"{result.d} does not divide every entry of {shifted}")
    if gcd_vec(shifted) != result.d:
        raise InvariantError(f"gcd of {shifted} is not {result.d}")
    return result


def max_shifted_gcd(a: Sequence[int], H: int, *, strict: bool = True) -> ShiftGcdResult:
    """Maximum of gcd(a + h) over integer shifts with max|h_i| <= H.

    With strict=True (default) entries must be positive and H < min(a), so
    every shifted entry stays positive. strict=False accepts any non-zero
    vector; shifts that would make a + h entirely zero are excluded.
    """
    vec, H = _validate(a, H, strict)
    top = height(vec) + H
    for d in _candidate_ds(vec, H, top):
        w = _witness_for(vec, d, H)
        if w is not None:
            return _certify(ShiftGcdResult(vec, H, d, w))
    raise InvariantError("no feasible divisor found; d = 1 must always be feasible")


def brute_force_shifted_gcd(a: Sequence[int], H: int, guard: int = BRUTE_FORCE_GUARD) -> ShiftGcdResult:
    """Enumerate the whole cube [-H, H]^n; first maximiser in lexicographic order."""
    vec = as_vector(a)
    H = int(H)
    if H < 0:
        raise DomainError("H must be non-negative")
    if (2 * H + 1) ** len(vec) > guard:
        raise ResourceLimitError(f"(2H+1)^n = {(2 * H + 1) ** len(vec)} exceeds guard {guard}")
    best_d, best_h = 0, None
    for h in itertools.product(range(-H, H + 1), repeat=len(vec)):
        g = math.gcd(*(x + s for x, s in zip(vec, h)))
        if g > best_d:
            best_d, best_h = g, h
    if best_h is None:
        raise DomainError("every shift gives the zero vector")
    return ShiftGcdResult(vec, H, best_d, tuple(best_h))


@dataclass(frozen=True)
class ExponentRecord:
    a: tuple[int, ...]
    H: int
    d: int
    exponent: float


def shift_bound(scale: int, epsilon: float) -> int:
    """floor(scale**epsilon), nudged so exact powers are not lost to rounding."""
    H = math.floor(scale**epsilon + 1e-9)
    return H


def exponent_experiment(n: int, epsilon: float, height_scale: int, trials: int, seed: int) -> list[ExponentRecord]:
    """Random vectors with entries in [scale/2, scale], H = floor(scale**eps)."""
    if n < 2:
        raise DomainError("n must be >= 2")
    if not 0 < epsilon < 1:
        raise DomainError("epsilon must lie in (0, 1)")
    if trials < 1:
        raise DomainError("trials must be positive")
    H = shift_bound(height_scale, epsilon)
    if H < 2:
        raise DomainError(f"height_scale**epsilon must be >= 2 (got H = {H})")
    rng = np.random.default_rng(seed)
    lo = max(height_scale // 2, 1)
    records = []
    for _ in range(trials):
        a = tuple(int(x) for x in rng.integers(lo, height_scale, size=n, endpoint=True))
        res = max_shifted_gcd(a, H, strict=H < min(a))
        records.append(ExponentRecord(a, H, res.d, res.exponent))
    return records


def median_exponent(records: Sequence[ExponentRecord]) -> float:
    return median(r.exponent for r in records)

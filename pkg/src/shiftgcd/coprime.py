"""Shifts that make a vector coprime.

greedy_coprime() is the one-sided construction: keep a_1, then move each
later entry up to the first value coprime to the product of everything
fixed so far. L_exact / ell_exact find the optimal signed height by
searching the cube [-H, H]^n level by level.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, InvariantError, ResourceLimitError
from .numbercore import as_vector, height, height_star, jacobsthal

LEVEL_GUARD = 10**6
AUDIT_JACOBSTHAL_CAP = 10**6


def pairwise_coprime(v: Sequence[int]) -> bool:
    return all(math.gcd(x, y) == 1 for x, y in itertools.combinations(v, 2))


@dataclass(frozen=True)
class CoprimeShiftResult:
    shifts: tuple[int, ...]
    shifted: tuple[int, ...]

    @property
    def height_used(self) -> int:
        return height(self.shifts)


def _greedy_steps(vec):
    """Yield (h_i, product of earlier shifted entries) for i >= 2."""
    prod = vec[0]
    for x in vec[1:]:
        t = 0
        while math.gcd(prod, x + t) != 1:
            t += 1
        yield t, prod
        prod *= x + t


def greedy_coprime(a: Sequence[int]) -> CoprimeShiftResult:
    vec = as_vector(a)
    if len(vec) < 2:
        raise DomainError("need at least two entries")
    if min(vec) < 1:
        raise DomainError("greedy shifting requires positive entries")
    shifts = (0,) + tuple(t for t, _ in _greedy_steps(vec))
    shifted = tuple(x + h for x, h in zip(vec, shifts))
    if not pairwise_coprime(shifted):
        raise InvariantError(f"greedy output {shifted} is not pairwise coprime")
    return CoprimeShiftResult(shifts, shifted)


def _level_search(vec, predicate, guard):
    """Smallest H such that some h with max|h_i| <= H satisfies predicate.

    Each level only visits the shell max|h_i| == H, in lexicographic order.
    Returns (H, witness).
    """
    n = len(vec)
    H = 0
    while True:
        size = (2 * H + 1) ** n
        if size > guard:
            raise ResourceLimitError(
                f"no witness with height <= {H - 1}; level {H} needs {size} > {guard} shifts"
            )
        for h in itertools.product(range(-H, H + 1), repeat=n):
            if H and max(map(abs, h)) != H:
                continue
            if predicate(tuple(x + s for x, s in zip(vec, h))):
                return H, h
        H += 1


def L_exact(a: Sequence[int], guard: int = LEVEL_GUARD) -> int:
    """Minimal height of a shift making a pairwise coprime."""
    return L_witness(a, guard)[0]


def L_witness(a: Sequence[int], guard: int = LEVEL_GUARD) -> tuple[int, tuple[int, ...]]:
    vec = as_vector(a)
    if len(vec) < 2:
        raise DomainError("L is defined for n >= 2")
    return _level_search(vec, pairwise_coprime, guard)


def ell_exact(a: Sequence[int], guard: int = LEVEL_GUARD) -> int:
    """Minimal height of a shift with gcd(a + h) == 1."""
    return ell_witness(a, guard)[0]


def ell_witness(a: Sequence[int], guard: int = LEVEL_GUARD) -> tuple[int, tuple[int, ...]]:
    vec = as_vector(a)
    return _level_search(vec, lambda v: math.gcd(*v) == 1, guard)


# -- audit ---------------------------------------------------------------

@dataclass(frozen=True)
class GreedyAuditRow:
    a: tuple[int, ...]
    shifts: tuple[int, ...]
    height_used: int
    height_star: int
    ratio: float
    certified: bool
    # (step index, h_i, jacobsthal(product)) for steps with a sieve-small product
    jacobsthal_steps: tuple[tuple[int, int, int], ...] = field(default=())

    @property
    def jacobsthal_ok(self) -> bool:
        return all(h <= g for _, h, g in self.jacobsthal_steps)


def audit_one(a: Sequence[int], jacobsthal_cap: int = AUDIT_JACOBSTHAL_CAP) -> GreedyAuditRow:
    vec = as_vector(a)
    res = greedy_coprime(vec)
    checks = []
    for i, (t, prod) in enumerate(_greedy_steps(vec), start=2):
        if prod <= jacobsthal_cap:
            checks.append((i, t, jacobsthal(prod, cap=jacobsthal_cap)))
    hs = height_star(vec)
    return GreedyAuditRow(
        a=vec,
        shifts=res.shifts,
        height_used=res.height_used,
        height_star=hs,
        ratio=res.height_used / math.log(hs + 2) ** 2,
        certified=pairwise_coprime(res.shifted),
        jacobsthal_steps=tuple(checks),
    )


def greedy_bound_audit(samples: int, n: int, magnitude: int, seed: int,
                       jacobsthal_cap: int = AUDIT_JACOBSTHAL_CAP) -> list[GreedyAuditRow]:
    """Run the greedy shift on random vectors and record its height.

    Each sample draws a scale log-uniformly from [16, magnitude] and entries
    uniformly from [1, scale], so small products (where the Jacobsthal
    check applies) appear alongside large entries.
    """
    if samples < 1 or n < 2:
        raise DomainError("need samples >= 1 and n >= 2")
    if magnitude < 16:
        raise DomainError("magnitude must be >= 16")
    rng = np.random.default_rng(seed)
    log_lo, log_hi = math.log(16), math.log(magnitude)
    rows = []
    for _ in range(samples):
        scale = min(magnitude, max(16, int(math.exp(rng.uniform(log_lo, log_hi)))))
        a = tuple(int(rng.integers(1, scale, endpoint=True)) for _ in range(n))
        rows.append(audit_one(a, jacobsthal_cap))
    return rows

"""CRT-built vectors where every shift of height <= H keeps a common factor.

Each shift tuple t in [-H, H]^n gets its own prime p_t > H, and every entry
is fixed by a_k = -t_k (mod p_t). Then p_t divides a + t for every t, so
no shift of height <= H reaches gcd 1 and ell(a) >= H + 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, ResourceLimitError
from .numbercore import as_vector, crt, height, primes_above

PRIME_COUNT_GUARD = 10**4
VERIFY_GUARD = 10**6


@dataclass(frozen=True)
class HardInstance:
    n: int
    H: int
    # tuples in lexicographic order, primes ascending
    assignment: dict[tuple[int, ...], int]
    a: tuple[int, ...]

    @property
    def certified_lower_bound(self) -> int:
        return self.H + 1

    def to_dict(self) -> dict:
        """JSON-ready form; big integers become decimal strings."""
        return {
            "n": self.n,
            "H": self.H,
            "a": [str(x) for x in self.a],
            "primes": [
                {"shift": list(t), "p": str(p)} for t, p in self.assignment.items()
            ],
            "certified_lower_bound": self.certified_lower_bound,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "HardInstance":
        try:
            n, H = int(doc["n"]), int(doc["H"])
            a = tuple(int(x) for x in doc["a"])
            assignment = {tuple(int(s) for s in row["shift"]): int(row["p"]) for row in doc["primes"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed hard instance: {exc}") from None
        if len(a) != n or any(len(t) != n for t in assignment):
            raise DomainError("hard instance dimensions disagree")
        return cls(n, H, assignment, a)


def shift_tuples(n: int, H: int):
    return itertools.product(range(-H, H + 1), repeat=n)


def crt_hard_instance(n: int, H: int, guard: int = PRIME_COUNT_GUARD) -> HardInstance:
    if n < 1 or H < 1:
        raise DomainError("need n >= 1 and H >= 1")
    count = (2 * H + 1) ** n
    if count > guard:
        raise ResourceLimitError(f"(2H+1)^n = {count} primes exceeds guard {guard}")
    tuples = list(shift_tuples(n, H))
    primes = primes_above(H, count)
    assignment = dict(zip(tuples, primes))
    a = []
    for k in range(n):
        x, big_m = crt([-t[k] % p for t, p in assignment.items()], primes)
        a.append(x if x else big_m)
    return HardInstance(n, H, assignment, tuple(a))


@dataclass(frozen=True)
class Certificate:
    passed: bool
    failing_shift: tuple[int, ...] | None = None
    reason: str = ""


def verify_hard_instance(inst: HardInstance, guard: int = VERIFY_GUARD) -> Certificate:
    """Check p_t | a + t for every shift t of height <= H, plus prime hygiene."""
    size = (2 * inst.H + 1) ** inst.n
    if size > guard:
        raise ResourceLimitError(f"cube of {size} shifts exceeds guard {guard}")
    primes = list(inst.assignment.values())
    if len(set(primes)) != len(primes):
        return Certificate(False, reason="primes are not distinct")
    for t in shift_tuples(inst.n, inst.H):
        p = inst.assignment.get(t)
        if p is None:
            return Certificate(False, t, "no prime assigned")
        if p <= inst.H:
            return Certificate(False, t, f"prime {p} is not above H")
        if any((x + s) % p for x, s in zip(inst.a, t)):
            return Certificate(False, t, f"{p} does not divide a + h")
    return Certificate(True)


@dataclass(frozen=True)
class GrowthRow:
    H: int
    bits: int
    log_height: float
    shape: float | None  # (log h / log log h)^(1/n)
    ratio: float | None  # (H + 1) / shape
    log_height_scaled: float  # log h / (H^n log(H + 2))


def growth_audit(n: int, H_range: Sequence[int]) -> list[GrowthRow]:
    rows = []
    for H in H_range:
        inst = crt_hard_instance(n, H)
        h = height(inst.a)
        log_h = math.log(h)
        shape = ratio = None
        if log_h > 1:
            shape = (log_h / math.log(log_h)) ** (1.0 / n)
            ratio = (H + 1) / shape
        rows.append(GrowthRow(H, h.bit_length(), log_h, shape, ratio,
                              log_h / (H**n * math.log(H + 2))))
    return rows


def product_of_primes(inst: HardInstance) -> int:
    return math.prod(inst.assignment.values())


def residues_match(inst: HardInstance) -> bool:
    """Reduce each a_k modulo its primes and compare with the planted residues."""
    return all(
        x % p == (-t[k]) % p
        for t, p in inst.assignment.items()
        for k, x in enumerate(as_vector(inst.a))
    )

"""Exponent calculus behind the large-shifted-gcd theorem.

kappa(n, eps) is the root of

    n (eps*kappa - 1) / (n - 1) = gamma(kappa),   gamma(K) = 1 / (2**(2 + max(1, K)) - 4),

theta(n, eps) = (1 - 1/(eps*kappa)) / (n - 1) is the exponent gained over
linear growth, and plan_parameters() reproduces the (Q, R, psi) choice that
feeds the Baker-Harman approximation lemma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NumericError

MAX_ITER = 200
KAPPA_TOL = 1e-13


def _check_n_eps(n: int, epsilon: float) -> None:
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon!r}")


def gamma_of(K: float) -> float:
    if K <= 0:
        raise DomainError("K must be positive")
    return 1.0 / (2.0 ** (2.0 + max(1.0, K)) - 4.0)


def kappa_lhs(n: int, epsilon: float, K: float) -> float:
    return n * (epsilon * K - 1.0) / (n - 1)


def kappa_residual(n: int, epsilon: float, K: float) -> float:
    return abs(kappa_lhs(n, epsilon, K) - gamma_of(K))


def kappa(n: int, epsilon: float) -> float:
    """Root of the kappa equation by bisection.

    The left side is increasing and the right side positive and
    non-increasing, so the sign change is unique and lies above 1/eps.
    """
    _check_n_eps(n, epsilon)

    def f(K):
        return kappa_lhs(n, epsilon, K) - gamma_of(K)

    lo = 1.0 / epsilon + 1e-15
    if f(lo) > 0:
        raise NumericError("bracket lower end already past the root")
    hi = 2.0 * lo
    for _ in range(MAX_ITER):
        if f(hi) > 0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise NumericError("could not bracket the kappa root")

    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # interval at machine resolution
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < KAPPA_TOL * 1e-3:
            break
    else:
        raise NumericError("bisection did not converge")
    return lo if abs(f(lo)) <= abs(f(hi)) else hi


def theta(n: int, epsilon: float) -> float:
    K = kappa(n, epsilon)
    return (1.0 - 1.0 / (epsilon * K)) / (n - 1)


@dataclass(frozen=True)
class ConstantsReport:
    n: int
    epsilon: float
    kappa: float
    theta: float
    gamma: float
    residual: float

    @property
    def eps_kappa(self) -> float:
        return self.epsilon * self.kappa


def constants(n: int, epsilon: float) -> ConstantsReport:
    K = kappa(n, epsilon)
    return ConstantsReport(
        n=n,
        epsilon=epsilon,
        kappa=K,
        theta=(1.0 - 1.0 / (epsilon * K)) / (n - 1),
        gamma=gamma_of(K),
        residual=kappa_residual(n, epsilon, K),
    )


@dataclass(frozen=True)
class ParameterPlan:
    n: int
    epsilon: float
    H: float
    K: float
    gamma: float
    A: float
    Q: float
    R: float
    psi: float
    # advisory flags; the lemma's constants C1, c2 are not explicit
    q_at_least_one: bool
    psi_below_log_ceiling: bool

    @property
    def gcd_gain(self) -> float:
        """Q**(1/n): the predicted factor of gcd(a+h) over the shift height."""
        return self.Q ** (1.0 / self.n)

    def height_identity_error(self) -> float:
        """Relative error of 2 Q**(1-1/n) R = H."""
        return abs(2.0 * self.Q ** (1.0 - 1.0 / self.n) * self.R - self.H) / self.H

    def radius_identity_error(self) -> float:
        """Relative error of R = n**(1/2K) H**(1/(eps K))."""
        target = self.n ** (1.0 / (2.0 * self.K)) * self.H ** (1.0 / (self.epsilon * self.K))
        return abs(self.R - target) / target

    def exponent_identity_error(self) -> float:
        """Relative error of gamma/(eps n K) = (eps K - 1)/(eps (n-1) K)."""
        lhs = self.gamma / (self.epsilon * self.n * self.K)
        rhs = (self.epsilon * self.K - 1.0) / (self.epsilon * (self.n - 1) * self.K)
        return abs(lhs - rhs) / abs(rhs)


def plan_parameters(n: int, epsilon: float, H: float) -> ParameterPlan:
    """Choose K, A, R, Q and psi so that 2 Q**(1-1/n) R = H.

    With Q = 0.5**(n/(n-1)) R**gamma / A, solving for R gives
    R = A**((n-1)/(n + gamma(n-1))) * H**(n/(n + gamma(n-1))); A is fixed so
    the first factor equals n**(1/2K), and the kappa equation turns the
    H-exponent into 1/(eps K).
    """
    _check_n_eps(n, epsilon)
    if not H >= 2:
        raise DomainError(f"H must be >= 2, got {H!r}")
    K = kappa(n, epsilon)
    g = gamma_of(K)
    denom = n + g * (n - 1)
    A = n ** (denom / (2.0 * K * (n - 1)))
    R = n ** (1.0 / (2.0 * K)) * H ** (1.0 / (epsilon * K))
    Q = 0.5 ** (n / (n - 1)) * R**g / A
    psi = Q ** (-1.0 / n)
    log_q = math.log(Q) if Q > 0 else float("-inf")
    return ParameterPlan(
        n=n,
        epsilon=epsilon,
        H=float(H),
        K=K,
        gamma=g,
        A=A,
        Q=Q,
        R=R,
        psi=psi,
        q_at_least_one=Q >= 1.0,
        psi_below_log_ceiling=log_q > 0 and psi <= log_q ** (-n),
    )

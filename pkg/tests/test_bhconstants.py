import math

import pytest

from shiftgcd.bhconstants import (
    constants, gamma_of, kappa, kappa_lhs, kappa_residual, plan_parameters, theta,
)
from shiftgcd.errors import DomainError

GRID = [(n, e / 10) for n in range(2, 11) for e in range(1, 10)]


@pytest.mark.parametrize("K, g", [(1, 0.25), (2, 1 / 12), (0.5, 0.25)])
def test_gamma_examples(K, g):
    assert gamma_of(K) == g


def test_gamma_non_increasing():
    ks = [0.1 * i for i in range(1, 100)]
    gs = [gamma_of(k) for k in ks]
    assert all(x >= y for x, y in zip(gs, gs[1:]))


def _sign_changes(n, eps, lo, hi, steps=4000):
    f = lambda K: kappa_lhs(n, eps, K) - gamma_of(K)
    xs = [lo + (hi - lo) * i / steps for i in range(steps + 1)]
    signs = [f(x) > 0 for x in xs]
    return sum(a != b for a, b in zip(signs, signs[1:])), xs, signs


def test_kappa_n2_half():
    K = kappa(2, 0.5)
    assert 2.0 < K < 2.1
    assert kappa_residual(2, 0.5, K) < 1e-12
    # independent bracket: the sign flips once on a coarse grid, next to K
    changes, xs, signs = _sign_changes(2, 0.5, 0.01, 10.0)
    assert changes == 1
    i = signs.index(True)
    assert xs[i - 1] <= K <= xs[i]


@pytest.mark.parametrize("n, eps", GRID)
def test_grid_properties(n, eps):
    rep = constants(n, eps)
    assert rep.residual < 1e-12
    assert rep.eps_kappa > 1
    assert rep.theta > 0
    assert gamma_of(rep.kappa) > 0
    changes, _, _ = _sign_changes(n, eps, 1e-3, 4 * rep.kappa, steps=500)
    assert changes == 1


@pytest.mark.parametrize("n", range(2, 11))
def test_kappa_decreasing_in_eps(n):
    ks = [kappa(n, e / 10) for e in range(1, 10)]
    assert all(x > y for x, y in zip(ks, ks[1:]))


def test_theta_examples():
    t = theta(2, 0.5)
    assert 0 < t < 0.1
    assert abs(t - 0.037) < 1e-3
    assert theta(10, 0.5) < t


@pytest.mark.parametrize("n, eps", [(1, 0.5), (2, 0.0), (2, 1.0), (2.5, 0.5)])
def test_kappa_domain(n, eps):
    with pytest.raises(DomainError):
        kappa(n, eps)


def test_plan_identities_example():
    plan = plan_parameters(2, 0.5, 1e6)
    assert plan.height_identity_error() < 1e-9
    assert plan.radius_identity_error() < 1e-9
    assert abs(plan.R - 2 ** (1 / (2 * plan.K)) * 1e6 ** (1 / (0.5 * plan.K))) / plan.R < 1e-9
    assert abs(plan.psi**2 * plan.Q - 1) < 1e-12
    # at this H the plan's Q is below 1, so the gcd gain is not certified
    assert not plan.q_at_least_one
    assert plan.gcd_gain < 1


@pytest.mark.parametrize("n, eps", GRID[::4])
@pytest.mark.parametrize("H", [2.0, 1e3, 1e12, 1e100])
def test_plan_identities_grid(n, eps, H):
    plan = plan_parameters(n, eps, H)
    assert plan.height_identity_error() < 1e-9
    assert plan.radius_identity_error() < 1e-9
    assert plan.exponent_identity_error() < 1e-9
    assert abs(plan.psi**n * plan.Q - 1) < 1e-9
    assert plan.q_at_least_one == (plan.Q >= 1)


def test_plan_q_grows_with_H():
    qs = [plan_parameters(2, 0.5, 10.0**k).Q for k in (3, 30, 300)]
    assert qs[0] < qs[1] < qs[2]
    assert plan_parameters(2, 0.5, 1e300).q_at_least_one


def test_plan_rejects_small_H():
    with pytest.raises(DomainError):
        plan_parameters(2, 0.5, 1.5)


def test_gain_exponent_equals_theta():
    for n, eps in GRID:
        K = kappa(n, eps)
        assert math.isclose(gamma_of(K) / (eps * n * K), theta(n, eps), rel_tol=1e-9)

"""Exit criteria for the package; each test prints a PASS/FAIL line in the
"acceptance criteria" section of the pytest summary."""

import io
import itertools
import math
import random
import time

import numpy as np
import pytest

from shiftgcd.adversary import crt_hard_instance, verify_hard_instance
from shiftgcd.bhconstants import constants, gamma_of, theta
from shiftgcd.cli import main
from shiftgcd.coprime import ell_exact, greedy_bound_audit, pairwise_coprime
from shiftgcd.linform import bound_audit, d_max, r_brute, r_mobius, u_d, u_d_brute_many
from shiftgcd.numbercore import gcd_vec
from shiftgcd.shiftsearch import brute_force_shifted_gcd, exponent_experiment, max_shifted_gcd

INV_ZETA2 = 6 / math.pi**2


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


@pytest.mark.criterion(1, "Mobius identity r_mobius == r_brute")
def test_c01_mobius_identity():
    rng = random.Random(1)
    cases = [((1, 1), 1, 0), ((1, 1), 2, 8), ((1, 2), 1, 0)]
    with Clock() as clock:
        for a, h, expected in cases:
            assert r_brute(a, h) == r_mobius(a, h) == expected
        for _ in range(50):
            n = rng.choice((2, 3))
            a = [rng.randint(1, 20) for _ in range(n)]
            g = math.gcd(*a)
            a = [x // g for x in a]
            h = rng.randint(1, 6)
            assert r_mobius(a, h) == r_brute(a, h), (a, h)
    assert clock.elapsed < 30


@pytest.mark.criterion(2, "density R/h^4 approaches 6/pi^2 for a=(1,2)")
def test_c02_convergence():
    with Clock() as clock:
        err8 = abs(r_mobius((1, 2), 8) / 8**4 - INV_ZETA2)
        err32 = abs(r_mobius((1, 2), 32) / 32**4 - INV_ZETA2)
    assert err32 < err8
    assert err32 <= 0.1
    assert clock.elapsed < 60


@pytest.mark.criterion(3, "U_d estimates: zero violations over 200 samples")
def test_c03_bound_audit():
    rng = random.Random(3)
    checked = {"asymp": 0, "bound1": 0, "bound2": 0}
    violations = []
    with Clock() as clock:
        for i in range(200):
            n = rng.choice((2, 3))
            while True:
                a = [rng.randint(1, 20) for _ in range(n)]
                if math.gcd(*a) == 1:
                    break
            h = rng.randint(1, 40)
            # alternate between the small-d range of the asymptotic and the full range
            small = (2 * h) // (3 * n)
            d = rng.randint(1, small) if i % 2 and small >= 1 else rng.randint(1, d_max(a, h))
            for row in bound_audit(a, h, [d]):
                checked["asymp"] += row.asymp_applies
                checked["bound1"] += 1
                checked["bound2"] += row.squarefree
                if row.violation:
                    violations.append((a, h, row))
    assert violations == []
    assert min(checked.values()) > 0
    assert clock.elapsed < 60


@pytest.mark.criterion(4, "max_shifted_gcd == brute force on [1,30]^2, H in {0,1,2}")
def test_c04_shift_gcd_exactness():
    count = 0
    with Clock() as clock:
        for a in itertools.product(range(1, 31), repeat=2):
            for H in range(3):
                res = max_shifted_gcd(a, H, strict=False)
                assert res.d == brute_force_shifted_gcd(a, H).d, (a, H)
                assert max(map(abs, res.witness)) <= H
                assert all(s % res.d == 0 for s in res.shifted)
                assert gcd_vec(res.shifted) == res.d
                count += 1
    assert count == 2700
    assert clock.elapsed < 20


@pytest.mark.criterion(5, "shifted-gcd exponent: d >= 2H and median >= 1 + theta(2, 0.5)")
def test_c05_exponent_experiment():
    with Clock() as clock:
        records = exponent_experiment(2, 0.5, 10**6, 50, seed=2024)
    assert all(r.H == 1000 for r in records)
    assert all(500_000 <= x <= 10**6 for r in records for x in r.a)
    assert all(r.d >= 2 * r.H for r in records)
    median = float(np.median([r.exponent for r in records]))
    print(f"median exponent {median:.4f} vs 1 + theta = {1 + theta(2, 0.5):.4f}")
    assert median >= 1 + theta(2, 0.5)
    assert clock.elapsed < 60


@pytest.mark.criterion(6, "kappa residual < 1e-12, eps*kappa > 1, theta > 0 on the grid; gamma(1) = 0.25")
def test_c06_constants():
    with Clock() as clock:
        for n in range(2, 11):
            for e in range(1, 10):
                rep = constants(n, e / 10)
                assert rep.residual < 1e-12
                assert rep.epsilon * rep.kappa > 1
                assert rep.theta > 0
        assert gamma_of(1) == 0.25
    assert clock.elapsed < 1


@pytest.mark.criterion(7, "greedy coprime: certificates, ratio <= 25, Jacobsthal step bound")
def test_c07_greedy_coprime():
    ceiling = 25.0
    rows = []
    with Clock() as clock:
        for n in range(2, 7):
            rows += greedy_bound_audit(200, n, 10**12, seed=700 + n)
    assert len(rows) == 1000
    assert all(max(r.a) <= 10**12 for r in rows)
    for r in rows:
        shifted = [x + h for x, h in zip(r.a, r.shifts)]
        assert r.certified and pairwise_coprime(shifted)
    max_ratio = max(r.ratio for r in rows)
    print(f"max ratio {max_ratio:.3f} (ceiling {ceiling})")
    assert max_ratio <= ceiling
    steps = [s for r in rows for s in r.jacobsthal_steps]
    assert steps, "no sieve-small products were sampled"
    assert all(h <= g for _, h, g in steps)
    assert clock.elapsed < 120


@pytest.mark.criterion(8, "CRT adversary certified; ell_exact >= 2 for n=2, H=1; n=1, H=1 gives 9")
def test_c08_crt_adversary():
    with Clock() as clock:
        for n, H in [(1, h) for h in range(1, 6)] + [(2, 1), (2, 2), (3, 1)]:
            assert verify_hard_instance(crt_hard_instance(n, H)).passed, (n, H)
        assert ell_exact(crt_hard_instance(2, 1).a) >= 2
        assert crt_hard_instance(1, 1).a == (9,)
    assert clock.elapsed < 30


@pytest.mark.criterion(9, "u_d == u_d_brute on n in {2,3}, entries <= 10, h <= 8, d <= 50")
def test_c09_u_d_grid():
    ds = range(1, 51)
    checked = 0
    with Clock() as clock:
        for n in (2, 3):
            for a in itertools.product(range(1, 11), repeat=n):
                for h in range(1, 9):
                    oracle = u_d_brute_many(a, h, ds)
                    for d in ds:
                        assert u_d(a, h, d) == oracle[d], (a, h, d)
                        checked += 1
    assert checked == 1100 * 8 * 50
    assert clock.elapsed < 30


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue()


@pytest.mark.criterion(10, "CLI determinism and exit codes")
def test_c10_cli():
    with Clock() as clock:
        for argv in (
            ["exponent-sweep", "--n", "2", "--eps", "0.5", "--scale", "100000", "--trials", "5", "--seed", "11"],
            ["greedy-audit", "--n", "4", "--samples", "10", "--seed", "3"],
            ["max-gcd-shift", "--a", "4,6", "--H", "1"],
            ["constants", "--n", "2", "--eps", "0.5", "--format", "csv"],
        ):
            first, second = _run(argv), _run(argv)
            assert first == second and first[0] == 0
        assert _run(["max-gcd-shift", "--a", "4,,6", "--H", "1"])[0] == 2
        assert _run(["count-r", "--a", "one,two", "--h", "3"])[0] == 2
        assert _run(["l-exact", "--a", "6,10", "--guard", "3"])[0] == 3
        assert _run(["crt-instance", "--n", "5", "--H", "3"])[0] == 3
    assert clock.elapsed < 5

"""Regularized kernel evaluators, schedules and limit classification."""
import cmath
import math
import random

import pytest

from plemelj.kernels import (RegularizationSchedule,
                             SingularInputError, TruncationError,
                             direct_quadrature, full_line_kernel,
                             full_line_limit, j_closed_form, j_kernel,
                             kernel_limit, kernel_limit_mirror)
from plemelj.special_functions import SQRT_PI, is_overflow

# frozen oracle value for exp(1)*erfc(1) (two-oracle machinery in
# tests/test_special_functions.py)
ERFCX_ONE = 0.42758357615580700441


# -- schedule validation -----------------------------------------------------

def test_default_schedule():
    s = RegularizationSchedule.default()
    assert len(s.lambdas) == 13
    assert s.lambdas[0] == 1.0
    assert abs(s.lambdas[-1] - 1e-6) < 1e-18
    assert all(b < a for a, b in zip(s.lambdas[:-1], s.lambdas[1:]))


@pytest.mark.parametrize("bad", [
    dict(lambdas=()),
    dict(lambdas=(1.0, 2.0)),
    dict(lambdas=(1.0, -0.5)),
    dict(lambdas=(1.0, 0.1), divergence_threshold=100.0, convergence_tol=1e-4),
])
def test_schedule_rejects(bad):
    with pytest.raises(ValueError):
        RegularizationSchedule(**bad)


# -- closed form --------------------------------------------------------------

def test_closed_form_upper_half_limit():
    # Im z > 0: the limit is i/z; at lambda = 1e-6 the residual is O(lambda)
    v = j_closed_form(1j, 1e-6)
    assert abs(v - 1.0) < 1e-3


def test_closed_form_rejects_origin():
    with pytest.raises(SingularInputError):
        j_closed_form(0.0, 0.1)


def test_closed_form_at_w_equals_one():
    # z = 2 sqrt(lambda) i makes w = 1: J = sqrt(pi) erfcx(1) / (2 sqrt(lambda))
    for lam in (1.0, 0.01):
        z = 2.0 * math.sqrt(lam) * 1j
        expected = SQRT_PI * ERFCX_ONE / (2.0 * math.sqrt(lam))
        assert abs(j_closed_form(z, lam) - expected) < 1e-13 * expected


def test_closed_form_overflow_propagates():
    v = j_closed_form(-1e4j, 1e-4)   # deep in the wedge, e^{w^2} overflows
    assert is_overflow(v)


# -- direct quadrature ---------------------------------------------------------

def test_half_gaussian_value():
    assert abs(direct_quadrature(0.0, 1.0) - 0.5 * SQRT_PI) < 1e-13


def test_quadrature_matches_closed_form_at_i():
    for lam in (1.0, 0.1, 0.01, 1e-3):
        a = j_closed_form(1j, lam)
        b = direct_quadrature(1j, lam)
        assert abs(a - b) <= 1e-10 * (1.0 + abs(a))


def test_quadrature_real_point_approaches_plemelj_value():
    # z = 1, lambda -> 0: i/(1 + i0) = i; the delta term vanishes pointwise
    v = direct_quadrature(1.0, 1e-4)
    assert abs(v - 1j) < 1e-3


def test_quadrature_truncation_failure():
    with pytest.raises(TruncationError):
        direct_quadrature(-40.0j, 1e-3)   # envelope peak e^{400/0.004} overflows


def test_evaluator_agreement_100_random_pairs():
    # pairs drawn with lambda in [1e-3, 1], |z| <= 5; pairs whose envelope
    # peak exceeds the double range or whose oscillatory cancellation
    # exceeds ~1e6:1 are resampled (past that no double-precision
    # quadrature can certify 1e-8; both regimes are exercised elsewhere)
    rng = random.Random(20240715)
    n = 0
    while n < 100:
        z = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        if abs(z) > 5.0 or abs(z) < 1e-3:
            continue
        lam = 10.0 ** rng.uniform(-3, 0)
        growth = max(0.0, -z.imag)
        if growth * growth / (4.0 * lam) > 350.0:
            continue
        if growth > 0.0 and z.real * z.real / (4.0 * lam) > 14.0:
            continue
        n += 1
        a = j_closed_form(z, lam)
        b = direct_quadrature(z, lam)
        assert abs(a - b) <= 1e-8 * (1.0 + abs(a)), (z, lam)


def test_scaling_identity():
    # J(z, lambda) = s J(s z, s^2 lambda) for real s > 0
    rng = random.Random(4711)
    for _ in range(40):
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if abs(z) < 0.05:
            continue
        lam = 10.0 ** rng.uniform(-3, 0)
        base = j_kernel(z, lam)
        if is_overflow(base):
            continue
        for s in (0.5, 2.0, 10.0):
            scaled = s * j_kernel(s * z, s * s * lam)
            assert abs(base - scaled) <= 1e-10 * max(1.0, abs(base))


# -- limit classification ------------------------------------------------------

def test_limit_examples():
    res = kernel_limit(1.0)
    assert res.status == "converged"
    assert res.value == 1j
    assert kernel_limit(-1j).status == "diverged"


def test_limit_rejects_origin():
    with pytest.raises(SingularInputError):
        kernel_limit(0.0)


def test_limit_on_boundary_ray_is_undecided():
    # exactly on the wedge boundary the scaled error function oscillates
    # (neither stabilizing at i/z nor blowing past the threshold), and the
    # classifier must refuse to guess
    res = kernel_limit(1.0 - 1.0j)
    assert res.status == "undecided"


def test_shallow_schedule_leaves_more_undecided():
    # with the ladder cut at lambda = 1e-2 even z = i cannot be certified
    shallow = RegularizationSchedule(
        lambdas=tuple(10.0 ** (-0.5 * n) for n in range(5)))
    assert kernel_limit(1j, shallow).status == "undecided"
    assert kernel_limit(1j).status == "converged"


def test_limit_wedge_boundary_bracketing():
    inside_wedge = cmath.exp(1j * (1.25 * math.pi + 0.05))
    outside_wedge = cmath.exp(1j * (1.25 * math.pi - 0.05))
    assert kernel_limit(inside_wedge).status == "diverged"
    res = kernel_limit(outside_wedge)
    assert res.status == "converged"
    assert abs(res.value - 1j / outside_wedge) < 1e-12


def test_limit_trace_shows_empirical_convergence():
    res = kernel_limit(2.0 + 1.0j)
    lam_last, j_last = res.lambda_trace[-1]
    assert lam_last == res.lambda_trace[-1][0] == min(
        l for l, _ in res.lambda_trace)
    assert abs(j_last - res.value) <= 1e-4 * abs(res.value)


def test_limit_diverged_trace_grows():
    res = kernel_limit(-0.5j)
    assert res.status == "diverged"
    mags = [abs(v) for _, v in res.lambda_trace if not is_overflow(v)]
    assert all(m1 > m0 for m0, m1 in zip(mags[:-1], mags[1:]))


def test_mirror_examples():
    res = kernel_limit_mirror(1.0)
    assert res.status == "converged"
    assert res.value == -1j
    res = kernel_limit_mirror(-1j)
    assert res.status == "converged"
    assert abs(res.value - 1.0) < 1e-12   # -i/(-i) = 1
    assert kernel_limit_mirror(2j).status == "diverged"  # upper wedge
    assert kernel_limit_mirror(1j * cmath.exp(0.1j)).status == "diverged"


def test_wedge_point_symmetry():
    rng = random.Random(90210)
    for _ in range(200):
        z = cmath.rect(10.0 ** rng.uniform(-0.5, 0.5),
                       rng.uniform(-math.pi, math.pi))
        assert ((kernel_limit(z).status == "diverged")
                == (kernel_limit_mirror(-z).status == "diverged"))


def test_upper_half_plane_exactness():
    rng = random.Random(1999)
    n = 0
    while n < 60:
        z = complex(rng.uniform(-5, 5), rng.uniform(0.5, 5))
        if abs(z) > 5.0:
            continue
        n += 1
        res = kernel_limit(z)
        assert res.status == "converged"
        assert abs(res.value - 1j / z) <= 1e-6 * abs(1j / z)


# -- full-line kernel -----------------------------------------------------------

def test_full_line_kernel_is_sum_of_halves():
    rng = random.Random(31337)
    for _ in range(50):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        lam = 10.0 ** rng.uniform(-2, 0)
        lhs = full_line_kernel(z, lam)
        rhs = j_kernel(z, lam) + j_kernel(-z, lam)
        if is_overflow(lhs) or is_overflow(rhs):
            continue
        assert abs(lhs - rhs) <= 1e-11 * max(1.0, abs(lhs))


def test_full_line_limit_trichotomy():
    assert full_line_limit(1.0).status == "converged"
    assert abs(full_line_limit(1.0).value) == 0.0
    assert full_line_limit(1j).status == "diverged"    # upper wedge
    assert full_line_limit(-1j).status == "diverged"   # lower wedge


def test_concurrent_evaluation_is_consistent():
    # pure functions with no shared state: a threaded sweep must reproduce
    # the sequential classification bit for bit
    from concurrent.futures import ThreadPoolExecutor
    pts = [complex(-2 + 0.37 * k, -2 + 0.59 * (k % 7)) for k in range(64)]
    pts = [z for z in pts if abs(z) > 1e-6]
    sequential = [(kernel_limit(z).status, kernel_limit(z).value) for z in pts]
    with ThreadPoolExecutor(max_workers=8) as pool:
        threaded = list(pool.map(
            lambda z: (kernel_limit(z).status, kernel_limit(z).value), pts))
    assert sequential == threaded

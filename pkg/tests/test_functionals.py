"""Distribution functionals: PV, extended Plemelj formulas, delta, overlap."""
import cmath
import math
import random

import pytest

from plemelj.contours import Contour, ContourError, segment_path, tilted_segment
from plemelj.functionals import (CATALOG_EXAMPLES, AdmissibilityError,
                                 DomainViolationError, FunctionalResult,
                                 OrientationError, PvDivergenceError,
                                 TestFunction, check_analytic, delta_action,
                                 deformation_route, lambda_route,
                                 overlap_delta, plemelj_minus, plemelj_plus,
                                 pv_contour, catalog_function)

# frozen series-oracle values (tests below regenerate them)
TWO_SHI_ONE = 2.1145017507514570291    # PV int_{-1}^{1} e^z/z dz = 2 Shi(1)
SQRTPI_ERF_3 = 1.7724146965190424678   # int_{-3}^{3} e^{-t^2} dt


def shi_series(x, terms=40):
    """Shi(x) = sum x^{2n+1} / ((2n+1) (2n+1)!) -- independent oracle."""
    acc = 0.0
    for n in range(terms):
        k = 2 * n + 1
        acc += x ** k / (k * math.factorial(k))
    return acc


def test_shi_oracle_matches_frozen():
    assert abs(2.0 * shi_series(1.0) - TWO_SHI_ONE) < 1e-15


# -- test-function catalog -----------------------------------------------------

def test_catalog_values_at_zero():
    assert catalog_function("one").at_zero() == 1.0
    assert abs(catalog_function("gauss(0.3)").at_zero() - math.exp(-0.09)) < 1e-15
    assert catalog_function("poly_gauss(2,0.3)").at_zero() == 0.0
    assert catalog_function("cos_gauss").at_zero() == 1.0


def test_catalog_complex_center():
    f = catalog_function("gauss(0.3+0.1j)")
    a = 0.3 + 0.1j
    assert abs(f(0.5) - cmath.exp(-(0.5 - a) ** 2)) < 1e-15


def test_catalog_unknown_name():
    with pytest.raises(ValueError):
        catalog_function("sinc(1)")


def test_declared_f0_mismatch_is_error():
    f = TestFunction(lambda z: cmath.exp(-z * z), value_at_zero=0.5)
    with pytest.raises(AdmissibilityError):
        f.at_zero()


def test_analyticity_spot_check_rejects_conjugation():
    bad = TestFunction(lambda z: z.conjugate(), value_at_zero=0.0)
    with pytest.raises(AdmissibilityError):
        check_analytic(bad, segment_path(-1.0, 1.0))


# -- principal value -------------------------------------------------------------

def test_pv_constant_vanishes():
    assert abs(pv_contour(catalog_function("one"), segment_path(-1.0, 1.0))) < 1e-10


def test_pv_linear_function():
    f = TestFunction(lambda z: z, value_at_zero=0.0)
    assert abs(pv_contour(f, segment_path(-1.0, 1.0)) - 2.0) < 1e-10


def test_pv_exponential_matches_shi_oracle():
    f = TestFunction(cmath.exp, value_at_zero=1.0)
    pv = pv_contour(f, segment_path(-1.0, 1.0))
    assert abs(pv - 2.0 * shi_series(1.0)) < 1e-9


def test_pv_asymmetric_interval():
    # PV int_{-1}^{2} dz/z = ln 2
    pv = pv_contour(catalog_function("one"), segment_path(-1.0, 2.0))
    assert abs(pv - math.log(2.0)) < 1e-9


def test_pv_divergence_for_near_pole():
    f = TestFunction(lambda z: 1.0 / (z - 1e-5), value_at_zero=-1e5)
    with pytest.raises(PvDivergenceError):
        pv_contour(f, segment_path(-1.0, 1.0))


def test_pv_requires_crossing():
    with pytest.raises(ContourError):
        pv_contour(catalog_function("one"), segment_path(-1.0 + 1j, 1.0 + 1j))


def test_pv_error_estimate_within_contract():
    from plemelj.functionals import _pv_ladder
    for name in ("gauss(0.3)", "cos_gauss", "poly_gauss(2,0.3)"):
        _pv, _trace, err = _pv_ladder(catalog_function(name),
                                      segment_path(-3.0, 3.0))
        assert err <= 1e-8


def test_lambda_route_rejects_bad_ladders():
    f = catalog_function("gauss(0)")
    seg = segment_path(-2.0, 2.0)
    with pytest.raises(ValueError):
        lambda_route(f, seg, kernel="plus", lambdas=(0.1, 0.05, 0.01))
    with pytest.raises(ValueError):
        lambda_route(f, seg, kernel="plus", lambdas=(0.1, 0.05, 0.02, 0.01))
    with pytest.raises(ValueError):
        lambda_route(f, seg, kernel="bogus")


# -- plemelj plus/minus -----------------------------------------------------------

def test_plus_constant_on_symmetric_segment():
    res = plemelj_plus(catalog_function("one"), segment_path(-1.0, 1.0))
    assert abs(res.value - math.pi) < 1e-10
    assert abs(res.pv_part) < 1e-10
    assert abs(res.delta_part - math.pi) < 1e-15


def test_plus_gaussian_even_symmetry():
    res = plemelj_plus(catalog_function("gauss(0)"), segment_path(-3.0, 3.0))
    assert abs(res.value - math.pi) < 1e-6


def test_result_bookkeeping_identity():
    res = plemelj_plus(catalog_function("gauss(0.3)"), segment_path(-3.0, 3.0))
    assert res.value == res.pv_part + res.delta_part
    assert isinstance(res, FunctionalResult)


def test_epsilon_trace_is_cauchy():
    res = plemelj_plus(catalog_function("gauss(0.3)"), segment_path(-3.0, 3.0))
    eps, vals = zip(*res.epsilon_trace)
    assert all(e1 < e0 for e0, e1 in zip(eps[:-1], eps[1:]))
    diffs = [abs(v1 - v0) for v0, v1 in zip(vals[:-1], vals[1:])]
    assert diffs[-1] <= diffs[-3] + 1e-12


def test_minus_mirror_constant():
    res = plemelj_minus(catalog_function("one"), segment_path(-1.0, 1.0))
    assert abs(res.value - math.pi) < 1e-10


def test_minus_odd_gaussian_pv_is_erf_integral():
    # f = z e^{-z^2}: f/z = e^{-z^2}, so PV part = -i int_{-3}^{3} e^{-t^2} dt
    f = catalog_function("poly_gauss(1,0)")
    res = plemelj_minus(f, segment_path(-3.0, 3.0))
    assert abs(res.delta_part) == 0.0
    assert abs(res.value - (-1j) * SQRTPI_ERF_3) < 1e-9
    # regenerate the oracle: Gauss-Kronrod of e^{-t^2} has no PV subtlety
    from plemelj.quadrature import integrate_adaptive
    val, _ = integrate_adaptive(lambda t: math.exp(-t * t), -3.0, 3.0,
                                abs_tol=1e-14)
    assert abs(val.real - SQRTPI_ERF_3) < 1e-13


def test_plus_plus_minus_is_two_pi_f0():
    for name in CATALOG_EXAMPLES:
        f = catalog_function(name)
        for path in (segment_path(-3.0, 3.0),
                     tilted_segment(math.pi / 10, -2.0, 2.5),
                     segment_path(-2.0, -0.8 + 0.3j, -0.4, 0.4, 0.8 + 0.3j, 2.0)):
            plus = plemelj_plus(f, path)
            minus = plemelj_minus(f, path)
            target = 2.0 * math.pi * f.at_zero()
            assert abs(plus.value + minus.value - target) <= 1e-10


def test_domain_violation_reports_segment():
    low = segment_path(-1.0, -0.5 - 1.2j, 0.0, 1.0, crossing=2)
    with pytest.raises(DomainViolationError) as info:
        plemelj_plus(catalog_function("gauss(0)"), low)
    assert info.value.segment_index in (0, 1)


def test_plus_requires_crossing_marker():
    path = segment_path(-1.0 + 0.5j, 1.0 + 0.5j)
    with pytest.raises(DomainViolationError):
        plemelj_plus(catalog_function("gauss(0)"), path)


def test_linearity():
    rng = random.Random(2718)
    f1 = catalog_function("gauss(0)")
    f2 = catalog_function("poly_gauss(2,0.3)")
    seg = segment_path(-3.0, 3.0)
    v1 = plemelj_plus(f1, seg).value
    v2 = plemelj_plus(f2, seg).value
    for _ in range(5):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        combo = TestFunction(lambda z, a=a, b=b: a * f1(z) + b * f2(z),
                             value_at_zero=a * f1.at_zero() + b * f2.at_zero())
        lhs = plemelj_plus(combo, seg).value
        assert abs(lhs - (a * v1 + b * v2)) <= 1e-10


def test_decomposition_identity():
    f = catalog_function("cos_gauss")
    seg = segment_path(-3.0, 3.0)
    pv = pv_contour(f, seg)
    plus = plemelj_plus(f, seg)
    minus = plemelj_minus(f, seg)
    assert plus.value - minus.value == 2j * pv


def test_path_independence_inside_domain():
    f = catalog_function("gauss(0.3)")
    flat = segment_path(-2.0, 2.0)
    arched = segment_path(-2.0, -1.0 + 0.4j, -0.6, 0.6, 1.0 + 0.4j, 2.0)
    va = plemelj_plus(f, flat).value
    vb = plemelj_plus(f, arched).value
    assert abs(va - vb) <= 1e-8


# -- verification routes -----------------------------------------------------------

def test_deformation_route_agrees_above():
    f = catalog_function("gauss(0.3)")
    seg = segment_path(-3.0, 3.0)
    formula = plemelj_plus(f, seg).value
    assert abs(deformation_route(f, seg, side="above") - formula) <= 1e-6


def test_deformed_integrals_are_cauchy_in_eps():
    # the deformed-path functional stabilizes as the arc radius shrinks
    from plemelj.contours import deform_at_origin
    from plemelj.quadrature import integrate_contour
    f = catalog_function("gauss(0.3)")
    seg = segment_path(-3.0, 3.0)
    vals = []
    for k in range(6):
        eps = 0.3 * 0.5 ** k
        d = deform_at_origin(seg, eps, "above")
        v, _ = integrate_contour(lambda z: 1j * f(z) / z, d, abs_tol=1e-12)
        vals.append(v)
    # the integrand is analytic off the origin, so the value is exactly
    # epsilon-independent and the ladder sits at quadrature noise
    diffs = [abs(b - a) for a, b in zip(vals[:-1], vals[1:])]
    assert all(d <= 1e-12 for d in diffs)


def test_deformation_route_below_matches_minus():
    f = catalog_function("gauss(0.3)")
    seg = segment_path(-3.0, 3.0)
    formula = plemelj_minus(f, seg).value
    route = deformation_route(f, seg, side="below")
    assert abs(route - formula) <= 1e-6


def test_lambda_route_straight_tilted_bent():
    f = catalog_function("gauss(0.3)")
    for path in (segment_path(-4.0, 4.0),
                 tilted_segment(math.pi / 8, -2.0, 2.0),
                 tilted_segment(math.pi / 8, -3.0, 3.0),
                 segment_path(-3.0, -1.0 + 0.5j, -0.5, 0.5, 1.0 + 0.5j, 3.0)):
        formula = plemelj_plus(f, path).value
        route = lambda_route(f, path, kernel="plus")
        assert abs(route - formula) <= max(1e-5 * abs(formula), 1e-8)


def test_lambda_route_minus_kernel():
    f = catalog_function("gauss(0)")
    seg = segment_path(-3.0, 3.0)
    formula = plemelj_minus(f, seg).value
    route = lambda_route(f, seg, kernel="minus")
    assert abs(route - formula) <= max(1e-5 * abs(formula), 1e-8)


# -- delta action --------------------------------------------------------------------

def test_delta_examples():
    seg = segment_path(-3.0, 3.0)
    assert abs(delta_action(catalog_function("gauss(0)"), seg) - 2 * math.pi) < 1e-10
    assert abs(delta_action(catalog_function("poly_gauss(1,0)"), seg)) < 1e-10


def test_delta_bent_path_with_lambda_oracle():
    bent = segment_path(-2.0, -0.5 + 0.4j, 0.0, 0.5 + 0.4j, 2.0)
    f = catalog_function("cos_gauss")
    val = delta_action(f, bent)
    assert abs(val - 2 * math.pi) < 1e-10
    route = lambda_route(f, bent, kernel="full_line")
    assert abs(route - val) <= max(1e-5 * abs(val), 1e-8)


def test_delta_rejects_wrong_orientation():
    back = segment_path(1.0, -1.0)   # right to left
    with pytest.raises(OrientationError):
        delta_action(catalog_function("gauss(0)"), back)


def test_delta_rejects_wedge_path():
    path = segment_path(-1.0, -0.5 + 0.9j, 0.0, 1.0, crossing=2)
    with pytest.raises(DomainViolationError):
        delta_action(catalog_function("gauss(0)"), path)


# -- overlap --------------------------------------------------------------------------

def test_overlap_real_axis():
    f = catalog_function("gauss(0.7)")
    val = overlap_delta(0.7, f, segment_path(-3.0, 3.0))
    assert abs(val - 2 * math.pi) <= 1e-4 * 2 * math.pi


def test_overlap_tilted():
    z2 = 0.7 * cmath.exp(1j * math.pi / 8)
    f = TestFunction(lambda z: cmath.exp(-(z - z2) ** 2),
                     value_at_zero=cmath.exp(-z2 * z2))
    val = overlap_delta(z2, f, tilted_segment(math.pi / 8, -3.0, 3.0))
    target = 2 * math.pi * f(z2)
    assert abs(val - target) <= 1e-4 * abs(target)


def test_overlap_zero_sift():
    f = catalog_function("poly_gauss(1,0.7)")   # vanishes at... z^1 factor at z2=0
    val = overlap_delta(0.0, f, segment_path(-3.0, 3.0))
    assert abs(val) <= 1e-4 * 2 * math.pi


def test_overlap_slope_violation():
    steep = segment_path(-1.0 - 1.2j, 1.0 + 1.2j)   # slope exceeds pi/4
    with pytest.raises(DomainViolationError):
        overlap_delta(0.0, catalog_function("gauss(0)"), steep)


def test_overlap_point_off_path():
    with pytest.raises(DomainViolationError):
        overlap_delta(0.5j, catalog_function("gauss(0)"), segment_path(-2.0, 2.0))


def test_overlap_infinite_path_truncation():
    base = tilted_segment(0.0, -1.0, 1.0)
    inf_path = Contour(base.segments, crossing=base.crossing,
                       ray_in=0.0, ray_out=0.0)
    f = catalog_function("gauss(0.4)")
    val = overlap_delta(0.4, f, inf_path)
    assert abs(val - 2 * math.pi) <= 1e-4 * 2 * math.pi


def test_finite_path_required_elsewhere():
    base = tilted_segment(0.0, -1.0, 1.0)
    inf_path = Contour(base.segments, crossing=base.crossing, ray_in=0.0,
                       ray_out=0.0)
    with pytest.raises(AdmissibilityError):
        plemelj_plus(catalog_function("gauss(0)"), inf_path)

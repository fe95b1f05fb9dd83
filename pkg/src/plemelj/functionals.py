"""Extended Sokhotski-Plemelj functionals on complex contours.

For an analytic test function f integrable along an oriented contour that
crosses the origin inside the appropriate wedge domain,

    forward:   <I(+), f> =  i PV (f/z) + pi f(0)
    backward:  <I(-), f> = -i PV (f/z) + pi f(0)
    delta:     <2 pi delta, f> = forward + backward = 2 pi f(0)

where PV is the symmetric-excision principal value along the contour
(:func:`pv_contour`, computed on a halving epsilon ladder with Richardson
extrapolation).  Two independent verification routes are provided:
:func:`deformation_route` integrates i f(z)/z over the path deformed
around the origin by a shrinking circular arc, and :func:`lambda_route`
integrates the Gaussian-regularized kernel against f and extrapolates the
regularization away — the statement that these agree with the formula
route is the library's central numerical theorem, exercised by the
verification suites.

:func:`overlap_delta` applies the same machinery to the sifting property
of the shifted full-line kernel along paths of bounded slope, recovering
2 pi f(z2).

The built-in test-function catalog (:func:`catalog_function`) knows
"one", "gauss(a)", "poly_gauss(n,a)" and "cos_gauss".
"""
import cmath
import math
import re
from dataclasses import dataclass

from .contours import (
    Contour,
    ContourError,
    WedgeDomain,
    domain_violations,
    radius_cut_locations,
    split_at_radius,
    subpath_segments,
    deform_at_origin,
)
from .kernels import full_line_kernel, j_kernel
from .quadrature import integrate_adaptive, integrate_contour, richardson


class AdmissibilityError(ValueError):
    """Test function fails its contract on the requested contour."""


class PvDivergenceError(AdmissibilityError):
    """The excision ladder is not Cauchy; the principal value does not exist."""


class DomainViolationError(ValueError):
    """Contour leaves the convergence domain required by the functional."""

    def __init__(self, message, segment_index=None):
        super().__init__(message)
        self.segment_index = segment_index


class OrientationError(ValueError):
    """Contour traverses the crossing in the wrong direction."""


# -- test functions --------------------------------------------------------

_DECAY_CLASSES = ("compactly_supported_path", "gaussian_decay", "polynomial_bounded")


@dataclass(frozen=True)
class TestFunction:
    """Analytic function handle with the metadata the functionals need.

    ``value_at_zero`` may be supplied (it is cross-checked against an
    evaluation at 0 and a mismatch beyond 1e-10 is an error) or left None
    to be evaluated.  ``decay_class`` governs admissibility on infinite
    paths.  Handles must be pure: they are called concurrently.
    """
    eval: callable
    value_at_zero: complex = None
    decay_class: str = "gaussian_decay"
    label: str = ""

    __test__ = False   # keep pytest collection away from the domain name

    def __post_init__(self):
        if self.decay_class not in _DECAY_CLASSES:
            raise ValueError(
                f"decay_class must be one of {_DECAY_CLASSES}, got {self.decay_class!r}")

    def __call__(self, z: complex) -> complex:
        return self.eval(z)

    def at_zero(self) -> complex:
        """f(0), preferring the declared value but never trusting it blindly."""
        computed = complex(self.eval(0.0 + 0.0j))
        if self.value_at_zero is None:
            return computed
        declared = complex(self.value_at_zero)
        if abs(declared - computed) > 1e-10 * max(1.0, abs(declared)):
            raise AdmissibilityError(
                f"declared f(0) = {declared!r} disagrees with the evaluated "
                f"value {computed!r} beyond 1e-10")
        return declared


_GAUSS_RE = re.compile(r"^gauss\(\s*([^)]+?)\s*\)$")
_POLY_GAUSS_RE = re.compile(r"^poly_gauss\(\s*(\d+)\s*,\s*([^)]+?)\s*\)$")


def _parse_center(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise ValueError(f"cannot parse test-function parameter {text!r}")


def catalog_function(name: str) -> TestFunction:
    """Catalog lookup: "one", "gauss(a)", "poly_gauss(n,a)", "cos_gauss"."""
    name = name.strip()
    if name == "one":
        return TestFunction(lambda z: 1.0 + 0.0j, value_at_zero=1.0,
                            decay_class="polynomial_bounded", label="one")
    if name == "cos_gauss":
        return TestFunction(lambda z: cmath.cos(z) * cmath.exp(-z * z),
                            value_at_zero=1.0, label="cos_gauss")
    m = _GAUSS_RE.match(name)
    if m:
        a = _parse_center(m.group(1))
        return TestFunction(lambda z, a=a: cmath.exp(-(z - a) * (z - a)),
                            value_at_zero=cmath.exp(-a * a), label=name)
    m = _POLY_GAUSS_RE.match(name)
    if m:
        n = int(m.group(1))
        a = _parse_center(m.group(2))
        f0 = cmath.exp(-a * a) if n == 0 else 0.0 + 0.0j
        return TestFunction(lambda z, n=n, a=a: z ** n * cmath.exp(-(z - a) * (z - a)),
                            value_at_zero=f0, label=name)
    raise ValueError(f"unknown test function {name!r}; the catalog knows "
                     "'one', 'gauss(a)', 'poly_gauss(n,a)', 'cos_gauss'")


CATALOG_EXAMPLES = ("one", "gauss(0)", "gauss(0.3)", "poly_gauss(1,0)",
                    "poly_gauss(2,0.3)", "cos_gauss")


def check_analytic(f, path: Contour, samples: int = 20, tol: float = 1e-6):
    """Spot-check analyticity of f along the path: the centered difference
    quotients taken in two orthogonal directions must agree (a finite
    Cauchy-Riemann stencil).  Raises AdmissibilityError on failure."""
    n = len(path.segments)
    checked = 0
    k = 0
    while checked < samples:
        seg = path.segments[k % n]
        t = ((k * 0.37) % 0.9) + 0.05
        z0 = seg.point(t)
        h = 1e-5 * max(1.0, abs(z0))
        d_re = (f(z0 + h) - f(z0 - h)) / (2.0 * h)
        d_im = (f(z0 + 1j * h) - f(z0 - 1j * h)) / (2j * h)
        resid = abs(d_re - d_im)
        scale = max(1.0, abs(d_re), abs(d_im))
        if resid > tol * scale:
            raise AdmissibilityError(
                f"Cauchy-Riemann residual {resid:.3e} at z = {z0!r} exceeds "
                f"{tol:.0e} * {scale:.3g}; the handle is not analytic there")
        checked += 1
        k += 1


def _require_finite_path(path: Contour, op: str):
    if path.is_infinite:
        raise AdmissibilityError(
            f"{op} requires a finite contour; truncate infinite rays first "
            "(Contour.truncated)")


def _check_domain(path: Contour, domain: WedgeDomain, op: str):
    detail = domain_violations(path, domain)
    if detail["unmarked_apex"]:
        raise ContourError(
            f"{op}: path passes through the domain apex without a crossing marker")
    if detail["violations"]:
        seg, t, z = detail["violations"][0]
        raise DomainViolationError(
            f"{op}: contour leaves the {domain.kind} wedge domain at segment "
            f"{seg}, t = {t:.4g}, z = {z:.6g}", segment_index=seg)
    if not detail["apex_crossing"]:
        raise DomainViolationError(
            f"{op}: contour must cross the origin (marked) for this functional",
            segment_index=None)


# -- principal value -------------------------------------------------------

_PV_STEPS = 8
_QUAD_TOL = 1e-12


def _pv_ladder(f, path: Contour):
    """Excision ladder for PV of f(z)/z along a crossing-marked path.

    Returns (pv_value, trace, error_estimate) where trace is the tuple of
    (epsilon, excised integral) pairs, built incrementally from annulus
    pieces so each epsilon level reuses all earlier quadrature work.
    """
    _require_finite_path(path, "pv_contour")
    if path.crossing is None:
        raise ContourError("principal value needs a contour marked as crossing 0")
    check_analytic(f, path)
    before, after = path.arm_lengths()
    eps0 = 0.1 * min(before, after)
    eps_list = [eps0 * 0.5 ** k for k in range(_PV_STEPS)]

    def g(z):
        return f(z) / z

    head, _a, _b, tail = split_at_radius(path, eps0)
    total = 0.0 + 0.0j
    quad_err = 0.0
    for seg in head + tail:
        v, e = integrate_adaptive(
            lambda t, s=seg: g(s.point(t)) * s.derivative(t), 0.0, 1.0,
            abs_tol=_QUAD_TOL)
        total += v
        quad_err += e
    values = [total]
    cuts = [radius_cut_locations(path, eps) for eps in eps_list]
    for k in range(1, _PV_STEPS):
        (b_prev, f_prev), (b_new, f_new) = cuts[k - 1], cuts[k]
        inc = 0.0 + 0.0j
        for segs in (subpath_segments(path, b_prev, b_new),
                     subpath_segments(path, f_new, f_prev)):
            for seg in segs:
                v, e = integrate_adaptive(
                    lambda t, s=seg: g(s.point(t)) * s.derivative(t), 0.0, 1.0,
                    abs_tol=_QUAD_TOL)
                inc += v
                quad_err += e
        values.append(values[-1] + inc)
    trace = tuple(zip(eps_list, values))
    diffs = [abs(v1 - v0) for v0, v1 in zip(values[:-1], values[1:])]
    floor = 1e-10 * max(1.0, abs(values[-1]))
    if diffs[-1] > floor and diffs[-1] > diffs[-2] and diffs[-2] > diffs[-3]:
        raise PvDivergenceError(
            "excision ladder is not Cauchy (last differences "
            f"{diffs[-3]:.3e}, {diffs[-2]:.3e}, {diffs[-1]:.3e}); "
            "the test function is not admissible at the origin")
    pv, rich_err = richardson(values, ratio=2.0)
    return pv, trace, rich_err + quad_err


def pv_contour(f, path: Contour) -> complex:
    """Principal value of the integral of f(z)/z along a crossing-marked
    contour: the limit of the integral with a symmetric (radius-epsilon)
    neighbourhood of the origin excised, Richardson-extrapolated over a
    halving epsilon ladder.  Extrapolation error estimate <= 1e-8.

    Raises PvDivergenceError when the ladder is not Cauchy (f fails
    admissibility at 0, e.g. has a pole there).
    """
    pv, _trace, _err = _pv_ladder(f, path)
    return pv


# -- the extended Plemelj functionals --------------------------------------

@dataclass(frozen=True)
class FunctionalResult:
    """Value of a Plemelj functional with its principal-value / delta
    decomposition and the excision trace behind the PV part.

    value = pv_part + delta_part holds exactly by construction; the
    epsilon trace must be Cauchy (enforced when it is built).
    """
    value: complex
    pv_part: complex
    delta_part: complex
    epsilon_trace: tuple


def plemelj_plus(f, path: Contour) -> FunctionalResult:
    """Action of the forward kernel limit on f along the path:
    i PV(f/z) + pi f(0), for paths inside the 'plus' wedge domain crossing
    the origin left half -> right half."""
    _require_finite_path(path, "plemelj_plus")
    _check_domain(path, WedgeDomain.plus(), "plemelj_plus")
    f0 = f.at_zero() if isinstance(f, TestFunction) else complex(f(0.0 + 0.0j))
    pv, trace, _err = _pv_ladder(f, path)
    pv_part = 1j * pv
    delta_part = math.pi * f0
    return FunctionalResult(pv_part + delta_part, pv_part, delta_part, trace)


def plemelj_minus(f, path: Contour) -> FunctionalResult:
    """Action of the mirrored kernel limit on f along the path:
    -i PV(f/z) + pi f(0), for paths inside the 'minus' wedge domain."""
    _require_finite_path(path, "plemelj_minus")
    _check_domain(path, WedgeDomain.minus(), "plemelj_minus")
    f0 = f.at_zero() if isinstance(f, TestFunction) else complex(f(0.0 + 0.0j))
    pv, trace, _err = _pv_ladder(f, path)
    pv_part = -1j * pv
    delta_part = math.pi * f0
    return FunctionalResult(pv_part + delta_part, pv_part, delta_part, trace)


def _crossing_moves_left_to_right(path: Contour) -> bool:
    d_in, d_out = path.crossing_directions()
    return d_in.real > 1e-12 and d_out.real > 1e-12


def delta_action(f, path: Contour) -> complex:
    """Action of the two-sided delta on f: forward + backward functional,
    equal to 2 pi f(0) by construction.  The path must lie in the
    intersection domain, cross the origin, and traverse it from the left
    half plane to the right half plane."""
    _require_finite_path(path, "delta_action")
    _check_domain(path, WedgeDomain.intersection(), "delta_action")
    if not _crossing_moves_left_to_right(path):
        raise OrientationError(
            "delta_action requires the crossing to run from the left half "
            "plane to the right half plane")
    plus = plemelj_plus(f, path)
    minus = plemelj_minus(f, path)
    return plus.value + minus.value


# -- verification routes ----------------------------------------------------

def deformation_route(f, path: Contour, side: str = "above",
                      steps: int = 6) -> complex:
    """Kernel action computed over the origin-deformed path, extrapolated
    over a shrinking arc radius.

    side='above' integrates the forward kernel i f(z)/z over the path with
    the origin circled from above and must agree with plemelj_plus;
    side='below' integrates the mirrored kernel -i f(z)/z (the mirrored
    picture) and must agree with plemelj_minus -- for crossings traversed
    left to right that are locally straight.  This is the geometric half
    of the extended formulas.
    """
    _require_finite_path(path, "deformation_route")
    if path.crossing is None:
        raise ContourError("deformation route needs a marked origin crossing")
    sign = 1j if side == "above" else -1j
    before, after = path.arm_lengths()
    eps0 = 0.1 * min(before, after)
    values = []
    for k in range(steps):
        eps = eps0 * 0.5 ** k
        deformed = deform_at_origin(path, eps, side)
        breaks = {}
        for i, seg in enumerate(deformed.segments):
            d, t = seg.min_distance(0.0 + 0.0j)
            if d < 4.0 * eps and 1e-9 < t < 1.0 - 1e-9:
                breaks[i] = (t,)
        v, _e = integrate_contour(lambda z: sign * f(z) / z, deformed,
                                  abs_tol=_QUAD_TOL, seg_breakpoints=breaks)
        values.append(v)
    limit, _err = richardson(values, ratio=2.0)
    return limit


_LAMBDA_LADDER = tuple(0.0625 * 0.25 ** m for m in range(10))


def _ladder_ratio(lambdas, what: str) -> float:
    """Common sqrt-space ratio of a geometric ladder; rejects anything the
    Richardson triangle would silently mis-extrapolate."""
    lambdas = tuple(float(v) for v in lambdas)
    if len(lambdas) < 4:
        raise ValueError(f"{what} needs at least 4 ladder values")
    ratios = [a / b for a, b in zip(lambdas[:-1], lambdas[1:])]
    if any(not r > 1.0 for r in ratios):
        raise ValueError(f"{what} ladder must decrease strictly")
    if max(ratios) > min(ratios) * (1.0 + 1e-9):
        raise ValueError(f"{what} ladder must be geometric (constant ratio)")
    return math.sqrt(ratios[0])


def _kernel_breakpoints(path: Contour, lam: float, center=0.0 + 0.0j):
    """Geometric pre-splits clustering panel edges around the kernel peak."""
    breaks = {}
    if center == 0 and path.crossing is not None:
        before, after = path.arm_lengths()
        r = 0.5 * min(before, after)
        floor = 0.4 * math.sqrt(lam)
        while r > floor:
            try:
                (bi, bt), (fi, ft) = radius_cut_locations(path, r)
            except ContourError:
                break
            for i, t in ((bi, bt), (fi, ft)):
                if 1e-9 < t < 1.0 - 1e-9:
                    breaks.setdefault(i, set()).add(t)
            r *= 0.5
        ci, ct = path.crossing, path.crossing_param
        if 1e-9 < ct < 1.0 - 1e-9:
            breaks.setdefault(ci, set()).add(ct)
    else:
        dmin, (ci, ct) = path.min_distance(center)
        seg = path.segments[ci]
        if 1e-9 < ct < 1.0 - 1e-9:
            breaks.setdefault(ci, set()).add(ct)
        r = 0.25 * seg.length
        floor = 0.4 * math.sqrt(lam)
        while r > floor:
            for i, seg_i in enumerate(path.segments):
                for t in seg_i.radius_hits(r, center=center):
                    if 1e-9 < t < 1.0 - 1e-9:
                        breaks.setdefault(i, set()).add(t)
            r *= 0.5
    return {i: tuple(sorted(ts)) for i, ts in breaks.items()}


def lambda_route(f, path: Contour, kernel: str = "plus",
                 lambdas=_LAMBDA_LADDER) -> complex:
    """Regularization route: integrate the Gaussian-regularized kernel
    against f along the path for a decreasing ladder of regularization
    strengths and extrapolate to zero (Richardson in sqrt(lambda)).

    kernel: 'plus' (forward half-line kernel), 'minus' (mirrored), or
    'full_line' (nascent delta).  This is the independent oracle against
    which the formula routes are verified.
    """
    _require_finite_path(path, "lambda_route")
    if kernel == "plus":
        k_of = lambda z, lam: j_kernel(z, lam)
    elif kernel == "minus":
        k_of = lambda z, lam: j_kernel(-z, lam)
    elif kernel == "full_line":
        k_of = full_line_kernel
    else:
        raise ValueError(f"kernel must be plus|minus|full_line, got {kernel!r}")
    ratio = _ladder_ratio(lambdas, "lambda_route")
    values = []
    for lam in lambdas:
        breaks = _kernel_breakpoints(path, lam)
        v, _e = integrate_contour(
            lambda z, lam=lam: k_of(z, lam) * f(z), path,
            abs_tol=1e-11, seg_breakpoints=breaks, max_panels=16384)
        values.append(v)
    limit, _err = richardson(values, ratio=ratio)
    return limit


# -- orthogonality overlap ---------------------------------------------------

_OVERLAP_LADDER = tuple(0.1 * 0.25 ** m for m in range(8))


def _check_slope(path: Contour, op: str):
    """All tangent directions (and sampled chords) must make an angle
    within (-pi/4, pi/4) of the real axis, traversed forward.  Returns the
    worst |slope| found (used to size ray truncation)."""
    samples = []
    worst = 0.0
    for i, seg in enumerate(path.segments):
        for k in range(17):
            t = k / 16
            d = seg.derivative(t)
            ang = math.atan2(d.imag, d.real)
            if not -0.25 * math.pi < ang < 0.25 * math.pi:
                if abs(ang) >= 0.5 * math.pi:
                    raise OrientationError(
                        f"{op}: path runs right-to-left at segment {i} "
                        "(traverse it with increasing real part)")
                raise DomainViolationError(
                    f"{op}: slope {ang:.4f} rad at segment {i} leaves the "
                    "allowed (-pi/4, pi/4) band", segment_index=i)
            worst = max(worst, abs(ang))
            samples.append(seg.point(t))
    for ii in range(0, len(samples), 3):
        for jj in range(ii + 1, len(samples), 7):
            v = samples[jj] - samples[ii]
            if abs(v) < 1e-12:
                continue
            ang = math.atan2(v.imag, v.real)
            if not -0.25 * math.pi < ang < 0.25 * math.pi:
                raise DomainViolationError(
                    f"{op}: chord between sampled path points leaves the "
                    "slope band; pair differences exit the double-wedge domain")
            worst = max(worst, abs(ang))
    if path.ray_in is not None:
        worst = max(worst, abs(path.ray_in))
    if path.ray_out is not None:
        worst = max(worst, abs(path.ray_out))
    return worst


def overlap_delta(z2: complex, f, path: Contour,
                  lambdas=_OVERLAP_LADDER) -> complex:
    """Smeared orthogonality overlap: integrate the shifted full-line
    Gaussian kernel (centred at z2 on the path) against f along the path
    and extrapolate the regularization away; converges to 2 pi f(z2).

    The path must have slopes within (-pi/4, pi/4) so every pair
    difference of path points stays inside the double-wedge domain.
    Infinite rays are truncated where the regularizer suppresses the
    integrand below 1e-16.
    """
    z2 = complex(z2)
    ratio = _ladder_ratio(lambdas, "overlap_delta")
    worst_slope = _check_slope(path, "overlap_delta")
    if path.is_infinite:
        # slope < pi/4 keeps Re((z-z2)^2) >= cos(2*slope_max) |z-z2|^2 > 0
        # along the path, so the widest kernel sets the truncation length;
        # slopes grazing pi/4 decay arbitrarily slowly and are rejected
        decay = math.cos(2.0 * worst_slope)
        if decay < 0.02:
            raise DomainViolationError(
                "overlap_delta: path slope too close to pi/4; the shifted "
                "kernel decays too slowly along it for a finite truncation")
        lam0 = max(lambdas)
        length = (math.sqrt(4.0 * lam0 * 40.0 / decay)
                  + abs(z2 - path.start) + abs(z2 - path.end))
        path = path.truncated(length, length)
    dmin, _loc = path.min_distance(z2)
    if dmin > 1e-10:
        raise DomainViolationError(
            f"overlap_delta: z2 = {z2!r} is {dmin:.3e} away from the path; "
            "the sifting point must lie on it")
    values = []
    for lam in lambdas:
        breaks = _kernel_breakpoints(path, lam, center=z2)
        v, _e = integrate_contour(
            lambda z, lam=lam: full_line_kernel(z - z2, lam) * f(z), path,
            abs_tol=1e-11, seg_breakpoints=breaks, max_panels=16384)
        values.append(v)
    limit, _err = richardson(values, ratio=ratio)
    return limit

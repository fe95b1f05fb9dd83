"""Gaussian-regularized half-line Fourier kernels and their limits.

The central object is

    J(z, lambda) = integral_0^inf exp(-lambda x^2) exp(i z x) dx
                 = (i/z) sqrt(pi) w exp(w^2) erfc(w),   w = -i z / (2 sqrt(lambda))

evaluated either in closed form through the fused scaled complementary
error function (:func:`j_closed_form`) or by direct oscillatory quadrature
(:func:`direct_quadrature`); the two independent evaluators cross-validate
each other.  :func:`kernel_limit` takes the limit lambda -> 0+ along a
decreasing schedule and classifies each point of the complex plane as
converged (limit i/z), diverged (inside the lower angular wedge
arg z in [5 pi/4, 7 pi/4], where the scaled error function blows up) or
undecided (a thin band along the wedge boundary).  The mirror kernel
J(-z, lambda) covers the point-reflected wedge.

Everything here is pure and safe to sweep over grids concurrently.
"""
import cmath
import math
from dataclasses import dataclass, field

from .quadrature import gk15
from .special_functions import OVERFLOW, SQRT_PI, _core, is_overflow

_EXP_OVERFLOW = 709.0


class SingularInputError(ValueError):
    """The kernel limit is evaluated at its excluded singular point z = 0."""


class TruncationError(RuntimeError):
    """No finite truncation of the oscillatory integral meets the tail
    bound at the requested precision; use the closed form instead."""


def _require_finite(z: complex, what: str = "z") -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {z!r}")
    return z


def _require_positive(lam: float, what: str = "lambda") -> float:
    lam = float(lam)
    if not (lam > 0.0 and math.isfinite(lam)):
        raise ValueError(f"{what} must be a positive finite real, got {lam!r}")
    return lam


@dataclass(frozen=True)
class RegularizationSchedule:
    """Decreasing sequence of regularization strengths plus the thresholds
    that make the limit trichotomy empirically decidable.

    ``divergence_threshold`` and ``convergence_tol`` must not overlap
    (threshold > 1/tol), so a trace cannot qualify as both.
    """
    lambdas: tuple = field(default_factory=tuple)
    divergence_threshold: float = 1e6
    convergence_tol: float = 1e-4

    def __post_init__(self):
        lams = tuple(float(v) for v in self.lambdas)
        object.__setattr__(self, "lambdas", lams)
        if not lams:
            raise ValueError("schedule needs at least one lambda")
        for v in lams:
            if not (v > 0.0 and math.isfinite(v)):
                raise ValueError(f"lambdas must be positive finite reals, got {v!r}")
        for a, b in zip(lams[:-1], lams[1:]):
            if b >= a:
                raise ValueError("lambdas must be strictly decreasing")
        if not (self.divergence_threshold > 0 and self.convergence_tol > 0):
            raise ValueError("thresholds must be positive")
        if self.divergence_threshold <= 1.0 / self.convergence_tol:
            raise ValueError(
                "divergence_threshold must exceed 1/convergence_tol so the "
                "two regimes cannot overlap")

    @classmethod
    def default(cls) -> "RegularizationSchedule":
        # lambda_n = 10^(-n/2), n = 0..12
        return cls(lambdas=tuple(10.0 ** (-0.5 * n) for n in range(13)))


@dataclass(frozen=True)
class KernelResult:
    """Outcome of a schedule limit: the limiting value, the convergence
    status and the (lambda, J) evaluation trace."""
    value: complex
    status: str          # converged | diverged | undecided
    lambda_trace: tuple  # ((lambda, J), ...)


def j_kernel(z: complex, lam: float) -> complex:
    """J(z, lambda) without the z != 0 restriction (J(0, lambda) is the
    finite half-Gaussian integral).  Internal workhorse; overflow tagged.

    Uses (i/z) w = 1/(2 sqrt(lambda)): the closed form collapses to a
    z-free prefactor times erfcx(w), removing the spurious 0/0 at z = 0.
    """
    sq = math.sqrt(lam)
    w = complex(0.5 * z.imag / sq, -0.5 * z.real / sq)   # -i z / (2 sqrt(lam))
    v = _core.erfcx_complex(w)
    if is_overflow(v):
        return OVERFLOW
    out = (0.5 * SQRT_PI / sq) * v
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        return OVERFLOW
    return out


def j_closed_form(z: complex, lam: float) -> complex:
    """Closed form of the regularized kernel, (i/z) sqrt(pi) w e^{w^2} erfc(w).

    Computed fused through the scaled error function, so nothing overflows
    where the kernel itself is representable.  z = 0 is rejected (the limit
    prescription excludes it); deep inside the divergence wedge the tagged
    overflow value propagates out.
    """
    z = _require_finite(z)
    lam = _require_positive(lam)
    if z == 0:
        raise SingularInputError("closed-form kernel excludes z = 0")
    return j_kernel(z, lam)


def full_line_kernel(z: complex, lam: float) -> complex:
    """Full-line Gaussian kernel sqrt(pi/lambda) exp(-z^2 / (4 lambda)),
    i.e. J(z, lambda) + J(-z, lambda); the nascent delta.  Overflow tagged."""
    z = _require_finite(z)
    lam = _require_positive(lam)
    ex = -(z * z) / (4.0 * lam)
    if ex.real > _EXP_OVERFLOW:
        return OVERFLOW
    return math.sqrt(math.pi / lam) * cmath.exp(ex)


_TAIL_FACTOR = 1e-16
_MAX_PANELS = 40000


def direct_quadrature(z: complex, lam: float):
    """J(z, lambda) by composite Gauss-Kronrod quadrature of the defining
    integral.

    Panel length pi / (2 max(|Re z|, |Im z|, sqrt(lambda))) keeps the
    oscillation and the envelope resolved (quarter periods hold the K15
    rule at roundoff); integration continues past the envelope peak until
    the analytic tail bound

        integral_X^inf exp(-lambda x^2 - Im(z) x) dx
            <= exp(-lambda X^2 - Im(z) X) / (2 lambda X + Im z)

    drops below 1e-16 of the accumulated magnitude.  Raises
    TruncationError when the integrand leaves the double range before the
    bound can be met (extreme |Im z| / sqrt(lambda) ratios).
    """
    z = _require_finite(z)
    lam = _require_positive(lam)
    growth = -z.imag   # integrand envelope is exp(-lam x^2 + growth x)
    if growth > 0.0 and growth * growth / (4.0 * lam) > 700.0:
        raise TruncationError(
            "integrand envelope peaks beyond the double range "
            f"(Im z = {z.imag:.3g}, lambda = {lam:.3g}); use j_closed_form")
    scale = max(abs(z.real), abs(z.imag), math.sqrt(lam))
    h = 0.5 * math.pi / scale   # quarter-period panels keep K15 near roundoff
    x_peak = max(0.0, growth / (2.0 * lam))

    def integrand(x):
        return cmath.exp(complex(-lam * x * x - z.imag * x, z.real * x))

    acc = 0.0 + 0.0j
    err = 0.0
    x = 0.0
    for _ in range(_MAX_PANELS):
        val, e, _mag = gk15(integrand, x, x + h)
        acc += val
        err += e
        x += h
        if x <= x_peak:
            continue
        log_tail = -lam * x * x + growth * x
        denom = 2.0 * lam * x - growth
        floor = max(abs(acc), 1e-300)
        if log_tail < math.log(_TAIL_FACTOR * floor * denom):
            break
    else:
        raise TruncationError(
            f"tail bound not met after {_MAX_PANELS} panels "
            f"(z = {z!r}, lambda = {lam!r})")
    if not (math.isfinite(acc.real) and math.isfinite(acc.imag)):
        raise TruncationError(
            f"accumulated integral left the double range (z = {z!r}, "
            f"lambda = {lam!r}); use j_closed_form")
    return acc


def _classify(z: complex, schedule: RegularizationSchedule, mirror: bool):
    zz = -z if mirror else z
    limit = 1j / zz   # equals -i/z in the mirrored case
    trace = []
    overflowed = False
    mags = []
    for lam in schedule.lambdas:
        val = j_kernel(zz, lam)
        trace.append((lam, val))
        if is_overflow(val):
            overflowed = True
            break
        mags.append(abs(val))
        if (len(mags) >= 3 and mags[-1] > schedule.divergence_threshold
                and mags[-1] > mags[-2] > mags[-3]):
            # magnitudes only keep growing deeper into the wedge
            return KernelResult(OVERFLOW, "diverged", tuple(trace))
    if overflowed:
        return KernelResult(OVERFLOW, "diverged", tuple(trace))
    last = trace[-1][1]
    if abs(last - limit) <= schedule.convergence_tol * abs(limit):
        return KernelResult(limit, "converged", tuple(trace))
    return KernelResult(last, "undecided", tuple(trace))


def kernel_limit(z: complex, schedule: RegularizationSchedule = None) -> KernelResult:
    """Limit of J(z, lambda) for lambda -> 0+ along a schedule.

    Converged points report the limiting value i/z (the trace holds the
    finite-lambda history); diverged points report the overflow tag; points
    in the thin band along the wedge boundary stay undecided rather than
    being guessed.
    """
    z = _require_finite(z)
    if z == 0:
        raise SingularInputError("the kernel limit excludes z = 0")
    if schedule is None:
        schedule = RegularizationSchedule.default()
    return _classify(z, schedule, mirror=False)


def kernel_limit_mirror(z: complex, schedule: RegularizationSchedule = None) -> KernelResult:
    """Limit of the mirrored kernel J(-z, lambda) for lambda -> 0+.

    Finite limit -i/z on the point reflection of the forward domain (the
    excluded wedge sits in the upper half plane).
    """
    z = _require_finite(z)
    if z == 0:
        raise SingularInputError("the kernel limit excludes z = 0")
    if schedule is None:
        schedule = RegularizationSchedule.default()
    return _classify(z, schedule, mirror=True)


def full_line_limit(z: complex, schedule: RegularizationSchedule = None) -> KernelResult:
    """Limit of the full-line Gaussian kernel (pointwise 0 on the double
    wedge domain, divergent inside either wedge).  Used by the domain-map
    sweep; the distributional content at z = 0 lives in the functionals."""
    z = _require_finite(z)
    if z == 0:
        raise SingularInputError("the kernel limit excludes z = 0")
    if schedule is None:
        schedule = RegularizationSchedule.default()
    trace = []
    mags = []
    for lam in schedule.lambdas:
        val = full_line_kernel(z, lam)
        trace.append((lam, val))
        if is_overflow(val):
            return KernelResult(OVERFLOW, "diverged", tuple(trace))
        mags.append(abs(val))
        if (len(mags) >= 3 and mags[-1] > schedule.divergence_threshold
                and mags[-1] > mags[-2] > mags[-3]):
            return KernelResult(OVERFLOW, "diverged", tuple(trace))
    if mags[-1] <= schedule.convergence_tol:
        return KernelResult(0.0 + 0.0j, "converged", tuple(trace))
    return KernelResult(trace[-1][1], "undecided", tuple(trace))

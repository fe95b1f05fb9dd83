"""Pure-Python core for the complex (scaled) complementary error function.

Region-split evaluation of erfcx(w) = exp(w^2) erfc(w) on the whole plane:

* |w| <= 2          Maclaurin series of erf, then erfcx = exp(w^2)(1 - erf w).
* Re w < 0, |w| > 2 reflection  erfcx(w) = 2 exp(w^2) - erfcx(-w); the
                    exp(w^2) factor is where genuine overflow lives.
* 2 < |w| < 8       Weideman's rational approximation of the Faddeeva
                    function w_F (SIAM Rev. 36 (1994) 1240), N = 48 terms,
                    via erfcx(w) = w_F(i w) for Re w >= 0.
* |w| >= 8          Laplace continued fraction (Abramowitz & Stegun 7.1.14),
                    modified Lentz; very close to the imaginary axis (where
                    the fraction sits on its branch cut) the A&S 7.1.23
                    asymptotic series is used instead.

Anchoring identities, transcribed from Abramowitz & Stegun ch. 7:

  (7.1.2)   erfc z = (2/sqrt(pi)) * integral_z^inf exp(-t^2) dt
  (7.1.23)  sqrt(pi) z e^{z^2} erfc z ~ 1 + sum_{m>=1} (-1)^m
                (1*3*...*(2m-1)) / (2 z^2)^m,   |arg z| < 3 pi/4

Overflow is reported as the value complex(inf, inf), never as an exception:
the divergent sector |arg w| > 3 pi/4 at large |w| is legitimate input whose
blow-up downstream code classifies.

All functions are pure and safe for concurrent use.
"""
import cmath
import math

SQRT_PI = 1.7724538509055160273
INV_SQRT_PI = 0.5641895835477562869

# exp(x) overflows IEEE double just above x = 709.78
_EXP_OVERFLOW = 709.0

#: Value-level overflow tag (see module docstring).
OVERFLOW = complex(math.inf, math.inf)

# Weideman coefficients, N = 48, generated from the defining Fourier sums at
# 60 decimal digits.  Real by construction; highest polynomial degree first.
_WEIDEMAN_L = 5.8259012604878810434
_WEIDEMAN_COEFS = (
    -1.7229929424733809760e-18, -1.7002414703709919185e-18,
    1.0143644768076384449e-17, 1.1239721046711718533e-17,
    -5.9805823062946816686e-17, -8.3042615498912872336e-17,
    3.4839124551595775081e-16, 6.5544810181918919605e-16,
    -1.9426648606382169699e-15, -5.2979443451748263600e-15,
    9.6048404827117240780e-15, 4.2343104696919381945e-14,
    -3.1939423743169578190e-14, -3.2268483073834781968e-13,
    -9.6432764464304551797e-14, 2.2154904726186045999e-12,
    3.4254258518412529323e-12, -1.1935494328759350903e-11,
    -4.3865882662554395362e-11, 2.1621977623864712633e-11,
    3.8794210668839531470e-10, 5.7752897655739289375e-10,
    -2.0156599753747293333e-9, -9.5962547526903269983e-9,
    -6.3868099518349111015e-9, 6.9270006358871891208e-8,
    2.6549492017089925545e-7, 1.9494337483322260436e-7,
    -1.9445657789319262658e-6, -9.4756382403851335839e-6,
    -1.9054461618984306611e-5, 1.7506316371146353925e-5,
    3.0786913640886617021e-4, 1.4864991251956357011e-3,
    5.1258135482258635624e-3, 1.4546837792237557580e-2,
    3.5861369983376719050e-2, 7.8955895534700230206e-2,
    1.5786330443380481970e-1, 2.8979989079604830277e-1,
    4.9225702391399072777e-1, 7.7806241914842289259e-1,
    1.1492204645397782597, 1.5913084691178007425,
    2.0707599716742919656, 2.5370484874446906635,
    2.9304498956237564941, 3.1940645893950711745,
)

_SMALL_RADIUS = 2.0
_LARGE_RADIUS = 8.0
_AXIS_FRACTION = 0.1   # below this Re(w)/|w| the continued fraction is avoided


def _exp_tagged(z: complex) -> complex:
    """exp(z), returning the OVERFLOW tag instead of raising."""
    if z.real > _EXP_OVERFLOW:
        return OVERFLOW
    return cmath.exp(z)


def _erfcx_series(w: complex) -> complex:
    # erf(w) = (2/sqrt(pi)) sum (-1)^n w^{2n+1} / (n! (2n+1));  |w| <= 2 keeps
    # the largest term below e^4, so no damaging cancellation.
    w2 = w * w
    term = w
    acc = w
    n = 1
    while n < 80:
        term *= -w2 / n
        inc = term / (2 * n + 1)
        acc += inc
        if abs(inc) < 1e-18 * abs(acc):
            break
        n += 1
    erf = (2.0 * INV_SQRT_PI) * acc
    return cmath.exp(w2) * (1.0 - erf)


def _erfcx_weideman(w: complex) -> complex:
    # Faddeeva function at u = i w (Im u = Re w >= 0 as the method requires);
    # with u = i w the map Z = (L + i u)/(L - i u) collapses to (L - w)/(L + w).
    denom = _WEIDEMAN_L + w
    z_map = (_WEIDEMAN_L - w) / denom
    p = complex(0.0, 0.0)
    for c in _WEIDEMAN_COEFS:
        p = p * z_map + c
    return 2.0 * p / (denom * denom) + INV_SQRT_PI / denom


def _erfcx_cf(w: complex) -> complex:
    # A&S 7.1.14: sqrt(pi) e^{w^2} erfc w = 1/(w+ (1/2)/(w+ 1/(w+ (3/2)/(w+ ...
    # Modified Lentz evaluation; converges for Re w > 0.
    tiny = 1e-300
    b = w
    f = b if abs(b) > tiny else complex(tiny, 0.0)
    big_c = f
    big_d = complex(0.0, 0.0)
    n = 1
    while n < 400:
        a = 0.5 * n
        big_d = b + a * big_d
        if abs(big_d) < tiny:
            big_d = complex(tiny, 0.0)
        big_c = b + a / big_c
        if abs(big_c) < tiny:
            big_c = complex(tiny, 0.0)
        big_d = 1.0 / big_d
        delta = big_c * big_d
        f *= delta
        if abs(delta - 1.0) < 1e-17:
            break
        n += 1
    return INV_SQRT_PI / f


def _erfcx_asymptotic(w: complex) -> complex:
    # A&S 7.1.23, truncated at the first non-decreasing term.
    if abs(w) > 1e100:
        # every correction underflows, and w*w would overflow components
        return INV_SQRT_PI / w
    half_inv_w2 = 0.5 / (w * w)
    term = complex(1.0, 0.0)
    acc = complex(1.0, 0.0)
    m = 1
    while m < 60:
        nxt = term * (-(2 * m - 1)) * half_inv_w2
        if abs(nxt) >= abs(term):
            break
        term = nxt
        acc += term
        if abs(term) < 1e-18 * abs(acc):
            break
        m += 1
    return acc / (SQRT_PI * w)


def erfcx_complex(w: complex) -> complex:
    """Scaled complementary error function exp(w^2) erfc(w) of a complex w.

    Returns the OVERFLOW tag where the value exceeds the double range
    (deep inside the divergence sector |arg w| > 3 pi/4).
    """
    r = abs(w)
    if r <= _SMALL_RADIUS:
        return _erfcx_series(w)
    if w.real < 0.0:
        e = _exp_tagged(w * w)
        if e is OVERFLOW:
            return OVERFLOW
        return 2.0 * e - erfcx_complex(-w)
    if r >= _LARGE_RADIUS:
        if w.real > _AXIS_FRACTION * r:
            return _erfcx_cf(w)
        return _erfcx_asymptotic(w)
    return _erfcx_weideman(w)


def erfc_complex(w: complex) -> complex:
    """Complementary error function of a complex argument.

    Returns the OVERFLOW tag where |erfc(w)| exceeds the double range
    (|w| large near the imaginary axis, or deep in the left half plane).
    """
    if w.real < 0.0:
        v = erfc_complex(-w)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            return OVERFLOW
        return 2.0 - v
    ex = _exp_tagged(-w * w)
    if ex is OVERFLOW:
        return OVERFLOW
    val = ex * erfcx_complex(w)
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        return OVERFLOW
    return val

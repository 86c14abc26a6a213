"""Special functions for quadratic-phase aperture integrals.

Only what the closed-form space factor needs: the Fresnel integrals, the
error function on the two diagonal rays ``x*exp(+-i*pi/4)``, sinc, and the
integral of ``exp(-1j*k*(a*y**2 - b*y))``.

Fresnel integrals use the power series for ``|x| <= 1.6`` and, above that,
the auxiliary ("tail") function obtained from the continued fraction of
erfc, evaluated by the modified Lentz method.  With the tail ``T`` defined by

    C(x) + 1j*S(x) = (1 + 1j)/2 - T(x) * exp(1j*pi*x**2/2),    x >= 0,

the large-argument behaviour is carried by ``T ~ 1j/(pi*x)`` and never needs
the (cancelling) difference of two values near 1/2.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

SERIES_LIMIT = 1.6
_SERIES_TERMS = 40
_CF_EPS = 1e-16
_CF_MAXITER = 5000
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_HUGE = 1e150

# coefficients of the combined series in t = pi*x^2/2
_m = np.arange(_SERIES_TERMS)
_SERIES_COEF = np.array(
    [(-1.0) ** (m // 2) / (math.factorial(m) * (2 * m + 1)) for m in range(_SERIES_TERMS)]
)


def _half_pi_x2(x):
    """``pi*x**2/2`` reduced modulo ``2*pi``, keeping accuracy for large ``x``."""
    x = np.asarray(x, dtype=float)
    n = np.rint(x)
    frac = x - n
    # x^2 mod 4: n^2 is exact below 2**26, the cross term carries the rest
    n2 = np.where(np.abs(n) < 2.0**26, np.fmod(n * n, 4.0), np.fmod(n, 4.0) ** 2)
    s = np.fmod(n2 + np.fmod(2.0 * n * frac, 4.0) + frac * frac, 4.0)
    return 0.5 * math.pi * s


def _fresnel_series(x):
    """C + iS by the power series; accurate for |x| below about 2."""
    x = np.asarray(x, dtype=float)
    t = 0.5 * math.pi * x * x
    # sum over m of (-1)^{floor(m/2)} t^m / (m! (2m+1)) with i^m bookkeeping:
    # even m feed C, odd m feed S
    powers = t[..., None] ** _m
    terms = powers * _SERIES_COEF
    c = x * terms[..., 0::2].sum(axis=-1)
    s = x * terms[..., 1::2].sum(axis=-1)
    return c + 1j * s


def _fresnel_tail_cf(x):
    """Tail ``T(x)`` for x > 0 from the erfc continued fraction."""
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape, dtype=complex)
    huge = x > _HUGE
    out[huge] = 1j / (math.pi * x[huge])
    xs = x[~huge]
    if xs.size:
        b = 1.0 - 1j * math.pi * xs * xs
        tiny = 1e-300
        c = np.full(xs.shape, 1.0 / tiny, dtype=complex)
        d = 1.0 / b
        h = d.copy()
        active = np.ones(xs.shape, dtype=bool)
        for k in range(1, _CF_MAXITER):
            a = -(2.0 * k - 1.0) * (2.0 * k)
            b = b + 4.0
            d_new = a * d + b
            d_new = np.where(d_new == 0, tiny, d_new)
            d = np.where(active, 1.0 / d_new, d)
            c_new = b + a / c
            c_new = np.where(c_new == 0, tiny, c_new)
            c = np.where(active, c_new, c)
            delta = np.where(active, c * d, 1.0)
            h = h * delta
            active &= np.abs(delta - 1.0) > _CF_EPS
            if not active.any():
                break
        else:  # pragma: no cover - guarded by the convergence tests
            raise ArithmeticError("Fresnel continued fraction failed to converge")
        out[~huge] = xs * h
    return out


def fresnel_tail(x):
    """Auxiliary function ``T(|x|)``; see the module docstring."""
    ax = np.abs(np.asarray(x, dtype=float))
    out = np.empty(ax.shape, dtype=complex)
    small = ax <= SERIES_LIMIT
    if small.any():
        xs = ax[small]
        cs = _fresnel_series(xs)
        out[small] = (0.5 + 0.5j - cs) * np.exp(-1j * _half_pi_x2(xs))
    if (~small).any():
        out[~small] = _fresnel_tail_cf(ax[~small])
    return out if out.ndim else out[()]


def fresnel_cs(x):
    """Fresnel integrals ``C(x) = int_0^x cos(pi t^2/2) dt`` and ``S(x)`` (sine).

    Accepts scalars or arrays; returns a pair of the same shape.
    """
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    cs = np.empty(x.shape, dtype=complex)
    small = ax <= SERIES_LIMIT
    if small.any():
        cs[small] = _fresnel_series(ax[small])
    if (~small).any():
        xl = ax[~small]
        cs[~small] = 0.5 + 0.5j - _fresnel_tail_cf(xl) * np.exp(1j * _half_pi_x2(xl))
    cs = np.where(x < 0, -cs, cs)
    c, s = cs.real, cs.imag
    if c.ndim == 0:
        return float(c), float(s)
    return c, s


def _ray_sign(ray) -> int:
    if ray in (1, "+", "+45", 45):
        return 1
    if ray in (-1, "-", "-45", -45):
        return -1
    raise ValueError(f"ray must be +45 or -45 degrees, got {ray!r}")


def erf_ray(x, ray=+1):
    """``erf(x * exp(+-1j*pi/4))`` for real ``x``.

    Uses ``erf((1+1j)/sqrt(2) * x) = (1+1j) * (C(u) - 1j*S(u))`` with
    ``u = x*sqrt(2/pi)``; the -45 degree ray is the complex conjugate.
    ``ray`` is ``+1``/``-1`` (or ``"+45"``/``"-45"``).
    """
    sign = _ray_sign(ray)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("erf_ray requires finite arguments")
    c, s = fresnel_cs(x * _SQRT_2_OVER_PI)
    val = (1.0 + 1.0j) * (np.asarray(c) - 1j * np.asarray(s))
    if sign < 0:
        val = np.conj(val)
    return val if np.ndim(val) else complex(val)


def sinc(x):
    """Unnormalised sinc, ``sin(x)/x``."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, x)
    x2 = x * x
    out = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)
    return out if out.ndim else float(out)


def _sqrt_jka(a: float, k: float) -> complex:
    # principal branch: e^{+i pi/4} for a > 0, e^{-i pi/4} for a < 0
    return math.sqrt(k * abs(a)) * complex(math.sqrt(0.5), math.copysign(math.sqrt(0.5), a))


def gaussian_phase_antiderivative(a: float, b: float, k: float, y):
    """Antiderivative of ``exp(-1j*k*(a*y**2 - b*y))`` without its constant phase.

    Returns ``sqrt(pi)/(2*sqrt(1j*k*a)) * erf(sqrt(1j*k*a)*(y - b/(2a)))``.
    Its derivative is the integrand times ``exp(-1j*k*b**2/(4a))``; definite
    integrals must multiply differences by ``exp(+1j*k*b**2/(4a))``, which
    :func:`gaussian_phase_integral` does in a cancellation-free way.
    """
    if a == 0:
        raise DomainError("quadratic coefficient a must be nonzero; use the linear-phase path")
    if not k > 0:
        raise DomainError(f"wavenumber must be positive, got {k!r}")
    y = np.asarray(y, dtype=float)
    w = math.sqrt(k * abs(a)) * (y - b / (2.0 * a))
    val = math.sqrt(math.pi) / (2.0 * _sqrt_jka(a, k)) * erf_ray(w, 1 if a > 0 else -1)
    return val if np.ndim(val) else complex(val)


def gaussian_phase_integral(a: float, b: float, k: float, y1: float, y2: float) -> complex:
    """``int_{y1}^{y2} exp(-1j*k*(a*y**2 - b*y)) dy`` for ``a != 0``.

    Writes erf on the diagonal ray as ``sgn(w) * (1 - (1+1j)*conj(T)*exp(-1j*w**2))``
    so that the large completing-the-square phase ``k*b**2/(4a)`` only
    survives when the stationary point ``b/(2a)`` lies inside ``[y1, y2]``,
    where it is small.  Elsewhere the phases recombine into the integrand
    values at the endpoints.
    """
    if a == 0:
        raise DomainError("quadratic coefficient a must be nonzero; use the linear-phase path")
    if not k > 0:
        raise DomainError(f"wavenumber must be positive, got {k!r}")
    if a < 0:
        return complex(np.conj(gaussian_phase_integral(-a, -b, k, y1, y2)))

    root = math.sqrt(k * a)
    y0 = b / (2.0 * a)
    w1 = root * (y1 - y0)
    w2 = root * (y2 - y0)
    s1 = float(np.sign(w1))
    s2 = float(np.sign(w2))
    t1, t2 = fresnel_tail(np.array([abs(w1), abs(w2)]) * _SQRT_2_OVER_PI)
    e1 = np.exp(-1j * k * (a * y1 * y1 - b * y1))
    e2 = np.exp(-1j * k * (a * y2 * y2 - b * y2))
    total = -(1.0 + 1.0j) * (s2 * np.conj(t2) * e2 - s1 * np.conj(t1) * e1)
    if s1 != s2:
        total += (s2 - s1) * np.exp(1j * k * a * y0 * y0)
    return complex(math.sqrt(math.pi) / (2.0 * _sqrt_jka(a, k)) * total)

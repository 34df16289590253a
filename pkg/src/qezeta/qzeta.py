"""Analytic continuation of the multiple q-Euler zeta and l-functions.

The continuation used everywhere is the absolutely convergent expansion

    zeta_r(s, x) = [2]_q^r (1-q)^s sum_{k>=0} C(s+k-1, k) q^{xk} (1+q^k)^{-r},

obtained by expanding [m+x]_q^{-s} binomially and summing the m-series in
closed form.  It is entire in s for every fixed |q| < 1, specializes
exactly to the polynomial closed form at s = -n (the generalized binomial
truncates there), and is confirmed term-by-term by the Mellin quadrature
oracle.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import roots_legendre

from .characters import DirichletCharacter
from .errors import ConvergenceError, DomainError, QuadratureError
from .qcore import (EvalContext, SeriesResult, complex_pow, gamma, q_number,
                    validate_domain, _as_small_int, _require_finite)
from .qeuler import (POLY_INDEX_CAP, _check_order, _convolve_power,
                     _euler_closed_sum, _gen_fn_chi_neg_axis, _gen_fn_neg_axis,
                     euler_poly_chi_r, euler_poly_r, signed_char_weights)


def zeta_r(s: complex, r: int, x: complex, ctx: EvalContext) -> SeriesResult:
    """The order-r q-Euler zeta value, entire in s.

    At s = -n the expansion truncates after n+1 terms and reproduces the
    polynomial closed sum on the same arithmetic path; elsewhere the series
    is cut when the geometric tail bound drops below ctx.tol.
    """
    _check_order(r)
    s = _require_finite("s", s)
    validate_domain(s, x, ctx)
    q = ctx.q

    n = _as_small_int(-s, 0, POLY_INDEX_CAP)
    if n is not None:
        core = _euler_closed_sum(n, r, x, ctx)
        value = (1 + q) ** r * complex_pow(1 - q, s) * core
        return SeriesResult(value, 0.0, n + 1)

    w = ctx.q_pow(x)
    wa = abs(w)
    qa = abs(q)
    sa = abs(s)
    pref = (1 + q) ** r * complex_pow(1 - q, s)
    pref_abs = abs(pref)
    total = complex(0.5 ** r)    # k = 0: C(s-1, 0) (1+q^0)^{-r}
    b = 1 + 0j                   # generalized binomial C(s+k-1, k), running
    wk = 1 + 0j
    qk = 1 + 0j
    for k in range(1, ctx.max_terms + 1):
        b = b * (s + (k - 1)) / k
        wk *= w
        qk *= q
        u = b * wk / ((1 + qk) ** r)
        total += u
        amp = max(1.0, (sa + k) / (k + 1))
        qfac = ((1 + qa ** k) / (1 - qa ** (k + 1))) ** r
        rho = wa * amp * qfac
        if k >= 2 and rho <= 0.99:
            err = pref_abs * abs(u) * rho / (1 - rho)
            if err <= ctx.tol:
                return SeriesResult(pref * total, err, k + 1)
    raise ConvergenceError(
        f"zeta series: tail bound not met within {ctx.max_terms} terms "
        f"(|q^x| = {wa:.6g})")


def zeta(s: complex, x: complex, ctx: EvalContext) -> SeriesResult:
    """Hurwitz-type q-Euler zeta: the r = 1 case, by delegation."""
    return zeta_r(s, 1, x, ctx)


def l_r(s: complex, r: int, x: complex, chi: DirichletCharacter,
        ctx: EvalContext) -> SeriesResult:
    """Dirichlet-type multiple q-Euler l-function via conductor reduction:

        l_r(s, x | chi) = [f]_q^{-s} ([2]_q/[2]_{q^f})^r
                          sum_sigma W_sigma zeta_r(s, (sigma+x)/f; q^f),

    where W is the r-fold convolution of chi(a)(-1)^a.  Conductor 1 is the
    identity reduction and delegates to zeta_r bitwise.
    """
    f = chi.modulus
    if f == 1:
        return zeta_r(s, r, x, ctx)
    _check_order(r)
    s = _require_finite("s", s)
    x = complex(x)
    q = ctx.q
    ctx_f = ctx.rebase(f)
    weights = _convolve_power(signed_char_weights(chi), r)
    pref = complex_pow(q_number(f, ctx), -s) * ((1 + q) / (1 + ctx_f.q)) ** r
    total = 0j
    err = 0.0
    terms = 0
    for sigma, wgt in enumerate(weights):
        if wgt == 0:
            continue
        res = zeta_r(s, r, (x + sigma) / f, ctx_f)
        total += wgt * res.value
        err += abs(wgt) * res.err_estimate
        terms = max(terms, res.terms_used)
    return SeriesResult(pref * total, abs(pref) * err, terms)


def l(s: complex, x: complex, chi: DirichletCharacter,
      ctx: EvalContext) -> SeriesResult:
    """Dirichlet-type q-Euler l-function: the r = 1 case, by delegation."""
    return l_r(s, 1, x, chi, ctx)


_GL_LO = roots_legendre(20)
_GL_HI = roots_legendre(41)


def _gl_panel(fvec, a: float, b: float) -> tuple[complex, float]:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    xs_lo, ws_lo = _GL_LO
    xs_hi, ws_hi = _GL_HI
    lo = half * complex(np.sum(ws_lo * fvec(mid + half * xs_lo)))
    hi = half * complex(np.sum(ws_hi * fvec(mid + half * xs_hi)))
    return hi, abs(hi - lo)


def _adaptive_quad(fvec, a: float, b: float, tol_abs: float,
                   budget: int) -> tuple[complex, float]:
    """Bisection-refined Gauss-Legendre quadrature with a panel budget."""
    total = 0j
    err = 0.0
    width = b - a
    stack = [(a, b, 0)]
    used = 0
    while stack:
        lo, hi, depth = stack.pop()
        used += 1
        if used > budget:
            raise QuadratureError(
                f"quadrature refinement budget ({budget} panels) exhausted")
        val, e = _gl_panel(fvec, lo, hi)
        if e <= tol_abs * (hi - lo) / width or depth >= 42:
            total += val
            err += e
        else:
            mid = 0.5 * (lo + hi)
            stack.append((lo, mid, depth + 1))
            stack.append((mid, hi, depth + 1))
    return total, err


def mellin_oracle(s: complex, r: int, x: complex, ctx: EvalContext,
                  chi: DirichletCharacter | None = None) -> complex:
    """(1/Gamma(s)) integral_0^inf t^{s-1} F(-t, x) dt by adaptive quadrature.

    An independent route to zeta_r (or l_r when a character is supplied).
    Restricted to real q in (0, 1), real x > 0 and Re(s) > 0, where the
    integral representation converges on the real axis.  The integral is
    split at t = 1, the lower piece substituted t = u^2 to soften the
    endpoint, and the upper piece truncated once the integrand falls under
    1e-18.
    """
    _check_order(r)
    s = _require_finite("s", s)
    if not s.real > 0.0:
        raise DomainError("Re(s) > 0 required by the integral representation")
    q = ctx.q
    if q.imag != 0.0 or not (0.0 < q.real < 1.0):
        raise DomainError("mellin oracle requires real q in (0, 1)")
    xz = complex(x)
    if xz.imag != 0.0 or not xz.real > 0.0:
        raise DomainError("mellin oracle requires real x > 0")
    qr, xr = q.real, xz.real

    if chi is None or chi.modulus == 1:
        def fneg(ts):
            return _gen_fn_neg_axis(ts, r, xr, ctx).astype(complex)
    else:
        def fneg(ts):
            return _gen_fn_chi_neg_axis(ts, r, xr, chi, ctx)

    decay = (1.0 - qr ** xr) / (1.0 - qr)   # [x]_q, slowest exponential rate
    cut = max(2.0, 45.0 / decay)
    for _ in range(3):
        cut = max(2.0, (45.0 + r * math.log(2.0)
                        + max(s.real - 1.0, 0.0) * math.log(cut)) / decay)
    cut *= 1.25

    def upper(ts):
        return np.exp((s - 1) * np.log(ts)) * fneg(ts)

    def lower(us):   # t = u^2: 2 u^{2s-1} F(-u^2)
        return 2.0 * np.exp((2 * s - 1) * np.log(us)) * fneg(us * us)

    # keep the dropped stub below ~1e-18 even for small Re(s)
    u_min = 2.0 ** -40
    if s.real < 0.5:
        u_min = min(u_min, 1e-20 ** (1.0 / max(2.0 * s.real, 1e-3)))
        u_min = max(u_min, 1e-280)

    low, err_low = _adaptive_quad(lower, u_min, 1.0, 1e-10, 900)
    up, err_up = _adaptive_quad(upper, 1.0, cut, 1e-10, 900)
    return (low + up) / gamma(s)


def special_value_residual(n: int, r: int, x: complex, ctx: EvalContext,
                           chi: DirichletCharacter | None = None) -> float:
    """Normalized gap between the interpolating function at s = -n and the
    matching polynomial value (zeta_r vs euler_poly_r, or the chi pair)."""
    if chi is None:
        interp = zeta_r(complex(-n), r, x, ctx).value
        poly = euler_poly_r(n, r, x, ctx)
    else:
        interp = l_r(complex(-n), r, x, chi, ctx).value
        poly = euler_poly_chi_r(n, r, x, chi, ctx)
    return abs(interp - poly) / (1.0 + abs(poly))

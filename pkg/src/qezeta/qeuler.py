"""q-Euler polynomials of order r, their character-twisted versions, the
generating functions, and the Abel-summation oracle.

The canonical values come from the closed binomial sum

    E_{n,q}^{(r)}(x) = [2]_q^r / (1-q)^n * sum_{l=0}^n C(n,l) (-1)^l q^{lx} (1+q^l)^{-r},

whose l = 0 factor (1+q^0)^{-r} = 2^{-r} is the Abel regularization of the
otherwise divergent defining series.  The alternating sum is an n-th finite
difference and loses roughly n*log10(1/|1-q|) digits as q -> 1, so the core
re-sums in higher precision (mpmath) whenever the double-precision
cancellation estimate says doubles cannot reach the library tolerances.
Inputs and outputs stay double-precision complex throughout.
"""

from __future__ import annotations

import cmath
import math

import mpmath
import numpy as np

from .characters import DirichletCharacter
from .errors import ConvergenceError, DomainError
from .qcore import (EvalContext, SeriesResult, complex_pow, neville_extrapolate,
                    q_number, validate_domain, _require_finite)

POLY_INDEX_CAP = 64   # keeps binomial coefficients on the exact float path
ORDER_CAP = 16

_EPS = 2.220446049250313e-16
_ESCALATE_REL = 1e-13        # predicted relative roundoff that triggers mpmath
_DPS_CAP = 600               # hard ceiling for escalated precision
_CANCEL_CAP = 9.0            # max (|z| - Re z) tolerated by the k-expansion
_EXP_CAP = 700.0             # keep exp() inside the double range


def _check_poly_index(n: int) -> None:
    if not (isinstance(n, int) and 0 <= n <= POLY_INDEX_CAP):
        raise DomainError(
            f"polynomial index must be an integer in [0, {POLY_INDEX_CAP}], got {n!r}")


def _check_order(r: int) -> None:
    if not (isinstance(r, int) and 1 <= r <= ORDER_CAP):
        raise DomainError(f"order must be an integer in [1, {ORDER_CAP}], got {r!r}")


def _mp_log_q(ctx: EvalContext):
    """The context's branch of Log q at the working mpmath precision.

    Recovers the integer winding from the double-precision log_q and
    re-evaluates the principal part exactly from the stored q.
    """
    turns = round((ctx.log_q.imag - cmath.log(ctx.q).imag) / (2.0 * math.pi))
    return mpmath.log(mpmath.mpc(ctx.q)) + 2j * mpmath.pi * turns


def _alt_sum_stable(n: int, term, make_term_mp) -> complex:
    """sum_{l=0}^n C(n,l) (-1)^l term(l), cancellation-aware.

    A first pass runs in doubles while tracking sum(|terms|).  If the
    a-posteriori roundoff estimate exceeds the escalation threshold the sum
    is redone with mpmath at a precision chosen from the observed
    cancellation, iterating once more if the first guess (based on the noisy
    double value) was still too low.
    """
    total = 0j
    total_abs = 0.0
    for l in range(n + 1):
        t = math.comb(n, l) * term(l)
        total = total - t if (l & 1) else total + t
        total_abs += abs(t)
    if total_abs == 0.0:
        return total
    if total_abs * _EPS <= _ESCALATE_REL * abs(total):
        return total

    lost = math.log10(total_abs / abs(total)) if total != 0 else 16.0
    dps = min(30 + int(lost), _DPS_CAP)
    for _ in range(12):
        with mpmath.workdps(dps):
            tm = make_term_mp()
            acc = mpmath.mpc(0)
            acc_abs = mpmath.mpf(0)
            for l in range(n + 1):
                t = math.comb(n, l) * tm(l)
                acc = acc - t if (l & 1) else acc + t
                acc_abs += abs(t)
            if acc_abs == 0:
                return complex(acc)
            if acc != 0:
                lost_mp = float(mpmath.log10(acc_abs / abs(acc)))
                if dps >= lost_mp + 20:
                    return complex(acc)
                need = int(lost_mp) + 30
            else:
                if dps >= 120:
                    return complex(acc)   # indistinguishable from an exact zero
                need = 2 * dps
        if dps >= _DPS_CAP:
            raise ConvergenceError(
                "cancellation beyond the supported precision "
                f"({_DPS_CAP} digits): 1 - q too small for this index")
        dps = min(max(need, 2 * dps), _DPS_CAP)
    raise ConvergenceError("cancellation escalation failed to stabilize")


def _euler_closed_sum(n: int, r: int, x: complex, ctx: EvalContext) -> complex:
    """The bare sum sum_l C(n,l)(-1)^l q^{lx} (1+q^l)^{-r}."""
    q = ctx.q
    w = ctx.q_pow(x)

    def term(l):
        return (w ** l) / ((1 + q ** l) ** r)

    def make_term_mp():
        qm = mpmath.mpc(q)
        wm = mpmath.exp(mpmath.mpc(complex(x)) * _mp_log_q(ctx))

        def term_mp(l):
            return (wm ** l) / ((1 + qm ** l) ** r)

        return term_mp

    return _alt_sum_stable(n, term, make_term_mp)


def euler_poly_r(n: int, r: int, x: complex, ctx: EvalContext) -> complex:
    """The order-r q-Euler polynomial value E_{n,q}^{(r)}(x).

    Only |q| < 1 is required; x = 0 is allowed and yields the order-r
    q-Euler numbers.
    """
    _check_poly_index(n)
    _check_order(r)
    _require_finite("x", x)
    q = ctx.q
    core = _euler_closed_sum(n, r, x, ctx)
    return (1 + q) ** r * core / (1 - q) ** n


def euler_poly_chi_r(n: int, r: int, x: complex, chi: DirichletCharacter,
                     ctx: EvalContext) -> complex:
    """Generalized order-r polynomial attached to a character of odd modulus.

    The r-fold conductor sum factors as the r-th power of the single sum
    sum_a chi(a) (-q^l)^a, so each term costs O(f) instead of O(f^r).
    """
    _check_poly_index(n)
    _check_order(r)
    _require_finite("x", x)
    q = ctx.q
    f = chi.modulus
    values = chi.values
    w = ctx.q_pow(x)

    def term(l):
        ql = q ** l
        z = -ql
        acc = 0j
        p = 1 + 0j
        for a in range(f):
            if values[a] != 0:
                acc += values[a] * p
            p *= z
        return (w ** l) * acc ** r / ((1 + ql ** f) ** r)

    def make_term_mp():
        qm = mpmath.mpc(q)
        wm = mpmath.exp(mpmath.mpc(complex(x)) * _mp_log_q(ctx))
        vm = [mpmath.mpc(v) for v in values]

        def term_mp(l):
            ql = qm ** l
            z = -ql
            acc = mpmath.mpc(0)
            p = mpmath.mpc(1)
            for a in range(f):
                if values[a] != 0:
                    acc += vm[a] * p
                p *= z
            return (wm ** l) * acc ** r / ((1 + ql ** f) ** r)

        return term_mp

    core = _alt_sum_stable(n, term, make_term_mp)
    return (1 + q) ** r * core / (1 - q) ** n


def euler_poly_r_blocked(n: int, r: int, x: complex, f: int,
                         ctx: EvalContext) -> complex:
    """E_{n,q}^{(r)}(x) assembled through f-blocks of the conductor sum.

    Independent assembly of the same value: the inner sum over a < f is the
    literal signed geometric sum sum_a (-q^l)^a, not its closed form.
    """
    _check_poly_index(n)
    _check_order(r)
    if not (isinstance(f, int) and f >= 1 and f % 2 == 1):
        raise DomainError(f"f must be an odd positive integer, got {f!r}")
    q = ctx.q
    w = ctx.q_pow(x)

    def term(l):
        ql = q ** l
        z = -ql
        acc = 0j
        p = 1 + 0j
        for _ in range(f):
            acc += p
            p *= z
        return (w ** l) * acc ** r / ((1 + ql ** f) ** r)

    def make_term_mp():
        qm = mpmath.mpc(q)
        wm = mpmath.exp(mpmath.mpc(complex(x)) * _mp_log_q(ctx))

        def term_mp(l):
            ql = qm ** l
            z = -ql
            acc = mpmath.mpc(0)
            p = mpmath.mpc(1)
            for _ in range(f):
                acc += p
                p *= z
            return (wm ** l) * acc ** r / ((1 + ql ** f) ** r)

        return term_mp

    core = _alt_sum_stable(n, term, make_term_mp)
    return (1 + q) ** r * core / (1 - q) ** n


def _convolve(a: list, b: list) -> list:
    out = [0j] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _convolve_power(seq: list, r: int) -> list:
    out = [1 + 0j]
    for _ in range(r):
        out = _convolve(out, seq)
    return out


def signed_char_weights(chi: DirichletCharacter) -> list:
    """w(a) = chi(a) (-1)^a; the r-fold convolution of w carries the r-tuple
    conductor sums grouped by the tuple total."""
    return [chi.values[a] * (-1.0 if a & 1 else 1.0) for a in range(chi.modulus)]


def _euler_poly_r_mp(n: int, r: int, x_mp, ctx: EvalContext):
    """euler_poly_r evaluated at the current mpmath precision (x_mp is mpc)."""
    qm = mpmath.mpc(ctx.q)
    wm = mpmath.exp(x_mp * _mp_log_q(ctx))
    acc = mpmath.mpc(0)
    for l in range(n + 1):
        t = math.comb(n, l) * (wm ** l) / ((1 + qm ** l) ** r)
        acc = acc - t if (l & 1) else acc + t
    return (1 + qm) ** r * acc / (1 - qm) ** n


def _weighted_shift_sum(n: int, r: int, x: complex, f: int, weights,
                        ctx: EvalContext) -> complex:
    """sum_sigma W_sigma E_{n,q^f}((x+sigma)/f), cancellation-aware.

    The signed sum over shifts cancels by roughly the factor [f]_q^n that
    multiplies it afterwards; when doubles cannot carry that, the whole sum
    (including the inner polynomial values) is redone in mpmath.
    """
    ctx_f = ctx.rebase(f)
    terms = []
    total_abs = 0.0
    for sigma, wgt in enumerate(weights):
        if wgt == 0:
            continue
        val = wgt * euler_poly_r(n, r, (x + sigma) / f, ctx_f)
        terms.append(val)
        total_abs += abs(val)
    acc = complex(math.fsum(v.real for v in terms),
                  math.fsum(v.imag for v in terms))
    if total_abs == 0.0 or total_abs * _EPS <= _ESCALATE_REL * abs(acc):
        return acc

    lost = math.log10(total_abs / abs(acc)) if acc != 0 else 16.0
    dps = min(35 + int(lost), _DPS_CAP)
    for _ in range(4):
        with mpmath.workdps(dps):
            xm = mpmath.mpc(complex(x))
            acc_mp = mpmath.mpc(0)
            abs_mp = mpmath.mpf(0)
            for sigma, wgt in enumerate(weights):
                if wgt == 0:
                    continue
                val = mpmath.mpc(wgt) * _euler_poly_r_mp(n, r, (xm + sigma) / f, ctx_f)
                acc_mp += val
                abs_mp += abs(val)
            if acc_mp != 0:
                lost_mp = float(mpmath.log10(abs_mp / abs(acc_mp)))
                if dps >= lost_mp + 20:
                    return complex(acc_mp)
                need = int(lost_mp) + 35
            else:
                if dps >= 120:
                    return complex(acc_mp)
                need = 2 * dps
        if dps >= _DPS_CAP:
            raise ConvergenceError(
                "shift-sum cancellation beyond the supported precision")
        dps = min(max(need, 2 * dps), _DPS_CAP)
    raise ConvergenceError("shift-sum escalation failed to stabilize")


def distribution_rhs(n: int, r: int, x: complex, f: int,
                     ctx: EvalContext) -> complex:
    """Signed sum of base-q^f polynomials at shifted arguments.

    Equals euler_poly_r(n, r, x, ctx) for odd f.  The r-fold sum over
    tuples in [0,f)^r is collapsed by the number of tuples with a given
    total (iterated convolution of a block of ones), signed by the total.
    """
    _check_poly_index(n)
    _check_order(r)
    if not (isinstance(f, int) and f >= 1 and f % 2 == 1):
        raise DomainError(f"f must be an odd positive integer, got {f!r}")
    x = complex(x)
    q = ctx.q
    counts = _convolve_power([1 + 0j] * f, r)
    weights = [c if sigma % 2 == 0 else -c for sigma, c in enumerate(counts)]
    pref = ((1 + q) / (1 + ctx.rebase(f).q)) ** r * q_number(f, ctx) ** n
    return pref * _weighted_shift_sum(n, r, x, f, weights, ctx)


def distribution_rhs_chi(n: int, r: int, x: complex, chi: DirichletCharacter,
                         ctx: EvalContext) -> complex:
    """Character-weighted signed sum of base-q^f polynomials at shifted
    arguments; equals euler_poly_chi_r on odd moduli."""
    _check_poly_index(n)
    _check_order(r)
    x = complex(x)
    q = ctx.q
    f = chi.modulus
    weights = _convolve_power(signed_char_weights(chi), r)
    pref = ((1 + q) / (1 + ctx.rebase(f).q)) ** r * q_number(f, ctx) ** n
    return pref * _weighted_shift_sum(n, r, x, f, weights, ctx)


def gen_fn(t: complex, r: int, x: complex, ctx: EvalContext) -> SeriesResult:
    """The regularized order-r generating function F(t, x).

    Evaluated through the entire expansion
        [2]_q^r e^{t/(1-q)} sum_k (-t/(1-q))^k q^{xk} (1+q^k)^{-r} / k!
    when that sum is numerically benign, and through its Taylor series in t
    (coefficients euler_poly_r / n!) when the expansion would cancel
    catastrophically, e.g. for q -> 1 at fixed t.
    """
    _check_order(r)
    t = _require_finite("t", t)
    validate_domain(0, x, ctx)
    q = ctx.q
    big = t / (1 - q)
    w = ctx.q_pow(x)
    z = -big * w
    if abs(z) - z.real <= _CANCEL_CAP and abs(big.real) <= _EXP_CAP \
            and abs(z) <= _EXP_CAP:
        return _gen_fn_kseries(z, big, r, q, ctx)
    return _gen_fn_taylor(t, r, complex(x), ctx)


def _gen_fn_kseries(z: complex, big: complex, r: int, q: complex,
                    ctx: EvalContext) -> SeriesResult:
    pref = (1 + q) ** r * cmath.exp(big)
    pref_abs = abs(pref)
    qa = abs(q)
    total = complex(0.5 ** r)    # k = 0: (1 + q^0)^{-r}
    m = 1 + 0j
    qk = 1 + 0j
    for k in range(1, ctx.max_terms + 1):
        m *= z / k
        qk *= q
        u = m / ((1 + qk) ** r)
        total += u
        rho = (abs(z) / (k + 1)) * ((1 + qa ** k) / (1 - qa ** (k + 1))) ** r
        if k >= 2 and rho <= 0.99:
            err = pref_abs * abs(u) * rho / (1 - rho)
            if err <= ctx.tol:
                return SeriesResult(pref * total, err, k + 1)
    raise ConvergenceError(
        f"generating function: tail bound not met within {ctx.max_terms} terms")


def _gen_fn_taylor(t: complex, r: int, x: complex, ctx: EvalContext) -> SeriesResult:
    # Coefficient magnitudes oscillate with the index parity (even-index
    # polynomial values can be near zero while odd ones are large), so the
    # tail is bounded pairwise through two-step ratios.
    total = 0j
    tp = 1 + 0j
    mags: list[float] = []
    for n in range(0, POLY_INDEX_CAP + 1):
        if n:
            tp *= t / n
        term = euler_poly_r(n, r, x, ctx) * tp
        total += term
        mags.append(abs(term))
        if n >= 6:
            ratios = [mags[-1 - i] / mags[-3 - i]
                      for i in range(2) if mags[-3 - i] > 0]
            rho2 = max(ratios) if ratios else 0.25
            if rho2 < 0.9:
                rho2 = max(rho2, 1e-4)
                bound = (mags[-1] + mags[-2]) * rho2 / (1 - rho2)
                if bound <= ctx.tol:
                    return SeriesResult(total, bound, n + 1)
    raise ConvergenceError(
        "generating function: Taylor fallback did not converge by degree "
        f"{POLY_INDEX_CAP} (|t| too large for this q)")


def gen_fn_chi(t: complex, r: int, x: complex, chi: DirichletCharacter,
               ctx: EvalContext) -> SeriesResult:
    """Character generating function via the conductor-block reduction
    F_chi(t, x) = ([2]_q/[2]_{q^f})^r sum_sigma W_sigma F_{q^f}([f]_q t, (x+sigma)/f).

    Zero-weight shifts are skipped, so x = 0 is fine whenever chi(0) = 0
    (every modulus f > 1).
    """
    f = chi.modulus
    if f == 1:
        return gen_fn(t, r, x, ctx)   # conductor-1 reduction is the identity
    _check_order(r)
    t = _require_finite("t", t)
    x = complex(x)
    q = ctx.q
    ctx_f = ctx.rebase(f)
    weights = _convolve_power(signed_char_weights(chi), r)
    fq = q_number(f, ctx)
    pref = ((1 + q) / (1 + ctx_f.q)) ** r
    total = 0j
    err = 0.0
    terms = 0
    for sigma, wgt in enumerate(weights):
        if wgt == 0:
            continue
        res = gen_fn(fq * t, r, (x + sigma) / f, ctx_f)
        total += wgt * res.value
        err += abs(wgt) * res.err_estimate
        terms = max(terms, res.terms_used)
    return SeriesResult(pref * total, abs(pref) * err, terms)


_ABEL_GRID = tuple(0.82 + 0.02 * i for i in range(9))


def abel_oracle(n: int, r: int, x: complex, ctx: EvalContext) -> complex:
    """Independent evaluation of euler_poly_r by Abel summation.

    S(t) = sum_m C(m+r-1, m) (-t)^m [m+x]_q^n is summed on a grid of t
    inside the unit interval (each absolutely convergent) and polynomially
    extrapolated to t = 1; the result times [2]_q^r recovers the polynomial.

    The constant part of [m+x]_q^n (its m -> infinity limit (1-q)^{-n})
    carries the summand's only slowly-decaying piece; it is split off and
    Abel-summed in closed form, sum_m C(m+r-1,m)(-t)^m = (1+t)^{-r}, which
    both removes the t = -1 singularity that limits the extrapolation and
    leaves a remainder series decaying like (qt)^m.

    Restricted to real q in (0, 1) and real x >= 0.
    """
    _check_poly_index(n)
    _check_order(r)
    q = ctx.q
    if q.imag != 0.0 or not (0.0 < q.real < 1.0):
        raise DomainError("abel oracle requires real q in (0, 1)")
    xz = complex(x)
    if xz.imag != 0.0 or xz.real < 0.0:
        raise DomainError("abel oracle requires real x >= 0")
    svals = [_abel_series_reduced(n, r, xz.real, q.real, t, ctx)
             for t in _ABEL_GRID]
    s_at_one = neville_extrapolate(_ABEL_GRID, svals, 1.0)
    c_inf = (1.0 / (1.0 - q.real)) ** n
    return (1 + q) ** r * (s_at_one + c_inf * 0.5 ** r)


def _abel_series_reduced(n: int, r: int, x: float, q: float, t: float,
                         ctx: EvalContext) -> float:
    """sum_m C(m+r-1, m) (-t)^m ([m+x]_q^n - (1-q)^{-n}), with a geometric
    tail bound from |[m+x]_q^n - (1-q)^{-n}| <= n q^{m+x} (1-q)^{-n}."""
    c_scale = 1.0 / (1.0 - q)
    c_inf = c_scale ** n
    w = q ** x if x > 0 else 1.0
    total = 0.0
    coef_prev = 1.0
    m_next = 0
    block = 512
    while m_next <= ctx.max_terms:
        hi = min(m_next + block, ctx.max_terms + 1)
        ms = np.arange(m_next, hi, dtype=float)
        rat = np.ones(len(ms))
        nz = ms >= 1
        rat[nz] = (ms[nz] + (r - 1.0)) / ms[nz]
        coefs = coef_prev * np.cumprod(rat)
        signs = np.where(ms % 2 == 0, 1.0, -1.0)
        tm = t ** ms
        cm = ((1.0 - w * q ** ms) * c_scale) ** n - c_inf
        total += float(np.sum(coefs * signs * tm * cm))
        coef_prev = float(coefs[-1])
        m_last = int(ms[-1])
        rho = q * t * (m_last + 1 + r) / (m_last + 2)
        if rho < 1.0:
            head = coef_prev * (m_last + r) / (m_last + 1) * (t * q) ** (m_last + 1)
            bound = n * w * c_inf * head / (1.0 - rho)
            if bound <= ctx.tol * max(1.0, abs(total)):
                return total
        m_next = hi
    raise ConvergenceError(
        f"abel series at t = {t}: tail bound not met within {ctx.max_terms} terms")


def _gen_fn_neg_axis(ts: np.ndarray, r: int, x: float, ctx: EvalContext) -> np.ndarray:
    """F(-t, x) on an array of t >= 0 for real q; all series terms are
    positive, so the evaluation is stable at any scale doubles can hold."""
    q = ctx.q.real
    w = q ** x
    one_minus = 1.0 - q
    ts = np.asarray(ts, dtype=float)
    z = ts * (w / one_minus)
    total = np.full_like(z, 0.5 ** r)
    term = np.ones_like(z)
    zmax = float(z.max()) if z.size else 0.0
    qk = 1.0
    for k in range(1, ctx.max_terms + 1):
        term = term * z / k
        qk *= q
        total += term / (1.0 + qk) ** r
        if k >= 4 and k >= zmax \
                and float(term.max()) <= 1e-18 * float(total.max()):
            return (1.0 + q) ** r * np.exp(-ts / one_minus) * total
    raise ConvergenceError("generating-function grid series exceeded max_terms")


def _gen_fn_chi_neg_axis(ts: np.ndarray, r: int, x: float,
                         chi: DirichletCharacter, ctx: EvalContext) -> np.ndarray:
    f = chi.modulus
    if f == 1:
        return _gen_fn_neg_axis(ts, r, x, ctx).astype(complex)
    ctx_f = ctx.rebase(f)
    weights = _convolve_power(signed_char_weights(chi), r)
    fq = q_number(f, ctx).real
    ts = np.asarray(ts, dtype=float)
    acc = np.zeros(ts.shape, dtype=complex)
    for sigma, wgt in enumerate(weights):
        if wgt == 0:
            continue
        acc = acc + wgt * _gen_fn_neg_axis(fq * ts, r, (x + sigma) / f, ctx_f)
    pref = ((1 + ctx.q) / (1 + ctx_f.q)) ** r
    return pref * acc

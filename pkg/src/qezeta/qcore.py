"""Complex q-arithmetic primitives shared by every evaluator.

Everything is double-precision complex.  The base q lives strictly inside
the unit disk, and every non-integer power is taken on the principal
branch; |q| < 1 keeps the bases that actually occur (1 - q, 1 + q^k,
q itself) off the branch cut.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BranchError, DomainError, PoleError

# Exponents/arguments up to this size take the exact small-integer paths
# (repeated multiplication, explicit geometric sums).
INT_FAST_PATH_CAP = 64


def _as_small_int(z: complex, lo: int = -INT_FAST_PATH_CAP,
                  hi: int = INT_FAST_PATH_CAP) -> int | None:
    """Return z as a Python int if it is exactly an integer in [lo, hi]."""
    if z.imag != 0.0 or not math.isfinite(z.real):
        return None
    if z.real != int(z.real):
        return None
    n = int(z.real)
    return n if lo <= n <= hi else None


def _require_finite(name: str, z: complex) -> complex:
    z = complex(z)
    if not cmath.isfinite(z):
        raise DomainError(f"{name} must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class EvalContext:
    """Evaluation policy: the base q plus truncation control for all series.

    Invariants: |q| < 1 strictly and q != 0; tol in (0, 1); max_terms >= 8.
    Immutable, so contexts can be shared freely across threads.

    log_q is the branch of Log q used for every power q^x taken in this
    context.  It defaults to the principal logarithm; rebase(f) carries
    f*log_q forward so that (q^f)^y and q^{fy} agree even when f*arg(q)
    leaves the principal strip, which the base-change identities need for
    complex q.
    """

    q: complex
    tol: float = 1e-10
    max_terms: int = 10000
    log_q: complex | None = None

    def __post_init__(self) -> None:
        q = complex(self.q)
        object.__setattr__(self, "q", q)
        if not cmath.isfinite(q):
            raise DomainError(f"q must be finite, got {q!r}")
        if abs(q) >= 1.0:
            raise DomainError(f"|q| < 1 required, got |q| = {abs(q):.6g}")
        if q == 0:
            raise DomainError("q must be nonzero (Log q is needed)")
        if not (isinstance(self.tol, (int, float)) and 0.0 < self.tol < 1.0):
            raise DomainError(f"tol must lie in (0, 1), got {self.tol!r}")
        if not (isinstance(self.max_terms, int) and self.max_terms >= 8):
            raise DomainError(
                f"max_terms must be an integer >= 8, got {self.max_terms!r}")
        if self.log_q is None:
            object.__setattr__(self, "log_q", cmath.log(q))
        else:
            object.__setattr__(self, "log_q", complex(self.log_q))

    def q_pow(self, x: complex) -> complex:
        """q^x on this context's branch of Log q.

        Integer exponents are branch-independent and take the exact
        repeated-multiplication path.
        """
        xz = complex(x)
        n = _as_small_int(xz)
        if n is not None:
            return self.q ** n
        return cmath.exp(xz * self.log_q)

    def rebase(self, f: int) -> "EvalContext":
        """Context with base q^f (|q^f| < 1 automatically) on the coherent
        branch f*Log q, with the same truncation policy."""
        if not (isinstance(f, int) and f >= 1):
            raise DomainError(f"rebase exponent must be a positive integer, got {f!r}")
        qf = self.q ** f if f <= INT_FAST_PATH_CAP else cmath.exp(f * self.log_q)
        return EvalContext(qf, self.tol, self.max_terms, f * self.log_q)


@dataclass(frozen=True)
class SeriesResult:
    """A computed series value with an a-posteriori truncation-tail bound."""

    value: complex
    err_estimate: float
    terms_used: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", complex(self.value))
        if not cmath.isfinite(self.value):
            raise DomainError("series value left the double range")
        if not self.err_estimate >= 0.0:
            raise DomainError(f"err_estimate must be >= 0, got {self.err_estimate!r}")
        if not (isinstance(self.terms_used, int) and self.terms_used >= 0):
            raise DomainError(f"terms_used must be an integer >= 0, got {self.terms_used!r}")


def complex_pow(base: complex, exponent: complex) -> complex:
    """Principal-branch power exp(exponent * Log base).

    Exact integer exponents with |exponent| <= 64 are evaluated by repeated
    multiplication, which keeps small-integer fixtures bitwise reproducible
    and stays off the branch cut for negative real bases.
    """
    b = _require_finite("base", base)
    e = _require_finite("exponent", exponent)
    if b == 0:
        if e.real > 0.0:
            return 0j
        raise DomainError("0 cannot be raised to an exponent with Re <= 0")
    n = _as_small_int(e)
    if n is not None:
        return b ** n  # CPython evaluates small integer powers by multiplication
    if b.imag == 0.0 and b.real < 0.0:
        raise BranchError(
            f"non-integer power of a base on (-inf, 0]: base = {b.real!r}")
    return cmath.exp(e * cmath.log(b))


def q_number(x: complex, ctx: EvalContext) -> complex:
    """The q-analog [x]_q = (1 - q^x) / (1 - q).

    Integer 0 <= x <= 64 takes the exact partial geometric sum
    1 + q + ... + q^(x-1); everything else goes through the context's
    branch of q^x.
    """
    q = ctx.q
    xz = _require_finite("x", x)
    n = _as_small_int(xz, 0, INT_FAST_PATH_CAP)
    if n is not None:
        acc = 0j
        p = 1 + 0j
        for _ in range(n):
            acc += p
            p *= q
        return acc
    return (1 - ctx.q_pow(xz)) / (1 - q)


def gen_binomial(s: complex, k: int) -> complex:
    """Generalized binomial coefficient C(s+k-1, k) = s(s+1)...(s+k-1)/k!.

    Computed as the running product b_j = b_{j-1} (s+j-1)/j.  For integer
    s = -n this reproduces (-1)^k C(n, k) exactly (the intermediate values
    are representable integers) and vanishes for k > n.
    """
    if not (isinstance(k, int) and k >= 0):
        raise DomainError(f"k must be an integer >= 0, got {k!r}")
    sz = _require_finite("s", s)
    b = 1 + 0j
    for j in range(1, k + 1):
        b = b * (sz + (j - 1)) / j
    return b


# Lanczos approximation, g = 7, 9 coefficients.  Relative accuracy is a few
# ulps times condition on the strip used by the tests (|Im| <= 8, Re <= 10).
_LANCZOS_G = 7
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def gamma(s: complex) -> complex:
    """Gamma function via Lanczos, with reflection for Re(s) < 1/2."""
    z = _require_finite("s", s)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        raise PoleError(f"gamma has a pole at s = {int(z.real)}")
    if z.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * z) * gamma(1 - z))
    z = z - 1
    acc = _LANCZOS_P[0] + 0j
    for i in range(1, len(_LANCZOS_P)):
        acc += _LANCZOS_P[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_TWO_PI * t ** (z + 0.5) * cmath.exp(-t) * acc


def validate_domain(s: complex, x: complex, ctx: EvalContext) -> None:
    """Enforce the decay hypothesis for continued series in x.

    Succeeds iff |q| < 1 (guaranteed by the context) and Re(x Log q) < 0,
    i.e. |q^x| < 1 so the terms q^{xk} decay geometrically.  For real x and
    q in (0, 1) this is exactly x > 0; x = 0 is rejected.
    """
    _require_finite("s", s)
    xz = _require_finite("x", x)
    decay = (xz * ctx.log_q).real
    if not decay < 0.0:
        raise DomainError(
            f"Re(x*Log q) = {decay:.6g} >= 0: series in q^x does not decay "
            "(for real x this excludes x <= 0)")


def neville_extrapolate(xs, ys, x0: float) -> complex:
    """Neville polynomial extrapolation of the samples (xs, ys) to x0."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise DomainError("extrapolation needs at least two samples")
    pts = [float(v) for v in xs]
    vals = [complex(v) for v in ys]
    for level in range(1, len(vals)):
        for i in range(len(vals) - level):
            dx = pts[i] - pts[i + level]
            vals[i] = ((x0 - pts[i + level]) * vals[i]
                       + (pts[i] - x0) * vals[i + 1]) / dx
    return vals[0]

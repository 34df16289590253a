"""Residual suites for the identities the library implements.

Four blocks, each reporting the worst normalized residual over its grid:

  zeta-special-values     zeta_r(-n, x) against the polynomial closed form
  distribution            base-change decomposition of the polynomials,
                          in both its decomposed and f-block assemblies
  character-distribution  character decomposition of the generalized
                          polynomials, plus the literal r-tuple conductor sum
                          against its factored collapse
  l-special-values        l_r(-n, x | chi) against the generalized polynomials

Residuals are |a - b| / (1 + |b|).  The CLI 'verify' subcommand prints one
line per block; the acceptance tests run the full grids directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import mpmath

from .characters import DirichletCharacter, enumerate_prime_characters, principal
from .qcore import EvalContext
from .qeuler import (_alt_sum_stable, _mp_log_q, distribution_rhs,
                     distribution_rhs_chi, euler_poly_chi_r, euler_poly_r,
                     euler_poly_r_blocked)
from .qzeta import l_r, zeta_r


@dataclass(frozen=True)
class IdentityReport:
    name: str
    points: int
    max_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def _residual(a: complex, b: complex) -> float:
    return abs(a - b) / (1.0 + abs(b))


def _characters_for(moduli) -> list[DirichletCharacter]:
    chars: list[DirichletCharacter] = []
    for f in moduli:
        if f == 1:
            chars.append(principal(1))
        else:
            chars.extend(enumerate_prime_characters(f))
    return chars


SMALL_GRID = {
    "zeta_n": range(0, 5), "zeta_r": (1, 2),
    "zeta_q": (0.3, 0.9), "zeta_x": (0.5, 1.0),
    "dist_n": range(0, 5), "dist_r": (1, 2), "dist_f": (1, 3),
    "dist_q": (0.3, 0.9), "dist_x": (0.0, 0.5, 1.0),
    "char_moduli": (1, 3), "char_n": range(0, 5), "char_r": (1, 2),
    "char_q": (0.3, 0.9), "char_x": (0.0, 0.5, 1.0),
    "l_n": range(0, 5), "l_r": (1, 2),
    "l_q": (0.3, 0.9), "l_x": (0.5, 1.0),
}

FULL_GRID = {
    "zeta_n": range(0, 9), "zeta_r": (1, 2, 3),
    "zeta_q": (0.3, 0.5, 0.9, 0.4 + 0.3j), "zeta_x": (0.5, 1.0, 2.0),
    "dist_n": range(0, 7), "dist_r": (1, 2, 3), "dist_f": (1, 3, 5),
    "dist_q": (0.3, 0.5, 0.9), "dist_x": (0.0, 0.5, 1.0, 2.0),
    "char_moduli": (1, 3, 5), "char_n": range(0, 7), "char_r": (1, 2, 3),
    "char_q": (0.3, 0.5, 0.9), "char_x": (0.0, 0.5, 1.0, 2.0),
    "l_n": range(0, 7), "l_r": (1, 2),
    "l_q": (0.3, 0.5, 0.9), "l_x": (0.5, 1.0, 2.0),
}


def euler_poly_chi_r_literal(n: int, r: int, x: complex,
                             chi: DirichletCharacter, ctx: EvalContext) -> complex:
    """The generalized polynomial with the r-fold conductor sum enumerated
    tuple by tuple (no factorization); oracle for the collapsed form.

    Shares the cancellation-safe alternating-sum core so it stays accurate
    on the same q-grid as the factored assembly.
    """
    q = ctx.q
    f = chi.modulus
    w = ctx.q_pow(x)
    tuples = [(tup, sum(tup)) for tup in itertools.product(range(f), repeat=r)]

    def term(l):
        ql = q ** l
        block = 0j
        for tup, sa in tuples:
            cw = 1 + 0j
            for a in tup:
                cw *= chi.values[a]
            if cw == 0:
                continue
            block += cw * (-ql) ** sa
        return (w ** l) * block / ((1 + ql ** f) ** r)

    def make_term_mp():
        qm = mpmath.mpc(q)
        wm = mpmath.exp(mpmath.mpc(complex(x)) * _mp_log_q(ctx))
        vm = [mpmath.mpc(v) for v in chi.values]

        def term_mp(l):
            ql = qm ** l
            block = mpmath.mpc(0)
            for tup, sa in tuples:
                cw = mpmath.mpc(1)
                skip = False
                for a in tup:
                    if chi.values[a] == 0:
                        skip = True
                        break
                    cw *= vm[a]
                if skip:
                    continue
                block += cw * (-ql) ** sa
            return (wm ** l) * block / ((1 + ql ** f) ** r)

        return term_mp

    core = _alt_sum_stable(n, term, make_term_mp)
    return (1 + q) ** r * core / (1 - q) ** n


def zeta_special_value_suite(grid: dict, tol: float) -> IdentityReport:
    worst = 0.0
    points = 0
    for q in grid["zeta_q"]:
        ctx = EvalContext(q)
        for n, r, x in itertools.product(grid["zeta_n"], grid["zeta_r"],
                                         grid["zeta_x"]):
            poly = euler_poly_r(n, r, x, ctx)
            interp = zeta_r(complex(-n), r, x, ctx).value
            worst = max(worst, _residual(interp, poly))
            points += 1
    return IdentityReport("zeta-special-values", points, worst, tol)


def distribution_suite(grid: dict, tol: float) -> IdentityReport:
    worst = 0.0
    points = 0
    for q in grid["dist_q"]:
        ctx = EvalContext(q)
        for n, r, f, x in itertools.product(grid["dist_n"], grid["dist_r"],
                                            grid["dist_f"], grid["dist_x"]):
            base = euler_poly_r(n, r, x, ctx)
            worst = max(worst, _residual(distribution_rhs(n, r, x, f, ctx), base))
            worst = max(worst, _residual(euler_poly_r_blocked(n, r, x, f, ctx), base))
            points += 2
    return IdentityReport("distribution", points, worst, tol)


def character_distribution_suite(grid: dict, tol: float) -> IdentityReport:
    worst = 0.0
    points = 0
    chars = _characters_for(grid["char_moduli"])
    for q in grid["char_q"]:
        ctx = EvalContext(q)
        for chi, n, r, x in itertools.product(chars, grid["char_n"],
                                              grid["char_r"], grid["char_x"]):
            base = euler_poly_chi_r(n, r, x, chi, ctx)
            worst = max(worst,
                        _residual(distribution_rhs_chi(n, r, x, chi, ctx), base))
            worst = max(worst,
                        _residual(euler_poly_chi_r_literal(n, r, x, chi, ctx), base))
            points += 2
    return IdentityReport("character-distribution", points, worst, tol)


def l_special_value_suite(grid: dict, tol: float) -> IdentityReport:
    worst = 0.0
    points = 0
    chars = _characters_for(grid["char_moduli"])
    for q in grid["l_q"]:
        ctx = EvalContext(q)
        for chi, n, r, x in itertools.product(chars, grid["l_n"],
                                              grid["l_r"], grid["l_x"]):
            poly = euler_poly_chi_r(n, r, x, chi, ctx)
            interp = l_r(complex(-n), r, x, chi, ctx).value
            worst = max(worst, _residual(interp, poly))
            points += 1
    return IdentityReport("l-special-values", points, worst, tol)


def run_all(grid: str = "small", tol: float = 1e-9) -> list[IdentityReport]:
    """Run the four identity blocks on the named grid size."""
    if grid not in ("small", "full"):
        raise ValueError(f"grid must be 'small' or 'full', got {grid!r}")
    g = SMALL_GRID if grid == "small" else FULL_GRID
    return [
        zeta_special_value_suite(g, tol),
        distribution_suite(g, tol),
        character_distribution_suite(g, tol),
        l_special_value_suite(g, tol),
    ]

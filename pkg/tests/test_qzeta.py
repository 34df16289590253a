"""Tests for the zeta/l continuation and its independent oracles."""

import itertools

import numpy as np
import pytest

from qezeta import (ConvergenceError, DomainError, EvalContext, complex_pow,
                    enumerate_prime_characters, euler_poly_chi_r, euler_poly_r,
                    l, l_r, mellin_oracle, neville_extrapolate, principal,
                    q_number, special_value_residual, zeta, zeta_r)

CTX5 = EvalContext(0.5)
CHI3 = enumerate_prime_characters(3)[1]
CHARS35 = (principal(1), *enumerate_prime_characters(3),
           *enumerate_prime_characters(5))


def zeta_abel_in_t(s, r, x, ctx, m_max=2500):
    """Abel-summed defining series of the zeta function at Re(s) arbitrary:
    sum_m C(m+r-1,m) (-t)^m [m+x]_q^{-s} on a t-grid, extrapolated to 1."""
    q = ctx.q.real
    grid = (0.90, 0.92, 0.94, 0.96, 0.98)
    ms = np.arange(m_max, dtype=float)
    coefs = np.ones(m_max)
    for m in range(1, m_max):
        coefs[m] = coefs[m - 1] * (m + r - 1) / m
    base = (1.0 - q ** (ms + x)) / (1.0 - q)
    powers = np.exp(-complex(s) * np.log(base))
    svals = [complex(np.sum(coefs * (-t) ** ms * powers)) for t in grid]
    ext = neville_extrapolate(grid, svals, 1.0)
    return (1 + ctx.q) ** r * ext


def l_r_tuples(s, r, x, chi, ctx):
    """Conductor reduction with the r-fold sum enumerated tuple by tuple."""
    f = chi.modulus
    ctx_f = ctx.rebase(f)
    q = ctx.q
    pref = complex_pow(q_number(f, ctx), -complex(s)) \
        * ((1 + q) / (1 + ctx_f.q)) ** r
    total = 0j
    for tup in itertools.product(range(f), repeat=r):
        cw = 1 + 0j
        for a in tup:
            cw *= chi.values[a]
        if cw == 0:
            continue
        sa = sum(tup)
        term = cw * zeta_r(s, r, (complex(x) + sa) / f, ctx_f).value
        total = total - term if (sa & 1) else total + term
    return pref * total


class TestZeta:
    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_value_at_zero(self, r):
        res = zeta_r(0, r, 1, CTX5)
        assert res.value == ((1 + 0.5) / 2) ** r + 0j
        assert res.terms_used == 1 and res.err_estimate == 0.0

    def test_special_value_spot(self):
        res = zeta_r(-1, 1, 1, CTX5)
        assert abs(res.value - 0.5) < 1e-13

    def test_exact_truncation_at_negative_integers(self):
        for q in (0.3, 0.5, 0.9):
            ctx = EvalContext(q)
            for n, r, x in itertools.product(range(9), (1, 2, 3), (0.5, 1.0, 2.0)):
                res = zeta_r(complex(-n), r, x, ctx)
                assert res.terms_used == n + 1
                assert res.err_estimate == 0.0
                poly = euler_poly_r(n, r, x, ctx)
                assert abs(res.value - poly) <= 1e-12 * (1 + abs(poly))

    def test_delegation_is_bitwise(self):
        for s in (-2, 0.5, 1.5 + 0.5j):
            a = zeta(s, 1.0, CTX5)
            b = zeta_r(s, 1, 1.0, CTX5)
            assert a.value == b.value
            assert a.err_estimate == b.err_estimate
            assert a.terms_used == b.terms_used

    def test_domain_guard(self):
        with pytest.raises(DomainError):
            zeta_r(2, 1, 0, CTX5)
        with pytest.raises(DomainError):
            zeta_r(2, 1, -1, CTX5)

    def test_against_abel_summed_series(self):
        # independent route at general s (not a negative integer)
        for s in (2.0, 1.5 + 0.5j, 3.0 - 1.0j):
            for q in (0.3, 0.5):
                ctx = EvalContext(q)
                a = zeta_r(s, 2, 1.0, ctx).value
                b = zeta_abel_in_t(s, 2, 1.0, ctx)
                assert abs(a - b) <= 1e-6 * (1 + abs(a))

    def test_conjugation_symmetry(self):
        for s in (1.5 + 0.5j, -2.5 + 1j, 0.5 - 3j):
            for q in (0.5, 0.4 + 0.3j):
                a = zeta_r(s.conjugate(), 2, 1.0, EvalContext(q.conjugate())).value
                b = zeta_r(s, 2, 1.0, EvalContext(q)).value.conjugate()
                assert abs(a - b) <= 1e-11 * (1 + abs(b))

    def test_truncation_honesty(self):
        for s in (1.5, 2.5 + 1j, 0.5 - 2j):
            for q in (0.3, 0.5, 0.7):
                loose = zeta_r(s, 2, 1.0, EvalContext(q, tol=1e-8))
                tight = zeta_r(s, 2, 1.0, EvalContext(q, tol=1e-13))
                assert abs(loose.value - tight.value) <= loose.err_estimate
                doubled = zeta_r(s, 2, 1.0, EvalContext(q, tol=1e-8, max_terms=20000))
                assert abs(loose.value - doubled.value) <= loose.err_estimate

    def test_entirety_probe(self):
        ctx = EvalContext(0.5)
        for re_ in np.linspace(-6, 6, 21):
            for im_ in np.linspace(-6, 6, 21):
                for r in (1, 2, 3):
                    res = zeta_r(complex(re_, im_), r, 1.0, ctx)
                    assert res.err_estimate <= 1e-10

    def test_convergence_error_with_tiny_budget(self):
        with pytest.raises(ConvergenceError):
            zeta_r(30 + 30j, 1, 1.0, EvalContext(0.5, max_terms=8))


class TestL:
    def test_principal_one_is_bitwise_zeta(self):
        for s in (-3, 0.5, 1.5 + 1j):
            a = l_r(s, 2, 1.0, principal(1), CTX5)
            b = zeta_r(s, 2, 1.0, CTX5)
            assert a.value == b.value and a.terms_used == b.terms_used

    def test_delegation(self):
        a = l(1.5, 1.0, CHI3, CTX5)
        b = l_r(1.5, 1, 1.0, CHI3, CTX5)
        assert a.value == b.value

    def test_hand_value_at_zero(self):
        res = l_r(0, 1, 0.5, CHI3, CTX5)
        assert abs(res.value - (-1.5)) < 1e-12

    def test_special_values_match_generalized_polynomials(self):
        worst = 0.0
        for q in (0.3, 0.5, 0.9):
            ctx = EvalContext(q)
            for chi, n, r, x in itertools.product(
                    CHARS35, range(7), (1, 2), (0.5, 1.0, 2.0)):
                interp = l_r(complex(-n), r, x, chi, ctx).value
                poly = euler_poly_chi_r(n, r, x, chi, ctx)
                worst = max(worst, abs(interp - poly) / (1 + abs(poly)))
        assert worst <= 1e-9

    def test_collapsed_matches_tuple_enumeration(self):
        for chi in CHARS35:
            for s in (-2, 1.5):
                a = l_r(s, 2, 0.5, chi, CTX5).value
                b = l_r_tuples(s, 2, 0.5, chi, CTX5)
                assert abs(a - b) <= 1e-12 * (1 + abs(b))

    def test_x_zero_allowed_for_nontrivial_conductor(self):
        # chi(0) = 0 removes the only nonpositive shift
        res = l_r(1.5, 1, 0.0, CHI3, CTX5)
        assert abs(res.value) < 10


class TestMellinOracle:
    def test_spot_s2(self):
        a = mellin_oracle(2, 1, 1, CTX5)
        b = zeta_r(2, 1, 1, CTX5).value
        assert abs(a - b) <= 1e-6

    def test_spot_order_two(self):
        ctx = EvalContext(0.3)
        a = mellin_oracle(1.5, 2, 0.5, ctx)
        b = zeta_r(1.5, 2, 0.5, ctx).value
        assert abs(a - b) <= 1e-6

    def test_spot_complex_s(self):
        a = mellin_oracle(1 + 1j, 1, 1, CTX5)
        b = zeta(1 + 1j, 1, CTX5).value
        assert abs(a - b) <= 1e-5

    def test_spot_character(self):
        a = mellin_oracle(1.5, 2, 0.5, CTX5, CHI3)
        b = l_r(1.5, 2, 0.5, CHI3, CTX5).value
        assert abs(a - b) <= 1e-5

    def test_preconditions(self):
        with pytest.raises(DomainError):
            mellin_oracle(-1.0, 1, 1, CTX5)
        with pytest.raises(DomainError):
            mellin_oracle(0, 1, 1, CTX5)
        with pytest.raises(DomainError):
            mellin_oracle(2, 1, 1, EvalContext(0.4 + 0.3j))
        with pytest.raises(DomainError):
            mellin_oracle(2, 1, -1, CTX5)


class TestSpecialValueResidual:
    def test_exact_zero_at_degree_zero(self):
        for r in (1, 2, 3):
            assert special_value_residual(0, r, 1.0, CTX5) == 0.0

    def test_small_at_interior_point(self):
        assert special_value_residual(4, 2, 1.5, EvalContext(0.7)) <= 1e-10

    def test_character_version(self):
        assert special_value_residual(3, 1, 0.5, CTX5, CHI3) <= 1e-9

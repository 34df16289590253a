"""Tests for the q-arithmetic primitives."""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qezeta import (BranchError, DomainError, EvalContext, PoleError,
                    complex_pow, gamma, gen_binomial, neville_extrapolate,
                    q_number, validate_domain)

finite = st.floats(min_value=-50, max_value=50, allow_nan=False)
qdisk = st.builds(complex,
                  st.floats(min_value=-0.7, max_value=0.7),
                  st.floats(min_value=-0.7, max_value=0.7)
                  ).filter(lambda z: 1e-3 < abs(z) < 0.95)


class TestEvalContext:
    def test_defaults(self):
        ctx = EvalContext(0.5)
        assert ctx.q == 0.5 + 0j
        assert ctx.tol == 1e-10
        assert ctx.max_terms == 10000

    @pytest.mark.parametrize("q", [1.0, 1.5, -1.0, 1j, 0.8 + 0.7j])
    def test_rejects_q_outside_disk(self, q):
        with pytest.raises(DomainError, match=r"\|q\| < 1"):
            EvalContext(q)

    def test_rejects_zero_q(self):
        with pytest.raises(DomainError):
            EvalContext(0.0)

    @pytest.mark.parametrize("tol", [0.0, -1e-3, 1.0, 2.0])
    def test_rejects_bad_tol(self, tol):
        with pytest.raises(DomainError, match="tol"):
            EvalContext(0.5, tol=tol)

    @pytest.mark.parametrize("mt", [0, 7, -5, 10.5])
    def test_rejects_bad_max_terms(self, mt):
        with pytest.raises(DomainError, match="max_terms"):
            EvalContext(0.5, max_terms=mt)

    def test_rebase(self):
        ctx = EvalContext(0.5, tol=1e-8, max_terms=256)
        sub = ctx.rebase(3)
        assert sub.q == 0.125 + 0j
        assert sub.tol == 1e-8 and sub.max_terms == 256


class TestQNumber:
    def test_one_is_one_for_all_q(self):
        assert q_number(1, EvalContext(0.5)) == 1 + 0j
        assert q_number(1, EvalContext(0.3 + 0.1j)) == 1 + 0j

    def test_zero_is_empty_sum(self):
        assert q_number(0, EvalContext(0.3 + 0.1j)) == 0j

    def test_half_at_quarter(self):
        # (1 - 0.25^0.5) / 0.75 = 0.5/0.75
        val = q_number(0.5, EvalContext(0.25))
        assert abs(val - 2 / 3) < 1e-15

    @pytest.mark.parametrize("q", [0.5, 0.9, -0.4, 0.3 + 0.2j])
    def test_small_integer_path_is_the_geometric_sum(self, q):
        ctx = EvalContext(q)
        for n in (0, 1, 2, 5, 17, 64):
            acc = 0j
            p = 1 + 0j
            for _ in range(n):
                acc += p
                p *= complex(q)
            assert q_number(n, ctx) == acc

    @settings(max_examples=100, deadline=None)
    @given(x=st.floats(min_value=0.01, max_value=20), q=qdisk)
    def test_conjugation_symmetry(self, x, q):
        a = q_number(x, EvalContext(q.conjugate()))
        b = q_number(x, EvalContext(q)).conjugate()
        assert abs(a - b) <= 1e-14 * (1 + abs(b))


class TestComplexPow:
    def test_identity(self):
        z = 1.7 - 0.3j
        assert complex_pow(z, 1) == z

    def test_square_root(self):
        assert abs(complex_pow(4, 0.5) - 2) < 1e-15

    def test_euler_identity(self):
        assert abs(complex_pow(math.e, 0.5j * math.pi) - 1j) < 1e-15

    def test_branch_error_on_cut(self):
        with pytest.raises(BranchError):
            complex_pow(-1.0, 0.5)

    def test_integer_power_on_cut_is_fine(self):
        assert complex_pow(-2.0, 3) == -8 + 0j

    def test_zero_base(self):
        assert complex_pow(0, 2) == 0j
        assert complex_pow(0, 0.5 + 1j) == 0j
        with pytest.raises(DomainError):
            complex_pow(0, 0)
        with pytest.raises(DomainError):
            complex_pow(0, -1)

    def test_integer_path_matches_builtin(self):
        z = 0.3 + 0.7j
        for n in (-5, -1, 0, 2, 7, 64):
            assert complex_pow(z, n) == z ** n


class TestGenBinomial:
    def test_empty_product(self):
        assert gen_binomial(2.5 + 1j, 0) == 1 + 0j

    def test_integer_case(self):
        assert gen_binomial(3, 2) == 6 + 0j  # C(4, 2)

    def test_vanishes_past_negative_integer(self):
        assert gen_binomial(-1, 2) == 0j
        assert gen_binomial(-3, 4) == 0j

    def test_reduces_to_signed_binomials(self):
        for n in range(0, 31):
            for k in range(0, n + 1):
                expect = (-1) ** k * math.comb(n, k)
                assert gen_binomial(-n, k) == complex(expect)

    @settings(max_examples=100, deadline=None)
    @given(s=st.builds(complex, finite, finite), k=st.integers(1, 20))
    def test_recurrence_is_the_computation(self, s, k):
        assert gen_binomial(s, k) == gen_binomial(s, k - 1) * (s + (k - 1)) / k


class TestGamma:
    def test_factorials(self):
        assert abs(gamma(5) - 24) <= 24 * 1e-12
        assert abs(gamma(1) - 1) <= 1e-12

    def test_half(self):
        assert abs(gamma(0.5) - math.sqrt(math.pi)) <= 1e-12

    def test_reflection_spot(self):
        assert abs(gamma(-0.5) - (-2 * math.sqrt(math.pi))) <= 1e-11

    def test_complex_spot(self):
        # literature value of gamma(1+i)
        want = 0.49801566811835607 - 0.15494982830181067j
        assert abs(gamma(1 + 1j) - want) <= 1e-12 * abs(want)

    def test_recurrence_on_rectangle(self):
        worst = 0.0
        re = [0.25 + 0.25 * i for i in range(24)]
        im = [-4 + 0.5 * i for i in range(17)]
        for a in re:
            for b in im:
                s = complex(a, b)
                g1 = gamma(s + 1)
                worst = max(worst, abs(g1 - s * gamma(s)) / abs(g1))
        assert worst <= 1e-10

    @pytest.mark.parametrize("s", [0, -1, -2, -17])
    def test_poles(self, s):
        with pytest.raises(PoleError):
            gamma(s)


class TestValidateDomain:
    def test_real_positive_x_ok(self):
        validate_domain(2, 1, EvalContext(0.5))

    def test_x_zero_rejected(self):
        with pytest.raises(DomainError, match="decay"):
            validate_domain(2, 0, EvalContext(0.5))

    def test_complex_case_ok(self):
        validate_domain(1 + 1j, 0.5, EvalContext(0.3 + 0.2j))

    def test_negative_x_rejected(self):
        with pytest.raises(DomainError):
            validate_domain(2, -1, EvalContext(0.5))


class TestNeville:
    def test_exact_on_polynomial(self):
        xs = [0.90, 0.92, 0.94, 0.96, 0.98]
        ys = [3 * t ** 3 - t + 2 for t in xs]
        assert abs(neville_extrapolate(xs, ys, 1.0) - 4.0) < 1e-12

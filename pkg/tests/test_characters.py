"""Tests for Dirichlet character construction, validation and enumeration."""

import math

import pytest

from qezeta import (ValidationError, chi_at, enumerate_prime_characters,
                    from_generator, from_table, new_character, principal,
                    to_spec)


class TestPrincipal:
    def test_modulus_one(self):
        chi = principal(1)
        assert chi.values == (1 + 0j,)
        assert chi.order == 1
        assert all(chi_at(chi, m) == 1 for m in range(10))

    def test_modulus_three(self):
        assert principal(3).values == (0j, 1 + 0j, 1 + 0j)

    def test_modulus_nine_kills_multiples_of_three(self):
        vals = principal(9).values
        assert [v.real for v in vals] == [0, 1, 1, 0, 1, 1, 0, 1, 1]

    def test_even_modulus_rejected(self):
        with pytest.raises(ValidationError, match="odd"):
            principal(4)


class TestFromTable:
    def test_principal_mod_three(self):
        chi = from_table(3, [0, 1, 1])
        assert chi.order == 1

    def test_nonprincipal_mod_three(self):
        chi = from_table(3, [0, 1, -1])
        assert chi.order == 2
        assert chi_at(chi, 5) == -1 + 0j   # 5 = 2 (mod 3)
        assert chi_at(chi, 3) == 0j

    def test_even_conductor_rejected(self):
        with pytest.raises(ValidationError, match="odd"):
            from_table(2, [0, 1])

    def test_wrong_length_rejected(self):
        with pytest.raises(ValidationError, match="value count"):
            from_table(3, [0, 1])

    def test_support_violation_named(self):
        with pytest.raises(ValidationError, match="vanishing off units"):
            from_table(9, [0, 1, 1, 1, 1, 1, 0, 1, 1])

    def test_unit_modulus_violation_named(self):
        with pytest.raises(ValidationError, match="unit modulus"):
            from_table(3, [0, 1, 0.5])

    def test_normalization_violation_named(self):
        with pytest.raises(ValidationError, match="normalization"):
            from_table(3, [0, -1, 1])

    def test_multiplicativity_violation_named(self):
        # unit-modulus values, chi(1) = 1, but chi(2)^2 != chi(4 mod 3)
        with pytest.raises(ValidationError, match="multiplicativity"):
            from_table(3, [0, 1, 1j])


class TestGenerator:
    def test_mod_three_enumeration(self):
        chars = enumerate_prime_characters(3)
        assert len(chars) == 2
        assert chars[0].values == (0j, 1 + 0j, 1 + 0j)
        assert chars[1].values == (0j, 1 + 0j, -1 + 0j)

    def test_mod_five_has_order_four_character(self):
        chars = enumerate_prime_characters(5)
        assert len(chars) == 4
        orders = sorted(c.order for c in chars)
        assert orders == [1, 2, 4, 4]
        # 2 is a primitive root mod 5; the order-4 characters send it to +-i
        for c in chars:
            if c.order == 4:
                assert abs(c.values[2] - 1j) < 1e-12 or abs(c.values[2] + 1j) < 1e-12

    def test_non_prime_rejected(self):
        with pytest.raises(ValidationError, match="prime"):
            enumerate_prime_characters(9)

    def test_bad_primitive_root_rejected(self):
        with pytest.raises(ValidationError, match="primitive root"):
            from_generator(7, 1, primitive_root=2)  # ord(2 mod 7) = 3

    def test_bad_index_rejected(self):
        with pytest.raises(ValidationError, match="index"):
            from_generator(5, 4)


class TestInvariants:
    @pytest.mark.parametrize("f", [3, 5, 7, 11])
    def test_multiplicativity_everywhere(self, f):
        for chi in enumerate_prime_characters(f):
            v = chi.values
            for a in range(f):
                for b in range(f):
                    assert abs(v[(a * b) % f] - v[a] * v[b]) <= 1e-12

    @pytest.mark.parametrize("f", [3, 5, 7])
    def test_orthogonality_of_nonprincipal(self, f):
        for chi in enumerate_prime_characters(f)[1:]:
            assert abs(sum(chi.values)) <= 1e-10

    @pytest.mark.parametrize("f", [3, 5, 7])
    def test_enumeration_is_distinct_and_complete(self, f):
        chars = enumerate_prime_characters(f)
        assert len(chars) == f - 1
        tables = {tuple((round(v.real, 9), round(v.imag, 9)) for v in c.values)
                  for c in chars}
        assert len(tables) == f - 1

    @pytest.mark.parametrize("f", [3, 5, 7])
    def test_order_is_minimal_root_of_unity_power(self, f):
        for chi in enumerate_prime_characters(f):
            units = [a for a in range(f) if math.gcd(a, f) == 1]
            assert all(abs(chi.values[a] ** chi.order - 1) <= 1e-12 for a in units)
            for m in range(1, chi.order):
                assert any(abs(chi.values[a] ** m - 1) > 1e-9 for a in units)

    @pytest.mark.parametrize("f", [3, 5, 7])
    def test_round_trip_through_spec(self, f):
        for chi in enumerate_prime_characters(f):
            again = new_character(to_spec(chi))
            assert again.modulus == chi.modulus
            assert again.order == chi.order
            assert all(abs(a - b) <= 1e-14
                       for a, b in zip(again.values, chi.values))


class TestNewCharacter:
    def test_table_form(self):
        chi = new_character({"modulus": 3, "values": [[0, 0], [1, 0], [-1, 0]]})
        assert chi.order == 2

    def test_generator_form(self):
        chi = new_character({"modulus": 5, "index": 1})
        assert chi.order == 4

    def test_missing_keys_rejected(self):
        with pytest.raises(ValidationError):
            new_character({"modulus": 3})
        with pytest.raises(ValidationError):
            new_character({"values": [[1, 0]]})

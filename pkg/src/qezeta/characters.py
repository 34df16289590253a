"""Dirichlet characters with odd modulus, stored as explicit value tables.

A character is kept as the tuple (chi(0), ..., chi(f-1)) of complex values
plus its multiplicative order.  Tables can be ingested and validated from
JSON-style dicts, or generated for odd prime moduli from a primitive root.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, ValidationError

_UNIT_TOL = 1e-12        # |chi(a)| = 1 and multiplicativity slack
_ORDER_TOL = 1e-10       # slack allowed when hunting the order of a table
_SNAP_TOL = 1e-15        # snap generated root-of-unity components to 0/±1


@dataclass(frozen=True)
class DirichletCharacter:
    """A validated character mod an odd f, extended f-periodically to all m >= 0."""

    modulus: int
    values: tuple[complex, ...]
    order: int

    def __call__(self, m: int) -> complex:
        return self.values[m % self.modulus]


def chi_at(chi: DirichletCharacter, m: int) -> complex:
    """chi(m) for any integer m >= 0 via f-periodic extension."""
    return chi.values[m % chi.modulus]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _euler_phi(n: int) -> int:
    phi = n
    for p in _prime_factors(n):
        phi -= phi // p
    return phi


def _is_primitive_root(g: int, p: int) -> bool:
    if math.gcd(g, p) != 1:
        return False
    return all(pow(g, (p - 1) // pf, p) != 1 for pf in _prime_factors(p - 1))


def least_primitive_root(p: int) -> int:
    """Smallest primitive root of an odd prime p."""
    if not (_is_prime(p) and p % 2 == 1):
        raise DomainError(f"modulus must be an odd prime, got {p}")
    for g in range(2, p):
        if _is_primitive_root(g, p):
            return g
    raise DomainError(f"no primitive root found for {p}")  # unreachable for prime p


def _snap(v: complex) -> complex:
    def comp(c: float) -> float:
        for target in (0.0, 1.0, -1.0):
            if abs(c - target) < _SNAP_TOL:
                return target
        return c
    return complex(comp(v.real), comp(v.imag))


def _check_modulus(f) -> int:
    if not (isinstance(f, int) and f >= 1):
        raise ValidationError(f"modulus must be a positive integer, got {f!r}")
    if f % 2 == 0:
        raise ValidationError(f"modulus must be odd, got {f}")
    return f


def _find_order(f: int, values: tuple[complex, ...]) -> int:
    units = [a for a in range(f) if math.gcd(a, f) == 1]
    for m in sorted(d for d in range(1, _euler_phi(f) + 1)
                    if _euler_phi(f) % d == 0):
        if all(abs(values[a] ** m - 1) <= _ORDER_TOL for a in units):
            return m
    raise ValidationError("order: no power of the table is the principal character")


def from_table(modulus: int, values) -> DirichletCharacter:
    """Build a character from an explicit value table, validating every invariant.

    Validation order (the first violated invariant is named in the error):
    odd modulus, value count, vanishing off units, unit modulus on units,
    normalization chi(1) = 1, multiplicativity, order.
    """
    f = _check_modulus(modulus)
    vals = tuple(complex(v) for v in values)
    if len(vals) != f:
        raise ValidationError(f"value count: expected {f} values, got {len(vals)}")
    for a in range(f):
        if math.gcd(a, f) > 1:
            if vals[a] != 0:
                raise ValidationError(
                    f"vanishing off units: chi({a}) = {vals[a]!r} but gcd({a},{f}) > 1")
        else:
            if abs(abs(vals[a]) - 1.0) > _UNIT_TOL:
                raise ValidationError(
                    f"unit modulus: |chi({a})| = {abs(vals[a])!r} differs from 1")
    if f > 1 and abs(vals[1] - 1) > _UNIT_TOL:
        raise ValidationError(f"normalization: chi(1) = {vals[1]!r} must be 1")
    if f == 1 and abs(vals[0] - 1) > _UNIT_TOL:
        raise ValidationError(f"normalization: chi(0) = {vals[0]!r} must be 1 for f = 1")
    for a in range(f):
        for b in range(f):
            if abs(vals[(a * b) % f] - vals[a] * vals[b]) > _UNIT_TOL:
                raise ValidationError(
                    f"multiplicativity: chi({a}*{b}) != chi({a})chi({b})")
    return DirichletCharacter(f, vals, _find_order(f, vals))


def from_generator(modulus: int, index: int,
                   primitive_root: int | None = None) -> DirichletCharacter:
    """Character j on an odd prime modulus: chi(g^t) = exp(2 pi i j t / (f-1))."""
    f = _check_modulus(modulus)
    if not _is_prime(f):
        raise ValidationError(f"generator form requires an odd prime modulus, got {f}")
    if not (isinstance(index, int) and 0 <= index < f - 1):
        raise ValidationError(
            f"index must be an integer in [0, {f - 2}], got {index!r}")
    if primitive_root is None:
        g = least_primitive_root(f)
    else:
        g = primitive_root
        if not (isinstance(g, int) and 1 < g < f and _is_primitive_root(g, f)):
            raise ValidationError(f"{g!r} is not a primitive root mod {f}")
    vals = [0j] * f
    a = 1
    for t in range(f - 1):
        k = (index * t) % (f - 1)
        vals[a] = _snap(cmath.exp(2j * math.pi * k / (f - 1)))
        a = (a * g) % f
    order = (f - 1) // math.gcd(index, f - 1)
    return DirichletCharacter(f, tuple(vals), order)


def principal(f: int) -> DirichletCharacter:
    """The principal character mod f: 1 on units, 0 elsewhere."""
    f = _check_modulus(f)
    vals = tuple((1 + 0j) if math.gcd(a, f) == 1 else 0j for a in range(f))
    return DirichletCharacter(f, vals, 1)


def enumerate_prime_characters(f: int) -> list[DirichletCharacter]:
    """All f-1 characters mod an odd prime f; index 0 is the principal one."""
    f = _check_modulus(f)
    if not _is_prime(f):
        raise ValidationError(f"enumeration requires an odd prime modulus, got {f}")
    g = least_primitive_root(f)
    return [from_generator(f, j, g) for j in range(f - 1)]


def new_character(spec: dict) -> DirichletCharacter:
    """Ingest a character from its external description.

    Either {"modulus": f, "values": [[re, im], ...]} (explicit table) or
    {"modulus": f, "index": j, "primitive_root": g?} (odd prime generator).
    """
    if not isinstance(spec, dict) or "modulus" not in spec:
        raise ValidationError("character spec must be a dict with a 'modulus' key")
    f = spec["modulus"]
    if "values" in spec:
        raw = spec["values"]
        if not isinstance(raw, list):
            raise ValidationError("'values' must be a list of [re, im] pairs")
        vals = []
        for entry in raw:
            if isinstance(entry, (int, float)):
                vals.append(complex(entry))
            elif isinstance(entry, (list, tuple)) and len(entry) == 2:
                vals.append(complex(float(entry[0]), float(entry[1])))
            else:
                raise ValidationError(f"bad value entry {entry!r}: expected [re, im]")
        return from_table(f, vals)
    if "index" in spec:
        return from_generator(f, spec["index"], spec.get("primitive_root"))
    raise ValidationError("character spec needs either 'values' or 'index'")


def to_spec(chi: DirichletCharacter) -> dict:
    """External table form of a character (round-trips through new_character)."""
    return {
        "modulus": chi.modulus,
        "values": [[v.real, v.imag] for v in chi.values],
    }

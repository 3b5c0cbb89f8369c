"""Integer arithmetic for the weight families.

The two built-in families are the divisor-power sums ``sigma_d(n)`` and the
pure powers ``psi_d(n) = n**d``.  A custom family is a finite table of
positive integers with value 1 at ``n = 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Mapping


class FamilyKind(enum.Enum):
    SIGMA = "sigma"
    PSI = "psi"
    CUSTOM = "custom"


@dataclass(frozen=True)
class FamilySpec:
    """A weight family ``g_d`` at a fixed degree ``d``.

    ``custom_values`` is stored as a sorted tuple of ``(n, value)`` pairs so
    the spec stays hashable; build it with :meth:`custom`.
    """

    kind: FamilyKind
    d: int
    custom_values: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self) -> None:
        if self.d < 0:
            raise ValueError(f"degree must be nonnegative, got {self.d}")
        if self.kind is FamilyKind.CUSTOM:
            if not self.custom_values:
                raise ValueError("custom family needs a value table")
            table = dict(self.custom_values)
            if table.get(1) != 1:
                raise ValueError("custom family must have value 1 at n=1")
            if any(v < 1 for v in table.values()):
                raise ValueError("custom family values must be >= 1")
        elif self.custom_values is not None:
            raise ValueError("custom_values only allowed for the custom family")

    @classmethod
    def sigma(cls, d: int) -> FamilySpec:
        return cls(FamilyKind.SIGMA, d)

    @classmethod
    def psi(cls, d: int) -> FamilySpec:
        return cls(FamilyKind.PSI, d)

    @classmethod
    def custom(cls, values: Mapping[int, int], d: int = 0) -> FamilySpec:
        return cls(FamilyKind.CUSTOM, d, tuple(sorted(values.items())))

    @classmethod
    def of(cls, family: str | FamilyKind, d: int) -> FamilySpec:
        """Build a sigma/psi spec from its name (``"sigma"`` or ``"psi"``)."""
        kind = FamilyKind(family)
        if kind is FamilyKind.CUSTOM:
            raise ValueError("use FamilySpec.custom for custom tables")
        return cls(kind, d)

    def at_degree(self, d: int) -> FamilySpec:
        if self.kind is FamilyKind.CUSTOM:
            raise ValueError("a custom table has no other degrees")
        return FamilySpec(self.kind, d)

    @property
    def label(self) -> str:
        return f"{self.kind.value}_{self.d}"


def _check_positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    for k in range(1, isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return tuple(small + large[::-1])


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in ascending order."""
    _check_positive(n)
    return list(_divisors(n))


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    _check_positive(n)
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def g_value(spec: FamilySpec, n: int) -> int:
    """The weight ``g_d(n)`` as an exact integer."""
    _check_positive(n)
    if spec.kind is FamilyKind.SIGMA:
        return sum(ell**spec.d for ell in _divisors(n))
    if spec.kind is FamilyKind.PSI:
        return n**spec.d
    table = dict(spec.custom_values or ())
    try:
        return table[n]
    except KeyError:
        raise KeyError(f"custom family has no value at n={n}") from None


@lru_cache(maxsize=None)
def alpha(spec: FamilySpec, n: int) -> int:
    """Moebius transform ``sum_{l | n} mu(l) g_d(n/l)``."""
    _check_positive(n)
    return sum(mobius(ell) * g_value(spec, n // ell) for ell in _divisors(n))


def check_condition(spec: FamilySpec, n: int, base: FamilySpec | None = None) -> bool:
    """Whether ``0 <= g_d(n) - n^d <= (g_0(n) - 1)(n - 1)^d`` holds.

    ``base`` is the degree-0 member of the family; it defaults to
    ``spec.at_degree(0)`` and must be given explicitly for custom tables.
    """
    if n < 2:
        raise ValueError(f"condition is stated for n >= 2, got {n}")
    if base is None:
        base = spec.at_degree(0)
    excess = g_value(spec, n) - n**spec.d
    return 0 <= excess <= (g_value(base, n) - 1) * (n - 1) ** spec.d

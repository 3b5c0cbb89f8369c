"""Truncated power series over exact rationals.

Every table is computed up to an explicit order ``N`` and stores the
coefficients ``a_0 .. a_N`` as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Mapping, Sequence, Union

from logconcavity.arith import FamilySpec, g_value

Scalar = Union[int, Fraction]
Weights = Union[Mapping[int, Scalar], Callable[[int], Scalar]]


class SeriesKind(enum.Enum):
    EXPONENTIAL = "exp"
    GEOMETRIC = "geo"
    PRODUCT = "product"


@dataclass(frozen=True)
class CoefficientTable:
    family: FamilySpec | None
    kind: SeriesKind
    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"order {self.order} needs {self.order + 1} coefficients, got {len(self.coeffs)}")

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} outside table of order {self.order}")
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> CoefficientTable:
        if order > self.order:
            raise ValueError(f"cannot extend a table of order {self.order} to {order}")
        return CoefficientTable(self.family, self.kind, order, self.coeffs[: order + 1])

    def integers(self) -> list[int]:
        """Coefficients as ints; fails if any coefficient is not integral."""
        out = []
        for n, c in enumerate(self.coeffs):
            if c.denominator != 1:
                raise ValueError(f"coefficient {n} = {c} is not an integer")
            out.append(c.numerator)
        return out


def _getter(weights: Weights) -> Callable[[int], Scalar]:
    if callable(weights):
        return weights
    return weights.__getitem__


def _weight_list(weights: Weights, N: int) -> list[Scalar]:
    get = _getter(weights)
    w: list[Scalar] = [0]
    for n in range(1, N + 1):
        v = get(n)
        if isinstance(v, Fraction) and v.denominator == 1:
            v = v.numerator
        w.append(v)
    return w


def _check_prefix(prefix: Sequence[Fraction] | None, N: int) -> list[Fraction]:
    if not prefix:
        return [Fraction(1)]
    if prefix[0] != 1:
        raise ValueError("series prefix must start with a_0 = 1")
    return [Fraction(c) for c in prefix[: N + 1]]


def _exp_fractions(w: list[Scalar], N: int, start: list[Fraction]) -> list[Fraction]:
    f = list(start)
    for n in range(len(f), N + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            acc += w[k] * f[n - k]
        f.append(acc / n)
    return f


def _exp_scaled(w: list[int], N: int, start: list[Fraction]) -> list[Fraction]:
    # a_k = A[k] / D for a shared denominator D; D only grows when a new
    # coefficient needs it, and then every A[k] is rescaled.
    D = 1
    for c in start:
        D = D * c.denominator // gcd(D, c.denominator)
    A = [c.numerator * (D // c.denominator) for c in start]
    for n in range(len(A), N + 1):
        s = 0
        for k in range(1, n + 1):
            s += w[k] * A[n - k]
        if s % n:
            c = n // gcd(s, n)
            A = [a * c for a in A]
            D *= c
            s *= c
        A.append(s // n)
    return [Fraction(a, D) for a in A]


def exp_series(
    weights: Weights,
    N: int,
    *,
    scaled: bool | None = None,
    prefix: Sequence[Fraction] | None = None,
    family: FamilySpec | None = None,
) -> CoefficientTable:
    """Coefficients of ``exp(sum_{n>=1} w(n) t^n / n)`` up to ``t^N``.

    Uses ``n f_n = sum_{k=1}^n w(k) f_{n-k}``.  With ``scaled`` the
    recurrence runs on integers over one common denominator, which is much
    faster for long integer-weight runs; the default picks it whenever all
    weights are integers.  ``prefix`` resumes from known coefficients.
    """
    if N < 0:
        raise ValueError(f"order must be nonnegative, got {N}")
    w = _weight_list(weights, N)
    start = _check_prefix(prefix, N)
    integral = all(isinstance(v, int) for v in w)
    if scaled is None:
        scaled = integral
    if scaled and not integral:
        raise ValueError("the scaled path needs integer weights")
    coeffs = _exp_scaled(w, N, start) if scaled else _exp_fractions(w, N, start)
    return CoefficientTable(family, SeriesKind.EXPONENTIAL, N, tuple(coeffs))


def geo_series(
    weights: Weights,
    N: int,
    *,
    prefix: Sequence[Fraction] | None = None,
    family: FamilySpec | None = None,
) -> CoefficientTable:
    """Coefficients of ``1 / (1 - sum_{n>=1} w(n) t^n)`` up to ``t^N``."""
    if N < 0:
        raise ValueError(f"order must be nonnegative, got {N}")
    w = _weight_list(weights, N)
    start = _check_prefix(prefix, N)
    if all(isinstance(v, int) for v in w) and all(c.denominator == 1 for c in start):
        q: list = [c.numerator for c in start]
    else:
        q = list(start)
    for n in range(len(q), N + 1):
        s = 0
        for k in range(1, n + 1):
            s += w[k] * q[n - k]
        q.append(s)
    return CoefficientTable(family, SeriesKind.GEOMETRIC, N, tuple(Fraction(c) for c in q))


def product_series(exponents: Weights, N: int) -> CoefficientTable:
    """Expansion of ``prod_{n=1}^N (1 - t^n)^(-e_n)`` up to ``t^N``.

    The logarithm ``sum_n e_n sum_m t^(nm) / m`` is summed exactly and then
    exponentiated on the reduced-fraction path.
    """
    if N < 0:
        raise ValueError(f"order must be nonnegative, got {N}")
    get = _getter(exponents)
    log_coeffs = [Fraction(0)] * (N + 1)
    for n in range(1, N + 1):
        e = Fraction(get(n))
        if e == 0:
            continue
        for m in range(1, N // n + 1):
            log_coeffs[n * m] += e / m
    # exp(sum L_j t^j) = exp(sum (j L_j) t^j / j)
    weights = [Fraction(0)] + [j * log_coeffs[j] for j in range(1, N + 1)]
    table = exp_series(weights.__getitem__, N, scaled=False)
    return CoefficientTable(None, SeriesKind.PRODUCT, N, table.coeffs)


def p_table(
    spec: FamilySpec,
    N: int,
    *,
    scaled: bool = True,
    prefix: Sequence[Fraction] | None = None,
) -> CoefficientTable:
    """Exponential-type coefficients ``p^{g_d}(0..N)``."""
    return exp_series(lambda n: g_value(spec, n), N, scaled=scaled, prefix=prefix, family=spec)


def q_table(spec: FamilySpec, N: int, *, prefix: Sequence[Fraction] | None = None) -> CoefficientTable:
    """Geometric-type coefficients ``q^{g_d}(0..N)``."""
    return geo_series(lambda n: g_value(spec, n), N, prefix=prefix, family=spec)

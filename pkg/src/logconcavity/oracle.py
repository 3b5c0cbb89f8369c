"""Brute-force checks over ordered compositions of ``n``.

These routines never use the series recurrences.  They enumerate
compositions ``m_1 + ... + m_k = n`` (order matters) and compare what they
find with the closed forms for maximal products, their multiplicities and
the sandwich bounds on ``q_d(n)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from logconcavity.arith import FamilySpec, g_value
from logconcavity.series import q_table

MAX_STATS_N = 30
MAX_SUM_N = 20


class RangeError(ValueError):
    """Requested enumeration is outside the supported cost budget."""


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """All ``2^(n-1)`` ordered compositions of ``n >= 1``, depth first."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    stack: list[int] = []

    def walk(rest: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield tuple(stack)
            return
        for part in range(1, rest + 1):
            stack.append(part)
            yield from walk(rest - part)
            stack.pop()

    yield from walk(n)


@lru_cache(maxsize=None)
def product_distribution(n: int) -> dict[int, int]:
    """Map each attainable part-product to its number of ordered compositions.

    Conditioning on the first part gives exactly the same multiset as full
    enumeration, but with one dict entry per distinct product.
    """
    if n == 0:
        return {1: 1}
    dist: Counter[int] = Counter()
    for first in range(1, n + 1):
        for prod, count in product_distribution(n - first).items():
            dist[first * prod] += count
    return dict(dist)


@dataclass(frozen=True)
class CompositionStats:
    n: int
    max_product: int
    max_count: int
    second_product: int | None


def composition_stats(n: int, method: str = "aggregate") -> CompositionStats:
    """Maximal part-product, how many ordered compositions reach it, and the
    largest product value strictly below it.

    ``method="dfs"`` walks every composition one at a time; ``"aggregate"``
    uses :func:`product_distribution` and is what makes ``n`` near 30 cheap.
    """
    if not 2 <= n <= MAX_STATS_N:
        raise RangeError(f"composition stats need 2 <= n <= {MAX_STATS_N}, got {n}")
    if method == "dfs":
        dist: Counter[int] = Counter()
        for comp in compositions(n):
            prod = 1
            for part in comp:
                prod *= part
            dist[prod] += 1
    elif method == "aggregate":
        dist = Counter(product_distribution(n))
    else:
        raise ValueError(f"unknown method {method!r}")
    values = sorted(dist, reverse=True)
    second = values[1] if len(values) > 1 else None
    return CompositionStats(n, values[0], dist[values[0]], second)


def max_product_formula(n: int) -> int:
    if n % 3 == 0:
        return 3 ** (n // 3)
    if n % 3 == 1:
        return 4 * 3 ** ((n - 4) // 3)
    return 2 * 3 ** ((n - 2) // 3)


def second_product_formula(n: int) -> int | None:
    """Closed form of the runner-up product where one is stated."""
    if n == 4:
        return 3
    if n >= 6 and n % 3 == 0:
        return 8 * 3 ** ((n - 6) // 3)
    if n >= 7 and n % 3 == 1:
        return 10 * 3 ** ((n - 7) // 3)
    return None


def max_count_formula(n: int) -> int:
    if n % 3 == 0:
        return 1
    if n % 3 == 1:
        return (n - 1) * (n + 8) // 18
    return (n + 1) // 3


@dataclass
class CheckResult:
    passed: bool
    failure: str | None = None
    checked: int = 0
    details: list[str] = field(default_factory=list)


def check_lemma1(n_max: int, method: str = "aggregate") -> CheckResult:
    """Compare enumeration with the closed forms for ``2 <= n <= n_max``."""
    if not 4 <= n_max <= MAX_STATS_N:
        raise RangeError(f"n_max must lie in 4..{MAX_STATS_N}, got {n_max}")
    result = CheckResult(True)
    for n in range(2, n_max + 1):
        st = composition_stats(n, method)
        checks = [
            ("max", st.max_product, max_product_formula(n)),
            ("S", st.max_count, max_count_formula(n)),
        ]
        if n % 3 == 1:
            # the binomial form of the same count
            k = (n + 2) // 3
            checks.append(("S-binomial", st.max_count, (n - 1) // 3 + k * (k - 1) // 2))
        second = second_product_formula(n)
        if second is not None:
            checks.append(("second", st.second_product, second))
        for name, got, want in checks:
            result.checked += 1
            if got != want:
                result.passed = False
                result.failure = f"n={n}: {name} enumerated {got}, closed form {want}"
                return result
        result.details.append(f"n={n}: max={st.max_product} S={st.max_count} second={st.second_product}")
    return result


def composition_q(spec: FamilySpec, n: int) -> int:
    """``sum over ordered compositions of n of g(m_1) ... g(m_k)``."""
    if not 1 <= n <= MAX_SUM_N:
        raise RangeError(f"composition sums need 1 <= n <= {MAX_SUM_N}, got {n}")
    g = [0] + [g_value(spec, m) for m in range(1, n + 1)]
    total = 0
    for comp in compositions(n):
        prod = 1
        for part in comp:
            prod *= g[part]
        total += prod
    return total


def lemma2_bounds(spec: FamilySpec, n: int, q0: list[int] | None = None) -> dict[str, tuple[int, str, int]]:
    """The sandwich inequalities at ``n`` as ``name -> (lhs, op, rhs)``.

    ``q0`` is the degree-0 geometric sequence; by default it is built from
    ``spec.at_degree(0)``.
    """
    if n < 2:
        raise ValueError(f"bounds are stated for n >= 2, got {n}")
    d = spec.d
    if q0 is None:
        q0 = q_table(spec.at_degree(0), n).integers()
    qd = q_table(spec, n).integers()[n]
    top = max_product_formula(n) ** d
    bounds: dict[str, tuple[int, str, int]] = {
        "lower": (top * max_count_formula(n), "<=", qd),
        "upper": (qd, "<=", top * q0[n]),
    }
    if n == 4:
        bounds["refined"] = (qd, "<=", 2 * 4**d + 3**d * q0[4])
    elif n >= 6 and n % 3 != 2:
        bounds["refined"] = (qd, "<=", top * max_count_formula(n) + second_product_formula(n) ** d * q0[n])
    return bounds


def check_lemma2(spec: FamilySpec, n: int, q0: list[int] | None = None) -> CheckResult:
    """Exact integer check of every applicable bound at ``(d, n)``."""
    result = CheckResult(True)
    for name, (lhs, op, rhs) in lemma2_bounds(spec, n, q0).items():
        result.checked += 1
        if not lhs <= rhs:
            result.passed = False
            result.failure = f"{spec.label} n={n}: {name} bound fails ({lhs} {op} {rhs} is false)"
            return result
        result.details.append(f"{name}: ok")
    return result

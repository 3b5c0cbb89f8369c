"""Degree thresholds above which the mod-3 log-concavity pattern of the
geometric coefficients is guaranteed, and empirical checks of that pattern.

Thresholds are irrational.  They are enclosed in rigorous intervals with
``mpmath.iv`` so that a probed degree is always provably above the bound.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import floor

import mpmath
from mpmath import iv

from logconcavity.arith import FamilyKind, FamilySpec
from logconcavity.series import CoefficientTable, SeriesKind, q_table

#: working precision in bits; thresholds stay below 2**12 so this leaves
#: well over 64 fractional bits
PRECISION = 160

GROWTH_RATES = {FamilyKind.PSI: Fraction(1, 2), FamilyKind.SIGMA: Fraction(1, 3)}


class GrowthBoundViolation(ValueError):
    def __init__(self, n: int, r: Fraction) -> None:
        super().__init__(f"q_0({n}) > r^-{n} for r = {r}")
        self.n = n
        self.r = r


@dataclass(frozen=True)
class GrowthBound:
    r: Fraction
    verified_up_to: int

    def __post_init__(self) -> None:
        if not 0 < self.r <= 1:
            raise ValueError(f"growth rate must satisfy 0 < r <= 1, got {self.r}")
        if self.verified_up_to < 0:
            raise ValueError("verified_up_to must be nonnegative")


def verify_growth(q0: CoefficientTable, r: Fraction | int, N: int) -> GrowthBound:
    """Check ``q_0(n) * r^n <= 1`` exactly for ``1 <= n <= N``."""
    r = Fraction(r)
    if not 0 < r <= 1:
        raise ValueError(f"growth rate must satisfy 0 < r <= 1, got {r}")
    if q0.kind is not SeriesKind.GEOMETRIC:
        raise ValueError("growth bounds apply to geometric tables")
    if q0.family is not None and q0.family.d != 0:
        raise ValueError("growth bounds apply to the degree-0 table")
    if q0.order < N:
        raise ValueError(f"table of order {q0.order} cannot verify up to {N}")
    power = Fraction(1)
    for n in range(1, N + 1):
        power *= r
        if q0[n] * power > 1:
            raise GrowthBoundViolation(n, r)
    return GrowthBound(r, N)


@dataclass(frozen=True)
class Threshold:
    """A real number known to lie in ``[lower, upper]``."""

    lower: mpmath.mpf
    upper: mpmath.mpf

    @classmethod
    def from_interval(cls, x) -> Threshold:
        # raw endpoints, no rounding to the default 53-bit context
        a, b = x._mpi_
        return cls(mpmath.mp.make_mpf(a), mpmath.mp.make_mpf(b))

    @property
    def value(self) -> mpmath.mpf:
        with mpmath.workprec(PRECISION + 8):
            return (self.lower + self.upper) / 2

    @property
    def error(self) -> mpmath.mpf:
        """Upward bound on ``|D - value|``."""
        with _precision():
            gap = iv.mpf(self.upper) - iv.mpf(self.value)
            return mpmath.mp.make_mpf(gap._mpi_[1])

    def first_degree_above(self) -> int:
        """Smallest integer strictly greater than the whole enclosure."""
        return int(floor(self.upper)) + 1

    def __float__(self) -> float:
        return float(self.value)


@contextmanager
def _precision():
    saved = iv.prec
    iv.prec = PRECISION
    try:
        yield
    finally:
        iv.prec = saved


def _log98(x):
    return iv.log(x) / iv.log(iv.mpf(9) / 8)


def _rational(r: Fraction):
    return iv.mpf(r.numerator) / iv.mpf(r.denominator)


def congruence_case(n: int) -> str:
    if n < 3:
        raise ValueError(f"thresholds are defined for n >= 3, got {n}")
    if n == 5:
        return "n=5"
    return f"{n % 3} mod 3"


def threshold_general(n: int, r: Fraction | int, q0: CoefficientTable) -> Threshold:
    """Threshold for a family whose degree-0 geometric table obeys
    ``q_0(m) <= r^-m``; the bound is re-verified on ``q0`` up to ``n + 1``."""
    congruence_case(n)
    r = Fraction(r)
    verify_growth(q0, r, n + 1)
    with _precision():
        log_r = _log98(_rational(r))
        if n == 5:
            x = _log98(iv.mpf(2 * q0[4].numerator * q0[6].numerator))
        elif n % 3 == 0:
            x = -2 * log_r * n
        elif n % 3 == 1:
            x = _log98(iv.mpf(3)) - 2 * n * log_r - _log98(iv.mpf(n + 2))
        else:
            x = _log98(iv.mpf(2)) - (n + 1) * log_r
        return Threshold.from_interval(x)


def threshold_psi(n: int) -> Threshold:
    congruence_case(n)
    with _precision():
        log2 = _log98(iv.mpf(2))
        if n == 5:
            x = _log98(iv.mpf(512))
        elif n % 3 == 0:
            x = 2 * n * log2
        elif n % 3 == 1:
            x = 2 * n * log2 + _log98(iv.mpf(3)) - _log98(iv.mpf(n + 2))
        else:
            x = (n + 2) * log2
        return Threshold.from_interval(x)


def threshold_sigma(n: int) -> Threshold:
    congruence_case(n)
    with _precision():
        log3 = _log98(iv.mpf(3))
        if n == 5:
            x = _log98(iv.mpf(3888))
        elif n % 3 == 0:
            x = 2 * log3 * n
        elif n % 3 == 1:
            x = (2 * n + 1) * log3 - _log98(iv.mpf(n + 2))
        else:
            x = _log98(iv.mpf(2)) + (n + 1) * log3
        return Threshold.from_interval(x)


THRESHOLDS = {FamilyKind.PSI: threshold_psi, FamilyKind.SIGMA: threshold_sigma}


def delta_sign(spec: FamilySpec, n: int) -> int:
    """Sign of ``q_d(n)^2 - q_d(n-1) q_d(n+1)``."""
    q = q_table(spec, n + 1).integers()
    delta = q[n] ** 2 - q[n - 1] * q[n + 1]
    return (delta > 0) - (delta < 0)


@dataclass
class ThresholdReport:
    family: str
    n: int
    congruence_case: str
    D_value: float
    D_error_bound: float
    probe_degrees: list[int]
    observed: list[int] = field(default_factory=list)
    predicted_exception: bool = False
    verdict: str = "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return asdict(self)


def verify_theorem(family: FamilyKind | str, n: int, probe_count: int = 3) -> ThresholdReport:
    """Probe the ``probe_count`` smallest degrees strictly above the
    threshold and compare the observed deltas with the mod-3 prediction."""
    family = FamilyKind(family)
    if family not in THRESHOLDS:
        raise ValueError(f"no closed-form threshold for family {family.value}")
    if probe_count < 1:
        raise ValueError("probe_count must be at least 1")
    D = THRESHOLDS[family](n)
    first = D.first_degree_above()
    probes = list(range(first, first + probe_count))
    assert all(d > D.upper for d in probes)
    predicted = n % 3 == 1
    observed = [delta_sign(FamilySpec(family, d), n) for d in probes]
    ok = all((s < 0) == predicted for s in observed)
    return ThresholdReport(
        family=family.value,
        n=n,
        congruence_case=congruence_case(n),
        D_value=float(D.value),
        D_error_bound=float(mpmath.mpf(D.error)),
        probe_degrees=probes,
        observed=observed,
        predicted_exception=predicted,
        verdict="pass" if ok else "fail",
    )

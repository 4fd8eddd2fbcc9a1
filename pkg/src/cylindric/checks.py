"""Evidence for the bounded-entry polynomials P_{n,c} and Q_{n,c}.

``f_{n,c}`` counts cylindric partitions with entries at most ``n``; then
``P = (q^3;q^3)_n f_{n,c}`` and ``Q = (q;q)_n [z^n] G_c``. Both should be
polynomials. Truncated arithmetic can only show that a run of trailing
coefficients vanishes, so a report certifies "no nonzero coefficient in
[D+1, N)" and evaluates at q = 1 only when that window is long enough.
When it is not, the order is doubled (by default up to four times the
requested order) and the order actually used is reported.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .profiles import Profile, as_profile
from .qalg import QLaurent, QSeries, poch_finite
from .solver import solve_F, solve_G

__all__ = [
    "ConjectureReport",
    "f_nc",
    "compute_P",
    "compute_Q",
    "expected_P1",
    "expected_Q1",
    "min_window",
    "q221_cross_check",
    "conjecture_sweep",
]


def min_window(degree: int) -> int:
    """Trailing zeros required before the truncation is trusted."""
    return max(16, (degree + 1) // 2)


def expected_P1(ell: int, n: int) -> int:
    return math.comb(ell + 2, 2) ** n


def expected_Q1(ell: int, n: int) -> int | None:
    """``((l+2)(l+1)/6 - 1)^n`` when ``l`` is not a multiple of 3, else None."""
    if ell % 3 == 0:
        return None
    return ((ell + 2) * (ell + 1) // 6 - 1) ** n


@dataclass(frozen=True)
class ConjectureReport:
    kind: str  # "P" or "Q"
    profile: Profile
    n: int
    requested_order: int
    order: int
    degree: int  # last nonzero coefficient below ``order``, -1 for zero
    vanishing: bool  # no nonzero coefficient in [degree+1, order), window long enough
    nonnegative: bool
    value_at_1: int | None  # None when the vanishing check failed
    expected_at_1: int | None  # None when no closed form is claimed
    coeffs: tuple[int, ...]

    @property
    def matches_expected(self) -> bool | None:
        if self.expected_at_1 is None:
            return None
        return self.value_at_1 == self.expected_at_1

    @property
    def ok(self) -> bool:
        return self.vanishing and self.nonnegative and self.matches_expected is not False

    def polynomial(self) -> QLaurent:
        return QLaurent.from_coeffs(self.coeffs)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "profile": list(self.profile.parts),
            "n": self.n,
            "requested_order": self.requested_order,
            "order": self.order,
            "degree": self.degree,
            "vanishing_window": [self.degree + 1, self.order],
            "vanishing": self.vanishing,
            "nonnegative": self.nonnegative,
            "value_at_1": None if self.value_at_1 is None else str(self.value_at_1),
            "expected_at_1": None if self.expected_at_1 is None else str(self.expected_at_1),
            "matches_expected": self.matches_expected,
            "ok": self.ok,
            "coeffs": [str(c) for c in self.coeffs],
        }


def f_nc(c, n: int, order: int) -> QSeries:
    """Generating function of cylindric partitions with every entry ``<= n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    F = solve_F(as_profile(c), n + 1, order)
    total = QSeries.zero(order)
    for m in range(n + 1):
        total = total + F[m]
    return total


def _degree(s: QSeries) -> int:
    for i in range(len(s) - 1, -1, -1):
        if s[i]:
            return i
    return -1


def _report(kind, c, n, requested, compute, expected, max_order) -> ConjectureReport:
    if max_order is None:
        max_order = 4 * requested
    order = requested
    while True:
        series = compute(order)
        deg = _degree(series)
        vanishing = order - (deg + 1) >= min_window(deg)
        if vanishing or order >= max_order:
            break
        order = min(2 * order, max_order)
    coeffs = tuple(series.coeffs[: deg + 1])
    return ConjectureReport(
        kind=kind,
        profile=c,
        n=n,
        requested_order=requested,
        order=order,
        degree=deg,
        vanishing=vanishing,
        nonnegative=all(x >= 0 for x in coeffs),
        value_at_1=sum(coeffs) if vanishing else None,
        expected_at_1=expected,
        coeffs=coeffs,
    )


def _require_k3(c: Profile) -> None:
    if c.k != 3:
        raise ValueError(f"the P/Q polynomials are defined here for three-part profiles, got {c}")


def compute_P(c, n: int, order: int, max_order: int | None = None) -> ConjectureReport:
    """``P_{n,c} = (q^3;q^3)_n f_{n,c}``."""
    c = as_profile(c)
    _require_k3(c)
    den = poch_finite(3, 3, n)
    return _report("P", c, n, order, lambda N: den.mul_series(f_nc(c, n, N)), expected_P1(c.ell, n), max_order)


def compute_Q(c, n: int, order: int, max_order: int | None = None) -> ConjectureReport:
    """``Q_{n,c} = (q;q)_n [z^n] G_c``."""
    c = as_profile(c)
    _require_k3(c)
    if n < 0:
        raise ValueError("n must be nonnegative")
    den = poch_finite(1, 1, n)
    return _report(
        "Q", c, n, order, lambda N: den.mul_series(solve_G(c, n + 1, N)[c][n]), expected_Q1(c.ell, n), max_order
    )


def q221_cross_check(n: int, order: int) -> bool:
    """Solver ``Q_{n,(2,2,1)}`` against the triple sum with ``n1 = n``."""
    from .sums import q221_triple_sum

    rep = compute_Q((2, 2, 1), n, order)
    N = rep.order
    return rep.polynomial().to_series(N) == q221_triple_sum(n, N)


def conjecture_sweep(max_ell: int = 5, max_n: int = 5, order: int = 120):
    """P reports for every three-part profile, Q reports where a closed form is claimed."""
    from .profiles import compositions

    reports = []
    for ell in range(1, max_ell + 1):
        for c in compositions(ell, 3):
            for n in range(max_n + 1):
                reports.append(compute_P(c, n, order))
                if ell % 3:
                    reports.append(compute_Q(c, n, order))
    return reports

"""Product sides: Borodin's product for any profile and the named products."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from .profiles import Profile, as_profile, borodin_exponents, rotate
from .qalg import QSeries, _mul_one_minus_inplace, inv_poch_inf

__all__ = [
    "NamedProduct",
    "NAMED_PRODUCTS",
    "F_product",
    "G_product",
    "check_symmetry",
    "named_product",
    "lookup_product",
    "ag_product",
]


@dataclass(frozen=True)
class NamedProduct:
    """``[1/(q;q)_oo] * prod 1/(q^s; q^m)_oo`` over ``factors``."""

    name: str
    factors: tuple[tuple[int, int], ...]
    include_eta: bool = False

    def __post_init__(self):
        for start, modulus in self.factors:
            if not 1 <= start <= modulus:
                raise ValueError(f"{self.name}: factor start {start} outside [1, {modulus}]")

    def series(self, order: int) -> QSeries:
        factors = list(self.factors)
        if self.include_eta:
            factors.append((1, 1))
        return inv_poch_inf(factors, order)


def _mod(m: int, *starts: int) -> tuple[tuple[int, int], ...]:
    return tuple((s, m) for s in starts)


NAMED_PRODUCTS: dict[str, NamedProduct] = {
    p.name: p
    for p in [
        NamedProduct("rr1", _mod(5, 1, 4)),
        NamedProduct("rr2", _mod(5, 2, 3)),
        NamedProduct("asw7", _mod(7, 1, 1, 3, 4, 6, 6)),
        NamedProduct("prod500", _mod(8, 2, 3, 3, 4, 4, 5, 5, 6)),
        NamedProduct("prod410", _mod(8, 1, 2, 3, 4, 4, 5, 6, 7)),
        NamedProduct("prod401", _mod(8, 1, 2, 3, 4, 4, 5, 6, 7)),
        NamedProduct("prod320", _mod(8, 1, 2, 2, 3, 5, 6, 6, 7)),
        NamedProduct("prod302", _mod(8, 1, 2, 2, 3, 5, 6, 6, 7)),
        NamedProduct("prod311", _mod(8, 1, 1, 3, 3, 5, 5, 7, 7)),
        NamedProduct("prod221", _mod(8, 1, 1, 2, 4, 4, 6, 7, 7)),
        NamedProduct("prod30", _mod(5, 2, 3), include_eta=True),
        NamedProduct("prod21", _mod(5, 1, 4), include_eta=True),
    ]
}

_AG_RE = re.compile(r"^ag\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


def ag_named(r: int, i: int) -> NamedProduct:
    """Andrews-Gordon product ``(q^{2r+1}, q^i, q^{2r-i+1}; q^{2r+1})_oo / (q)_oo``.

    Written as the reciprocal product over the residues that survive.
    """
    if r < 2 or not 1 <= i <= r:
        raise ValueError(f"Andrews-Gordon needs r >= 2 and 1 <= i <= r, got r={r}, i={i}")
    m = 2 * r + 1
    keep = [a for a in range(1, m) if a not in (i, m - i)]
    return NamedProduct(f"ag({r},{i})", _mod(m, *keep))


def lookup_product(name: str) -> NamedProduct:
    match = _AG_RE.match(name.strip())
    if match:
        return ag_named(int(match.group(1)), int(match.group(2)))
    try:
        return NAMED_PRODUCTS[name]
    except KeyError:
        raise KeyError(f"unknown product {name!r}") from None


def named_product(name: str, order: int) -> QSeries:
    return lookup_product(name).series(order)


def ag_product(r: int, i: int, order: int) -> QSeries:
    return ag_named(r, i).series(order)


def F_product(c, order: int) -> QSeries:
    """``F_c(1, q)`` from Borodin's product."""
    c = as_profile(c)
    return inv_poch_inf(borodin_exponents(c).factors(), order)


def _G_product_fast(c: Profile, order: int) -> QSeries:
    counts = Counter(borodin_exponents(c).as_dict())
    for e in range(1, c.t + 1):
        if counts[e] < 1:
            raise ValueError(f"exponent class {e} mod {c.t} missing for profile {c}")
        counts[e] -= 1
    return inv_poch_inf([(e, c.t) for e, m in counts.items() for _ in range(m)], order)


def G_product(c, order: int) -> QSeries:
    """``G_c(1, q) = (q;q)_oo F_c(1, q)`` by exact multiplication.

    For three-part profiles the result is cross-checked against deleting one
    full residue class from the exponent multiset.
    """
    c = as_profile(c)
    coeffs = list(F_product(c, order).coeffs)
    for e in range(1, order):
        _mul_one_minus_inplace(coeffs, e)
    result = QSeries(coeffs)
    if c.k == 3 and result != _G_product_fast(c, order):
        raise RuntimeError(f"G_product fast path disagrees for {c}")
    return result


def check_symmetry(c, order: int) -> bool:
    """Rotation invariance, plus the ``c1 <-> c2`` swap when ``k == 3``."""
    c = as_profile(c)
    base = F_product(c, order)
    if F_product(rotate(c), order) != base:
        return False
    if c.k == 3:
        swapped = Profile((c.parts[1], c.parts[0], c.parts[2]))
        if F_product(swapped, order) != base:
            return False
    return True

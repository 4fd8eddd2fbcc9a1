"""Exact arithmetic on truncated q-series, Laurent polynomials and z/q series.

Three value types live here:

* :class:`QSeries` -- a power series in ``q`` known modulo ``q**order``,
  stored densely with Python integer coefficients.
* :class:`QLaurent` -- an exact Laurent polynomial in ``q`` stored sparsely.
* :class:`ZQSeries` -- a polynomial in ``z`` of bounded degree whose
  coefficients are :class:`QSeries` sharing one truncation order.

All values are immutable. Mixed-order operations silently take the minimum
order. Only multiplication by explicitly invertible units (``1/(1-q^e)``,
``1/(zq;q)_oo``) is offered; there is no general series division.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

__all__ = [
    "QSeries",
    "QLaurent",
    "ZQSeries",
    "qs_mul",
    "qs_div_one_minus",
    "poch_finite",
    "inv_poch_inf",
    "qbinom",
    "inv_qfac",
    "qpoch_inf",
    "zq_sub",
    "zq_mul_poly",
    "zq_mul_poch_prefix",
    "zq_div_inf_poch",
    "eval_at_q1",
    "first_mismatch",
    "pack",
    "unpack",
]

# Below this many coefficient products the schoolbook loop beats packing.
_KRONECKER_THRESHOLD = 400


# ---------------------------------------------------------------------------
# Kronecker packing
# ---------------------------------------------------------------------------

def pack(coeffs: Sequence[int], nbytes: int) -> int:
    """Pack nonnegative coefficients into one integer, ``nbytes`` per slot."""
    return int.from_bytes(b"".join(c.to_bytes(nbytes, "little") for c in coeffs), "little")


def unpack(x: int, nbytes: int, n: int) -> list[int]:
    """Inverse of :func:`pack` for the first ``n`` slots of a nonnegative ``x``."""
    width = nbytes * n
    raw = (x & ((1 << (8 * width)) - 1)).to_bytes(width, "little")
    return [int.from_bytes(raw[i:i + nbytes], "little") for i in range(0, width, nbytes)]


def _split(coeffs: Sequence[int]) -> tuple[list[int], list[int]]:
    pos = [c if c > 0 else 0 for c in coeffs]
    neg = [-c if c < 0 else 0 for c in coeffs]
    return pos, neg


def _mul_schoolbook(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    nz_b = [(j, bj) for j, bj in enumerate(b[:n]) if bj]
    for i, ai in enumerate(a[:n]):
        if not ai:
            continue
        lim = n - i
        for j, bj in nz_b:
            if j >= lim:
                break
            out[i + j] += ai * bj
    return out


def _mul_kronecker(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    a = list(a[:n])
    b = list(b[:n])
    ma = max((abs(c) for c in a), default=0)
    mb = max((abs(c) for c in b), default=0)
    if ma == 0 or mb == 0:
        return [0] * n
    bound = min(len(a), len(b)) * ma * mb
    # signed digits need |c| < 2**(bits-1)
    nbytes = (bound.bit_length() + 2 + 7) // 8
    bits = 8 * nbytes
    ap, an = _split(a)
    bp, bn = _split(b)
    xa = pack(ap, nbytes) - pack(an, nbytes)
    xb = pack(bp, nbytes) - pack(bn, nbytes)
    prod = xa * xb
    half = 1 << (bits - 1)
    bias = pack([half] * n, nbytes)
    digits = unpack(prod + bias, nbytes, n)
    return [d - half for d in digits]


def _mul_lists(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    if min(len(a), n) * min(len(b), n) < _KRONECKER_THRESHOLD:
        return _mul_schoolbook(a, b, n)
    return _mul_kronecker(a, b, n)


# ---------------------------------------------------------------------------
# QSeries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QSeries:
    """Power series in q truncated at ``q**order`` (exclusive)."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def zero(cls, order: int) -> QSeries:
        return cls([0] * order)

    @classmethod
    def one(cls, order: int) -> QSeries:
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> QSeries:
        c = [0] * order
        if 0 <= exponent < order:
            c[exponent] = coeff
        return cls(c)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> QSeries:
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return QSeries(self.coeffs[:order])

    def __add__(self, other: QSeries) -> QSeries:
        n = min(self.order, other.order)
        return QSeries(x + y for x, y in zip(self.coeffs[:n], other.coeffs[:n]))

    def __sub__(self, other: QSeries) -> QSeries:
        n = min(self.order, other.order)
        return QSeries(x - y for x, y in zip(self.coeffs[:n], other.coeffs[:n]))

    def __neg__(self) -> QSeries:
        return QSeries(-x for x in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries(other * x for x in self.coeffs)
        if isinstance(other, QLaurent):
            return other.mul_series(self)
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, e: int) -> QSeries:
        """Multiply by ``q**e`` (``e >= 0``), keeping the order."""
        if e < 0:
            raise ValueError("negative shift would need unknown coefficients")
        n = self.order
        if e >= n:
            return QSeries.zero(n)
        return QSeries((0,) * e + self.coeffs[: n - e])

    def valuation(self) -> int | None:
        """Lowest exponent with a nonzero coefficient, or ``None`` if zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> QSeries:
        return cls(int(s) for s in data)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*q^{i}" if i else str(c))
            if len(terms) >= 8:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self.order}))"


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Truncated Cauchy product at order ``min(a.order, b.order)``."""
    n = min(a.order, b.order)
    return QSeries(_mul_lists(a.coeffs, b.coeffs, n))


def _div_one_minus_inplace(c: list[int], e: int) -> None:
    for i in range(e, len(c)):
        c[i] += c[i - e]


def _mul_one_minus_inplace(c: list[int], e: int) -> None:
    for i in range(len(c) - 1, e - 1, -1):
        c[i] -= c[i - e]


def qs_div_one_minus(a: QSeries, e: int) -> QSeries:
    """Multiply ``a`` by ``1/(1 - q**e)`` via stride-``e`` prefix sums."""
    if e <= 0:
        raise ValueError(f"1/(1-q^{e}) is not a formal power series unit")
    c = list(a.coeffs)
    _div_one_minus_inplace(c, e)
    return QSeries(c)


def inv_poch_inf(factors: Iterable[tuple[int, int]], order: int) -> QSeries:
    """``prod 1/(q^s; q^m)_oo`` over ``(s, m)`` in ``factors``, mod ``q**order``."""
    c = [0] * order
    if order:
        c[0] = 1
    for start, modulus in factors:
        if start <= 0 or modulus <= 0:
            raise ValueError(f"1/(q^{start};q^{modulus})_oo does not converge formally")
        for e in range(start, order, modulus):
            _div_one_minus_inplace(c, e)
    return QSeries(c)


@functools.lru_cache(maxsize=None)
def _inv_qfac_coeffs(n: int, order: int) -> tuple[int, ...]:
    if n == 0:
        return (1,) + (0,) * (order - 1) if order else ()
    c = list(_inv_qfac_coeffs(n - 1, order))
    _div_one_minus_inplace(c, n)
    return tuple(c)


def inv_qfac(n: int, order: int) -> QSeries:
    """``1/(q;q)_n`` truncated; zero for negative ``n``."""
    if n < 0:
        return QSeries.zero(order)
    return QSeries(_inv_qfac_coeffs(n, order))


def qpoch_inf(order: int) -> QSeries:
    """``(q;q)_oo`` truncated at ``q**order``."""
    c = [0] * order
    if order:
        c[0] = 1
    for e in range(1, order):
        _mul_one_minus_inplace(c, e)
    return QSeries(c)


# ---------------------------------------------------------------------------
# QLaurent
# ---------------------------------------------------------------------------

class QLaurent:
    """Exact Laurent polynomial in q with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], offset: int = 0) -> QLaurent:
        return cls((i + offset, c) for i, c in enumerate(coeffs))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> QLaurent:
        return cls({e: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QLaurent({0: other})
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __getitem__(self, e: int) -> int:
        return self._terms.get(e, 0)

    def min_exponent(self) -> int | None:
        return next(iter(self._terms), None)

    def max_exponent(self) -> int | None:
        return next(reversed(self._terms), None) if self._terms else None

    def __add__(self, other: QLaurent) -> QLaurent:
        return QLaurent(list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self, other: QLaurent) -> QLaurent:
        return self + (-other)

    def __neg__(self) -> QLaurent:
        return QLaurent({e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return QLaurent({e: other * c for e, c in self._terms.items()})
        if isinstance(other, QSeries):
            return self.mul_series(other)
        if not isinstance(other, QLaurent):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return QLaurent(out)

    __rmul__ = __mul__

    def shift(self, e: int) -> QLaurent:
        return QLaurent({k + e: c for k, c in self._terms.items()})

    def mul_series(self, s: QSeries) -> QSeries:
        """Product with a truncated series.

        A negative exponent ``-d`` consumes ``d`` known coefficients, so the
        result order is ``s.order + min(0, min_exponent)``.
        """
        lo = min(0, self.min_exponent() or 0)
        n = s.order + lo
        if n <= 0:
            return QSeries.zero(0)
        out = [0] * n
        src = s.coeffs
        for e, c in self._terms.items():
            # out[i] += c * src[i - e]
            start = max(0, e)
            for i in range(start, n):
                j = i - e
                if src[j]:
                    out[i] += c * src[j]
        return QSeries(out)

    def to_series(self, order: int) -> QSeries:
        if self._terms and self.min_exponent() < 0:
            raise ValueError("Laurent polynomial has negative exponents")
        c = [0] * order
        for e, v in self._terms.items():
            if e < order:
                c[e] = v
        return QSeries(c)

    def coeff_list(self) -> list[int]:
        """Dense coefficients from exponent 0 upward (requires no negative exponents)."""
        if not self._terms:
            return []
        if self.min_exponent() < 0:
            raise ValueError("Laurent polynomial has negative exponents")
        return list(self.to_series(self.max_exponent() + 1).coeffs)

    def to_json(self) -> dict[str, str]:
        return {str(e): str(c) for e, c in self._terms.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> QLaurent:
        return cls({int(e): int(c) for e, c in data.items()})

    def __repr__(self) -> str:
        if not self._terms:
            return "QLaurent(0)"
        return "QLaurent(" + " + ".join(f"{c}*q^{e}" for e, c in self._terms.items()) + ")"


def eval_at_q1(p: QLaurent) -> int:
    return sum(c for _, c in p.items())


def poch_finite(s: int, m: int, n: int) -> QLaurent:
    """``prod_{j<n} (1 - q^(s + j*m))`` as an exact polynomial."""
    if n < 0:
        raise ValueError("negative Pochhammer length")
    terms: dict[int, int] = {0: 1}
    for j in range(n):
        e = s + j * m
        nxt = dict(terms)
        for k, c in terms.items():
            nxt[k + e] = nxt.get(k + e, 0) - c
        terms = nxt
    return QLaurent(terms)


@functools.lru_cache(maxsize=None)
def _qbinom_coeffs(m: int, r: int) -> tuple[int, ...]:
    if r < 0 or r > m:
        return ()
    if r == 0 or r == m:
        return (1,)
    # [m, r] = [m-1, r-1] + q^r [m-1, r]
    left = _qbinom_coeffs(m - 1, r - 1)
    right = _qbinom_coeffs(m - 1, r)
    out = [0] * (r * (m - r) + 1)
    for i, c in enumerate(left):
        out[i] += c
    for i, c in enumerate(right):
        out[i + r] += c
    return tuple(out)


def qbinom(m: int, r: int) -> QLaurent:
    """Gaussian binomial ``[m choose r]_q``; zero unless ``0 <= r <= m``."""
    return QLaurent.from_coeffs(_qbinom_coeffs(m, r))


def qbinom_coeffs(m: int, r: int) -> tuple[int, ...]:
    """Dense coefficients of ``[m choose r]_q`` (empty tuple for zero)."""
    return _qbinom_coeffs(m, r)


def first_mismatch(a: QSeries, b: QSeries) -> tuple[int, int, int] | None:
    """First exponent below the common order where ``a`` and ``b`` differ."""
    n = min(a.order, b.order)
    for i in range(n):
        if a.coeffs[i] != b.coeffs[i]:
            return i, a.coeffs[i], b.coeffs[i]
    return None


# ---------------------------------------------------------------------------
# ZQSeries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZQSeries:
    """Polynomial in z (degree < ``zdeg``) with truncated q-series coefficients."""

    zcoeffs: tuple[QSeries, ...]

    def __init__(self, zcoeffs: Iterable[QSeries]):
        zc = tuple(zcoeffs)
        if zc:
            n = min(s.order for s in zc)
            zc = tuple(s if s.order == n else s.truncate(n) for s in zc)
        object.__setattr__(self, "zcoeffs", zc)

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]]) -> ZQSeries:
        return cls(QSeries(row) for row in table)

    @classmethod
    def one(cls, zdeg: int, order: int) -> ZQSeries:
        return cls([QSeries.one(order)] + [QSeries.zero(order)] * (zdeg - 1))

    @property
    def zdeg(self) -> int:
        return len(self.zcoeffs)

    @property
    def order(self) -> int:
        return self.zcoeffs[0].order if self.zcoeffs else 0

    def __getitem__(self, m: int) -> QSeries:
        return self.zcoeffs[m]

    def __iter__(self):
        return iter(self.zcoeffs)

    def truncate(self, zdeg: int, order: int) -> ZQSeries:
        if zdeg > self.zdeg:
            raise ValueError(f"cannot raise z-degree bound {self.zdeg} to {zdeg}")
        return ZQSeries(s.truncate(order) for s in self.zcoeffs[:zdeg])

    def __add__(self, other: ZQSeries) -> ZQSeries:
        m = min(self.zdeg, other.zdeg)
        return ZQSeries(a + b for a, b in zip(self.zcoeffs[:m], other.zcoeffs[:m]))

    def __sub__(self, other: ZQSeries) -> ZQSeries:
        m = min(self.zdeg, other.zdeg)
        return ZQSeries(a - b for a, b in zip(self.zcoeffs[:m], other.zcoeffs[:m]))

    def __neg__(self) -> ZQSeries:
        return ZQSeries(-a for a in self.zcoeffs)

    def scale(self, c: int) -> ZQSeries:
        return ZQSeries(a * c for a in self.zcoeffs)

    def at_z1(self) -> QSeries:
        """Sum of the stored z-coefficients."""
        n = self.order
        acc = [0] * n
        for s in self.zcoeffs:
            for i, c in enumerate(s.coeffs):
                acc[i] += c
        return QSeries(acc)

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.zcoeffs)

    def first_nonzero(self) -> tuple[int, int, int] | None:
        """``(z exponent, q exponent, coefficient)`` of the first nonzero entry."""
        for m, s in enumerate(self.zcoeffs):
            v = s.valuation()
            if v is not None:
                return m, v, s.coeffs[v]
        return None

    def to_json(self) -> list[list[str]]:
        return [s.to_json() for s in self.zcoeffs]

    @classmethod
    def from_json(cls, data) -> ZQSeries:
        return cls(QSeries.from_json(row) for row in data)


def zq_sub(F: ZQSeries, j: int) -> ZQSeries:
    """Substitute ``z -> z q**j``."""
    if j < 0:
        raise ValueError("z -> z q^j needs j >= 0")
    if j == 0:
        return F
    return ZQSeries(s.shift(j * m) for m, s in enumerate(F.zcoeffs))


def zq_mul_poly(F: ZQSeries, poly: Mapping[tuple[int, int], int]) -> ZQSeries:
    """Multiply by a z,q-polynomial given as ``{(z_exp, q_exp): coeff}``."""
    M, N = F.zdeg, F.order
    out = [[0] * N for _ in range(M)]
    for (a, e), c in poly.items():
        if a < 0 or e < 0:
            raise ValueError("z,q-polynomial must have nonnegative exponents")
        for m in range(a, M):
            src = F.zcoeffs[m - a].coeffs
            row = out[m]
            for i in range(e, N):
                v = src[i - e]
                if v:
                    row[i] += c * v
    return ZQSeries.from_table(out)


def zq_poch_prefix_poly(j: int) -> dict[tuple[int, int], int]:
    """``(zq;q)_j = sum_i (-1)^i q^(i(i+1)/2) [j, i]_q z^i`` as a coefficient map."""
    poly: dict[tuple[int, int], int] = {}
    for i in range(j + 1):
        sign = -1 if i % 2 else 1
        base = i * (i + 1) // 2
        for e, c in enumerate(_qbinom_coeffs(j, i)):
            if c:
                poly[(i, base + e)] = sign * c
    return poly


def zq_mul_poch_prefix(F: ZQSeries, j: int) -> ZQSeries:
    """Multiply by ``(zq;q)_j``, truncated at ``F.zdeg``."""
    if j < 0:
        raise ValueError("Pochhammer length must be >= 0")
    if j == 0:
        return F
    return zq_mul_poly(F, zq_poch_prefix_poly(j))


def zq_div_inf_poch(G: ZQSeries) -> ZQSeries:
    """Multiply by ``1/(zq;q)_oo = sum_m z^m q^m/(q;q)_m``."""
    M, N = G.zdeg, G.order
    euler = [inv_qfac(m, N).shift(m) for m in range(M)]
    out = []
    for m in range(M):
        acc = QSeries.zero(N)
        for i in range(m + 1):
            acc = acc + qs_mul(euler[i], G.zcoeffs[m - i])
        out.append(acc)
    return ZQSeries(out)


def zq_mul_inf_poch(F: ZQSeries) -> ZQSeries:
    """Multiply by ``(zq;q)_oo = sum_m (-1)^m z^m q^(m(m+1)/2)/(q;q)_m``."""
    M, N = F.zdeg, F.order
    euler = [inv_qfac(m, N).shift(m * (m + 1) // 2) * (-1 if m % 2 else 1) for m in range(M)]
    out = []
    for m in range(M):
        acc = QSeries.zero(N)
        for i in range(m + 1):
            acc = acc + qs_mul(euler[i], F.zcoeffs[m - i])
        out.append(acc)
    return ZQSeries(out)

"""Generic evaluator for positive multi-sums, plus the built-in sum sides.

A :class:`SumSpec` describes

    sum_{n >= 0} z^{n[z_index] + off} q^{Q(n) + lin.n + const}
        * prod_b [top_b(n), bottom_b(n)]_q / prod_d (q;q)_{den_d(n)}

with ``Q`` a positive definite quadratic form (stored doubled so that it
stays integral), one ``(off, const, lin)`` triple per monomial of the
polynomial prefactor, and affine binomial/denominator arguments.

Every summand has nonnegative coefficients, so the engine accumulates in
Kronecker-packed integers: one big integer per series with a fixed number
of bytes per coefficient, chosen from a proven bound on the final
coefficients. Multiplication and shifting are then native integer ops.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .qalg import QSeries, ZQSeries, inv_poch_inf, inv_qfac, pack, qbinom_coeffs, qpoch_inf, unpack

__all__ = [
    "Affine",
    "SumTerm",
    "SumSpec",
    "eval_sum",
    "eval_sum_at_1",
    "builtin_specs",
    "ag_spec",
    "lookup_spec",
    "OpenProblemReport",
    "asw500_sum",
    "open_problem_checks",
    "q221_triple_sum",
    "SPEC_PROFILES",
]


@dataclass(frozen=True)
class Affine:
    """``const + coeffs . n``."""

    const: int
    coeffs: tuple[int, ...]

    def __call__(self, n: Sequence[int]) -> int:
        return self.const + sum(a * x for a, x in zip(self.coeffs, n))

    def depth(self) -> int:
        """Last index (0-based) this expression depends on, or -1."""
        nz = [i for i, a in enumerate(self.coeffs) if a]
        return nz[-1] if nz else -1


def index(i: int, rank: int) -> Affine:
    return Affine(0, tuple(1 if j == i else 0 for j in range(rank)))


@dataclass(frozen=True)
class SumTerm:
    z_offset: int
    const: int
    linear: tuple[int, ...]


@dataclass(frozen=True)
class SumSpec:
    name: str
    rank: int
    form2: tuple[tuple[int, ...], ...]
    terms: tuple[SumTerm, ...]
    denominators: tuple[Affine, ...]
    binomials: tuple[tuple[Affine, Affine], ...]
    z_index: int | None = 0

    def __post_init__(self):
        r = self.rank
        A = self.form2
        if len(A) != r or any(len(row) != r for row in A):
            raise ValueError(f"{self.name}: form must be {r}x{r}")
        if any(A[i][j] != A[j][i] for i in range(r) for j in range(r)):
            raise ValueError(f"{self.name}: form must be symmetric")
        if any(A[i][i] % 2 for i in range(r)):
            raise ValueError(f"{self.name}: doubled form needs even diagonal")
        if not _positive_definite(A):
            raise ValueError(f"{self.name}: quadratic form is not positive definite")
        if any(d <= 0 for d in self.minorant()):
            raise ValueError(f"{self.name}: diagonal minorant is not positive; cannot bound indices")
        for t in self.terms:
            if len(t.linear) != r or t.z_offset < 0:
                raise ValueError(f"{self.name}: malformed term {t}")
        for top, bot in self.binomials:
            if len(top.coeffs) != r or len(bot.coeffs) != r:
                raise ValueError(f"{self.name}: binomial arguments must be affine in {r} indices")

    def quad(self, n: Sequence[int]) -> int:
        A = self.form2
        twice = sum(A[i][j] * n[i] * n[j] for i in range(self.rank) for j in range(self.rank))
        return twice // 2

    def minorant(self) -> list[Fraction]:
        """``d`` with ``Q(n) >= sum d_i n_i^2`` on the nonnegative orthant.

        Each negative cross term uses ``-2ab >= -(a^2 + b^2)``; nonnegative
        cross terms are dropped.
        """
        A = self.form2
        d = [Fraction(A[i][i], 2) for i in range(self.rank)]
        for i in range(self.rank):
            for j in range(self.rank):
                if i != j and A[i][j] < 0:
                    d[i] -= Fraction(-A[i][j], 2)
        return d

    def index_bounds(self, order: int) -> list[int]:
        """Inclusive upper bounds on each index for exponents below ``order``."""
        d = self.minorant()
        bounds = [0] * self.rank
        for t in self.terms:
            mins = [_min_quadratic(d[i], t.linear[i]) for i in range(self.rank)]
            total_min = sum(mins) + t.const
            for i in range(self.rank):
                rest = total_min - mins[i]
                x = 0
                while d[i] * (x + 1) ** 2 + t.linear[i] * (x + 1) + rest < order:
                    x += 1
                bounds[i] = max(bounds[i], x)
        return bounds


def _min_quadratic(d: Fraction, l: int) -> Fraction:
    if l >= 0:
        return Fraction(0)
    x0 = math.floor(Fraction(-l) / (2 * d))
    return min(d * x * x + l * x for x in (x0, x0 + 1))


def _positive_definite(A) -> bool:
    r = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    for k in range(r):
        if M[k][k] <= 0:
            return False
        for i in range(k + 1, r):
            f = M[i][k] / M[k][k]
            for j in range(k, r):
                M[i][j] -= f * M[k][j]
    return True


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------

@dataclass
class _Point:
    n: tuple[int, ...]
    exps: tuple[int | None, ...]  # per term, None when >= order or outside z window
    dens: tuple[int, ...]


def _points(spec: SumSpec, order: int, zdeg: int | None):
    """Lattice points with at least one term below ``order`` and nonzero weight."""
    r = spec.rank
    bounds = spec.index_bounds(order)
    d = spec.minorant()
    min_lin = [min(t.linear[i] for t in spec.terms) for i in range(r)]
    min_const = min(t.const for t in spec.terms)
    tail_min = [Fraction(0)] * (r + 1)
    for i in range(r - 1, -1, -1):
        tail_min[i] = tail_min[i + 1] + _min_quadratic(d[i], min_lin[i])
    n = [0] * r

    def rec(depth: int, partial_bound: Fraction):
        if depth == r:
            yield tuple(n)
            return
        for x in range(bounds[depth] + 1):
            if zdeg is not None and depth == spec.z_index and x >= zdeg:
                break
            pb = partial_bound + d[depth] * x * x + min_lin[depth] * x
            if pb + tail_min[depth + 1] + min_const >= order:
                if min_lin[depth] >= 0:
                    break
                continue
            n[depth] = x
            yield from rec(depth + 1, pb)
        n[depth] = 0

    for pt in rec(0, Fraction(0)):
        dens = tuple(den(pt) for den in spec.denominators)
        if any(v < 0 for v in dens):
            continue
        if any(not 0 <= bot(pt) <= top(pt) for top, bot in spec.binomials):
            continue
        q = spec.quad(pt)
        exps = []
        for t in spec.terms:
            e = q + t.const + sum(a * x for a, x in zip(t.linear, pt))
            if e < 0:
                raise ValueError(f"{spec.name}: negative q-exponent {e} at {pt}")
            zpow = (pt[spec.z_index] + t.z_offset) if spec.z_index is not None else 0
            ok = e < order and (zdeg is None or zpow < zdeg)
            exps.append(e if ok else None)
        if any(e is not None for e in exps):
            yield _Point(pt, tuple(exps), dens)


def _partition_bound(count: int, order: int) -> int:
    """Largest coefficient below ``order`` of ``(q;q)_oo^{-count}``."""
    if count == 0 or order == 0:
        return 1
    return max(inv_poch_inf([(1, 1)] * count, order).coeffs)


@functools.lru_cache(maxsize=4096)
def _packed_binom(m: int, r: int, nbytes: int, order: int) -> int:
    return pack(qbinom_coeffs(m, r)[:order], nbytes)


@functools.lru_cache(maxsize=1024)
def _packed_inv_qfac(m: int, nbytes: int, order: int) -> int:
    return pack(inv_qfac(m, order).coeffs, nbytes)


def _evaluate(spec: SumSpec, zdeg: int | None, order: int) -> dict[int, list[int]]:
    pts = list(_points(spec, order, zdeg))
    # Every coefficient of the result is at most (sum of summands at q=1)
    # times the largest coefficient of the denominator expansions.
    total = 0
    for p in pts:
        w = 1
        for top, bot in spec.binomials:
            w *= math.comb(top(p.n), bot(p.n))
        total += w * sum(1 for e in p.exps if e is not None)
    bound = max(total, 1) * _partition_bound(len(spec.denominators), order)
    nbytes = (bound.bit_length() + 8) // 8
    bits = 8 * nbytes
    masks: dict[int, int] = {}

    def mask(n: int) -> int:
        m = masks.get(n)
        if m is None:
            m = masks[n] = (1 << (bits * n)) - 1
        return m

    # binomials attach at the deepest index they read
    depth_of = [max(top.depth(), bot.depth()) for top, bot in spec.binomials]
    prefix_cache: dict[tuple[int, ...], int] = {(): 1}

    def binom_product(n: tuple[int, ...], upto: int) -> int:
        key = n[: upto + 1]
        hit = prefix_cache.get(key)
        if hit is not None:
            return hit
        val = binom_product(n, upto - 1) if upto > 0 else 1
        for b, dep in enumerate(depth_of):
            if dep == upto or (upto == 0 and dep == -1):
                top, bot = spec.binomials[b]
                val = (val * _packed_binom(top(n), bot(n), nbytes, order)) & mask(order)
        prefix_cache[key] = val
        return val

    acc: dict[tuple[int, tuple[int, ...]], int] = {}
    last = spec.rank - 1
    for p in pts:
        base = binom_product(p.n, last) if spec.binomials else 1
        for t, e in zip(spec.terms, p.exps):
            if e is None:
                continue
            zpow = (p.n[spec.z_index] + t.z_offset) if (zdeg is not None and spec.z_index is not None) else 0
            contrib = (base & mask(order - e)) << (bits * e)
            key = (zpow, p.dens)
            acc[key] = acc.get(key, 0) + contrib
        if len(prefix_cache) > 200_000:
            prefix_cache.clear()
            prefix_cache[()] = 1

    out: dict[int, int] = {}
    full = mask(order)
    for (zpow, dens), x in acc.items():
        for m in dens:
            x = (x * _packed_inv_qfac(m, nbytes, order)) & full
        out[zpow] = out.get(zpow, 0) + x
    return {z: unpack(x, nbytes, order) for z, x in out.items()}


def eval_sum(spec: SumSpec, zdeg: int, order: int) -> ZQSeries:
    """The bivariate series, z-degree < ``zdeg``, modulo ``q**order``."""
    if spec.z_index is None:
        raise ValueError(f"{spec.name} has no z-tracking index")
    table = _evaluate(spec, zdeg, order)
    return ZQSeries(QSeries(table.get(m, [0] * order)) for m in range(zdeg))


def eval_sum_at_1(spec: SumSpec, order: int) -> QSeries:
    """The series at ``z = 1`` modulo ``q**order``."""
    table = _evaluate(spec, None, order)
    return QSeries(table.get(0, [0] * order))


# ---------------------------------------------------------------------------
# Built-in specs
# ---------------------------------------------------------------------------

# n1^2 + n2^2 + n3^2 + n4^2 - n1 n2 + n2 n4, doubled
_FORM_L5 = (
    (2, -1, 0, 0),
    (-1, 2, 0, 1),
    (0, 0, 2, 0),
    (0, 1, 0, 2),
)


def _ix(i: int, r: int = 4) -> Affine:
    return index(i, r)


_BINOMS_L5 = (
    (_ix(0), _ix(1)),  # [n1, n2]
    (_ix(0), _ix(3)),  # [n1, n4]
    (_ix(1), _ix(2)),  # [n2, n3]
)


def _l5(name: str, *terms: tuple[int, int, tuple[int, ...]]) -> SumSpec:
    return SumSpec(
        name=name,
        rank=4,
        form2=_FORM_L5,
        terms=tuple(SumTerm(z, c, lin) for z, c, lin in terms),
        denominators=(_ix(0),),
        binomials=_BINOMS_L5,
        z_index=0,
    )


def ag_spec(r: int, i: int) -> SumSpec:
    """Andrews-Gordon sum side over ``n_1 >= ... >= n_{r-1} >= 0``.

    ``[n_j, n_j - n_{j+1}]`` equals ``[n_j, n_{j+1}]``, zero unless ``n_{j+1} <= n_j``.
    """
    if r < 2 or not 1 <= i <= r:
        raise ValueError(f"Andrews-Gordon needs r >= 2 and 1 <= i <= r, got r={r}, i={i}")
    rank = r - 1
    form2 = tuple(tuple(2 if a == b else 0 for b in range(rank)) for a in range(rank))
    lin = tuple(1 if j >= i - 1 else 0 for j in range(rank))
    binoms = tuple((index(j, rank), index(j + 1, rank)) for j in range(rank - 1))
    return SumSpec(
        name=f"ag({r},{i})",
        rank=rank,
        form2=form2,
        terms=(SumTerm(0, 0, lin),),
        denominators=(index(0, rank),),
        binomials=binoms,
        z_index=0,
    )


def _asw7_spec(name: str, top_const: int) -> SumSpec:
    return SumSpec(
        name, 2, ((2, -1), (-1, 2)), (SumTerm(0, 0, (0, 0)),),
        (index(0, 2),), ((Affine(top_const, (2, 0)), index(1, 2)),),
    )


def _asw500_spec() -> SumSpec:
    # indices (a1, b1, a2, b2)
    r = 4
    form2 = (
        (2, -1, 0, 0),
        (-1, 2, 0, 0),
        (0, 0, 2, 1),
        (0, 0, 1, 2),
    )
    dens = (
        Affine(0, (1, 0, -1, 0)),
        Affine(0, (0, 1, 0, -1)),
        index(2, r),
        index(3, r),
        Affine(1, (0, 0, 1, 1)),
    )
    return SumSpec("asw500", r, form2, (SumTerm(0, 0, (1, 1, 1, 1)),), dens, (), z_index=None)


@functools.lru_cache(maxsize=None)
def builtin_specs() -> dict[str, SumSpec]:
    specs = {
        "sum500": _l5("sum500", (0, 0, (1, 1, 1, 1))),
        "sum410": _l5("sum410", (0, 0, (0, 1, 1, 1))),
        # (1 + z q^{n1+n2+n4+1})
        "sum401": _l5("sum401", (0, 0, (1, 0, 1, 0)), (1, 1, (2, 1, 1, 1))),
        # (1 + z q^{n1+n3+1} + z q^{2n1+n2+n3+n4+2})
        "sum302": _l5("sum302", (0, 0, (1, 0, 0, 0)), (1, 1, (2, 0, 1, 0)), (1, 2, (3, 1, 1, 1))),
        # (q^{n3} + z q^{n1+1} + z q^{2n1+n3+2} + z q^{3n1+n2+n3+n4+3})
        "sum320": _l5(
            "sum320",
            (0, 0, (1, 0, 1, 0)), (1, 1, (2, 0, 0, 0)), (1, 2, (3, 0, 1, 0)), (1, 3, (4, 1, 1, 1)),
        ),
        "sum311": _l5("sum311", (0, 0, (0, 0, 1, 0))),
        "sum221": _l5("sum221", (0, 0, (0, 0, 0, 0))),
        "rr1": SumSpec("rr1", 1, ((2,),), (SumTerm(0, 0, (0,)),), (index(0, 1),), ()),
        "rr2": SumSpec("rr2", 1, ((2,),), (SumTerm(0, 0, (1,)),), (index(0, 1),), ()),
        # binomial top 2*n1; with 2*n1 + 1 the q^1 coefficient is 3, not 2
        "asw7": _asw7_spec("asw7", 0),
        "asw7_top_plus1": _asw7_spec("asw7_top_plus1", 1),
        "asw500": _asw500_spec(),
    }
    for r in (2, 3, 4):
        for i in range(1, r + 1):
            spec = ag_spec(r, i)
            specs[spec.name] = spec
    return specs


SPEC_PROFILES = {
    "sum500": (5, 0, 0),
    "sum410": (4, 1, 0),
    "sum401": (4, 0, 1),
    "sum302": (3, 0, 2),
    "sum320": (3, 2, 0),
    "sum311": (3, 1, 1),
    "sum221": (2, 2, 1),
}


def lookup_spec(name: str) -> SumSpec:
    specs = builtin_specs()
    key = name.replace(" ", "")
    if key in specs:
        return specs[key]
    if key.startswith("ag("):
        r, i = (int(x) for x in key[3:-1].split(","))
        return ag_spec(r, i)
    raise KeyError(f"unknown sum {name!r}")


def asw500_sum(order: int) -> QSeries:
    """``(q;q)_oo`` times the five-denominator quadruple sum."""
    return qpoch_inf(order) * eval_sum_at_1(builtin_specs()["asw500"], order)


def q221_triple_sum(n: int, order: int) -> QSeries:
    """``sum q^{n^2+n2^2+n3^2+n4^2-n n2+n2 n4} [n,n2][n,n4][n2,n3]`` over ``n2, n3, n4``."""
    r = 3  # indices (n2, n3, n4)
    spec = SumSpec(
        name=f"q221[{n}]",
        rank=r,
        form2=((2, 0, 1), (0, 2, 0), (1, 0, 2)),
        terms=(SumTerm(0, n * n, (-n, 0, 0)),),
        denominators=(),
        binomials=(
            (Affine(n, (0, 0, 0)), index(0, r)),
            (Affine(n, (0, 0, 0)), index(2, r)),
            (index(0, r), index(1, r)),
        ),
        z_index=None,
    )
    return eval_sum_at_1(spec, order)


@dataclass(frozen=True)
class OpenProblemReport:
    pair: tuple[str, str]
    order: int
    equal_at_z1: bool
    first_mismatch_at_z1: tuple[int, int, int] | None
    bivariate_witness: tuple[int, int, int, int] | None  # (z exp, q exp, coeff A, coeff B)

    @property
    def ok(self) -> bool:
        return self.equal_at_z1 and self.bivariate_witness is not None

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair), "order": self.order, "ok": self.ok,
            "equal_at_z1": self.equal_at_z1,
            "first_mismatch_at_z1": self.first_mismatch_at_z1,
            "bivariate_witness": self.bivariate_witness,
        }


def open_problem_checks(order: int, witness_zdeg: int = 4, witness_order: int = 40) -> list[OpenProblemReport]:
    """Sum sides that agree at ``z = 1`` but differ as bivariate series."""
    from .qalg import first_mismatch

    specs = builtin_specs()
    out = []
    for a, b in (("sum410", "sum401"), ("sum302", "sum320")):
        sa = eval_sum_at_1(specs[a], order)
        sb = eval_sum_at_1(specs[b], order)
        mm = first_mismatch(sa, sb)
        A = eval_sum(specs[a], witness_zdeg, witness_order)
        B = eval_sum(specs[b], witness_zdeg, witness_order)
        witness = None
        for m in range(witness_zdeg):
            diff = first_mismatch(A[m], B[m])
            if diff is not None:
                witness = (m, diff[0], diff[1], diff[2])
                break
        out.append(OpenProblemReport((a, b), order, mm is None, mm, witness))
    return out

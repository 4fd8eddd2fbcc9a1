"""q-difference engine for cylindric partition generating functions.

For a profile ``c`` the normalised series ``G_c(z,q) = (zq;q)_oo F_c(z,q)``
satisfies

    G_c(z) = sum_{J} (-1)^{|J|-1} (zq;q)_{|J|-1} G_{c(J)}(z q^{|J|})

over nonempty ``J`` contained in the support of ``c``. Reading off the
coefficient of ``z^k`` gives

    g_c(k) = sum_J (-1)^{|J|-1} sum_i (-1)^i q^{i(i+1)/2} [|J|-1, i] q^{|J|(k-i)} g_{c(J)}(k-i)

The ``i = 0`` terms couple all profiles of the orbit at the same level ``k``
but always carry ``q^{k|J|}``, so a Jacobi sweep gains at least ``k`` in
q-valuation and the level converges after at most ``ceil(N/k)`` sweeps.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from importlib import resources

from .profiles import Profile, as_profile, move_cJ, subsets_of_Ic
from .qalg import (
    QLaurent,
    QSeries,
    ZQSeries,
    qbinom,
    zq_div_inf_poch,
    zq_mul_poly,
    zq_sub,
)

__all__ = [
    "Equation",
    "OrbitSystem",
    "ConvergenceError",
    "build_system",
    "solve_G",
    "solve_F",
    "QDIFF_EQUATIONS",
    "Residual",
    "verify_qdiff_system",
    "RecurrenceSpec",
    "load_recg410",
    "RecurrenceCheck",
    "verify_recg410",
    "verify_qrec410",
    "valuation_report",
]


class ConvergenceError(RuntimeError):
    """A level failed to stabilise; the equations must be mis-specified."""


@dataclass(frozen=True)
class Equation:
    J: tuple[int, ...]
    sign: int
    shift: int
    prefix: int
    target: Profile


@dataclass(frozen=True)
class OrbitSystem:
    seed: Profile
    profiles: tuple[Profile, ...]
    equations: dict[Profile, tuple[Equation, ...]] = field(compare=False)


def build_system(seed) -> OrbitSystem:
    """Breadth-first closure of ``seed`` under ``c -> c(J)``."""
    seed = as_profile(seed)
    if seed.ell < 1:
        raise ValueError("the recursion needs a profile with positive total")
    seen = {seed: None}
    queue = deque([seed])
    equations: dict[Profile, tuple[Equation, ...]] = {}
    while queue:
        c = queue.popleft()
        eqs = []
        for J in subsets_of_Ic(c):
            target = move_cJ(c, J)
            eqs.append(Equation(J, (-1) ** (len(J) - 1), len(J), len(J) - 1, target))
            if target not in seen:
                seen[target] = None
                queue.append(target)
        equations[c] = tuple(eqs)
    return OrbitSystem(seed, tuple(seen), equations)


# Solutions for an orbit, keyed by frozenset of profiles; the stored solve
# with the largest window serves any smaller request.
_CACHE: dict[frozenset, tuple[int, int, dict[Profile, list[list[int]]]]] = {}


def _poly_times(poly: QLaurent, src: list[int], n: int, out: list[int], sign: int) -> None:
    for e, c in poly.items():
        c *= sign
        for i in range(e, n):
            v = src[i - e]
            if v:
                out[i] += c * v


def _solve_coeffs(system: OrbitSystem, M: int, N: int, schedule: str) -> dict[Profile, list[list[int]]]:
    profiles = system.profiles
    g: dict[Profile, list[list[int]]] = {c: [] for c in profiles}
    one = [1] + [0] * (N - 1) if N else []
    for c in profiles:
        g[c].append(list(one))
    for k in range(1, M):
        known = {}
        for c in profiles:
            acc = [0] * N
            for eq in system.equations[c]:
                for i in range(1, min(eq.prefix, k) + 1):
                    shift = i * (i + 1) // 2 + eq.shift * (k - i)
                    poly = qbinom(eq.prefix, i).shift(shift)
                    _poly_times(poly, g[eq.target][k - i], N, acc, eq.sign * (-1) ** i)
            known[c] = acc
        cur = {c: list(known[c]) for c in profiles}
        max_sweeps = math.ceil(N / k) + 2
        for _ in range(max_sweeps):
            changed = False
            src = cur if schedule == "gauss-seidel" else dict(cur)
            new_level = {}
            for c in profiles:
                nxt = list(known[c])
                for eq in system.equations[c]:
                    e = eq.shift * k
                    tgt = src[eq.target]
                    for i in range(e, N):
                        v = tgt[i - e]
                        if v:
                            nxt[i] += eq.sign * v
                if nxt != cur[c]:
                    changed = True
                if schedule == "gauss-seidel":
                    cur[c] = nxt
                else:
                    new_level[c] = nxt
            if schedule != "gauss-seidel":
                cur = new_level
            if not changed:
                break
        else:
            raise ConvergenceError(f"level k={k} did not stabilise in {max_sweeps} sweeps")
        for c in profiles:
            g[c].append(cur[c])
    return g


def solve_G(c, M: int, N: int, schedule: str = "jacobi") -> dict[Profile, ZQSeries]:
    """``G`` for every profile in the orbit of ``c``, z-degree < M, mod q^N.

    ``schedule`` is ``"jacobi"`` (default) or ``"gauss-seidel"``; the fixed
    point does not depend on it.
    """
    c = as_profile(c)
    if schedule not in ("jacobi", "gauss-seidel"):
        raise ValueError(f"unknown sweep schedule {schedule!r}")
    system = build_system(c)
    key = frozenset(system.profiles)
    hit = _CACHE.get(key) if schedule == "jacobi" else None
    if hit and hit[0] >= M and hit[1] >= N:
        g = hit[2]
    elif schedule == "jacobi":
        # solve the union of both windows so the cache only grows
        wide = (max(M, hit[0]), max(N, hit[1])) if hit else (M, N)
        g = _solve_coeffs(system, *wide, schedule)
        _CACHE[key] = (*wide, g)
    else:
        g = _solve_coeffs(system, M, N, schedule)
    return {p: ZQSeries(QSeries(row[:N]) for row in g[p][:M]) for p in system.profiles}


def solve_F(c, M: int, N: int) -> ZQSeries:
    """``F_c(z, q) = G_c(z, q) / (zq;q)_oo``."""
    c = as_profile(c)
    return zq_div_inf_poch(solve_G(c, M, N)[c])


def valuation_report(solution: dict[Profile, ZQSeries]) -> dict[Profile, bool]:
    """Whether ``g_c(k)`` has q-valuation >= k for every stored k >= 1."""
    out = {}
    for c, G in solution.items():
        ok = True
        for k in range(1, G.zdeg):
            v = G[k].valuation()
            if v is not None and v < k:
                ok = False
        out[c] = ok
    return out


# ---------------------------------------------------------------------------
# Independent re-evaluation of the displayed l = 5 equations
# ---------------------------------------------------------------------------

_ONE = {(0, 0): 1}
_M_ONE_MINUS_ZQ = {(0, 0): -1, (1, 1): 1}          # -(1 - zq)
_TWO_FACTORS = {(0, 0): 1, (1, 1): -1, (1, 2): -1, (2, 3): 1}  # (1-zq)(1-zq^2)


def _zq(e: int) -> dict:
    return {(1, e): 1}


P500, P410, P401, P320, P302, P311, P221 = (
    Profile((5, 0, 0)), Profile((4, 1, 0)), Profile((4, 0, 1)), Profile((3, 2, 0)),
    Profile((3, 0, 2)), Profile((3, 1, 1)), Profile((2, 2, 1)),
)

# name -> (lhs profile, [(z,q-polynomial prefactor, target profile, shift)])
QDIFF_EQUATIONS: dict[str, tuple[Profile, list[tuple[dict, Profile, int]]]] = {
    "qdiff500": (P500, [(_ONE, P410, 1)]),
    "qdiff410": (P410, [(_ONE, P401, 1), (_ONE, P320, 1), (_M_ONE_MINUS_ZQ, P311, 2)]),
    "qdiff401": (P401, [(_ONE, P500, 1), (_ONE, P311, 1), (_M_ONE_MINUS_ZQ, P410, 2)]),
    "qdiff320": (P320, [(_ONE, P311, 1), (_ONE, P302, 1), (_M_ONE_MINUS_ZQ, P221, 2)]),
    "qdiff311": (P311, [
        (_ONE, P410, 1), (_ONE, P302, 1), (_ONE, P221, 1),
        (_M_ONE_MINUS_ZQ, P401, 2), (_M_ONE_MINUS_ZQ, P320, 2), (_M_ONE_MINUS_ZQ, P221, 2),
        (_TWO_FACTORS, P311, 3),
    ]),
    "qdiff302": (P302, [(_ONE, P401, 1), (_ONE, P221, 1), (_M_ONE_MINUS_ZQ, P311, 2)]),
    "qdiff221": (P221, [
        (_ONE, P320, 1), (_ONE, P311, 1), (_ONE, P221, 1),
        (_M_ONE_MINUS_ZQ, P311, 2), (_M_ONE_MINUS_ZQ, P302, 2), (_M_ONE_MINUS_ZQ, P221, 2),
        (_TWO_FACTORS, P221, 3),
    ]),
    "qdiff401bis": (P401, [(_ONE, P311, 1), (_zq(1), P410, 2)]),
    "qdiff302bis": (P302, [(_ONE, P221, 1), (_zq(1), P311, 2), (_zq(2), P410, 3)]),
    "qdiff320bis": (P320, [(_ONE, P311, 1), (_zq(1), P221, 2), (_zq(2), P311, 3), (_zq(3), P410, 4)]),
}


@dataclass(frozen=True)
class Residual:
    name: str
    ok: bool
    first_offender: tuple[int, int, int] | None  # (z exponent, q exponent, coefficient)

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "first_offender": self.first_offender}


def equation_residual(G: dict[Profile, ZQSeries], lhs: Profile, rhs) -> ZQSeries:
    out = G[lhs]
    for poly, target, shift in rhs:
        out = out - zq_mul_poly(zq_sub(G[target], shift), poly)
    return out


def verify_qdiff_system(M: int, N: int, names=None, G=None) -> list[Residual]:
    """Residuals of the displayed l = 5 equations on the solver output."""
    if G is None:
        G = solve_G(P410, M, N)
    names = list(QDIFF_EQUATIONS) if names is None else list(names)
    report = []
    for name in names:
        lhs, rhs = QDIFF_EQUATIONS[name]
        res = equation_residual(G, lhs, rhs)
        off = res.first_nonzero()
        report.append(Residual(name, off is None, off))
    return report


# ---------------------------------------------------------------------------
# The printed order-4 recurrence for g_(4,1,0)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceSpec:
    order: int
    signs: dict
    lags: dict
    polys: dict  # name -> (prefactor monomials, body monomials)
    body_sizes: dict

    def coefficient(self, name: str, k: int) -> QLaurent:
        pre, body = self.polys[name]
        inst = lambda mons: QLaurent((m * k + o, c) for c, m, o in mons)  # noqa: E731
        return inst(pre) * inst(body)


def load_recg410() -> RecurrenceSpec:
    raw = json.loads(resources.files("cylindric.data").joinpath("recg410.json").read_text())
    polys = {
        name: (tuple(map(tuple, p["prefactor"])), tuple(map(tuple, p["body"])))
        for name, p in raw["polys"].items()
    }
    spec = RecurrenceSpec(4, raw["signs"], raw["lags"], polys, raw["body_sizes"])
    for name, (_, body) in polys.items():
        if len(body) != spec.body_sizes[name]:
            raise ValueError(f"recurrence data for {name} has {len(body)} monomials")
    return spec


@dataclass(frozen=True)
class RecurrenceCheck:
    equation: str
    source: str
    k: int
    ok: bool
    first_offender: tuple[int, int] | None  # (q exponent, coefficient)

    def to_json(self) -> dict:
        return {
            "equation": self.equation, "source": self.source, "k": self.k,
            "ok": self.ok, "first_offender": self.first_offender,
        }


def _first(s: QSeries) -> tuple[int, int] | None:
    v = s.valuation()
    return None if v is None else (v, s[v])


def _g_source(source: str, K: int, N: int) -> dict[Profile, ZQSeries]:
    if source == "solver":
        return solve_G(P410, K + 1, N)
    if source == "sums":
        from .sums import builtin_specs, eval_sum

        specs = builtin_specs()
        return {
            P410: eval_sum(specs["sum410"], K + 1, N),
            P401: eval_sum(specs["sum401"], K + 1, N),
            P320: eval_sum(specs["sum320"], K + 1, N),
            P311: eval_sum(specs["sum311"], K + 1, N),
        }
    raise ValueError(f"unknown source {source!r}")


def verify_recg410(K: int, N: int, source: str = "solver", G=None) -> list[RecurrenceCheck]:
    """Residual of the order-4 recurrence for ``k = 4..K``."""
    if K < 4:
        raise ValueError("the order-4 recurrence needs K >= 4")
    rec = load_recg410()
    G = _g_source(source, K, N) if G is None else G
    g = G[P410]
    out = []
    for k in range(4, K + 1):
        total = QSeries.zero(N)
        for name in "abcde":
            term = rec.coefficient(name, k).mul_series(g[k - rec.lags[name]])
            total = total + term * rec.signs[name]
        off = _first(total)
        out.append(RecurrenceCheck("recg410", source, k, off is None, off))
    return out


def verify_qrec410(K: int, N: int, source: str = "solver", G=None) -> list[RecurrenceCheck]:
    """Coefficient form of the (4,1,0) equation for ``k = 1..K``."""
    G = _g_source(source, K, N) if G is None else G
    out = []
    for k in range(1, K + 1):
        rhs = (
            G[P401][k].shift(k) + G[P320][k].shift(k)
            - G[P311][k].shift(2 * k) + G[P311][k - 1].shift(2 * k - 1)
        )
        off = _first(G[P410][k] - rhs)
        out.append(RecurrenceCheck("qrec410", source, k, off is None, off))
    return out

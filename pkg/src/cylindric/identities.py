"""Named identity checks returning structured pass/fail reports."""
from __future__ import annotations

from dataclasses import dataclass, field

from .products import G_product, ag_product, check_symmetry, named_product
from .profiles import Profile, as_profile, borodin_exponents, compositions, hook_exponents, rotate
from .qalg import QSeries, ZQSeries, first_mismatch

__all__ = ["Report", "IDENTITIES", "verify_identity", "compare", "compare_bivariate"]


@dataclass
class Report:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    parts: list[Report] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok}
        out.update(self.detail)
        if self.parts:
            out["parts"] = [p.to_json() for p in self.parts]
        return out

    def first_failure(self) -> Report | None:
        if self.ok:
            return None
        for p in self.parts:
            hit = p.first_failure()
            if hit is not None:
                return hit
        return self


def _mismatch_json(mm):
    if mm is None:
        return None
    e, a, b = mm
    return {"exponent": e, "lhs": str(a), "rhs": str(b)}


def _strs(t):
    return None if t is None else [str(x) for x in t]


def compare(name: str, lhs: QSeries, rhs: QSeries) -> Report:
    mm = first_mismatch(lhs, rhs)
    return Report(name, mm is None, {"order": min(lhs.order, rhs.order), "first_mismatch": _mismatch_json(mm)})


def compare_bivariate(name: str, lhs: ZQSeries, rhs: ZQSeries) -> Report:
    zdeg = min(lhs.zdeg, rhs.zdeg)
    for m in range(zdeg):
        mm = first_mismatch(lhs[m], rhs[m])
        if mm is not None:
            e, a, b = mm
            return Report(name, False, {"zdeg": zdeg - 1, "order": lhs.order,
                                        "first_mismatch": {"z": m, "exponent": e, "lhs": str(a), "rhs": str(b)}})
    return Report(name, True, {"zdeg": zdeg - 1, "order": min(lhs.order, rhs.order), "first_mismatch": None})


def _group(name: str, parts: list[Report], **detail) -> Report:
    return Report(name, all(p.ok for p in parts), dict(detail), parts)


def _rr(order: int, **_) -> Report:
    from .sums import builtin_specs, eval_sum_at_1

    specs = builtin_specs()
    return _group("rr", [compare(n, eval_sum_at_1(specs[n], order), named_product(n, order)) for n in ("rr1", "rr2")])


def _th_main(order: int, **_) -> Report:
    from .sums import SPEC_PROFILES, builtin_specs, eval_sum_at_1

    specs = builtin_specs()
    parts = [
        compare(f"{name} = G{''.join(map(str, prof))}", eval_sum_at_1(specs[name], order), G_product(prof, order))
        for name, prof in SPEC_PROFILES.items()
    ]
    return _group("th-main", parts)


def _sum_side(order: int, zdeg: int = 6, **_) -> Report:
    from .solver import solve_G
    from .sums import SPEC_PROFILES, builtin_specs, eval_sum

    specs = builtin_specs()
    parts = []
    for name, prof in SPEC_PROFILES.items():
        c = Profile(prof)
        G = solve_G(c, zdeg + 1, order)[c]
        parts.append(compare_bivariate(f"{name} = G{''.join(map(str, prof))}(z,q)", eval_sum(specs[name], zdeg + 1, order), G))
    return _group("sum-side", parts)


def _products(order: int, **_) -> Report:
    from .products import F_product

    parts = []
    for prof in ((5, 0, 0), (4, 1, 0), (4, 0, 1), (3, 2, 0), (3, 0, 2), (3, 1, 1), (2, 2, 1)):
        name = "prod" + "".join(map(str, prof))
        parts.append(compare(name, G_product(prof, order), named_product(name, order)))
    parts.append(compare("F21 = prod21", F_product((2, 1), order), named_product("prod21", order)))
    parts.append(compare("F30 = prod30", F_product((3, 0), order), named_product("prod30", order)))
    return _group("products", parts)


def _asw7(order: int, **_) -> Report:
    from .sums import builtin_specs, eval_sum_at_1

    return compare("asw7", eval_sum_at_1(builtin_specs()["asw7"], order), named_product("asw7", order))


def _asw500(order: int, **_) -> Report:
    from .sums import asw500_sum, builtin_specs, eval_sum_at_1

    lhs = asw500_sum(order)
    return _group("asw500", [
        compare("asw500 = prod500", lhs, named_product("prod500", order)),
        compare("asw500 = sum500(1,q)", lhs, eval_sum_at_1(builtin_specs()["sum500"], order)),
    ])


def _ag(order: int, r: int | None = None, i: int | None = None, **_) -> Report:
    from .sums import ag_spec, eval_sum_at_1

    rs = [r] if r is not None else [2, 3, 4]
    parts = []
    for rr in rs:
        is_ = [i] if i is not None else range(1, rr + 1)
        for ii in is_:
            parts.append(compare(f"ag({rr},{ii})", eval_sum_at_1(ag_spec(rr, ii), order), ag_product(rr, ii, order)))
    return _group("ag", parts)


def _oracle(order: int, profile=None, zdeg: int = 4, **_) -> Report:
    from .oracle import oracle_F
    from .solver import solve_F

    profiles = [as_profile(profile)] if profile is not None else [
        Profile(p) for p in ((2, 1), (3, 0), (1, 1, 0), (2, 1, 1), (3, 1, 1))
    ]
    size = min(order, 13) - 1 if profile is None else order - 1
    parts = []
    for c in profiles:
        F = solve_F(c, zdeg + 1, size + 1)
        parts.append(compare_bivariate(f"F{c.label()} = oracle", F, oracle_F(c, zdeg, size)))
    return _group("oracle", parts, max_part=zdeg, max_size=size)


def _borodin_dual(order: int = 0, kmax: int = 4, lmax: int = 6, **_) -> Report:
    checked = 0
    bad = []
    for k in range(1, kmax + 1):
        for ell in range(0, lmax + 1):
            for c in compositions(ell, k):
                checked += 1
                if borodin_exponents(c) != hook_exponents(c):
                    bad.append(list(c.parts))
    return Report("borodin-dual", not bad, {"checked": checked, "disagreements": bad[:10]})


def _symmetry(order: int, lmax: int = 5, **_) -> Report:
    parts = []
    for ell in range(1, lmax + 1):
        for c in compositions(ell, 3):
            parts.append(Report(f"symmetry {c.label()}", check_symmetry(c, order), {"rotation": list(rotate(c).parts)}))
    return _group("symmetry", parts, order=order)


def _qdiff(order: int, zdeg: int = 5, names=None, **_) -> Report:
    from .solver import verify_qdiff_system

    res = verify_qdiff_system(zdeg + 1, order, names=names)
    parts = [Report(r.name, r.ok, {"first_offender": _strs(r.first_offender)}) for r in res]
    return _group("qdiff", parts, zdeg=zdeg, order=order)


def _qdiff_bis(order: int, zdeg: int = 5, **_) -> Report:
    rep = _qdiff(order, zdeg, names=["qdiff401bis", "qdiff302bis", "qdiff320bis"])
    rep.name = "qdiff-bis"
    return rep


def _recg410(order: int, kmin: int = 4, kmax: int = 12, source: str = "both", **_) -> Report:
    from .solver import verify_recg410

    sources = ["solver", "sums"] if source == "both" else [source]
    parts = []
    for src in sources:
        for r in verify_recg410(kmax, order, src):
            if r.k >= kmin:
                parts.append(Report(f"recg410 k={r.k} [{src}]", r.ok, {"first_offender": _strs(r.first_offender)}))
    return _group("recg410", parts, order=order)


def _qrec410(order: int, kmin: int = 1, kmax: int = 12, source: str = "both", **_) -> Report:
    from .solver import verify_qrec410

    sources = ["solver", "sums"] if source == "both" else [source]
    parts = []
    for src in sources:
        for r in verify_qrec410(kmax, order, src):
            if r.k >= kmin:
                parts.append(Report(f"qrec410 k={r.k} [{src}]", r.ok, {"first_offender": _strs(r.first_offender)}))
    return _group("qrec410", parts, order=order)


def _open_problems(order: int, zdeg: int = 3, **_) -> Report:
    from .sums import open_problem_checks

    parts = [
        Report(" vs ".join(r.pair), r.ok, r.to_json())
        for r in open_problem_checks(order, witness_zdeg=zdeg + 1)
    ]
    return _group("open-problems", parts)


IDENTITIES = {
    "rr": _rr,
    "th-main": _th_main,
    "sum-side": _sum_side,
    "products": _products,
    "asw7": _asw7,
    "asw500": _asw500,
    "ag": _ag,
    "oracle": _oracle,
    "borodin-dual": _borodin_dual,
    "symmetry": _symmetry,
    "qdiff": _qdiff,
    "qdiff-bis": _qdiff_bis,
    "recg410": _recg410,
    "qrec410": _qrec410,
    "open-problems": _open_problems,
}


def verify_identity(name: str, order: int, **params) -> Report:
    try:
        fn = IDENTITIES[name]
    except KeyError:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(IDENTITIES)}") from None
    return fn(order=order, **{k: v for k, v in params.items() if v is not None})

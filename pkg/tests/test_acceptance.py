"""Acceptance gate: twelve criteria, exact coefficient equality throughout."""
import time

from cylindric.checks import conjecture_sweep, expected_Q1
from cylindric.oracle import oracle_F
from cylindric.products import F_product, G_product, ag_product, named_product
from cylindric.profiles import Profile, borodin_exponents, compositions, hook_exponents, rotate
from cylindric.qalg import first_mismatch
from cylindric.solver import solve_F, solve_G, verify_qdiff_system, verify_qrec410, verify_recg410
from cylindric.sums import (
    SPEC_PROFILES,
    ag_spec,
    asw500_sum,
    builtin_specs,
    eval_sum,
    eval_sum_at_1,
    open_problem_checks,
)

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, note: str) -> None:
    RESULTS[n] = (ok, note)
    print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {note}")
    assert ok, note


def test_01_rogers_ramanujan():
    specs = builtin_specs()
    notes, ok = [], True
    for name in ("rr1", "rr2"):
        t = time.perf_counter()
        good = eval_sum_at_1(specs[name], 500) == named_product(name, 500)
        dt = time.perf_counter() - t
        ok &= good and dt < 2.0
        notes.append(f"{name} equal={good} {dt:.2f}s")
    record(1, ok, "to q^500; " + ", ".join(notes))


def test_02_l5_sum_product():
    t = time.perf_counter()
    bad = []
    specs = builtin_specs()
    for name, prof in SPEC_PROFILES.items():
        if eval_sum_at_1(specs[name], 150) != G_product(prof, 150):
            bad.append(name)
    dt = time.perf_counter() - t
    record(2, not bad and dt < 60, f"7 sum sides = G_product to q^150 in {dt:.1f}s; failing: {bad or 'none'}")


def test_03_bivariate_sum_side():
    bad = []
    specs = builtin_specs()
    for name, prof in SPEC_PROFILES.items():
        c = Profile(prof)
        if solve_G(c, 7, 60)[c] != eval_sum(specs[name], 7, 60):
            bad.append(name)
    record(3, not bad, f"solve_G = eval_sum, z-degree <= 6, q-order 60; failing: {bad or 'none'}")


def test_04_oracle():
    bad = []
    for c in [(2, 1), (3, 0), (1, 1, 0), (2, 1, 1), (3, 1, 1)]:
        if solve_F(c, 5, 13) != oracle_F(c, 4, 12):
            bad.append(c)
    record(4, not bad, f"solve_F = oracle_F on max-part <= 4, size <= 12; failing: {bad or 'none'}")


def test_05_borodin_dual():
    checked, bad = 0, []
    for k in range(1, 5):
        for ell in range(7):
            for c in compositions(ell, k):
                checked += 1
                if borodin_exponents(c) != hook_exponents(c):
                    bad.append(c.parts)
    record(5, checked == 329 and not bad, f"{checked - len(bad)}/{checked} compositions agree")


def test_06_symmetry():
    bad, count = [], 0
    for ell in range(1, 6):
        for c in compositions(ell, 3):
            count += 1
            base = F_product(c, 80)
            swapped = Profile((c.parts[1], c.parts[0], c.parts[2]))
            if F_product(swapped, 80) != base or F_product(rotate(c), 80) != base:
                bad.append(c.parts)
    record(6, not bad, f"{count} profiles, swap and rotation to q^80; failing: {bad or 'none'}")


def test_07_recurrence():
    parts = []
    for src in ("solver", "sums"):
        parts += verify_recg410(12, 120, src)
        parts += verify_qrec410(12, 120, src)
    bad = [(r.equation, r.source, r.k) for r in parts if not r.ok]
    n_rec = sum(1 for r in parts if r.equation == "recg410")
    n_q = len(parts) - n_rec
    record(7, not bad and n_rec == 18 and n_q == 24,
           f"recg410 k=4..12 and qrec410 k=1..12, both sources, to q^120; failing: {bad or 'none'}")


def test_08_qdiff_systems():
    res = verify_qdiff_system(6, 40, names=["qdiff401bis", "qdiff302bis", "qdiff320bis"])
    record(8, len(res) == 3 and all(r.ok for r in res), "three auxiliary q-difference equations, z-degree <= 5, q-order 40")


def test_09_bounded_polynomials():
    reports = conjecture_sweep(max_ell=5, max_n=5, order=120)
    p_reps = [r for r in reports if r.kind == "P"]
    q_reps = [r for r in reports if r.kind == "Q" and r.profile.ell in (2, 4, 5)]
    ok_p = all(r.nonnegative and r.vanishing and r.value_at_1 == r.expected_at_1 for r in p_reps)
    ok_q = all(r.nonnegative and r.vanishing and r.value_at_1 == r.expected_at_1 for r in q_reps)
    q221 = [r.value_at_1 for r in q_reps if r.profile.parts == (2, 2, 1)]
    ok_221 = q221 == [6**n for n in range(6)]
    raised = sum(1 for r in p_reps + q_reps if r.order > r.requested_order)
    assert all(r.expected_at_1 == expected_Q1(r.profile.ell, r.n) for r in q_reps)
    record(9, ok_p and ok_q and ok_221,
           f"{len(p_reps)} P and {len(q_reps)} Q reports; Q(2,2,1)(1) = {q221}; "
           f"{raised} reports needed order > 120 to certify the vanishing window")


def test_10_asw():
    specs = builtin_specs()
    asw7 = eval_sum_at_1(specs["asw7"], 200) == named_product("asw7", 200)
    printed = first_mismatch(eval_sum_at_1(specs["asw7_top_plus1"], 200), named_product("asw7", 200))
    s500 = asw500_sum(60)
    ok500 = s500 == named_product("prod500", 60) and s500 == eval_sum_at_1(specs["sum500"], 60)
    record(10, asw7 and ok500,
           f"mod-7 sum with binomial top 2n1 = product to q^200 ({asw7}); "
           f"top 2n1+1 differs at q^{printed[0]} ({printed[1]} vs {printed[2]}); asw500 to q^60 ({ok500})")


def test_11_andrews_gordon():
    bad = [(r, i) for r in (2, 3, 4) for i in range(1, r + 1)
           if eval_sum_at_1(ag_spec(r, i), 100) != ag_product(r, i, 100)]
    record(11, not bad, f"r in 2..4, all i, to q^100; failing: {bad or 'none'}")


def test_12_open_problems():
    reports = open_problem_checks(150, witness_zdeg=4)
    ok = all(r.equal_at_z1 and r.bivariate_witness is not None and r.bivariate_witness[0] <= 3 for r in reports)
    wits = "; ".join(f"{'/'.join(r.pair)} witness (z^{r.bivariate_witness[0]} q^{r.bivariate_witness[1]}: "
                     f"{r.bivariate_witness[2]} vs {r.bivariate_witness[3]})" for r in reports if r.bivariate_witness)
    record(12, ok, f"equal at z=1 to q^150; {wits}")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass

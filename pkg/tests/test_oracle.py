import itertools

import pytest

from cylindric.oracle import BudgetExceeded, enumerate_cylindric, is_cylindric, iter_cylindric, oracle_F
from cylindric.products import F_product
from cylindric.profiles import Profile, rotate


def partitions(n, largest):
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in partitions(n - p, p):
            yield (p,) + rest


def naive_count(c, M, N):
    """All k-tuples of partitions, filtered by the defining inequalities."""
    c = Profile(c)
    k = c.k
    parts = [p for n in range(N + 1) for p in partitions(n, M)]
    table = [[0] * (N + 1) for _ in range(M + 1)]

    def get(row, j):
        return row[j - 1] if j - 1 < len(row) else 0

    for rows in itertools.product(parts, repeat=k):
        size = sum(map(sum, rows))
        if size > N:
            continue
        ok = True
        for j in range(1, N + max(c.parts) + 2):
            for i in range(k):
                nxt = (i + 1) % k
                if get(rows[i], j) < get(rows[nxt], j + c.parts[nxt]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            m = max((r[0] for r in rows if r), default=0)
            table[m][size] += 1
    return table


@pytest.mark.parametrize("c", [(2, 1), (3, 0), (1, 1, 0), (2, 1, 1), (1, 0, 0, 1)])
def test_matches_naive(c):
    M, N = 3, 7
    assert [list(r) for r in enumerate_cylindric(c, M, N).counts] == naive_count(c, M, N)


def test_k1_is_partitions():
    t = enumerate_cylindric((3,), 10, 10)
    assert t.totals() == [sum(1 for _ in partitions(n, n)) for n in range(11)]


def test_examples():
    assert enumerate_cylindric((1, 0), 3, 3).totals() == [1, 1, 2, 3]
    for c in [(2, 1), (3, 0), (1, 1, 0)]:
        t = enumerate_cylindric(c, 3, 6)
        assert t.counts[0][0] == 1
        assert all(x == 0 for x in t.counts[0][1:])
    t = enumerate_cylindric((2, 1), 5, 5)
    assert t.totals() == list(F_product((2, 1), 6).coeffs)


@pytest.mark.parametrize("c", [(2, 1), (3, 0), (1, 1, 0), (2, 1, 1), (3, 1, 1), (2,), (1, 1)])
def test_totals_match_borodin(c):
    t = enumerate_cylindric(c, 12, 12)
    assert t.totals() == list(F_product(c, 13).coeffs)


def test_generated_objects_are_valid():
    c = Profile((2, 1, 1))
    seen = set()
    for rows in iter_cylindric(c, 3, 8):
        assert is_cylindric(c, rows)
        assert rows not in seen
        seen.add(rows)


def test_is_cylindric_rejects():
    c = Profile((1, 0))
    assert is_cylindric(c, ((2,), (2,)))
    assert not is_cylindric(c, ((1,), (2,)))  # row 1 must dominate row 2
    assert not is_cylindric(c, ((1, 2), ()))


def test_rotation_totals():
    for c in [(2, 1, 0), (3, 1, 1), (1, 2)]:
        a = enumerate_cylindric(c, 4, 10).totals()
        b = enumerate_cylindric(rotate(Profile(c)), 4, 10).totals()
        assert a == b


def test_oracle_F_shape():
    F = oracle_F((2, 1), 4, 12)
    assert (F.zdeg, F.order) == (5, 13)
    assert list(F[0].coeffs) == [1] + [0] * 12
    # max part exactly 1: partitions into 1s with the interlacing constraint
    t = enumerate_cylindric((2, 1), 1, 12)
    assert list(F[1].coeffs) == list(t.counts[1])


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_cylindric((3, 1, 1), 6, 20, budget=1000)
    with pytest.raises(ValueError):
        enumerate_cylindric((2, 1), -1, 3)


def test_json():
    d = enumerate_cylindric((2, 1), 2, 3).to_json()
    assert d["profile"] == [2, 1]
    assert d["counts"][0] == ["1", "0", "0", "0"]

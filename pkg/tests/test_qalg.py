import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cylindric.qalg import (
    QLaurent,
    QSeries,
    ZQSeries,
    _mul_kronecker,
    _mul_schoolbook,
    eval_at_q1,
    first_mismatch,
    inv_poch_inf,
    inv_qfac,
    poch_finite,
    qbinom,
    qpoch_inf,
    qs_div_one_minus,
    qs_mul,
    zq_div_inf_poch,
    zq_mul_inf_poch,
    zq_mul_poch_prefix,
    zq_sub,
)

coeff = st.integers(min_value=-10**30, max_value=10**30)


def series(min_size=1, max_size=30):
    return st.lists(coeff, min_size=min_size, max_size=max_size).map(QSeries)


def same_order_pair():
    return st.integers(1, 30).flatmap(
        lambda n: st.tuples(*(st.lists(coeff, min_size=n, max_size=n).map(QSeries) for _ in range(3)))
    )


def partitions_count(n, parts):
    ways = [1] + [0] * n
    for p in parts:
        for i in range(p, n + 1):
            ways[i] += ways[i - p]
    return ways[n]


class TestQSeries:
    def test_identity_product(self):
        assert qs_mul(QSeries([1, 0]), QSeries([1, 1])) == QSeries([1, 1])

    def test_hand_expansion(self):
        a = QSeries([1, -1, 0, 0, 0, 0, 0, 0])
        b = QSeries([1, 0, -1, 0, 0, 0, 0, 0])
        assert qs_mul(a, b) == QSeries([1, -1, -1, 1, 0, 0, 0, 0])

    def test_inverse_pair(self):
        geo = qs_div_one_minus(QSeries.one(4), 1)
        assert qs_mul(geo, QSeries([1, -1, 0, 0])) == QSeries.one(4)

    def test_div_one_minus_examples(self):
        assert qs_div_one_minus(QSeries.one(5), 1) == QSeries([1] * 5)
        assert qs_div_one_minus(QSeries.one(7), 3) == QSeries([1, 0, 0, 1, 0, 0, 1])
        assert qs_div_one_minus(QSeries([1, 0, 0, -1, 0, 0]), 3) == QSeries.one(6)

    @pytest.mark.parametrize("e", [0, -2])
    def test_div_one_minus_rejects(self, e):
        with pytest.raises(ValueError):
            qs_div_one_minus(QSeries.one(3), e)

    def test_mixed_order_takes_minimum(self):
        a = QSeries([1, 2, 3, 4])
        b = QSeries([1, 1])
        assert (a + b).order == 2
        assert (a * b).order == 2

    def test_shift_and_valuation(self):
        s = QSeries([1, 2, 3, 4]).shift(2)
        assert s == QSeries([0, 0, 1, 2])
        assert s.valuation() == 2
        assert QSeries.zero(3).valuation() is None

    def test_json_round_trip(self):
        s = QSeries([1, -5, 10**40])
        text = json.dumps(s.to_json())
        assert QSeries.from_json(json.loads(text)) == s
        assert json.dumps(QSeries.from_json(json.loads(text)).to_json()) == text
        assert all(isinstance(x, str) for x in s.to_json())

    @given(same_order_pair())
    def test_ring_laws(self, abc):
        a, b, c = abc
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(series(2), series(2), st.data())
    def test_truncation_coherence(self, a, b, data):
        n = min(a.order, b.order)
        m = data.draw(st.integers(1, n))
        assert (a * b).truncate(m) == a.truncate(m) * b.truncate(m)

    @given(st.lists(coeff, min_size=1, max_size=120), st.lists(coeff, min_size=1, max_size=120))
    def test_kronecker_matches_schoolbook(self, a, b):
        n = min(len(a), len(b))
        assert _mul_kronecker(a[:n], b[:n], n) == _mul_schoolbook(a[:n], b[:n], n)

    def test_kronecker_large_orders(self):
        # both paths across the dispatch threshold
        a = inv_poch_inf([(1, 1)] * 3, 600)
        b = qpoch_inf(600)
        assert list(qs_mul(a, b).coeffs) == _mul_schoolbook(a.coeffs, b.coeffs, 600)


class TestProducts:
    def test_rr_partition_count(self):
        assert inv_poch_inf([(1, 5), (4, 5)], 7) == QSeries([1, 1, 1, 1, 2, 2, 3])

    def test_empty_product(self):
        assert inv_poch_inf([], 5) == QSeries.one(5)

    def test_partition_numbers(self):
        assert inv_poch_inf([(1, 1)], 6) == QSeries([1, 1, 2, 3, 5, 7])
        p = inv_poch_inf([(1, 1)], 50)
        assert list(p.coeffs) == [partitions_count(n, range(1, n + 1)) for n in range(50)]

    def test_rejects_bad_start(self):
        with pytest.raises(ValueError):
            inv_poch_inf([(0, 3)], 5)

    def test_euler_pair(self):
        assert qpoch_inf(80) * inv_poch_inf([(1, 1)], 80) == QSeries.one(80)

    def test_inv_qfac(self):
        assert inv_qfac(0, 5) == QSeries.one(5)
        assert inv_qfac(-1, 5) == QSeries.zero(5)
        assert inv_qfac(2, 6) * poch_finite(1, 1, 2).to_series(6) == QSeries.one(6)


class TestLaurent:
    def test_poch_finite_examples(self):
        assert poch_finite(1, 1, 0) == QLaurent({0: 1})
        assert poch_finite(1, 1, 2) == QLaurent({0: 1, 1: -1, 2: -1, 3: 1})
        assert poch_finite(3, 3, 1) == QLaurent({0: 1, 3: -1})

    def test_qbinom_examples(self):
        assert qbinom(2, 1) == QLaurent({0: 1, 1: 1})
        assert qbinom(4, 2) == QLaurent({0: 1, 1: 1, 2: 2, 3: 1, 4: 1})
        assert qbinom(3, 5) == QLaurent({})
        assert qbinom(3, -1) == QLaurent({})

    @given(st.integers(0, 25), st.data())
    def test_qbinom_symmetry_and_pascal(self, m, data):
        r = data.draw(st.integers(0, m))
        assert qbinom(m, r) == qbinom(m, m - r)
        if m >= 1:
            assert qbinom(m, r) == qbinom(m - 1, r - 1) + qbinom(m - 1, r).shift(r)

    def test_qbinom_is_quotient(self):
        for m in range(8):
            for r in range(m + 1):
                lhs = qbinom(m, r) * poch_finite(1, 1, r) * poch_finite(1, 1, m - r)
                assert lhs == poch_finite(1, 1, m)

    def test_eval_at_q1(self):
        assert eval_at_q1(qbinom(4, 2)) == 6
        assert eval_at_q1(QLaurent({})) == 0
        assert eval_at_q1(QLaurent({0: 1, 1: -1})) == 0

    def test_no_zero_terms_stored(self):
        p = QLaurent({0: 1, 2: 0, -3: 4})
        assert p.terms == {0: 1, -3: 4}
        assert p - p == QLaurent({})

    def test_negative_exponents(self):
        p = QLaurent({-2: 1, 1: 3})
        assert p.min_exponent() == -2
        assert p * QLaurent({2: 1}) == QLaurent({0: 1, 3: 3})
        s = QSeries([1, 1, 1, 1, 1, 1])
        # q^{-2} shrinks the known window by two
        assert QLaurent({-2: 1}).mul_series(s) == QSeries([1, 1, 1, 1])

    def test_json(self):
        p = QLaurent({-3: 10**25, 4: -1})
        assert QLaurent.from_json(json.loads(json.dumps(p.to_json()))) == p


class TestZQ:
    def test_zq_sub_examples(self):
        F = ZQSeries([QSeries.one(5), QSeries.one(5)])
        assert zq_sub(F, 0) == F
        assert zq_sub(F, 2) == ZQSeries([QSeries.one(5), QSeries([0, 0, 1, 0, 0])])

    def test_zq_sub_shift_example(self):
        G = ZQSeries.one(3, 6)
        # [z^1] of z q G(z q^2) is q
        shifted = zq_sub(G, 2)
        assert shifted[0].shift(1) == QSeries([0, 1, 0, 0, 0, 0])

    @given(st.integers(0, 4), st.integers(0, 4))
    def test_zq_sub_composes(self, a, b):
        F = ZQSeries([QSeries([m + i for i in range(12)]) for m in range(4)])
        assert zq_sub(zq_sub(F, a), b) == zq_sub(F, a + b)

    def test_zq_sub_rejects_negative(self):
        with pytest.raises(ValueError):
            zq_sub(ZQSeries.one(2, 2), -1)

    def test_poch_prefix(self):
        one = ZQSeries.one(3, 6)
        assert zq_mul_poch_prefix(one, 0) == one
        assert zq_mul_poch_prefix(one, 1) == ZQSeries([QSeries.one(6), QSeries([0, -1, 0, 0, 0, 0]), QSeries.zero(6)])
        assert zq_mul_poch_prefix(one, 2) == ZQSeries(
            [QSeries.one(6), QSeries([0, -1, -1, 0, 0, 0]), QSeries([0, 0, 0, 1, 0, 0])]
        )

    def test_euler_expansion(self):
        F = zq_div_inf_poch(ZQSeries.one(5, 20))
        for m in range(5):
            assert F[m] == inv_qfac(m, 20).shift(m)
        # q^m/(q;q)_m counts partitions with exactly m parts
        for n in range(20):
            assert F[3][n] == sum(1 for _ in _parts_exactly(n, 3))

    def test_inverse_pair(self):
        G = ZQSeries([QSeries([(3 * m + i) % 7 for i in range(15)]) for m in range(5)])
        assert zq_mul_inf_poch(zq_div_inf_poch(G)) == G

    def test_json(self):
        G = ZQSeries([QSeries([1, 2]), QSeries([0, 10**30])])
        assert ZQSeries.from_json(json.loads(json.dumps(G.to_json()))) == G

    def test_first_nonzero(self):
        G = ZQSeries([QSeries.zero(4), QSeries([0, 0, 5, 1])])
        assert G.first_nonzero() == (1, 2, 5)
        assert first_mismatch(QSeries([1, 2, 3]), QSeries([1, 2, 4])) == (2, 3, 4)


def _parts_exactly(n, m, largest=None):
    if largest is None:
        largest = n
    if m == 0:
        if n == 0:
            yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in _parts_exactly(n - p, m - 1, p):
            yield (p,) + rest

import pytest

from cylindric.identities import IDENTITIES, compare, compare_bivariate, verify_identity
from cylindric.qalg import QSeries, ZQSeries

SMALL = {
    "rr": 100, "th-main": 40, "sum-side": 30, "products": 40, "asw7": 60, "asw500": 30, "ag": 40,
    "oracle": 10, "borodin-dual": 0, "symmetry": 30, "qdiff": 30, "qdiff-bis": 30,
    "recg410": 60, "qrec410": 60, "open-problems": 60,
}


@pytest.mark.parametrize("name", list(IDENTITIES))
def test_all_identities_pass_small(name):
    rep = verify_identity(name, SMALL[name])
    assert rep.ok, rep.to_json()


def test_compare_reports_first_mismatch():
    rep = compare("x", QSeries([1, 2, 3, 4]), QSeries([1, 2, 5]))
    assert not rep.ok
    assert rep.detail["first_mismatch"] == {"exponent": 2, "lhs": "3", "rhs": "5"}


def test_bivariate_mismatch():
    a = ZQSeries([QSeries([1, 0]), QSeries([0, 1])])
    b = ZQSeries([QSeries([1, 0]), QSeries([0, 2])])
    rep = compare_bivariate("x", a, b)
    assert rep.detail["first_mismatch"]["z"] == 1


def test_unknown():
    with pytest.raises(KeyError):
        verify_identity("nope", 10)


def test_first_failure():
    from cylindric.identities import Report

    rep = Report("top", False, parts=[Report("a", True), Report("b", False, {"why": 1})])
    assert rep.first_failure().name == "b"

import pytest
from fractions import Fraction

from backend.core.errors import WindowError
from backend.models.checks import Check, first_difference, is_integer, keep_terms, perturbed
from backend.models.exactnum import SeriesRing, TGraded, expand_factored, mono


@pytest.fixture
def ring():
    return SeriesRing.of(q=3, t=3)


def test_equal_series_have_no_difference(ring):
    """Test agreeing sides"""
    f = ring.poly({(1, 0): 2, (0, 1): -1})
    assert first_difference(Check("same", f, ring.poly({(0, 1): -1, (1, 0): 2}))) is None


def test_first_difference_reports_lowest_monomial(ring):
    """Test the reported monomial is the lowest differing one"""
    lhs = ring.poly({(1, 0): 1, (2, 1): 5})
    rhs = ring.poly({(1, 0): 1, (2, 1): 4, (0, 3): 1})
    diff = first_difference(Check("label", lhs, rhs))
    assert diff == {"label": "label", "monomial": "q^2*t", "lhs": "5", "rhs": "4"}


def test_first_difference_graded(ring):
    """Test T-graded differences name the T power"""
    lhs = TGraded(ring, [ring.one(), ring.gen("q")])
    rhs = TGraded(ring, [ring.one(), ring.gen("t")])
    diff = first_difference(Check("graded", lhs, rhs))
    assert diff["monomial"] == "q*T"
    assert diff["lhs"] == "1" and diff["rhs"] == "0"


def test_uncertified_side_raises(ring):
    """Test comparisons refuse sides that are not certified over the window"""
    geometric = expand_factored(ring, [(mono(q=1), -1)])
    with pytest.raises(WindowError):
        first_difference(Check("geometric", geometric, geometric, ring.with_windows(q=4)))


def test_scalar_checks():
    """Test non-series values compare by equality"""
    assert first_difference(Check("n", Fraction(1, 2), Fraction(1, 2))) is None
    diff = first_difference(Check("n", Fraction(1, 2), 1))
    assert diff == {"label": "n", "monomial": "1", "lhs": "1/2", "rhs": "1"}
    assert first_difference(Check("set", ("(2,1)",), ())) is not None


def test_perturbed(ring):
    """Test perturbation plants a single discrepancy"""
    f = ring.poly({(1, 1): 3})
    diff = first_difference(Check("p", f, perturbed(f)))
    assert diff["monomial"] == "1"
    assert perturbed(Fraction(1, 3)) == Fraction(4, 3)
    assert perturbed(True) is False
    assert perturbed(()) == ("perturbed",)


def test_perturbed_tables():
    """Test coefficient tables and sorted value lists are perturbed too"""
    table = {(0, 0, 0): 1}
    assert perturbed(table) == {(0, 0, 0): 2}
    assert table == {(0, 0, 0): 1}
    assert perturbed({}) == {"perturbed": 1}
    assert perturbed([-1, 1]) == [-1, 1, "perturbed"]
    diff = first_difference(Check("C(0) = delta", table, perturbed(table)))
    assert diff["label"] == "C(0) = delta"
    with pytest.raises(TypeError):
        perturbed(object())


def test_keep_terms(ring):
    """Test term filtering keeps precision"""
    f = ring.poly({(1, 0): 1, (0, 2): -2})
    kept = keep_terms(f, lambda p, c: c > 0)
    assert kept == ring.gen("q")
    assert kept.prec == f.prec


def test_is_integer():
    """Test integrality"""
    assert is_integer(Fraction(4, 2))
    assert not is_integer(Fraction(1, 2))

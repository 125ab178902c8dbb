import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from backend.core.errors import DomainError
from backend.models.exactnum import Monomial, SeriesRing, mono
from backend.models.hooks import (HookProduct, elliptic_summand, genus_hook, grid_correction, hook_b, hook_c,
                                  hook_cprime, hook_lengths_product, qt_pochhammer_grid, qt_pochhammer_lambda,
                                  qt_pochhammer_rows, qtno_summand, schur_hook_summand, theta_factors)
from backend.models.partitions import Partition, up_to_size

small_partitions = st.sampled_from(list(up_to_size(5)))


@pytest.fixture
def point():
    return {"q": Fraction(3, 5), "t": Fraction(5, 3), "z": Fraction(2, 7), "u": Fraction(7, 2)}


def test_factor_orientation():
    """Test 1 - q^-1 is stored as -q^-1 (1 - q)"""
    flipped = HookProduct.factor(mono(q=-1))
    assert flipped == HookProduct(-1, mono(q=-1), {mono(q=1): 1})


def test_factors_cancel():
    """Test identical factors cancel symbolically"""
    assert HookProduct.factor("q") * HookProduct.factor("q", -1) == HookProduct.one()
    assert HookProduct.factor(mono(q=1, t=-1)) / HookProduct.factor(mono(q=-1, t=1)) == HookProduct(-1, mono(q=1, t=-1))


def test_constant_factors_fold():
    """Test constant factors become coefficients"""
    assert HookProduct.factor(Monomial(3)) == HookProduct(-2)
    assert HookProduct.factor(Monomial(1)).is_zero
    with pytest.raises(DomainError):
        HookProduct.factor(Monomial(1), -1)
    with pytest.raises(DomainError):
        HookProduct(0).inverse()


def test_hook_c_of_single_cell():
    """Test c, c' and b of the one-cell partition"""
    one = Partition.of(1)
    assert hook_c(one) == HookProduct.factor("t")
    assert hook_cprime(one) == HookProduct.factor("q")
    assert hook_b(one) == HookProduct.factor("t") / HookProduct.factor("q")


@given(small_partitions)
def test_conjugate_swaps_c_and_cprime(lam):
    """Test c_lambda(q, t) = c'_lambda'(t, q)"""
    assert hook_c(lam) == hook_cprime(lam.conjugate, q="t", t="q")


@given(small_partitions)
def test_hook_c_at_q_equal_t(lam):
    """Test c_lambda(t, t) is the hook-length product of 1 - t^h"""
    x = Fraction(2, 3)
    assert hook_c(lam).evaluate({"q": x, "t": x}) == hook_lengths_product(lam, lambda h: 1 - x ** h)


@given(small_partitions)
@settings(deadline=None)
def test_pochhammer_forms_agree(lam):
    """Test cell, row and grid forms of (z; q, t)_lambda"""
    point = {"q": Fraction(3, 5), "t": Fraction(5, 3), "z": Fraction(2, 7)}
    cells = qt_pochhammer_lambda("z", lam)
    assert cells == qt_pochhammer_rows("z", lam)
    assert qt_pochhammer_grid("z", lam).evaluate(point) == cells.evaluate(point)


def test_pochhammer_of_two_rows(point):
    """Test (z; q, t)_(2,1) = (1 - z)(1 - z q)(1 - z/t)"""
    lam = Partition.of(2, 1)
    value = qt_pochhammer_lambda("z", lam).evaluate(point)
    z, q, t = point["z"], point["q"], point["t"]
    assert value == (1 - z) * (1 - z * q) * (1 - z / t)


@given(small_partitions)
def test_qtno_summand_at_u_one(lam):
    """Test the summand collapses to 1 at u = 1"""
    assert qtno_summand(lam).substitute({"u": Monomial(1)}) == HookProduct.one()


def test_qtno_summand_single_cell(point):
    """Test the summand of (1)"""
    value = qtno_summand(Partition.of(1)).evaluate(point)
    u, q, t = point["u"], point["q"], point["t"]
    assert value == (1 - u * q) * (1 - t / u) / ((1 - q) * (1 - t))


def test_schur_specialisation():
    """Test the Schur summand is the q = t specialisation"""
    lam = Partition.of(2, 1)
    assert schur_hook_summand(lam) == qtno_summand(lam).substitute({"t": "q"})


@given(small_partitions)
def test_elliptic_summand_at_p_order_zero(lam):
    """Test dropping every p factor gives the q,t summand"""
    assert elliptic_summand(lam, 0) == qtno_summand(lam)


def test_theta_factors_count():
    """Test theta factor enumeration"""
    assert len(theta_factors("u", 2).factors) == 5


def test_genus_hook_variables():
    """Test the genus hook lives in Z and W"""
    g1 = genus_hook(Partition.of(2, 1), 1)
    assert g1.variables() <= {"Z", "W"}
    assert genus_hook(Partition(), 3) == HookProduct.one()


def test_expand_geometric():
    """Test expansion of 1/(1 - q)"""
    series = HookProduct.factor("q", -1).expand(SeriesRing.of(q=4))
    assert [series.coefficient(mono(q=k)) for k in range(5)] == [1] * 5


@given(small_partitions)
@settings(deadline=None)
def test_conjugate_pochhammer(lam):
    """Test (z; t, q)_lam' = (-z)^|lam| q^-n(lam') t^n(lam) (1/z; q, t)_lam"""
    point = {"q": Fraction(3, 5), "t": Fraction(5, 3), "z": Fraction(2, 7)}
    z, q, t = point["z"], point["q"], point["t"]
    lhs = qt_pochhammer_lambda("z", lam.conjugate, "t", "q").evaluate(point)
    inverse = qt_pochhammer_lambda(mono(z=-1), lam).evaluate(point)
    assert lhs == (-z) ** lam.size * q ** -lam.conjugate.n_stat * t ** lam.n_stat * inverse


def test_grid_correction_of_single_cells():
    """Test the finite part of the grid product for one-cell shifts"""
    assert grid_correction("z", Partition(), Partition()) == HookProduct.one()
    assert grid_correction("z", Partition.of(1), Partition()) == HookProduct.factor(mono(z=1, t=1))
    assert grid_correction("z", Partition(), Partition.of(1)) == HookProduct.factor(mono(z=1, q=1))

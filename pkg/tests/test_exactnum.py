import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from backend.core.errors import DomainError, NonInvertibleError, StructureError, WindowError
from backend.models.exactnum import (INF, Monomial, MultiSeries, SeriesRing, TGraded, cap_laurent, expand_factored,
                                     format_scalar, format_terms, invert_unit, log_pochhammer, mono,
                                     pochhammer_factors, pochhammer_inf, series_exp, series_log, theta,
                                     theta_product)


@pytest.fixture
def qt_ring():
    return SeriesRing.of(q=6, t=6)


@pytest.fixture
def laurent_ring():
    return SeriesRing.of(q=6, u=(-3, 3))


coefficients = st.integers(min_value=-5, max_value=5)
exponents = st.tuples(st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=4))
polys = st.dictionaries(exponents, coefficients, max_size=6)


def _ring():
    return SeriesRing.of(q=4, t=4)


def test_monomial_normalises_powers():
    """Test monomial construction merges and orders powers"""
    m = Monomial(2, (("t", 1), ("q", 2), ("t", -1)))
    assert m.powers == (("q", 2),)
    assert m.coef == 2
    assert mono(3, q=1) * mono(q=-1) == Monomial(3)


def test_monomial_text_uses_canonical_order():
    """Test canonical text form of monomials"""
    assert mono(-1, u=-1, t=1, T=1).to_text() == "-t*u^-1*T"
    assert mono(Fraction(1, 2), x1=1, q=2).to_text() == "1/2*q^2*x1"


def test_format_scalar():
    """Test rational coefficients print as num/den"""
    assert format_scalar(Fraction(4, 2)) == "2"
    assert format_scalar(Fraction(-3, 6)) == "-1/2"


def test_format_terms_orders_by_grade_then_degree():
    """Test term ordering of the canonical text form"""
    entries = [({"T": 1, "t": 1, "u": -1}, -1), ({"q": 1, "u": 1}, -1), ({}, 1), ({"T": 1}, 1)]
    assert format_terms(entries, grade="T") == "1 - q*u + T - t*u^-1*T"


def test_ring_windows(laurent_ring):
    """Test ring construction, extension and removal"""
    assert laurent_ring.names == ("q", "u")
    assert laurent_ring.window("u") == (-3, 3)
    assert laurent_ring.ordinary == (True, False)
    bigger = laurent_ring.extend(T=4)
    assert bigger.names == ("q", "u", "T")
    assert bigger.without("T") == laurent_ring
    with pytest.raises(StructureError):
        SeriesRing.of(q=2).extend(q=3)
    with pytest.raises(StructureError):
        laurent_ring.index("t")


def test_poly_truncates_above_window(qt_ring):
    """Test that terms above the window lower the certified precision"""
    f = qt_ring.poly({(7, 0): 1, (1, 0): 2})
    assert f.terms == {(1, 0): 2}
    assert f.prec == (6, INF)


def test_certified_term_below_window_raises(laurent_ring):
    """Test strict collection below a Laurent window"""
    with pytest.raises(WindowError):
        laurent_ring.poly({(0, -4): 1})


def test_product_precision(qt_ring):
    """Test the product precision rule"""
    geometric = expand_factored(qt_ring, [(mono(q=1), -1)])
    assert geometric.prec[0] == 6
    product = geometric * qt_ring.poly({(1, 0): 1})
    assert product.coefficient(mono(q=6)) == 1
    assert product.prec[0] == 6


def test_negative_valuation_loses_precision(laurent_ring):
    """Test that multiplying by u^-1 costs one degree of certified u precision"""
    f = expand_factored(laurent_ring, [(mono(u=1), -1)])
    g = f * laurent_ring.monomial(mono(u=-1))
    assert g.prec[1] == 2
    with pytest.raises(WindowError):
        g.require(laurent_ring)


def test_invert_unit_geometric(qt_ring):
    """Test 1/(1 - q) is the geometric series"""
    inverse = invert_unit(qt_ring.poly({(0, 0): 1, (1, 0): -1}))
    assert all(inverse.coefficient(mono(q=k)) == 1 for k in range(7))


def test_invert_monomial_times_unit(laurent_ring):
    """Test inversion of u^-1 (1 - q)"""
    f = laurent_ring.poly({(0, -1): 1, (1, -1): -1})
    inverse = invert_unit(f)
    assert inverse.coefficient(mono(q=2, u=1)) == 1


def test_invert_without_unit_raises(qt_ring):
    """Test non-invertible series are rejected"""
    with pytest.raises(NonInvertibleError):
        invert_unit(qt_ring.zero())


@given(polys)
@settings(max_examples=40, deadline=None)
def test_ring_axioms(terms):
    """Test commutativity and distributivity of truncated products"""
    ring = _ring()
    f = ring.poly(terms)
    g = ring.poly({(1, 0): 1, (0, 2): -3, (0, 0): 2})
    h = ring.poly({(2, 1): Fraction(1, 2)})
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()


@given(polys)
@settings(max_examples=40, deadline=None)
def test_inverse_property(terms):
    """Test f * f^-1 = 1 for units"""
    ring = _ring()
    terms = dict(terms)
    terms[(0, 0)] = terms.get((0, 0), 0) or 1
    f = ring.poly(terms)
    assert f * invert_unit(f) == ring.one()


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda e: e != (0, 0)),
                       st.fractions(min_value=-3, max_value=3, max_denominator=4), max_size=4))
@settings(max_examples=30, deadline=None)
def test_exp_log_round_trip(terms):
    """Test log(exp(f)) = f for f without constant term"""
    ring = _ring()
    f = ring.poly(terms)
    assert series_log(series_exp(f)) == f


def test_exp_needs_zero_constant(qt_ring):
    """Test exp domain"""
    with pytest.raises(DomainError):
        series_exp(qt_ring.one())
    with pytest.raises(DomainError):
        series_log(qt_ring.const(2))


def test_substitute_laurent_image(laurent_ring):
    """Test u -> q u^-1 substitution"""
    f = laurent_ring.poly({(0, 1): 1, (2, 0): 1})
    g = f.substitute({"u": mono(q=1, u=-1)})
    assert g.coefficient(mono(q=1, u=-1)) == 1
    assert g.coefficient(mono(q=2)) == 1


def test_slice_and_to_ring():
    """Test slicing out a variable and moving into a bigger ring"""
    ring = SeriesRing.of(q=3)
    big = ring.extend(T=2)
    f = ring.gen("q").to_ring(big).shift(mono(T=1))
    assert f.slice("T", 1) == ring.gen("q")
    assert f.slice("T", 0).is_zero()


def test_expand_factored_orients_negative_exponent():
    """Test 1/(1 - u^-1 q) expands in ascending q"""
    ring = SeriesRing.of(q=3, u=(-3, 3))
    f = expand_factored(ring, [(mono(q=1, u=-1), -1)])
    assert f.coefficient(mono(q=2, u=-2)) == 1
    assert f.coefficient(mono(q=1, u=1)) == 0


def test_expand_factored_polynomial_factor(laurent_ring):
    """Test a polynomial factor needing no orientation"""
    f = expand_factored(laurent_ring, [(mono(u=-1), 1), (mono(u=1), 1)])
    assert f == laurent_ring.poly({(0, 0): 2, (0, 1): -1, (0, -1): -1})


def test_pochhammer_inf_euler():
    """Test (q; q)_inf against Euler's pentagonal series"""
    ring = SeriesRing.of(q=12)
    euler = pochhammer_inf(ring, mono(q=1), ["q"])
    expected = {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}
    for k in range(13):
        assert euler.coefficient(mono(q=k)) == expected.get(k, 0)


def test_pochhammer_factors_enumeration():
    """Test the factor list of (u; q, t)_inf stops at the window"""
    ring = SeriesRing.of(q=2, t=1)
    factors = pochhammer_factors(ring, mono(q=1), ["q", "t"])
    assert sorted(m.exps_in(ring) for m, _ in factors) == [(1, 0), (1, 1), (2, 0), (2, 1)]
    assert all(k == 1 for _, k in factors)
    inverted = pochhammer_factors(ring, mono(q=1), ["q"], invert=True)
    assert [k for _, k in inverted] == [-1, -1]


def test_pochhammer_factors_laurent_slack():
    """Test slack extends enumeration in Laurent directions only"""
    ring = SeriesRing.of(q=1, u=(-2, 2))
    plain = pochhammer_factors(ring, mono(u=-2), ["u"])
    loose = pochhammer_factors(ring, mono(u=-2), ["u"], slack=2)
    assert len(loose) == len(plain) + 2


def test_pochhammer_bad_base(qt_ring):
    """Test pochhammer bases must grow"""
    with pytest.raises(DomainError):
        pochhammer_factors(qt_ring, mono(q=1), [mono(q=-1)])
    with pytest.raises(DomainError):
        pochhammer_inf(qt_ring, Monomial(1), ["q"])


def test_cap_laurent(laurent_ring):
    """Test Laurent precision capping"""
    f = MultiSeries(laurent_ring, {(0, 1): 1}, (INF, INF))
    assert cap_laurent(f).prec == (INF, 3)


def test_log_pochhammer_matches_direct_product():
    """Test exp(log (T; T)_inf) against the direct product"""
    inner = SeriesRing.of(q=1)
    log = log_pochhammer(inner, 6, mono(T=1), [mono(T=1)])
    graded = log.exp()
    ring = SeriesRing.of(T=6)
    direct = pochhammer_inf(ring, mono(T=1), ["T"])
    assert [graded[k].constant_term() for k in range(7)] == [direct.coefficient(mono(T=k)) for k in range(7)]


def test_tgraded_exp_log_round_trip(qt_ring):
    """Test T-graded log inverts exp"""
    f = TGraded(qt_ring, [qt_ring.zero(), qt_ring.gen("q"), qt_ring.poly({(0, 1): 2})])
    assert f.exp().log() == f


def test_tgraded_plethystic_exp_homomorphism(qt_ring):
    """Test Exp(f + g) = Exp(f) Exp(g)"""
    f = TGraded(qt_ring, [qt_ring.zero(), qt_ring.gen("q"), qt_ring.zero(), qt_ring.zero()])
    g = TGraded(qt_ring, [qt_ring.zero(), qt_ring.zero(), qt_ring.gen("t"), qt_ring.zero()])
    assert (f + g).plethystic_exp() == f.plethystic_exp() * g.plethystic_exp()


def test_plethystic_exp_of_T_is_partition_generating_function(qt_ring):
    """Test Exp(T) = 1/(T; T)_inf"""
    f = TGraded.monomial(qt_ring.one(), 1, 6)
    assert [f.plethystic_exp()[k].constant_term() for k in range(7)] == [1, 1, 2, 3, 5, 7, 11]


def test_theta_and_theta_product_agree():
    """Test the Jacobi triple product truncated at p^3"""
    ring = SeriesRing.of(p=3, x=(-3, 3))
    assert theta(ring, "x", 3).clip(ring) == theta_product(ring, "x", 3).clip(ring)

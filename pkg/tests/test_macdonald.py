import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from backend.core.errors import DomainError
from backend.models.checks import Check, first_difference
from backend.models.exactnum import Monomial, SeriesRing, mono
from backend.models.hooks import HookProduct, hook_b
from backend.models.macdonald import (R_principal_hook, branching_coefficient, delta_alphabet, eval_numeric,
                                      eval_P, eval_R, phi, plethystic_eval, plethystic_P_closed, principal_alphabet,
                                      principal_P, principal_P_inf, psi, qt_binomial, refined_vertex,
                                      rho_shifted_alphabet, shifted_alphabet, skew_P_principal, strips_between,
                                      variable_alphabet)
from backend.models.partitions import Partition, up_to_size

Q0, T0 = Fraction(2, 7), Fraction(3, 5)


def agree(lhs, rhs, window=None):
    return first_difference(Check("agree", lhs, rhs, window)) is None


@pytest.fixture
def xy_ring():
    return SeriesRing.of(q=3, t=3, x1=3, x2=3)


def test_alphabets():
    """Test the named alphabets"""
    assert principal_alphabet(3) == [Monomial(1), mono(t=1), mono(t=2)]
    assert delta_alphabet(3) == [mono(t=2), mono(t=1), Monomial(1)]
    assert shifted_alphabet(Partition.of(2), 2) == [mono(q=2, t=1), Monomial(1)]
    assert rho_shifted_alphabet(Partition.of(1), 2) == [mono(q=-1), mono(t=1)]
    assert variable_alphabet("x", 2) == [mono(x1=1), mono(x2=1)]


def test_single_box_branching():
    """Test psi and phi of a single box"""
    one, empty = Partition.of(1), Partition()
    assert psi(one, empty) == HookProduct.one()
    assert phi(one, empty) == hook_b(one)
    assert psi(Partition.of(2, 2), Partition.of(1)).is_zero
    with pytest.raises(DomainError):
        branching_coefficient("chi", one, empty)


def test_strips_between():
    """Test horizontal strips between two partitions"""
    kappas = set(strips_between(Partition.of(2, 1), Partition()))
    assert kappas == {Partition.of(1), Partition.of(2), Partition.of(1, 1), Partition.of(2, 1)}


def test_P_in_two_variables():
    """Test P_(2)(x1, x2) = m_2 + (1+q)(1-t)/(1-qt) m_11"""
    a, b = Fraction(3, 2), Fraction(-1, 3)
    expected = a * a + b * b + (1 + Q0) * (1 - T0) / (1 - Q0 * T0) * a * b
    assert eval_numeric("P", Partition.of(2), Partition(), [a, b], Q0, T0) == expected
    assert eval_numeric("P", Partition.of(1, 1), Partition(), [a, b], Q0, T0) == a * b
    assert eval_numeric("P", Partition.of(1, 1, 1), Partition(), [a, b], Q0, T0) == 0


@given(st.sampled_from([lam for lam in up_to_size(4) if lam.size]))
@settings(max_examples=15, deadline=None)
def test_Q_is_b_times_P(lam):
    """Test Q_lambda = b_lambda P_lambda at a rational point"""
    values = [Fraction(1, 2), Fraction(2, 3), Fraction(-3, 4)]
    b = hook_b(lam).evaluate({"q": Q0, "t": T0})
    assert eval_numeric("Q", lam, Partition(), values, Q0, T0) == b * eval_numeric("P", lam, Partition(), values, Q0, T0)


def test_P_at_q_equal_t_is_schur():
    """Test P_lambda(x; t, t) = s_lambda(x)"""
    values = [2, 3, 5]
    for lam in up_to_size(3):
        assert eval_numeric("P", lam, Partition(), values, T0, T0) == eval_numeric("schur", lam, Partition(), values, 0, 0)
    assert eval_numeric("schur", Partition.of(2, 1), Partition(), [1, 1, 1], 0, 0) == 8


def test_series_evaluation_matches_numeric(xy_ring):
    """Test P_(2,1)(x1, x2) as a series against direct evaluation"""
    series = eval_P(Partition.of(2, 1), variable_alphabet("x", 2), xy_ring)
    assert series.coefficient(mono(x1=2, x2=1)) == 1
    assert series.coefficient(mono(x1=1, x2=2)) == 1
    assert series.coefficient(mono(x1=3)) == 0


@pytest.mark.parametrize("parts", [(1,), (2,), (1, 1), (2, 1)])
def test_principal_specialisation(parts):
    """Test P_lambda(t^delta_n) against its closed form"""
    lam = Partition(parts)
    ring = SeriesRing.of(q=3, t=5)
    assert agree(eval_P(lam, delta_alphabet(3), ring), principal_P(lam, 3, ring))


@pytest.mark.parametrize("parts", [(1,), (2,), (1, 1)])
def test_principal_specialisation_infinite(parts):
    """Test P_lambda(1, t, t^2, ...) = t^n(lambda) / c_lambda"""
    lam = Partition(parts)
    ring = SeriesRing.of(q=3, t=4)
    assert agree(skew_P_principal(lam, Partition(), ring), principal_P_inf(lam, ring))


def test_qt_binomial_values():
    """Test [lam; 0] = [lam; lam] = 1 and [(2); (1)] = 1 + q"""
    ring = SeriesRing.of(q=4, t=4)
    lam = Partition.of(2, 1)
    assert agree(qt_binomial(lam, Partition(), ring), ring.one())
    assert agree(qt_binomial(lam, lam, ring), ring.one())
    assert agree(qt_binomial(Partition.of(2), Partition.of(1), ring), ring.poly({(0, 0): 1, (1, 0): 1}))
    assert qt_binomial(Partition.of(1), Partition.of(2), ring).is_exact_zero()


def test_R_at_zero_is_P(xy_ring):
    """Test R_lambda(x; 0) = P_lambda(x)"""
    xs = variable_alphabet("x", 2)
    lam = Partition.of(2, 1)
    assert agree(eval_R(lam, xs, Monomial(0), xy_ring), eval_P(lam, xs, xy_ring))


def test_R_principal_closed_form():
    """Test R_lambda(t^delta_n; b) against its closed form"""
    window = SeriesRing.of(q=3, t=(-4, 3), b=2)
    work = window.with_windows(t=(-4, 11))
    b = mono(b=1)
    for lam in (Partition.of(1), Partition.of(2), Partition.of(1, 1)):
        lhs = eval_R(lam, delta_alphabet(2), b, work)
        assert agree(lhs, R_principal_hook(lam, 2, b).expand(work), window)


@pytest.mark.parametrize("parts", [(1,), (2,), (1, 1)])
def test_plethystic_closed_form(parts):
    """Test P_lambda([(a - b)/(1 - t)]) with a = 1 and b = u"""
    lam = Partition(parts)
    ring = SeriesRing.of(q=3, t=3, u=2)
    a, b = Monomial(1), mono(u=1)
    assert agree(plethystic_eval(lam, Partition(), a, b, ring), plethystic_P_closed(lam, a, b).expand(ring))


def test_plethystic_unknown_sign_rule():
    """Test sign rules are validated"""
    with pytest.raises(DomainError):
        plethystic_eval(Partition.of(1), Partition(), 1, 0, SeriesRing.of(q=1, t=1), "alternating")


def test_trivial_vertex():
    """Test C_{0,0,0} = 1"""
    vertex = refined_vertex(Partition(), Partition(), Partition(), 2, 2)
    assert agree(vertex, vertex.ring.one())

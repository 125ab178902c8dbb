import pytest

from backend.core.errors import DomainError
from backend.models.checks import first_difference
from backend.models.nekrasov import (PROVENANCES, classical_no, f11_expected, fnm, fnm_agreement_checks,
                                     fnm_limit_check, fnm_symmetry_check, hbar, hbar_windows, hrv_pipeline, laurent_depth,
                                     qtno_checks, qtno_ring, un, zw_text)


def failures(checks):
    return [diff for diff in map(first_difference, checks) if diff is not None]


def test_qtno_ring_defaults():
    """Test the default q,t-NO window widens u to the T-order"""
    ring = qtno_ring(K=4, degree=5, u_window=2)
    assert ring.windows() == {"q": [0, 5], "t": [0, 5], "u": [-4, 4]}


def test_qtno_identity_small_window():
    """Test both sides of the q,t-NO identity and its specialisations"""
    assert failures(qtno_checks(2, qtno_ring(K=2, degree=3, u_window=2))) == []


@pytest.mark.parametrize("provenance", PROVENANCES)
def test_f11_in_every_form(provenance):
    """Test f_{1,1} = 1 - uq + T(1 - t/u)"""
    value = fnm(1, 1, provenance, degree=3).value
    assert value == f11_expected(value.ring)
    assert value.to_text() == "1 - q*u + T - t*u^-1*T"


def test_fnm_rejects_bad_arguments():
    """Test indices and provenance are validated"""
    with pytest.raises(DomainError):
        fnm(0, 1)
    with pytest.raises(DomainError):
        fnm(1, 1, "closed")


def test_fnm_forms_agree():
    """Test the three forms of f_{2,1}"""
    assert failures(fnm_agreement_checks(2, 1, degree=2)) == []


def test_laurent_depth():
    """Test how far the definition form reaches below zero"""
    assert laurent_depth(1, 1) == (1, 0)
    assert laurent_depth(2, 1) == (2, 3)


def test_fnm_limit():
    """Test f_{n,m} against the q,t-NO sum for large n, m"""
    assert failures(fnm_limit_check(1, qtno_ring(K=1, degree=1, u_window=1))) == []


def test_classical_no():
    """Test the classical identity and its s = 4 and s = 0 specialisations"""
    checks = classical_no(5)
    assert len(checks) == 4
    assert failures(checks) == []


def test_hbar_windows():
    """Test the Z and W windows"""
    assert hbar_windows(1, 2) == (4, 2)
    assert hbar_windows(0, 1) == (4, 2)
    assert hbar_windows(2, 1) == (4, 4)


@pytest.mark.parametrize("n", [1, 2])
def test_hbar_genus_one(n):
    """Test Hbar_n = (z - w)^2 at genus one"""
    assert zw_text(hbar(1, n)) == "z^2 - 2*z*w + w^2"


def test_u1_is_the_single_cell_hook():
    """Test U_1 = H_(1) at genus zero, where H_(1) = w^-2 / ((1 - z^2)(1 - w^-2))"""
    assert un(0, 1).coefficient({"Z": 0, "W": 2}) == 1
    assert un(0, 1).coefficient({"Z": 2, "W": 4}) == 1
    assert un(0, 1).coefficient({"Z": 1, "W": 2}) == 0


@pytest.mark.parametrize("g", [0, 1])
def test_hrv_pipeline(g):
    """Test the hook series pipeline at genus zero and one"""
    assert failures(hrv_pipeline(g, 2)) == []


def grid(cheap):
    """``(n, m)`` in {1, 2, 3}^2, the pairs with ``n*m > cheap`` marked slow"""
    return [pytest.param(n, m, marks=[pytest.mark.slow] if n * m > cheap else [])
            for n in (1, 2, 3) for m in (1, 2, 3)]


@pytest.mark.parametrize("n,m", grid(2))
def test_fnm_forms_agree_on_grid(n, m):
    """Test definition, single-sum and hook forms of f_{n,m} agree"""
    checks = fnm_agreement_checks(n, m, degree=3)
    assert [c.label for c in checks][:2] == ["def = single_sum", "single_sum = hook_form"]
    assert failures(checks) == []


@pytest.mark.parametrize("n,m", grid(2))
def test_fnm_symmetry_on_grid(n, m):
    """Test the 1/T reversal, the u -> tT/(uq) flip, the (m, n) swap and the special values"""
    assert failures(fnm_symmetry_check(n, m, degree=3)) == []

import pytest

from backend.models.checks import first_difference
from backend.models.elliptic import (CoeffTable, compute_C, compute_c_from_D, compute_D, coefficient_checks,
                                     elliptic_no_verify, elliptic_rings)


@pytest.fixture(scope="module")
def C():
    return compute_C(2)


def test_C_starts_with_delta(C):
    """Test C(0) is the delta function"""
    assert C.slice(0) == {(0, 0, 0): 1}
    assert C[(0, 1, 0, 0)] == 0


def test_C_first_order(C):
    """Test the eight p^1 entries"""
    first = C.slice(1)
    assert sorted(first.values()) == [-1] * 4 + [1] * 4
    assert first[(1, -1, 0)] == -1
    assert first[(0, 1, 0)] == 1


def test_C_symmetries(C):
    """Test t1 <-> t2 swap and inversion"""
    for (m, l, n1, n2), v in C.entries.items():
        assert C[(m, l, n2, n1)] == v
        assert C[(m, -l, -n1, -n2)] == v


def test_D_from_C(C):
    """Test the D system at p^0"""
    D = compute_D(C)
    assert sorted(D.slice(0).values()) == [-1, -1, 1, 1]
    assert D.slice(0) == {(0, 1, -1): 1, (0, 0, 0): 1, (1, 0, -1): -1, (-1, 1, 0): -1}


def test_c_from_D_sums_a_quadrant():
    """Test c sums D strictly above n1 and strictly below n2"""
    D = CoeffTable("D", 0, {(0, 0, 1, -1): 2, (0, 0, 0, -1): 5, (0, 1, 1, -1): 7})
    assert compute_c_from_D(D, 0, 0, 0, 0) == 2
    assert compute_c_from_D(D, 0, 0, -1, 0) == 7


def test_table_text():
    """Test the sorted line format"""
    table = CoeffTable("C", 0, {(1, 0, 0, 0): -1, (0, 0, 0, 0): 1})
    assert table.to_text() == "0 0 0 0 1\n1 0 0 0 -1"


def test_coefficient_checks():
    """Test the C, D and c consistency checks"""
    assert [first_difference(c) for c in coefficient_checks(1, degree=2)] == [None] * 4


def test_elliptic_rings():
    """Test the comparison window and its working ring"""
    window, work = elliptic_rings(1, 1, 2)
    assert window.windows() == {"q": [-1, 2], "t": [-1, 2], "u": [-2, 2], "p": [0, 1]}
    assert work.window("u") == (-4, 4)


def test_elliptic_identity_first_order():
    """Test the theta-ratio identity to T^1 and p^1"""
    assert all(first_difference(c) is None for c in elliptic_no_verify(1, 1, 2))

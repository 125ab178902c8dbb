import pytest
from hypothesis import given, strategies as st

from backend.core.errors import DomainError
from backend.models.partitions import (Partition, Dp_of_size, all_of_size, arms_legs, cell_stats,
                                       complement_in_box, divisors, dominance_leq, enumerate_partitions,
                                       horizontal_strip, hooks_multiset, in_box, in_Dp, is_p_core,
                                       is_p_core_divisibility, mobius, p_cores_of_size, partition_count,
                                       staircase, up_to_size, vertical_strip)

partitions = st.lists(st.integers(min_value=1, max_value=6), max_size=6).map(
    lambda xs: Partition(tuple(sorted(xs, reverse=True)))
)


@pytest.fixture
def hook():
    return Partition.of(3, 1)


def test_partition_basics(hook):
    """Test size, length, part access and printing"""
    assert hook.size == 4
    assert hook.length == 2
    assert hook[1] == 3 and hook[3] == 0
    assert str(hook) == "(3,1)"
    assert str(Partition()) == "()"
    assert Partition.of(2, 0, 0) == Partition.of(2)


def test_rejects_increasing_parts():
    """Test that non-partitions are refused"""
    with pytest.raises(DomainError):
        Partition.of(1, 2)


def test_conjugate_and_cells(hook):
    """Test conjugation and cell membership"""
    assert hook.conjugate == Partition.of(2, 1, 1)
    assert list(hook.cells()) == [(1, 1), (1, 2), (1, 3), (2, 1)]
    assert (2, 1) in hook
    assert (2, 2) not in hook


def test_n_stat():
    """Test n(lambda)"""
    assert Partition.of(2, 1).n_stat == 1
    assert Partition.of(1, 1, 1).n_stat == 3


def test_cell_stats(hook):
    """Test arm, leg and colengths of a cell"""
    assert cell_stats(hook, (1, 1)) == (2, 1, 0, 0)
    assert cell_stats(hook, (1, 3)) == (0, 0, 2, 0)
    with pytest.raises(DomainError):
        cell_stats(hook, (2, 2))


def test_hooks_multiset(hook):
    """Test hook lengths of (3,1)"""
    assert hooks_multiset(hook) == {4: 1, 2: 1, 1: 2}


def test_p_cores(hook):
    """Test the two p-core predicates"""
    assert is_p_core(Partition.of(2, 1), 2)
    assert not is_p_core(hook, 2)
    assert is_p_core_divisibility(Partition.of(2, 1), 2)
    assert not is_p_core_divisibility(Partition.of(2), 2)
    assert list(p_cores_of_size(3, 2)) == [Partition.of(2, 1)]


def test_Dp():
    """Test bounded part differences"""
    assert in_Dp(Partition.of(2, 1), 2)
    assert not in_Dp(Partition.of(3, 1), 2)
    assert not in_Dp(Partition.of(2), 2)
    assert list(Dp_of_size(4, 2)) == [Partition.of(2, 1, 1), Partition.of(1, 1, 1, 1)]


def test_complement_in_box():
    """Test the complement inside a rectangle"""
    assert complement_in_box(Partition.of(1), 2, 2) == Partition.of(2, 1)
    assert complement_in_box(Partition(), 3, 2) == Partition.of(3, 3)
    with pytest.raises(DomainError):
        complement_in_box(Partition.of(3), 2, 2)


def test_strips():
    """Test horizontal and vertical strips"""
    assert horizontal_strip(Partition.of(3, 1), Partition.of(2))
    assert not horizontal_strip(Partition.of(2, 2), Partition.of(1))
    assert vertical_strip(Partition.of(1, 1), Partition.of(1))
    assert not vertical_strip(Partition.of(2), Partition())


def test_dominance():
    """Test dominance order"""
    assert dominance_leq(Partition.of(2, 1, 1), Partition.of(2, 2))
    assert not dominance_leq(Partition.of(2, 2), Partition.of(2, 1, 1))
    assert not dominance_leq(Partition.of(2), Partition.of(2, 1))


def test_divisors_and_mobius():
    """Test arithmetic helpers"""
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [mobius(d) for d in (1, 2, 4, 6, 30)] == [1, -1, 0, 1, -1]
    with pytest.raises(DomainError):
        mobius(0)


def test_enumeration_order():
    """Test lexicographically descending enumeration"""
    assert [p.parts for p in all_of_size(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(all_of_size(0)) == [Partition()]
    assert len(list(up_to_size(4))) == 1 + 1 + 2 + 3 + 5


def test_in_box():
    """Test partitions in a 2x2 box"""
    assert [p.parts for p in in_box(2, 2)] == [(), (1,), (2,), (1, 1), (2, 1), (2, 2)]


def test_enumerate_partitions_dispatch():
    """Test the named enumerations"""
    assert list(enumerate_partitions("in_box", 1, 1)) == [Partition(), Partition.of(1)]
    with pytest.raises(DomainError):
        enumerate_partitions("strict", 3)


@pytest.mark.parametrize("n", range(13))
def test_partition_count_matches_enumeration(n):
    """Test Euler's recurrence against enumeration"""
    assert partition_count(n) == len(list(all_of_size(n)))


def test_staircase():
    """Test the staircase partition"""
    assert staircase(4) == Partition.of(3, 2, 1)
    assert staircase(1) == Partition()


@given(partitions)
def test_conjugate_is_an_involution(lam):
    """Test conjugation twice is the identity and keeps the size"""
    assert lam.conjugate.conjugate == lam
    assert lam.conjugate.size == lam.size


@given(partitions)
def test_leg_and_arm_sums(lam):
    """Test sum of legs is n(lambda) and sum of arms is n(lambda')"""
    stats = list(arms_legs(lam))
    assert sum(l for _, l, _, _ in stats) == lam.n_stat
    assert sum(a for a, _, _, _ in stats) == lam.conjugate.n_stat
    assert sum(hooks_multiset(lam).values()) == lam.size

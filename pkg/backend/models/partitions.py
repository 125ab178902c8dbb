"""Integer partitions: cell statistics, enumeration and predicates."""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, List, Tuple

from sympy import divisors as _divisors
from sympy import factorint

from ..core.errors import DomainError

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts; the empty tuple is the partition 0"""

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts if x)
        if any(x < 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"{self.parts} is not a partition")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        """1-based part access with ``lambda_i = 0`` beyond the length"""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def __repr__(self) -> str:
        return f"Partition{self.parts}"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @cached_property
    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > j) for j in range(self.parts[0])))

    @property
    def n_stat(self) -> int:
        """``n(lambda) = sum (i-1) lambda_i``"""
        return sum(i * x for i, x in enumerate(self.parts))

    def cells(self) -> Iterator[Cell]:
        for i, row in enumerate(self.parts, start=1):
            for j in range(1, row + 1):
                yield i, j

    def contains(self, other: "Partition") -> bool:
        return len(other) <= len(self) and all(a >= b for a, b in zip(self.parts, other.parts))

    def __contains__(self, cell: Cell) -> bool:
        i, j = cell
        return i >= 1 and j >= 1 and j <= self[i]


def cell_stats(lam: Partition, cell: Cell) -> Tuple[int, int, int, int]:
    """Arm, leg, arm-colength and leg-colength of ``cell``"""
    if cell not in lam:
        raise DomainError(f"cell {cell} is not in {lam}")
    i, j = cell
    return lam[i] - j, lam.conjugate[j] - i, j - 1, i - 1


def arms_legs(lam: Partition) -> Iterator[Tuple[int, int, int, int]]:
    """``cell_stats`` over every cell, row by row"""
    conj = lam.conjugate
    for i, j in lam.cells():
        yield lam[i] - j, conj[j] - i, j - 1, i - 1


def hooks_multiset(lam: Partition) -> Counter:
    return Counter(a + l + 1 for a, l, _, _ in arms_legs(lam))


def is_p_core(lam: Partition, p: int) -> bool:
    """No hook length equal to ``p``"""
    return p not in hooks_multiset(lam)


def is_p_core_divisibility(lam: Partition, p: int) -> bool:
    """No hook length divisible by ``p``"""
    return all(h % p for h in hooks_multiset(lam))


def in_Dp(lam: Partition, p: int) -> bool:
    """Consecutive parts differ by at most ``p - 1``, the last part included"""
    parts = lam.parts + (0,)
    return all(a - b <= p - 1 for a, b in zip(parts, parts[1:]))


def complement_in_box(mu: Partition, m: int, n: int) -> Partition:
    """``(m - mu_n, ..., m - mu_1)``"""
    if mu.length > n or (mu.parts and mu.parts[0] > m):
        raise DomainError(f"{mu} does not fit in the box ({m}^{n})")
    return Partition(tuple(m - mu[i] for i in range(n, 0, -1)))


def horizontal_strip(lam: Partition, mu: Partition) -> bool:
    """``lam / mu`` is a horizontal strip: ``lam_i >= mu_i >= lam_{i+1}``"""
    if len(mu) > len(lam):
        return False
    return all(lam[i] >= mu[i] >= lam[i + 1] for i in range(1, len(lam) + 1))


def vertical_strip(lam: Partition, mu: Partition) -> bool:
    return horizontal_strip(lam.conjugate, mu.conjugate)


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """``lam <= mu`` in dominance order (same size)"""
    if lam.size != mu.size:
        return False
    a = b = 0
    for i in range(1, max(len(lam), len(mu)) + 1):
        a += lam[i]
        b += mu[i]
        if a > b:
            return False
    return True


def divisors(n: int) -> List[int]:
    return [int(d) for d in _divisors(n)]


def mobius(d: int) -> int:
    if d < 1:
        raise DomainError("mobius needs a positive integer")
    factors = factorint(d)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def _descending(n: int, largest: int, rows: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    if rows == 0:
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending(n - first, first, rows - 1):
            yield (first,) + rest


def all_of_size(n: int) -> Iterator[Partition]:
    """Partitions of ``n`` in lexicographically descending order"""
    for parts in _descending(n, n, n):
        yield Partition(parts)


def up_to_size(n: int) -> Iterator[Partition]:
    for k in range(n + 1):
        yield from all_of_size(k)


def in_box(m: int, n: int) -> Iterator[Partition]:
    """Partitions inside ``(m^n)``, by size and then lexicographically descending"""
    for k in range(m * n + 1):
        for parts in _descending(k, m, n):
            yield Partition(parts)


def p_cores_of_size(n: int, p: int) -> Iterator[Partition]:
    return (lam for lam in all_of_size(n) if is_p_core(lam, p))


def Dp_of_size(n: int, p: int) -> Iterator[Partition]:
    return (lam for lam in all_of_size(n) if in_Dp(lam, p))


def enumerate_partitions(kind: str, *args: int) -> Iterator[Partition]:
    """Dispatch over ``all_of_size``, ``in_box``, ``p_cores_of_size`` and ``Dp_of_size``"""
    kinds = {
        "all_of_size": all_of_size,
        "in_box": in_box,
        "p_cores_of_size": p_cores_of_size,
        "Dp_of_size": Dp_of_size,
    }
    if kind not in kinds:
        raise DomainError(f"unknown enumeration {kind}")
    return kinds[kind](*args)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """Euler's pentagonal recurrence"""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total, k = 0, 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            return total
        sign = 1 if k % 2 else -1
        total += sign * (partition_count(n - g1) + partition_count(n - g1 - k))
        k += 1


def staircase(n: int) -> Partition:
    """``delta = (n-1, n-2, ..., 1)``"""
    return Partition(tuple(range(n - 1, 0, -1)))


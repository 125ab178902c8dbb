"""Theta-ratio generalization of the q,t-Nekrasov-Okounkov formula.

The integer systems ``C``, ``D`` and ``c`` are read off theta quotients in
the Laurent variables ``u, t1, t2``. ``C`` comes from a ratio of
``p``-Pochhammer symbols in which every factor carries a positive power of
``p``, so its expansion needs no choice of region. ``c`` does need one: with
``(t1, t2) = (1/q, t)`` every factor is expanded in ascending ``q`` and ``t``.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from ..core.config import settings
from ..core.errors import ConsistencyError
from .checks import Check, Checks, is_integer
from .exactnum import Monomial, MultiSeries, SeriesRing, TGraded, log_pochhammer
from .hooks import HookProduct, elliptic_summand
from .nekrasov import qtno_lhs, qtno_rhs
from .partitions import Partition, all_of_size

logger = logging.getLogger(__name__)

Key = Tuple[int, int, int, int]


@dataclass
class CoeffTable:
    """Integer coefficients indexed by ``(m, l, n1, n2)``; absent keys are zero"""

    name: str
    max_m: int
    entries: Dict[Key, int] = field(default_factory=dict)

    def __getitem__(self, key: Key) -> int:
        return self.entries.get(key, 0)

    def slice(self, m: int) -> Dict[Tuple[int, int, int], int]:
        return {(l, n1, n2): v for (mm, l, n1, n2), v in self.entries.items() if mm == m}

    def items_at(self, m: int) -> Iterator[Tuple[Key, int]]:
        for key in sorted(self.entries):
            if key[0] == m:
                yield key, self.entries[key]

    def to_text(self) -> str:
        """One ``m l n1 n2 value`` line per nonzero entry, sorted"""
        return "\n".join(" ".join(str(x) for x in key + (self.entries[key],)) for key in sorted(self.entries))


def _coefficient_ring(max_m: int) -> SeriesRing:
    return SeriesRing.of(p=max_m, u=(-max_m, max_m), t1=(-max_m, max_m), t2=(-max_m, max_m))


def c_generating_product(max_m: int) -> HookProduct:
    """``(p u/t1, p t1/u, p u/t2, p t2/u; p)_inf / (p/t1, p t1, p/t2, p t2; p)_inf`` modulo ``p^(max_m+1)``"""
    u, t1, t2 = Monomial.of(u=1), Monomial.of(t1=1), Monomial.of(t2=1)
    factors: List[Tuple[Monomial, int]] = []
    for i in range(1, max_m + 1):
        p = Monomial.of(p=i)
        for y in (u / t1, t1 / u, u / t2, t2 / u):
            factors.append((p * y, 1))
        for y in (t1.inverse(), t1, t2.inverse(), t2):
            factors.append((p * y, -1))
    return HookProduct.from_factors(factors)


def _assert_symmetric(table: CoeffTable) -> None:
    for (m, l, n1, n2), v in table.entries.items():
        if table[(m, l, n2, n1)] != v or table[(m, -l, -n1, -n2)] != v:
            raise ConsistencyError(f"{table.name} breaks the t1<->t2 or inversion symmetry at {(m, l, n1, n2)}")


def compute_C(max_m: int) -> CoeffTable:
    """Expand the ``C`` generating product and check integrality, symmetry and ``C(0) = delta``"""
    ring = _coefficient_ring(max_m)
    series = c_generating_product(max_m).expand(ring).require(ring, "C generating product")
    table = CoeffTable("C", max_m)
    for e, v in series.terms.items():
        if not is_integer(v):
            raise ConsistencyError(f"C{e} = {v} is not an integer")
        table.entries[e] = int(v)
    _assert_symmetric(table)
    if table.slice(0) != {(0, 0, 0): 1}:
        raise ConsistencyError(f"C(0) is not the delta function: {table.slice(0)}")
    logger.info("C table to p^%d: %d nonzero entries", max_m, len(table.entries))
    return table


def compute_D(table: CoeffTable) -> CoeffTable:
    """``D(m,l,n1,n2) = C(m,l,n1-1,n2+1) + C(m,l,n1,n2) - C(m,l-1,n1,n2+1) - C(m,l+1,n1-1,n2)``"""
    out: Dict[Key, int] = {}
    for (m, l, n1, n2), v in table.entries.items():
        for key, sign in (
            ((m, l, n1 + 1, n2 - 1), 1),
            ((m, l, n1, n2), 1),
            ((m, l + 1, n1, n2 - 1), -1),
            ((m, l - 1, n1 + 1, n2), -1),
        ):
            out[key] = out.get(key, 0) + sign * v
    return CoeffTable("D", table.max_m, {k: v for k, v in out.items() if v})


def compute_c_from_D(table: CoeffTable, m: int, l: int, n1: int, n2: int) -> int:
    """``c(m,l,n1,n2) = sum_{i,j >= 1} D(m, l, n1+i, n2-j)``"""
    return sum(v for (mm, ll, a, b), v in table.entries.items() if mm == m and ll == l and a > n1 and b < n2)


def c_direct(max_m: int, degree: int) -> MultiSeries:
    """``theta(u/t1, t2/u; p) / theta(1/t1, t2; p)`` at ``(t1, t2) = (1/q, t)``"""
    ring = SeriesRing.of(q=(-max_m, degree), t=(-max_m, degree), u=(-max_m - 1, max_m + 1), p=max_m)
    return elliptic_summand(Partition.of(1), max_m).expand(ring)


def c_from_D_series(D: CoeffTable, ring: SeriesRing) -> MultiSeries:
    """The ``c`` values of ``D`` laid out as a series in the same ring as ``c_direct``"""
    (ql, qh), (tl, th), (ul, uh), (_, ph) = (ring.window(n) for n in ("q", "t", "u", "p"))
    terms = {}
    for m in range(ph + 1):
        for qe in range(ql, qh + 1):
            for te in range(tl, th + 1):
                for ue in range(ul, uh + 1):
                    v = compute_c_from_D(D, m, ue, -qe, te)
                    if v:
                        terms[(qe, te, ue, m)] = v
    return ring.poly(terms)


def coefficient_checks(max_m: Optional[int] = None, degree: int = 4) -> Checks:
    max_m = settings.DEFAULT_P_ORDER + 1 if max_m is None else max_m
    C = compute_C(max_m)
    D = compute_D(C)
    checks = [
        Check("C(0) = delta", C.slice(0), {(0, 0, 0): 1}),
        Check("C(1) entries", sorted(C.slice(1).values()), [-1] * 4 + [1] * 4),
        Check("D(0) entries", sorted(D.slice(0).values()), [-1, -1, 1, 1]),
    ]
    direct = c_direct(max_m, degree)
    checks.append(Check("c from D", direct, c_from_D_series(D, direct.ring)))
    return checks


# -- the theta-ratio Nekrasov-Okounkov identity -------------------------------

def elliptic_rings(K: int, M: int, degree: int) -> Tuple[SeriesRing, SeriesRing]:
    """(comparison window, working ring) for T-order ``K`` and p-order ``M``"""
    low = K * M
    U = K + M
    window = SeriesRing.of(q=(-low, degree), t=(-low, degree), u=(-U, U), p=M)
    su = K * (M + 1)
    work = SeriesRing.of(q=(-2 * low, degree + low), t=(-2 * low, degree + low), u=(-U - su, U + su), p=M)
    return window, work


def elliptic_lhs(K: int, M: int, ring: SeriesRing) -> TGraded:
    coeffs = []
    for k in range(K + 1):
        acc = ring.zero()
        for lam in all_of_size(k):
            acc = acc + elliptic_summand(lam, M).expand(ring)
        coeffs.append(acc)
    return TGraded(ring, coeffs)


def elliptic_rhs(K: int, M: int, ring: SeriesRing, C: CoeffTable) -> TGraded:
    """Product over ``m <= M, k <= K`` and the support of ``C(km, .)``, through its logarithm.

    Each ``(m, k, l, n1, n2)`` contributes four ``(X; q, t)_inf`` symbols
    raised to ``+-C(km, l, n1, n2)``; the ``i, j`` products are their
    geometric directions.
    """
    log = TGraded.zero(ring, K)
    bases = [Monomial.of(q=1), Monomial.of(t=1)]
    for m in range(M + 1):
        for k in range(1, K + 1):
            for (_, l, n1, n2), c in C.items_at(k * m):
                head = Monomial.of(p=m, T=k, q=-n1, t=n2)
                for x, sign in (
                    (Monomial.of(u=l + 1, q=1), 1),
                    (Monomial.of(u=l), -1),
                    (Monomial.of(u=l - 1, t=1), 1),
                    (Monomial.of(u=l, q=1, t=1), -1),
                ):
                    log = log + log_pochhammer(ring, K, head * x, bases, sign * c)
        logger.debug("elliptic rhs: p^%d factors folded in", m)
    return log.exp()


def elliptic_no_verify(K: Optional[int] = None, M: Optional[int] = None, degree: Optional[int] = None,
                       C: Optional[CoeffTable] = None) -> Checks:
    K = settings.DEFAULT_T_ORDER if K is None else K
    M = settings.DEFAULT_P_ORDER if M is None else M
    degree = settings.DEFAULT_QT_DEGREE if degree is None else degree
    C = C if C is not None and C.max_m >= K * M else compute_C(max(K * M, 1))
    window, work = elliptic_rings(K, M, degree)
    lhs = elliptic_lhs(K, M, work)
    rhs = elliptic_rhs(K, M, work, C)
    checks = [Check("theta-ratio T-series", lhs, rhs, window)]

    plain = SeriesRing.of(q=degree, t=degree, u=window.window("u"))
    at_zero = TGraded(work.without("p"), [s.slice("p", 0) for s in lhs.coeffs])
    checks.append(Check("p^0 slice = qtno sum", at_zero, qtno_lhs(K, plain), plain))
    checks.append(Check("p^0 slice = qtno product", at_zero, qtno_rhs(K, plain), plain))
    if K >= 1 and M >= 1:
        cell = elliptic_summand(Partition.of(1), M).expand(work).slice("p", 1)
        checks.append(Check("T^1 p^1 coefficient", cell, rhs[1].slice("p", 1), window.without("p")))
    return checks

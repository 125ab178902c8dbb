"""Brute-force symmetric functions in the power-sum basis.

Used to validate the branching machinery: Macdonald polynomials come from
Gram-Schmidt against the q,t-Hall scalar product, either at a rational
point ``(q0, t0)`` or with symbolic ``q, t``. Slow by construction; only the
small-size oracle checks call into this module.
"""

import logging
import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Sequence, Tuple

import sympy
from sympy.utilities.iterables import multiset_permutations

from ..core.errors import StructureError
from .exactnum import MultiSeries, SeriesRing, invert_unit
from .partitions import Partition, all_of_size

logger = logging.getLogger(__name__)

PowerSum = Dict[Partition, Any]


def to_sympy(x) -> Any:
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return sympy.Rational(x.numerator, x.denominator)
    if isinstance(x, str):
        return sympy.Symbol(x)
    return x


def to_fraction(x) -> Fraction:
    x = sympy.sympify(x)
    if not x.is_Rational:
        raise StructureError(f"{x} is not a rational number")
    return Fraction(int(x.p), int(x.q))


def z_lambda(rho: Partition) -> int:
    out = 1
    for part, mult in Counter(rho.parts).items():
        out *= part ** mult * math.factorial(mult)
    return out


def hall_weight(rho: Partition, q, t) -> Any:
    """``<p_rho, p_rho>_{q,t}``"""
    q, t = to_sympy(q), to_sympy(t)
    out = sympy.Integer(z_lambda(rho))
    for r in rho:
        out *= (1 - q ** r) / (1 - t ** r)
    return out


@lru_cache(maxsize=None)
def power_to_monomial(n: int) -> Tuple[Tuple[Partition, ...], sympy.Matrix]:
    """Partitions of ``n`` and the matrix with ``p_rho = sum_nu M[rho, nu] m_nu``"""
    parts = tuple(all_of_size(n))
    xs = sympy.symbols(f"x1:{n + 1}") if n else ()
    rows = []
    for rho in parts:
        expr = sympy.Integer(1)
        for r in rho:
            expr *= sum(x ** r for x in xs)
        poly = sympy.Poly(expr, *xs) if n else None
        row = []
        for nu in parts:
            exps = tuple(nu[i] for i in range(1, n + 1))
            row.append(poly.coeff_monomial(exps) if poly is not None else 1)
        rows.append(row)
    return parts, sympy.Matrix(rows)


@lru_cache(maxsize=None)
def _monomial_to_power(n: int) -> Tuple[Tuple[Partition, ...], sympy.Matrix]:
    parts, matrix = power_to_monomial(n)
    return parts, matrix.inv()


def monomial_in_powersum(nu: Partition) -> PowerSum:
    parts, inverse = _monomial_to_power(nu.size)
    i = parts.index(nu)
    return {rho: inverse[i, j] for j, rho in enumerate(parts) if inverse[i, j] != 0}


def add(f: PowerSum, g: PowerSum, c=1) -> PowerSum:
    out = dict(f)
    for rho, x in g.items():
        out[rho] = sympy.cancel(out.get(rho, 0) + c * x)
    return {rho: x for rho, x in out.items() if x != 0}


def multiply(f: PowerSum, g: PowerSum) -> PowerSum:
    out: PowerSum = {}
    for rho, x in f.items():
        for sigma, y in g.items():
            key = Partition(tuple(sorted(rho.parts + sigma.parts, reverse=True)))
            out[key] = out.get(key, 0) + x * y
    out = {rho: sympy.cancel(x) for rho, x in out.items()}
    return {rho: x for rho, x in out.items() if x != 0}


def scalar_product(f: PowerSum, g: PowerSum, q, t) -> Any:
    total = sympy.Integer(0)
    for rho, x in f.items():
        if rho in g:
            total += x * g[rho] * hall_weight(rho, q, t)
    return sympy.cancel(total)


class OracleTable:
    """Macdonald ``P_lambda`` for every ``|lambda| <= max_size`` at fixed ``(q, t)``"""

    def __init__(self, max_size: int, q, t):
        self.q, self.t = to_sympy(q), to_sympy(t)
        self.max_size = max_size
        self.power: Dict[Partition, PowerSum] = {}
        self.norm: Dict[Partition, Any] = {}
        for n in range(max_size + 1):
            self._orthogonalise(n)

    def _orthogonalise(self, n: int) -> None:
        done: List[Partition] = []
        for lam in reversed(tuple(all_of_size(n))):
            m = monomial_in_powersum(lam) if n else {Partition(): sympy.Integer(1)}
            f = m
            for mu in done:
                c = sympy.cancel(scalar_product(m, self.power[mu], self.q, self.t) / self.norm[mu])
                f = add(f, self.power[mu], -c)
            self.power[lam] = f
            self.norm[lam] = scalar_product(f, f, self.q, self.t)
            done.append(lam)
        logger.debug("oracle orthogonalised degree %d", n)

    def monomial_expansion(self, lam: Partition) -> Dict[Partition, Any]:
        """``P_lambda = sum u_{lam, nu} m_nu``"""
        parts, matrix = power_to_monomial(lam.size)
        f = self.power[lam]
        out = {}
        for j, nu in enumerate(parts):
            c = sympy.cancel(sum(x * matrix[parts.index(rho), j] for rho, x in f.items()))
            if c != 0:
                out[nu] = c
        return out

    def b(self, lam: Partition) -> Any:
        return sympy.cancel(1 / self.norm[lam])

    def Q(self, lam: Partition) -> PowerSum:
        b = self.b(lam)
        return {rho: sympy.cancel(b * x) for rho, x in self.power[lam].items()}

    def skew_P(self, lam: Partition, mu: Partition) -> PowerSum:
        """``P_{lam/mu} = sum_nu <P_lam, Q_mu Q_nu> P_nu``"""
        k = lam.size - mu.size
        if k < 0:
            return {}
        out: PowerSum = {}
        qm = self.Q(mu)
        for nu in all_of_size(k):
            c = scalar_product(self.power[lam], multiply(qm, self.Q(nu)), self.q, self.t)
            if c != 0:
                out = add(out, self.power[nu], c)
        return out

    def pairing(self, lam: Partition, mu: Partition) -> Any:
        """``<P_lam, Q_mu>``"""
        return scalar_product(self.power[lam], self.Q(mu), self.q, self.t)


def monomial_value(nu: Partition, values: Sequence) -> Any:
    """``m_nu`` at explicit values"""
    n = len(values)
    if len(nu) > n:
        return 0
    padded = list(nu.parts) + [0] * (n - len(nu))
    total = 0
    for perm in multiset_permutations(padded):
        term = 1
        for x, e in zip(values, perm):
            term *= x ** e
        total += term
    return total


def powersum_value(f: PowerSum, values: Sequence) -> Any:
    total = 0
    for rho, c in f.items():
        term = c
        for r in rho:
            term *= sum(x ** r for x in values)
        total += term
    return total


def oracle_P_value(table: OracleTable, lam: Partition, values: Sequence) -> Fraction:
    """``P_lambda(values)`` through the monomial expansion at a rational point"""
    values = [to_sympy(Fraction(v)) for v in values]
    total = sum(c * monomial_value(nu, values) for nu, c in table.monomial_expansion(lam).items())
    return to_fraction(total)


def plethystic_value(f: PowerSum, a, b, t) -> Any:
    """``f([(a - b)/(1 - t)])`` with ``p_r -> (a^r - b^r)/(1 - t^r)``"""
    a, b, t = to_sympy(a), to_sympy(b), to_sympy(t)
    total = sympy.Integer(0)
    for rho, c in f.items():
        term = c
        for r in rho:
            term *= (a ** r - b ** r) / (1 - t ** r)
        total += term
    return sympy.cancel(total)


def _poly_series(expr, ring: SeriesRing, symbols: Sequence[sympy.Symbol]) -> MultiSeries:
    try:
        poly = sympy.Poly(sympy.expand(expr), *symbols)
    except sympy.PolynomialError as e:
        raise StructureError(f"{expr} is not a polynomial in {ring.names}") from e
    return ring.poly({exps: to_fraction(c) for exps, c in poly.terms()})


def from_sympy(expr, ring: SeriesRing) -> MultiSeries:
    """Expand a rational function in the ring variables as a series in ``ring``"""
    symbols = [sympy.Symbol(n) for n in ring.names]
    extra = sympy.sympify(expr).free_symbols - set(symbols)
    if extra:
        raise StructureError(f"symbols {sorted(map(str, extra))} are not in the ring {ring.names}")
    num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
    numerator = _poly_series(num, ring, symbols)
    denominator = _poly_series(den, ring, symbols)
    return numerator * invert_unit(denominator)


def symbolic_table(max_size: int, q: str = "q", t: str = "t") -> OracleTable:
    return OracleTable(max_size, sympy.Symbol(q), sympy.Symbol(t))


def numeric_table(max_size: int, q0, t0) -> OracleTable:
    return OracleTable(max_size, Fraction(q0), Fraction(t0))


def pairing_matrix(table: OracleTable, size: int) -> Mapping[Tuple[Partition, Partition], Any]:
    parts = tuple(all_of_size(size))
    return {(lam, mu): table.pairing(lam, mu) for lam in parts for mu in parts}

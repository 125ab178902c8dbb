"""Interpolation Macdonald polynomials by linear solve, for spot checks.

``P*_mu`` in ``n`` variables is pinned down by vanishing at the grid points
``q^lambda t^delta_n`` with ``|lambda| <= |mu|``, ``lambda != mu``, and by
``[x^mu] P*_mu = 1``. The solve runs in sympy over exact rationals or over
``Q(q, t)`` when symbols are passed.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Sequence

import sympy

from ..core.errors import SingularSystemError
from .hooks import hook_cprime
from .macdonald import eval_numeric
from .oracle import monomial_value, to_fraction, to_sympy
from .partitions import Partition, all_of_size

logger = logging.getLogger(__name__)


def grid_point(lam: Partition, n: int, q, t, sign: int = 1) -> List[Any]:
    """``q^lambda t^(sign delta_n)``"""
    return [q ** lam[i] * t ** (sign * (n - i)) for i in range(1, n + 1)]


def _basis(size: int, n: int) -> List[Partition]:
    return [nu for k in range(size + 1) for nu in all_of_size(k) if len(nu) <= n]


class InterpolationPolynomial:
    """``P*_mu(x; q, t)`` in ``n`` variables, stored in the monomial basis"""

    def __init__(self, mu: Partition, n: int, q, t, coefficients: Dict[Partition, Any]):
        self.mu, self.n, self.q, self.t = mu, n, q, t
        self.coefficients = coefficients

    def __call__(self, values: Sequence) -> Any:
        values = [to_sympy(v) for v in values]
        total = sum(c * monomial_value(nu, values) for nu, c in self.coefficients.items())
        return sympy.cancel(sympy.sympify(total))

    def top(self, values: Sequence) -> Any:
        """The degree ``|mu|`` part at ``values``"""
        values = [to_sympy(v) for v in values]
        return sum(c * monomial_value(nu, values) for nu, c in self.coefficients.items()
                   if nu.size == self.mu.size)


@lru_cache(maxsize=None)
def interpolation_polynomial(mu: Partition, n: int, q, t) -> InterpolationPolynomial:
    q, t = to_sympy(q), to_sympy(t)
    basis = _basis(mu.size, n)
    rows, rhs = [], []
    for lam in basis:
        if lam == mu:
            rows.append([1 if nu == mu else 0 for nu in basis])
            rhs.append(1)
        else:
            point = grid_point(lam, n, q, t)
            rows.append([monomial_value(nu, point) for nu in basis])
            rhs.append(0)
    matrix = sympy.Matrix(rows)
    if sympy.cancel(matrix.det()) == 0:
        raise SingularSystemError(
            f"interpolation system for {mu} in {n} variables is singular at q={q}, t={t}; "
            "resample the point"
        )
    solution = matrix.LUsolve(sympy.Matrix(rhs))
    coefficients = {nu: sympy.cancel(c) for nu, c in zip(basis, solution) if sympy.cancel(c) != 0}
    logger.debug("P*_%s in %d variables: %d monomials", mu, n, len(coefficients))
    return InterpolationPolynomial(mu, n, q, t, coefficients)


def qt_binomial_at(lam: Partition, mu: Partition, n: int, q, t) -> Any:
    """``P*_mu(q^lam t^delta_n) / P*_mu(q^mu t^delta_n)``"""
    q, t = to_sympy(q), to_sympy(t)
    poly = interpolation_polynomial(mu, n, q, t)
    return sympy.cancel(poly(grid_point(lam, n, q, t)) / poly(grid_point(mu, n, q, t)))


def normalisation_value(mu: Partition, n: int, q0, t0) -> Fraction:
    """``(-1)^|mu| q^n(mu') t^((n-1)|mu| - 2 n(mu)) c'_mu(q, t)``"""
    q0, t0 = Fraction(q0), Fraction(t0)
    sign = -1 if mu.size % 2 else 1
    power = q0 ** mu.conjugate.n_stat * t0 ** ((n - 1) * mu.size - 2 * mu.n_stat)
    return sign * power * hook_cprime(mu).evaluate({"q": q0, "t": t0})


@dataclass
class SpotCheck:
    mu: Partition
    n: int
    q0: Fraction
    t0: Fraction
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _sample(n: int, offset: int = 0) -> List[Fraction]:
    return [Fraction(2 + i + offset, 7 + 3 * i + offset) for i in range(n)]


def interpolation_spot_check(mu: Partition, n: int, q0, t0, a0=Fraction(5, 3)) -> SpotCheck:
    """Vanishing, normalisation, stability, top degree and binomial theorem at one point"""
    q0, t0, a0 = Fraction(q0), Fraction(t0), Fraction(a0)
    q, t, a = to_sympy(q0), to_sympy(t0), to_sympy(a0)
    record = SpotCheck(mu, n, q0, t0)
    poly = interpolation_polynomial(mu, n, q, t)

    record.checks["vanishing"] = all(
        poly(grid_point(lam, n, q, t)) == 0
        for lam in _basis(mu.size + 1, n) if not lam.contains(mu)
    )
    value = to_fraction(poly(grid_point(mu, n, q, t)))
    record.checks["normalisation"] = value == normalisation_value(mu, n, q0, t0)

    x = _sample(n)
    wider = interpolation_polynomial(mu, n + 1, q, t)
    lifted = wider([t * to_sympy(v) for v in x] + [1])
    record.checks["stability"] = sympy.cancel(lifted - t ** mu.size * poly(x)) == 0

    top = to_fraction(sympy.sympify(poly.top(x)))
    record.checks["top-degree"] = top == eval_numeric("P", mu, Partition(), x, q0, t0)

    shifted = [a * t ** (-(n - i)) for i in range(1, n + 1)]
    lhs = sympy.Integer(0)
    for nu in _basis(mu.size, n):
        if not mu.contains(nu):
            continue
        binomial = qt_binomial_at(mu, nu, n, 1 / q, 1 / t)
        ratio = poly(shifted) / interpolation_polynomial(nu, n, q, t)(shifted)
        inverse = interpolation_polynomial(nu, n, 1 / q, 1 / t)
        lhs += a ** nu.size * binomial * ratio * inverse(x)
    rhs = poly([a * to_sympy(v) for v in x])
    record.checks["binomial"] = sympy.cancel(lhs - rhs) == 0
    logger.debug("spot check %s n=%d at (%s, %s): %s", mu, n, q0, t0, record.checks)
    return record

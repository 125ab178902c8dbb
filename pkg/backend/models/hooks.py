"""Hook products kept in factored form.

Every hook-length quantity is a ``HookProduct``: a rational coefficient, a
monomial prefactor and a multiset of ``(1 - y)`` factors with signed
multiplicities. Factors are stored in a canonical orientation so identical
factors cancel symbolically before anything is expanded.
"""

import logging
from collections import Counter
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from ..core.errors import DomainError
from .exactnum import MultiSeries, Monomial, Scalar, SeriesRing, as_monomial, expand_factored
from .partitions import Partition, arms_legs

logger = logging.getLogger(__name__)


def _needs_flip(y: Monomial) -> bool:
    return bool(y.powers) and y.powers[0][1] < 0


class HookFactor:
    """A single ``(1 - y)^multiplicity``"""

    __slots__ = ("monomial", "multiplicity")

    def __init__(self, monomial: Monomial, multiplicity: int = 1):
        self.monomial = monomial
        self.multiplicity = multiplicity

    @property
    def sign(self) -> int:
        return 1 if self.monomial.coef > 0 else -1

    def __repr__(self) -> str:
        return f"HookFactor(1 - ({self.monomial.to_text()}), {self.multiplicity})"


class HookProduct:
    """``coef * prefactor * prod (1 - y)^k``"""

    __slots__ = ("coef", "prefactor", "factors")

    def __init__(self, coef: Scalar = 1, prefactor: Optional[Monomial] = None,
                 factors: Optional[Mapping[Monomial, int]] = None):
        self.coef = Fraction(coef)
        self.prefactor = Monomial(1, prefactor.powers) if prefactor is not None else Monomial(1)
        if prefactor is not None:
            self.coef *= prefactor.coef
        self.factors: Counter = Counter()
        for y, k in (factors or {}).items():
            self._absorb(y, k)

    def _absorb(self, y: Monomial, k: int) -> None:
        if not k or self.coef == 0:
            return
        if y.coef == 0:
            return
        if y.is_constant:
            value = 1 - Fraction(y.coef)
            if value == 0:
                if k < 0:
                    raise DomainError("hook product divides by a vanishing factor")
                self.coef = Fraction(0)
                self.factors.clear()
                return
            self.coef *= value ** k
            return
        if _needs_flip(y):
            # 1 - y = -y (1 - 1/y)
            self.coef *= Fraction(-y.coef) ** k
            self.prefactor = self.prefactor * Monomial(1, tuple((n, e * k) for n, e in y.powers))
            y = y.inverse()
        self.factors[y] += k
        if not self.factors[y]:
            del self.factors[y]

    @classmethod
    def one(cls) -> "HookProduct":
        return cls()

    @classmethod
    def factor(cls, y: Union[Monomial, str], k: int = 1) -> "HookProduct":
        return cls(1, None, {as_monomial(y): k})

    @classmethod
    def monomial(cls, m: Monomial) -> "HookProduct":
        return cls(1, m)

    @classmethod
    def from_factors(cls, factors: Iterable[Tuple[Monomial, int]], coef: Scalar = 1,
                     prefactor: Optional[Monomial] = None) -> "HookProduct":
        out = cls(coef, prefactor)
        for y, k in factors:
            out._absorb(y, k)
        return out

    @property
    def is_zero(self) -> bool:
        return self.coef == 0

    def hook_factors(self) -> Sequence[HookFactor]:
        return [HookFactor(y, k) for y, k in self.factors.items()]

    def __mul__(self, other) -> "HookProduct":
        if isinstance(other, Monomial):
            return HookProduct(self.coef, self.prefactor * other, self.factors)
        if not isinstance(other, HookProduct):
            return HookProduct(self.coef * Fraction(other), self.prefactor, self.factors)
        out = HookProduct(self.coef * other.coef, self.prefactor * other.prefactor, self.factors)
        for y, k in other.factors.items():
            out._absorb(y, k)
        return out

    __rmul__ = __mul__

    def inverse(self) -> "HookProduct":
        if self.is_zero:
            raise DomainError("zero hook product has no inverse")
        return HookProduct(1 / self.coef, self.prefactor.inverse(),
                           {y: -k for y, k in self.factors.items()})

    def __truediv__(self, other) -> "HookProduct":
        if isinstance(other, HookProduct):
            return self * other.inverse()
        if isinstance(other, Monomial):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __pow__(self, k: int) -> "HookProduct":
        if k < 0:
            return self.inverse() ** (-k)
        return HookProduct(self.coef ** k, self.prefactor ** k,
                           {y: e * k for y, e in self.factors.items()})

    def substitute(self, images: Mapping[str, Union[Monomial, str]]) -> "HookProduct":
        """Apply a monomial substitution to every factor; constant factors fold into the coefficient"""
        images = {n: as_monomial(m) for n, m in images.items()}
        out = HookProduct(self.coef, self.prefactor.substitute(images))
        for y, k in self.factors.items():
            out._absorb(y.substitute(images), k)
        return out

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        value = self.coef
        if value == 0:
            return Fraction(0)
        point = {n: Fraction(v) for n, v in point.items()}

        def at(m: Monomial) -> Fraction:
            out = Fraction(m.coef)
            for n, e in m.powers:
                if point[n] == 0 and e < 0:
                    raise DomainError(f"{n} = 0 in a negative power")
                out *= point[n] ** e
            return out

        value *= at(self.prefactor)
        for y, k in self.factors.items():
            base = 1 - at(y)
            if base == 0:
                if k < 0:
                    raise DomainError(f"factor 1 - ({y.to_text()}) vanishes at {point}")
                return Fraction(0)
            value *= base ** k
        return value

    def expand(self, ring: SeriesRing) -> MultiSeries:
        if self.is_zero:
            return ring.zero()
        return expand_factored(ring, self.factors.items(), self.coef, self.prefactor)

    def variables(self) -> set:
        names = {n for n, _ in self.prefactor.powers}
        for y in self.factors:
            names.update(n for n, _ in y.powers)
        return names

    def __eq__(self, other) -> bool:
        if not isinstance(other, HookProduct):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return (self.coef, self.prefactor, dict(self.factors)) == (
            other.coef, other.prefactor, dict(other.factors))

    __hash__ = None

    def __repr__(self) -> str:
        pieces = [str(self.coef)]
        if not self.prefactor.is_constant:
            pieces.append(self.prefactor.to_text())
        for y, k in sorted(self.factors.items(), key=lambda kv: kv[0].to_text()):
            pieces.append(f"(1 - {y.to_text()})^{k}" if k != 1 else f"(1 - {y.to_text()})")
        return "HookProduct(" + " * ".join(pieces) + ")"


def _m(**powers: int) -> Monomial:
    return Monomial(1, tuple(powers.items()))


def _qt(q: str, qe: int, t: str, te: int, extra: Optional[Monomial] = None) -> Monomial:
    m = Monomial(1, ((q, qe), (t, te)))
    return m * extra if extra is not None else m


def hook_c(lam: Partition, q: str = "q", t: str = "t") -> HookProduct:
    """``c_lambda = prod (1 - q^a t^(l+1))``"""
    return HookProduct.from_factors((_qt(q, a, t, l + 1), 1) for a, l, _, _ in arms_legs(lam))


def hook_cprime(lam: Partition, q: str = "q", t: str = "t") -> HookProduct:
    """``c'_lambda = prod (1 - q^(a+1) t^l)``"""
    return HookProduct.from_factors((_qt(q, a + 1, t, l), 1) for a, l, _, _ in arms_legs(lam))


def hook_b(lam: Partition, q: str = "q", t: str = "t") -> HookProduct:
    return hook_c(lam, q, t) / hook_cprime(lam, q, t)


def qt_pochhammer_lambda(z: Union[Monomial, str], lam: Partition, q: str = "q", t: str = "t") -> HookProduct:
    """``(z; q, t)_lambda = prod over cells (1 - z q^a' t^-l')``"""
    z = as_monomial(z)
    return HookProduct.from_factors((z * _qt(q, ac, t, -lc), 1) for _, _, ac, lc in arms_legs(lam))


def qt_pochhammer_rows(z: Union[Monomial, str], lam: Partition, q: str = "q", t: str = "t") -> HookProduct:
    """``prod_i (z t^(1-i); q)_(lambda_i)``"""
    z = as_monomial(z)
    factors = []
    for i, row in enumerate(lam.parts, start=1):
        base = z * _qt(q, 0, t, 1 - i)
        factors.extend((base * _qt(q, k, t, 0), 1) for k in range(row))
    return HookProduct.from_factors(factors)


def grid_correction(z: Union[Monomial, str], alpha: Partition, beta: Partition,
                    q: str = "q", t: str = "t") -> HookProduct:
    """Finite part of ``prod_{i,j>=1} (1 - z q^(i - alpha_j) t^(j - beta_i))``.

    The full grid product equals ``(z q t; q, t)_inf`` times this correction.
    """
    z = as_monomial(z)
    la, lb = alpha.length, beta.length
    factors = []
    for i in range(1, lb + 1):
        for j in range(1, la + 1):
            factors.append((z * _qt(q, i - alpha[j], t, j - beta[i]), 1))
            factors.append((z * _qt(q, i, t, j), -1))
        for j in range(la + 1 - beta[i], la + 1):
            factors.append((z * _qt(q, i, t, j), 1))
    for j in range(1, la + 1):
        for i in range(lb + 1 - alpha[j], lb + 1):
            factors.append((z * _qt(q, i, t, j), 1))
    return HookProduct.from_factors(factors)


def qt_pochhammer_grid(z: Union[Monomial, str], lam: Partition, q: str = "q", t: str = "t") -> HookProduct:
    """``(z; q, t)_lambda`` as the ratio of grid products"""
    z = as_monomial(z)
    return grid_correction(z * _m(**{q: -1}), Partition(), lam.conjugate, q, t)


def genus_hook(lam: Partition, g: int, Z: str = "Z", W: str = "W") -> HookProduct:
    """The genus-g hook function evaluated at ``(z, w) = (Z, 1/W)``"""
    factors: Dict[Monomial, int] = Counter()
    shift = 0
    for a, l, _, _ in arms_legs(lam):
        factors[_qt(Z, 2 * a + 1, W, 2 * l + 1)] += 2 * g
        factors[_qt(Z, 2 * a + 2, W, 2 * l)] -= 1
        factors[_qt(Z, 2 * a, W, 2 * l + 2)] -= 1
        shift += (2 * l + 1) * (2 - 2 * g)
    return HookProduct(1, _m(**{W: shift}), factors)


def qtno_summand(lam: Partition, u: str = "u", q: str = "q", t: str = "t") -> HookProduct:
    """``prod (1 - u q^(a+1) t^l)(1 - u^-1 q^a t^(l+1)) / ((1 - q^(a+1) t^l)(1 - q^a t^(l+1)))``"""
    factors: Dict[Monomial, int] = Counter()
    um = _m(**{u: 1})
    for a, l, _, _ in arms_legs(lam):
        factors[_qt(q, a + 1, t, l, um)] += 1
        factors[_qt(q, a, t, l + 1, um.inverse())] += 1
        factors[_qt(q, a + 1, t, l)] -= 1
        factors[_qt(q, a, t, l + 1)] -= 1
    return HookProduct(1, None, factors)


def schur_hook_summand(lam: Partition, u: str = "u", q: str = "q") -> HookProduct:
    """``prod_h (1 - u q^h)(1 - u^-1 q^h) / (1 - q^h)^2``"""
    return qtno_summand(lam, u, q, q)


def theta_factors(x: Union[Monomial, str], M: int, p: str = "p") -> HookProduct:
    """``(x; p)_inf (p/x; p)_inf`` modulo ``p^(M+1)``; the ``(p; p)_inf`` part is left out"""
    x = as_monomial(x)
    pm = _m(**{p: 1})
    factors = [(x, 1)]
    for i in range(1, M + 1):
        factors.append((x * pm ** i, 1))
        factors.append((x.inverse() * pm ** i, 1))
    return HookProduct.from_factors(factors)


def elliptic_summand(lam: Partition, M: int, u: str = "u", q: str = "q", t: str = "t",
                     p: str = "p") -> HookProduct:
    """Theta-ratio summand with ``(t1, t2) = (1/q, t)``, exact modulo ``p^(M+1)``"""
    out = HookProduct.one()
    um = _m(**{u: 1})
    for a, l, _, _ in arms_legs(lam):
        x1 = _qt(q, a + 1, t, l)
        x2 = _qt(q, a, t, l + 1)
        out = out * theta_factors(um * x1, M, p) * theta_factors(um.inverse() * x2, M, p)
        out = out / (theta_factors(x1, M, p) * theta_factors(x2, M, p))
    return out


def hook_lengths_product(lam: Partition, fn) -> Fraction:
    """``prod_s fn(h(s))`` over the hook lengths"""
    value = Fraction(1)
    for a, l, _, _ in arms_legs(lam):
        value *= fn(a + l + 1)
    return value

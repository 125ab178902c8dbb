"""Macdonald polynomials at explicit alphabets and principal specialisations.

Everything is evaluated through the one-row branching rule: an alphabet is
consumed last entry first, each step peeling a horizontal strip off the
current partition. Branching coefficients are hook products, memoised in
process and mirrored to the on-disk cache.
"""

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Union

from ..core.cache import cache_manager
from ..core.errors import DomainError
from .exactnum import Monomial, MultiSeries, Scalar, SeriesRing, as_monomial
from .hooks import HookProduct, hook_c, hook_cprime, qt_pochhammer_lambda
from .partitions import Partition, horizontal_strip

logger = logging.getLogger(__name__)

Alphabet = Sequence[Monomial]

SIGN_RULES: Dict[str, Callable[[int], int]] = {
    "size-difference": lambda d: -1 if d % 2 else 1,
    "none": lambda d: 1,
}


# -- alphabets ----------------------------------------------------------------

def _power(name: str, e: int) -> Monomial:
    return Monomial(1, ((name, e),))


def principal_alphabet(n: int, t: str = "t", prefactor: Optional[Monomial] = None) -> List[Monomial]:
    """``a t^rho_n = (a, a t, ..., a t^(n-1))``"""
    a = prefactor or Monomial(1)
    return [a * _power(t, i) for i in range(n)]


def delta_alphabet(n: int, t: str = "t") -> List[Monomial]:
    """``t^delta_n = (t^(n-1), ..., t, 1)``"""
    return [_power(t, n - i) for i in range(1, n + 1)]


def shifted_alphabet(lam: Partition, n: int, q: str = "q", t: str = "t", sign: int = 1) -> List[Monomial]:
    """``q^(sign lambda) t^delta_n``"""
    return [_power(q, sign * lam[i]) * _power(t, n - i) for i in range(1, n + 1)]


def rho_shifted_alphabet(lam: Partition, n: int, q: str = "q", t: str = "t", sign: int = -1) -> List[Monomial]:
    """First ``n`` entries of ``q^(sign lambda) t^rho``"""
    return [_power(q, sign * lam[i]) * _power(t, i - 1) for i in range(1, n + 1)]


def variable_alphabet(prefix: str, n: int) -> List[Monomial]:
    return [_power(f"{prefix}{i}", 1) for i in range(1, n + 1)]


# -- branching coefficients ---------------------------------------------------

def _b_factor(lam: Partition, i: int, j: int) -> HookProduct:
    """``b_lambda(s)`` for the cell ``(i, j)``; 1 outside ``lam``"""
    if (i, j) not in lam:
        return HookProduct.one()
    a, l = lam[i] - j, lam.conjugate[j] - i
    num = Monomial(1, (("q", a), ("t", l + 1)))
    den = Monomial(1, (("q", a + 1), ("t", l)))
    return HookProduct.from_factors([(num, 1), (den, -1)])


def _encode(h: HookProduct) -> Dict:
    return {
        "coef": f"{h.coef.numerator}/{h.coef.denominator}",
        "prefactor": h.prefactor.as_dict(),
        "factors": [[y.as_dict(), f"{Fraction(y.coef)}", k] for y, k in h.factors.items()],
    }


def _decode(payload: Dict) -> HookProduct:
    factors = {Monomial.from_dict(p, Fraction(c)): k for p, c, k in payload["factors"]}
    return HookProduct(Fraction(payload["coef"]), Monomial.from_dict(payload["prefactor"]), factors)


@lru_cache(maxsize=None)
def _branching(kind: str, lam: Partition, mu: Partition) -> HookProduct:
    if not horizontal_strip(lam, mu):
        return HookProduct(0)
    key = f"{kind}|{lam}|{mu}"
    cached = cache_manager.load(key)
    if cached is not None:
        return _decode(cached)
    strip_cols = {j for j in range(1, lam[1] + 1) if lam.conjugate[j] > mu.conjugate[j]}
    out = HookProduct.one()
    if kind == "phi":
        for j in strip_cols:
            for i in range(1, lam.conjugate[j] + 1):
                out = out * _b_factor(lam, i, j) / _b_factor(mu, i, j)
    else:
        strip_rows = {i for i in range(1, len(lam) + 1) if lam[i] > mu[i]}
        for i in strip_rows:
            for j in range(1, mu[i] + 1):
                if j not in strip_cols:
                    out = out * _b_factor(mu, i, j) / _b_factor(lam, i, j)
    logger.debug("%s %s/%s = %r", kind, lam, mu, out)
    cache_manager.store(key, _encode(out))
    return out


def _rename(h: HookProduct, q: str, t: str) -> HookProduct:
    if (q, t) == ("q", "t"):
        return h
    return h.substitute({"q": _power(q, 1), "t": _power(t, 1)})


def branching_coefficient(kind: str, lam: Partition, mu: Partition, q: str = "q", t: str = "t") -> HookProduct:
    """``psi_{lam/mu}`` or ``phi_{lam/mu}``; zero unless ``lam/mu`` is a horizontal strip"""
    if kind not in ("psi", "phi"):
        raise DomainError(f"unknown branching coefficient {kind}")
    return _rename(_branching(kind, lam, mu), q, t)


def psi(lam: Partition, mu: Partition, q: str = "q", t: str = "t") -> HookProduct:
    return branching_coefficient("psi", lam, mu, q, t)


def phi(lam: Partition, mu: Partition, q: str = "q", t: str = "t") -> HookProduct:
    return branching_coefficient("phi", lam, mu, q, t)


def _step_coefficient(kind: str, nu: Partition, kappa: Partition, q: str, t: str) -> HookProduct:
    if kind == "P":
        return psi(nu, kappa, q, t)
    if kind == "Q":
        return phi(nu, kappa, q, t)
    if kind == "schur":
        return HookProduct.one()
    raise DomainError(f"unknown polynomial kind {kind}")


# -- the branching recursion --------------------------------------------------

def strips_between(nu: Partition, mu: Partition) -> Iterator[Partition]:
    """Every ``kappa`` with ``mu <= kappa`` and ``nu/kappa`` a horizontal strip"""
    if not nu.contains(mu):
        return
    ranges = [range(max(nu[i + 1], mu[i]), nu[i] + 1) for i in range(1, len(nu) + 1)]
    for parts in itertools.product(*ranges):
        yield Partition(parts)


def _too_tall(kappa: Partition, mu: Partition, rows: int) -> bool:
    """Some column of ``kappa/mu`` is longer than ``rows``"""
    kc, mc = kappa.conjugate, mu.conjugate
    return any(kc[j] - mc[j] > rows for j in range(1, kappa[1] + 1))


def branching_sum(lam: Partition, mu: Partition, n: int, term, one):
    """Sum over strip chains from ``mu`` up to ``lam`` in ``n`` steps.

    ``term(nu, kappa, k, inner)`` returns the contribution of peeling
    ``nu/kappa`` with the k-th entry, given the value ``inner`` for
    ``kappa`` over the first ``k - 1`` entries. Returns None for zero.
    """
    memo: Dict = {}

    def value(nu: Partition, k: int):
        if k == 0:
            return one if nu == mu else None
        key = (nu, k)
        if key not in memo:
            total = None
            for kappa in strips_between(nu, mu):
                if _too_tall(kappa, mu, k - 1):
                    continue
                inner = value(kappa, k - 1)
                if inner is None:
                    continue
                piece = term(nu, kappa, k, inner)
                if piece is None:
                    continue
                total = piece if total is None else total + piece
            memo[key] = total
        return memo[key]

    if not lam.contains(mu) or _too_tall(lam, mu, n):
        return None
    return value(lam, n)


def work_ring(ring: SeriesRing, alphabet: Alphabet, degree: int) -> SeriesRing:
    """Widen ``ring`` so negative entry exponents cannot eat certified precision"""
    windows = {}
    for spec in ring.specs:
        low = min([0] + [m.exponent(spec.name) for m in alphabet])
        windows[spec.name] = (min(spec.min_exp, degree * low), spec.max_exp - degree * low)
    return ring.with_windows(**windows)


def eval_skew(kind: str, lam: Partition, mu: Partition, alphabet: Alphabet, ring: SeriesRing,
              q: str = "q", t: str = "t") -> MultiSeries:
    """``F_{lam/mu}(alphabet)`` for ``F`` in P, Q or Schur, as a series in ``ring``"""
    alphabet = [as_monomial(x) for x in alphabet]
    degree = lam.size - mu.size
    work = work_ring(ring, alphabet, max(degree, 0))
    expanded: Dict = {}

    def term(nu, kappa, k, inner):
        coefficient = _step_coefficient(kind, nu, kappa, q, t)
        if coefficient.is_zero:
            return None
        if (nu, kappa) not in expanded:
            expanded[(nu, kappa)] = coefficient.expand(work)
        moved = inner.shift(alphabet[k - 1] ** (nu.size - kappa.size))
        return expanded[(nu, kappa)] * moved

    total = branching_sum(lam, mu, len(alphabet), term, work.one())
    if total is None:
        return ring.zero()
    return total.to_ring(ring)


def eval_P(lam: Partition, alphabet: Alphabet, ring: SeriesRing, q: str = "q", t: str = "t") -> MultiSeries:
    return eval_skew("P", lam, Partition(), alphabet, ring, q, t)


def eval_Q(lam: Partition, alphabet: Alphabet, ring: SeriesRing, q: str = "q", t: str = "t") -> MultiSeries:
    return eval_skew("Q", lam, Partition(), alphabet, ring, q, t)


def eval_skew_P(lam: Partition, mu: Partition, alphabet: Alphabet, ring: SeriesRing,
                q: str = "q", t: str = "t") -> MultiSeries:
    return eval_skew("P", lam, mu, alphabet, ring, q, t)


def eval_skew_Q(lam: Partition, mu: Partition, alphabet: Alphabet, ring: SeriesRing,
                q: str = "q", t: str = "t") -> MultiSeries:
    return eval_skew("Q", lam, mu, alphabet, ring, q, t)


def eval_skew_schur(lam: Partition, mu: Partition, alphabet: Alphabet, ring: SeriesRing) -> MultiSeries:
    return eval_skew("schur", lam, mu, alphabet, ring)


def eval_numeric(kind: str, lam: Partition, mu: Partition, values: Sequence[Scalar],
                 q0: Scalar, t0: Scalar) -> Fraction:
    """``F_{lam/mu}`` at rational ``values`` with ``(q, t) = (q0, t0)``"""
    values = [Fraction(v) for v in values]
    point = {"q": Fraction(q0), "t": Fraction(t0)}

    def term(nu, kappa, k, inner):
        c = _step_coefficient(kind, nu, kappa, "q", "t")
        if c.is_zero:
            return None
        return c.evaluate(point) * values[k - 1] ** (nu.size - kappa.size) * inner

    total = branching_sum(lam, mu, len(values), term, Fraction(1))
    return Fraction(0) if total is None else total


# -- principal specialisations ------------------------------------------------

def principal_P_hook(lam: Partition, n: int, q: str = "q", t: str = "t") -> HookProduct:
    """``P_lambda(t^delta_n) = t^n(lambda) (t^n; q, t)_lambda / c_lambda``"""
    return qt_pochhammer_lambda(_power(t, n), lam, q, t) * _power(t, lam.n_stat) / hook_c(lam, q, t)


def principal_P(lam: Partition, n: int, ring: SeriesRing, q: str = "q", t: str = "t") -> MultiSeries:
    return principal_P_hook(lam, n, q, t).expand(ring)


def principal_P_inf_hook(lam: Partition, q: str = "q", t: str = "t") -> HookProduct:
    """``P_lambda(t^rho) = t^n(lambda) / c_lambda``"""
    return HookProduct.monomial(_power(t, lam.n_stat)) / hook_c(lam, q, t)


def principal_P_inf(lam: Partition, ring: SeriesRing, q: str = "q", t: str = "t") -> MultiSeries:
    return principal_P_inf_hook(lam, q, t).expand(ring)


def _capped(series: MultiSeries, name: str, bound: float) -> MultiSeries:
    i = series.ring.index(name)
    prec = list(series.prec)
    prec[i] = min(prec[i], bound)
    return MultiSeries(series.ring, series.terms, prec, series.val)


def skew_principal(kind: str, lam: Partition, mu: Partition, ring: SeriesRing,
                   a: Optional[Monomial] = None, q: str = "q", t: str = "t") -> MultiSeries:
    """``a^|lam/mu| F_{lam/mu}(t^rho)`` over the truncated alphabet ``1, t, ..., t^(N-1)``.

    Every omitted entry carries ``t^N`` or more, so the result is certified
    up to the t-window and no further.
    """
    if not lam.contains(mu):
        return ring.zero()
    a = as_monomial(a) if a is not None else Monomial(1)
    k = lam.size - mu.size
    if k == 0:
        return ring.one()
    lo_t, hi_t = ring.window(t)
    shift = a ** k
    drop = min(0, shift.exponent(t))
    work = ring.with_windows(**{t: (min(lo_t, 0), hi_t - drop)})
    n_entries = hi_t - drop + 1
    body = eval_skew(kind, lam, mu, principal_alphabet(n_entries, t), work, q, t)
    body = _capped(body, t, hi_t - drop)
    return body.shift(shift).to_ring(ring)


def skew_P_principal(lam: Partition, mu: Partition, ring: SeriesRing, a: Optional[Monomial] = None,
                     q: str = "q", t: str = "t") -> MultiSeries:
    return skew_principal("P", lam, mu, ring, a, q, t)


def skew_Q_principal(lam: Partition, mu: Partition, ring: SeriesRing, a: Optional[Monomial] = None,
                     q: str = "q", t: str = "t") -> MultiSeries:
    return skew_principal("Q", lam, mu, ring, a, q, t)


def qt_binomial(lam: Partition, mu: Partition, ring: SeriesRing, q: str = "q", t: str = "t") -> MultiSeries:
    """``t^(n(mu) - n(lam)) c'_lam / c'_mu Q_{lam/mu}(t^rho)``; zero unless ``mu <= lam``"""
    if not lam.contains(mu):
        return ring.zero()
    d = lam.n_stat - mu.n_stat
    lo_t, hi_t = ring.window(t)
    work = ring.with_windows(**{t: (lo_t, hi_t + d)})
    ratio = (hook_cprime(lam, q, t) / hook_cprime(mu, q, t)).expand(work)
    body = ratio * skew_Q_principal(lam, mu, work, None, q, t)
    return body.shift(_power(t, -d)).to_ring(ring)


# -- plethystic evaluation ----------------------------------------------------

def plethystic_eval(lam: Partition, mu: Partition, a: Union[Monomial, Scalar], b: Union[Monomial, Scalar],
                    ring: SeriesRing, sign_rule: str = "size-difference",
                    q: str = "q", t: str = "t") -> MultiSeries:
    """``P_{lam/mu}([(a - b)/(1 - t)])`` by splitting the alphabet.

    The ``a`` half is ``a t^rho``; the ``-b`` half is turned into
    ``Q_{nu'/mu'}(b q^rho; t, q)`` with the sign chosen by ``sign_rule``.
    """
    if sign_rule not in SIGN_RULES:
        raise DomainError(f"unknown sign rule {sign_rule}")
    if not lam.contains(mu):
        return ring.zero()
    a, b = as_monomial(a), as_monomial(b)
    sign = SIGN_RULES[sign_rule]
    total = ring.zero()
    for nu in _between(mu, lam):
        if b.coef == 0 and nu != mu:
            continue
        if a.coef == 0 and nu != lam:
            continue
        left = skew_P_principal(lam, nu, ring, a, q, t) if a.coef else ring.one()
        right = skew_Q_principal(nu.conjugate, mu.conjugate, ring, b, t, q) if b.coef else ring.one()
        total = total + (left * right).scale(sign(nu.size - mu.size))
    return total


def _between(mu: Partition, lam: Partition) -> Iterator[Partition]:
    ranges = [range(mu[i], lam[i] + 1) for i in range(1, len(lam) + 1)]
    for parts in itertools.product(*ranges):
        if all(x >= y for x, y in zip(parts, parts[1:])):
            yield Partition(parts)


def plethystic_P_closed(lam: Partition, a: Monomial, b: Monomial, q: str = "q", t: str = "t") -> HookProduct:
    """``P_lambda([(a - b)/(1 - t)]) = a^|lam| t^n(lam) (b/a; q, t)_lam / c_lam``"""
    a, b = as_monomial(a), as_monomial(b)
    body = qt_pochhammer_lambda(b / a, lam, q, t) * (a ** lam.size) * _power(t, lam.n_stat)
    return body / hook_c(lam, q, t)


# -- R_lambda and the refined vertex -------------------------------------------

def eval_R(lam: Partition, alphabet: Alphabet, b: Monomial, ring: SeriesRing,
           q: str = "q", t: str = "t") -> MultiSeries:
    """``R_lambda(x; b)`` by its branching formula; ``R_lambda(x; 0) = P_lambda(x)``"""
    alphabet = [as_monomial(x) for x in alphabet]
    b = as_monomial(b)
    tm = _power(t, -1)
    expanded: Dict = {}

    def term(nu, kappa, k, inner):
        coefficient = psi(nu, kappa, q, t)
        if coefficient.is_zero:
            return None
        x = alphabet[k - 1]
        key = (nu, kappa, k)
        if key not in expanded:
            weight = coefficient
            if b.coef:
                weight = weight * qt_pochhammer_lambda(b * x * tm, kappa, q, t)
                weight = weight / qt_pochhammer_lambda(b * x, nu, q, t)
            expanded[key] = (weight * x ** (nu.size - kappa.size)).expand(ring)
        return expanded[key] * inner

    total = branching_sum(lam, Partition(), len(alphabet), term, ring.one())
    return ring.zero() if total is None else total


def R_principal_hook(lam: Partition, n: int, b: Monomial, q: str = "q", t: str = "t") -> HookProduct:
    """``R_lambda(t^delta_n; b)`` in closed form"""
    b = as_monomial(b)
    denominator = qt_pochhammer_lambda(b * _power(t, n - 1), lam, q, t) * hook_c(lam, q, t)
    return principal_P_hook(lam, n, q, t) * hook_c(lam, q, t) / denominator


def refined_vertex(lam: Partition, mu: Partition, nu: Partition, z_max: int, t_max: int,
                   Z: str = "Z", t: str = "t") -> MultiSeries:
    """``C_{lam mu nu}(t, q)`` with ``q = Z^2``, as a series in ``(Z, t)``.

    Both principal alphabets are truncated past the internal windows, so the
    eta-sum and every skew Schur value are finite.
    """
    neg_z = 2 * nu[1] * lam.size
    neg_t = mu.n_stat + mu.size + len(nu) * mu.size
    ring = SeriesRing.of(**{Z: (-neg_z, z_max), t: (-neg_t, t_max)})
    work = SeriesRing.of(**{Z: (-neg_z, z_max + neg_z), t: (-neg_t, t_max + neg_t)})
    def zq(e: int) -> Monomial:
        return _power(Z, 2 * e)

    n1 = max(t_max + neg_t + 1, len(nu))
    first = [_power(t, i - 1) * zq(-nu[i]) for i in range(1, n1 + 1)]
    n2 = max((z_max + neg_z) // 2 + 1, nu[1])
    second = [zq(i - 1) * _power(t, -nu.conjugate[i]) for i in range(1, n2 + 1)]
    lam_c = lam.conjugate
    total = work.zero()
    for eta in _between(Partition(), lam_c):
        if not mu.contains(eta):
            continue
        left = _capped(eval_skew_schur(lam_c, eta, first, work), t, n1 - 1)
        if left.is_exact_zero():
            continue
        right = _capped(eval_skew_schur(mu, eta, second, work), Z, 2 * n2 - 1)
        total = total + (left * right).shift(_power(t, -eta.size))
    prefactor = (zq(mu.conjugate.n_stat + nu.conjugate.n_stat) * _power(Z, lam.size + mu.size + nu.size)
                 * _power(t, -mu.n_stat))
    scale = hook_c(nu, Z, t).substitute({Z: zq(1)}).inverse().expand(work)
    out = (total * scale).shift(prefactor)
    return out.to_ring(ring).require(ring, f"vertex {lam},{mu},{nu}")

"""The q,t-Nekrasov-Okounkov formula and its finite analogues.

Builders for both sides of the q,t-NO identity, the rational functions
``f_{n,m}(u, T; q, t)`` in three equivalent forms, their symmetries, special
values and ``n, m -> infinity`` limit, the classical NO formula in ``Q[s][[T]]``,
and the genus-g pipeline ``H_lambda -> U_n -> Hbar_n``.

Every ``*_check`` function returns a list of labelled ``Check`` pairs; the
verifier turns them into reports.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from ..core.config import settings
from ..core.errors import DomainError
from .checks import Check, Checks, is_integer, keep_terms
from .exactnum import (Monomial, MultiSeries, SeriesRing, TGraded, as_monomial, format_terms, log_pochhammer,
                       pochhammer_inf)
from .hooks import HookProduct, genus_hook, hook_lengths_product, qtno_summand
from .macdonald import delta_alphabet, eval_P, principal_P_hook, shifted_alphabet
from .partitions import (Partition, all_of_size, arms_legs, divisors, in_box, mobius, partition_count,
                         staircase, up_to_size)

logger = logging.getLogger(__name__)

PROVENANCES = ("def", "single_sum", "hook_form")


def _m(**powers: int) -> Monomial:
    return Monomial(1, tuple(powers.items()))


def _qt(qe: int, te: int, **extra: int) -> Monomial:
    return Monomial(1, (("q", qe), ("t", te)) + tuple(extra.items()))


# -- q,t-Nekrasov-Okounkov ----------------------------------------------------

def qtno_ring(K: Optional[int] = None, degree: Optional[int] = None,
              u_window: Optional[int] = None) -> SeriesRing:
    K = settings.DEFAULT_T_ORDER if K is None else K
    degree = settings.DEFAULT_QT_DEGREE if degree is None else degree
    U = max(K, settings.DEFAULT_U_WINDOW if u_window is None else u_window)
    return SeriesRing.of(q=degree, t=degree, u=(-U, U))


def qtno_lhs(K: int, ring: SeriesRing, u: str = "u", q: str = "q", t: str = "t") -> TGraded:
    """``sum_{|lambda| <= K} T^|lambda| prod_s (1-uq^(a+1)t^l)(1-u^-1 q^a t^(l+1)) / ((1-q^(a+1)t^l)(1-q^a t^(l+1)))``"""
    coeffs = []
    for k in range(K + 1):
        acc = ring.zero()
        for lam in all_of_size(k):
            acc = acc + qtno_summand(lam, u, q, t).expand(ring)
        logger.debug("qtno lhs T^%d done", k)
        coeffs.append(acc)
    return TGraded(ring, coeffs)


def qtno_rhs(K: int, ring: SeriesRing, u: Union[str, Monomial] = "u", q: str = "q", t: str = "t") -> TGraded:
    """``(uqT, u^-1 tT; q, t, T)_inf / (T, qtT; q, t, T)_inf`` through its logarithm"""
    um = as_monomial(u)
    T = _m(T=1)
    qm, tm = _m(**{q: 1}), _m(**{t: 1})
    bases = [qm, tm, T]
    log = (
        log_pochhammer(ring, K, um * qm * T, bases, 1)
        + log_pochhammer(ring, K, um.inverse() * tm * T, bases, 1)
        + log_pochhammer(ring, K, T, bases, -1)
        + log_pochhammer(ring, K, qm * tm * T, bases, -1)
    )
    return log.exp()


def _survivors(K: int, image: Monomial) -> Tuple[str, ...]:
    """Nonempty partitions whose summand does not vanish factor-by-factor at ``u = image``"""
    out = []
    for lam in up_to_size(K):
        if lam.size and not qtno_summand(lam).substitute({"u": image}).is_zero:
            out.append(str(lam))
    return tuple(out)


def qtno_checks(K: int, ring: SeriesRing) -> Checks:
    checks = [Check("T-series", qtno_lhs(K, ring), qtno_rhs(K, ring))]
    inner = ring.without("u")
    for label, image in (("u=t", _m(t=1)), ("u=1/q", _m(q=-1))):
        checks.append(Check(f"{label}: surviving summands", _survivors(K, image), ()))
        checks.append(Check(f"{label}: product side", qtno_rhs(K, inner, image), TGraded.one(inner, K)))
    return checks


# -- f_{n,m} ------------------------------------------------------------------

def laurent_depth(n: int, m: int) -> Tuple[int, int]:
    """How far below zero the q and t exponents of the definition form reach"""
    return n * m * (3 * m - 1) // 2, 3 * m * n * (n - 1) // 2


def fnm_ring(n: int, m: int, degree: Optional[int] = None) -> SeriesRing:
    degree = settings.DEFAULT_QT_DEGREE if degree is None else degree
    lq, lt = laurent_depth(n, m)
    return SeriesRing.of(q=(-lq, degree), t=(-lt, degree), u=(-n * m, n * m))


@dataclass
class FnmResult:
    n: int
    m: int
    value: TGraded
    provenance: str

    @property
    def ring(self) -> SeriesRing:
        return self.value.ring


def box_product(n: int, m: int, lam: Partition) -> HookProduct:
    """``prod_{i<=n, j<=m} (1 - u q^(j - lambda_i) t^(i - lambda'_j - 1))``"""
    conj = lam.conjugate
    return HookProduct.from_factors(
        (_qt(j - lam[i], i - conj[j] - 1, u=1), 1) for i in range(1, n + 1) for j in range(1, m + 1)
    )


def single_sum_summand(n: int, m: int, lam: Partition) -> HookProduct:
    k = lam.size
    sign = Monomial((-1) ** k, (("t", k), ("u", -k)))
    return (HookProduct.monomial(sign) * principal_P_hook(lam, n) * principal_P_hook(lam.conjugate, m, "t", "q")
            * box_product(n, m, lam))


def hook_form_summand(n: int, m: int, lam: Partition) -> HookProduct:
    factors: Dict[Monomial, int] = {}

    def bump(y: Monomial, k: int) -> None:
        factors[y] = factors.get(y, 0) + k

    for _, _, ac, lc in arms_legs(lam):
        bump(_qt(ac, n - lc), 1)
        bump(_qt(m - ac, lc), 1)
        bump(_qt(ac + 1, n - lc - 1, u=1), -1)
        bump(_qt(m - ac, lc, u=1), -1)
    return HookProduct(1, None, factors) * qtno_summand(lam)


def _grid(n: int, m: int) -> HookProduct:
    """``prod_{i<=n, j<=m} (1 - u q^j t^(i-1))``"""
    return HookProduct.from_factors((_qt(j, i - 1, u=1), 1) for i in range(1, n + 1) for j in range(1, m + 1))


def _summed(ring: SeriesRing, order: int, n: int, m: int, summand: Callable[[Partition], HookProduct]) -> TGraded:
    coeffs = [ring.zero() for _ in range(order + 1)]
    for lam in in_box(m, n):
        if lam.size > order:
            break
        coeffs[lam.size] = coeffs[lam.size] + summand(lam).expand(ring)
    return TGraded(ring, coeffs)


def _definition_form(n: int, m: int, order: int, ring: SeriesRing) -> TGraded:
    lo_q, hi_q = ring.window("q")
    lo_t, hi_t = ring.window("t")
    wide = ring.with_windows(q=(lo_q, hi_q - lo_q), t=(lo_t, hi_t - lo_t))
    inner = wide.without("u")
    box = list(in_box(m, n))
    first = {lam: eval_P(lam, delta_alphabet(n), inner) for lam in box}
    second = {lam: eval_P(lam.conjugate, delta_alphabet(m, "q"), inner, "t", "q") for lam in box}
    coeffs = [wide.zero() for _ in range(order + 1)]
    base_q = n * m * (m + 1) // 2
    base_t = m * n * (n - 1) // 2
    for lam in box:
        if lam.size > order:
            continue
        outer = first[lam] * second[lam]
        if outer.is_exact_zero():
            continue
        conj = lam.conjugate
        for mu in box:
            s = lam.size + mu.size
            third = eval_P(mu, shifted_alphabet(lam, n), inner)
            fourth = eval_P(mu.conjugate, shifted_alphabet(conj, m, "t", "q"), inner, "t", "q")
            term = (outer * third * fourth).to_ring(wide)
            prefactor = Monomial((-1) ** (n * m + s),
                                 (("q", base_q - m * s), ("t", base_t - (n - 1) * s), ("u", n * m - s)))
            coeffs[lam.size] = coeffs[lam.size] + term.shift(prefactor)
        logger.debug("f_{%d,%d} definition form: lambda=%s done", n, m, lam)
    return TGraded(wide, coeffs).to_ring(ring)


def fnm(n: int, m: int, provenance: str = "hook_form", degree: Optional[int] = None,
        order: Optional[int] = None, ring: Optional[SeriesRing] = None) -> FnmResult:
    """``f_{n,m}(u, T; q, t)`` to ``T^order`` in one of its three forms"""
    if n < 1 or m < 1:
        raise DomainError(f"f_{{n,m}} needs n, m >= 1, got ({n}, {m})")
    if provenance not in PROVENANCES:
        raise DomainError(f"unknown provenance {provenance}; expected one of {PROVENANCES}")
    ring = ring or fnm_ring(n, m, degree)
    order = n * m if order is None else min(order, n * m)
    if provenance == "def":
        value = _definition_form(n, m, order, ring)
    elif provenance == "single_sum":
        value = _summed(ring, order, n, m, lambda lam: single_sum_summand(n, m, lam))
    else:
        grid = _grid(n, m)
        value = _summed(ring, order, n, m, lambda lam: grid * hook_form_summand(n, m, lam))
    logger.info("f_{%d,%d} built from the %s form to T^%d", n, m, provenance, order)
    return FnmResult(n, m, value, provenance)


def f11_expected(ring: SeriesRing) -> TGraded:
    """``1 - uq + T(1 - t/u)``"""
    return TGraded(ring, [
        ring.from_monomials([Monomial(1), Monomial(-1, (("q", 1), ("u", 1)))]),
        ring.from_monomials([Monomial(1), Monomial(-1, (("t", 1), ("u", -1)))]),
    ])


def fnm_agreement_checks(n: int, m: int, degree: Optional[int] = None,
                         provenances=PROVENANCES) -> Checks:
    values = {p: fnm(n, m, p, degree).value for p in provenances}
    names = list(values)
    checks = [Check(f"{a} = {b}", values[a], values[b]) for a, b in zip(names, names[1:])]
    if (n, m) == (1, 1):
        checks.append(Check("f_{1,1}", values[names[0]], f11_expected(values[names[0]].ring)))
    return checks


def _regrade(f: TGraded, target: SeriesRing, order: int,
             image: Callable[[int, int], Tuple[int, Monomial]]) -> Tuple[TGraded, int]:
    """Move every ``T^k u^j`` slice of ``f`` to ``T^k'`` times a monomial.

    Returns the regraded series and the number of terms that would land
    outside ``T^0 .. T^order``.
    """
    out = [target.zero() for _ in range(order + 1)]
    stray = 0
    lo_u, hi_u = f.ring.window("u")
    for k, coeff in enumerate(f.coeffs):
        for j in range(lo_u, hi_u + 1):
            piece = coeff.slice("u", j)
            k2, shift = image(k, j)
            if not 0 <= k2 <= order:
                stray += len(piece.terms)
                continue
            out[k2] = out[k2] + piece.to_ring(target).shift(shift)
    return TGraded(target, out), stray


def _box_grid(ring: SeriesRing, n: int, m: int, qe: int = 1) -> MultiSeries:
    """``prod_{i<=n, j<=m} (1 - q^(j + qe - 1) t^i)``"""
    return HookProduct.from_factors(
        (_qt(j + qe - 1, i), 1) for i in range(1, n + 1) for j in range(1, m + 1)
    ).expand(ring)


def fnm_symmetry_check(n: int, m: int, degree: Optional[int] = None,
                       provenance: str = "hook_form") -> Checks:
    """``1/T`` reversal, ``u -> tT/(uq)``, the ``(m, n)`` swap and the special values"""
    degree = settings.DEFAULT_QT_DEGREE if degree is None else degree
    nm = n * m
    wide = degree + nm
    depth = max(laurent_depth(n, m) + laurent_depth(m, n)) + nm
    target = SeriesRing.of(q=(-depth, wide), t=(-depth, wide), u=(-nm, nm))
    window = target.with_windows(q=(-depth, degree), t=(-depth, degree))
    f = fnm(n, m, provenance, wide).value
    g = fnm(m, n, provenance, wide).value
    lhs = f.to_ring(target)
    checks: Checks = []

    reversed_, stray = _regrade(f, target, nm, lambda k, j: (nm - k - j, _m(u=j)))
    checks.append(Check("T^nm f(u/T, 1/T)", lhs, reversed_, window))
    checks.append(Check("T^nm f(u/T, 1/T): terms outside T^0..T^nm", stray, 0))

    flipped, stray = _regrade(f, target, nm, lambda k, j: (k + j, _qt(-j, j, u=-j)))
    checks.append(Check("f(tT/(uq), T)", lhs, flipped, window))
    checks.append(Check("f(tT/(uq), T): terms outside T^0..T^nm", stray, 0))

    swapped = g.substitute({"q": "t", "t": "q"}, target)
    moved, stray = _regrade(swapped, target, nm, lambda k, j: (k, _qt(j, -j, u=j)))
    checks.append(Check(f"f_{{{m},{n}}}(qu/t, T; t, q)", lhs, moved, window))
    checks.extend(special_value_checks(f, n, m, degree))
    return checks


def fnm_image(n: int, m: int, images: Dict[str, Union[str, Monomial]], ring: SeriesRing,
              order: Optional[int] = None) -> TGraded:
    """``f_{n,m}`` after a monomial substitution, made summand by summand in factored form.

    Substituting into an expanded ``f_{n,m}`` cannot be certified once ``u``
    is truncated; the single-sum summands are exact hook products, so the
    substitution is applied before expanding.
    """
    order = n * m if order is None else min(order, n * m)
    return _summed(ring, order, n, m, lambda lam: single_sum_summand(n, m, lam).substitute(images))


def special_value_checks(f: TGraded, n: int, m: int, degree: int) -> Checks:
    """``u = t``, ``u = 1/q`` and ``lim_{u->0} f(u, uT)``"""
    nm = n * m
    lq, lt = f.ring.window("q")[0], f.ring.window("t")[0]
    flat = SeriesRing.of(q=(lq - nm, degree), t=(lt - nm, degree))
    grid = _box_grid(flat, n, m)
    checks = [
        Check("f(t, T)", fnm_image(n, m, {"u": "t"}, flat), TGraded.constant(grid, nm)),
        Check("f(1/q, T)", fnm_image(n, m, {"u": _m(q=-1)}, flat), TGraded.monomial(grid, nm, nm)),
    ]
    window = flat.with_windows(q=(lq - nm, min(degree, f.ring.window("q")[1])),
                               t=(lt - nm, min(degree, f.ring.window("t")[1])))
    limit = TGraded(flat, [c.slice("u", -k).to_ring(flat) if -k >= c.ring.window("u")[0] else flat.zero()
                           for k, c in enumerate(f.coeffs)])
    expected = TGraded.one(flat, nm)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            expected = expected - expected * TGraded.monomial(flat.monomial(_qt(j - 1, i)), 1, nm)
    checks.append(Check("lim u->0 f(u, uT)", limit, expected, window))
    divergent = sum(1 for k, c in enumerate(f.coeffs) for e in c.terms if e[c.ring.index("u")] < -k)
    checks.append(Check("lim u->0 f(u, uT): divergent terms", divergent, 0))
    return checks


def fnm_conjecture_check(n: int, m: int, degree: Optional[int] = None,
                         provenance: str = "hook_form", doubling: Optional[bool] = None) -> Checks:
    """Integrality and positivity evidence, never proof.

    Positivity is tested on ``f(-z/w, T; z^2, 1/w^2)`` written in ``(z, W)``
    with ``W = 1/w``, so the image is a series in nonnegative directions.
    """
    degree = settings.DEFAULT_QT_DEGREE if degree is None else degree
    nm = n * m
    f = fnm(n, m, provenance, degree).value
    checks = [
        Check("integer coefficients", f, keep_terms(f, lambda _, c: is_integer(c))),
        Check("no negative q, t powers", f, keep_terms(f, lambda p, _: p["q"] >= 0 and p["t"] >= 0)),
    ]
    lq, lt = laurent_depth(n, m)
    image_ring = SeriesRing.of(z=(-nm - 2 * lq, 2 * degree), W=(-nm - 2 * lt, 2 * degree))
    image = fnm_image(n, m, {"u": Monomial(-1, (("z", 1), ("W", 1))), "q": _m(z=2), "t": _m(W=2)}, image_ring)
    checks.append(Check("f(-z/w, T; z^2, 1/w^2) nonnegative", image,
                        keep_terms(image, lambda _, c: c >= 0 and is_integer(c))))
    if doubling is None:
        doubling = nm <= 4
    if doubling:
        wider = fnm(n, m, provenance, 2 * degree).value
        checks.append(Check(f"no q, t powers beyond {degree} at window {2 * degree}", wider,
                            keep_terms(wider, lambda p, _: p["q"] <= degree and p["t"] <= degree)))
    return checks


def fnm_limit_check(K: int, ring: SeriesRing, n: Optional[int] = None, m: Optional[int] = None) -> Checks:
    """``f_{n,m}`` against ``(uq; q, t)_inf`` times the q,t-NO sum and the closed product"""
    depth = max(ring.window("q")[1], ring.window("t")[1])
    n = n or depth + K + 1
    m = m or depth + K + 1
    f = fnm(n, m, "hook_form", order=K, ring=ring).value
    T = _m(T=1)
    bases = [_m(q=1), _m(t=1), T]
    prefix = TGraded.constant(pochhammer_inf(ring, _m(q=1, u=1), ["q", "t"]), K)
    closed = (
        log_pochhammer(ring, K, _m(q=1, u=1), bases, 1)
        + log_pochhammer(ring, K, _qt(0, 1, u=-1, T=1), bases, 1)
        + log_pochhammer(ring, K, T, bases, -1)
        + log_pochhammer(ring, K, _qt(1, 1, T=1), bases, -1)
    ).exp()
    return [
        Check(f"f_{{{n},{m}}} = (uq; q, t)_inf * qtno sum", f, prefix * qtno_lhs(K, ring)),
        Check(f"f_{{{n},{m}}} = closed product", f, closed),
    ]


# -- classical Nekrasov-Okounkov ----------------------------------------------

def classical_lhs(K: int, ring: SeriesRing) -> TGraded:
    """``sum T^|lambda| prod_h (1 - s/h^2)`` with ``s`` a formal variable"""
    coeffs = []
    for k in range(K + 1):
        acc = ring.zero()
        for lam in all_of_size(k):
            factors = [(Monomial(Fraction(1, (a + l + 1) ** 2), (("s", 1),)), 1) for a, l, _, _ in arms_legs(lam)]
            acc = acc + HookProduct.from_factors(factors).expand(ring)
        coeffs.append(acc)
    return TGraded(ring, coeffs)


def classical_rhs(K: int, ring: SeriesRing) -> TGraded:
    """``prod_k (1 - T^k)^(s - 1)`` as ``exp((1 - s) sum_n sigma(n)/n T^n)``"""
    one_minus_s = ring.from_monomials([Monomial(1), Monomial(-1, (("s", 1),))])
    log = [ring.zero()] + [one_minus_s.scale(Fraction(sum(divisors(k)), k)) for k in range(1, K + 1)]
    return TGraded(ring, log).exp()


def _euler(K: int) -> Tuple[Fraction, ...]:
    """``prod (1 - T^k)^3 = sum (-1)^j (2j+1) T^(j(j+1)/2)``"""
    out = [Fraction(0)] * (K + 1)
    j = 0
    while j * (j + 1) // 2 <= K:
        out[j * (j + 1) // 2] = Fraction((-1) ** j * (2 * j + 1))
        j += 1
    return tuple(out)


def classical_no(K: int) -> Checks:
    ring = SeriesRing.of(s=K)
    lhs = classical_lhs(K, ring)
    at_four = tuple(sum(hook_lengths_product(lam, lambda h: 1 - Fraction(4, h * h)) for lam in all_of_size(k))
                    for k in range(K + 1))
    support = tuple(str(lam) for lam in up_to_size(K)
                    if hook_lengths_product(lam, lambda h: 1 - Fraction(4, h * h)) != 0)
    staircases = tuple(str(staircase(r)) for r in range(1, K + 2) if r * (r - 1) // 2 <= K)
    at_zero = tuple(sum(hook_lengths_product(lam, lambda h: Fraction(1)) for lam in all_of_size(k))
                    for k in range(K + 1))
    return [
        Check("Q[s][[T]]", lhs, classical_rhs(K, ring)),
        Check("s=4: supporting partitions", support, staircases),
        Check("s=4: T-series", at_four, _euler(K)),
        Check("s=0: T-series", at_zero, tuple(Fraction(partition_count(k)) for k in range(K + 1))),
    ]


# -- genus-g hook series, U_n and Hbar_n ---------------------------------------

def hbar_windows(g: int, n: int) -> Tuple[int, int]:
    """``(d, w_lo)``: z up to ``d``, w-degree down to ``-w_lo`` in ``W = 1/w``"""
    d_n = 2 * n * n * (g - 1) + 2
    return max(4, 2 * n * n * abs(g - 1) + 2), max(2, d_n)


def _hrv_rings(g: int, n_max: int, d: Optional[int] = None) -> Tuple[SeriesRing, SeriesRing]:
    d0, w_lo = hbar_windows(g, n_max)
    d = d or d0
    loss = max(0, 2 * g - 2) * n_max ** 3
    window = SeriesRing.of(Z=d, W=(-w_lo, d))
    work = SeriesRing.of(Z=d, W=(-(w_lo + loss), d + 2 + loss))
    return window, work


def hook_series(g: int, order: int, ring: SeriesRing) -> TGraded:
    """``sum_lambda H_lambda(Z, 1/W) T^|lambda|``"""
    return TGraded(ring, [
        sum((genus_hook(lam, g).expand(ring) for lam in all_of_size(k)), ring.zero())
        for k in range(order + 1)
    ])


def u_series(hooks: TGraded) -> List[MultiSeries]:
    """``U_n = n [T^n] log sum H_lambda T^|lambda|``; index 0 unused"""
    log = hooks.log()
    return [log[0]] + [log[k].scale(k) for k in range(1, hooks.order + 1)]


def hbar_series(U: List[MultiSeries], n: int) -> MultiSeries:
    """``(1/n)(z^2 - 1)(1 - w^2) sum_{d|n} mu(d) U_{n/d}(z^d, w^d)``"""
    ring = U[1].ring
    factor = ring.poly({(2, 0): 1, (0, 0): -1}) * ring.poly({(0, 0): 1, (0, -2): -1})
    total = ring.zero()
    for d in divisors(n):
        if mobius(d):
            total = total + U[n // d].adams(d).scale(mobius(d))
    return (factor * total).scale(Fraction(1, n))


def hbar(g: int, n: int, d: Optional[int] = None) -> MultiSeries:
    window, work = _hrv_rings(g, n, d)
    U = u_series(hook_series(g, n, work))
    return hbar_series(U, n).require(window, f"Hbar_{n}").clip(window)


def un(g: int, n: int, d: Optional[int] = None) -> MultiSeries:
    window, work = _hrv_rings(g, n, d)
    return u_series(hook_series(g, n, work))[n].require(window, f"U_{n}").clip(window)


def zw_text(series: MultiSeries) -> str:
    """Render a ``(Z, W)`` series in ``(z, w)`` with ``w = 1/W``"""
    iz, iw = series.ring.index("Z"), series.ring.index("W")
    return format_terms(({"z": e[iz], "w": -e[iw]}, c) for e, c in series.terms.items())


def _zw(ring: SeriesRing, terms: Dict[Tuple[int, int], int]) -> MultiSeries:
    return ring.poly(terms)


def hrv_pipeline(g: int, n_max: int, d: Optional[int] = None) -> Checks:
    window, work = _hrv_rings(g, n_max, d)
    hooks = hook_series(g, n_max, work)
    U = u_series(hooks)
    H = [work.zero()] + [hbar_series(U, n) for n in range(1, n_max + 1)]
    checks = [Check("U_1 = H_(1)", U[1], genus_hook(Partition.of(1), g).expand(work), window)]
    for n in range(1, n_max + 1):
        if g == 1:
            checks.append(Check(f"Hbar_{n} = (z - w)^2", H[n], _zw(work, {(2, 0): 1, (1, -1): -2, (0, -2): 1}), window))
            closed = work.zero()
            for k in divisors(n):
                closed = closed + HookProduct.from_factors(
                    [(_m(Z=k, W=k), 2), (_m(Z=2 * k), -1), (_m(W=2 * k), -1)], Fraction(n, k)).expand(work)
            checks.append(Check(f"U_{n} closed form", U[n], closed, window))
        if g == 0:
            closed = HookProduct.from_factors([(_m(Z=2 * n), -1), (_m(W=2 * n), -1)], 1, _m(W=2 * n)).expand(work)
            checks.append(Check(f"Hbar_{n} = w^-2n / ((1 - z^2n)(1 - w^-2n))", H[n], closed, window))
        if g >= 1:
            checks.append(Check(f"Hbar_{n} polynomial in z, w (evidence)", H[n],
                                keep_terms(H[n], lambda p, _: p["W"] <= 0), window))
            mirrored = H[n].substitute({"W": Monomial(-1, (("W", 1),))})
            checks.append(Check(f"Hbar_{n}(z, -w) nonnegative (evidence)", mirrored,
                                keep_terms(mirrored, lambda _, c: c >= 0), window))
    if g <= 1:
        kernel = HookProduct.from_factors([(_m(Z=2), -1), (_m(W=2), -1)], 1, _m(W=2)).expand(work)
        generator = TGraded(work, [work.zero()] + [H[n] * kernel for n in range(1, n_max + 1)])
        checks.append(Check("sum H_lambda T^|lambda| = Exp(sum Hbar_n T^n / ((z^2-1)(1-w^2)))",
                            hooks, generator.plethystic_exp(), window))
    if g >= 1:
        d0 = window.window("Z")[1]
        wide_window, wide_work = _hrv_rings(g, n_max, 2 * d0)
        wide_hooks = u_series(hook_series(g, n_max, wide_work))
        top = hbar_series(wide_hooks, n_max).require(wide_window, f"Hbar_{n_max}").clip(wide_window)
        checks.append(Check(f"Hbar_{n_max}: no z powers beyond {d0} at window {2 * d0} (evidence)", top,
                            keep_terms(top, lambda p, _: p["Z"] <= d0)))
    return checks

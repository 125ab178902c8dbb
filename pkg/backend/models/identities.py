"""Registry of the identities the verifier knows how to check.

Each entry pairs an id with a builder, the default windows it runs at, a
plain-text anchor of the identity and a status. Builders take a
``Windows`` record and return a list of labelled ``Check`` pairs.
Entries with status ``conjecture-evidence`` report evidence only and never
gate the exit code.
"""

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..core.config import settings
from ..core.errors import ConfigError
from .checks import Check, Checks
from .elliptic import coefficient_checks, elliptic_no_verify
from .exactnum import (Monomial, MultiSeries, SeriesRing, TGraded, cap_laurent, log_pochhammer,
                       pochhammer_factors, pochhammer_inf)
from .hooks import (HookProduct, genus_hook, grid_correction, hook_b, hook_c, hook_cprime, hook_lengths_product,
                    qt_pochhammer_grid, qt_pochhammer_lambda, qtno_summand, schur_hook_summand)
from .interpolation import interpolation_spot_check
from .macdonald import (R_principal_hook, delta_alphabet, eval_P, eval_Q, eval_R, eval_skew_P, eval_skew_Q,
                        eval_skew_schur, plethystic_eval, plethystic_P_closed, principal_alphabet, principal_P,
                        principal_P_inf, rho_shifted_alphabet, skew_Q_principal, variable_alphabet)
from .nekrasov import (PROVENANCES, classical_no, fnm_agreement_checks, fnm_conjecture_check, fnm_limit_check,
                       fnm_symmetry_check, hook_series, hrv_pipeline, qtno_checks, qtno_ring)
from .oracle import from_sympy, plethystic_value, symbolic_table
from .partitions import Partition, all_of_size, arms_legs, in_box, in_Dp, is_p_core, up_to_size

logger = logging.getLogger(__name__)

THEOREM = "theorem"
EVIDENCE = "conjecture-evidence"
STATUSES = (THEOREM, EVIDENCE)


@dataclass(frozen=True)
class Windows:
    """Truncation orders a builder runs at"""

    K: int
    degree: int
    u_window: int
    p_max: int
    extra: int
    n: int = 2
    m: int = 2
    size: int = 3
    # largest n*m at which f_{n,m} is also built from its definition
    def_nm: int = 9

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)


WINDOW_FIELDS = tuple(Windows.__dataclass_fields__)


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    builder: Callable[[Windows], Checks]
    anchor: str
    defaults: Mapping[str, int] = field(default_factory=dict)
    status: str = THEOREM
    notes: str = ""

    def windows(self, overrides: Optional[Mapping[str, Optional[int]]] = None) -> Windows:
        """Global defaults, then the entry's own, then the caller's overrides"""
        values = {
            "K": settings.DEFAULT_T_ORDER,
            "degree": settings.DEFAULT_QT_DEGREE,
            "u_window": settings.DEFAULT_U_WINDOW,
            "p_max": settings.DEFAULT_P_ORDER,
            "extra": settings.DEFAULT_EXTRA_DEGREE,
        }
        values.update(self.defaults)
        for key, value in (overrides or {}).items():
            if value is None:
                continue
            if key not in WINDOW_FIELDS:
                raise ConfigError(f"unknown window {key}")
            values[key] = value
        bad = {k: v for k, v in values.items() if not isinstance(v, int) or v < 0}
        if bad:
            raise ConfigError(f"windows must be nonnegative integers: {bad}")
        return Windows(**values)


# -- helpers ------------------------------------------------------------------

def _m(coef=1, **powers: int) -> Monomial:
    return Monomial.of(coef, **powers)


def _prefixed(prefix: str, checks: Checks) -> Checks:
    return [Check(f"{prefix}{c.label}", c.lhs, c.rhs, c.window) for c in checks]


def _lift(series: MultiSeries, ring: SeriesRing, m: Monomial) -> MultiSeries:
    return series.to_ring(ring).shift(m)


def _capped(series: MultiSeries, **bounds: int) -> MultiSeries:
    prec = list(series.prec)
    for name, bound in bounds.items():
        i = series.ring.index(name)
        prec[i] = min(prec[i], bound)
    return MultiSeries(series.ring, series.terms, prec, series.val)


def _rows(size: int, rows: int) -> Iterator[Partition]:
    return (lam for lam in up_to_size(size) if lam.length <= rows)


def _subpartitions(lam: Partition) -> Iterator[Partition]:
    return (nu for nu in up_to_size(lam.size) if lam.contains(nu))


def _summed(ring: SeriesRing, order: int, summand: Callable[[Partition], MultiSeries],
            keep: Callable[[Partition], bool] = lambda _: True) -> TGraded:
    coeffs = []
    for k in range(order + 1):
        acc = ring.zero()
        for lam in all_of_size(k):
            if keep(lam):
                acc = acc + summand(lam)
        coeffs.append(acc)
    return TGraded(ring, coeffs)


def _xy_ring(w: Windows) -> Tuple[SeriesRing, List[Monomial], List[Monomial]]:
    E = w.extra
    ring = SeriesRing.of(q=w.degree, t=w.degree, x1=E, x2=E, y1=E, y2=E)
    return ring, variable_alphabet("x", 2), variable_alphabet("y", 2)


def _cauchy_kernel(ring: SeriesRing, xs: Sequence[Monomial], ys: Sequence[Monomial]) -> MultiSeries:
    """``prod_{i,j} (t x_i y_j; q)_inf / (x_i y_j; q)_inf``"""
    factors = []
    for x in xs:
        for y in ys:
            factors += pochhammer_factors(ring, _m(t=1) * x * y, ["q"])
            factors += pochhammer_factors(ring, x * y, ["q"], invert=True)
    return HookProduct.from_factors(factors).expand(ring)


# -- q,t-Nekrasov-Okounkov and f_{n,m} ------------------------------------------

def build_qtno(w: Windows) -> Checks:
    return qtno_checks(w.K, qtno_ring(w.K, w.degree, w.u_window))


def _fnm_grid(w: Windows) -> Iterator[Tuple[int, int]]:
    return ((a, b) for a in range(1, w.n + 1) for b in range(1, w.m + 1))


def build_fnm_forms(w: Windows) -> Checks:
    checks: Checks = []
    for a, b in _fnm_grid(w):
        provenances = PROVENANCES if a * b <= w.def_nm else PROVENANCES[1:]
        checks += _prefixed(f"({a},{b}) ", fnm_agreement_checks(a, b, w.degree, provenances))
    return checks


def build_fnm_symmetry(w: Windows) -> Checks:
    checks: Checks = []
    for a, b in _fnm_grid(w):
        checks += _prefixed(f"({a},{b}) ", fnm_symmetry_check(a, b, w.degree))
    return checks


def build_fnm_polynomiality(w: Windows) -> Checks:
    return fnm_conjecture_check(w.n, w.m, w.degree)


def build_fnm_limit(w: Windows) -> Checks:
    return fnm_limit_check(w.K, qtno_ring(w.K, w.degree, w.u_window))


def build_classical_no(w: Windows) -> Checks:
    return classical_no(w.K)


# -- genus-g hook series ------------------------------------------------------

def build_hrv_pipeline(w: Windows) -> Checks:
    return _prefixed("g=0: ", hrv_pipeline(0, w.n)) + _prefixed("g=1: ", hrv_pipeline(1, w.n))


def build_hrv_g2(w: Windows) -> Checks:
    return hrv_pipeline(2, w.n)


def build_genus0(w: Windows) -> Checks:
    """``sum H_lambda(q^1/2, t^-1/2) T^|lambda| = prod 1/(1 - q^(i-1) t^j T)`` with ``q = Z^2, t = W^2``"""
    ring = SeriesRing.of(Z=w.degree, W=w.degree)
    rhs = log_pochhammer(ring, w.K, _m(W=2, T=1), [_m(Z=2), _m(W=2)], -1).exp()
    return [Check("T-series", hook_series(0, w.K, ring), rhs)]


def build_hrv_g1(w: Windows) -> Checks:
    ring = SeriesRing.of(Z=w.degree, W=w.degree)
    bases = [_m(Z=2), _m(W=2), _m(T=1)]
    rhs = (
        log_pochhammer(ring, w.K, _m(Z=1, W=1, T=1), bases, 2)
        + log_pochhammer(ring, w.K, _m(T=1), bases, -1)
        + log_pochhammer(ring, w.K, _m(Z=2, W=2, T=1), bases, -1)
    ).exp()
    hooks = hook_series(1, w.K, ring)
    checks = [Check("T-series", hooks, rhs)]
    images = {"u": _m(W=1, Z=-1), "q": _m(Z=2), "t": _m(W=2)}
    for lam in up_to_size(w.K):
        if lam.size:
            checks.append(Check(f"u=W/Z summand {lam}", qtno_summand(lam).substitute(images).expand(ring),
                                genus_hook(lam, 1).expand(ring)))
    return checks


def build_tq_hook(w: Windows) -> Checks:
    """``t = q``: hook summands against a product whose exponents ``r`` grow with the q-power"""
    D, K = w.degree, w.K
    U = max(K, w.u_window)
    ring = SeriesRing.of(q=D, u=(-U, U))
    lhs = _summed(ring, K, lambda lam: schur_hook_summand(lam).expand(ring))
    log = [ring.zero() for _ in range(K + 1)]
    for k in range(1, K + 1):
        for s in range(1, K // k + 1):
            terms: Dict[Tuple[int, int], Fraction] = {}

            def add(qe: int, ue: int, c: Fraction) -> None:
                if qe <= D:
                    terms[(qe, ue)] = terms.get((qe, ue), 0) + c

            r = 1
            while (r - 1) * s <= D:
                c = Fraction(r, s)
                add(r * s, s, -c)
                add(r * s, -s, -c)
                add((r - 1) * s, 0, c)
                add((r + 1) * s, 0, c)
                r += 1
            series = ring.poly(terms)
            log[k * s] = log[k * s] + _capped(series, q=D)
    rhs = TGraded(ring, log).exp()
    return [Check("T-series", lhs, rhs)]


# -- principal specialisations and hook sums -------------------------------------

def build_km_binomial(w: Windows) -> Checks:
    """``sum t^n(lam) (a; q, t)_lam P_lam(x) / c'_lam = prod_i (a x_i; q)_inf / (x_i; q)_inf``"""
    E, D = w.extra, w.degree
    ring = SeriesRing.of(q=D, t=(-E, D), a=E, x1=E, x2=E)
    window = ring.with_windows(t=(-E, D - E))
    xs = variable_alphabet("x", 2)
    lhs = ring.zero()
    for lam in _rows(2 * E, 2):
        weight = qt_pochhammer_lambda("a", lam) * _m(t=lam.n_stat) / hook_cprime(lam)
        lhs = lhs + weight.expand(ring) * eval_P(lam, xs, ring)
    factors = []
    for x in xs:
        factors += pochhammer_factors(ring, _m(a=1) * x, ["q"])
        factors += pochhammer_factors(ring, x, ["q"], invert=True)
    rhs = HookProduct.from_factors(factors).expand(ring)
    return [Check("x-series", lhs, rhs, window)]


def build_qt_nfactorial(w: Windows) -> Checks:
    """``sum_{lam |- n} q^n(lam') t^n(lam) / (c_lam c'_lam) = [u^n] (-u; q, t)_inf``"""
    ring = SeriesRing.of(q=w.degree, t=w.degree)
    generating = pochhammer_inf(ring.extend(u=w.K), _m(-1, u=1), ["q", "t"])
    checks = []
    for n in range(1, w.K + 1):
        lhs = ring.zero()
        for lam in all_of_size(n):
            weight = HookProduct.monomial(_m(q=lam.conjugate.n_stat, t=lam.n_stat)) / (hook_c(lam) * hook_cprime(lam))
            lhs = lhs + weight.expand(ring)
        checks.append(Check(f"n={n}", lhs, generating.slice("u", n)))
    return checks


def build_nfactorial(w: Windows) -> Checks:
    return [
        Check(f"n={n}", sum(hook_lengths_product(lam, lambda h: Fraction(1, h * h)) for lam in all_of_size(n)),
              Fraction(1, factorial(n)))
        for n in range(1, w.K + 1)
    ]


def _killed(K: int, summand: Callable[[Partition], HookProduct]) -> Tuple[str, ...]:
    return tuple(str(lam) for lam in up_to_size(K) if lam.size and summand(lam).is_zero)


def build_dp(w: Windows) -> Checks:
    """qtNO at ``u = q^-p``: the sum collapses onto ``D_p``"""
    K, checks = w.K, []
    T, t = _m(T=1), _m(t=1)
    for p in range(1, w.p_max + 1):
        ring = SeriesRing.of(q=(-K * (p - 1), w.degree), t=w.degree)

        def summand(lam: Partition, p=p) -> HookProduct:
            return qtno_summand(lam).substitute({"u": _m(q=-p)})

        lhs = _summed(ring, K, lambda lam: summand(lam).expand(ring), lambda lam: in_Dp(lam, p))
        log = TGraded.zero(ring, K)
        for i in range(1, p):
            log = log + log_pochhammer(ring, K, _m(q=i - p) * T, [t, T], 1)
            log = log + log_pochhammer(ring, K, _m(q=i) * t * T, [t, T], -1)
        expected = tuple(str(lam) for lam in up_to_size(K) if lam.size and not in_Dp(lam, p))
        checks += [
            Check(f"p={p}: vanishing summands", _killed(K, summand), expected),
            Check(f"p={p}: T-series", lhs, log.exp()),
        ]
    return checks


def cp_ring(K: int, p: int, degree: int) -> SeriesRing:
    return SeriesRing.of(t=(-K * max(p - 1, 1), degree))


def cp_sides(p: int, K: int, ring: SeriesRing) -> Tuple[TGraded, TGraded]:
    """Sum over ``p``-cores and the product ``(T;T)^(p-1) prod_{i<j} (t^(j-i) T, t^(i-j) T; T)``"""
    def summand(lam: Partition) -> HookProduct:
        return schur_hook_summand(lam, "u", "t").substitute({"u": _m(t=-p)})

    lhs = _summed(ring, K, lambda lam: summand(lam).expand(ring), lambda lam: is_p_core(lam, p))
    T = _m(T=1)
    log = log_pochhammer(ring, K, T, [T], p - 1)
    for i in range(1, p + 1):
        for j in range(i + 1, p + 1):
            log = log + log_pochhammer(ring, K, _m(t=j - i) * T, [T], 1)
            log = log + log_pochhammer(ring, K, _m(t=i - j) * T, [T], 1)
    return lhs, log.exp()


def build_cp(w: Windows) -> Checks:
    checks = []
    for p in range(2, w.p_max + 1):
        ring = cp_ring(w.K, p, w.degree)
        lhs, rhs = cp_sides(p, w.K, ring)

        def summand(lam: Partition, p=p) -> HookProduct:
            return schur_hook_summand(lam, "u", "t").substitute({"u": _m(t=-p)})

        expected = tuple(str(lam) for lam in up_to_size(w.K) if lam.size and not is_p_core(lam, p))
        checks += [
            Check(f"p={p}: vanishing summands", _killed(w.K, summand), expected),
            Check(f"p={p}: T-series", lhs, rhs),
        ]
    return checks


def jacobi_sides(K: int, ring: SeriesRing) -> Tuple[TGraded, TGraded]:
    """``sum_{n>=1} (-1)^n T^C(n,2) (t^n - t^(1-n))/(1 - t) = (T, tT, T/t; T)_inf``"""
    coeffs = [ring.zero() for _ in range(K + 1)]
    n = 1
    while comb(n, 2) <= K:
        sign = -1 if n % 2 == 0 else 1
        body = ring.poly({(1 - n + k,): sign for k in range(2 * n - 1)})
        coeffs[comb(n, 2)] = coeffs[comb(n, 2)] + body
        n += 1
    T = _m(T=1)
    log = (
        log_pochhammer(ring, K, T, [T], 1)
        + log_pochhammer(ring, K, _m(t=1, T=1), [T], 1)
        + log_pochhammer(ring, K, _m(t=-1, T=1), [T], 1)
    )
    return TGraded(ring, coeffs), log.exp()


def build_jacobi(w: Windows) -> Checks:
    ring = cp_ring(w.K, 2, w.degree)
    lhs, rhs = jacobi_sides(w.K, ring)
    cores, product = cp_sides(2, w.K, ring)
    return [
        Check("T-series", lhs, rhs),
        Check("2-core sum", cores, lhs),
        Check("2-core product", product, rhs),
    ]


def shifted_shape(lam: Partition, p: int) -> Partition:
    """``(lam_1, ..., lam_p) + (lam'_1 - lam'_p, ..., lam'_1 - lam'_2, 0)``"""
    conj = lam.conjugate
    return Partition(tuple(lam[i] + conj[1] - conj[p + 1 - i] for i in range(1, p + 1)))


def _hook_power_cases(w: Windows) -> Iterator[Tuple[Partition, int]]:
    for p in range(2, w.p_max + 1):
        for lam in up_to_size(min(w.size, p - 1)):
            if lam.size:
                yield lam, p


def build_hook_power_schur(w: Windows) -> Checks:
    """``prod_h (1 - q^(h+p))(1 - q^(h-p)) / (1 - q^h)^2 = (-1)^|lam| q^(-l(lam) C(p,2)) s_mu(1, ..., q^(p-1))``"""
    checks = []
    for lam, p in _hook_power_cases(w):
        mu = shifted_shape(lam, p)
        low = sum(min(0, a + l + 1 - p) for a, l, _, _ in arms_legs(lam))
        ring = SeriesRing.of(q=(low, max(mu.size * (p - 1), 1)))
        lhs = schur_hook_summand(lam, "u", "q").substitute({"u": _m(q=p)}).expand(ring)
        body = eval_skew_schur(mu, Partition(), principal_alphabet(p, "q"), ring)
        rhs = body.shift(_m((-1) ** lam.size, q=-lam.length * comb(p, 2)))
        checks.append(Check(f"lambda={lam}, p={p}", lhs, rhs))
    return checks


def weyl_dimension(mu: Partition, p: int) -> Fraction:
    """``s_mu(1^p)`` by the Weyl dimension formula"""
    value = Fraction(1)
    for i in range(1, p + 1):
        for j in range(i + 1, p + 1):
            value *= Fraction(mu[i] - mu[j] + j - i, j - i)
    return value


def build_sl_dimension(w: Windows) -> Checks:
    return [
        Check(f"lambda={lam}, p={p}", hook_lengths_product(lam, lambda h, p=p: Fraction(p * p, h * h) - 1),
              weyl_dimension(shifted_shape(lam, p), p))
        for lam, p in _hook_power_cases(w)
    ]


# -- Cauchy identities ------------------------------------------------------------

def build_cauchy(w: Windows) -> Checks:
    ring, xs, ys = _xy_ring(w)
    lhs = ring.zero()
    for lam in _rows(2 * w.extra, 2):
        lhs = lhs + eval_P(lam, xs, ring) * eval_Q(lam, ys, ring)
    return [Check("sum P_lam(x) Q_lam(y)", lhs, _cauchy_kernel(ring, xs, ys))]


def build_cauchy_skew(w: Windows) -> Checks:
    ring, xs, ys = _xy_ring(w)
    kernel = _cauchy_kernel(ring, xs, ys)
    checks = []
    small = list(up_to_size(1))
    for nu in small:
        for tau in small:
            lhs = ring.zero()
            for lam in up_to_size(min(nu.size, tau.size) + 2 * w.extra):
                if lam.contains(nu) and lam.contains(tau):
                    lhs = lhs + eval_skew_P(lam, nu, xs, ring) * eval_skew_Q(lam, tau, ys, ring)
            inner = ring.zero()
            for kappa in _subpartitions(nu):
                if tau.contains(kappa):
                    inner = inner + eval_skew_P(tau, kappa, xs, ring) * eval_skew_Q(nu, kappa, ys, ring)
            checks.append(Check(f"nu={nu}, tau={tau}", lhs, kernel * inner))
    return checks


def build_cauchy_dual(w: Windows) -> Checks:
    """``sum_mu P_mu(x; q, t) P_mu'(y; t, q) = prod (1 + x_i y_j)``, T absorbed by homogeneity"""
    ring, xs, ys = _xy_ring(w)
    lhs = ring.zero()
    for mu in in_box(2, 2):
        lhs = lhs + eval_P(mu, xs, ring) * eval_P(mu.conjugate, ys, ring, "t", "q")
    rhs = HookProduct.from_factors([(-(x * y), 1) for x in xs for y in ys]).expand(ring)
    return [Check("dual Cauchy", lhs, rhs)]


def build_doublesum(w: Windows) -> Checks:
    """``sum T^|lam| P_{lam/nu}(x) Q_{lam/nu}(y) = 1/(T;T) prod (tT x_i y_j; q, T) / (T x_i y_j; q, T)``"""
    ring, xs, ys = _xy_ring(w)

    def summand(lam: Partition) -> MultiSeries:
        acc = ring.zero()
        for nu in _subpartitions(lam):
            acc = acc + eval_skew_P(lam, nu, xs, ring) * eval_skew_Q(lam, nu, ys, ring)
        return acc

    lhs = _summed(ring, w.K, summand)
    T = _m(T=1)
    log = log_pochhammer(ring, w.K, T, [T], -1)
    for x in xs:
        for y in ys:
            log = log + log_pochhammer(ring, w.K, _m(t=1) * x * y * T, ["q", T], 1)
            log = log + log_pochhammer(ring, w.K, x * y * T, ["q", T], -1)
    return [Check("T-series", lhs, log.exp())]


class _PrincipalValues:
    """Memoised ``b`` and ``Q_{lam/mu}`` at ``t^rho`` (``(q, t)``) and ``q^rho`` (``(t, q)``)"""

    def __init__(self, ring: SeriesRing):
        self.ring = ring
        self._memo: Dict[Tuple, MultiSeries] = {}

    def _get(self, key: Tuple, build: Callable[[], MultiSeries]) -> MultiSeries:
        if key not in self._memo:
            self._memo[key] = build()
        return self._memo[key]

    def b(self, lam: Partition, dual: bool = False) -> MultiSeries:
        q, t = ("t", "q") if dual else ("q", "t")
        return self._get(("b", lam, dual), lambda: hook_b(lam, q, t).expand(self.ring))

    def Q(self, lam: Partition, mu: Partition, dual: bool = False) -> MultiSeries:
        q, t = ("t", "q") if dual else ("q", "t")
        return self._get(("Q", lam, mu, dual), lambda: skew_Q_principal(lam, mu, self.ring, None, q, t))


def _fourfold_rhs(ring: SeriesRing, base: Monomial, terms: Iterable[Tuple[Monomial, int]],
                  K: Optional[int] = None):
    bases = ["q", "t", base]
    if K is None:
        factors = pochhammer_factors(ring, base, [base], invert=True)
        for x, sign in terms:
            factors += pochhammer_factors(ring, x, bases, invert=sign < 0)
        return HookProduct.from_factors(factors).expand(ring)
    log = log_pochhammer(ring, K, base, [base], -1)
    for x, sign in terms:
        log = log + log_pochhammer(ring, K, x, bases, sign)
    return log.exp()


def build_fourfold(w: Windows) -> Checks:
    E, K = w.extra, w.K
    qt = SeriesRing.of(q=w.degree, t=w.degree)
    ring = qt.extend(a=E, b=E, c=E, d=E)
    values = _PrincipalValues(qt)

    def term(lam: Partition, mu: Partition, nu: Partition, tau: Partition) -> MultiSeries:
        return (values.b(nu) * values.b(tau, True) * values.Q(lam, nu) * values.Q(lam.conjugate, tau, True)
                * values.Q(mu, nu) * values.Q(mu.conjugate, tau, True))

    def graded(lam: Partition) -> MultiSeries:
        acc = ring.zero()
        for nu in _subpartitions(lam):
            for tau in _subpartitions(lam.conjugate):
                if lam.size - nu.size > E or lam.size - tau.size > E:
                    continue
                for mu in up_to_size(min(nu.size, tau.size) + E):
                    if not (mu.contains(nu) and mu.conjugate.contains(tau)):
                        continue
                    if mu.size - nu.size > E or mu.size - tau.size > E:
                        continue
                    shift = _m(a=lam.size - nu.size, b=lam.size - tau.size, c=mu.size - nu.size,
                               d=mu.size - tau.size)
                    acc = acc + _lift(term(lam, mu, nu, tau), ring, shift)
        return acc

    lhs = _summed(ring, K, graded)
    rhs = _fourfold_rhs(ring, _m(T=1), [(_m(-1, a=1, b=1, T=1), 1), (_m(-1, c=1, d=1), 1),
                                        (_m(a=1, c=1, T=1), -1), (_m(b=1, d=1, T=1), -1)], K)

    symmetric = ring.zero()
    for lam in up_to_size(E):
        for mu in up_to_size(E):
            for nu in _subpartitions(lam):
                if not mu.contains(nu):
                    continue
                for tau in _subpartitions(lam.conjugate):
                    if mu.conjugate.contains(tau):
                        shift = _m(a=lam.size, b=mu.size, c=nu.size, d=tau.size)
                        symmetric = symmetric + _lift(term(lam, mu, nu, tau), ring, shift)
    abcd = _m(a=1, b=1, c=1, d=1)
    closed = _fourfold_rhs(ring, abcd, [(_m(-1, a=1), 1), (_m(-1, b=1), 1),
                                        (_m(a=1, b=1, c=1), -1), (_m(a=1, b=1, d=1), -1)])
    return [Check("T-series", lhs, rhs), Check("symmetric form", symmetric, closed)]


def _qqpp_depth(lam: Partition, mu: Partition) -> int:
    return max(lam.conjugate.n_stat + mu.conjugate.n_stat + min(lam.size, mu.size), lam.size * mu[1])


def build_qqpp(w: Windows) -> Checks:
    """``sum_nu q^(-n(lam')-n(mu')-|nu|) t^(n(lam)+n(mu)) b_nu(t,q) Q_{lam'/nu} Q_{mu'/nu} = P_mu(t^rho) P_lam(q^-mu t^rho)``"""
    D, checks = w.degree, []
    for lam in up_to_size(w.size):
        for mu in up_to_size(w.size):
            L = _qqpp_depth(lam, mu)
            window = SeriesRing.of(q=(-L, D), t=D)
            work = window.with_windows(q=(-L, D + L))
            lhs = work.zero()
            lc, mc = lam.conjugate, mu.conjugate
            for nu in _subpartitions(lc):
                if not mc.contains(nu):
                    continue
                head = HookProduct.monomial(_m(q=-(lc.n_stat + mc.n_stat + nu.size), t=lam.n_stat + mu.n_stat))
                lhs = lhs + ((head * hook_b(nu, "t", "q")).expand(work)
                             * skew_Q_principal(lc, nu, work, None, "t", "q")
                             * skew_Q_principal(mc, nu, work, None, "t", "q"))
            shifted = _capped(eval_P(lam, rho_shifted_alphabet(mu, D + 1), work), t=D)
            rhs = principal_P_inf(mu, work) * shifted
            checks.append(Check(f"lambda={lam}, mu={mu}", lhs, rhs, window))
    return checks


def build_qqpp_finite(w: Windows) -> Checks:
    D, checks = w.degree, []
    for n in range(1, w.n + 1):
        for lam in _rows(w.size, n):
            for mu in _rows(w.size, n):
                L = _qqpp_depth(lam, mu)
                window = SeriesRing.of(q=(-L, D), t=D)
                work = window.with_windows(q=(-L, D + L))
                lc, mc = lam.conjugate, mu.conjugate
                tn = _m(t=n)
                top = qt_pochhammer_lambda(tn, lam) * qt_pochhammer_lambda(tn, mu)
                lhs = work.zero()
                for nu in _subpartitions(lam):
                    if not mu.contains(nu):
                        continue
                    head = top * _m(q=-(lc.n_stat + mc.n_stat + nu.size), t=lam.n_stat + mu.n_stat)
                    weight = head / (qt_pochhammer_lambda(tn, nu) * hook_b(nu))
                    nc = nu.conjugate
                    lhs = lhs + (weight.expand(work)
                                 * skew_Q_principal(lc, nc, work, None, "t", "q")
                                 * skew_Q_principal(mc, nc, work, None, "t", "q"))
                rhs = principal_P(mu, n, work) * eval_P(lam, rho_shifted_alphabet(mu, n), work)
                checks.append(Check(f"n={n}, lambda={lam}, mu={mu}", lhs, rhs, window))
    return checks


SPOT_POINTS = ((Fraction(1, 2), Fraction(1, 3)), (Fraction(2, 5), Fraction(3, 7)), (Fraction(3, 4), Fraction(2, 9)))


def build_binomial_theorem(w: Windows) -> Checks:
    checks = []
    for n in range(1, w.n + 1):
        for mu in _rows(w.size, n):
            for q0, t0 in SPOT_POINTS:
                record = interpolation_spot_check(mu, n, q0, t0)
                for name, ok in record.checks.items():
                    checks.append(Check(f"mu={mu}, n={n}, (q,t)=({q0},{t0}): {name}", ok, True))
    return checks


# -- basic hypergeometric sums -------------------------------------------------

def build_ikb(w: Windows) -> Checks:
    """Double sum, single sum and product of the bounded-box triple."""
    E, D = w.extra, w.degree
    L = E * E + E
    window = SeriesRing.of(q=(-L, D), t=(-L, D), u=E, v=E, w=E)
    work = window.with_windows(q=(-L, D + L), t=(-L, D + L))
    u, v, wm, qt = _m(u=1), _m(v=1), _m(w=1), _m(q=1, t=1)
    bases = ["q", "t"]

    first = work.zero()
    for mu in up_to_size(E):
        for nu in up_to_size(E):
            head = _m((-1) ** (mu.size + nu.size), u=mu.size, v=nu.size,
                      q=mu.conjugate.n_stat + nu.conjugate.n_stat, t=mu.n_stat + nu.n_stat)
            hooks = hook_c(mu) * hook_cprime(mu) * hook_c(nu) * hook_cprime(nu)
            summand = HookProduct.monomial(head) / hooks * grid_correction(wm, nu, mu.conjugate)
            first = first + summand.expand(work)
    first = first * pochhammer_inf(work, wm * qt, bases)

    second = work.zero()
    for lam in up_to_size(E):
        head = _m((-1) ** lam.size, w=lam.size, q=lam.size + lam.conjugate.n_stat, t=lam.size + lam.n_stat)
        summand = (HookProduct.monomial(head) / (hook_c(lam) * hook_cprime(lam))
                   * grid_correction(u / qt, Partition(), lam.conjugate) * grid_correction(v / qt, lam, Partition()))
        second = second + summand.expand(work)
    second = second * pochhammer_inf(work, u, bases) * pochhammer_inf(work, v, bases)

    factors = []
    for x in (u, v, wm * qt, u * v * wm):
        factors += pochhammer_factors(work, x, bases)
    for x in (u * wm * _m(q=1), v * wm * _m(t=1)):
        factors += pochhammer_factors(work, x, bases, invert=True)
    product = cap_laurent(HookProduct.from_factors(factors).expand(work))
    return [
        Check("double sum = single sum", first, second, window),
        Check("single sum = product", second, product, window),
        Check("double sum = product", first, product, window),
    ]


def build_flop(w: Windows) -> Checks:
    """``sum w^|lam| t^2n(lam) (u, v; q, t)_lam / (c c') = (uw, vw; q, t)_inf / (w, uvw; q, t)_inf`` and its grid form"""
    E, D = w.extra, w.degree
    L = 2 * E * max(E - 1, 0)
    window = SeriesRing.of(q=D, t=(-L, D), u=E, v=E, w=E)
    work = window.with_windows(t=(-L, D + L))
    u, v, wm = _m(u=1), _m(v=1), _m(w=1)
    bases = ["q", "t"]

    def head(lam: Partition) -> HookProduct:
        return HookProduct.monomial(_m(w=lam.size, t=2 * lam.n_stat)) / (hook_c(lam) * hook_cprime(lam))

    same = work.zero()
    grid = work.zero()
    checks = []
    for lam in up_to_size(E):
        pair = qt_pochhammer_lambda(u, lam) * qt_pochhammer_lambda(v, lam)
        same = same + (head(lam) * pair).expand(work)
        as_grid = qt_pochhammer_grid(u, lam) * qt_pochhammer_grid(v, lam)
        grid = grid + (head(lam) * as_grid).expand(work)
        if lam.size:
            checks.append(Check(f"grid form of (u; q, t)_{lam}", qt_pochhammer_grid(u, lam).expand(work),
                                qt_pochhammer_lambda(u, lam).expand(work), window))
    grid = grid * pochhammer_inf(work, u * _m(t=1), bases) * pochhammer_inf(work, v * _m(t=1), bases)

    def product(up, down) -> MultiSeries:
        factors = []
        for x in up:
            factors += pochhammer_factors(work, x, bases)
        for x in down:
            factors += pochhammer_factors(work, x, bases, invert=True)
        return cap_laurent(HookProduct.from_factors(factors).expand(work))

    checks.append(Check("sum = product", same, product([u * wm, v * wm], [wm, u * v * wm]), window))
    checks.append(Check("grid sum = product", grid,
                        product([u * _m(t=1), v * _m(t=1), u * wm, v * wm], [wm, u * v * wm]), window))
    return checks


def build_q_gauss(w: Windows) -> Checks:
    E, D = w.extra, w.degree
    checks = []
    b = _m(b=1)
    for n in range(1, w.n + 1):
        L = n * E
        window = SeriesRing.of(q=D, t=(-L, D), b=E)
        work = window.with_windows(t=(-L, D + n * L))
        for lam in up_to_size(w.size):
            checks.append(Check(f"R_{lam}(t^delta_{n}; b) closed form", eval_R(lam, delta_alphabet(n), b, work),
                                R_principal_hook(lam, n, b).expand(work), window))

    u, v, wm = _m(u=1), _m(v=1), _m(w=1)
    for n in range(1, w.n + 1):
        L = E * n + 2 * E * max(E - 1, 0)
        window = SeriesRing.of(q=D, t=(-L, D), u=E, v=E, w=E)
        work = window.with_windows(t=(-L, D + (n + 1) * L))
        lhs = work.zero()
        for lam in _rows(E, n):
            weight = (qt_pochhammer_lambda(u, lam) * qt_pochhammer_lambda(v, lam) * _m(w=lam.size, t=lam.n_stat)
                      / hook_cprime(lam))
            lhs = lhs + weight.expand(work) * eval_R(lam, delta_alphabet(n), u * v * wm, work)
        factors = []
        for i in range(n):
            ti = _m(t=i)
            factors += pochhammer_factors(work, u * wm * ti, ["q"])
            factors += pochhammer_factors(work, v * wm * ti, ["q"])
            factors += pochhammer_factors(work, wm * ti, ["q"], invert=True)
            factors += pochhammer_factors(work, u * v * wm * ti, ["q"], invert=True)
        rhs = HookProduct.from_factors(factors).expand(work)
        checks.append(Check(f"n={n}: bounded flop", lhs, rhs, window))

    ring = SeriesRing.of(q=D, t=D, b=E, x1=w.size, x2=w.size)
    xs = variable_alphabet("x", 2)
    for lam in _rows(w.size, 2):
        checks.append(Check(f"R_{lam}(x; 0) = P_{lam}(x)", eval_R(lam, xs, Monomial(0), ring), eval_P(lam, xs, ring)))
    for k in range(1, w.size + 1):
        x1 = xs[0]
        one_row = HookProduct.from_factors([(b * x1 * _m(q=i), -1) for i in range(k)], 1, x1 ** k)
        checks.append(Check(f"R_({k})(x1; b)", eval_R(Partition.of(k), xs[:1], b, ring), one_row.expand(ring)))
    return checks


def build_q_exponential(w: Windows) -> Checks:
    """``sum (-1)^|lam| q^n(lam') P_lam(x) / c'_lam = prod_i (x_i; q)_inf``"""
    E = w.extra
    ring = SeriesRing.of(q=w.degree, t=w.degree, x1=E, x2=E)
    xs = variable_alphabet("x", 2)
    lhs = ring.zero()
    for lam in _rows(2 * E, 2):
        weight = HookProduct.monomial(_m((-1) ** lam.size, q=lam.conjugate.n_stat)) / hook_cprime(lam)
        lhs = lhs + weight.expand(ring) * eval_P(lam, xs, ring)
    factors = []
    for x in xs:
        factors += pochhammer_factors(ring, x, ["q"])
    return [Check("x-series", lhs, HookProduct.from_factors(factors).expand(ring))]


def build_prod_log(w: Windows) -> Checks:
    """``prod (tT x_i y_j; q) / (T x_i y_j; q) = exp(sum_r T^r/r (1-t^r)/(1-q^r) p_r(x) p_r(y))``"""
    ring, xs, ys = _xy_ring(w)
    K = w.K
    graded_ring = ring.extend(T=K)
    factors = []
    for x in xs:
        for y in ys:
            factors += pochhammer_factors(graded_ring, _m(t=1, T=1) * x * y, ["q"])
            factors += pochhammer_factors(graded_ring, _m(T=1) * x * y, ["q"], invert=True)
    direct = HookProduct.from_factors(factors).expand(graded_ring)
    lhs = TGraded(ring, [direct.slice("T", k) for k in range(K + 1)])
    log = [ring.zero()]
    for r in range(1, K + 1):
        ratio = HookProduct.from_factors([(_m(t=r), 1), (_m(q=r), -1)], Fraction(1, r)).expand(ring)
        px = ring.from_monomials(x ** r for x in xs)
        py = ring.from_monomials(y ** r for y in ys)
        log.append(ratio * px * py)
    return [Check("product = exp(power sums)", lhs, TGraded(ring, log).exp())]


def build_abba(w: Windows) -> Checks:
    """``P_{lam/mu}([(a-b)/(1-t)]) = (-1)^|lam/mu| Q_{lam'/mu'}([(b-a)/(1-q)]; t, q)``"""
    S = w.size
    ring = SeriesRing.of(q=w.degree, t=w.degree, a=S, b=S)
    a, b = _m(a=1), _m(b=1)
    checks = []
    for lam in up_to_size(S):
        lc = lam.conjugate
        for mu in _subpartitions(lam):
            mc = mu.conjugate
            lhs = plethystic_eval(lam, mu, a, b, ring)
            ratio = (hook_b(lc, "t", "q") / hook_b(mc, "t", "q")).expand(ring)
            rhs = (ratio * plethystic_eval(lc, mc, b, a, ring, q="t", t="q")).scale((-1) ** (lam.size - mu.size))
            checks.append(Check(f"lambda={lam}, mu={mu}", lhs, rhs))
        checks.append(Check(f"closed form lambda={lam}", plethystic_eval(lam, Partition(), a, b, ring),
                            plethystic_P_closed(lam, a, b).expand(ring)))
    table = symbolic_table(min(S, 3))
    for lam in up_to_size(min(S, 3)):
        expected = from_sympy(plethystic_value(table.power[lam], "a", "b", "t"), ring)
        checks.append(Check(f"power-sum oracle lambda={lam}", plethystic_eval(lam, Partition(), a, b, ring), expected))
    return checks


# -- theta-ratio generalisation ---------------------------------------------------

def build_elliptic_coefficients(w: Windows) -> Checks:
    return coefficient_checks(w.p_max + 1, w.degree)


def build_elliptic_no(w: Windows) -> Checks:
    return elliptic_no_verify(w.K, w.p_max, w.degree)


# -- the registry -------------------------------------------------------------------

TWO_VARIABLES = "formal alphabets truncated to two variables x1, x2 (and y1, y2)"
ELLIPTIC_CONVENTION = "theta ratios expanded in ascending q and t, i.e. descending t1 = 1/q"


def _entries() -> List[IdentityEntry]:
    return [
        IdentityEntry("qtno", build_qtno,
                      "sum_lambda T^|lambda| prod_s (1-uq^(a+1)t^l)(1-u^-1 q^a t^(l+1)) / ((1-q^(a+1)t^l)(1-q^a t^(l+1)))"
                      " = (uqT, u^-1 tT; q, t, T)_inf / (T, qtT; q, t, T)_inf",
                      {"K": 3, "degree": 8}),
        IdentityEntry("fnm-forms", build_fnm_forms,
                      "f_{a,b} for a <= n, b <= m: definition = single sum = hook form", {"degree": 4, "n": 2, "m": 2}),
        IdentityEntry("fnm-symmetry", build_fnm_symmetry,
                      "f_{n,m}(u, 1/T) = (-uq/t)^nm T^-nm f_{n,m}(tT/(uq), T), f_{n,m} = f_{m,n}(u; t, q) and special values",
                      {"degree": 4, "n": 2, "m": 1}),
        IdentityEntry("fnm-polynomiality", build_fnm_polynomiality,
                      "f_{n,m} in Z[u, T, q, t] and f(-z/w, T; z^2, 1/w^2) in N[z, w, T]",
                      {"degree": 4, "n": 2, "m": 2}, status=EVIDENCE,
                      notes="integrality and positivity inside a finite window"),
        IdentityEntry("fnm-limit", build_fnm_limit,
                      "f_{n,m} -> (uq; q, t)_inf * qtNO sum as n, m -> infinity", {"K": 2, "degree": 3}),
        IdentityEntry("classical-no", build_classical_no,
                      "sum T^|lambda| prod_h (1 - s/h^2) = prod_k (1 - T^k)^(s-1)", {"K": 6}),
        IdentityEntry("hrv-pipeline", build_hrv_pipeline,
                      "H_lambda -> U_n -> Hbar_n at genus 0 and 1", {"n": 3}),
        IdentityEntry("hrv-g2-polynomiality", build_hrv_g2,
                      "Hbar_n(z, w) is a polynomial with nonnegative coefficients in (z, -w) at genus 2",
                      {"n": 2}, status=EVIDENCE, notes="window-bounded evidence"),
        IdentityEntry("genus0", build_genus0,
                      "sum H_lambda(q^1/2, t^-1/2) T^|lambda| = prod_{i,j>=1} 1/(1 - q^(i-1) t^j T), genus 0",
                      {"K": 4, "degree": 8}),
        IdentityEntry("hrv-g1", build_hrv_g1,
                      "sum H_lambda(q^1/2, t^-1/2) T^|lambda| = prod (1 - q^(i-1/2) t^(j-1/2) T^k)^2"
                      " / ((1 - q^(i-1) t^(j-1) T^k)(1 - q^i t^j T^k)), genus 1",
                      {"K": 3, "degree": 8}),
        IdentityEntry("tq-hook", build_tq_hook,
                      "sum T^|lambda| prod_h (1-uq^h)(1-u^-1 q^h)/(1-q^h)^2"
                      " = prod_{k,r} ((1-uq^r T^k)(1-u^-1 q^r T^k))^r / ((1-q^(r-1) T^k)(1-q^(r+1) T^k))^r",
                      {"K": 3, "degree": 8}),
        IdentityEntry("km-binomial", build_km_binomial,
                      "sum t^n(lambda) (a; q, t)_lambda P_lambda(x) / c'_lambda = prod_i (a x_i; q)_inf / (x_i; q)_inf",
                      {"degree": 4}, notes=TWO_VARIABLES),
        IdentityEntry("qt-nfactorial", build_qt_nfactorial,
                      "sum_{lambda |- n} q^n(lambda') t^n(lambda) / (c_lambda c'_lambda) = [u^n] (-u; q, t)_inf",
                      {"K": 5, "degree": 6}),
        IdentityEntry("nfactorial", build_nfactorial,
                      "sum_{lambda |- n} prod_h 1/h^2 = 1/n!", {"K": 8}),
        IdentityEntry("dp", build_dp,
                      "sum_{lambda in D_p} T^|lambda| prod (1-q^(a-p+1)t^l)(1-q^(a+p)t^(l+1)) / ((1-q^(a+1)t^l)(1-q^a t^(l+1)))"
                      " = prod_{i=1}^{p-1} (q^(i-p) T; t, T)_inf / (q^i t T; t, T)_inf",
                      {"K": 6, "degree": 8, "p_max": 3}),
        IdentityEntry("cp", build_cp,
                      "sum_{lambda p-core} T^|lambda| prod_h (1-t^(h-p))(1-t^(h+p))/(1-t^h)^2"
                      " = (T; T)_inf^(p-1) prod_{i<j} (t^(j-i) T, t^(i-j) T; T)_inf",
                      {"K": 6, "degree": 8, "p_max": 3}),
        IdentityEntry("jacobi-triple", build_jacobi,
                      "sum_{n>=1} (-1)^n T^C(n,2) (t^n - t^(1-n))/(1-t) = (T, tT, T/t; T)_inf", {"K": 8, "degree": 8}),
        IdentityEntry("hook-power-schur", build_hook_power_schur,
                      "prod_h (1-q^(h+p))(1-q^(h-p))/(1-q^h)^2 = (-1)^|lambda| q^(-l(lambda) C(p,2)) s_mu(1, q, ..., q^(p-1))",
                      {"p_max": 5, "size": 4}),
        IdentityEntry("sl-dimension", build_sl_dimension,
                      "prod_h (p^2/h^2 - 1) = dim of the sl_p module with highest weight mu", {"p_max": 5, "size": 4}),
        IdentityEntry("cauchy", build_cauchy,
                      "sum P_lambda(x) Q_lambda(y) = prod (t x_i y_j; q)_inf / (x_i y_j; q)_inf",
                      {"degree": 4}, notes=TWO_VARIABLES),
        IdentityEntry("cauchy-skew", build_cauchy_skew,
                      "sum_lambda P_{lambda/nu}(x) Q_{lambda/tau}(y) = Pi(x, y) sum_lambda P_{tau/lambda}(x) Q_{nu/lambda}(y)",
                      {"degree": 3}, notes=TWO_VARIABLES),
        IdentityEntry("cauchy-dual", build_cauchy_dual,
                      "sum T^|mu| P_mu(x; q, t) P_mu'(y; t, q) = prod (1 + T x_i y_j)",
                      {"degree": 4}, notes=TWO_VARIABLES),
        IdentityEntry("doublesum", build_doublesum,
                      "sum T^|lambda| P_{lambda/nu}(x) Q_{lambda/nu}(y) = 1/(T; T)_inf prod (tT x_i y_j; q, T)_inf / (T x_i y_j; q, T)_inf",
                      {"K": 2, "degree": 3}, notes=TWO_VARIABLES),
        IdentityEntry("fourfold", build_fourfold,
                      "sum T^|lambda| b_nu(q,t) b_tau(t,q) Q_{lambda/nu}(a t^rho) Q_{lambda'/tau}(b q^rho; t,q)"
                      " Q_{mu/nu}(c t^rho) Q_{mu'/tau}(d q^rho; t,q) = (-abT, -cd; q,t,T)_inf / ((T; T)_inf (acT, bdT; q,t,T)_inf)",
                      {"K": 2, "degree": 3}),
        IdentityEntry("qqpp", build_qqpp,
                      "sum_nu q^(-n(lambda')-n(mu')-|nu|) t^(n(lambda)+n(mu)) b_nu(t,q) Q_{lambda'/nu}(q^rho; t,q) Q_{mu'/nu}(q^rho; t,q)"
                      " = P_mu(t^rho) P_lambda(q^-mu t^rho)",
                      {"degree": 4, "size": 3}),
        IdentityEntry("qqpp-finite", build_qqpp_finite,
                      "finite-n analogue with (t^n; q, t) weights = P_mu(t^rho_n) P_lambda(q^-mu t^rho_n)",
                      {"degree": 4, "size": 3, "n": 3}),
        IdentityEntry("binom-theorem", build_binomial_theorem,
                      "interpolation polynomials: vanishing, normalisation, stability, top degree, binomial theorem",
                      {"size": 2, "n": 2}),
        IdentityEntry("ikb", build_ikb,
                      "double sum over (mu, nu) = single sum over lambda"
                      " = (u, v, wqt, uvw; q, t)_inf / (uwq, vwt; q, t)_inf",
                      {"degree": 3, "extra": 2}),
        IdentityEntry("flop", build_flop,
                      "sum w^|lambda| t^2n(lambda) (u, v; q, t)_lambda / (c_lambda c'_lambda) = (uw, vw; q, t)_inf / (w, uvw; q, t)_inf",
                      {"degree": 4, "extra": 2}),
        IdentityEntry("q-gauss", build_q_gauss,
                      "R_lambda(t^delta_n; b) closed form and the bounded flop"
                      " sum w^|lambda| t^2n(lambda) (t^n, u, v)_lambda / ((uvw t^(n-1))_lambda c c')"
                      " = prod_i (uw t^(i-1), vw t^(i-1); q)_inf / (w t^(i-1), uvw t^(i-1); q)_inf",
                      {"degree": 3, "extra": 2, "n": 2, "size": 3}),
        IdentityEntry("q-exponential", build_q_exponential,
                      "sum (-1)^|lambda| q^n(lambda') P_lambda(x) / c'_lambda = prod_i (x_i; q)_inf",
                      {"degree": 4}, notes=TWO_VARIABLES),
        IdentityEntry("prod-log", build_prod_log,
                      "prod (tT x_i y_j; q)_inf / (T x_i y_j; q)_inf = exp(sum_r T^r/r (1-t^r)/(1-q^r) p_r(x) p_r(y))",
                      {"K": 2, "degree": 4}, notes=TWO_VARIABLES),
        IdentityEntry("abba", build_abba,
                      "P_{lambda/mu}([(a-b)/(1-t)]; q, t) = (-1)^|lambda/mu| Q_{lambda'/mu'}([(b-a)/(1-q)]; t, q)",
                      {"degree": 4, "size": 3},
                      notes="sign (-1)^(|lambda| - |mu|), confirmed against the power-sum oracle"),
        IdentityEntry("elliptic-coefficients", build_elliptic_coefficients,
                      "C, D and c tables of the theta-ratio generating functions",
                      {"p_max": 1, "degree": 4}, notes=ELLIPTIC_CONVENTION),
        IdentityEntry("elliptic-no", build_elliptic_no,
                      "sum T^|lambda| prod theta(u x1) theta(x2/u) / (theta(x1) theta(x2)) = product over C",
                      {"K": 2, "p_max": 1, "degree": 6}, notes=ELLIPTIC_CONVENTION),
    ]


_REGISTRY: Optional[Dict[str, IdentityEntry]] = None


def registry() -> Dict[str, IdentityEntry]:
    """Every known identity, keyed by id, in listing order"""
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = {e.id: e for e in _entries()}
        logger.debug("registry loaded with %d entries", len(_REGISTRY))
    return _REGISTRY


def get_entry(identity_id: str) -> IdentityEntry:
    entries = registry()
    if identity_id not in entries:
        raise ConfigError(f"unknown identity id {identity_id}")
    return entries[identity_id]

"""Exact truncated multivariate Laurent series over the rationals.

A series lives in a ``SeriesRing``: an ordered tuple of per-variable exponent
windows. Besides its stored terms every ``MultiSeries`` carries, per variable,

* ``prec``: certified upper precision. A stored coefficient whose exponent
  vector is componentwise <= ``prec`` is exact. ``math.inf`` means nothing
  was ever truncated in that direction.
* ``val``: a lower bound on the exponents of the exact object represented.

Products propagate both, so truncation in a Laurent direction is tracked
instead of silently corrupting low-order coefficients, and every comparison
can ``require()`` certification over the window it reads.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from operator import ge, le
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ..core.errors import DomainError, NonInvertibleError, StructureError, WindowError

logger = logging.getLogger(__name__)

INF = math.inf

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

VARIABLE_ORDER = (
    "q", "t", "u", "T", "p", "Z", "W", "a", "b", "c", "d", "v", "z", "w", "s", "t1", "t2",
)


def variable_rank(name: str) -> Tuple:
    """Sort key putting variable names in canonical print order"""
    if name in VARIABLE_ORDER:
        return (0, VARIABLE_ORDER.index(name), "")
    if name[:1] in ("x", "y") and name[1:].isdigit():
        return (1, "xy".index(name[0]), int(name[1:]))
    return (2, 0, name)


def normalize(c) -> Scalar:
    """Return ``c`` as an int when it is integral, else as a reduced Fraction"""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def format_scalar(c: Scalar) -> str:
    c = normalize(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def _power_text(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def format_terms(entries: Iterable[Tuple[Mapping[str, int], Scalar]], grade: Optional[str] = None) -> str:
    """Render (powers, coefficient) pairs in the canonical text form.

    Terms are ordered by grade degree, then by the sum of absolute
    exponents, then by the exponent tuple in canonical variable order,
    largest first.
    """
    entries = [(dict(p), c) for p, c in entries if c]
    if not entries:
        return "0"
    names = sorted({n for p, _ in entries for n in p}, key=variable_rank)

    def key(entry):
        powers = entry[0]
        return (
            powers.get(grade, 0) if grade else 0,
            sum(abs(e) for e in powers.values()),
            tuple(-powers.get(n, 0) for n in names),
        )

    pieces = []
    for powers, coef in sorted(entries, key=key):
        body = "*".join(_power_text(n, powers[n]) for n in names if powers.get(n))
        coef = normalize(coef)
        negative = coef < 0
        magnitude = -coef if negative else coef
        if not body:
            text = format_scalar(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{format_scalar(magnitude)}*{body}"
        if not pieces:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    return "".join(pieces)


@dataclass(frozen=True)
class Monomial:
    """A rational multiple of a product of named variable powers"""

    coef: Scalar = 1
    powers: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        merged: Dict[str, int] = {}
        for name, e in self.powers:
            merged[name] = merged.get(name, 0) + int(e)
        cleaned = tuple(
            sorted(((n, e) for n, e in merged.items() if e), key=lambda kv: variable_rank(kv[0]))
        )
        object.__setattr__(self, "powers", cleaned)
        object.__setattr__(self, "coef", normalize(self.coef))

    @classmethod
    def of(cls, coef: Scalar = 1, **powers: int) -> "Monomial":
        return cls(coef, tuple(powers.items()))

    @classmethod
    def from_dict(cls, powers: Mapping[str, int], coef: Scalar = 1) -> "Monomial":
        return cls(coef, tuple(powers.items()))

    def exponent(self, name: str) -> int:
        return dict(self.powers).get(name, 0)

    def as_dict(self) -> Dict[str, int]:
        return dict(self.powers)

    @property
    def is_constant(self) -> bool:
        return not self.powers

    def drop(self, *names: str) -> "Monomial":
        return Monomial(self.coef, tuple((n, e) for n, e in self.powers if n not in names))

    def __mul__(self, other) -> "Monomial":
        if isinstance(other, Monomial):
            return Monomial(self.coef * other.coef, self.powers + other.powers)
        return Monomial(self.coef * other, self.powers)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Monomial":
        coef = Fraction(self.coef) ** k
        return Monomial(coef, tuple((n, e * k) for n, e in self.powers))

    def inverse(self) -> "Monomial":
        if self.coef == 0:
            raise DomainError("zero monomial has no inverse")
        return self ** -1

    def __truediv__(self, other) -> "Monomial":
        if isinstance(other, Monomial):
            return self * other.inverse()
        return Monomial(Fraction(self.coef) / other, self.powers)

    def __neg__(self) -> "Monomial":
        return Monomial(-self.coef, self.powers)

    def substitute(self, images: Mapping[str, "Monomial"]) -> "Monomial":
        """Replace variables by monomials"""
        out = Monomial(self.coef)
        for name, e in self.powers:
            image = images.get(name)
            out = out * (image ** e if image is not None else Monomial(1, ((name, e),)))
        return out

    def exps_in(self, ring: "SeriesRing") -> Exponent:
        powers = self.as_dict()
        missing = set(powers) - set(ring.names)
        if missing:
            raise StructureError(f"variables {sorted(missing)} are not in the ring {ring.names}")
        return tuple(powers.get(n, 0) for n in ring.names)

    def to_text(self) -> str:
        return format_terms([(self.as_dict(), self.coef)])

    def __str__(self) -> str:
        return self.to_text()


def mono(coef: Scalar = 1, **powers: int) -> Monomial:
    """Shorthand for ``Monomial.of``"""
    return Monomial.of(coef, **powers)


def as_monomial(x: Union[Monomial, str, int, Fraction]) -> Monomial:
    if isinstance(x, Monomial):
        return x
    if isinstance(x, str):
        return Monomial(1, ((x, 1),))
    return Monomial(x)


@dataclass(frozen=True)
class VarSpec:
    name: str
    min_exp: int = 0
    max_exp: int = 0

    def __post_init__(self):
        if self.min_exp > self.max_exp:
            raise DomainError(f"empty window [{self.min_exp}, {self.max_exp}] for {self.name}")

    @property
    def laurent(self) -> bool:
        return self.min_exp < 0


@dataclass(frozen=True)
class SeriesRing:
    """Ordered variables with per-variable exponent windows"""

    specs: Tuple[VarSpec, ...]

    def __post_init__(self):
        names = [s.name for s in self.specs]
        if len(set(names)) != len(names):
            raise StructureError(f"duplicate variable in {names}")

    @classmethod
    def of(cls, **windows) -> "SeriesRing":
        """``SeriesRing.of(q=8, u=(-3, 3))``: an int is an ordinary window [0, hi]"""
        specs = []
        for name, window in windows.items():
            lo, hi = (0, window) if isinstance(window, int) else window
            specs.append(VarSpec(name, lo, hi))
        return cls(tuple(specs))

    @cached_property
    def names(self) -> Tuple[str, ...]:
        return tuple(s.name for s in self.specs)

    @cached_property
    def lo(self) -> Exponent:
        return tuple(s.min_exp for s in self.specs)

    @cached_property
    def hi(self) -> Exponent:
        return tuple(s.max_exp for s in self.specs)

    @cached_property
    def ordinary(self) -> Tuple[bool, ...]:
        return tuple(not s.laurent for s in self.specs)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise StructureError(f"variable {name} is not in the ring {self.names}") from None

    def window(self, name: str) -> Tuple[int, int]:
        spec = self.specs[self.index(name)]
        return spec.min_exp, spec.max_exp

    def windows(self) -> Dict[str, List[int]]:
        return {s.name: [s.min_exp, s.max_exp] for s in self.specs}

    def with_windows(self, **windows) -> "SeriesRing":
        specs = []
        for spec in self.specs:
            if spec.name in windows:
                w = windows[spec.name]
                lo, hi = (0, w) if isinstance(w, int) else w
                spec = VarSpec(spec.name, lo, hi)
            specs.append(spec)
        return SeriesRing(tuple(specs))

    def extend(self, **windows) -> "SeriesRing":
        return SeriesRing(self.specs + SeriesRing.of(**windows).specs)

    def without(self, *names: str) -> "SeriesRing":
        return SeriesRing(tuple(s for s in self.specs if s.name not in names))

    def union(self, other: "SeriesRing") -> "SeriesRing":
        """Smallest ring containing both windows, in this ring's order"""
        specs = []
        for spec in self.specs:
            if spec.name in other.names:
                lo, hi = other.window(spec.name)
                spec = VarSpec(spec.name, min(lo, spec.min_exp), max(hi, spec.max_exp))
            specs.append(spec)
        specs.extend(s for s in other.specs if s.name not in self.names)
        return SeriesRing(tuple(specs))

    def zero(self) -> "MultiSeries":
        return MultiSeries(self, {}, None, (INF,) * len(self.specs))

    def const(self, c: Scalar) -> "MultiSeries":
        return self.poly({(0,) * len(self.specs): c})

    def one(self) -> "MultiSeries":
        return self.const(1)

    def gen(self, name: str) -> "MultiSeries":
        return self.monomial(Monomial(1, ((name, 1),)))

    def monomial(self, m: Monomial) -> "MultiSeries":
        return self.poly({m.exps_in(self): m.coef})

    def poly(self, terms: Mapping[Exponent, Scalar]) -> "MultiSeries":
        """Exact polynomial, truncated to the window"""
        return _collect(self, terms.items(), (INF,) * len(self.specs))

    def from_monomials(self, monomials: Iterable[Monomial]) -> "MultiSeries":
        items = [(m.exps_in(self), m.coef) for m in monomials]
        return _collect(self, items, (INF,) * len(self.specs))


def _min_exponents(exps: Iterable[Exponent], n: int) -> List[float]:
    out = [INF] * n
    for e in exps:
        for i, x in enumerate(e):
            if x < out[i]:
                out[i] = x
    return out


def _collect(ring: SeriesRing, items, prec, val=None, strict: bool = True) -> "MultiSeries":
    """Build a series from (exponent, coefficient) items, truncating to the window.

    Items above the window lower ``prec`` in the offending variables. Items
    below the window raise ``WindowError`` when certified and ``strict``.
    """
    lo, hi = ring.lo, ring.hi
    prec = list(prec)
    kept: Dict[Exponent, Scalar] = {}
    low: Dict[Exponent, Scalar] = {}
    seen: List[Exponent] = []
    for e, c in items:
        if not c:
            continue
        if val is None:
            seen.append(e)
        if all(map(le, e, hi)):
            bucket = kept if all(map(ge, e, lo)) else low
            bucket[e] = bucket.get(e, 0) + c
        else:
            for i, x in enumerate(e):
                if x > hi[i] and prec[i] > hi[i]:
                    prec[i] = hi[i]
    if strict:
        for e, c in low.items():
            if c and all(x <= p for x, p in zip(e, prec)):
                raise WindowError(
                    f"certified term {format_terms([(dict(zip(ring.names, e)), c)])} "
                    f"falls below the window {ring.windows()}"
                )
    if val is None:
        val = _min_exponents(seen, len(lo))
    return MultiSeries(ring, {e: normalize(c) for e, c in kept.items() if c}, prec, val)


def _plus(p: float, v: float) -> float:
    if p == INF:
        return INF
    return p + v


class MultiSeries:
    """Sparse truncated series with per-variable precision bookkeeping"""

    __slots__ = ("ring", "terms", "prec", "val")

    def __init__(self, ring: SeriesRing, terms: Optional[Mapping[Exponent, Scalar]] = None,
                 prec: Optional[Sequence[float]] = None, val: Optional[Sequence[float]] = None):
        n = len(ring.specs)
        self.ring = ring
        self.terms: Dict[Exponent, Scalar] = {e: c for e, c in (terms or {}).items() if c}
        self.prec: Tuple[float, ...] = tuple(prec) if prec is not None else (INF,) * n
        if val is None:
            val = _min_exponents(self.terms, n)
        self.val: Tuple[float, ...] = tuple(val)

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_exact_zero(self) -> bool:
        return not self.terms and all(p == INF for p in self.prec)

    def is_complete(self) -> bool:
        return all(p == INF for p in self.prec)

    def certified(self, e: Exponent) -> bool:
        return all(x <= p for x, p in zip(e, self.prec))

    def coefficient(self, exps: Union[Monomial, Exponent, Mapping[str, int]]) -> Scalar:
        if isinstance(exps, Monomial):
            exps = exps.exps_in(self.ring)
        elif isinstance(exps, Mapping):
            exps = Monomial.from_dict(exps).exps_in(self.ring)
        return self.terms.get(tuple(exps), 0)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * len(self.ring.specs), 0)

    def monomials(self) -> Iterator[Monomial]:
        for e, c in self.terms.items():
            yield Monomial(c, tuple(zip(self.ring.names, e)))

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Evaluate the stored terms at a rational point"""
        values = [Fraction(point[n]) for n in self.ring.names]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for x, k in zip(values, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def require(self, window: Optional[SeriesRing] = None, what: str = "series") -> "MultiSeries":
        """Raise ``WindowError`` unless certified over ``window``"""
        window = window or self.ring
        for spec in window.specs:
            if spec.name not in self.ring.names:
                continue
            p = self.prec[self.ring.index(spec.name)]
            if p < spec.max_exp:
                raise WindowError(
                    f"{what} is certified only up to {spec.name}^{p}, "
                    f"but the window needs {spec.name}^{spec.max_exp}"
                )
        return self

    # -- ring changes ---------------------------------------------------
    def _check(self, other: "MultiSeries") -> None:
        if self.ring != other.ring:
            raise StructureError(f"mismatched rings {self.ring.names} and {other.ring.names}")

    def to_ring(self, ring: SeriesRing, strict: bool = True) -> "MultiSeries":
        """Move into ``ring``: same or more variables, any windows"""
        if ring == self.ring:
            return self
        missing = [n for n in self.ring.names if n not in ring.names]
        if missing:
            raise StructureError(f"variables {missing} are not in the ring {ring.names}")
        where = [ring.index(n) for n in self.ring.names]
        n = len(ring.specs)
        prec = [INF] * n
        val: List[float] = [0] * n
        for i, j in enumerate(where):
            prec[j] = self.prec[i]
            val[j] = self.val[i]
        if not self.terms and all(v == INF for v in self.val):
            return ring.zero()

        def moved():
            for e, c in self.terms.items():
                out = [0] * n
                for i, j in enumerate(where):
                    out[j] = e[i]
                yield tuple(out), c

        return _collect(ring, moved(), prec, val, strict=strict)

    def clip(self, ring: SeriesRing) -> "MultiSeries":
        """Move into ``ring`` dropping anything below it; for comparisons only"""
        return self.to_ring(ring, strict=False)

    def slice(self, name: str, k: int) -> "MultiSeries":
        """Coefficient of ``name^k`` as a series in the remaining variables"""
        i = self.ring.index(name)
        if self.prec[i] < k:
            raise WindowError(f"{name}^{k} is beyond the certified precision {self.prec[i]}")
        ring = self.ring.without(name)
        terms = {e[:i] + e[i + 1:]: c for e, c in self.terms.items() if e[i] == k}
        prec = self.prec[:i] + self.prec[i + 1:]
        val = self.val[:i] + self.val[i + 1:]
        return MultiSeries(ring, terms, prec, val)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other) -> "MultiSeries":
        if not isinstance(other, MultiSeries):
            other = self.ring.const(other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        prec = tuple(map(min, self.prec, other.prec))
        val = tuple(map(min, self.val, other.val))
        return MultiSeries(self.ring, {e: normalize(c) for e, c in terms.items() if c}, prec, val)

    __radd__ = __add__

    def __neg__(self) -> "MultiSeries":
        return MultiSeries(self.ring, {e: -c for e, c in self.terms.items()}, self.prec, self.val)

    def __sub__(self, other) -> "MultiSeries":
        return self + (-other)

    def __rsub__(self, other) -> "MultiSeries":
        return (-self) + other

    def scale(self, c: Scalar) -> "MultiSeries":
        c = normalize(c)
        if c == 0:
            return self.ring.zero()
        return MultiSeries(self.ring, {e: normalize(x * c) for e, x in self.terms.items()},
                           self.prec, self.val)

    def __truediv__(self, c: Scalar) -> "MultiSeries":
        return self.scale(1 / Fraction(c))

    def __mul__(self, other) -> "MultiSeries":
        if isinstance(other, MultiSeries):
            return self._mul(other)
        if isinstance(other, Monomial):
            return self.shift(other)
        return self.scale(other)

    def __rmul__(self, other) -> "MultiSeries":
        return self.__mul__(other)

    def _mul(self, other: "MultiSeries") -> "MultiSeries":
        self._check(other)
        ring = self.ring
        if self.is_exact_zero() or other.is_exact_zero():
            return ring.zero()
        lo, hi = ring.lo, ring.hi
        n = len(lo)
        out: Dict[Exponent, Scalar] = {}
        low: Dict[Exponent, Scalar] = {}
        over = [False] * n
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if all(map(le, e, hi)):
                    bucket = out if all(map(ge, e, lo)) else low
                    bucket[e] = bucket.get(e, 0) + ca * cb
                else:
                    for i in range(n):
                        if e[i] > hi[i]:
                            over[i] = True
        prec = [
            min(_plus(pa, vb), _plus(pb, va))
            for pa, pb, va, vb in zip(self.prec, other.prec, self.val, other.val)
        ]
        for i in range(n):
            if over[i] and prec[i] > hi[i]:
                prec[i] = hi[i]
        for e, c in low.items():
            if c and all(x <= p for x, p in zip(e, prec)):
                raise WindowError(
                    f"certified product term {format_terms([(dict(zip(ring.names, e)), c)])} "
                    f"falls below the window {ring.windows()}"
                )
        val = tuple(a + b for a, b in zip(self.val, other.val))
        return MultiSeries(ring, {e: normalize(c) for e, c in out.items() if c}, prec, val)

    def __pow__(self, k: int) -> "MultiSeries":
        if k < 0:
            return invert_unit(self) ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, m: Monomial) -> "MultiSeries":
        """Multiply by an exact monomial"""
        if m.coef == 0:
            return self.ring.zero()
        d = m.exps_in(self.ring)
        items = ((tuple(x + y for x, y in zip(e, d)), c * m.coef) for e, c in self.terms.items())
        prec = [_plus(p, x) for p, x in zip(self.prec, d)]
        val = [v + x for v, x in zip(self.val, d)]
        return _collect(self.ring, items, prec, val)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiSeries):
            return self.ring.names == other.ring.names and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * len(self.ring.specs): other} if other else {})
        return NotImplemented

    __hash__ = None

    # -- substitution ---------------------------------------------------
    def substitute(self, images: Mapping[str, Union[Monomial, str]],
                   ring: Optional[SeriesRing] = None) -> "MultiSeries":
        """Replace variables by signed monomials, certifying the result.

        A truncated source variable ``v`` stays controlled when some target
        variable grows with ``v`` while every other contribution to it is
        bounded on the relevant side; otherwise ``WindowError``.
        """
        target = ring or self.ring
        if self.is_exact_zero():
            return target.zero()
        src = self.ring.names
        image = {}
        for name in src:
            m = as_monomial(images[name]) if name in images else Monomial(1, ((name, 1),))
            image[name] = (m.exps_in(target), m.coef)
        columns = [image[name][0] for name in src]
        coefs = [Fraction(image[name][1]) for name in src]
        nt = len(target.specs)
        upper = [p if p != INF else h for p, h in zip(self.prec, self.ring.hi)]

        def contribution(w: int, skip: int) -> float:
            total = 0.0
            for v, col in enumerate(columns):
                a = col[w]
                if v == skip or not a:
                    continue
                total += a * self.val[v] if a > 0 else a * upper[v]
            return total

        prec = [INF] * nt
        for v, p in enumerate(self.prec):
            if p == INF:
                continue
            best = None
            for w in range(nt):
                a = columns[v][w]
                if a > 0:
                    bound = a * p + contribution(w, v)
                    if best is None or bound > best[1]:
                        best = (w, bound)
            if best is None:
                raise WindowError(
                    f"cannot certify substituting the truncated variable {src[v]}"
                )
            w, bound = best
            prec[w] = min(prec[w], bound)
        val = [contribution(w, -1) for w in range(nt)]

        def mapped():
            for e, c in self.terms.items():
                out = [0] * nt
                coef = Fraction(c)
                for v, k in enumerate(e):
                    if not k:
                        continue
                    col = columns[v]
                    for w in range(nt):
                        out[w] += k * col[w]
                    if coefs[v] != 1:
                        if coefs[v] == 0 and k < 0:
                            raise DomainError("substituting zero into a negative power")
                        coef *= coefs[v] ** k
                yield tuple(out), coef

        return _collect(target, mapped(), prec, val)

    def adams(self, r: int) -> "MultiSeries":
        """Replace every variable ``v`` by ``v^r``"""
        return self.substitute({n: Monomial(1, ((n, r),)) for n in self.ring.names})

    # -- output ---------------------------------------------------------
    def to_text(self) -> str:
        names = self.ring.names
        return format_terms((dict(zip(names, e)), c) for e, c in self.terms.items())

    def __repr__(self) -> str:
        return f"MultiSeries({self.to_text()})"


def series_arith(op: str, a: MultiSeries, b: Union[MultiSeries, Scalar]) -> MultiSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scalar_mul":
        return a.scale(b)
    raise DomainError(f"unknown operation {op}")


def substitute(f: MultiSeries, var: str, target: Monomial,
               ring: Optional[SeriesRing] = None) -> MultiSeries:
    return f.substitute({var: target}, ring)


def invert_unit(a: MultiSeries) -> MultiSeries:
    """Reciprocal of ``monomial * (c + higher terms)`` within the window"""
    ring = a.ring
    if not a.terms or any(v in (INF, -INF) for v in a.val):
        raise NonInvertibleError("non-invertible series: no leading monomial")
    m = tuple(int(v) for v in a.val)
    c = a.terms.get(m)
    if not c or not a.certified(m):
        raise NonInvertibleError(
            f"non-invertible series: no monomial times unit factorization of {a.to_text()}"
        )
    hi = ring.hi
    n = len(hi)
    above = [i for i in range(n) if hi[i] + m[i] < 0]
    if above:
        prec = [hi[i] if i in above else INF for i in range(n)]
        return MultiSeries(ring, {}, prec, [-x for x in m])
    work = SeriesRing(tuple(VarSpec(s.name, 0, s.max_exp + x) for s, x in zip(ring.specs, m)))
    unit = _collect(
        work,
        ((tuple(x - y for x, y in zip(e, m)), cc) for e, cc in a.terms.items()),
        [_plus(p, -x) for p, x in zip(a.prec, m)],
        [0] * n,
    )
    h = (unit - c).scale(Fraction(1) / c)
    total = work.one()
    power = work.one()
    while True:
        power = -(power * h)
        total = total + power
        if power.is_zero():
            break
    total = total.scale(Fraction(1) / c)
    return _collect(
        ring,
        ((tuple(x - y for x, y in zip(e, m)), cc) for e, cc in total.terms.items()),
        [_plus(p, -x) for p, x in zip(total.prec, m)],
        [-x for x in m],
    )


def _check_small(f: MultiSeries, what: str) -> None:
    if any(v < 0 for v in f.val):
        raise DomainError(f"{what} needs a series with nonnegative exponents")


def series_exp(f: MultiSeries) -> MultiSeries:
    _check_small(f, "exp")
    zero = (0,) * len(f.ring.specs)
    if f.terms.get(zero) or not f.certified(zero):
        raise DomainError("exp needs a zero constant term")
    result = f.ring.one()
    power = f.ring.one()
    k = 1
    while True:
        power = (power * f).scale(Fraction(1, k))
        result = result + power
        if power.is_zero():
            return result
        k += 1


def series_log(f: MultiSeries) -> MultiSeries:
    zero = (0,) * len(f.ring.specs)
    if f.terms.get(zero) != 1 or not f.certified(zero):
        raise DomainError("log needs constant term 1")
    g = f - 1
    _check_small(g, "log")
    result = f.ring.zero()
    power = f.ring.one()
    k = 1
    while True:
        power = power * g
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
        if power.is_zero():
            return result
        k += 1


def series_exp_log(mode: str, f: MultiSeries) -> MultiSeries:
    if mode == "exp":
        return series_exp(f)
    if mode == "log":
        return series_log(f)
    raise DomainError(f"unknown mode {mode}")


# -- factored products ------------------------------------------------------

def _expandable(e: Exponent, ordinary: Sequence[bool]) -> bool:
    if any(x > 0 and o for x, o in zip(e, ordinary)):
        return True
    return all(x >= 0 for x in e) and any(x > 0 for x in e)


def _geometric_terms(e: Exponent, room: Sequence[float], ordinary: Sequence[bool]) -> Optional[int]:
    """Largest j with j*e inside ``room`` along ordinary directions; None if unbounded there"""
    bounds = [math.floor(r / x) for x, r, o in zip(e, room, ordinary) if o and x > 0]
    return min(bounds) if bounds else None


def expand_factored(ring: SeriesRing, factors: Iterable[Tuple[Monomial, int]],
                    coef: Scalar = 1, prefactor: Optional[Monomial] = None) -> MultiSeries:
    """Expand ``coef * prefactor * prod (1 - y)^k`` into ``ring``.

    Each factor is oriented so that it has a series expansion, the unit part
    is computed in a relative window wide enough to absorb negative
    valuations, and the result is shifted back by the prefactor.
    """
    n = len(ring.specs)
    names, hi, ordinary = ring.names, ring.hi, ring.ordinary
    coef = Fraction(coef)
    pref = [0] * n
    if prefactor is not None:
        coef *= prefactor.coef
        pref = list(prefactor.exps_in(ring))
    units: List[Tuple[Exponent, Fraction, int]] = []
    for y, k in factors:
        if not k or y.coef == 0:
            continue
        e, c = y.exps_in(ring), Fraction(y.coef)
        if not any(e):
            value = 1 - c
            if value == 0:
                if k > 0:
                    return ring.zero()
                raise DomainError("division by a vanishing factor")
            coef *= value ** k
            continue
        if not _expandable(e, ordinary):
            inv = tuple(-x for x in e)
            if not _expandable(inv, ordinary):
                if k > 0:
                    # a polynomial factor needs no orientation
                    units.append((e, c, k))
                    continue
                raise DomainError(f"factor 1 - ({y.to_text()}) has no expansion in {ring.windows()}")
            coef *= (-c) ** k
            pref = [p + k * x for p, x in zip(pref, e)]
            e, c = inv, 1 / c
        units.append((e, c, k))
    if coef == 0:
        return ring.zero()
    room = [h - p for h, p in zip(hi, pref)]

    def valuations(margin):
        vals = []
        for e, c, k in units:
            if k > 0:
                vals.append([k * min(0, x) for x in e])
                continue
            jmax = _geometric_terms(e, [r + m for r, m in zip(room, margin)], ordinary)
            if jmax is None:
                vals.append([0] * n)
            else:
                vals.append([max(jmax, 0) * min(0, x) for x in e])
        return vals

    margin = [0] * n
    for _ in range(16):
        vals = valuations(margin)
        fresh = [-sum(min(0, v[i]) for v in vals) for i in range(n)]
        if fresh == margin:
            break
        margin = [max(a, b) for a, b in zip(margin, fresh)]
    else:
        raise DomainError("factored product does not converge in this window")
    low = [sum(v[i] for v in vals) for i in range(n)]
    prec = [INF] * n
    true_val = [p + x for p, x in zip(pref, low)]
    for i in range(n):
        if room[i] < low[i]:
            prec[i] = hi[i]
    if any(p != INF for p in prec):
        return MultiSeries(ring, {}, prec, true_val)

    kept = []
    for (e, c, k), v in zip(units, vals):
        pruned = False
        for i, x in enumerate(e):
            if x > 0 and x + low[i] - v[i] > room[i]:
                prec[i] = min(prec[i], hi[i])
                pruned = True
                break
        if not pruned:
            kept.append((e, c, k))
    work = SeriesRing(tuple(
        VarSpec(name, min(0, low[i]), room[i] + margin[i]) for i, name in enumerate(names)
    ))
    acc = work.const(coef)
    for e, c, k in sorted(kept, key=lambda f: f[2]):
        acc = acc * _factor_series(work, e, c, k)
    result = _collect(
        ring,
        ((tuple(x + p for x, p in zip(ex, pref)), cc) for ex, cc in acc.terms.items()),
        [min(_plus(p, x), q) for p, x, q in zip(acc.prec, pref, prec)],
        [v + p for v, p in zip(acc.val, pref)],
    )
    return result


def _factor_series(work: SeriesRing, e: Exponent, c: Fraction, k: int) -> MultiSeries:
    n = len(e)
    if k > 0:
        items = [(tuple(j * x for x in e), comb(k, j) * (-c) ** j) for j in range(k + 1)]
        return _collect(work, items, (INF,) * n)
    hi, lo = work.hi, work.lo
    bounds = [math.floor(h / x) for x, h in zip(e, hi) if x > 0]
    bounds += [math.floor(l_ / x) for x, l_ in zip(e, lo) if x < 0]
    jmax = min(bounds)
    depth = -k
    terms = {}
    for j in range(jmax + 1):
        terms[tuple(j * x for x in e)] = normalize(comb(j + depth - 1, j) * c ** j)
    prec = [INF] * n
    for i, x in enumerate(e):
        if x > 0 and (jmax + 1) * x > hi[i]:
            prec[i] = hi[i]
    val = [0 if x >= 0 else jmax * x for x in e]
    return MultiSeries(work, terms, prec, val)


def pochhammer_factors(ring: SeriesRing, x: Union[Monomial, str], bases: Sequence[Union[Monomial, str]],
                       invert: bool = False, slack: int = 0) -> List[Tuple[Monomial, int]]:
    """The factors ``(1 - x b^i)^(+-1)`` of ``(x; bases)_inf`` that can reach the window.

    Enumeration stops once some exponent passes ``hi`` (``hi + slack`` for
    Laurent variables, where other factors may pull the product back down).
    """
    x = as_monomial(x)
    bases = [as_monomial(b) for b in bases]
    if x.coef == 0:
        return []
    if x.is_constant and x.coef == 1:
        raise DomainError("divergent pochhammer: the first factor is 1 - 1")
    bound = [h if o else h + slack for h, o in zip(ring.hi, ring.ordinary)]
    for b in bases:
        e = b.exps_in(ring)
        if any(v < 0 for v in e) or not any(e):
            raise DomainError(f"pochhammer base {b.to_text()} must grow in a ring variable")
    factors: List[Tuple[Monomial, int]] = []
    sign = -1 if invert else 1

    def beyond(m: Monomial) -> bool:
        return any(v > h for v, h in zip(m.exps_in(ring), bound))

    def walk(current: Monomial, index: int) -> None:
        if beyond(current):
            return
        if index == len(bases):
            factors.append((current, sign))
            return
        step = current
        while True:
            before = len(factors)
            walk(step, index + 1)
            if beyond(step) or len(factors) == before:
                return
            step = step * bases[index]

    walk(x, 0)
    logger.debug("pochhammer %s over %d bases: %d factors", x.to_text(), len(bases), len(factors))
    return factors


def cap_laurent(series: MultiSeries) -> MultiSeries:
    """Certify ``series`` no further than ``hi`` in its Laurent variables"""
    prec = [p if o else min(p, h) for p, h, o in zip(series.prec, series.ring.hi, series.ring.ordinary)]
    return MultiSeries(series.ring, series.terms, prec, series.val)


def pochhammer_inf(ring: SeriesRing, x: Union[Monomial, str], bases: Sequence[Union[Monomial, str]],
                   invert: bool = False, slack: int = 0) -> MultiSeries:
    """``(x; b_1, ..., b_m)_inf`` (or its reciprocal) as a direct product"""
    if as_monomial(x).coef == 0:
        return ring.one()
    out = expand_factored(ring, pochhammer_factors(ring, x, bases, invert, slack))
    return cap_laurent(out)


def theta(ring: SeriesRing, x: Union[Monomial, str], M: int, p: str = "p") -> MultiSeries:
    """Truncated ``sum_k (-x)^k p^binom(k,2)`` over the k with binom(k,2) <= M"""
    x = as_monomial(x)
    order = min(M, ring.window(p)[1])
    items = []
    k = 1
    while k * (k - 1) // 2 <= order:
        for kk in (k, 1 - k):
            term = (-x) ** kk * Monomial(1, ((p, kk * (kk - 1) // 2),))
            items.append((term.exps_in(ring), term.coef))
        k += 1
    prec = [INF] * len(ring.specs)
    prec[ring.index(p)] = order
    return _collect(ring, items, prec)


def theta_product(ring: SeriesRing, x: Union[Monomial, str], M: int, p: str = "p") -> MultiSeries:
    """``(x, p/x, p; p)_inf`` truncated at ``p^M``"""
    x = as_monomial(x)
    pm = Monomial(1, ((p, 1),))
    order = min(M, ring.window(p)[1])
    factors = [(x, 1)]
    for i in range(1, order + 1):
        factors += [(x * pm ** i, 1), (x.inverse() * pm ** i, 1), (pm ** i, 1)]
    out = expand_factored(ring, factors)
    prec = list(out.prec)
    i = ring.index(p)
    prec[i] = min(prec[i], order)
    return MultiSeries(ring, out.terms, prec, out.val)


# -- T-graded series --------------------------------------------------------

class TGraded:
    """Coefficients of ``T^0 .. T^K``, each a ``MultiSeries`` in one inner ring"""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: SeriesRing, coeffs: Sequence[MultiSeries]):
        for c in coeffs:
            if c.ring != ring:
                raise StructureError("T-coefficients live in different rings")
        self.ring = ring
        self.coeffs: List[MultiSeries] = list(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, ring: SeriesRing, order: int) -> "TGraded":
        return cls(ring, [ring.zero() for _ in range(order + 1)])

    @classmethod
    def one(cls, ring: SeriesRing, order: int) -> "TGraded":
        return cls.constant(ring.one(), order)

    @classmethod
    def constant(cls, series: MultiSeries, order: int) -> "TGraded":
        return cls(series.ring, [series] + [series.ring.zero() for _ in range(order)])

    @classmethod
    def monomial(cls, series: MultiSeries, k: int, order: int) -> "TGraded":
        out = cls.zero(series.ring, order)
        if k <= order:
            out.coeffs[k] = series
        return out

    def __getitem__(self, k: int) -> MultiSeries:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _binary(self, other: "TGraded") -> int:
        if self.ring != other.ring:
            raise StructureError("mismatched inner rings")
        return min(self.order, other.order)

    def __add__(self, other) -> "TGraded":
        if not isinstance(other, TGraded):
            return TGraded(self.ring, [self.coeffs[0] + other] + self.coeffs[1:])
        K = self._binary(other)
        return TGraded(self.ring, [self.coeffs[k] + other.coeffs[k] for k in range(K + 1)])

    __radd__ = __add__

    def __neg__(self) -> "TGraded":
        return TGraded(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other) -> "TGraded":
        return self + (-other)

    def __mul__(self, other) -> "TGraded":
        if isinstance(other, TGraded):
            K = self._binary(other)
            out = []
            for k in range(K + 1):
                acc = self.ring.zero()
                for j in range(k + 1):
                    if self.coeffs[j].is_exact_zero() or other.coeffs[k - j].is_exact_zero():
                        continue
                    acc = acc + self.coeffs[j] * other.coeffs[k - j]
                out.append(acc)
            return TGraded(self.ring, out)
        return TGraded(self.ring, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "TGraded":
        return TGraded(self.ring, [x.scale(c) for x in self.coeffs])

    def truncate(self, order: int) -> "TGraded":
        return TGraded(self.ring, self.coeffs[: order + 1])

    def exp(self) -> "TGraded":
        g = self.coeffs
        f0 = series_exp(g[0]) if not g[0].is_exact_zero() else self.ring.one()
        f = [f0]
        for k in range(1, self.order + 1):
            acc = self.ring.zero()
            for j in range(1, k + 1):
                if g[j].is_exact_zero():
                    continue
                acc = acc + (g[j] * f[k - j]).scale(j)
            f.append(acc.scale(Fraction(1, k)))
        return TGraded(self.ring, f)

    def log(self) -> "TGraded":
        f = self.coeffs
        g0 = series_log(f[0]) if f[0] != 1 else self.ring.zero()
        inv0 = invert_unit(f[0]) if f[0] != 1 else None
        g = [g0]
        for k in range(1, self.order + 1):
            acc = f[k].scale(k)
            for j in range(1, k):
                if g[j].is_exact_zero():
                    continue
                acc = acc - (g[j] * f[k - j]).scale(j)
            acc = acc.scale(Fraction(1, k))
            g.append(acc * inv0 if inv0 is not None else acc)
        return TGraded(self.ring, g)

    def adams(self, r: int) -> "TGraded":
        """Replace ``T`` by ``T^r`` and every inner variable by its r-th power"""
        out = TGraded.zero(self.ring, self.order)
        for k, c in enumerate(self.coeffs):
            if r * k > self.order:
                break
            if not c.is_exact_zero():
                out.coeffs[r * k] = c.adams(r)
        return out

    def plethystic_exp(self) -> "TGraded":
        if not self.coeffs[0].is_exact_zero():
            raise DomainError("plethystic exponential needs a zero T^0 coefficient")
        total = TGraded.zero(self.ring, self.order)
        for r in range(1, self.order + 1):
            total = total + self.adams(r).scale(Fraction(1, r))
        return total.exp()

    def substitute(self, images: Mapping[str, Union[Monomial, str]],
                   ring: Optional[SeriesRing] = None) -> "TGraded":
        target = ring or self.ring
        return TGraded(target, [c.substitute(images, target) for c in self.coeffs])

    def to_ring(self, ring: SeriesRing, strict: bool = True) -> "TGraded":
        return TGraded(ring, [c.to_ring(ring, strict) for c in self.coeffs])

    def clip(self, ring: SeriesRing) -> "TGraded":
        return self.to_ring(ring, strict=False)

    def require(self, window: Optional[SeriesRing] = None, what: str = "series") -> "TGraded":
        for k, c in enumerate(self.coeffs):
            c.require(window, f"{what} at T^{k}")
        return self

    def __eq__(self, other) -> bool:
        if not isinstance(other, TGraded):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def to_text(self, grade: str = "T") -> str:
        entries = []
        for k, c in enumerate(self.coeffs):
            for e, coef in c.terms.items():
                powers = dict(zip(self.ring.names, e))
                powers[grade] = k
                entries.append((powers, coef))
        return format_terms(entries, grade=grade)

    def __repr__(self) -> str:
        return f"TGraded({self.to_text()})"


def plethystic_exp(f: TGraded) -> TGraded:
    return f.plethystic_exp()


def _graded_indices(graded: Sequence[Tuple[int, Monomial]], budget: int) -> Iterator[Tuple[int, Monomial]]:
    if not graded:
        yield 0, Monomial(1)
        return
    (degree, inner), rest = graded[0], graded[1:]
    j = 0
    while j * degree <= budget:
        for extra, m in _graded_indices(rest, budget - j * degree):
            yield j * degree + extra, m * inner ** j
        j += 1


def log_pochhammer(ring: SeriesRing, order: int, x: Union[Monomial, str],
                   bases: Sequence[Union[Monomial, str]], power: Scalar = 1,
                   grade: str = "T") -> TGraded:
    """``power * log (x; bases)_inf`` as a T-graded series.

    ``x`` and the bases may carry the grade variable. Bases without it are
    summed as geometric series in the inner ring, bases with it are
    enumerated, so ``T^k`` collects the finitely many ``r`` and indices of
    total grade ``k``.
    """
    x = as_monomial(x)
    bases = [as_monomial(b) for b in bases]
    out = TGraded.zero(ring, order)
    if x.coef == 0 or power == 0:
        return out
    dx = x.exponent(grade)
    x_in = x.drop(grade)
    graded, inner = [], []
    for b in bases:
        if any(e < 0 for _, e in b.powers) or b.is_constant:
            raise DomainError(f"pochhammer base {b.to_text()} must be a nonconstant monomial")
        if b.exponent(grade) > 0:
            graded.append((b.exponent(grade), b.drop(grade)))
        else:
            inner.append(b)
    if dx < 0:
        raise DomainError("negative grade in pochhammer argument")
    hi, ordinary = ring.hi, ring.ordinary
    for extra, shift in _graded_indices(graded, order - dx):
        degree = dx + extra
        y = x_in * shift
        if degree == 0:
            if y.is_constant:
                raise DomainError("divergent pochhammer: constant argument at grade 0")
            if not _expandable(y.exps_in(ring), ordinary):
                raise DomainError(f"pochhammer argument {y.to_text()} does not shrink in {ring.windows()}")
        r = 1
        while True:
            if degree and degree * r > order:
                break
            yr = y ** r
            e = yr.exps_in(ring)
            if not degree:
                beyond = [i for i, (v, h) in enumerate(zip(e, hi)) if v > h and y.exps_in(ring)[i] > 0]
                if beyond:
                    prec = list(out.coeffs[0].prec)
                    for i in beyond:
                        prec[i] = min(prec[i], hi[i])
                    c0 = out.coeffs[0]
                    out.coeffs[0] = MultiSeries(ring, c0.terms, prec, c0.val)
                    break
            term = expand_factored(
                ring, [(b ** r, -1) for b in inner], coef=Fraction(-power) / r, prefactor=yr
            )
            out.coeffs[degree * r] = out.coeffs[degree * r] + term
            r += 1
    return out

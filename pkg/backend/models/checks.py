"""Labelled comparisons produced by the identity builders.

A builder returns a list of ``Check`` objects; each pairs a left and a right
value under a label. Values are ``TGraded``, ``MultiSeries`` or plain
scalars. Series are compared inside a window after certifying both sides
over it.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from .exactnum import Exponent, Monomial, MultiSeries, Scalar, SeriesRing, TGraded, format_scalar

logger = logging.getLogger(__name__)


@dataclass
class Check:
    label: str
    lhs: Any
    rhs: Any
    window: Optional[SeriesRing] = None


Checks = List[Check]


def _series_items(value, window: Optional[SeriesRing], what: str) -> Tuple[SeriesRing, Dict]:
    """``(k, exponents) -> coefficient`` over the window, certified"""
    if isinstance(value, TGraded):
        window = window or value.ring
        value.require(window, what)
        clipped = value.clip(window)
        items = {(k, e): c for k, s in enumerate(clipped.coeffs) for e, c in s.terms.items()}
        return window, items
    window = window or value.ring
    value.require(window, what)
    return window, {(0, e): c for e, c in value.clip(window).terms.items()}


def _order_key(key: Tuple[int, Exponent]):
    k, e = key
    return k, sum(abs(x) for x in e), tuple(-x for x in e)


def first_difference(check: Check) -> Optional[Dict[str, str]]:
    """The first differing monomial of ``check``, or None when both sides agree"""
    lhs, rhs = check.lhs, check.rhs
    if isinstance(lhs, (TGraded, MultiSeries)):
        window, left = _series_items(lhs, check.window, f"{check.label} lhs")
        _, right = _series_items(rhs, window, f"{check.label} rhs")
        if isinstance(lhs, TGraded) and isinstance(rhs, TGraded):
            top = min(lhs.order, rhs.order)
            left = {key: c for key, c in left.items() if key[0] <= top}
            right = {key: c for key, c in right.items() if key[0] <= top}
        keys = sorted((key for key in set(left) | set(right) if left.get(key, 0) != right.get(key, 0)),
                      key=_order_key)
        if not keys:
            return None
        k, e = keys[0]
        powers = dict(zip(window.names, e))
        if isinstance(lhs, TGraded):
            powers["T"] = k
        return {
            "label": check.label,
            "monomial": Monomial.from_dict(powers).to_text(),
            "lhs": format_scalar(left.get((k, e), 0)),
            "rhs": format_scalar(right.get((k, e), 0)),
        }
    if lhs == rhs:
        return None
    return {"label": check.label, "monomial": "1", "lhs": _text(lhs), "rhs": _text(rhs)}


def _text(value) -> str:
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return format_scalar(value)
    return str(value)


def keep_terms(value, predicate: Callable[[Dict[str, int], Scalar], bool]):
    """Same series with only the terms satisfying ``predicate(powers, coefficient)``"""
    if isinstance(value, TGraded):
        return TGraded(value.ring, [keep_terms(c, predicate) for c in value.coeffs])
    names = value.ring.names
    terms = {e: c for e, c in value.terms.items() if predicate(dict(zip(names, e)), c)}
    return MultiSeries(value.ring, terms, value.prec, value.val)


def is_integer(c: Scalar) -> bool:
    return Fraction(c).denominator == 1


def perturbed(value, window: Optional[SeriesRing] = None):
    """``value`` with one planted discrepancy, at the lowest monomial of the window for series"""
    if isinstance(value, bool):
        return not value
    if isinstance(value, (int, Fraction)):
        return value + 1
    if isinstance(value, TGraded):
        coeffs = list(value.coeffs)
        coeffs[0] = perturbed(coeffs[0], window)
        return TGraded(value.ring, coeffs)
    if isinstance(value, MultiSeries):
        window = window or value.ring
        low = tuple(window.window(n)[0] if n in window.names else lo
                    for n, lo in zip(value.ring.names, value.ring.lo))
        return value + value.ring.poly({low: 1})
    if isinstance(value, tuple):
        return value + ("perturbed",)
    if isinstance(value, list):
        return value + ["perturbed"]
    if isinstance(value, dict):
        bumped = dict(value)
        key = next(iter(bumped), "perturbed")
        bumped[key] = perturbed(bumped.get(key, 0), window)
        return bumped
    raise TypeError(f"cannot perturb {type(value).__name__}")

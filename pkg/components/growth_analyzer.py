#!/usr/bin/env python3
"""
Growth Analyzer Component
Rational brackets for the inverse growth rate of a consecutive pattern.

omega(z) = 1 - z + a_1(z) - a_2(z) + a_3(z) - ... where the a_j are
polynomials with nonnegative coefficients that decrease for 0 < z <= C.
Consecutive partial sums therefore sandwich omega, and the first positive
root of each sandwich polynomial bounds the first zero of omega, which is
the inverse growth rate.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Tuple

import sympy as sp

from components.egf import Z, default_order, omega_series, s_k_polynomial
from components.errors import DomainError, InvalidInputError
from components.perm_core import Pattern

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = sp.Rational(1, 10**6)
CONSTANT_TOLERANCE = sp.Rational(1, 10**9)
C_SEARCH_LIMIT = sp.Rational(3, 2)
C_DEPTH = 8
HEURISTIC_LIMIT = sp.Integer(2)
HEURISTIC_STEP = sp.Rational(1, 100)


class BracketMode(Enum):
    CERTIFIED = "certified"
    HEURISTIC = "heuristic"


class BracketStatus(Enum):
    CERTIFIED = "certified"
    HEURISTIC = "heuristic"
    INCONCLUSIVE = "inconclusive"


class Comparison(Enum):
    FIRST_MORE_AVOIDED = "first-more-avoided"
    SECOND_MORE_AVOIDED = "second-more-avoided"
    INDISTINGUISHABLE = "indistinguishable"


def _rational(value) -> sp.Rational:
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    return sp.Rational(value)


def decimal_string(value, digits: int = 15) -> str:
    return str(sp.N(value, digits))


@dataclass
class RootBracket:
    """Closed rational interval [lo, hi]."""
    lo: sp.Rational
    hi: sp.Rational

    @property
    def width(self) -> sp.Rational:
        return self.hi - self.lo

    def contains(self, value) -> bool:
        value = _rational(value)
        return bool(self.lo <= value <= self.hi)

    def to_dict(self) -> Dict:
        return {'lo': str(self.lo), 'hi': str(self.hi),
                'lo_decimal': decimal_string(self.lo), 'hi_decimal': decimal_string(self.hi),
                'width': decimal_string(self.width, 6)}


@dataclass
class GrowthBracket:
    """Bracket [lo, hi] for the inverse growth rate of one pattern."""
    pattern: Pattern
    lo: Optional[sp.Rational]
    hi: Optional[sp.Rational]
    mode: BracketMode
    status: BracketStatus
    K: Optional[int] = None
    N: Optional[int] = None
    tol: sp.Rational = DEFAULT_TOLERANCE
    notes: List[str] = field(default_factory=list)

    @property
    def conclusive(self) -> bool:
        return self.status != BracketStatus.INCONCLUSIVE

    @property
    def width(self) -> Optional[sp.Rational]:
        if self.lo is None or self.hi is None:
            return None
        return self.hi - self.lo

    def contains(self, value) -> bool:
        return bool(self.conclusive and self.lo <= _rational(value) <= self.hi)

    def below(self, other: "GrowthBracket") -> bool:
        """Strictly below other, so this pattern has the larger growth rate."""
        return bool(self.conclusive and other.conclusive and self.hi < other.lo)

    def to_dict(self) -> Dict:
        return {
            'pattern': str(self.pattern),
            'lo': None if self.lo is None else str(self.lo),
            'hi': None if self.hi is None else str(self.hi),
            'lo_decimal': None if self.lo is None else decimal_string(self.lo),
            'hi_decimal': None if self.hi is None else decimal_string(self.hi),
            'mode': self.mode.value,
            'status': self.status.value,
            'K': self.K,
            'N': self.N,
            'tol': str(self.tol),
            'notes': list(self.notes),
        }


def monotone_terms(m: int, count: int) -> List[sp.Poly]:
    """z^m/m!, z^{m+1}/(m+1)!, z^{2m}/(2m)!, z^{2m+1}/(2m+1)!, ..."""
    terms = []
    j = 1
    while len(terms) < count:
        for degree in (j * m, j * m + 1):
            if len(terms) < count:
                terms.append(sp.Poly(Z**degree / factorial(degree), Z, domain='QQ'))
        j += 1
    return terms


def alternating_terms(sigma: Pattern, count: int, max_elements: Optional[int] = None) -> List[sp.Poly]:
    """The first `count` positive terms a_j of omega = 1 - z + a_1 - a_2 + ..."""
    if sigma.is_monotone():
        return monotone_terms(sigma.m, count)
    ceiling = max_elements or sigma.m + count * (sigma.m - 1)
    return [s_k_polynomial(sigma, k, ceiling).poly for k in range(1, count + 1)]


def partial_sum(terms: List[sp.Poly], upto: int) -> sp.Poly:
    """1 - z + a_1 - a_2 + ... +/- a_upto."""
    total = sp.Poly(1 - Z, Z, domain='QQ')
    for j in range(upto):
        total = total + terms[j] if j % 2 == 0 else total - terms[j]
    return total


def _first_root(poly: sp.Poly, inf, sup, tol) -> Optional[Tuple[sp.Rational, sp.Rational]]:
    """Isolating interval of the smallest real root in [inf, sup], refined below tol."""
    intervals = poly.intervals(eps=tol, inf=inf, sup=sup)
    if not intervals:
        return None
    (a, b), _ = min(intervals, key=lambda item: item[0][0])
    return sp.Rational(a), sp.Rational(b)


def bisect_root(poly: sp.Poly, lo, hi, tol) -> RootBracket:
    """Plain bisection; needs poly(lo) > 0 > poly(hi)."""
    lo, hi, tol = _rational(lo), _rational(hi), _rational(tol)
    if not (poly.eval(lo) > 0 > poly.eval(hi)):
        raise DomainError(f"No sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if poly.eval(mid) > 0:
            lo = mid
        else:
            hi = mid
    return RootBracket(lo, hi)


class GrowthAnalyzer:
    """Brackets, comparisons and derivative signs for inverse growth rates."""

    def __init__(self, tolerance=DEFAULT_TOLERANCE):
        self.tolerance = _rational(tolerance)
        self._brackets: Dict[Tuple[Pattern, int, sp.Rational, bool], GrowthBracket] = {}
        self._c_upper: Optional[sp.Rational] = None
        logger.info("Growth Analyzer initialized")

    @staticmethod
    def default_depth(m: int) -> int:
        return 8 if m == 3 else 6

    def c_upper_bound(self) -> sp.Rational:
        """Upper end of the certified 132 bracket, the rational stand-in for C."""
        if self._c_upper is None:
            bracket = self.bracket_growth_rate(Pattern.parse("132"), C_DEPTH, CONSTANT_TOLERANCE)
            if not bracket.conclusive:
                raise DomainError("Could not certify the 132 bracket")
            self._c_upper = bracket.hi
            logger.info(f"C upper bound: {decimal_string(self._c_upper)}")
        return self._c_upper

    def _search_limit(self, sigma: Pattern) -> sp.Rational:
        # Every length-3 pattern is equivalent to 123 or 132, so 3/2 safely exceeds C.
        if sigma.m == 3:
            return C_SEARCH_LIMIT
        return self.c_upper_bound()

    def bracket_growth_rate(self, sigma: Pattern, K: Optional[int] = None, tol=None,
                            certified: bool = True) -> GrowthBracket:
        if sigma.m < 3:
            raise DomainError(f"Growth brackets need m >= 3, got {sigma}")
        K = K or self.default_depth(sigma.m)
        if K < 2:
            raise InvalidInputError(f"Cluster depth K must be at least 2, got {K}")
        tol = self.tolerance if tol is None else _rational(tol)
        key = (sigma, K, tol, certified)
        if key not in self._brackets:
            if certified:
                self._brackets[key] = self._certified_bracket(sigma, K, tol)
            else:
                self._brackets[key] = self._heuristic_bracket(sigma, tol)
        return self._brackets[key]

    def sandwich(self, sigma: Pattern, K: int) -> Tuple[sp.Poly, sp.Poly, List[sp.Poly]]:
        """(lower, upper) partial sums of orders K and K+1, plus the terms used."""
        terms = alternating_terms(sigma, K + 1)
        first, second = partial_sum(terms, K), partial_sum(terms, K + 1)
        # A partial sum whose last term is subtracted lies below omega.
        if K % 2 == 0:
            return first, second, terms
        return second, first, terms

    def _certified_bracket(self, sigma: Pattern, K: int, tol: sp.Rational) -> GrowthBracket:
        sup = self._search_limit(sigma)
        lower, upper, terms = self.sandwich(sigma, K)
        bracket = GrowthBracket(sigma, None, None, BracketMode.CERTIFIED,
                                BracketStatus.INCONCLUSIVE, K=K, tol=tol)

        upper_root = _first_root(upper, 1, sup, tol)
        if upper_root is None:
            bracket.notes.append(f"upper partial sum has no root in [1, {decimal_string(sup, 8)}]")
            logger.warning(f"Inconclusive bracket for {sigma} at K={K}")
            return bracket
        hi = upper_root[1]

        if lower.eval(1) <= 0:
            lo = sp.Integer(1)
        else:
            lower_root = _first_root(lower, 1, sup, tol)
            if lower_root is None:
                bracket.notes.append("lower partial sum has no root below the upper one")
                return bracket
            lo = lower_root[0]

        values = [term.eval(hi) for term in terms]
        if any(values[j + 1] >= values[j] for j in range(len(values) - 1)):
            bracket.notes.append("terms are not decreasing at the upper end")
            logger.warning(f"Terms not decreasing for {sigma} at z={decimal_string(hi, 8)}")
            return bracket

        bracket.lo, bracket.hi = lo, hi
        bracket.status = BracketStatus.CERTIFIED
        logger.info(f"Bracket for {sigma} (K={K}): [{decimal_string(lo, 10)}, {decimal_string(hi, 10)}]")
        return bracket

    def _heuristic_bracket(self, sigma: Pattern, tol: sp.Rational) -> GrowthBracket:
        N = default_order(sigma.m)
        omega = omega_series(sigma, N).to_poly()
        bracket = GrowthBracket(sigma, None, None, BracketMode.HEURISTIC,
                                BracketStatus.INCONCLUSIVE, N=N, tol=tol)
        left = sp.Integer(1)
        if omega.eval(left) <= 0:
            bracket.notes.append("truncated omega is not positive at 1")
            return bracket
        while left < HEURISTIC_LIMIT:
            right = left + HEURISTIC_STEP
            if omega.eval(right) <= 0:
                root = bisect_root(omega, left, right, tol)
                bracket.lo, bracket.hi = root.lo, root.hi
                bracket.status = BracketStatus.HEURISTIC
                return bracket
            left = right
        bracket.notes.append("no sign change found")
        return bracket

    def smallest_root_of_quartic_c(self, tol=sp.Rational(1, 10**6)) -> RootBracket:
        """Bisection bracket for c, the smallest positive zero of 1 - z + z^4/24."""
        quartic = sp.Poly(1 - Z + Z**4 / 24, Z, domain='QQ')
        return bisect_root(quartic, 1, sp.Rational(11, 10), tol)

    def compare_growth(self, sigma: Pattern, tau: Pattern, K: Optional[int] = None,
                       tol=None) -> Comparison:
        """FIRST_MORE_AVOIDED when sigma's bracket lies strictly below tau's."""
        first = self.bracket_growth_rate(sigma, K, tol)
        second = self.bracket_growth_rate(tau, K, tol)
        if first.below(second):
            return Comparison.FIRST_MORE_AVOIDED
        if second.below(first):
            return Comparison.SECOND_MORE_AVOIDED
        return Comparison.INDISTINGUISHABLE

    def verify_derivative_negativity(self, sigma: Pattern, K: Optional[int] = None, tol=None) -> Dict:
        """Upper bounds for the derivative of both sandwich polynomials across the bracket.

        Every term derivative is increasing on z > 0, so added terms are bounded
        at hi and subtracted ones at lo.
        """
        bracket = self.bracket_growth_rate(sigma, K, tol)
        report = {'pattern': str(sigma), 'bracket': bracket.to_dict()}
        if not bracket.conclusive:
            report.update({'sign': 'unknown', 'status': 'inconclusive'})
            return report

        terms = alternating_terms(sigma, bracket.K + 1)
        derivatives = [term.diff(Z) for term in terms]
        bounds = {}
        for name, upto in (('order_K', bracket.K), ('order_K_plus_1', bracket.K + 1)):
            bound = sp.Integer(-1)
            for j in range(upto):
                if j % 2 == 0:
                    bound += derivatives[j].eval(bracket.hi)
                else:
                    bound -= derivatives[j].eval(bracket.lo)
            bounds[name] = bound

        negative = all(value < 0 for value in bounds.values())
        report.update({
            'derivative_upper_bounds': {name: decimal_string(value) for name, value in bounds.items()},
            'sign': 'negative' if negative else 'unknown',
            'status': 'pass' if negative else 'inconclusive',
        })
        return report

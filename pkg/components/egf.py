#!/usr/bin/env python3
"""
Exponential Generating Function Component
Exact EGF arithmetic for the cluster method: cluster polynomials s_k(z),
the series omega(z), avoider counts and occurrence distributions.

Series coefficients are stored n!-scaled, so a_n is the number of labelled
objects of size n and every coefficient is an integer.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd
import sympy as sp

from components.cluster import cluster_number, index_tuples
from components.errors import DomainError, InvalidInputError
from components.perm_core import Pattern

logger = logging.getLogger(__name__)

Z = sp.Symbol('z')
U = sp.Symbol('u')


@dataclass(frozen=True)
class EgfSeries:
    """Truncated EGF sum a_n z^n / n! for n = 0..order."""
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coefficients', tuple(int(c) for c in self.coefficients))
        if not self.coefficients:
            raise InvalidInputError("A series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)

    def _common(self, other: "EgfSeries") -> int:
        return min(len(self), len(other))

    def __add__(self, other: "EgfSeries") -> "EgfSeries":
        size = self._common(other)
        return EgfSeries(tuple(self[n] + other[n] for n in range(size)))

    def __neg__(self) -> "EgfSeries":
        return EgfSeries(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "EgfSeries") -> "EgfSeries":
        return self + (-other)

    def __mul__(self, other: "EgfSeries") -> "EgfSeries":
        """Binomial convolution: (F G)_n = sum_j C(n, j) F_j G_{n-j}."""
        size = self._common(other)
        return EgfSeries(tuple(
            sum(comb(n, j) * self[j] * other[n - j] for j in range(n + 1))
            for n in range(size)))

    def reciprocal(self) -> "EgfSeries":
        """1/F to the same order; needs a unit constant term to stay integral."""
        head = self[0]
        if head not in (1, -1):
            raise DomainError(f"Constant term {head} is not a unit, reciprocal is not integral")
        result = [head]
        for n in range(1, len(self)):
            total = sum(comb(n, j) * result[j] * self[n - j] for j in range(n))
            result.append(-total * head)
        return EgfSeries(tuple(result))

    def to_poly(self) -> sp.Poly:
        return sp.Poly(sum(sp.Rational(c, factorial(n)) * Z**n
                           for n, c in enumerate(self.coefficients)), Z, domain='QQ')

    def evaluate(self, z) -> sp.Rational:
        return self.to_poly().eval(sp.Rational(z))

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coefficients]

    def to_frame(self, column: str = 'coefficient') -> pd.DataFrame:
        return pd.DataFrame({'n': list(range(len(self))), column: [str(c) for c in self.coefficients]})


@dataclass(frozen=True)
class ClusterPolynomial:
    """s_k(z) = sum_n r_{n,k} z^n / n!, a finite polynomial."""
    pattern: Pattern
    k: int
    coefficients: Tuple[Tuple[int, int], ...]

    @cached_property
    def poly(self) -> sp.Poly:
        return sp.Poly(sum((sp.Rational(r, factorial(n)) * Z**n for n, r in self.coefficients),
                           sp.Integer(0)), Z, domain='QQ')

    def derivative(self) -> sp.Poly:
        return self.poly.diff(Z)

    def evaluate(self, z) -> sp.Rational:
        return self.poly.eval(sp.Rational(z))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.coefficients)


@dataclass(frozen=True)
class OccurrencePolynomialRow:
    """Number of permutations of length n with each occurrence count c."""
    n: int
    counts: Tuple[Tuple[int, int], ...]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.counts)

    def total(self) -> int:
        return sum(count for _, count in self.counts)

    def weighted_total(self) -> int:
        return sum(c * count for c, count in self.counts)


def default_order(m: int) -> int:
    """Truncation order used by classification and the CLI."""
    if m <= 4:
        return 14
    if m == 5:
        return 13
    return 15


def _max_k(sigma: Pattern, n: int) -> int:
    """Largest k for which a k-cluster of length n can exist."""
    if n < sigma.m:
        return 0
    return (n - sigma.m) // sigma.overlaps[0] + 1


@lru_cache(maxsize=4096)
def s_k_polynomial(sigma: Pattern, k: int, max_elements: Optional[int] = None) -> ClusterPolynomial:
    """Complete s_k: cluster lengths range over m+(k-1)min O .. m+(k-1)(m-1)."""
    if k < 1:
        raise InvalidInputError(f"k must be at least 1, got {k}")
    m = sigma.m
    shortest = m + (k - 1) * sigma.overlaps[0]
    longest = m + (k - 1) * (m - 1)
    terms = []
    for n in range(shortest, longest + 1):
        if not index_tuples(sigma, n, k):
            continue
        r = cluster_number(sigma, n, k, max_elements=max_elements)
        if r:
            terms.append((n, r))
    return ClusterPolynomial(sigma, k, tuple(terms))


def omega_series(sigma: Pattern, N: int, threads: int = 1) -> EgfSeries:
    """omega = 1 - z - sum_k (-1)^k s_k(z), truncated at order N."""
    if N < 0:
        raise InvalidInputError(f"Order must be non-negative, got {N}")
    coefficients = [1, -1][:N + 1]
    for n in range(2, N + 1):
        total = 0
        for k in range(1, _max_k(sigma, n) + 1):
            if index_tuples(sigma, n, k):
                total += (-1) ** k * cluster_number(sigma, n, k, threads=threads)
        coefficients.append(-total)
    return EgfSeries(tuple(coefficients))


def omega_monotone(m: int, N: int) -> EgfSeries:
    """Closed form for 12...m: +1 at n = 0 mod m, -1 at n = 1 mod m, else 0."""
    if m < 2:
        raise InvalidInputError(f"Pattern length must be at least 2, got {m}")
    coefficients = []
    for n in range(N + 1):
        if n % m == 0:
            coefficients.append(1)
        elif n % m == 1:
            coefficients.append(-1)
        else:
            coefficients.append(0)
    return EgfSeries(tuple(coefficients))


def avoider_counts(sigma: Pattern, N: int, threads: int = 1) -> List[int]:
    """alpha_0..alpha_N from the reciprocal of omega."""
    alphas = list(omega_series(sigma, N, threads=threads).reciprocal().coefficients)
    logger.debug(f"alpha({sigma}) through n={N}: {alphas[-1]}")
    return alphas


def _omega_u_rows(sigma: Pattern, N: int) -> List[sp.Poly]:
    """n!-scaled coefficients of omega(u, z) = 1 - z - R(u-1, z) as polynomials in u."""
    t = sp.Poly(U - 1, U, domain='ZZ')
    rows = [sp.Poly(1, U, domain='ZZ'), sp.Poly(-1, U, domain='ZZ')][:N + 1]
    for n in range(2, N + 1):
        row = sp.Poly(0, U, domain='ZZ')
        for k in range(1, _max_k(sigma, n) + 1):
            if index_tuples(sigma, n, k):
                row = row - t**k * cluster_number(sigma, n, k)
        rows.append(row)
    return rows


def occurrence_distribution_rows(sigma: Pattern, N: int) -> List[OccurrencePolynomialRow]:
    """Rows 0..N of P(u, z) = 1/omega(u, z), by the triangular recurrence on u-polynomials."""
    if N < 0:
        raise InvalidInputError(f"Order must be non-negative, got {N}")
    omega = _omega_u_rows(sigma, N)
    rows: List[sp.Poly] = [sp.Poly(1, U, domain='ZZ')]
    for n in range(1, N + 1):
        total = sp.Poly(0, U, domain='ZZ')
        for j in range(n):
            total = total + rows[j] * omega[n - j] * comb(n, j)
        rows.append(-total)
    result = []
    for n, row in enumerate(rows):
        counts = sorted((degree, int(coeff)) for (degree,), coeff in row.terms() if coeff)
        result.append(OccurrencePolynomialRow(n, tuple(counts)))
    return result


def occurrence_distribution(sigma: Pattern, n: int) -> OccurrencePolynomialRow:
    return occurrence_distribution_rows(sigma, n)[n]

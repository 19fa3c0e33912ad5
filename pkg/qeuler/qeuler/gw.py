"""Genus-0 two-point hyperplane descendant invariants <tau_a(H^i), H^j>_{0,k}.

Values with j = 0 come from the hypergeometric base case; everything else from
the recursion that lowers j (and, through the splitting term, k):

    <tau_a(H^i), H^j>_k = <tau_a(H^{i+1}), H^{j-1}>_k + k <tau_{a+1}(H^i), H^{j-1}>_k
        - sum_{l=1}^{k-1} m^{-1} (k-l) <tau_a(H^i), H^{ld+r-1-i-a}>_l <H^{j-1}, H^{(k-l)d+r-j}>_{k-l}

Any invariant with an H-exponent outside [0, r] or a negative psi power is 0.
"""
import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Optional, Tuple

from .errors import TableLimitError, ValidationError
from .series import (
    TruncatedSeries,
    coefficient,
    invert_truncated,
    mul_truncated,
    power_truncated,
)
from .space import FanoSpace

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class DescendantKey:
    """(k, a, i) of <tau_a(H^i), H^j>_{0,k}; j is fixed by the dimension constraint."""

    k: int
    a: int
    i: int

    def j(self, space: FanoSpace) -> int:
        return vdim_02(space, self.k) - self.a - self.i

    @classmethod
    def checked(cls, space: FanoSpace, k: int, a: int, i: int, j: int) -> 'DescendantKey':
        if a + i + j != vdim_02(space, k):
            raise ValidationError(
                f'a+i+j={a + i + j} does not match vdim={vdim_02(space, k)} for k={k}'
            )
        return cls(k, a, i)

    def as_string(self) -> str:
        return f'{self.k},{self.a},{self.i}'

    @classmethod
    def parse(cls, text: str) -> 'DescendantKey':
        k, a, i = (int(part) for part in text.split(','))
        return cls(k, a, i)


def vdim_02(space: FanoSpace, k: int) -> int:
    """Virtual dimension of the two-pointed degree-k moduli space: r + kd - 1."""
    if k < 1:
        raise ValidationError(f'curve degree k={k} must be positive')
    return space.r + k * space.d - 1


@lru_cache(maxsize=None)
def _hypergeometric_coefficient(space: FanoSpace, h: int, n: int) -> Fraction:
    """[x^n] prod_j prod_{l=0}^{h m_j} (m_j x + l) / prod_{l=1}^{h} (x+l)^{r+L+1}."""
    if h == 0:
        # prod_j m_j x = deg_X x^L
        return Fraction(space.deg_x if n == space.codim else 0)
    numerator = TruncatedSeries.one(n)
    for m in space.degrees:
        for ell in range(h * m + 1):
            numerator = mul_truncated(numerator, TruncatedSeries.linear(ell, m, n), n)
    linear_factors = TruncatedSeries.one(n)
    for ell in range(1, h + 1):
        linear_factors = mul_truncated(linear_factors, TruncatedSeries.linear(ell, 1, n), n)
    denominator = power_truncated(linear_factors, space.r + space.codim + 1, n)
    return coefficient(mul_truncated(numerator, invert_truncated(denominator, n), n), n)


def base_descendant(space: FanoSpace, k: int, i: int) -> Fraction:
    """<tau_{r+kd-1-i}(H^i), 1>_{0,k}."""
    if not 0 <= i <= space.r:
        raise ValidationError(f'insertion exponent i={i} outside [0, {space.r}]')
    if k < 1:
        raise ValidationError(f'curve degree k={k} must be positive')
    n = space.r + space.codim - i
    if not space.borderline:
        return _hypergeometric_coefficient(space, k, n)
    total = Fraction(0)
    for h in range(k + 1):
        weight = Fraction((-space.m_factorial) ** (k - h), math.factorial(k - h))
        total += weight * _hypergeometric_coefficient(space, h, n)
    return total


def denominator_divides_power(value: Fraction, base: int) -> bool:
    """True when the reduced denominator of value divides some power of base."""
    den = Fraction(value).denominator
    factor = math.gcd(den, base)
    while factor > 1:
        den //= factor
        factor = math.gcd(den, base)
    return den == 1


def default_k_max(space: FanoSpace) -> int:
    """Largest k any quantum-ring computation on X reads: floor((r+1)/d)."""
    return (space.r + 1) // space.d


class GWTable:
    """Memo of descendant invariants for one space.

    A single re-entrant lock serializes writers, so concurrent callers see the
    same values as a sequential run.
    """

    def __init__(self, space: FanoSpace, k_max: Optional[int] = None):
        self.space = space
        self.k_max = max(k_max or 0, default_k_max(space))
        self._memo: Dict[DescendantKey, Fraction] = {}
        self._lock = threading.RLock()

    def __len__(self) -> int:
        return len(self._memo)

    def __contains__(self, key: DescendantKey) -> bool:
        return key in self._memo

    def grow(self, k_max: int):
        with self._lock:
            if k_max > self.k_max:
                logger.info(f"Growing GW table for {self.space.label} to k_max={k_max}")
                self.k_max = k_max

    def clear(self):
        with self._lock:
            self._memo.clear()

    def items(self) -> Iterator[Tuple[DescendantKey, Fraction]]:
        with self._lock:
            return iter(sorted(self._memo.items()))

    def merge(self, entries: Iterable[Tuple[DescendantKey, Fraction]]) -> int:
        """Insert precomputed values (cache load); returns the number of new keys."""
        added = 0
        with self._lock:
            for key, value in entries:
                if key.k > self.k_max:
                    self.grow(key.k)
                if key not in self._memo:
                    self._memo[key] = Fraction(value)
                    added += 1
        return added

    def descendant(self, key: DescendantKey) -> Fraction:
        if key.k < 1:
            raise ValidationError(f'curve degree k={key.k} must be positive')
        if key.k > self.k_max:
            raise TableLimitError(f'k={key.k} exceeds table bound k_max={self.k_max}')
        with self._lock:
            return self._value(key.k, key.a, key.i)

    def _value(self, k: int, a: int, i: int) -> Fraction:
        r, d = self.space.r, self.space.d
        j = r + k * d - 1 - a - i
        if a < 0 or not 0 <= i <= r or not 0 <= j <= r:
            return Fraction(0)
        key = DescendantKey(k, a, i)
        cached = self._memo.get(key)
        if cached is not None:
            return cached

        if j == 0:
            value = base_descendant(self.space, k, i)
        else:
            value = self._value(k, a, i + 1) + k * self._value(k, a + 1, i)
            for ell in range(1, k):
                left = self._value(ell, a, i)
                if left == 0:
                    continue
                right = self._value(k - ell, 0, j - 1)
                value -= Fraction(k - ell, self.space.deg_x) * left * right
        self._memo[key] = value
        logger.debug(f"<tau_{a}(H^{i}), H^{j}>_(0,{k}) = {value}")
        return value

    def alpha(self, k: int, s: int) -> Fraction:
        """alpha^k_s = m^{-1} <H^{kd+(r-s)-1}, H^s>_{0,k}; 0 when an exponent leaves [0, r]."""
        r = self.space.r
        i = k * self.space.d + (r - s) - 1
        if k < 1 or not 0 <= s <= r or not 0 <= i <= r:
            return Fraction(0)
        return self.descendant(DescendantKey(k, 0, i)) / self.space.deg_x


def descendant(table: GWTable, key: DescendantKey) -> Fraction:
    return table.descendant(key)


def alpha(table: GWTable, k: int, s: int) -> Fraction:
    return table.alpha(k, s)

"""Exact arithmetic substrate: truncated power series in x and sparse polynomials in q.

Series are dense (orders stay around r+L), q-polynomials are sparse maps
power -> Fraction. Nothing here ever rounds.
"""
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .errors import SeriesError

Scalar = Union[int, Fraction]


class TruncatedSeries:
    """c_0 + c_1 x + ... + c_N x^N, known exactly up to order N inclusive."""

    __slots__ = ('_coeffs',)

    def __init__(self, coefficients: Iterable[Scalar]):
        coeffs = tuple(Fraction(c) for c in coefficients)
        if not coeffs:
            raise SeriesError('a truncated series needs at least its constant term')
        self._coeffs = coeffs

    @classmethod
    def one(cls, order: int) -> 'TruncatedSeries':
        return cls([1] + [0] * order)

    @classmethod
    def linear(cls, c0: Scalar, c1: Scalar, order: int) -> 'TruncatedSeries':
        """c0 + c1*x padded to ``order``."""
        if order == 0:
            return cls([c0])
        return cls([c0, c1] + [0] * (order - 1))

    @classmethod
    def from_polynomial(cls, coefficients: Sequence[Scalar], order: int) -> 'TruncatedSeries':
        padded = list(coefficients[:order + 1])
        padded += [0] * (order + 1 - len(padded))
        return cls(padded)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f'TruncatedSeries({[str(c) for c in self._coeffs]})'


def _require_order(a: TruncatedSeries, order: int, what: str):
    if order < 0:
        raise SeriesError(f'negative truncation order {order}')
    if a.order < order:
        raise SeriesError(f'{what} is only known to order {a.order}, {order} requested')


def mul_truncated(a: TruncatedSeries, b: TruncatedSeries, order: int) -> TruncatedSeries:
    """Cauchy product modulo x^{order+1}."""
    _require_order(a, order, 'left factor')
    _require_order(b, order, 'right factor')
    ac, bc = a.coefficients, b.coefficients
    out = [Fraction(0)] * (order + 1)
    for i in range(order + 1):
        if ac[i] == 0:
            continue
        for j in range(order + 1 - i):
            out[i + j] += ac[i] * bc[j]
    return TruncatedSeries(out)


def invert_truncated(a: TruncatedSeries, order: int) -> TruncatedSeries:
    """b with a*b = 1 mod x^{order+1}; b_n = -(1/a_0) sum_{k=1..n} a_k b_{n-k}."""
    _require_order(a, order, 'series')
    ac = a.coefficients
    if ac[0] == 0:
        raise SeriesError('cannot invert a series with zero constant term')
    inv0 = 1 / ac[0]
    b = [inv0]
    for n in range(1, order + 1):
        acc = sum((ac[k] * b[n - k] for k in range(1, n + 1)), Fraction(0))
        b.append(-inv0 * acc)
    return TruncatedSeries(b)


def power_truncated(a: TruncatedSeries, exponent: int, order: int) -> TruncatedSeries:
    """a^exponent mod x^{order+1} by binary exponentiation."""
    if exponent < 0:
        raise SeriesError('exponent must be >= 0')
    result = TruncatedSeries.one(order)
    base = TruncatedSeries.from_polynomial(a.coefficients, order)
    e = exponent
    while e:
        if e & 1:
            result = mul_truncated(result, base, order)
        e >>= 1
        if e:
            base = mul_truncated(base, base, order)
    return result


def coefficient(a: TruncatedSeries, n: int) -> Fraction:
    if n < 0 or n > a.order:
        raise SeriesError(f'coefficient x^{n} requested from a series of order {a.order}')
    return a.coefficients[n]


class QPolynomial:
    """Sparse polynomial in q with Fraction coefficients; zero terms are never stored."""

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Mapping[int, Scalar] = None):
        clean: Dict[int, Fraction] = {}
        for power, value in (terms or {}).items():
            if power < 0:
                raise SeriesError(f'negative q-power {power}')
            value = Fraction(value)
            if value != 0:
                clean[int(power)] = value
        self._terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, value: Scalar, power: int = 0) -> 'QPolynomial':
        return cls({power: value})

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, power: int) -> Fraction:
        return self._terms.get(power, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max(self._terms) if self._terms else -1

    def shift(self, power: int) -> 'QPolynomial':
        """Multiply by q^power."""
        return QPolynomial({p + power: v for p, v in self._terms.items()})

    def scale(self, c: Scalar) -> 'QPolynomial':
        return QPolynomial({p: v * c for p, v in self._terms.items()})

    def __add__(self, other: 'QPolynomial') -> 'QPolynomial':
        out = dict(self._terms)
        for p, v in other._terms.items():
            out[p] = out.get(p, 0) + v
        return QPolynomial(out)

    def __neg__(self) -> 'QPolynomial':
        return self.scale(-1)

    def __sub__(self, other: 'QPolynomial') -> 'QPolynomial':
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QPolynomial):
            out: Dict[int, Fraction] = {}
            for p, v in self._terms.items():
                for p2, v2 in other._terms.items():
                    out[p + p2] = out.get(p + p2, 0) + v * v2
            return QPolynomial(out)
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return 'QPolynomial(0)'
        return 'QPolynomial(' + ' + '.join(f'{v}*q^{p}' for p, v in self.items()) + ')'

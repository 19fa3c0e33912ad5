"""The restricted quantum ring QH^*(X)^res spanned by quantum powers of H over Q[q].

Elements are coefficient vectors over one of two bases:

* ``H_star``    e_i = H^{*i}
* ``H_shifted`` f_i = (H + m!q)^{*i}   (only when |m| = r+L)

Products convolve in the generator T and then rewrite T^{r+1} with the
context's magic relation until every power is <= r. Classical cup powers H^t
only appear as outputs of ``classical_to_star``, which is driven by the GW table
and never touches the magic relation.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from .errors import ValidationError
from .gw import GWTable
from .series import QPolynomial
from .space import FanoSpace

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


class Basis(str, Enum):
    HSTAR = 'H_star'
    SHIFTED = 'H_shifted'


@dataclass(frozen=True)
class RingContext:
    space: FanoSpace
    basis: Basis = Basis.HSTAR

    def __post_init__(self):
        if self.basis is Basis.SHIFTED and not self.space.borderline:
            raise ValidationError(
                f'the shifted basis (H+m!q)^i needs |m| = r+L; {self.space.label} has d={self.space.d}'
            )

    @property
    def size(self) -> int:
        return self.space.r + 1

    @cached_property
    def reduction(self) -> Dict[int, QPolynomial]:
        """T^{r+1} = sum_e reduction[e] * T^e."""
        space = self.space
        r = space.r
        m_m = space.m_power(1, 0)
        if self.basis is Basis.SHIFTED:
            return {r: QPolynomial.monomial(m_m, 1)}
        if not space.borderline:
            return {r + 1 - space.d: QPolynomial.monomial(m_m, 1)}
        mf = space.m_factorial
        rule = {}
        for j in range(1, r + 2):
            c = math.comb(r, j - 1) * Fraction(mf) ** (j - 1) * (m_m - Fraction(mf * (r + 1), j))
            rule[r + 1 - j] = QPolynomial.monomial(c, j)
        return rule

    def hstar(self) -> 'RingContext':
        return RingContext(self.space, Basis.HSTAR)

    def shifted(self) -> 'RingContext':
        return RingContext(self.space, Basis.SHIFTED)

    def zero(self) -> 'RingElement':
        return RingElement(self, [QPolynomial()] * self.size)

    def one(self) -> 'RingElement':
        return self.basis_element(0)

    def basis_element(self, index: int, value: Scalar = 1, q_power: int = 0) -> 'RingElement':
        if not 0 <= index <= self.space.r:
            raise ValidationError(f'basis index {index} outside [0, {self.space.r}]')
        coeffs = [QPolynomial()] * self.size
        coeffs[index] = QPolynomial.monomial(value, q_power)
        return RingElement(self, coeffs)

    def element(self, terms: Dict[Tuple[int, int], Scalar]) -> 'RingElement':
        """Build sum value * q^p * T^i from {(i, p): value}."""
        out = self.zero()
        for (index, power), value in terms.items():
            out = out + self.basis_element(index, value, power)
        return out


class RingElement:
    __slots__ = ('context', 'coeffs')

    def __init__(self, context: RingContext, coeffs: Sequence[QPolynomial]):
        if len(coeffs) != context.size:
            raise ValidationError(f'expected {context.size} coefficients, got {len(coeffs)}')
        self.context = context
        self.coeffs = tuple(coeffs)

    def _check(self, other: 'RingElement'):
        if not isinstance(other, RingElement) or other.context != self.context:
            raise ValidationError('ring elements live in different contexts')

    def coefficient(self, index: int, q_power: int) -> Fraction:
        if not 0 <= index < self.context.size:
            return Fraction(0)
        return self.coeffs[index].coefficient(q_power)

    def terms(self) -> List[Tuple[int, int, Fraction]]:
        """(basis_index, q_power, value), ordered by q_power then basis_index."""
        out = [
            (index, power, value)
            for index, poly in enumerate(self.coeffs)
            for power, value in poly.items()
        ]
        return sorted(out, key=lambda t: (t[1], t[0]))

    def graded_degrees(self) -> set:
        d = self.context.space.d
        return {index + d * power for index, power, _ in self.terms()}

    def is_homogeneous(self) -> bool:
        return len(self.graded_degrees()) <= 1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def mod_q(self) -> 'RingElement':
        return RingElement(self.context, [QPolynomial.monomial(c.coefficient(0)) for c in self.coeffs])

    def times_q(self, power: int) -> 'RingElement':
        return RingElement(self.context, [c.shift(power) for c in self.coeffs])

    def scale(self, c: Scalar) -> 'RingElement':
        return RingElement(self.context, [p.scale(c) for p in self.coeffs])

    def __add__(self, other: 'RingElement') -> 'RingElement':
        self._check(other)
        return RingElement(self.context, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> 'RingElement':
        return self.scale(-1)

    def __sub__(self, other: 'RingElement') -> 'RingElement':
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return star_mul(self, other)
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> 'RingElement':
        return star_pow(self, n)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.context == other.context and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.context, self.coeffs))

    def __repr__(self):
        symbol = 'e' if self.context.basis is Basis.HSTAR else 'f'
        if self.is_zero():
            return f'RingElement[{self.context.basis.value}](0)'
        body = ' + '.join(f'{v}*q^{p}*{symbol}{i}' for i, p, v in self.terms())
        return f'RingElement[{self.context.basis.value}]({body})'


def _reduce(context: RingContext, powers: Dict[int, QPolynomial]) -> RingElement:
    r = context.space.r
    top = max(powers, default=0)
    for n in range(top, r, -1):
        c = powers.pop(n, None)
        if c is None or c.is_zero():
            continue
        offset = n - (r + 1)
        for e, rule in context.reduction.items():
            powers[offset + e] = powers.get(offset + e, QPolynomial()) + c * rule
    return RingElement(context, [powers.get(i, QPolynomial()) for i in range(r + 1)])


def star_mul(a: RingElement, b: RingElement) -> RingElement:
    a._check(b)
    product: Dict[int, QPolynomial] = {}
    for i, ca in enumerate(a.coeffs):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b.coeffs):
            if cb.is_zero():
                continue
            product[i + j] = product.get(i + j, QPolynomial()) + ca * cb
    return _reduce(a.context, product)


def star_pow(element: RingElement, n: int) -> RingElement:
    if n < 0:
        raise ValidationError(f'negative star power {n}')
    result = element.context.one()
    base = element
    while n:
        if n & 1:
            result = star_mul(result, base)
        n >>= 1
        if n:
            base = star_mul(base, base)
    return result


def _require_hstar(context: RingContext):
    if context.basis is not Basis.HSTAR:
        raise ValidationError('classical powers are expanded in the H_star basis only')


def classical_powers(context: RingContext, table: GWTable, upto: int) -> List[RingElement]:
    """[H^0, ..., H^upto] expanded in the H^{*i} basis.

    H^t = H * H^{t-1} - sum_{k=1}^{t/d} k alpha^k_{r-(t-kd)} q^k H^{t-kd}; the
    product with H only raises indices up to t <= r, so no reduction happens.
    """
    _require_hstar(context)
    r, d = context.space.r, context.space.d
    if not 0 <= upto <= r:
        raise ValidationError(f'classical power {upto} outside [0, {r}]')
    h = context.basis_element(1)
    powers = [context.one()]
    for t in range(1, upto + 1):
        value = star_mul(h, powers[t - 1])
        for k in range(1, t // d + 1):
            a = table.alpha(k, r - (t - k * d))
            if a:
                value = value - powers[t - k * d].times_q(k).scale(k * a)
        powers.append(value)
    return powers


def classical_to_star(context: RingContext, table: GWTable, t: int) -> RingElement:
    return classical_powers(context, table, t)[t]


def _compositions(j: int) -> Iterator[Tuple[int, ...]]:
    """Ordered tuples of positive integers summing to j."""
    for cuts in range(1 << (j - 1)):
        parts, last = [], 0
        for pos in range(1, j):
            if cuts & (1 << (pos - 1)):
                parts.append(pos - last)
                last = pos
        parts.append(j - last)
        yield tuple(parts)


def _nested_alpha_sum(table: GWTable, i: int, j: int) -> Fraction:
    """sum_l (-1)^l sum_{i_1+..+i_l=j} sum_{0<=u_l<=..<=u_1<=i-jd} prod_a i_a alpha^{i_a}_{r-(j-i_1-..-i_a)d-u_a}."""
    r, d = table.space.r, table.space.d
    bound = i - j * d
    if j < 1 or bound < 0:
        return Fraction(0)
    total = Fraction(0)
    for parts in _compositions(j):
        bases, partial = [], 0
        for part in parts:
            partial += part
            bases.append(r - (j - partial) * d)
        inner = Fraction(0)
        for increasing in itertools.combinations_with_replacement(range(bound + 1), len(parts)):
            u = increasing[::-1]
            term = Fraction(1)
            for part, base, u_a in zip(parts, bases, u):
                term *= part * table.alpha(part, base - u_a)
                if term == 0:
                    break
            inner += term
        total += (-1) ** len(parts) * inner
    return total


def hstar_coeff_closed_form(context: RingContext, table: GWTable, i: int, j: int) -> Fraction:
    """Coeff(H^i, q^j H^{*(i-jd)}) from the nested alpha sum."""
    if not 0 <= i <= context.space.r:
        return Fraction(0)
    return _nested_alpha_sum(table, i, j)


def hstar_top_closed_form(context: RingContext, table: GWTable, j: int) -> Fraction:
    """Coeff(H^{*(r+1)}, q^j H^{*(r+1-jd)}) from the nested alpha sum with bound r+1-jd."""
    return -_nested_alpha_sum(table, context.space.r + 1, j)


def hstar_top_coefficients(context: RingContext, table: GWTable) -> List[Fraction]:
    """Coeff(H^{*(r+1)}, q^j H^{*(r+1-jd)}) for j = 1..floor((r+1)/d), from GW data only."""
    _require_hstar(context)
    r, d = context.space.r, context.space.d
    powers = classical_powers(context, table, r)
    # H * H^r by the divisor equation; the classical H^{r+1} vanishes
    top = context.zero()
    for k in range(1, (r + 1) // d + 1):
        a = table.alpha(k, k * d - 1)
        if a:
            top = top + powers[r + 1 - k * d].times_q(k).scale(k * a)
    # H * e_r = H * H^r - sum_{p>0} c q^p e_{idx+1}; idx + 1 <= r since p > 0
    for index, power, value in powers[r].terms():
        if power > 0:
            top = top - context.basis_element(index + 1, value, power)
    return [top.coefficient(r + 1 - j * d, j) for j in range(1, (r + 1) // d + 1)]


def magic_top_coefficients(space: FanoSpace) -> List[Fraction]:
    """The same coefficients as predicted by the magic relations."""
    r, d = space.r, space.d
    m_m = space.m_power(1, 0)
    count = (r + 1) // d
    if not space.borderline:
        return [m_m] + [Fraction(0)] * (count - 1)
    mf = space.m_factorial
    return [
        math.comb(r, j - 1) * Fraction(mf) ** (j - 1) * (m_m - Fraction(mf * (r + 1), j))
        for j in range(1, count + 1)
    ]


def shift_basis(element: RingElement) -> RingElement:
    """H_star <-> H_shifted via H = (H+m!q) - m!q."""
    context = element.context
    space = context.space
    if not space.borderline:
        raise ValidationError(f'basis shift requested on strict Fano {space.label}')
    if context.basis is Basis.HSTAR:
        target, step = context.shifted(), -space.m_factorial
    else:
        target, step = context.hstar(), space.m_factorial
    out: List[QPolynomial] = [QPolynomial()] * context.size
    for i, c in enumerate(element.coeffs):
        if c.is_zero():
            continue
        for j in range(i + 1):
            factor = math.comb(i, j) * Fraction(step) ** (i - j)
            out[j] = out[j] + c.shift(i - j).scale(factor)
    return RingElement(target, out)


def point_class(context: RingContext, table: GWTable) -> RingElement:
    """P = m^{-1} H^r, in the basis of ``context``."""
    hstar = context.hstar()
    point = classical_to_star(hstar, table, context.space.r).scale(Fraction(1, context.space.deg_x))
    if context.basis is Basis.SHIFTED:
        return shift_basis(point)
    return point


def basis_identity_sums(r: int, j: int) -> Tuple[int, int]:
    """The two alternating binomial sums behind the change to the (H+m!q)^i basis; expected (1, r+1)."""
    first = second = 0
    for i in range(1, j + 1):
        term = math.comb(r, i - 1) * math.comb(r - i, j - i) * (-1) ** (j - i)
        first += term
        second += i * term
    return first, second

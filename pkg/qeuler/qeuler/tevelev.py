"""Virtual Tevelev degrees vTev_{g,n,k} = m^1 Coeff(P^{*n} * E^{*g}, q^k T^{*r}).

Strict Fano spaces work in the H^{*i} basis, borderline ones in (H+m!q)^{*i}
end to end. ``evaluate`` runs the ring computation and the closed formula and
insists that they agree.
"""
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import IdentityCheckError, ValidationError
from .euler import euler_closed
from .gw import GWTable
from .qring import RingContext, RingElement, point_class, shift_basis, star_pow
from .space import FanoSpace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TevelevQuery:
    g: int
    n: int
    k: int


@dataclass(frozen=True)
class TevelevBreakdown:
    space: FanoSpace
    query: TevelevQuery
    P: Tuple[Fraction, ...]
    b: Tuple[Fraction, ...]
    disc: Fraction
    value_direct: Fraction
    value_closed: Optional[Fraction] = None
    # terms of P^n * E^g that fall outside the b_i window: (basis_index, q_power, value)
    outside_window: Tuple[Tuple[int, int, Fraction], ...] = field(default_factory=tuple)
    # graded degrees (basis index + d * q-power) present in P^n * E^g
    grading: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def routes_agree(self) -> bool:
        return self.value_closed is not None and self.value_closed == self.value_direct

    def values(self) -> Tuple[Fraction, ...]:
        """Every rational the breakdown reports."""
        closed = () if self.value_closed is None else (self.value_closed,)
        return self.P + self.b + (self.disc, self.value_direct) + closed


def k_of(space: FanoSpace, g: int, n: int) -> int:
    """k[g,n] = r(n+g-1)/d."""
    if g < 0 or n < 1:
        raise ValidationError(f'genus must be >= 0 and point count >= 1, got g={g}, n={n}')
    num = space.r * (n + g - 1)
    if num % space.d:
        raise ValidationError(
            f'non-integral k: r(n+g-1)/d = {num}/{space.d}; no Tevelev degree for (g={g}, n={n})'
        )
    if 2 * g - 2 + n <= 0:
        raise ValidationError(f'stability fails: 2g-2+n = {2 * g - 2 + n} <= 0')
    return num // space.d


def make_query(space: FanoSpace, g: int, n: int) -> TevelevQuery:
    return TevelevQuery(g=g, n=n, k=k_of(space, g, n))


def valid_queries(space: FanoSpace, max_genus: int = 2, max_points: int = 4) -> List[TevelevQuery]:
    queries = []
    for g in range(max_genus + 1):
        for n in range(1, max_points + 1):
            try:
                queries.append(make_query(space, g, n))
            except ValidationError:
                continue
    return queries


def working_context(context: RingContext) -> RingContext:
    return context.shifted() if context.space.borderline else context.hstar()


def window(space: FanoSpace) -> range:
    """i = 0..floor(r/d), the range of P_i and b_i."""
    return range(space.r // space.d + 1)


def _coefficients(element: RingElement, q_offset: int) -> Tuple[Fraction, ...]:
    space = element.context.space
    return tuple(element.coefficient(space.r - i * space.d, i + q_offset) for i in window(space))


def tevelev_direct(context: RingContext, table: GWTable, query: TevelevQuery) -> TevelevBreakdown:
    space = context.space
    work = working_context(context)
    point = point_class(work, table)
    euler = euler_closed(context, table)
    if space.borderline:
        euler = shift_basis(euler)
    product = star_pow(point, query.n) * star_pow(euler, query.g)

    b = _coefficients(product, query.k)
    in_window = {(space.r - i * space.d, i + query.k) for i in window(space)}
    outside = tuple(t for t in product.terms() if (t[0], t[1]) not in in_window)
    if outside:
        logger.warning(f"{len(outside)} terms of P^{query.n}*E^{query.g} fall outside the b window")

    breakdown = TevelevBreakdown(
        space=space,
        query=query,
        P=_coefficients(point, 0),
        b=b,
        disc=Fraction(0),
        value_direct=space.deg_x * b[0],
        outside_window=outside,
        grading=tuple(sorted(product.graded_degrees())),
    )
    return replace(breakdown, disc=discrepancy(breakdown))


def discrepancy(breakdown: TevelevBreakdown) -> Fraction:
    """Disc = sum_{i>=1} b_i m^{-im+1}."""
    space = breakdown.space
    return sum(
        (b_i * space.m_power(-i, 1) for i, b_i in enumerate(breakdown.b) if i >= 1),
        Fraction(0),
    )


def genus_factor(space: FanoSpace) -> Fraction:
    if not space.borderline:
        return Fraction(space.d)
    excess = space.r + 1 - space.euler_char
    return 1 - space.m_power(-space.r, 0) * Fraction(space.m_factorial) ** space.r * excess


def closed_value(space: FanoSpace, P: Tuple[Fraction, ...], disc: Fraction, query: TevelevQuery) -> Fraction:
    point_sum = sum((p * space.m_power(-i, 0) for i, p in enumerate(P)), Fraction(0))
    return point_sum ** query.n * genus_factor(space) ** query.g * space.m_power(query.k, 1 - query.g) - disc


def tevelev_closed(context: RingContext, table: GWTable, query: TevelevQuery) -> Fraction:
    breakdown = tevelev_direct(context, table, query)
    return closed_value(context.space, breakdown.P, breakdown.disc, query)


def evaluate(context: RingContext, table: GWTable, query: TevelevQuery) -> TevelevBreakdown:
    breakdown = tevelev_direct(context, table, query)
    closed = closed_value(context.space, breakdown.P, breakdown.disc, query)
    result = replace(breakdown, value_closed=closed)
    if not result.routes_agree:
        raise IdentityCheckError(
            f'Tevelev routes disagree on {context.space.label} (g={query.g}, n={query.n}): '
            f'direct={breakdown.value_direct}, closed={closed}'
        )
    logger.info(f"vTev(g={query.g}, n={query.n}, k={query.k}) = {closed} on {context.space.label}")
    return result

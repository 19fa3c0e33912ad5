"""Quantum Euler class E of X.

Two independent routes:

* ``euler_closed``       the explicit formula in the H^{*i} basis (scalars only)
* ``euler_constructive`` E = Gamma + E', where E' = m^{-1} sum_i H^i * H^{r-i} and
  Gamma (the primitive part of the diagonal) is pinned down by H * Gamma = 0 and its
  classical term, so only the primitive rank is needed.
"""
import logging
import math
from fractions import Fraction
from typing import List

from .errors import ValidationError
from .gw import GWTable
from .qring import (
    RingContext,
    RingElement,
    classical_powers,
    hstar_top_coefficients,
    shift_basis,
    star_mul,
)
from .space import FanoSpace

logger = logging.getLogger(__name__)


def _require_borderline(space: FanoSpace):
    if not space.borderline:
        raise ValidationError(f'{space.label} is strict Fano; the shifted basis does not apply')


def euler_closed(context: RingContext, table: GWTable) -> RingElement:
    hstar = context.hstar()
    space = context.space
    r, d, chi = space.r, space.d, space.euler_char
    inv_m = Fraction(1, space.deg_x)
    terms = {(r, 0): inv_m * chi}
    if not space.borderline:
        terms[(r - d, 1)] = (d - chi) * space.m_power(1, -1)
    else:
        m_m = space.m_power(1, 0)
        mf = space.m_factorial
        for j in range(1, r + 1):
            bracket = m_m - Fraction(mf * (r + 1), j)
            terms[(r - j, j)] = inv_m * (j - chi) * math.comb(r, j - 1) * Fraction(mf) ** (j - 1) * bracket
    return hstar.element(terms)


def gamma_class(context: RingContext, table: GWTable) -> RingElement:
    """Gamma = a H^{*r} - a sum_j C_j q^j H^{*(r-jd)}, a = m^{-1}(chi - r - 1)."""
    hstar = context.hstar()
    space = context.space
    r, d = space.r, space.d
    a = Fraction(space.euler_char - r - 1, space.deg_x)
    top = hstar_top_coefficients(hstar, table)
    terms = {(r, 0): a}
    for j in range(1, r // d + 1):
        terms[(r - j * d, j)] = -a * top[j - 1]
    return hstar.element(terms)


def gamma_residual(context: RingContext, table: GWTable) -> RingElement:
    """H * Gamma as the H^{*i} basis forces it.

    Zero in every q-degree j <= floor(r/d). When d divides r+1 the relation
    leaves a C_J q^J e_0 with J = (r+1)/d; C_J vanishes on strict spaces, so
    only borderline spaces with nonzero primitive rank keep this term.
    """
    hstar = context.hstar()
    space = context.space
    r, d = space.r, space.d
    if (r + 1) % d:
        return hstar.zero()
    top_j = (r + 1) // d
    a = Fraction(space.euler_char - r - 1, space.deg_x)
    return hstar.basis_element(0, a * hstar_top_coefficients(hstar, table)[top_j - 1], top_j)


def euler_prime(context: RingContext, table: GWTable) -> RingElement:
    """E' = m^{-1} sum_{i=0}^{r} H^i * H^{r-i}."""
    hstar = context.hstar()
    r = context.space.r
    powers = classical_powers(hstar, table, r)
    total = hstar.zero()
    for i in range(r + 1):
        total = total + star_mul(powers[i], powers[r - i])
    return total.scale(Fraction(1, context.space.deg_x))


def euler_constructive(context: RingContext, table: GWTable) -> RingElement:
    value = gamma_class(context, table) + euler_prime(context, table)
    logger.debug(f"Constructive Euler class for {context.space.label}: {value}")
    return value


def diagonal_sums(context: RingContext, table: GWTable) -> List[Fraction]:
    """sum_i Coeff(H^i * H^{r-i}, q^j H^{*(r-jd)}) for j = 1..floor(r/d)."""
    hstar = context.hstar()
    r, d = context.space.r, context.space.d
    powers = classical_powers(hstar, table, r)
    sums = [Fraction(0)] * (r // d)
    for i in range(r + 1):
        product = star_mul(powers[i], powers[r - i])
        for j in range(1, r // d + 1):
            sums[j - 1] += product.coefficient(r - j * d, j)
    return sums


def euler_shifted(context: RingContext, table: GWTable) -> RingElement:
    _require_borderline(context.space)
    return shift_basis(euler_closed(context, table))


def euler_shifted_expected(space: FanoSpace) -> List[Fraction]:
    """Coeff(E, q^j (H+m!q)^{*(r-j)}) for j = 0..r, evaluated from scalars only."""
    _require_borderline(space)
    r, chi = space.r, space.euler_char
    inv_m = Fraction(1, space.deg_x)
    m_m = space.m_power(1, 0)
    mf = Fraction(space.m_factorial)
    excess = r + 1 - chi
    coeffs = [inv_m * chi, inv_m * excess * (m_m - mf) - space.m_power(1, -1) * r]
    for j in range(2, r + 1):
        coeffs.append(inv_m * mf ** (j - 1) * excess * (m_m - mf))
    return coeffs


def corollary_scalar(space: FanoSpace) -> Fraction:
    """lambda with (H+m!q)^{*r} * E = lambda (H+m!q)^{*2r}."""
    _require_borderline(space)
    excess = space.r + 1 - space.euler_char
    return Fraction(1, space.deg_x) - space.m_power(-space.r, -1) * Fraction(space.m_factorial) ** space.r * excess

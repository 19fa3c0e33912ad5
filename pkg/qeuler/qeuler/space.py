"""Fano complete intersections X = V(f_1,...,f_L) in P^{r+L}.

``validate_space`` is the only way to build a ``FanoSpace``; it checks the
hypotheses (r >= 3, every m_i >= 2, |m| <= r+L) and fills in every scalar
invariant the other modules read.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple

from .errors import ValidationError
from .series import TruncatedSeries, coefficient, invert_truncated, mul_truncated

logger = logging.getLogger(__name__)

# sorted ascending, every entry >= 2
DegreeVector = Tuple[int, ...]

MIN_DIMENSION = 3


@dataclass(frozen=True)
class FanoSpace:
    r: int
    degrees: DegreeVector
    codim: int
    total_degree: int
    fano_index: int
    deg_x: int
    m_factorial: int
    euler_char: int
    prim_rank: int
    borderline: bool

    @property
    def d(self) -> int:
        return self.fano_index

    @property
    def label(self) -> str:
        return f"X({','.join(str(m) for m in self.degrees)}) in P^{self.r + self.codim}"

    def m_power(self, a: int, b: int) -> Fraction:
        return m_power(self, a, b)


def canonical_degrees(degrees: Iterable[int]) -> DegreeVector:
    """Check and sort a degree list."""
    values = [int(m) for m in degrees]
    if not values:
        raise ValidationError('degree list is empty: at least one hypersurface is required')
    for m in values:
        if m < 2:
            raise ValidationError(
                f'degree {m} < 2 is not allowed (m_i = 1 only cuts a linear subspace and is '
                f'excluded by the hypotheses)'
            )
    return tuple(sorted(values))


def euler_characteristic(r: int, degrees: DegreeVector) -> int:
    """chi(X) = deg X * [x^r] (1+x)^{r+L+1} / prod_i (1+m_i x)."""
    codim = len(degrees)
    ambient = TruncatedSeries([Fraction(math.comb(r + codim + 1, e)) for e in range(r + 1)])
    denominator = TruncatedSeries.one(r)
    for m in degrees:
        denominator = mul_truncated(denominator, TruncatedSeries.linear(1, m, r), r)
    chern = mul_truncated(ambient, invert_truncated(denominator, r), r)
    value = math.prod(degrees) * coefficient(chern, r)
    if value.denominator != 1:
        # the Chern series has integer coefficients
        raise ValidationError(f'non-integral Euler characteristic {value} for r={r}, m={degrees}')
    return int(value)


def validate_space(r: int, degrees: Iterable[int]) -> FanoSpace:
    if r < MIN_DIMENSION:
        raise ValidationError(f'dimension r={r} is too small: r >= {MIN_DIMENSION} is required')
    dv = canonical_degrees(degrees)
    codim = len(dv)
    total = sum(dv)
    if total > r + codim:
        raise ValidationError(
            f'non-Fano complete intersection: |m|={total} > r+L={r + codim}'
        )
    chi = euler_characteristic(r, dv)
    prim = (-1) ** r * (chi - (r + 1))
    if prim < 0:
        raise ValidationError(f'negative primitive rank {prim} for r={r}, m={dv}')
    space = FanoSpace(
        r=r,
        degrees=dv,
        codim=codim,
        total_degree=total,
        fano_index=r + codim + 1 - total,
        deg_x=math.prod(dv),
        m_factorial=math.prod(math.factorial(m) for m in dv),
        euler_char=chi,
        prim_rank=prim,
        borderline=total == r + codim,
    )
    logger.debug(f"Validated {space.label}: d={space.d}, chi={chi}, prim_rank={prim}")
    return space


def m_power(space: FanoSpace, a: int, b: int) -> Fraction:
    """m^{am+b} = prod_i m_i^{a*m_i + b}, exact for negative exponents."""
    value = Fraction(1)
    for m in space.degrees:
        value *= Fraction(m) ** (a * m + b)
    return value

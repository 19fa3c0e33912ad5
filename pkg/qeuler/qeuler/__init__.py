"""Exact quantum Euler classes and virtual Tevelev degrees of Fano complete intersections."""
from .errors import (
    CacheError,
    IdentityCheckError,
    QEulerError,
    SeriesError,
    TableLimitError,
    ValidationError,
)
from .euler import euler_closed, euler_constructive, euler_shifted
from .gw import DescendantKey, GWTable
from .qring import Basis, RingContext, RingElement, shift_basis, star_mul
from .session import Session, open_session
from .space import FanoSpace, validate_space
from .tevelev import TevelevBreakdown, TevelevQuery, evaluate, make_query

__all__ = [
    'Basis',
    'CacheError',
    'DescendantKey',
    'FanoSpace',
    'GWTable',
    'IdentityCheckError',
    'QEulerError',
    'RingContext',
    'RingElement',
    'SeriesError',
    'Session',
    'TableLimitError',
    'TevelevBreakdown',
    'TevelevQuery',
    'ValidationError',
    'euler_closed',
    'euler_constructive',
    'euler_shifted',
    'evaluate',
    'make_query',
    'open_session',
    'shift_basis',
    'star_mul',
    'validate_space',
]

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest
import sympy as sp

from qeuler.errors import TableLimitError, ValidationError
from qeuler.gw import (
    DescendantKey,
    GWTable,
    base_descendant,
    default_k_max,
    denominator_divides_power,
    vdim_02,
)
from qeuler.space import validate_space


def sympy_hypergeometric(space, h, n):
    x = sp.symbols('x')
    expr = sp.Integer(1)
    for m in space.degrees:
        for ell in range(h * m + 1):
            expr *= m * x + ell
    for ell in range(1, h + 1):
        expr /= (x + ell) ** (space.r + space.codim + 1)
    value = sp.series(expr, x, 0, n + 1).removeO().coeff(x, n)
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def sympy_base(space, k, i):
    n = space.r + space.codim - i
    if not space.borderline:
        return sympy_hypergeometric(space, k, n)
    return sum(
        (Fraction((-space.m_factorial) ** (k - h), math.factorial(k - h)) * sympy_hypergeometric(space, h, n)
         for h in range(k + 1)),
        Fraction(0),
    )


def test_quadric_base_row():
    space = validate_space(3, [2])
    assert [base_descendant(space, 1, i) for i in range(4)] == [0, 8, -8, 4]


def test_quartic_base_row():
    space = validate_space(3, [4])
    assert [base_descendant(space, 1, i) for i in range(4)] == [0, -320, 320, 0]


@pytest.mark.parametrize('r, degrees, k', [
    (3, [2], 2),
    (3, [3], 2),
    (4, [2, 2], 2),
    (3, [4], 2),
    (3, [2, 3], 2),
    (5, [3, 4], 1),
])
def test_base_case_matches_symbolic_expansion(r, degrees, k):
    space = validate_space(r, degrees)
    for i in range(r + 1):
        assert base_descendant(space, k, i) == sympy_base(space, k, i)


def test_quadric_two_point_invariant():
    space = validate_space(3, [2])
    table = GWTable(space)
    # <H^2, H^3>_{0,1}
    assert table.descendant(DescendantKey.checked(space, 1, 0, 2, 3)) == 4
    assert table.alpha(1, 2) == 2
    assert table.alpha(1, 3) == 2
    assert table.alpha(1, 0) == 0


def test_out_of_range_exponents_vanish():
    space = validate_space(3, [2])
    table = GWTable(space)
    assert table.descendant(DescendantKey(1, 0, 4)) == 0
    assert table.descendant(DescendantKey(1, 9, 0)) == 0
    assert table.alpha(1, 7) == 0


def test_table_bounds():
    space = validate_space(3, [3])
    table = GWTable(space)
    assert table.k_max == default_k_max(space) == 2
    with pytest.raises(TableLimitError):
        table.descendant(DescendantKey(3, 0, 0))
    with pytest.raises(ValidationError):
        table.descendant(DescendantKey(0, 0, 0))
    table.grow(3)
    assert table.k_max == 3
    table.descendant(DescendantKey(3, 0, 3))
    table.grow(1)
    assert table.k_max == 3


def test_vdim_and_key_helpers():
    space = validate_space(3, [2])
    assert vdim_02(space, 2) == 8
    key = DescendantKey.parse('2,1,3')
    assert key == DescendantKey(2, 1, 3)
    assert key.as_string() == '2,1,3'
    assert key.j(space) == 4
    with pytest.raises(ValidationError):
        DescendantKey.checked(space, 1, 0, 2, 2)
    with pytest.raises(ValidationError):
        vdim_02(space, 0)


def test_degree_one_invariants_are_integers(grid_space):
    table = GWTable(grid_space)
    r, d = grid_space.r, grid_space.d
    for a in range(r + d):
        for i in range(r + 1):
            assert table.descendant(DescendantKey(1, a, i)).denominator == 1


def test_alpha_symmetry(grid_space):
    table = GWTable(grid_space, k_max=3)
    r, d = grid_space.r, grid_space.d
    for k in range(1, 4):
        for s in range(r + 1):
            partner = k * d + r - s - 1
            if 0 <= partner <= r:
                assert table.alpha(k, s) == table.alpha(k, partner)


def test_fresh_table_reproduces_memo():
    space = validate_space(3, [4])
    table = GWTable(space)
    for k in range(1, table.k_max + 1):
        for s in range(space.r + 1):
            table.alpha(k, s)
    fresh = GWTable(space)
    for key, value in table.items():
        assert fresh.descendant(key) == value


def test_merge_and_clear():
    space = validate_space(3, [2])
    table = GWTable(space)
    added = table.merge([(DescendantKey(1, 0, 2), Fraction(4)), (DescendantKey(2, 0, 3), Fraction(1))])
    assert added == 2
    assert table.k_max == 2
    assert table.merge([(DescendantKey(1, 0, 2), Fraction(4))]) == 0
    assert DescendantKey(1, 0, 2) in table
    table.clear()
    assert len(table) == 0


def test_concurrent_queries_match_sequential():
    space = validate_space(3, [4])
    keys = [DescendantKey(k, 0, i) for k in range(1, 5) for i in range(4)]
    sequential = GWTable(space)
    expected = [sequential.descendant(key) for key in keys]
    shared = GWTable(space)
    with ThreadPoolExecutor(max_workers=4) as ex:
        got = list(ex.map(shared.descendant, keys))
    assert got == expected


def test_unit_insertion_without_psi_vanishes(borderline_space):
    # <tau_0(H^r), 1>_{0,1} = 0 by the string equation
    assert base_descendant(borderline_space, 1, borderline_space.r) == 0


def test_psi_descendants_carry_factorial_denominators():
    # x^1 coefficient of 16x(2x+1)(2x+3)(2x+5) / ((x+1)(x+2)(x+3))^4
    quadric = validate_space(3, [2])
    value = base_descendant(quadric, 3, 3)
    assert value == Fraction(5, 27)
    assert not denominator_divides_power(value, quadric.deg_x)


def test_denominator_divides_power():
    assert denominator_divides_power(Fraction(3, 8), 2)
    assert denominator_divides_power(Fraction(7, 36), 6)
    assert denominator_divides_power(Fraction(5), 1)
    assert not denominator_divides_power(Fraction(1, 12), 4)
    assert not denominator_divides_power(Fraction(1, 2), 1)


def test_primary_invariants_live_in_localization(grid_space):
    table = GWTable(grid_space)
    for k in range(1, table.k_max + 1):
        for s in range(grid_space.r + 1):
            assert denominator_divides_power(table.alpha(k, s), grid_space.deg_x)
    primary = [(key, value) for key, value in table.items() if key.a == 0]
    assert primary
    for key, value in primary:
        assert denominator_divides_power(value, grid_space.deg_x), key


def test_splitting_term_keeps_symmetry_beyond_degree_two():
    quartic = validate_space(3, [4])
    table = GWTable(quartic, k_max=3)
    # alpha^3_s pairs s with 3d + r - s - 1 = 5 - s
    assert table.alpha(3, 2) == table.alpha(3, 3)

from fractions import Fraction

import pytest

from qeuler.errors import ValidationError
from qeuler.euler import (
    corollary_scalar,
    diagonal_sums,
    euler_closed,
    euler_constructive,
    euler_prime,
    euler_shifted,
    euler_shifted_expected,
    gamma_class,
    gamma_residual,
)
from qeuler.gw import GWTable
from qeuler.qring import RingContext, hstar_top_coefficients, star_mul, star_pow


def test_quadric_euler_class(quadric):
    ctx, table = quadric
    expected = ctx.element({(3, 0): 2, (0, 1): -2})
    assert euler_closed(ctx, table) == expected
    assert euler_constructive(ctx, table) == expected


def test_cubic_euler_class(cubic):
    ctx, table = cubic
    assert euler_closed(ctx, table) == ctx.element({(3, 0): -2, (1, 1): 72})


def test_quartic_euler_class(quartic):
    ctx, table = quartic
    e = euler_closed(ctx, table)
    assert e.coefficient(3, 0) == -14
    assert e.coefficient(2, 1) == 2280
    assert euler_constructive(ctx, table) == e


def test_quartic_shifted_euler_class(quartic):
    ctx, table = quartic
    shifted = euler_shifted(ctx, table)
    assert shifted.coefficient(3, 0) == -14
    assert shifted.coefficient(2, 1) == 3288
    assert shifted.coefficient(1, 2) == 83520
    assert euler_shifted_expected(ctx.space)[:3] == [-14, 3288, 83520]


def test_shifted_euler_class_needs_borderline(cubic):
    ctx, table = cubic
    with pytest.raises(ValidationError):
        euler_shifted(ctx, table)
    with pytest.raises(ValidationError):
        corollary_scalar(ctx.space)


def test_routes_agree(grid_space):
    ctx, table = RingContext(grid_space), GWTable(grid_space)
    assert euler_closed(ctx, table) == euler_constructive(ctx, table)


def test_leading_coefficient(grid_space):
    ctx, table = RingContext(grid_space), GWTable(grid_space)
    e = euler_closed(ctx, table)
    assert e.coefficient(grid_space.r, 0) == Fraction(grid_space.euler_char, grid_space.deg_x)
    assert e.mod_q() == euler_prime(ctx, table).mod_q() + gamma_class(ctx, table).mod_q()
    assert e.is_homogeneous()


def test_h_times_gamma(grid_space):
    ctx, table = RingContext(grid_space), GWTable(grid_space)
    product = star_mul(ctx.basis_element(1), gamma_class(ctx, table))
    assert product == gamma_residual(ctx, table)
    if not grid_space.borderline:
        assert product.is_zero()


def test_quartic_gamma_residual(quartic):
    ctx, table = quartic
    # a = (chi - r - 1)/m = -15, C_4 = 3207168
    assert gamma_residual(ctx, table) == ctx.basis_element(0, -15 * 3207168, 4)


def test_diagonal_sums(grid_space):
    ctx, table = RingContext(grid_space), GWTable(grid_space)
    r, d = grid_space.r, grid_space.d
    top = hstar_top_coefficients(ctx, table)
    assert diagonal_sums(ctx, table) == [-(r - j * d + 1) * top[j - 1] for j in range(1, r // d + 1)]


def test_shifted_coefficients(borderline_space):
    ctx, table = RingContext(borderline_space), GWTable(borderline_space)
    r = borderline_space.r
    shifted = euler_shifted(ctx, table)
    assert [shifted.coefficient(r - j, j) for j in range(r + 1)] == euler_shifted_expected(borderline_space)


def test_shifted_power_times_euler(borderline_space):
    ctx, table = RingContext(borderline_space), GWTable(borderline_space)
    r = borderline_space.r
    f_r = ctx.shifted().basis_element(r)
    lhs = star_mul(f_r, euler_shifted(ctx, table))
    rhs = star_pow(f_r, 2).scale(corollary_scalar(borderline_space))
    assert lhs == rhs

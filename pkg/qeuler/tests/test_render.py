import csv
import io
import json
from fractions import Fraction

import pytest

from qeuler.euler import euler_closed
from qeuler.render import (
    document,
    element_block,
    error_document,
    format_rational,
    parse_rational,
    render,
    space_block,
)


@pytest.mark.parametrize('value, text', [
    (Fraction(3, 1), '3'),
    (Fraction(-1, 2), '-1/2'),
    (0, '0'),
    (Fraction(6, 4), '3/2'),
])
def test_format_rational(value, text):
    assert format_rational(value) == text
    assert parse_rational(text) == value


@pytest.mark.parametrize('text', ['1.5', '1/0', 'a/b', '', '1/-2', 3])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_element_block_order(quadric):
    ctx, table = quadric
    block = element_block(euler_closed(ctx, table))
    assert block['basis'] == 'H_star'
    assert [(c['q_power'], c['basis_index'], c['value']) for c in block['coefficients']] == [
        (0, 3, '2'),
        (1, 0, '-2'),
    ]


def test_space_block(quartic):
    ctx, _ = quartic
    block = space_block(ctx.space)
    assert block['euler_char'] == -56
    assert block['borderline'] is True
    assert block['deg_X'] == 4


def test_json_is_deterministic(quadric):
    ctx, table = quadric
    doc = document('euler', ctx.space, {'E': element_block(euler_closed(ctx, table))})
    first = render(doc, 'json')
    assert first == render(json.loads(first), 'json')
    assert json.loads(first)['schema'] == 1


def test_csv_rows(quadric):
    ctx, table = quadric
    doc = document('euler', ctx.space, {'E': element_block(euler_closed(ctx, table))})
    rows = list(csv.reader(io.StringIO(render(doc, 'csv'))))
    assert rows[0] == ['section', 'basis', 'q_power', 'basis_index', 'value']
    assert ['euler.E', 'H_star', '0', '3', '2'] in rows
    assert ['euler.E', 'H_star', '1', '0', '-2'] in rows
    assert ['space.euler_char', '', '', '', '4'] in rows


def test_text_rendering(quadric):
    ctx, table = quadric
    doc = document('verify', ctx.space, {'checks': [{'name': 'ring_axioms', 'passed': True, 'detail': ''}]})
    text = render(doc, 'text')
    assert 'chi(X) = 4' in text
    assert '[PASS] ring_axioms' in text


def test_error_document():
    doc = error_document('validation', 'bad input')
    assert json.loads(render(doc, 'json')) == {'schema': 1, 'error': {'kind': 'validation', 'message': 'bad input'}}
    assert render(doc, 'text') == 'error (validation): bad input\n'


def test_unknown_format():
    with pytest.raises(ValueError):
        render(error_document('x', 'y'), 'xml')

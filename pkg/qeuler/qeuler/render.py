"""Output documents: canonical rational strings, JSON / CSV / text rendering.

JSON is the canonical format (sorted keys, stable bytes). CSV flattens every
ring element into (basis, q_power, basis_index, value) rows. Text is for people
and carries no stability promise.
"""
import csv
import io
import json
import re
from fractions import Fraction
from typing import Any, Dict, List

from .qring import RingElement
from .space import FanoSpace
from .tevelev import TevelevBreakdown

SCHEMA_VERSION = 1
FORMATS = ('json', 'csv', 'text')

_RATIONAL = re.compile(r'^-?\d+(/[1-9]\d*)?$')

TEXT_HEADER = '''{label}
  dim r = {dim}, degrees m = {degrees}, codim L = {codim}
  Fano index d = {fano_index}{case}
  deg X = {deg_x}, m! = {m_factorial}
  chi(X) = {euler_char}, primitive rank = {prim_rank}
'''

TEXT_ELEMENT = '''{name} [{basis}]
{lines}
'''

TEXT_CHECK = '  [{status}] {name}{detail}'


def format_rational(value) -> str:
    """'p/q', or 'p' when q = 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.match(text.strip()):
        raise ValueError(f'malformed rational string {text!r}')
    return Fraction(text.strip())


def space_block(space: FanoSpace) -> Dict[str, Any]:
    return {
        'dim': space.r,
        'degrees': list(space.degrees),
        'codim': space.codim,
        'total_degree': space.total_degree,
        'fano_index': space.fano_index,
        'deg_X': space.deg_x,
        'm_factorial': space.m_factorial,
        'euler_char': space.euler_char,
        'prim_rank': space.prim_rank,
        'borderline': space.borderline,
    }


def element_block(element: RingElement) -> Dict[str, Any]:
    return {
        'basis': element.context.basis.value,
        'coefficients': [
            {'basis_index': index, 'q_power': power, 'value': format_rational(value)}
            for index, power, value in element.terms()
        ],
    }


def breakdown_block(breakdown: TevelevBreakdown) -> Dict[str, Any]:
    query = breakdown.query
    return {
        'g': query.g,
        'n': query.n,
        'k': query.k,
        'P': [format_rational(p) for p in breakdown.P],
        'b': [format_rational(b) for b in breakdown.b],
        'disc': format_rational(breakdown.disc),
        'value': format_rational(breakdown.value_direct),
        'value_closed': None if breakdown.value_closed is None else format_rational(breakdown.value_closed),
        'routes_agree': breakdown.routes_agree,
        'outside_window': [
            {'basis_index': index, 'q_power': power, 'value': format_rational(value)}
            for index, power, value in breakdown.outside_window
        ],
    }


def document(command: str, space: FanoSpace, payload: Dict[str, Any]) -> Dict[str, Any]:
    return {
        'schema': SCHEMA_VERSION,
        'command': command,
        'space': space_block(space),
        'payload': payload,
    }


def error_document(kind: str, message: str) -> Dict[str, Any]:
    return {'schema': SCHEMA_VERSION, 'error': {'kind': kind, 'message': message}}


def _is_element(obj) -> bool:
    return isinstance(obj, dict) and set(obj) == {'basis', 'coefficients'}


def _flatten(section: str, obj: Any, rows: List[List[Any]]):
    if _is_element(obj):
        for c in obj['coefficients']:
            rows.append([section, obj['basis'], c['q_power'], c['basis_index'], c['value']])
    elif isinstance(obj, dict):
        for key in sorted(obj):
            _flatten(f'{section}.{key}' if section else str(key), obj[key], rows)
    elif isinstance(obj, list):
        for idx, item in enumerate(obj):
            _flatten(f'{section}[{idx}]', item, rows)
    else:
        rows.append([section, '', '', '', '' if obj is None else obj])


def to_csv(doc: Dict[str, Any]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(['section', 'basis', 'q_power', 'basis_index', 'value'])
    rows: List[List[Any]] = []
    if 'space' in doc:
        _flatten('space', doc['space'], rows)
    if 'payload' in doc:
        _flatten(doc.get('command', 'payload'), doc['payload'], rows)
    if 'error' in doc:
        _flatten('error', doc['error'], rows)
    writer.writerows(rows)
    return buf.getvalue()


def _element_text(name: str, block: Dict[str, Any]) -> str:
    symbol = 'e' if block['basis'] == 'H_star' else 'f'
    lines = [
        f"  {c['value']:>24}  q^{c['q_power']} {symbol}{c['basis_index']}"
        for c in block['coefficients']
    ] or ['  0']
    return TEXT_ELEMENT.format(name=name, basis=block['basis'], lines='\n'.join(lines))


def to_text(doc: Dict[str, Any]) -> str:
    if 'error' in doc:
        return f"error ({doc['error']['kind']}): {doc['error']['message']}\n"
    space = doc['space']
    out = [TEXT_HEADER.format(
        label=f"{doc['command']}: X({','.join(map(str, space['degrees']))}) in P^{space['dim'] + space['codim']}",
        dim=space['dim'],
        degrees=space['degrees'],
        codim=space['codim'],
        fano_index=space['fano_index'],
        case=' (borderline)' if space['borderline'] else '',
        deg_x=space['deg_X'],
        m_factorial=space['m_factorial'],
        euler_char=space['euler_char'],
        prim_rank=space['prim_rank'],
    )]
    payload = doc['payload']
    for key in sorted(payload):
        value = payload[key]
        if _is_element(value):
            out.append(_element_text(key, value))
        elif key == 'checks':
            for check in value:
                detail = f" - {check['detail']}" if check.get('detail') else ''
                out.append(TEXT_CHECK.format(
                    status='PASS' if check['passed'] else 'FAIL', name=check['name'], detail=detail))
        else:
            out.append(f'{key}: {json.dumps(value, sort_keys=True)}')
    return '\n'.join(out) + '\n'


def render(doc: Dict[str, Any], fmt: str = 'json') -> str:
    if fmt == 'json':
        return json.dumps(doc, indent=2, sort_keys=True) + '\n'
    if fmt == 'csv':
        return to_csv(doc)
    if fmt == 'text':
        return to_text(doc)
    raise ValueError(f'unknown output format {fmt!r}; expected one of {FORMATS}')

"""Persistent GW cache: one JSON file per space.

    {"schema": 1, "dim": r, "degrees": [...], "entries": {"k,a,i": "p/q", ...}}

Entries are written in key order so that diffs between runs stay small.
"""
import json
import logging
from pathlib import Path
from typing import Union

from .errors import CacheError
from .gw import DescendantKey, GWTable
from .render import SCHEMA_VERSION, format_rational, parse_rational

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _header(table: GWTable) -> dict:
    return {'schema': SCHEMA_VERSION, 'dim': table.space.r, 'degrees': list(table.space.degrees)}


def save_table(path: PathLike, table: GWTable) -> Path:
    p = Path(path)
    doc = _header(table)
    doc['entries'] = {key.as_string(): format_rational(value) for key, value in table.items()}
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(doc, indent=2) + '\n', encoding='utf-8')
    logger.info(f"Saved {len(doc['entries'])} GW entries to {p}")
    return p


def load_table(path: PathLike, table: GWTable) -> int:
    """Merge the entries of ``path`` into ``table``; returns how many keys were new."""
    p = Path(path)
    try:
        doc = json.loads(p.read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise CacheError(f'cache file {p} is not valid JSON: {e}') from e

    expected = _header(table)
    found = {name: doc.get(name) for name in expected}
    if found != expected:
        raise CacheError(f'cache header {found} does not match the active space {expected}')

    entries = []
    for text, value in (doc.get('entries') or {}).items():
        try:
            entries.append((DescendantKey.parse(text), parse_rational(value)))
        except ValueError as e:
            raise CacheError(f'bad cache entry {text!r}: {value!r} ({e})') from e
    added = table.merge(entries)
    logger.info(f"Loaded {added} new GW entries from {p}")
    return added


def cache_io(path: PathLike, table: GWTable, mode: str = 'load') -> GWTable:
    if mode == 'load':
        load_table(path, table)
    elif mode == 'save':
        save_table(path, table)
    else:
        raise ValueError(f"cache mode must be 'load' or 'save', not {mode!r}")
    return table

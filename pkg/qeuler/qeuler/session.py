"""Shared state for one run: the validated space, its GW table and ring contexts."""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .cache import load_table, save_table
from .gw import GWTable
from .qring import RingContext
from .space import FanoSpace, validate_space

logger = logging.getLogger(__name__)


@dataclass
class Session:
    space: FanoSpace
    table: GWTable
    cache_path: Optional[Path] = None
    loaded_entries: int = 0

    @property
    def hstar(self) -> RingContext:
        return RingContext(self.space)

    @property
    def working(self) -> RingContext:
        """H_shifted on borderline spaces, H_star otherwise."""
        return self.hstar.shifted() if self.space.borderline else self.hstar

    def save(self):
        if self.cache_path is not None:
            save_table(self.cache_path, self.table)


def open_session(dim: int, degrees: Iterable[int], cache: Optional[str] = None,
                 k_max: Optional[int] = None) -> Session:
    space = validate_space(dim, degrees)
    session = Session(space=space, table=GWTable(space, k_max), cache_path=Path(cache) if cache else None)
    if session.cache_path is not None and session.cache_path.exists():
        session.loaded_entries = load_table(session.cache_path, session.table)
        logger.info(f"Loaded {session.loaded_entries} GW entries from {session.cache_path}")
    logger.info(f"Session opened for {space.label} (d={space.d}, chi={space.euler_char})")
    return session

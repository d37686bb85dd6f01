"""
Cache Helper Utilities
Memo tables keyed by (canonical form, r). Entries are deterministic, so a
concurrent writer can only ever store the value that is already there.
"""

import logging
from typing import Any, Callable, Dict, Hashable, Optional

logger = logging.getLogger(__name__)


class MemoTable:
    """
    Map from a hashable key (canonical form plus parameters) to a computed value.
    Hit/miss counters are kept for the --verbose cache report.
    """

    def __init__(self, name: str):
        self.name = name
        self._entries: Dict[Hashable, Any] = {}
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> Optional[Any]:
        value = self._entries.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def set(self, key: Hashable, value: Any) -> None:
        self._entries[key] = value

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """Return the cached value or compute, store and return it."""
        value = self.get(key)
        if value is None:
            value = compute()
            self.set(key, value)
        return value

    def invalidate(self, predicate: Optional[Callable[[Hashable], bool]] = None) -> int:
        """
        Drop entries. With no predicate the whole table is cleared.

        Returns:
            int: number of entries removed
        """
        if predicate is None:
            removed = len(self._entries)
            self._entries.clear()
        else:
            doomed = [k for k in self._entries if predicate(k)]
            for k in doomed:
                del self._entries[k]
            removed = len(doomed)
        return removed

    def __len__(self) -> int:
        return len(self._entries)

    def stats(self) -> Dict[str, int]:
        return {"entries": len(self._entries), "hits": self.hits, "misses": self.misses}


# Process-wide tables, one per kind of memoized value
_tables: Dict[str, MemoTable] = {}


def get_table(name: str) -> MemoTable:
    """Get (creating on first use) the shared memo table with this name."""
    if name not in _tables:
        _tables[name] = MemoTable(name)
    return _tables[name]


def clear_all_caches() -> None:
    """Clear every shared memo table."""
    for table in _tables.values():
        table.invalidate()
    logger.info("All memo tables cleared")


def get_cache_stats() -> Dict[str, Dict[str, int]]:
    """Get per-table statistics for monitoring."""
    return {name: table.stats() for name, table in _tables.items()}

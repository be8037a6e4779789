"""Process-wide memo for immutable numeric tables.

Dense projectors, transfer tables and bilayer tensors are pure functions of
small integer keys; they are built once and shared. Values are frozen
(read-only arrays or tuples) before they are stored.
"""
import threading
from dataclasses import dataclass
from typing import Any, Callable, Dict, Hashable, Optional

import numpy as np


@dataclass
class CacheEntry:
    value: Any
    hits: int = 0


class TableCache:
    def __init__(self, name: str):
        self.name = name
        self._entries: Dict[Hashable, CacheEntry] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)


def _freeze(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        value.setflags(write=False)
    return value


def cache_set(cache: TableCache, key: Hashable, value: Any) -> Any:
    """Store a value; the first writer wins if two threads race."""
    with cache._lock:
        entry = cache._entries.get(key)
        if entry is None:
            entry = CacheEntry(value=_freeze(value))
            cache._entries[key] = entry
        return entry.value


def cache_get(cache: TableCache, key: Hashable) -> Optional[Any]:
    with cache._lock:
        entry = cache._entries.get(key)
        if entry is None:
            return None
        entry.hits += 1
        return entry.value


def cache_invalidate(cache: TableCache, key: Optional[Hashable] = None) -> None:
    """Drop one key, or everything when key is None."""
    with cache._lock:
        if key is None:
            cache._entries.clear()
        else:
            cache._entries.pop(key, None)


def cached_table(cache: TableCache, key: Hashable, build: Callable[[], Any]) -> Any:
    """Return the cached value for key, building it outside the lock on a miss."""
    value = cache_get(cache, key)
    if value is not None:
        return value
    return cache_set(cache, key, build())

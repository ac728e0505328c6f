"""
utils_cache.py - append-only JSON-lines cache of property reports.

Each line is one JSON object keyed by (ring text, property, degree, tool
version). Lookups read the whole file once; appends go through a lock so
concurrent search workers never interleave lines. Reports that ran out of
budget are never cached.
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import json
import pathlib
import threading
from typing import Any, Dict, Optional, Tuple

# Import functions from local modules
from utils.utils_config import TOOL_VERSION
from utils.utils_logger import logger

CacheKey = Tuple[str, str, Optional[int], str]


def cache_key(ring_text: str, prop: str, degree: Optional[int], version: str = TOOL_VERSION) -> CacheKey:
    return (ring_text, prop, degree, version)


class ResultCache:
    """Reads existing lines on open; `put` appends one line per new entry."""

    def __init__(self, path: pathlib.Path):
        self.path = pathlib.Path(path)
        self._lock = threading.Lock()
        self._entries: Dict[CacheKey, Dict[str, Any]] = {}
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        with self.path.open("r", encoding="utf-8") as handle:
            for number, line in enumerate(handle, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                    key = cache_key(entry["ring"], entry["property"], entry.get("degree"), entry["version"])
                except (json.JSONDecodeError, KeyError) as e:
                    logger.warning(f"Skipping bad cache line {number} in {self.path}: {e}")
                    continue
                self._entries[key] = entry
        logger.info(f"Loaded {len(self._entries)} cached results from {self.path}")

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, ring_text: str, prop: str, degree: Optional[int]) -> Optional[Dict[str, Any]]:
        return self._entries.get(cache_key(ring_text, prop, degree))

    def put(self, ring_text: str, prop: str, degree: Optional[int], report: Dict[str, Any]) -> None:
        if report.get("verdict") == "budget-exhausted":
            return
        key = cache_key(ring_text, prop, degree)
        entry = dict(report)
        entry.update({"ring": ring_text, "property": prop, "degree": degree, "version": TOOL_VERSION})
        with self._lock:
            if key in self._entries:
                return
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(json.dumps(entry, sort_keys=True) + "\n")
            self._entries[key] = entry
        logger.debug(f"Cached {prop} for {ring_text}")

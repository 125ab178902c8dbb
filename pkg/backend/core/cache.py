import json
import logging
import os
import tempfile
from typing import Any, Dict, Optional

from .config import settings

logger = logging.getLogger(__name__)

CACHE_FILE = "branching.json"


class CacheManager:
    def __init__(self, cache_dir: Optional[str] = None, enabled: Optional[bool] = None):
        self.cache_dir = cache_dir or settings.QTNO_CACHE_DIR
        self.enabled = settings.CACHE_ENABLED if enabled is None else enabled
        self.entries: Optional[Dict[str, Any]] = None
        self.dirty = False

    @property
    def path(self) -> str:
        return os.path.join(self.cache_dir, CACHE_FILE)

    def _header(self) -> Dict[str, Any]:
        return {
            "format_version": settings.CACHE_FORMAT_VERSION,
            "engine_version": settings.ENGINE_VERSION,
        }

    def init_entries(self) -> Dict[str, Any]:
        """Load the cache file on first use"""
        if self.entries is None:
            self.entries = {}
            if self.enabled and os.path.exists(self.path):
                try:
                    with open(self.path, "r", encoding="utf-8") as handle:
                        payload = json.load(handle)
                    if payload.get("header") == self._header():
                        self.entries = payload.get("entries", {})
                    else:
                        logger.warning("Ignoring cache with mismatched header at %s", self.path)
                        self.dirty = True
                except (OSError, ValueError) as e:
                    logger.warning("Ignoring unreadable cache %s: %s", self.path, e)
        return self.entries

    def load(self, key: str) -> Optional[Any]:
        if not self.enabled:
            return None
        return self.init_entries().get(key)

    def store(self, key: str, value: Any) -> None:
        if not self.enabled:
            return
        self.init_entries()[key] = value
        self.dirty = True

    def flush(self) -> None:
        """Write pending entries atomically"""
        if not (self.enabled and self.dirty and self.entries is not None):
            return
        try:
            os.makedirs(self.cache_dir, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump({"header": self._header(), "entries": self.entries}, handle, sort_keys=True)
            os.replace(tmp, self.path)
            self.dirty = False
        except OSError as e:
            logger.warning("Could not write cache %s: %s", self.path, e)

    def clear(self) -> int:
        """Remove the cache file; returns the number of entries dropped"""
        count = len(self.init_entries())
        self.entries = {}
        self.dirty = False
        if os.path.exists(self.path):
            os.remove(self.path)
        return count

    def stat(self) -> Dict[str, Any]:
        entries = self.init_entries()
        size = os.path.getsize(self.path) if os.path.exists(self.path) else 0
        return {"path": self.path, "entries": len(entries), "bytes": size, "enabled": self.enabled}

    def configure(self, cache_dir: Optional[str] = None, enabled: Optional[bool] = None) -> None:
        """Point the manager at another directory, dropping anything loaded"""
        self.flush()
        if cache_dir is not None:
            self.cache_dir = cache_dir
        if enabled is not None:
            self.enabled = enabled
        self.entries = None
        self.dirty = False

# Create a global cache manager instance
cache_manager = CacheManager()

def get_cache() -> CacheManager:
    """Get cache manager instance"""
    return cache_manager

def flush_cache():
    """Write pending cache entries"""
    cache_manager.flush()

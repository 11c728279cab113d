import logging
import threading
from collections import OrderedDict

logger = logging.getLogger(__name__)

DEFAULT_MAX_ENTRIES = 16


class FeatureCache:
    """
    In-process LRU memo for reference-image analyses.

    Benchmark manifests reuse each reference image for many distorted
    images; caching its features and histogram per worker avoids decoding
    and decomposing it again for every record.
    """

    def __init__(self, max_entries=DEFAULT_MAX_ENTRIES):
        self.max_entries = max_entries
        self._entries = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key):
        with self._lock:
            if key in self._entries:
                self._entries.move_to_end(key)
                self.hits += 1
                logger.debug(f"Cache HIT for {key}")
                return self._entries[key]
            self.misses += 1
            logger.debug(f"Cache MISS for {key}")
            return None

    def set(self, key, value):
        if self.max_entries <= 0:
            return
        with self._lock:
            self._entries[key] = value
            self._entries.move_to_end(key)
            while len(self._entries) > self.max_entries:
                evicted, _ = self._entries.popitem(last=False)
                logger.debug(f"Evicted {evicted} from feature cache")

    def delete(self, key):
        with self._lock:
            self._entries.pop(key, None)

    def clear(self):
        with self._lock:
            self._entries.clear()
            self.hits = 0
            self.misses = 0

    def __len__(self):
        return len(self._entries)

    def stats(self):
        """Cache usage statistics."""
        lookups = self.hits + self.misses
        return {
            "entries": len(self._entries),
            "max_entries": self.max_entries,
            "hits": self.hits,
            "misses": self.misses,
            "hit_rate": self.hits / lookups if lookups else 0.0,
        }


# Initialize cache instance
cache = FeatureCache()


def configure_cache(max_entries):
    """Resize the process-wide cache, dropping its current contents."""
    cache.clear()
    cache.max_entries = max_entries


def cache_key_for_reference(path, fingerprint):
    """Key a reference file by identity, size, mtime and scoring config."""
    stat = path.stat()
    return f"ref:{path.resolve()}:{stat.st_size}:{stat.st_mtime_ns}:{fingerprint}"


def cached_reference(path, fingerprint, compute):
    """
    Return the cached analysis for ``path`` or compute and store it.

    Args:
        path: pathlib.Path of the reference image
        fingerprint: Scoring-config fingerprint
        compute: Callable taking the path and returning the analysis
    """
    key = cache_key_for_reference(path, fingerprint)
    result = cache.get(key)
    if result is not None:
        return result
    result = compute(path)
    cache.set(key, result)
    return result

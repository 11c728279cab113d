"""
Process-level services shared by the scoring pipeline.
"""

from waveliq.services.cache import (
    FeatureCache,
    cache,
    cache_key_for_reference,
    cached_reference,
    configure_cache,
)

__all__ = [
    'FeatureCache',
    'cache',
    'cache_key_for_reference',
    'cached_reference',
    'configure_cache',
]

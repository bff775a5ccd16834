"""
App-level defaults for the ``HYPERLAB_*`` settings.

Project settings override any of these; engine code reads them through
:func:`setting` so that ``override_settings`` works in tests.
"""

from django.conf import settings

DEFAULTS = {
    "HYPERLAB_MAX_GROUND": 16,
    "HYPERLAB_PRODUCT_LIMIT": 4096,
    "HYPERLAB_DERIVE_MAX_GROUND": 12,
    "HYPERLAB_WEIGHT_CAP": 20,
    "HYPERLAB_MAX_SEARCH_POINTS": 4,
    "HYPERLAB_SEED": None,
    "HYPERLAB_DEFAULT_SEED": 1729,
    "HYPERLAB_RANDOM_SUBBASES": 40,
    "HYPERLAB_INTERVAL_SAMPLES": 200,
}


def setting(name):
    return getattr(settings, name, DEFAULTS[name])


def resolve_seed(seed=None):
    """The env/settings seed wins over a configured one; fall back to the default."""
    override = setting("HYPERLAB_SEED")
    if override is not None:
        return int(override)
    if seed is not None:
        return int(seed)
    return setting("HYPERLAB_DEFAULT_SEED")

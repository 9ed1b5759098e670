from contextlib import contextmanager
from contextvars import ContextVar

from django.conf import settings

DEFAULTS = {
    'THREADS': 1,
    'DEGREE_CAP': 6,
    'SEARCH_BUDGET': 200000,
    'COBAR_BUDGET': 250000,
    'POINT_BUDGET': 1000000,
    'SYZYGY_WINDOW': 0,
    'SEED': 0,
    'LOG_LEVEL': 'WARNING',
}

_overrides = ContextVar('supvar_overrides', default={})


def supvar_setting(name):
    """Read one key of settings.SUPVAR, falling back to the shipped default."""
    local = _overrides.get()
    if name in local:
        return local[name]
    configured = getattr(settings, 'SUPVAR', {})
    if name in configured:
        return configured[name]
    return DEFAULTS[name]


@contextmanager
def supvar_overrides(**values):
    """Per-run overrides (command flags, API payloads) for the current context only."""
    unknown = set(values) - set(DEFAULTS)
    if unknown:
        raise KeyError(f'unknown SUPVAR keys: {sorted(unknown)}')
    merged = dict(_overrides.get())
    merged.update({key: value for key, value in values.items() if value is not None})
    token = _overrides.set(merged)
    try:
        yield merged
    finally:
        _overrides.reset(token)

"""Budget defaults. CUBEMEDIAN_BUDGET overrides both budgets when positive."""

import os

DEFAULT_STATE_BUDGET = 10**6
DEFAULT_GEODESIC_BUDGET = 10**5


def _resolve(explicit, default):
    if explicit is not None:
        return int(explicit)
    try:
        value = int(os.environ.get("CUBEMEDIAN_BUDGET", ""))
    except ValueError:
        return default
    return value if value > 0 else default


def state_budget(explicit=None):
    return _resolve(explicit, DEFAULT_STATE_BUDGET)


def geodesic_budget(explicit=None):
    return _resolve(explicit, DEFAULT_GEODESIC_BUDGET)

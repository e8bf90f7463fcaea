"""Resource ceilings shared by the search routines.

Defaults can be overridden with the ``HYPERSHAF_MAX_WORK`` and
``HYPERSHAF_MAX_GRID`` environment variables or the matching ``max_work`` /
``max_grid`` entries in the key=value config file.  Work counts Python-level
steps; grid counts coefficient vectors screened by the vectorized search.
"""

from __future__ import annotations

import os

DEFAULT_MAX_WORK = 50_000_000
DEFAULT_MAX_GRID = 4_000_000_000


class ResourceLimitError(RuntimeError):
    """A search would exceed the configured work ceiling."""


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return default


def max_work() -> int:
    return _env_int("HYPERSHAF_MAX_WORK", DEFAULT_MAX_WORK)


def max_grid() -> int:
    return _env_int("HYPERSHAF_MAX_GRID", DEFAULT_MAX_GRID)


def check_work(amount: int, what: str, limit: int | None = None) -> None:
    lim = max_work() if limit is None else limit
    if amount > lim:
        raise ResourceLimitError(f"{what}: estimated work {amount} exceeds limit {lim}")

"""Runtime knobs read from the environment.

``BRACEFORGE_BACKEND``   ``numba`` (default when importable) or ``numpy``.
``BRACEFORGE_TABLE_CAP`` largest group order for which full tables are built.
"""
from __future__ import annotations

import os

DEFAULT_TABLE_CAP = 5000


def table_cap() -> int:
    raw = os.environ.get("BRACEFORGE_TABLE_CAP")
    if not raw:
        return DEFAULT_TABLE_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"BRACEFORGE_TABLE_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError("BRACEFORGE_TABLE_CAP must be positive")
    return cap


def requested_backend() -> str:
    name = os.environ.get("BRACEFORGE_BACKEND", "numba").strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"BRACEFORGE_BACKEND must be 'numba' or 'numpy', got {name!r}")
    return name


_workers: int | None = None


def set_workers(n: int | None) -> None:
    """Worker count for parallel sweeps; ``None`` means all available cores."""
    global _workers
    if n is not None and n < 1:
        raise ValueError("worker count must be positive")
    _workers = n


def workers() -> int:
    if _workers is not None:
        return _workers
    return os.cpu_count() or 1

"""Kernel backend selection.

The compiled Cython kernel is used when it imported cleanly; otherwise the
pure-Python twin takes over.  Setting LIMITGAMES_PURE=1 in the environment
forces the fallback.  Both backends are bit-identical; see
benchmarks/bench_kernel.py for the speed comparison.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import pure

if os.environ.get("LIMITGAMES_PURE"):
    _native = None
else:
    try:
        from . import _native  # type: ignore[attr-defined]
    except ImportError:
        _native = None

_backends = {"pure": pure}
if _native is not None:
    _backends["native"] = _native

_active = _backends.get("native", pure)


def active():
    """The backend module currently in use."""
    return _active


def active_name() -> str:
    return _active.name


def available() -> tuple[str, ...]:
    return tuple(sorted(_backends))


@contextmanager
def override(name: str):
    """Temporarily force a specific backend (benchmarks and tests)."""
    global _active
    if name not in _backends:
        raise KeyError(f"backend {name!r} not available (have {available()})")
    previous = _active
    _active = _backends[name]
    try:
        yield _active
    finally:
        _active = previous

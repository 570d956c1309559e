"""Kernel backend selection.

The compiled extension is imported if it was built; otherwise the numpy
twin in ``_fallback`` is used.  ``use_backend`` switches explicitly, which
the tests and the benchmark rely on.
"""
from types import ModuleType

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_active: ModuleType = _compiled if _compiled is not None else _fallback


def compiled_available() -> bool:
    return _compiled is not None


def use_backend(name: str) -> None:
    """Select ``"compiled"`` or ``"python"`` kernels for subsequent calls."""
    global _active
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not built")
        _active = _compiled
    elif name == "python":
        _active = _fallback
    else:
        raise ValueError(f"unknown backend {name!r}")


def backend_name() -> str:
    return "compiled" if _active is _compiled else "python"


def kernels() -> ModuleType:
    return _active

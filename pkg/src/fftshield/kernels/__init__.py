"""Butterfly kernel backends.

The compiled extension is preferred when importable; the numpy backend is
always available. ``FFTSHIELD_BACKEND=numpy|ext`` overrides the default.
"""

import os

from . import numpy_backend

try:
    from . import _stockham as ext_backend

    HAVE_EXT = True
except ImportError:  # pragma: no cover - depends on the build environment
    ext_backend = None
    HAVE_EXT = False

_BACKENDS = {"numpy": numpy_backend}
if HAVE_EXT:
    _BACKENDS["ext"] = ext_backend


def available_backends():
    return tuple(sorted(_BACKENDS))


def get_backend(name: str = "auto"):
    """Resolve a backend module by name ('auto', 'numpy' or 'ext')."""
    if name == "auto":
        name = os.environ.get("FFTSHIELD_BACKEND", "auto")
    if name == "auto":
        name = "ext" if HAVE_EXT else "numpy"
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; available: {available_backends()}"
        ) from None

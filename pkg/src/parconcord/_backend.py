"""Backend selection: compiled kernels when built, pure-numpy otherwise.

PARCONCORD_BACKEND=python|compiled overrides the default choice.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

HAVE_COMPILED = _ckernels is not None


def available_backends():
    names = ["python"]
    if HAVE_COMPILED:
        names.insert(0, "compiled")
    return tuple(names)


def default_backend_name():
    env = os.environ.get("PARCONCORD_BACKEND")
    if env:
        if env not in ("python", "compiled"):
            raise ValueError(
                f"PARCONCORD_BACKEND must be 'python' or 'compiled', got {env!r}"
            )
        return env
    return "compiled" if HAVE_COMPILED else "python"


def get_backend(name=None):
    """Resolve a backend module by name, or the default when name is None."""
    if name is None:
        name = default_backend_name()
    if name == "python":
        return _pykernels
    if name == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError(
                "compiled kernels are not built; reinstall with the extension "
                "or pass backend='python'"
            )
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")

"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``PQSERIES_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

python_kernels = _kernels_py

try:
    from . import _ckernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

if compiled_kernels is not None and not os.environ.get("PQSERIES_PURE_PYTHON"):
    kernels = compiled_kernels
else:
    kernels = _kernels_py

BACKEND = kernels.BACKEND


def available():
    """Names of the kernel backends that can be used in this process."""
    return ["python"] + (["cython"] if compiled_kernels is not None else [])


def get(name=None):
    if name is None:
        return kernels
    if name == "python":
        return _kernels_py
    if name == "cython":
        if compiled_kernels is None:
            raise ImportError("the compiled kernels are not built")
        return compiled_kernels
    raise ValueError(f"unknown backend {name!r}")

"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set GEOKNAP_PURE=1 to force the Python kernels.
"""
import os

from . import _kernels_py as python_kernels

compiled_kernels = None
if os.environ.get("GEOKNAP_PURE") != "1":
    try:
        from . import _kernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

_impl = compiled_kernels or python_kernels
BACKEND = _impl.NAME

gap_dp_table = _impl.gap_dp_table
lpack_table = _impl.lpack_table
place_search = _impl.place_search


def backend(name: str):
    """Return the kernel module called `name` ('cython' or 'python')."""
    if name == "python":
        return python_kernels
    if name == "cython":
        if compiled_kernels is None:
            raise ImportError("compiled kernels are not built")
        return compiled_kernels
    raise ValueError(name)

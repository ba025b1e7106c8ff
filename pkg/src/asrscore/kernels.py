"""Kernel backend selection.

The compiled ``_lattice`` extension is used when it was built; otherwise the
pure-Python twin is imported.  Set ``ASRSCORE_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from . import _lattice_py

if os.environ.get("ASRSCORE_PURE_PYTHON") == "1":
    _impl = _lattice_py
else:
    try:
        from . import _lattice as _impl
    except ImportError:
        _impl = _lattice_py

BACKEND = "python" if _impl is _lattice_py else "cython"

edit_ops = _impl.edit_ops
lattice_togo = _impl.lattice_togo

OP_KINDS = ("COR", "SUB", "DEL", "INS")


def backends():
    """Every importable implementation, keyed by name."""
    found = {"python": _lattice_py}
    try:
        from . import _lattice

        found["cython"] = _lattice
    except ImportError:
        pass
    return found

"""Search kernel selection.

The compiled extension is used when it was built; otherwise, or when
``ZSMAGIC_PURE_PYTHON`` is set, the pure-Python twin takes over.  Both expose
``search`` with the same signature and results.
"""

from __future__ import annotations

import os

from . import _search_py

python_search = _search_py.search

try:
    from ._search import search as compiled_search
except ImportError:  # extension not built
    compiled_search = None

if compiled_search is not None and not os.environ.get("ZSMAGIC_PURE_PYTHON"):
    search = compiled_search
    BACKEND = "compiled"
else:
    search = python_search
    BACKEND = "python"

SAT, UNSAT, UNKNOWN = _search_py.SAT, _search_py.UNSAT, _search_py.UNKNOWN

#: The compiled kernel uses 64-bit arithmetic on products of two residues.
COMPILED_MODULUS_LIMIT = 1 << 31


def select(moduli, prefer: str | None = None):
    """Kernel to use for the given moduli (``prefer`` forces a backend)."""
    if prefer == "python" or compiled_search is None:
        return python_search
    if prefer == "compiled":
        return compiled_search
    if max(moduli) >= COMPILED_MODULUS_LIMIT:
        return python_search
    return search

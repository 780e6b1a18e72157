"""Backend selection for the hot kernels.

The compiled ``_ckernel`` extension is used when it imports; otherwise, or
when ``SUBSQ_PURE_PYTHON=1`` is set, the pure-Python ``_purekernel``
fallback is used.  Both expose ``search`` and ``perfect_matching`` with
identical semantics.
"""
from __future__ import annotations

import os

from . import _purekernel

FOUND = _purekernel.FOUND
EXHAUSTED = _purekernel.EXHAUSTED
LIMIT = _purekernel.LIMIT

_impl = _purekernel
BACKEND = "python"
if os.environ.get("SUBSQ_PURE_PYTHON") != "1":
    try:
        from . import _ckernel as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        pass

search = _impl.search
perfect_matching = _impl.perfect_matching


def backends() -> dict:
    """All importable backends by name, for benchmarks and parity tests."""
    out = {"python": _purekernel}
    try:
        from . import _ckernel

        out["cython"] = _ckernel
    except ImportError:  # pragma: no cover
        pass
    return out

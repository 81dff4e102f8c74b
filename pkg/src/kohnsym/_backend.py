"""Backend selection: compiled kernels when available, pure Python otherwise.

The Cython extension is optional; building the package without a compiler
(or without Cython) simply leaves the pure-Python kernels in charge.  Both
backends implement the same functions with identical results, which
`benchmarks/bench_backends.py` also cross-checks.
"""

from __future__ import annotations

try:
    from . import _kernels as kernels  # type: ignore[attr-defined]

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    from . import _kernels_py as kernels

    BACKEND = "python"


def backend_name() -> str:
    """Name of the active kernel backend: 'cython' or 'python'."""
    return BACKEND

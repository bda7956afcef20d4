"""Runtime selection between the numba and pure-numpy grid kernels.

The hot loops of the package (coherence series over time grids, both
single- and two-qubit) exist in two interchangeable implementations:

* ``numba`` — JIT-compiled explicit loops (fastest after warm-up);
* ``numpy`` — vectorized pure-numpy fallback (no compilation step).

The active backend is chosen by the environment variable
``PTCOHERENCE_BACKEND`` (``"numba"`` or ``"numpy"``).  When the
variable is unset the numba backend is used if numba imports cleanly,
otherwise the numpy fallback.  Both produce the same values up to
floating-point summation-order effects (verified to 1e-12 in tests);
a benchmark comparing them ships in ``benchmarks/bench_backends.py``.
"""
from __future__ import annotations

import os
from types import SimpleNamespace

from . import _kernels

__all__ = ["ENV_VAR", "available_backends", "backend_name", "get_kernels"]

ENV_VAR = "PTCOHERENCE_BACKEND"

_NAMESPACES = {
    "numpy": SimpleNamespace(
        name="numpy",
        coherence_series=_kernels.coherence_series_numpy,
        two_qubit_coherence_series=_kernels.two_qubit_coherence_series_numpy,
    ),
}
if _kernels.NUMBA_AVAILABLE:
    _NAMESPACES["numba"] = SimpleNamespace(
        name="numba",
        coherence_series=_kernels.coherence_series_numba,
        two_qubit_coherence_series=_kernels.two_qubit_coherence_series_numba,
    )


def available_backends() -> tuple[str, ...]:
    """Names of the kernel backends usable in this environment."""
    return tuple(sorted(_NAMESPACES))


def backend_name() -> str:
    """Resolve the active backend name from the environment.

    Raises
    ------
    ValueError
        If ``PTCOHERENCE_BACKEND`` names an unknown or unavailable
        backend.
    """
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return "numba" if "numba" in _NAMESPACES else "numpy"
    name = raw.strip().lower()
    if name not in _NAMESPACES:
        raise ValueError(
            f"{ENV_VAR}={raw!r} is not an available backend; "
            f"choose one of {', '.join(available_backends())}"
        )
    return name


def get_kernels(name: str | None = None) -> SimpleNamespace:
    """Kernel namespace for ``name`` (default: environment selection).

    The namespace carries ``coherence_series`` and
    ``two_qubit_coherence_series`` plus its ``name``.
    """
    resolved = backend_name() if name is None else name
    if resolved not in _NAMESPACES:
        raise ValueError(
            f"unknown backend {resolved!r}; choose one of {', '.join(available_backends())}"
        )
    return _NAMESPACES[resolved]

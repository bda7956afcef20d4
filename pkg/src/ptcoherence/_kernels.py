"""Grid kernels: coherence series over time grids, in two backends.

Each public kernel exists twice with identical semantics:

* ``*_numpy``  — vectorized pure-numpy implementation;
* ``*_numba``  — JIT-compiled explicit loops (falls back to plain
  Python execution when numba is unavailable, in which case only the
  numpy names should be used; see :mod:`ptcoherence._backend`).

Kernels work in the *scaled* propagator representation: in the broken
regime the scalars (A, B, C) grow like ``exp(w s t)``, but every
quantity computed here is a ratio that is invariant under a common
positive rescaling of (A, B, C), so the factor ``exp(-w s t)`` is
pulled out once the hyperbolic argument exceeds ``_SCALE_SWITCH``.
This keeps all intermediates finite for arbitrarily large times.

Conventions: ``kind_code`` is ``KIND_PT`` (0) or ``KIND_APT`` (1);
``times`` is a float64 array; single-qubit states enter as
``(alpha, beta, phi)`` with ``alpha^2 + beta^2 = 1``.
"""
from __future__ import annotations

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(func):
            return func

        return wrap


__all__ = [
    "KIND_PT",
    "KIND_APT",
    "NUMBA_AVAILABLE",
    "coherence_series_numpy",
    "coherence_series_numba",
    "two_qubit_coherence_series_numpy",
    "two_qubit_coherence_series_numba",
]

KIND_PT = 0
KIND_APT = 1

#: Hyperbolic argument above which the scaled representation is used.
#: 150 keeps even fourth powers of the scaled-out factor far from the
#: double-precision overflow threshold (exp(4 * 150) >> 1e308 would not
#: be, so scaling must kick in before two-qubit conjugations square the
#: squared entries).
_SCALE_SWITCH = 150.0
#: Below this argument the sin(x)/x and sinh(x)/x ratios use series.
_SERIES_SWITCH = 1e-4


# ---------------------------------------------------------------------------
# scaled (A, B, C) grids
# ---------------------------------------------------------------------------

def _abc_grid_numpy(kind_code: int, s: float, a: float, times: np.ndarray):
    """Scaled propagator scalars (A, B, C) over a time grid.

    Returns arrays proportional to the true scalars by a common
    positive per-time factor (irrelevant to every ratio computed from
    them).
    """
    st = s * np.asarray(times, dtype=np.float64)
    d = 1.0 - a * a if kind_code == KIND_PT else a * a - 1.0
    if d > 0.0:
        w = np.sqrt(d)
        x = w * st
        A = np.cos(x)
        tiny = np.abs(x) < _SERIES_SWITCH
        xs = np.where(tiny, 1.0, x)
        x2 = x * x
        g = st * np.where(tiny, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(xs) / xs)
    elif d < 0.0:
        w = np.sqrt(-d)
        x = w * st
        xa = np.abs(x)  # cosh even, sinh odd: branch on |x|, restore sign via st
        big = xa > _SCALE_SWITCH
        tiny = xa < _SERIES_SWITCH
        xc = np.where(big, 0.0, x)  # safe argument for cosh/sinh
        xs = np.where(tiny | big, 1.0, x)  # safe denominator
        x2 = x * x
        q = np.exp(-2.0 * xa)  # underflows harmlessly to 0 for large |x|
        A = np.where(big, 0.5 * (1.0 + q), np.cosh(xc))
        sinhc = np.where(tiny, 1.0 + x2 / 6.0 + x2 * x2 / 120.0, np.sinh(xc) / xs)
        g = np.where(big, np.sign(st) * 0.5 * (1.0 - q) / w, st * sinhc)
    else:
        A = np.ones_like(st)
        g = st.copy()
    return A, -a * g, g


@njit(cache=True)
def _abc_scalar_numba(kind_code: int, s: float, a: float, t: float):
    st = s * t
    d = 1.0 - a * a if kind_code == KIND_PT else a * a - 1.0
    if d > 0.0:
        w = np.sqrt(d)
        x = w * st
        A = np.cos(x)
        if abs(x) < _SERIES_SWITCH:
            x2 = x * x
            g = st * (1.0 - x2 / 6.0 + x2 * x2 / 120.0)
        else:
            g = st * np.sin(x) / x
    elif d < 0.0:
        w = np.sqrt(-d)
        x = w * st
        if abs(x) > _SCALE_SWITCH:
            q = np.exp(-2.0 * abs(x))
            A = 0.5 * (1.0 + q)
            g = (0.5 * (1.0 - q) / w) if st >= 0.0 else (-0.5 * (1.0 - q) / w)
        elif abs(x) < _SERIES_SWITCH:
            x2 = x * x
            A = np.cosh(x)
            g = st * (1.0 + x2 / 6.0 + x2 * x2 / 120.0)
        else:
            A = np.cosh(x)
            g = st * np.sinh(x) / x
    else:
        A = 1.0
        g = st
    return A, -a * g, g


# ---------------------------------------------------------------------------
# single-qubit coherence series
# ---------------------------------------------------------------------------

def coherence_series_numpy(
    kind_code: int,
    s: float,
    a: float,
    alpha: float,
    beta: float,
    phi: float,
    times: np.ndarray,
) -> np.ndarray:
    """l1 coherence of the normalized evolved pure state over ``times``.

    Uses the closed-form populations x = |<H|psi(t)>|^2 and
    y = |<V|psi(t)>|^2 (up to common scale) and
    ``C = 2 sqrt(x y) / (x + y)``.
    """
    A, B, C = _abc_grid_numpy(kind_code, s, a, np.asarray(times, dtype=np.float64))
    sphi = np.sin(phi)
    cphi = np.cos(phi)
    ab = alpha * beta
    if kind_code == KIND_PT:
        pm = A - B
        pp = A + B
        x = alpha * alpha * pm * pm + C * C * beta * beta + 2.0 * ab * C * pm * sphi
        y = beta * beta * pp * pp + C * C * alpha * alpha - 2.0 * ab * C * pp * sphi
    else:
        r2 = A * A + B * B
        cross = 2.0 * ab * C * (A * cphi + B * sphi)
        x = alpha * alpha * r2 + C * C * beta * beta + cross
        y = beta * beta * r2 + C * C * alpha * alpha + cross
    x = np.maximum(x, 0.0)
    y = np.maximum(y, 0.0)
    # 2*sqrt(x)*sqrt(y) instead of sqrt(x*y): the product can overflow
    # at large unscaled hyperbolic arguments even though the ratio is O(1)
    return 2.0 * np.sqrt(x) * np.sqrt(y) / (x + y)


@njit(cache=True)
def _coherence_series_numba_impl(kind_code, s, a, alpha, beta, phi, times):
    n = times.shape[0]
    out = np.empty(n, dtype=np.float64)
    sphi = np.sin(phi)
    cphi = np.cos(phi)
    ab = alpha * beta
    for i in range(n):
        A, B, C = _abc_scalar_numba(kind_code, s, a, times[i])
        if kind_code == KIND_PT:
            pm = A - B
            pp = A + B
            x = alpha * alpha * pm * pm + C * C * beta * beta + 2.0 * ab * C * pm * sphi
            y = beta * beta * pp * pp + C * C * alpha * alpha - 2.0 * ab * C * pp * sphi
        else:
            r2 = A * A + B * B
            cross = 2.0 * ab * C * (A * cphi + B * sphi)
            x = alpha * alpha * r2 + C * C * beta * beta + cross
            y = beta * beta * r2 + C * C * alpha * alpha + cross
        if x < 0.0:
            x = 0.0
        if y < 0.0:
            y = 0.0
        out[i] = 2.0 * np.sqrt(x) * np.sqrt(y) / (x + y)
    return out


def coherence_series_numba(
    kind_code: int,
    s: float,
    a: float,
    alpha: float,
    beta: float,
    phi: float,
    times: np.ndarray,
) -> np.ndarray:
    """JIT-compiled twin of :func:`coherence_series_numpy`."""
    return _coherence_series_numba_impl(
        int(kind_code),
        float(s),
        float(a),
        float(alpha),
        float(beta),
        float(phi),
        np.ascontiguousarray(times, dtype=np.float64),
    )


# ---------------------------------------------------------------------------
# two-qubit coherence series
# ---------------------------------------------------------------------------

def two_qubit_coherence_series_numpy(
    kind_code: int,
    s: float,
    a: float,
    rho4: np.ndarray,
    times: np.ndarray,
) -> np.ndarray:
    """l1 coherence of ``(U ⊗ U) rho4 (U ⊗ U)^dag`` (normalized) over ``times``."""
    rho = np.asarray(rho4, dtype=complex)
    A, B, C = _abc_grid_numpy(kind_code, s, a, np.asarray(times, dtype=np.float64))
    n = A.shape[0]
    u = np.empty((n, 2, 2), dtype=complex)
    if kind_code == KIND_PT:
        u[:, 0, 0] = A - B
        u[:, 0, 1] = -1j * C
        u[:, 1, 0] = -1j * C
        u[:, 1, 1] = A + B
    else:
        u[:, 0, 0] = A + 1j * B
        u[:, 0, 1] = C
        u[:, 1, 0] = C
        u[:, 1, 1] = A - 1j * B
    u4 = np.einsum("nik,njl->nijkl", u, u).reshape(n, 4, 4)
    sig = u4 @ rho @ u4.conj().transpose(0, 2, 1)
    tr = np.trace(sig, axis1=1, axis2=2).real
    absum = np.abs(sig).sum(axis=(1, 2))
    diag = np.abs(np.diagonal(sig, axis1=1, axis2=2)).sum(axis=1)
    return (absum - diag) / tr


@njit(cache=True)
def _two_qubit_series_numba_impl(kind_code, s, a, rho4, times):
    n = times.shape[0]
    out = np.empty(n, dtype=np.float64)
    u = np.empty((2, 2), dtype=np.complex128)
    u4 = np.empty((4, 4), dtype=np.complex128)
    tmp = np.empty((4, 4), dtype=np.complex128)
    sig = np.empty((4, 4), dtype=np.complex128)
    for k in range(n):
        A, B, C = _abc_scalar_numba(kind_code, s, a, times[k])
        if kind_code == KIND_PT:
            u[0, 0] = A - B
            u[0, 1] = -1j * C
            u[1, 0] = -1j * C
            u[1, 1] = A + B
        else:
            u[0, 0] = A + 1j * B
            u[0, 1] = C
            u[1, 0] = C
            u[1, 1] = A - 1j * B
        for i in range(2):
            for j in range(2):
                for r in range(2):
                    for c in range(2):
                        u4[2 * i + j, 2 * r + c] = u[i, r] * u[j, c]
        for i in range(4):
            for j in range(4):
                acc = 0.0 + 0.0j
                for m in range(4):
                    acc += u4[i, m] * rho4[m, j]
                tmp[i, j] = acc
        for i in range(4):
            for j in range(4):
                acc = 0.0 + 0.0j
                for m in range(4):
                    acc += tmp[i, m] * np.conj(u4[j, m])
                sig[i, j] = acc
        tr = 0.0
        for i in range(4):
            tr += sig[i, i].real
        coh = 0.0
        for i in range(4):
            for j in range(4):
                if i != j:
                    coh += np.abs(sig[i, j])
        out[k] = coh / tr
    return out


def two_qubit_coherence_series_numba(
    kind_code: int,
    s: float,
    a: float,
    rho4: np.ndarray,
    times: np.ndarray,
) -> np.ndarray:
    """JIT-compiled twin of :func:`two_qubit_coherence_series_numpy`."""
    return _two_qubit_series_numba_impl(
        int(kind_code),
        float(s),
        float(a),
        np.ascontiguousarray(rho4, dtype=np.complex128),
        np.ascontiguousarray(times, dtype=np.float64),
    )

"""Closed-form nonunitary propagators and normalized state evolution.

Both generator families admit a propagator ``U(t) = exp(-i H t)`` built
from three real scalars A, B, C:

    PT:   U = [[A - B, -i C], [-i C, A + B]]
    APT:  U = [[A + i B, C], [C, A - i B]]

with a single discriminant ``d`` controlling the time dependence
(``d = 1 - a^2`` for PT, ``d = a^2 - 1`` for APT):

    d > 0 (unbroken):  A = cos(w s t),  g = sin(w s t) / w,   w = sqrt(d)
    d < 0 (broken):    A = cosh(w s t), g = sinh(w s t) / w,  w = sqrt(-d)
    d = 0 (EP):        A = 1,           g = s t

and ``B = -a g``, ``C = g`` in all cases.  ``det U = 1`` exactly in
real arithmetic because the generators are traceless.

Numerical notes
---------------
* ``g`` is evaluated as ``s t * sinc_like(w s t)`` with a short series
  for tiny arguments, so the formula remains accurate through the
  exceptional point; the exact degenerate branch is used only at
  ``a == 1.0`` where the generic expression is literally 0/0.  This
  keeps the propagator within ~1e-13 relative Frobenius distance of a
  matrix-exponential oracle arbitrarily close to the EP.
* In the broken regime the entries grow like ``exp(w s t)``.  Evolution
  and coherence only ever need the propagator up to a positive scale
  (states are renormalized), so the internal scaled form
  ``U = exp(log_scale) * U_hat`` is used, with ``U_hat`` kept order
  unity.  Rescaling by ``exp(-w s t)`` is exact for the *ratios* that
  all observables reduce to.

All functions are pure; every returned array is freshly allocated.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .hamiltonian import HamiltonianParams, Regime, SymmetryClass, regime
from .tolerances import DEFAULT_TOLS

__all__ = [
    "PureState",
    "DensityMatrix",
    "Propagator",
    "DegenerateEvolutionError",
    "propagator_analytic",
    "propagator_scaled",
    "evolve_pure",
    "evolve_density",
]

#: Hyperbolic argument above which the scaled representation is used.
_SCALE_SWITCH = 300.0
#: Below this argument magnitude the sinc-like ratios use their series.
_SERIES_SWITCH = 1e-4


class DegenerateEvolutionError(RuntimeError):
    """Raised when an evolved state's norm underflows to (near) zero.

    The closed-form propagators are invertible, so this signals an
    internal inconsistency rather than a physical phenomenon.
    """


# ---------------------------------------------------------------------------
# state containers
# ---------------------------------------------------------------------------

class _Presets:
    """Named initial states accepted across the package and the CLI."""

    H = ("H", 1.0, 0.0, 0.0)
    D = ("D", 1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0), 0.0)
    H_SQRT3_V = ("h-sqrt3v", 0.5, math.sqrt(3.0) / 2.0, 0.0)


@dataclass(frozen=True)
class PureState:
    """Single-qubit pure state ``alpha |H> + beta e^{i phi} |V>``.

    Attributes
    ----------
    alpha, beta:
        Real amplitudes in [0, 1] with ``alpha^2 + beta^2 = 1`` (to
        1e-12).
    phi:
        Relative phase, stored wrapped into [0, 2*pi).
    """

    alpha: float
    beta: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        a, b, ph = float(self.alpha), float(self.beta), float(self.phi)
        if not (np.isfinite(a) and np.isfinite(b) and np.isfinite(ph)):
            raise ValueError("state components must be finite")
        if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
            raise ValueError(f"amplitudes must lie in [0, 1], got alpha={a}, beta={b}")
        if abs(a * a + b * b - 1.0) > 1e-12:
            raise ValueError(f"state not normalized: alpha^2+beta^2 = {a * a + b * b}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "phi", ph % (2.0 * math.pi))

    @classmethod
    def preset(cls, name: str) -> "PureState":
        """Named states: ``H``, ``D`` (= (|H>+|V>)/sqrt(2)), ``h-sqrt3v``
        (= (|H>+sqrt(3)|V>)/2)."""
        for tag, alpha, beta, phi in (_Presets.H, _Presets.D, _Presets.H_SQRT3_V):
            if name == tag:
                return cls(alpha, beta, phi)
        raise ValueError(f"unknown preset {name!r}; expected one of 'H', 'D', 'h-sqrt3v'")

    @classmethod
    def from_amplitudes(cls, alpha: float, beta: float, phi: float = 0.0) -> "PureState":
        """Build a state from possibly unnormalized nonnegative amplitudes."""
        norm = math.sqrt(alpha * alpha + beta * beta)
        if norm <= 0:
            raise ValueError("amplitudes must not both vanish")
        return cls(alpha / norm, beta / norm, phi)

    def vector(self) -> np.ndarray:
        """Complex amplitude vector ``(alpha, beta e^{i phi})``."""
        return np.array([self.alpha, self.beta * np.exp(1j * self.phi)], dtype=complex)

    def density(self) -> "DensityMatrix":
        """Rank-one density matrix of this state."""
        v = self.vector()
        return DensityMatrix(np.outer(v, v.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Validated single-qubit density matrix in the {|H>, |V>} basis.

    The constructor enforces Hermiticity and unit trace to 1e-10 and
    eigenvalues >= -1e-10; the stored array is a defensive copy marked
    read-only.
    """

    rho: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.array(self.rho, dtype=complex)
        if arr.shape != (2, 2):
            raise ValueError(f"density matrix must be 2x2, got {arr.shape}")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("density matrix contains non-finite entries")
        tol = DEFAULT_TOLS.density
        if np.linalg.norm(arr - arr.conj().T) > tol:
            raise ValueError("density matrix is not Hermitian to tolerance")
        if abs(np.trace(arr) - 1.0) > tol:
            raise ValueError(f"density matrix trace {np.trace(arr)} is not 1 to tolerance")
        eigs = np.linalg.eigvalsh((arr + arr.conj().T) / 2.0)
        if eigs.min() < -DEFAULT_TOLS.positivity:
            raise ValueError(f"density matrix has negative eigenvalue {eigs.min()}")
        arr.setflags(write=False)
        object.__setattr__(self, "rho", arr)

    @classmethod
    def maximally_mixed(cls) -> "DensityMatrix":
        return cls(np.eye(2, dtype=complex) / 2.0)

    @classmethod
    def from_pure(cls, st: PureState) -> "DensityMatrix":
        return st.density()


@dataclass(frozen=True)
class Propagator:
    """Closed-form propagator with its (A, B, C) decomposition.

    Attributes
    ----------
    matrix:
        The 2x2 complex propagator (see module docstring for the
        kind-dependent arrangement of A, B, C).
    abc:
        The real scalars (A, B, C).
    regime:
        Spectral phase of the generating parameters.
    t:
        Evolution time the propagator corresponds to.
    """

    matrix: np.ndarray = field(repr=False)
    abc: tuple[float, float, float]
    regime: Regime
    t: float


# ---------------------------------------------------------------------------
# scalar A, B, C evaluation
# ---------------------------------------------------------------------------

def _sinc_like(x: float) -> float:
    """sin(x)/x with a series escape for tiny |x|."""
    if abs(x) < _SERIES_SWITCH:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return math.sin(x) / x


def _sinhc_like(x: float) -> float:
    """sinh(x)/x with a series escape for tiny |x|."""
    if abs(x) < _SERIES_SWITCH:
        x2 = x * x
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0
    return math.sinh(x) / x


def _abc_scaled(p: HamiltonianParams, t: float) -> tuple[float, float, float, float]:
    """Scaled decomposition ``(A_hat, B_hat, C_hat, log_scale)``.

    The true scalars are ``exp(log_scale)`` times the returned hatted
    values; ``log_scale`` is zero except deep in the broken regime
    where the hyperbolic functions would overflow.
    """
    st = p.s * t
    d = 1.0 - p.a * p.a if p.kind is SymmetryClass.PT else p.a * p.a - 1.0
    if d > 0.0:
        w = math.sqrt(d)
        A = math.cos(w * st)
        g = st * _sinc_like(w * st)
        log_scale = 0.0
    elif d < 0.0:
        w = math.sqrt(-d)
        x = w * st
        if x <= _SCALE_SWITCH:
            A = math.cosh(x)
            g = st * _sinhc_like(x)
            log_scale = 0.0
        else:
            # cosh(x) = e^x (1 + e^{-2x})/2, sinh(x) = e^x (1 - e^{-2x})/2
            q = math.exp(-2.0 * x)
            A = 0.5 * (1.0 + q)
            g = 0.5 * (1.0 - q) / w
            log_scale = x
    else:
        A = 1.0
        g = st
        log_scale = 0.0
    return A, -p.a * g, g, log_scale


def _matrix_from_abc(kind: SymmetryClass, A: float, B: float, C: float) -> np.ndarray:
    if kind is SymmetryClass.PT:
        return np.array([[A - B, -1j * C], [-1j * C, A + B]], dtype=complex)
    return np.array([[A + 1j * B, C], [C, A - 1j * B]], dtype=complex)


def propagator_scaled(p: HamiltonianParams, t: float) -> tuple[np.ndarray, float]:
    """Propagator up to a known positive scale: ``U = exp(log_scale) * U_hat``.

    Useful whenever the result feeds a renormalizing operation (state
    evolution, coherence, optical-target normalization): ``U_hat`` never
    overflows, for arbitrarily large ``t``.

    Returns
    -------
    (U_hat, log_scale):
        Matrix with entries of order unity and the logarithm of the
        factored-out positive scale.
    """
    if not (math.isfinite(t) and t >= 0):
        raise ValueError("evolution time must be finite and nonnegative")
    A, B, C, log_scale = _abc_scaled(p, t)
    return _matrix_from_abc(p.kind, A, B, C), log_scale


def propagator_analytic(p: HamiltonianParams, t: float) -> Propagator:
    """Closed-form propagator ``exp(-i H t)`` for parameters ``p``.

    Raises
    ------
    OverflowError
        If the raw entries exceed the double-precision range (broken
        regime with extremely large ``w * s * t``); use
        :func:`propagator_scaled` in that situation.
    ValueError
        If ``t`` is negative or not finite.
    """
    if not (math.isfinite(t) and t >= 0):
        raise ValueError("evolution time must be finite and nonnegative")
    A, B, C, log_scale = _abc_scaled(p, t)
    if log_scale != 0.0:
        scale = math.exp(log_scale) if log_scale < 709.0 else math.inf
        A, B, C = A * scale, B * scale, C * scale
        if not (math.isfinite(A) and math.isfinite(B) and math.isfinite(C)):
            raise OverflowError(
                "propagator entries exceed the double-precision range; "
                "use propagator_scaled for renormalized workflows"
            )
    return Propagator(
        matrix=_matrix_from_abc(p.kind, A, B, C),
        abc=(A, B, C),
        regime=regime(p),
        t=float(t),
    )


# ---------------------------------------------------------------------------
# state evolution
# ---------------------------------------------------------------------------

def evolve_pure(st: PureState, p: HamiltonianParams, t: float) -> np.ndarray:
    """Normalized evolution ``U(t)|st> / ||U(t)|st>||``.

    Returns a unit-norm complex 2-vector.  The scaled propagator is
    used internally, so arbitrarily deep broken-regime times are safe.
    """
    U_hat, _ = propagator_scaled(p, t)
    v = U_hat @ st.vector()
    n = float(np.linalg.norm(v))
    if n < 1e-300:
        raise DegenerateEvolutionError(
            "evolved state norm underflowed; the closed-form propagator "
            "should be invertible, so this indicates an internal bug"
        )
    return v / n


def evolve_density(rho: DensityMatrix, p: HamiltonianParams, t: float) -> DensityMatrix:
    """Normalized nonunitary evolution ``U rho U^dag / Tr[U rho U^dag]``."""
    U_hat, _ = propagator_scaled(p, t)
    out = U_hat @ rho.rho @ U_hat.conj().T
    tr = float(np.trace(out).real)
    if tr < 1e-300:
        raise DegenerateEvolutionError(
            "evolved density matrix trace underflowed; this indicates an internal bug"
        )
    out = out / tr
    out = (out + out.conj().T) / 2.0  # remove floating-point Hermiticity drift
    return DensityMatrix(out)

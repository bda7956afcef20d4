"""l1 coherence: closed forms, periods, asymptotes, extrema, backflow.

For a pure state ``alpha |H> + beta e^{i phi} |V>`` evolved by either
generator family, write x(t), y(t) for the evolved (unnormalized)
basis populations.  The l1 coherence of the normalized state is

    C(t) = 2 sqrt(x y) / (x + y)

and both x and y are quadratic forms in the propagator scalars
(A, B, C), so C is invariant under the common rescaling used deep in
the broken regime.

Key phenomenology exposed here:

* unbroken regime — C is periodic with period ``T = pi / (s w)``,
  ``w = sqrt(|1 - a^2|)``;
* broken regime — C converges to a state-independent stable value
  (``1/a`` for PT, ``1`` for APT);
* within one unbroken period C has exactly four stationary points for
  PT (two full returns to C = 1: a double touch) and exactly two for
  APT (a single backflow), for initial states with
  ``alpha, beta in (0, 1)`` and ``sin phi >= 0``.

The stationary points found numerically (dense sampling plus bisection
on a finite-difference derivative) are cross-checkable against the
analytic stationary conditions via :func:`verify_extrema_conditions`:

* maxima (C = 1 touches, PT):  tan(2 theta) = -(alpha^2-beta^2) w / (a + 2 k)
* minima (PT): real roots u = tan(theta) of the quadratic
  ``c0 + c1 u + c2 u^2`` with
      c0 = w^2 (2 a alpha^2 beta^2 + k)
      c1 = w (1 + 2 k a) (beta^2 - alpha^2)
      c2 = c0 - (1 + 2 k a) (a + 2 k)
* APT:  tan(2 theta) = -2 alpha beta w cos(phi) / (1 - 2 a alpha beta sin(phi))

where ``theta = w s t`` and ``k = alpha beta sin(phi)``.  These
conditions are re-derived from the closed-form x, y above and verified
against brute-force extrema in the test suite; the quadratic's
coefficients and the factor 2 multiplying ``a alpha beta sin(phi)``
matter and are locked by tests.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from ._backend import get_kernels
from ._kernels import KIND_APT, KIND_PT
from .evolution import DensityMatrix, PureState
from .hamiltonian import HamiltonianParams, Regime, SymmetryClass, regime
from .tolerances import DEFAULT_TOLS

__all__ = [
    "Classification",
    "Extremum",
    "CoherenceTrace",
    "BackflowReport",
    "PredictedExtrema",
    "l1_coherence",
    "coherence_closed_form",
    "coherence_series",
    "theoretical_period",
    "asymptotic_value",
    "find_extrema",
    "find_extrema_of_series",
    "verify_extrema_conditions",
    "classify_backflow",
]

#: Central-difference step for the numerical time derivative of C.
_DERIV_STEP = 1e-6
#: Bisection stops when the bracket is narrower than this.
_BISECT_WIDTH = 1e-9
#: Value range below which a trace counts as constant.
_CONSTANT_RANGE = 1e-10
#: Derivative sign flips below this fraction of the derivative scale are
#: treated as finite-difference noise (settled plateaus), not extrema.
_FLIP_FLOOR = 1e-6


class Classification(enum.Enum):
    """Shape of a coherence trace over one period (or window)."""

    DOUBLE_TOUCH = "DoubleTouch"
    SINGLE_BACKFLOW = "SingleBackflow"
    CONSTANT = "Constant"
    MONOTONIC = "Monotonic"


@dataclass(frozen=True)
class Extremum:
    """A located stationary point of the coherence trace."""

    time: float
    value: float
    kind: str  # "max" or "min"


@dataclass(frozen=True)
class CoherenceTrace:
    """Sampled coherence series with detected structure.

    Attributes
    ----------
    times, values:
        The sampling grid (sorted, half-open window) and C values.
    extrema:
        Stationary points located to time tolerance 1e-8, sorted by
        time.
    period_estimate:
        Fundamental period recovered from the extremum spacing and
        validated by folding the trace onto itself; None when the
        window contains too few repetitions.
    asymptote_estimate:
        Mean of the final 10% of the window when the trace has
        converged there (|slope| below 1e-6 per unit time); None
        otherwise.
    warning:
        Set when the window is too short to resolve the requested
        structure.
    """

    times: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    extrema: tuple[Extremum, ...]
    period_estimate: float | None
    asymptote_estimate: float | None
    warning: str | None = None


@dataclass(frozen=True)
class BackflowReport:
    """Stationary-point count per period and the implied trace shape."""

    zeros_per_period: int
    classification: Classification


@dataclass(frozen=True)
class PredictedExtrema(Sequence):
    """Analytically predicted stationary times within one period.

    Behaves as a read-only sequence of times.  ``outside_hypotheses``
    marks parameter/state combinations not covered by the count
    theorems (``alpha`` or ``beta`` at the boundary, or
    ``sin phi < 0``); the returned times are still the true stationary
    points of the closed form wherever they exist.
    """

    times: tuple[float, ...]
    outside_hypotheses: bool = False
    note: str | None = None

    def __len__(self) -> int:
        return len(self.times)

    def __getitem__(self, i):
        return self.times[i]

    def __iter__(self) -> Iterator[float]:
        return iter(self.times)


# ---------------------------------------------------------------------------
# basic quantities
# ---------------------------------------------------------------------------

def l1_coherence(rho) -> float:
    """Sum of the magnitudes of all off-diagonal density-matrix entries.

    Accepts a :class:`~ptcoherence.evolution.DensityMatrix`, a
    two-qubit state object exposing ``rho4``, or a raw square array.
    For a 2x2 matrix this equals ``2 |rho_01|``.
    """
    if isinstance(rho, DensityMatrix):
        arr = rho.rho
    elif hasattr(rho, "rho4"):
        arr = rho.rho4
    else:
        arr = np.asarray(rho, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    mags = np.abs(arr)
    return float(mags.sum() - np.trace(mags))


def _kind_code(p: HamiltonianParams) -> int:
    return KIND_PT if p.kind is SymmetryClass.PT else KIND_APT


def coherence_series(st: PureState, p: HamiltonianParams, times: np.ndarray) -> np.ndarray:
    """Closed-form l1 coherence of the evolved state over a time grid.

    ``times`` may be any real values; negative entries evaluate the
    analytic continuation (used internally for one-sided derivative
    probes at window boundaries).
    """
    kern = get_kernels()
    return kern.coherence_series(
        _kind_code(p), p.s, p.a, st.alpha, st.beta, st.phi,
        np.asarray(times, dtype=np.float64),
    )


def coherence_closed_form(st: PureState, p: HamiltonianParams, t: float) -> float:
    """Closed-form l1 coherence at a single time ``t >= 0``.

    Agrees with the matrix path (evolve the density matrix, then take
    :func:`l1_coherence`) to 1e-9; the two routes share no code beyond
    the parameter record.
    """
    if t < 0:
        raise ValueError("evolution time must be nonnegative")
    return float(coherence_series(st, p, np.array([float(t)]))[0])


def theoretical_period(p: HamiltonianParams) -> float | None:
    """Oscillation period ``pi / (s sqrt(|1 - a^2|))`` in the unbroken
    regime; None in the broken regime and at the exceptional point."""
    if regime(p) is not Regime.UNBROKEN:
        return None
    return math.pi / (p.s * math.sqrt(abs(1.0 - p.a * p.a)))


def asymptotic_value(p: HamiltonianParams) -> float | None:
    """Long-time stable coherence value in the broken regime.

    ``1/a`` for PT, ``1`` for APT, independent of the initial state;
    None in the unbroken regime and at the exceptional point (where no
    closed-form limit is exposed — sample the trace instead).
    """
    if regime(p) is not Regime.BROKEN:
        return None
    return 1.0 / p.a if p.kind is SymmetryClass.PT else 1.0


# ---------------------------------------------------------------------------
# numerical extrema
# ---------------------------------------------------------------------------

def _derivative_series(C: Callable[[np.ndarray], np.ndarray], ts: np.ndarray) -> np.ndarray:
    return (C(ts + _DERIV_STEP) - C(ts - _DERIV_STEP)) / (2.0 * _DERIV_STEP)


def _bisect_sign_change(D: Callable[[float], float], lo: float, hi: float) -> float:
    """Bisection on a sign change of D; robust to corner (jump) minima."""
    flo = D(lo)
    for _ in range(100):
        if hi - lo <= _BISECT_WIDTH:
            break
        mid = 0.5 * (lo + hi)
        fmid = D(mid)
        if fmid == 0.0:
            return mid
        if (flo < 0) == (fmid < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_extrema(
    st: PureState,
    p: HamiltonianParams,
    window: tuple[float, float],
    samples: int = 2048,
) -> CoherenceTrace:
    """Locate stationary points of C(t) on the half-open window [t0, t1).

    Dense sampling of the closed form, sign changes of the
    central-difference derivative refined by bisection to time
    tolerance 1e-8.  The left boundary t0 is itself counted as a
    stationary point when the derivative there is negligible compared
    to the derivative scale of the trace (so a window aligned with a
    period boundary reports the boundary extremum exactly once).

    Returns
    -------
    CoherenceTrace
        With extrema sorted by time, plus period and asymptote
        estimates where the window supports them.
    """
    return find_extrema_of_series(
        lambda ts: coherence_series(st, p, ts), window, samples
    )


def find_extrema_of_series(
    series: Callable[[np.ndarray], np.ndarray],
    window: tuple[float, float],
    samples: int = 2048,
) -> CoherenceTrace:
    """Generic stationary-point scan over any smooth vectorized series.

    ``series`` must accept an array of times and tolerate probes
    slightly outside the window (central differences and the pre-point
    slope check evaluate at t ± 2e-6).  Behaviour and tolerances match
    :func:`find_extrema`, which delegates here.
    """
    t0, t1 = float(window[0]), float(window[1])
    if not (t1 > t0):
        raise ValueError(f"window must satisfy t1 > t0, got ({t0}, {t1})")
    if samples < 64:
        raise ValueError(f"samples must be >= 64, got {samples}")

    ts = t0 + (t1 - t0) * np.arange(samples) / samples  # half-open grid
    values = series(ts)

    warning = None
    vmax, vmin = float(values.max()), float(values.min())
    if vmax - vmin <= _CONSTANT_RANGE * max(1.0, vmax):
        return CoherenceTrace(
            times=ts, values=values, extrema=(),
            period_estimate=None,
            asymptote_estimate=_asymptote_estimate(ts, values),
            warning=None,
        )

    D_grid = _derivative_series(series, ts)
    D_point = lambda t: float(_derivative_series(series, np.array([t]))[0])
    dscale = float(np.max(np.abs(D_grid)))
    # a sign flip only counts when the derivative clears the finite-
    # difference noise floor on at least one side: on a settled plateau
    # (deep broken regime) the derivative is pure rounding noise and
    # crosses zero at almost every sample
    flip_floor = _FLIP_FLOOR * dscale

    roots: list[float] = []
    # left boundary counts when stationary relative to the trace's slope scale
    if abs(D_grid[0]) <= 1e-8 * max(1.0, dscale):
        roots.append(t0)
    sign = np.sign(D_grid)
    sign = np.where(sign == 0.0, 1.0, sign)  # exact zeros: avoid missing the flip
    mags = np.abs(D_grid)
    strong = np.maximum(mags[:-1], mags[1:]) > flip_floor
    flips = np.nonzero((sign[:-1] * sign[1:] < 0) & strong)[0]
    for i in flips:
        roots.append(_bisect_sign_change(D_point, float(ts[i]), float(ts[i + 1])))
    # the last subinterval [ts[-1], t1) can hide a flip against the wrap point
    d_last = D_point(t1 - _DERIV_STEP)
    if np.sign(D_grid[-1]) * np.sign(d_last) < 0 and max(
        abs(D_grid[-1]), abs(d_last)
    ) > flip_floor:
        roots.append(_bisect_sign_change(D_point, float(ts[-1]), t1 - _DERIV_STEP))

    cleaned: list[float] = []
    for r in sorted(roots):
        if cleaned and r - cleaned[-1] <= 1e-8:
            continue
        if r >= t1 - 1e-12:
            continue
        cleaned.append(r)
    if len(flips) and samples < 16 * len(flips):
        warning = "window/sampling may be too coarse for the detected oscillation"

    extrema = []
    for r in cleaned:
        val = float(series(np.array([r]))[0])
        left = D_point(r - 2.0 * _DERIV_STEP)  # slope just before the point
        kind = "max" if left > 0 else "min"
        extrema.append(Extremum(time=r, value=val, kind=kind))

    period = _period_estimate(series, extrema, t0, t1, vmax - vmin)
    return CoherenceTrace(
        times=ts,
        values=values,
        extrema=tuple(extrema),
        period_estimate=period,
        asymptote_estimate=_asymptote_estimate(ts, values),
        warning=warning,
    )


def _period_estimate(
    series: Callable[[np.ndarray], np.ndarray],
    extrema: Sequence[Extremum],
    t0: float,
    t1: float,
    value_range: float,
) -> float | None:
    """Smallest extremum-spacing candidate under which the trace folds
    onto itself."""
    candidates: set[float] = set()
    for kind in ("max", "min"):
        times = np.array([e.time for e in extrema if e.kind == kind])
        for stride in (1, 2):
            if len(times) > stride:
                diffs = times[stride:] - times[:-stride]
                candidates.add(float(np.median(diffs)))
    fold_ts = t0 + (t1 - t0) * np.arange(256) / 512.0  # first half of the window
    base = series(fold_ts)
    tol = 1e-4 * max(value_range, 1e-6)
    for cand in sorted(candidates):
        if cand <= 0 or t0 + cand >= t1:
            continue
        shifted = series(fold_ts + cand)
        if float(np.max(np.abs(shifted - base))) <= tol:
            return cand
    return None


def _asymptote_estimate(ts: np.ndarray, values: np.ndarray) -> float | None:
    """Mean of the final 10% of the window, when flat there."""
    n = len(ts)
    tail = slice(max(0, n - max(2, n // 10)), n)
    tt, vv = ts[tail], values[tail]
    if len(tt) < 2 or tt[-1] == tt[0]:
        return None
    slope = float(np.polyfit(tt, vv, 1)[0])
    if abs(slope) >= 1e-6:
        return None
    return float(np.mean(vv))


# ---------------------------------------------------------------------------
# analytic stationary conditions
# ---------------------------------------------------------------------------

def _two_theta_roots(num: float, den: float) -> list[float]:
    """Solutions theta in [0, pi) of  num*cos(2 theta) + den*sin(2 theta) = 0."""
    base = 0.5 * math.atan2(-num, den)
    return [(base % math.pi), (base + math.pi / 2.0) % math.pi]


def verify_extrema_conditions(st: PureState, p: HamiltonianParams) -> PredictedExtrema:
    """Analytic stationary times of C(t) within one period (unbroken only).

    See the module docstring for the conditions.  Times are reported in
    ``[0, T)`` sorted ascending and match :func:`find_extrema` to 1e-6
    for states within the theorem hypotheses (``alpha, beta in (0, 1)``,
    ``sin phi >= 0``).  Outside those hypotheses the conditions are
    still evaluated where defined and the result is flagged.

    Raises
    ------
    ValueError
        If the parameters are not in the unbroken regime.
    """
    if regime(p) is not Regime.UNBROKEN:
        raise ValueError("analytic stationary conditions require the unbroken regime")
    alpha, beta, phi = st.alpha, st.beta, st.phi
    sphi = math.sin(phi)
    a, s = p.a, p.s
    w = math.sqrt(abs(1.0 - a * a))
    T = math.pi / (s * w)
    k = alpha * beta * sphi
    inside = (0.0 < alpha < 1.0) and (0.0 < beta < 1.0) and sphi >= -1e-15
    note = None

    thetas: list[float] = []
    if p.kind is SymmetryClass.PT:
        # C = 1 touches (maxima)
        thetas += _two_theta_roots((alpha**2 - beta**2) * w, a + 2.0 * k)
        # minima: quadratic in u = tan(theta)
        P = 1.0 + 2.0 * k * a
        c0 = w * w * (2.0 * a * alpha**2 * beta**2 + k)
        c1 = w * P * (beta**2 - alpha**2)
        c2 = c0 - P * (a + 2.0 * k)
        if abs(c2) > 1e-13:
            disc = c1 * c1 - 4.0 * c0 * c2
            if disc > 0.0:
                r = math.sqrt(disc)
                thetas += [
                    math.atan((-c1 + r) / (2.0 * c2)) % math.pi,
                    math.atan((-c1 - r) / (2.0 * c2)) % math.pi,
                ]
            elif not inside:
                note = "no real quadratic roots outside the theorem hypotheses"
            else:
                note = "quadratic discriminant unexpectedly nonpositive"
        else:
            # leading coefficient vanished: theta = pi/2 is a root, plus
            # the remaining linear root when present
            thetas.append(math.pi / 2.0)
            if abs(c1) > 1e-13:
                thetas.append(math.atan(-c0 / c1) % math.pi)
    else:
        if abs(alpha - beta) <= 1e-12:
            # x - y = alpha^2 - beta^2 = 0: the coherence is constant,
            # so there are no isolated stationary points
            return PredictedExtrema(times=(), outside_hypotheses=not inside,
                                    note="constant coherence (alpha = beta)")
        thetas += _two_theta_roots(
            2.0 * alpha * beta * w * math.cos(phi),
            1.0 - 2.0 * a * alpha * beta * sphi,
        )

    times = sorted(th / (w * s) for th in thetas)
    deduped: list[float] = []
    for t in times:
        if deduped and t - deduped[-1] <= 1e-9:
            continue
        if t >= T - 1e-12:
            continue
        deduped.append(t)
    return PredictedExtrema(times=tuple(deduped), outside_hypotheses=not inside, note=note)


# ---------------------------------------------------------------------------
# backflow classification
# ---------------------------------------------------------------------------

def classify_backflow(
    st: PureState,
    p: HamiltonianParams,
    samples: int = 2048,
) -> BackflowReport:
    """Count stationary points per period and classify the trace shape.

    In the unbroken regime the window is exactly one theoretical
    period, so the count is the count theorem's subject: 4 (PT,
    double touch: both maxima return to the C = 1 level within the
    full-touch threshold) or 2 (APT, single backflow).  In the broken
    regime and at the exceptional point a window of ``10/s`` is used
    and the trace is typically monotonic.  A flat trace (value range
    below 1e-10) classifies as constant with zero stationary points.
    """
    T = theoretical_period(p)
    window = (0.0, T) if T is not None else (0.0, 10.0 / p.s)
    trace = find_extrema(st, p, window, samples=samples)
    vmax, vmin = float(trace.values.max()), float(trace.values.min())
    if vmax - vmin <= _CONSTANT_RANGE * max(1.0, vmax):
        return BackflowReport(zeros_per_period=0, classification=Classification.CONSTANT)
    count = len(trace.extrema)
    if count >= 4:
        cls = Classification.DOUBLE_TOUCH
    elif count >= 2:
        cls = Classification.SINGLE_BACKFLOW
    else:
        cls = Classification.MONOTONIC
    return BackflowReport(zeros_per_period=count, classification=cls)

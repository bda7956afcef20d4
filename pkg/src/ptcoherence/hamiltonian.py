"""Two-level PT- and anti-PT-symmetric generators.

The package studies the two-parameter Hamiltonian families

    H_PT  = s * (sigma_x + i a sigma_z)   (PT-symmetric)
    H_APT = s * (i sigma_x + a sigma_z)   (anti-PT-symmetric)

with energy scale ``s > 0`` and non-Hermiticity degree ``a > 0`` (the
gain/loss rate is ``gamma = a * s``).  Both are traceless and
non-Hermitian.  Their eigenvalue pairs are

    lambda_PT  = +/- s * sqrt(1 - a^2)
    lambda_APT = +/- s * sqrt(a^2 - 1)

so each family has a real-spectrum ("unbroken") region, an
imaginary-spectrum ("broken") region, and a degeneracy at ``a = 1``
where eigenvalues and eigenvectors coalesce (the exceptional point).
Note the regions are swapped between the families: PT is unbroken for
``a < 1`` while APT is unbroken for ``a > 1``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .tolerances import DEFAULT_TOLS

__all__ = [
    "SymmetryClass",
    "Regime",
    "HamiltonianParams",
    "build_hamiltonian",
    "eigenvalues",
    "regime",
]


class SymmetryClass(enum.Enum):
    """Which of the two generator families a parameter set belongs to."""

    PT = "pt"
    APT = "apt"


class Regime(enum.Enum):
    """Spectral phase of a generator: real, imaginary, or degenerate."""

    UNBROKEN = "unbroken"
    BROKEN = "broken"
    EXCEPTIONAL_POINT = "exceptional_point"


@dataclass(frozen=True)
class HamiltonianParams:
    """Parameters selecting one generator from the two families.

    Attributes
    ----------
    kind:
        The symmetry family (PT or APT).
    s:
        Energy scale, strictly positive.  Times are naturally measured
        through the dimensionless product ``s * t``.
    a:
        Dimensionless non-Hermiticity degree, strictly positive; the
        gain/loss rate is recovered as ``gamma = a * s``.
    """

    kind: SymmetryClass
    s: float = 1.0
    a: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.kind, SymmetryClass):
            raise ValueError("kind must be a SymmetryClass member")
        if not (np.isfinite(self.s) and self.s > 0):
            raise ValueError(f"energy scale s must be positive and finite, got {self.s}")
        if not (np.isfinite(self.a) and self.a > 0):
            raise ValueError(f"non-Hermiticity degree a must be positive and finite, got {self.a}")

    @property
    def gamma(self) -> float:
        """Gain/loss rate ``gamma = a * s``."""
        return self.a * self.s


def build_hamiltonian(p: HamiltonianParams) -> np.ndarray:
    """Construct the 2x2 generator matrix for ``p``.

    Returns
    -------
    numpy.ndarray
        PT:  ``[[i*a*s, s], [s, -i*a*s]]``;
        APT: ``[[a*s, i*s], [i*s, -a*s]]``.  Both are traceless.
    """
    s, a = p.s, p.a
    if p.kind is SymmetryClass.PT:
        return np.array([[1j * a * s, s], [s, -1j * a * s]], dtype=complex)
    return np.array([[a * s, 1j * s], [1j * s, -a * s]], dtype=complex)


def eigenvalues(p: HamiltonianParams) -> tuple[complex, complex]:
    """Closed-form eigenvalue pair of the generator, ``(+, -)`` branch order.

    The pair is ``+/- s*sqrt(1 - a^2)`` for PT and ``+/- s*sqrt(a^2 - 1)``
    for APT: purely real in the unbroken regime, purely imaginary in the
    broken regime, and ``(0, 0)`` at the exceptional point.  The positive
    branch (principal square root) is returned first so downstream
    consumers see a deterministic order.
    """
    if p.kind is SymmetryClass.PT:
        lam = p.s * np.sqrt(complex(1.0 - p.a * p.a))
    else:
        lam = p.s * np.sqrt(complex(p.a * p.a - 1.0))
    return complex(lam), complex(-lam)


def regime(p: HamiltonianParams, eps: float = DEFAULT_TOLS.ep_band) -> Regime:
    """Classify the spectral phase of ``p``.

    Parameters
    ----------
    p:
        Generator parameters.
    eps:
        Half-width of the band ``|a - 1| <= eps`` classified as the
        exceptional point.  The degeneracy is mathematically a single
        point, but floating-point parameter scans need a band; since
        ``a`` is order unity near the transition, the band is applied
        to ``|a - 1|`` directly.

    Returns
    -------
    Regime
        ``EXCEPTIONAL_POINT`` within the band; otherwise PT is
        ``UNBROKEN`` for ``a < 1`` and ``BROKEN`` for ``a > 1``, and
        APT is the mirror image (``UNBROKEN`` for ``a > 1``).
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if abs(p.a - 1.0) <= eps:
        return Regime.EXCEPTIONAL_POINT
    below = p.a < 1.0
    if p.kind is SymmetryClass.PT:
        return Regime.UNBROKEN if below else Regime.BROKEN
    return Regime.BROKEN if below else Regime.UNBROKEN

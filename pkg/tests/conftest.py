"""Shared fixtures: JIT warmup and seeded random-state helpers."""
from __future__ import annotations

import numpy as np
import pytest

import ptcoherence as pc


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the JIT kernels once, so timed tests measure numerics only."""
    ts = np.linspace(0.0, 1.0, 8)
    st = pc.PureState.preset("D")
    psi = pc.TwoQubitState.psi_1()
    for kind in (pc.SymmetryClass.PT, pc.SymmetryClass.APT):
        for a in (0.5, 1.0, 1.5):
            p = pc.HamiltonianParams(kind=kind, s=1.0, a=a)
            pc.coherence_series(st, p, ts)
            pc.two_qubit_series(psi, p, ts)


def random_states(seed: int, n: int, lo: float = 0.05, hi: float = 0.95):
    """Seeded random pure states with alpha, beta in (lo, hi) renormalized
    and sin(phi) >= 0 (the hypothesis of the stationary-count theorems)."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        alpha = rng.uniform(lo, hi)
        beta = rng.uniform(lo, hi)
        phi = rng.uniform(0.0, np.pi)  # sin(phi) >= 0
        out.append(pc.PureState.from_amplitudes(alpha, beta, phi))
    return out


def random_params(seed: int, n: int, a_lo: float = 0.05, a_hi: float = 3.0):
    """Seeded random Hamiltonian parameter sets spanning both kinds."""
    rng = np.random.default_rng(seed)
    kinds = (pc.SymmetryClass.PT, pc.SymmetryClass.APT)
    return [
        pc.HamiltonianParams(
            kind=kinds[int(rng.integers(2))],
            s=float(rng.uniform(0.2, 2.0)),
            a=float(rng.uniform(a_lo, a_hi)),
        )
        for _ in range(n)
    ]

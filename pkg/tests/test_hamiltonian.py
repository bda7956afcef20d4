"""Generator construction, spectra, and regime classification."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptcoherence import (
    HamiltonianParams,
    Regime,
    SymmetryClass,
    build_hamiltonian,
    eigenvalues,
    regime,
)


def _pt(a: float, s: float = 1.0) -> HamiltonianParams:
    return HamiltonianParams(kind=SymmetryClass.PT, s=s, a=a)


def _apt(a: float, s: float = 1.0) -> HamiltonianParams:
    return HamiltonianParams(kind=SymmetryClass.APT, s=s, a=a)


def test_pt_matrix_layout():
    h = build_hamiltonian(_pt(0.31, s=2.0))
    assert np.allclose(h, [[0.62j, 2.0], [2.0, -0.62j]], atol=1e-15)


def test_apt_matrix_layout():
    h = build_hamiltonian(_apt(2.8, s=0.5))
    assert np.allclose(h, [[1.4, 0.5j], [0.5j, -1.4]], atol=1e-15)


def test_pt_matrix_is_traceless_and_pt_type():
    # diagonal purely imaginary (balanced gain/loss), coupling real
    h = build_hamiltonian(_pt(0.7))
    assert h[0, 0] == -h[1, 1]
    assert h[0, 0].real == 0.0
    assert h[0, 1].imag == 0.0


def test_eigenvalues_unbroken_pt_real():
    lam_plus, lam_minus = eigenvalues(_pt(0.47))
    # frozen from the dense eigensolver
    assert lam_plus == pytest.approx(0.8826664149042944, abs=1e-12)
    assert lam_minus == pytest.approx(-0.8826664149042944, abs=1e-12)
    assert abs(lam_plus.imag) < 1e-15


def test_eigenvalues_broken_pt_imaginary():
    lam_plus, lam_minus = eigenvalues(_pt(1.5))
    assert lam_plus == pytest.approx(1.1180339887498949j, abs=1e-12)
    assert lam_minus == pytest.approx(-1.1180339887498949j, abs=1e-12)


def test_eigenvalues_apt_mirror():
    # APT: real for a > 1, imaginary for a < 1
    lam_plus, _ = eigenvalues(_apt(1.5))
    assert lam_plus == pytest.approx(1.1180339887498949, abs=1e-12)
    lam_plus, _ = eigenvalues(_apt(0.47))
    assert lam_plus == pytest.approx(0.8826664149042944j, abs=1e-12)


def test_eigenvalues_vanish_at_coalescence():
    for p in (_pt(1.0), _apt(1.0)):
        lam_plus, lam_minus = eigenvalues(p)
        assert lam_plus == 0 and lam_minus == 0


@given(
    a=st.floats(0.05, 3.0, allow_nan=False),
    s=st.floats(0.1, 3.0, allow_nan=False),
    kind=st.sampled_from([SymmetryClass.PT, SymmetryClass.APT]),
)
@settings(max_examples=60, deadline=None)
def test_eigenvalues_match_dense_solver(a, s, kind):
    p = HamiltonianParams(kind=kind, s=s, a=a)
    ours = eigenvalues(p)
    dense = np.linalg.eigvals(build_hamiltonian(p))
    # match as an unordered pair (dense solver order is arbitrary)
    direct = abs(ours[0] - dense[0]) + abs(ours[1] - dense[1])
    swapped = abs(ours[0] - dense[1]) + abs(ours[1] - dense[0])
    assert min(direct, swapped) < 1e-10 * max(1.0, s)
    # traceless pair
    assert abs(ours[0] + ours[1]) < 1e-12 * max(1.0, s)


def test_regime_classification_pt():
    assert regime(_pt(0.31)) is Regime.UNBROKEN
    assert regime(_pt(1.5)) is Regime.BROKEN
    assert regime(_pt(1.0)) is Regime.EXCEPTIONAL_POINT


def test_regime_classification_apt_is_mirrored():
    assert regime(_apt(0.31)) is Regime.BROKEN
    assert regime(_apt(1.5)) is Regime.UNBROKEN
    assert regime(_apt(1.0)) is Regime.EXCEPTIONAL_POINT


def test_regime_eps_band():
    assert regime(_pt(1.0 + 1e-12)) is Regime.EXCEPTIONAL_POINT
    assert regime(_pt(1.0 - 1e-12)) is Regime.EXCEPTIONAL_POINT
    assert regime(_pt(1.0 + 1e-6), eps=1e-7) is Regime.BROKEN


def test_gamma_property():
    assert _pt(0.31, s=2.0).gamma == pytest.approx(0.62)


@pytest.mark.parametrize("bad", [0.0, -1.0, np.nan, np.inf])
def test_invalid_a_rejected(bad):
    with pytest.raises(ValueError):
        _pt(bad)


@pytest.mark.parametrize("bad", [0.0, -0.5, np.nan])
def test_invalid_s_rejected(bad):
    with pytest.raises(ValueError):
        _pt(0.5, s=bad)

"""Validation, closed-form scalars and linearization spectra."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

import loclab as L
from conftest import SWEEP

ADMISSIBLE_NP = st.one_of(
    st.integers(1, 20).map(lambda l: (2 * l + 1, 2 * l)),
    st.integers(1, 10).map(lambda l: (4 * l + 3, 4 * l)),
    st.just((15, 8)),
)
EVEN_K = st.integers(1, 25).map(lambda j: 2 * j)


def test_families():
    assert L.classify_family(3, 2).kind is L.FamilyKind.COMPLEX_PROJECTIVE
    assert L.classify_family(7, 4).kind is L.FamilyKind.QUATERNIONIC_PROJECTIVE
    assert L.classify_family(15, 8).kind is L.FamilyKind.OCTONIONIC_LINE
    assert L.classify_family(4, 2) is None
    assert L.classify_family(15, 14).kind is L.FamilyKind.COMPLEX_PROJECTIVE


def test_validate_examples():
    p = L.validate_params(3, 2, 2)
    assert p.family == L.Family(L.FamilyKind.COMPLEX_PROJECTIVE, 1)
    assert p.lam == 2.0
    assert p.stability is L.Stability.TYPE_I

    p = L.validate_params(5, 4, 6)
    assert math.isclose(p.lam, math.sqrt(15), rel_tol=1e-15)
    assert p.stability is L.Stability.TYPE_II

    with pytest.raises(L.InvalidDegree):
        L.validate_params(3, 2, 3)
    with pytest.raises(L.InvalidDegree):
        L.validate_params(3, 2, 0)
    with pytest.raises(L.InvalidFamily):
        L.validate_params(4, 2, 2)


def test_relaxed_mode():
    p = L.validate_params(4, 2, 3, relaxed=True)
    assert p.relaxed and p.family is None
    with pytest.raises(L.InvalidFamily):
        L.validate_params(2, 4, 2, relaxed=True)
    # relaxed still computes a discriminant-based classification
    assert p.stability in (L.Stability.TYPE_I, L.Stability.TYPE_II)


def test_singular_values():
    assert L.singular_value(L.validate_params(3, 2, 2)) == 2.0
    assert math.isclose(
        L.singular_value(L.validate_params(5, 4, 2)), math.sqrt(3), rel_tol=1e-15
    )
    assert L.singular_value(L.validate_params(15, 8, 2)) == 2.0


def test_cone_angle_examples():
    assert math.isclose(
        L.cone_angle(L.validate_params(3, 2, 2)), math.acos(2 / 3), rel_tol=1e-15
    )
    assert math.isclose(
        L.cone_angle(L.validate_params(7, 4, 2)),
        math.acos(2 / math.sqrt(7)),
        rel_tol=1e-15,
    )
    assert math.isclose(
        L.cone_angle(L.validate_params(3, 2, 4)),
        math.acos(2 / math.sqrt(11)),
        rel_tol=1e-15,
    )


def test_slope_examples():
    assert math.isclose(
        L.slope_phi0(L.validate_params(3, 2, 2)), math.sqrt(5) / 2, rel_tol=1e-15
    )
    assert math.isclose(
        L.slope_phi0(L.validate_params(3, 2, 4)), math.sqrt(7) / 2, rel_tol=1e-15
    )
    assert math.isclose(
        L.slope_phi0(L.validate_params(5, 4, 2)), math.sqrt(7 / 3), rel_tol=1e-15
    )


def test_stability_lists():
    expected = {
        (3, 2, 2): "TypeI",
        (3, 2, 4): "TypeII",
        (3, 2, 6): "TypeII",
        (5, 4, 2): "TypeI",
        (5, 4, 4): "TypeI",
        (5, 4, 6): "TypeII",
        (7, 4, 2): "TypeI",
        (15, 8, 2): "TypeI",
    }
    for npk, want in expected.items():
        assert L.validate_params(*npk).stability.value == want


def test_spectra_examples():
    s = L.spectra(L.validate_params(3, 2, 2))
    assert s.mu1 == 1 and s.mu2 == -5
    assert s.discriminant == 1

    s = L.spectra(L.validate_params(3, 2, 4))
    assert s.mu1 == 3 and s.mu2 == -7
    assert s.discriminant == -5
    assert s.mu3.imag != 0.0


@given(np_pair=ADMISSIBLE_NP, k=EVEN_K)
def test_angle_slope_consistency(np_pair, k):
    n, p = np_pair
    params = L.validate_params(n, p, k)
    assert math.isclose(math.tan(params.theta), params.phi0, rel_tol=1e-12)
    # lambda^2 p = k(k+n-1) exactly
    assert params.lambda2 * p == k * (k + n - 1)
    assert params.lam > math.sqrt(n / p)
    assert 0.0 < params.theta < math.pi / 2


@given(np_pair=ADMISSIBLE_NP, k=EVEN_K)
def test_characteristic_polynomial_exact(np_pair, k):
    n, p = np_pair
    params = L.validate_params(n, p, k)
    s = L.spectra(params)
    K = k * (k + n - 1)
    for mu in (s.mu1, s.mu2):
        assert mu * mu + (n + 1) * mu - (K - n) == 0
    assert s.b == -n - 1
    assert Fraction(s.mu3.real * 2) == Fraction(s.b) if s.discriminant < 0 else True


@given(np_pair=ADMISSIBLE_NP, k=EVEN_K)
def test_spectral_matrices(np_pair, k):
    n, p = np_pair
    params = L.validate_params(n, p, k)
    s = L.spectra(params)
    assert np.max(np.abs(s.A @ s.V1 - s.mu1 * s.V1)) < 1e-12 * max(1, abs(s.mu1))
    assert np.max(np.abs(s.A @ s.V2 - s.mu2 * s.V2)) < 1e-12 * abs(s.mu2)
    assert np.trace(s.B) == -(n + 1)
    assert float(-s.a) > 0
    assert math.isclose(np.linalg.det(s.B), float(-s.a), rel_tol=1e-12)
    # eigenvalue pair consistency
    assert math.isclose((s.mu3 + s.mu4).real, s.b, rel_tol=0, abs_tol=1e-12)
    assert math.isclose((s.mu3 * s.mu4).real, float(-s.a), rel_tol=1e-12)


@given(np_pair=ADMISSIBLE_NP, k=EVEN_K)
def test_stability_matches_discriminant(np_pair, k):
    n, p = np_pair
    params = L.validate_params(n, p, k)
    assert (params.stability is L.Stability.TYPE_II) == (params.discriminant < 0)


def test_sweep_list_valid():
    for npk in SWEEP:
        L.validate_params(*npk)

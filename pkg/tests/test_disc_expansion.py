import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rho_jmatrix import disc_expansion as de
from rho_jmatrix import oscillator as osc
from rho_jmatrix.errors import DomainError, TruncationError
from rho_jmatrix.jmatrix_core import recurrence_polynomials
from rho_jmatrix.quadrature import integrate_halfline

P1 = osc.OscillatorParams(1, 1.0)

disc_points = st.builds(
    lambda r, t: r * complex(math.cos(t), math.sin(t)),
    st.floats(0.0, 0.7),
    st.floats(0.0, 2 * math.pi),
)


def test_origin_labels():
    assert de.disc_from_frakz(P1, 0.0).z == 0
    assert de.frakz_from_disc(P1, 0.0).value == 0


@settings(max_examples=50, deadline=None)
@given(disc_points, st.integers(0, 3), st.floats(0.2, 5))
def test_label_roundtrip(z, ell, omega):
    p = osc.OscillatorParams(ell, omega)
    back = de.disc_from_frakz(p, de.frakz_from_disc(p, z)).z
    assert abs(back - z) <= 1e-14


def test_xi_matches_meixner_parameter():
    fz = 0.8 - 0.5j
    d = de.disc_from_frakz(P1, fz)
    assert d.xi == pytest.approx(de.meixner_parameter(P1, fz), rel=1e-15)
    assert d.tau == pytest.approx(d.z**2)


def test_disc_point_validation():
    with pytest.raises(DomainError):
        de.DiscPoint(1.0)


def test_chain_degree_zero_is_one():
    assert de.meixner_chain_P(0, 4, P1, 0.7 + 0.2j) == pytest.approx(1.0)


def test_chain_matches_recurrence():
    fz = de.frakz_from_disc(P1, 0.45 + 0.3j)
    rep = osc.tridiag_coefficients(P1, fz, 13)
    for m in range(21):
        p = recurrence_polynomials(rep, 2 * m, 12).values
        q = np.array([de.meixner_chain_P(n, m, P1, fz) for n in range(13)])
        assert np.max(np.abs(p - q) / np.maximum(1, np.abs(q))) < 1e-10


def test_chain_undefined_at_zero_label():
    with pytest.raises(DomainError):
        de.meixner_chain_P(1, 0, P1, 0.0)


def test_printed_meixner_normalization_fails_recurrence():
    fz = de.frakz_from_disc(P1, 0.45 + 0.3j)
    rep = osc.tridiag_coefficients(P1, fz, 4)
    p = recurrence_polynomials(rep, 2.0, 3).values[3]
    assert abs(p - de.meixner_chain_P(3, 1, P1, fz, printed=True)) > 1e-2


@pytest.mark.parametrize("z", [0.45 + 0.3j, 0.05, -0.6j])
def test_meixner_recurrence_residual(z):
    fz = de.frakz_from_disc(P1, z)
    worst = max(de.meixner_recurrence_residual(n, m, P1, fz) for n in range(1, 16) for m in range(31))
    assert worst < 1e-10


def test_C_origin():
    assert de.coefficient_C(0, 0, P1, 0.3 + 0.1j) == pytest.approx(1.0)
    C = np.array([[de.coefficient_C(n, s, P1, 0.0) for s in range(4)] for n in range(4)])
    assert np.all(C[~np.eye(4, dtype=bool)] == 0)
    assert np.all(np.diag(C) != 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10), st.integers(0, 10), disc_points.filter(lambda z: abs(z) > 1e-3))
def test_C_dual_forms(n, s, z):
    a = de.coefficient_C(n, s, P1, z)
    b = de.coefficient_C(n, s, P1, z, form="meixner")
    assert abs(a - b) <= 1e-11 * max(abs(a), 1.0)


def test_C_meixner_form_needs_nonzero_z():
    with pytest.raises(DomainError):
        de.coefficient_C(1, 1, P1, 0.0, form="meixner")


def test_eta_identity_at_origin():
    E = de.eta_matrix(P1, 0.0, 5, 5).values
    assert np.allclose(E, np.eye(6), atol=1e-15)


def test_eta_ground_entry():
    z = 0.5 - 0.2j
    assert de.eta_coefficient(0, 0, P1, z) == pytest.approx((1 - abs(z) ** 2) ** (P1.beta / 2), rel=1e-15)


@settings(max_examples=20, deadline=None)
@given(disc_points, st.integers(0, 10))
def test_eta_column_unit_norm(z, n):
    col = np.array([de.eta_coefficient(s, n, P1, z) for s in range(600)])
    assert abs(np.sum(np.abs(col) ** 2) - 1) < 1e-10


@settings(max_examples=20, deadline=None)
@given(disc_points, st.integers(0, 10))
def test_eta_row_unit_norm(z, s):
    row = np.array([de.eta_coefficient(s, n, P1, z) for n in range(600)])
    assert abs(np.sum(np.abs(row) ** 2) - 1) < 1e-9


def test_gamma_equals_eta_transpose():
    fz = de.frakz_from_disc(P1, 0.3 + 0.4j)
    d = de.disc_from_frakz(P1, fz)
    for n in range(5):
        for m in range(5):
            assert de.gamma_coefficient(n, m, P1, fz) == pytest.approx(de.eta_coefficient(m, n, P1, d), abs=1e-13)


def test_gamma_limit_at_zero_label():
    assert de.gamma_coefficient(2, 2, P1, 0.0) == 1
    assert de.gamma_coefficient(2, 3, P1, 0.0) == 0


def test_reconstruction_at_real_scale():
    lam = 1.3
    fz = osc.frakz_from_scale(P1, lam)
    r = np.linspace(0.2, 4.0, 30)
    for m in range(4):
        tot = sum(de.gamma_coefficient(n, m, P1, fz) * osc.basis_phi(n, P1, lam, r) for n in range(150))
        assert np.max(np.abs(tot - osc.eigenfunction_f(m, P1, r))) < 1e-6
    # the alternative xi^(-beta/2) normalization does not reconstruct
    tot = sum(de.gamma_coefficient(n, 1, P1, fz, "printed") * osc.basis_phi(n, P1, lam, r) for n in range(150))
    assert np.max(np.abs(tot - osc.eigenfunction_f(1, P1, r))) > 1e-2


def test_biorthogonality_with_real_weight():
    z = 0.45 + 0.3j
    d = de.DiscPoint(z)
    fz = de.frakz_from_disc(P1, d)
    G = np.zeros((8, 8), dtype=complex)
    for m in range(400):
        P = np.array([de.meixner_chain_P(n, m, P1, fz) for n in range(8)])
        G += de.meixner_weight(m, P1, d) * np.outer(P, P.conj())
    assert np.max(np.abs(G - np.eye(8))) < 1e-9


def test_rho_factor_times_chain_is_overlap():
    z = -0.2 + 0.5j
    fz = de.frakz_from_disc(P1, z)
    for n in range(4):
        for m in range(4):
            v = de.rho_factor(m, P1, z) * de.meixner_chain_P(n, m, P1, fz)
            assert v == pytest.approx(de.eta_coefficient(m, n, P1, z), abs=1e-13)


@pytest.mark.parametrize("n", [0, 1, 4])
def test_series_at_origin_is_eigenfunction(n):
    r = np.linspace(0.1, 4, 9)
    assert np.allclose(de.phi_series(n, P1, 0.0, r), osc.eigenfunction_f(n, P1, r), atol=1e-15)
    assert np.allclose(de.phi_closed_form(n, P1, 0.0, r), osc.eigenfunction_f(n, P1, r), rtol=1e-14, atol=1e-15)


@settings(max_examples=25, deadline=None)
@given(disc_points, st.integers(0, 4))
def test_closed_form_matches_series(z, n):
    r = np.linspace(0.05, 5.0, 10)
    assert np.max(np.abs(de.phi_closed_form(n, P1, z, r) - de.phi_series(n, P1, z, r))) < 1e-8


def test_ground_member_explicit_formula():
    p = osc.OscillatorParams(0, 1.0)
    z = 0.3 - 0.4j
    zc = np.conj(z)
    r = np.linspace(0.1, 4, 8)
    ref = (
        math.sqrt(2 / math.gamma(1.5)) * r * (1 - abs(z) ** 2) ** 0.75 / (1 - zc) ** 1.5
        * np.exp(-r * r * (1 + zc) / (2 * (1 - zc)))
    )
    assert np.allclose(de.phi_closed_form(0, p, z, r), ref, rtol=1e-13)
    assert np.allclose(de.radial_coherent_state(p, z, r), ref, rtol=1e-13)
    assert np.max(np.abs(de.phi_series(0, p, z, r) - ref)) < 1e-8


@pytest.mark.parametrize("z", [0.0, 0.6 + 0.2j, -0.7])
@pytest.mark.parametrize("n", [0, 2])
def test_closed_form_unit_norm(z, n):
    y = (1 - abs(z) ** 2) / abs(1 - z) ** 2
    v = integrate_halfline(lambda r: np.abs(de.phi_closed_form(n, P1, z, r)) ** 2, decay_scale=y, power=4)
    assert v == pytest.approx(1.0, abs=1e-8)


def test_series_truncation_cap():
    with pytest.raises(TruncationError):
        de.phi_series(0, P1, 0.99, 1.0, max_terms=20)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rho_jmatrix import coherent_group as cg
from rho_jmatrix import landau as ld
from rho_jmatrix import oscillator as osc
from rho_jmatrix.errors import DomainError, StepError
from rho_jmatrix.quadrature import integrate_disc, integrate_halfline

disc_points = st.builds(
    lambda r, t: r * complex(math.cos(t), math.sin(t)),
    st.floats(0.0, 0.6),
    st.floats(0.0, 2 * math.pi),
)


def test_params_validation():
    with pytest.raises(DomainError):
        ld.LandauParams(0.4, 0)
    with pytest.raises(DomainError):
        ld.LandauParams(1.75, 2)
    with pytest.raises(DomainError):
        ld.LandauParams(1.75, -1)
    assert ld.LandauParams(3.25, 1).c_Bn == pytest.approx(math.sqrt(3.5))


@pytest.mark.parametrize("B,n,expected", [(1.0, 0, 0.0), (3.25, 1, -2.8125)])
def test_eigenvalue_examples(B, n, expected):
    assert ld.landau_eigenvalue(ld.LandauParams(B, n)) == pytest.approx(expected, abs=1e-15)


def test_eigenvalue_depends_on_gap_only():
    assert ld.landau_eigenvalue(ld.LandauParams(3.25, 1)) == ld.landau_eigenvalue(ld.LandauParams(2.25, 0))


def test_phi_at_origin():
    assert ld.phi_landau(ld.LandauParams(3.25, 1), 0, 0.0) == pytest.approx(1.0)


def test_phi_rejects_large_j():
    with pytest.raises(DomainError):
        ld.phi_landau(ld.LandauParams(3.25, 1), 2, 0.1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(1.75, 0), (1.75, 1), (3.25, 0), (3.25, 2)]), st.integers(-6, 2), disc_points)
def test_phi_jacobi_forms(bn, j, z):
    lp = ld.LandauParams(*bn)
    j = min(j, lp.n)
    a = ld.phi_landau(lp, j, z)
    b = ld.phi_landau_jacobi(lp, j, z)
    assert abs(a - b) <= 1e-11 * max(1.0, abs(a))


def test_phi_top_index_is_pure_power():
    lp = ld.LandauParams(3.25, 2)
    z = 0.3 + 0.4j
    assert ld.phi_landau(lp, 2, z) == pytest.approx(np.conj(z) ** 2 * (1 - abs(z) ** 2) ** (3.25 - 2))


@pytest.mark.parametrize("B,n", [(1.75, 0), (3.25, 1), (2.0, 1)])
def test_norm_j_zero(B, n):
    lp = ld.LandauParams(B, n)
    assert ld.phi_norm_sq(lp, 0) == pytest.approx(1 / (2 * (B - n) - 1), rel=1e-14)


def test_norm_example_against_quadrature():
    lp = ld.LandauParams(3.25, 0)
    q = integrate_disc(lambda z: np.abs(ld.phi_landau(lp, -2, z)) ** 2, -2.0, 2 * lp.B)
    assert q == pytest.approx(ld.phi_norm_sq(lp, -2), rel=1e-8)


@pytest.mark.parametrize("B", [1.75, 3.25])
def test_norms_against_quadrature(B):
    for n in range(int(B - 0.5) + 1):
        lp = ld.LandauParams(B, n)
        for j in range(-4, n + 1):
            norm = ld.phi_norm_sq(lp, j)
            assert norm > 0
            q = integrate_disc(lambda z: np.abs(ld.phi_landau(lp, j, z)) ** 2, -2.0, 2 * (B - n))
            assert q == pytest.approx(norm, rel=1e-8)


def test_norm_diverges_at_edge():
    with pytest.raises(DomainError):
        ld.phi_norm_sq(ld.LandauParams(1.5, 1), 0)


@pytest.mark.parametrize("B", [1.75, 3.25])
def test_eigenfunction_property(B):
    rng = np.random.default_rng(11)
    zs = 0.6 * np.sqrt(rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
    for n in range(int(B - 0.5) + 1):
        lp = ld.LandauParams(B, n)
        eps = ld.landau_eigenvalue(lp)
        for j in range(-3, n + 1):
            F = lambda z, j=j: ld.phi_landau(lp, j, z)  # noqa: E731
            vals = np.array([F(z) for z in zs])
            out = np.array([ld.apply_delta_B(F, B, z) for z in zs])
            scale = max(abs(eps), 1.0) * math.sqrt(np.mean(np.abs(vals) ** 2))
            assert np.max(np.abs(out - eps * vals)) <= 1e-5 * scale


def test_delta_on_constant():
    B, z = 2.0, 0.3 + 0.1j
    w = 1 - abs(z) ** 2
    one = lambda z: np.ones_like(np.asarray(z), dtype=complex)  # noqa: E731
    assert ld.apply_delta_B(one, B, z, prefactor=-0.25) == pytest.approx(-B * B * w / 4, rel=1e-10)
    assert ld.apply_delta_B(one, B, z) == pytest.approx(-B * B * w, rel=1e-10)


def test_quarter_prefactor_scales_eigenvalue():
    lp = ld.LandauParams(3.25, 1)
    F = lambda z: ld.phi_landau(lp, -1, z)  # noqa: E731
    z = 0.2 - 0.3j
    ratio = ld.apply_delta_B(F, lp.B, z, prefactor=-0.25) / F(z)
    assert ratio == pytest.approx(ld.landau_eigenvalue(lp) / 4, rel=1e-6)


@settings(max_examples=15, deadline=None)
@given(st.floats(-2, 2), disc_points)
def test_delta_linear(alpha, z):
    lp = ld.LandauParams(3.25, 1)
    F = lambda w: ld.phi_landau(lp, 0, w)  # noqa: E731
    G = lambda w: ld.phi_landau(lp, -2, w)  # noqa: E731
    lhs = ld.apply_delta_B(lambda w: alpha * F(w) + G(w), lp.B, z)
    rhs = alpha * ld.apply_delta_B(F, lp.B, z) + ld.apply_delta_B(G, lp.B, z)
    assert abs(lhs - rhs) < 1e-8


def test_delta_step_errors():
    one = lambda z: 1.0  # noqa: E731
    with pytest.raises(StepError):
        ld.apply_delta_B(one, 2.0, 1.0)
    with pytest.raises(StepError):
        ld.apply_delta_B(one, 2.0, 0.95, h=0.1)


P = osc.OscillatorParams(1, 1.0)
LP = ld.LandauParams.from_oscillator(P, 1)
R = np.linspace(0.1, 4.0, 25)


def test_kappa_relation():
    for g in [cg.AffinePoint(0.4, 1.7), cg.AffinePoint(-1.0, 0.3)]:
        a = cg.cs_group(g, P, 1, R)
        b = np.sqrt(2 / R) * ld.kappa_state(g, LP, P, R * R)
        assert np.max(np.abs(a - b)) < 1e-12


def test_kappa_identity_is_mapped_eigenfunction():
    u = R * R
    a = ld.kappa_state(cg.IDENTITY, LP, P, u)
    b = ld.to_kappa_space(lambda r: osc.eigenfunction_f(1, P, r))(u)
    assert np.max(np.abs(a - b)) < 1e-13


def test_kappa_unit_weight():
    g = cg.AffinePoint(0.4, 1.7)
    v = integrate_halfline(lambda r: np.abs(ld.kappa_state(g, LP, P, r * r)) ** 2 * 2 / r,
                           decay_scale=g.y * P.omega, power=2 * P.beta - 1)
    assert v == pytest.approx(1.0, abs=1e-8)


def test_kappa_linkage_enforced():
    with pytest.raises(DomainError):
        ld.kappa_state(cg.IDENTITY, ld.LandauParams(3.0, 1), P, 1.0)


def test_transform_image_eigen_relation():
    eps = ld.landau_eigenvalue(LP)
    f = lambda r: osc.eigenfunction_f(2, P, r)  # noqa: E731
    F = lambda x, y: ld.transform_B(f, cg.AffinePoint(x, y), LP, P)  # noqa: E731
    for g in [cg.AffinePoint(0.2, 1.0), cg.AffinePoint(-0.5, 0.7), cg.AffinePoint(1.0, 2.0)]:
        v = F(g.x, g.y)
        hv = ld.apply_H_B(F, LP.B, g)
        # images satisfy (-H_B) F = eps F
        assert abs(-hv - eps * v) <= 1e-4 * max(abs(eps), 1) * abs(v)


def test_H_B_step_error():
    with pytest.raises(StepError):
        ld.apply_H_B(lambda x, y: 1.0, 2.0, cg.AffinePoint(0, 0.5), h=0.6)


def test_identity_example():
    lp = ld.LandauParams(3.25, 1)
    assert ld.landau_identity_check(lp, 3, 0.4 + 0.2j) < 1e-12


def test_identity_at_origin_diagonal():
    lp = ld.LandauParams(3.25, 1)
    lhs, rhs = ld.landau_identity_sides(lp, 1, 0.0)
    assert lhs == pytest.approx(rhs, abs=1e-14)
    assert lhs == pytest.approx(lp.c_Bn * 1.0)


@pytest.mark.parametrize("ell", [0, 1, 2])
def test_identity_grid(ell):
    p = osc.OscillatorParams(ell, 1.0)
    radii = np.linspace(0.1, 0.85, 7)
    grid = (radii[:, None] * np.exp(1j * (2 * np.pi * np.arange(7) / 7 + 0.3))[None, :]).ravel()
    for n in range(4):
        lp = ld.LandauParams.from_oscillator(p, n)
        for s in range(n, 9):
            assert ld.landau_identity_check(lp, s, grid) < 1e-12


def test_identity_low_branch_sign():
    lp = ld.LandauParams.from_oscillator(P, 3)
    z = 0.3 - 0.5j
    for s in range(3):
        lhs, rhs = ld.landau_identity_sides(lp, s, z)
        assert lhs == pytest.approx((-1) ** (3 - s) * rhs, abs=1e-13)
    with pytest.raises(DomainError):
        ld.landau_identity_check(lp, 0, z)


def test_identity_requires_integer_angular_momentum():
    with pytest.raises(DomainError):
        ld.landau_identity_sides(ld.LandauParams(1.6, 0), 0, 0.1)

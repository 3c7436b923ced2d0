import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rho_jmatrix import disc_expansion as de
from rho_jmatrix import oscillator as osc
from rho_jmatrix.errors import DomainError, IrreducibilityError, NotFactorizableError
from rho_jmatrix.jmatrix_core import (
    LadderCoefficients,
    TridiagonalRep,
    ladder_factorize,
    reconstruct,
    recurrence_polynomials,
)


def test_rep_validation():
    with pytest.raises(DomainError):
        TridiagonalRep(a=np.array([1.0, 2.0 + 1j]), b=np.array([1.0]))
    with pytest.raises(DomainError):
        TridiagonalRep(a=np.array([1.0, 2.0]), b=np.array([1.0, 1.0, 1.0]))


def test_rep_matrix_is_hermitian():
    rep = TridiagonalRep(a=np.array([0.0, 2.0, 4.0]), b=np.array([1 + 1j, 2.0]))
    m = rep.matrix()
    assert np.array_equal(m, m.conj().T)
    assert m[0, 1] == 1 + 1j


def test_polynomials_degree_zero():
    rep = TridiagonalRep(a=np.array([0.3]), b=np.array([2.0]))
    assert recurrence_polynomials(rep, 1.7, 0).values.tolist() == [1.0]


def test_polynomials_first_degree():
    rep = TridiagonalRep(a=np.array([0.3, 1.0]), b=np.array([2.0, 1.0]))
    assert recurrence_polynomials(rep, 1.7, 1).values[1] == pytest.approx((1.7 - 0.3) / 2.0)


def test_polynomials_hand_recursion():
    rep = TridiagonalRep(a=np.array([0.0, 2.0]), b=np.array([1.0, 1.0]))
    assert recurrence_polynomials(rep, 1.0, 2).values[2] == pytest.approx(-2.0)


def test_polynomials_reducible():
    rep = TridiagonalRep(a=np.array([0.0, 2.0]), b=np.array([1.0, 0.0]))
    with pytest.raises(IrreducibilityError):
        recurrence_polynomials(rep, 1.0, 2)


def test_polynomials_rep_too_short():
    rep = TridiagonalRep(a=np.array([0.0, 2.0]), b=np.array([1.0]))
    with pytest.raises(DomainError):
        recurrence_polynomials(rep, 1.0, 2)


def test_polynomials_are_eigenvector_components():
    # p_n(E) solves the truncated eigenproblem when E is an eigenvalue of the
    # (N+1)x(N+1) matrix
    rng = np.random.default_rng(3)
    N = 6
    a = rng.uniform(0, 3, N + 1)
    b = rng.uniform(0.5, 1.5, N + 1) * np.exp(1j * rng.uniform(0, 2 * np.pi, N + 1))
    rep = TridiagonalRep(a=a, b=b)
    m = TridiagonalRep(a=a, b=b[:N]).matrix()
    E = np.linalg.eigvalsh(m)[2]
    p = recurrence_polynomials(rep, E, N + 1).values
    # the component beyond the truncation vanishes at an eigenvalue
    assert abs(p[N + 1]) < 1e-9 * np.max(np.abs(p))


def _rho_rep(ell, omega, z, N):
    params = osc.OscillatorParams(ell, omega)
    fz = de.frakz_from_disc(params, z)
    return fz, osc.tridiag_coefficients(params, fz, N)


@pytest.mark.parametrize("ell,omega,z", [(0, 1.0, 0.45 + 0.3j), (2, 0.5, -0.3j), (1, 2.0, 0.6)])
def test_ladder_roundtrip_rho(ell, omega, z):
    fz, rep = _rho_rep(ell, omega, z, 12)
    lad = ladder_factorize(rep, recurrence_polynomials(rep, 0.0, 12))
    assert lad.d[0] == 0
    back = reconstruct(lad)
    assert np.max(np.abs(back.a - rep.a)) <= 1e-13 * np.max(np.abs(rep.a))
    assert np.max(np.abs(back.b - rep.b)) <= 1e-13 * np.max(np.abs(rep.b))
    # gauge: d real nonnegative, c carries the phase of b
    assert np.all(lad.d >= 0)
    assert np.allclose(np.angle(lad.c), np.angle(rep.b), atol=1e-13)


def test_ladder_first_factor_is_label_at_real_scale():
    params = osc.OscillatorParams(1, 1.0)
    fz = osc.frakz_from_scale(params, 1.3)
    rep = osc.tridiag_coefficients(params, fz, 4)
    lad = ladder_factorize(rep, recurrence_polynomials(rep, 0.0, 4))
    assert lad.c[0] == pytest.approx(fz.value, rel=1e-14)


def test_ladder_not_positive():
    rep = TridiagonalRep(a=np.array([-1.0, 2.0]), b=np.array([1.0, 1.0]))
    with pytest.raises(NotFactorizableError):
        ladder_factorize(rep, recurrence_polynomials(rep, 0.0, 2))


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.floats(0.1, 3.0), min_size=2, max_size=8),
    st.lists(st.floats(0.1, 3.0), min_size=8, max_size=8),
    st.lists(st.floats(0, 6.28), min_size=8, max_size=8),
)
def test_factor_reconstruct_roundtrip(cabs, dabs, phases):
    # any ladder with nonzero factors defines a positive operator whose
    # factorization returns the same ladder (up to the fixed gauge)
    N = len(cabs)
    c = np.array(cabs) * np.exp(1j * np.array(phases[:N]))
    d = np.concatenate([[0.0], dabs[:N]])
    rep = reconstruct(LadderCoefficients(c=c, d=d))
    rep_ext = TridiagonalRep(a=rep.a, b=rep.b)
    # the recurrence at E = 0 for this operator: p_{n+1} = -c_n/conj(d_{n+1})... solved generally
    p = recurrence_polynomials(rep_ext, 0.0, N).values
    lad = ladder_factorize(rep_ext, type("T", (), {"values": p})())
    again = reconstruct(lad)
    assert np.allclose(again.a, rep.a, rtol=1e-12, atol=1e-12)
    assert np.allclose(again.b, rep.b, rtol=1e-12, atol=1e-12)

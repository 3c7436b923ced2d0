"""Radial harmonic oscillator on the half-line.

    H = -1/2 d^2/dr^2 + l(l+1)/(2 r^2) + 1/2 w^2 r^2 - beta w,   beta = l + 3/2,

with spectrum 2 w s.  The Hamiltonian is applied by finite differences so
that matrix elements computed here are independent of the polynomial
identities they are used to check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, StepError
from .jmatrix_core import TridiagonalRep
from .quadrature import DOUBLING_RTOL, integrate_halfline
from .special_functions import eval_laguerre

# base finite-difference step at omega = 1
FD_STEP = 0.0025


@dataclass(frozen=True)
class OscillatorParams:
    ell: int
    omega: float

    def __post_init__(self):
        if int(self.ell) != self.ell or self.ell < 0:
            raise DomainError(f"ell must be a nonnegative integer, got {self.ell}")
        if not self.omega > 0:
            raise DomainError(f"omega must be positive, got {self.omega}")

    @property
    def beta(self) -> float:
        return self.ell + 1.5


@dataclass(frozen=True)
class BasisScale:
    lam: float

    def __post_init__(self):
        if not (np.isreal(self.lam) and self.lam > 0):
            raise DomainError(f"basis scale must be a positive real, got {self.lam}")


@dataclass(frozen=True)
class FrakZ:
    value: complex


def rho_eigenvalue(s: int, params: OscillatorParams) -> float:
    if s < 0:
        raise DomainError("level index must be nonnegative")
    return 2.0 * params.omega * s


def _laguerre_normalization(n: int, beta: float) -> float:
    # sqrt(2 n! / Gamma(n + beta))
    return math.exp(0.5 * (math.log(2.0) + math.lgamma(n + 1) - math.lgamma(n + beta)))


def eigenfunction_f(s: int, params: OscillatorParams, r):
    """Normalized eigenfunction f_s(r) for the eigenvalue 2 w s."""
    r = np.asarray(r, dtype=float)
    w, ell = params.omega, params.ell
    x = w * r * r
    norm = _laguerre_normalization(s, params.beta) * w ** (params.beta / 2)
    return (norm * r ** (ell + 1) * np.exp(-x / 2) * eval_laguerre(s, ell + 0.5, x))[()]


def eigenfunction_table(smax: int, params: OscillatorParams, r) -> np.ndarray:
    """Rows f_0(r), ..., f_smax(r) from a single Laguerre recurrence sweep."""
    r = np.asarray(r, dtype=float)
    w, ell, alpha = params.omega, params.ell, params.ell + 0.5
    x = w * r * r
    out = np.empty((smax + 1,) + r.shape)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    common = w ** (params.beta / 2) * r ** (ell + 1) * np.exp(-x / 2)
    for k in range(smax + 1):
        out[k] = _laguerre_normalization(k, params.beta) * common * cur
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return out


def basis_phi(n: int, params: OscillatorParams, scale, r):
    """Orthonormal basis function phi_n at scale lambda.

    Reduces to f_n at lambda = sqrt(omega).
    """
    lam = scale.lam if isinstance(scale, BasisScale) else BasisScale(scale).lam
    r = np.asarray(r, dtype=float)
    ell = params.ell
    x = (lam * r) ** 2
    norm = _laguerre_normalization(n, params.beta) * math.sqrt(lam)
    return (norm * (lam * r) ** (ell + 1) * np.exp(-x / 2) * eval_laguerre(n, ell + 0.5, x))[()]


def _second_difference(f, r, h):
    return (f(r + h) - 2 * f(r) + f(r - h)) / (h * h)


def apply_hamiltonian(f: Callable, params: OscillatorParams, r, h=None):
    """(H f)(r) with a Richardson-extrapolated central second difference.

    The default step h0 r / (r + 4 h0) with h0 = FD_STEP / sqrt(omega) is
    about r/4 near the origin and h0 far from it, so the stencil stays on
    the half-line and the step varies smoothly with r.  An explicit ``h`` that reaches r <= 0 raises
    :class:`StepError`.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise StepError("Hamiltonian is evaluated only at r > 0")
    if h is None:
        h0 = FD_STEP / math.sqrt(params.omega)
        h = h0 * r / (r + 4 * h0)
    else:
        h = np.broadcast_to(np.asarray(h, dtype=float), r.shape)
        if np.any(r - h <= 0) or np.any(h <= 0):
            raise StepError("finite-difference stencil leaves the half-line")
    d2 = (4 * _second_difference(f, r, h / 2) - _second_difference(f, r, h)) / 3
    w, ell = params.omega, params.ell
    potential = ell * (ell + 1) / (2 * r * r) + 0.5 * w * w * r * r - params.beta * w
    return (-0.5 * d2 + potential * f(r))[()]


def frakz_from_scale(params: OscillatorParams, scale) -> FrakZ:
    lam = scale.lam if isinstance(scale, BasisScale) else BasisScale(scale).lam
    return FrakZ(math.sqrt(params.beta / 2) * (lam - params.omega / lam))


def scale_from_frakz(params: OscillatorParams, frakz) -> BasisScale:
    """Positive root lambda of sqrt(beta/2)(lambda - w/lambda) = frakz (frakz real)."""
    v = frakz.value if isinstance(frakz, FrakZ) else frakz
    if abs(np.imag(v)) > 0:
        raise DomainError("only a real label corresponds to a real basis scale")
    q = float(np.real(v)) * math.sqrt(2 / params.beta)
    # the larger root is positive; written to avoid cancellation for q < 0
    disc = math.sqrt(q * q + 4 * params.omega)
    lam = (q + disc) / 2 if q >= 0 else 2 * params.omega / (disc - q)
    return BasisScale(lam)


def tridiag_diagonal(params: OscillatorParams, frakz, n):
    v = frakz.value if isinstance(frakz, FrakZ) else frakz
    m2 = abs(v) ** 2
    n = np.asarray(n, dtype=float)
    return np.asarray(2 * n * (params.omega + m2 / params.beta) + m2)[()]


def tridiag_offdiagonal(params: OscillatorParams, frakz, n, printed: bool = False):
    """b_n = frakz sqrt((n+1)(2w + |frakz|^2/beta)(n/beta + 1)).

    ``printed=True`` returns the variant with n in place of n+1 under the
    root; it is kept only so the verification report can show that the
    quadrature oracle rejects it.
    """
    v = complex(frakz.value if isinstance(frakz, FrakZ) else frakz)
    m2 = abs(v) ** 2
    n = np.asarray(n, dtype=float)
    k = n if printed else n + 1
    return np.asarray(v * np.sqrt(k * (2 * params.omega + m2 / params.beta) * (n / params.beta + 1)))[()]


def tridiag_coefficients(params: OscillatorParams, frakz, N: int) -> TridiagonalRep:
    """a_0..a_{N-1} and b_0..b_{N-1} (the last entry couples to index N)."""
    if N < 1:
        raise DomainError("N must be at least 1")
    n = np.arange(N)
    return TridiagonalRep(a=tridiag_diagonal(params, frakz, n), b=tridiag_offdiagonal(params, frakz, n))


def gram_matrix(funcs: Sequence[Callable], decay_scale: float, power: float, rtol: float = DOUBLING_RTOL):
    """Matrix of <f_i | f_j> by half-line quadrature.

    ``decay_scale`` is the Gaussian rate of a product f_i f_j and ``power``
    its small-r exponent.
    """

    def stacked(r):
        return np.stack([np.asarray(f(r), dtype=complex) for f in funcs])

    def integrand(r):
        v = stacked(r)
        return np.conj(v)[:, None, :] * v[None, :, :]

    return integrate_halfline(integrand, decay_scale=decay_scale, power=power, rtol=rtol)


def hamiltonian_matrix(params: OscillatorParams, scale, nmax: int, rtol: float = 1e-10):
    """Matrix elements <phi_n | H phi_m>, n, m <= nmax, with H applied by finite differences.

    The doubling test is relative to the largest entry and looser than for
    pure polynomial integrands, since the finite-difference error is not
    a polynomial.
    """
    lam = scale.lam if isinstance(scale, BasisScale) else BasisScale(scale).lam
    idx = range(nmax + 1)

    def integrand(r):
        phi = np.stack([basis_phi(n, params, lam, r) for n in idx])
        hphi = np.stack([apply_hamiltonian(lambda x, n=n: basis_phi(n, params, lam, x), params, r) for n in idx])
        return phi[:, None, :] * hphi[None, :, :]

    return integrate_halfline(integrand, decay_scale=lam * lam, power=2 * params.ell + 2, rtol=rtol, global_scale=True)

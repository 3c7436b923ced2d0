"""Hyperbolic Landau levels on the unit disc and their link to the oscillator overlaps.

The magnetic Laplacian on the disc is applied in Wirtinger form,

    Delta_B = k [ (1-|z|^2)^2 d_z d_zbar + B z (1-|z|^2) d_z
                  - B zbar (1-|z|^2) d_zbar + B^2 (1-|z|^2) ],

with k = -1 by default, for which the functions Phi_j^{B,n} are
eigenfunctions with eigenvalue (B-n)(1-B+n).  The prefactor is a keyword
so the k = -1/4 normalization (which scales every eigenvalue by 1/4) can
be reproduced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coherent_group import AffinePoint
from .disc_expansion import DiscPoint, _z_array, eta_coefficient
from .errors import DomainError, StepError
from .oscillator import OscillatorParams
from .quadrature import integrate_halfline
from .special_functions import eval_hyp_terminating, eval_jacobi, eval_laguerre

DELTA_PREFACTOR = -1.0
FD_MAX_STEP = 1e-3
J_MIN_DEFAULT = -8


@dataclass(frozen=True)
class LandauParams:
    B: float
    n: int

    def __post_init__(self):
        if not self.B > 0.5:
            raise DomainError(f"magnetic strength must exceed 1/2, got B = {self.B}")
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"level must be a nonnegative integer, got {self.n}")
        if self.n > math.floor(self.B - 0.5):
            raise DomainError(f"level n = {self.n} exceeds floor(B - 1/2) = {math.floor(self.B - 0.5)}")

    @property
    def c_Bn(self) -> float:
        return math.sqrt(2 * (self.B - self.n) - 1)

    @classmethod
    def from_oscillator(cls, params: OscillatorParams, n: int) -> "LandauParams":
        """B fixed by 2B = beta + 2n."""
        return cls((params.beta + 2 * n) / 2, n)


def landau_eigenvalue(lp: LandauParams) -> float:
    return (lp.B - lp.n) * (1 - lp.B + lp.n)


def _check_j(lp: LandauParams, j: int) -> None:
    if int(j) != j or j > lp.n:
        raise DomainError(f"index j must be an integer <= n = {lp.n}, got {j}")


def phi_landau(lp: LandauParams, j: int, z):
    """Phi_j^{B,n}(z) = |z|^|j| (1-|z|^2)^(B-n) e^(-i j theta) 2F1(...; |z|^2).

    |z|^|j| e^(-i j theta) is written as conj(z)^j for j >= 0 and z^|j|
    for j < 0, so the value is smooth at the origin.
    """
    _check_j(lp, j)
    z = _z_array(z)
    B, n = lp.B, lp.n
    aj = abs(j)
    rho = np.abs(z) ** 2
    angular = np.conj(z) ** j if j >= 0 else z**aj
    hyp = eval_hyp_terminating("2F1", [-n + (j + aj) // 2, 2 * B - n + (aj - j) // 2], 1 + aj, rho)
    return (angular * (1 - rho) ** (B - n) * hyp)[()]


def phi_landau_jacobi(lp: LandauParams, j: int, z):
    """Same function through Jacobi polynomials, with s = n - j.

    s <= n: (1-|z|^2)^(B-n) s!/n! (n-s)! conj(z)^(n-s) P_s^(n-s, 2(B-n)-1)(1-2|z|^2)
    s >= n: (1-|z|^2)^(B-n) n!/s! (s-n)! z^(s-n) P_n^(s-n, 2(B-n)-1)(1-2|z|^2)
    """
    _check_j(lp, j)
    z = _z_array(z)
    B, n = lp.B, lp.n
    s = n - j
    rho = np.abs(z) ** 2
    b = 2 * (B - n) - 1
    base = (1 - rho) ** (B - n)
    if s <= n:
        c = math.factorial(s) / math.factorial(n) * math.factorial(n - s)
        return (base * c * np.conj(z) ** (n - s) * eval_jacobi(s, n - s, b, 1 - 2 * rho))[()]
    c = math.factorial(n) / math.factorial(s) * math.factorial(s - n)
    return (base * c * z ** (s - n) * eval_jacobi(n, s - n, b, 1 - 2 * rho))[()]


def phi_norm_sq(lp: LandauParams, j: int) -> float:
    """Closed-form squared norm in L^2(D, (1-|z|^2)^-2 dnu/pi)."""
    _check_j(lp, j)
    B, n = lp.B, lp.n
    if 2 * (B - n) <= 1:
        raise DomainError("norm diverges unless 2(B - n) > 1")
    aj = abs(j)
    p = (aj + j) // 2
    q = (aj - j) // 2
    log = (
        2 * math.lgamma(aj + 1)
        + math.lgamma(n - p + 1)
        - math.lgamma(n + q + 1)
        + math.lgamma(2 * B - n - p)
        - math.lgamma(2 * B - n + q)
    )
    return math.exp(log) / (2 * (B - n) - 1)


def _wirtinger(F: Callable, z: complex, h: float):
    """Central differences for d_z, d_zbar and d_z d_zbar at step h."""
    fpx, fmx = F(z + h), F(z - h)
    fpy, fmy = F(z + 1j * h), F(z - 1j * h)
    f0 = F(z)
    fx = (fpx - fmx) / (2 * h)
    fy = (fpy - fmy) / (2 * h)
    lap = (fpx + fmx + fpy + fmy - 4 * f0) / (h * h)
    return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy), 0.25 * lap, f0


def apply_delta_B(F: Callable, B: float, z, h: float | None = None, prefactor: float = DELTA_PREFACTOR):
    """Delta_B F at one interior point, finite differences plus one Richardson step.

    Default h = min(1e-3, (1-|z|)/10); the stencil z +- h, z +- i h must
    stay inside the disc.
    """
    z = complex(z.z if isinstance(z, DiscPoint) else z)
    if not abs(z) < 1:
        raise StepError("Delta_B is evaluated only inside the disc")
    if h is None:
        h = min(FD_MAX_STEP, (1 - abs(z)) / 10)
    if h <= 0 or abs(z) + h >= 1:
        raise StepError("finite-difference stencil leaves the disc")
    dz1, dzb1, dd1, f0 = _wirtinger(F, z, h)
    dz2, dzb2, dd2, _ = _wirtinger(F, z, h / 2)
    dz = (4 * dz2 - dz1) / 3
    dzb = (4 * dzb2 - dzb1) / 3
    dd = (4 * dd2 - dd1) / 3
    w = 1 - abs(z) ** 2
    zc = z.conjugate()
    return prefactor * (w * w * dd + B * z * w * dz - B * zc * w * dzb + B * B * w * f0)


def _check_linkage(lp: LandauParams, params: OscillatorParams) -> None:
    if abs(2 * lp.B - (params.beta + 2 * lp.n)) > 1e-12:
        raise DomainError(f"2B = {2 * lp.B} does not equal beta + 2n = {params.beta + 2 * lp.n}")


def kappa_state(point: AffinePoint, lp: LandauParams, params: OscillatorParams, u):
    """Kernel in L^2(R+, u^-1 du):

    sqrt(n!/Gamma(2B-n)) w^(B-n) (y u)^(B-n) exp(-w (i x + y) u / 2) L_n^(2(B-n)-1)(y w u).
    """
    _check_linkage(lp, params)
    B, n, w = lp.B, lp.n, params.omega
    u = np.asarray(u, dtype=float)
    norm = math.exp(0.5 * (math.lgamma(n + 1) - math.lgamma(2 * B - n)))
    return (
        norm
        * w ** (B - n)
        * (point.y * u) ** (B - n)
        * np.exp(-0.5 * w * (1j * point.x + point.y) * u)
        * eval_laguerre(n, 2 * (B - n) - 1, point.y * w * u)
    )[()]


def to_kappa_space(f: Callable) -> Callable:
    """Unitary map L^2(R+, dr) -> L^2(R+, u^-1 du), (Uf)(u) = u^(1/4) f(sqrt u)/sqrt 2."""

    def g(u):
        u = np.asarray(u, dtype=float)
        return u**0.25 * f(np.sqrt(u)) / math.sqrt(2)

    return g


def transform_B(f: Callable, point: AffinePoint, lp: LandauParams, params: OscillatorParams,
                decay_scale: float | None = None, power: float | None = None):
    """Coherent-state transform of Uf, c_{B,n} int conj(kappa(u)) (Uf)(u) u^-1 du.

    ``f`` lives in L^2(R+, dr).  The integral is evaluated in r = sqrt(u),
    where it reads c_{B,n} int conj(kappa(r^2)) (Uf)(r^2) 2/r dr.  The
    defaults for ``decay_scale`` and ``power`` suit f with oscillator
    decay exp(-w r^2/2) and f ~ r^(l+1) at the origin.
    """
    _check_linkage(lp, params)
    if decay_scale is None:
        decay_scale = params.omega * (1 + point.y) / 2
    if power is None:
        power = 2 * params.ell + 2
    uf = to_kappa_space(f)

    def integrand(r):
        u = r * r
        return np.conj(kappa_state(point, lp, params, u)) * uf(u) * 2 / r

    return lp.c_Bn * integrate_halfline(integrand, decay_scale=decay_scale, power=power)


def apply_H_B(F: Callable, B: float, point: AffinePoint, h: float = 1e-3):
    """H_B F = y^2 (F_xx + F_yy) - 2 i B y F_x at (x, y), central differences with one Richardson step."""
    x, y = point.x, point.y
    if h <= 0 or y - h <= 0:
        raise StepError("finite-difference stencil leaves the half-plane")

    def once(k):
        f0 = F(x, y)
        fpx, fmx = F(x + k, y), F(x - k, y)
        fpy, fmy = F(x, y + k), F(x, y - k)
        lap = (fpx + fmx + fpy + fmy - 4 * f0) / (k * k)
        fx = (fpx - fmx) / (2 * k)
        return y * y * lap - 2j * B * y * fx

    return (4 * once(h / 2) - once(h)) / 3


def landau_identity_sides(lp: LandauParams, s: int, z):
    """Normalized Phi_{n-s}^{B,n}(z) and c_{B,n} eta_{s,n}(z), with beta = 2(B - n).

    beta - 3/2 must be a nonnegative integer (the oscillator angular momentum).
    """
    beta = 2 * (lp.B - lp.n)
    ell = beta - 1.5
    if ell < -1e-12 or abs(ell - round(ell)) > 1e-12:
        raise DomainError(f"2(B - n) - 3/2 = {ell} is not a nonnegative integer")
    params = OscillatorParams(int(round(ell)), 1.0)
    j = lp.n - s
    lhs = phi_landau(lp, j, z) / math.sqrt(phi_norm_sq(lp, j))
    rhs = lp.c_Bn * eta_coefficient(s, lp.n, params, z)
    return lhs, rhs


def landau_identity_check(lp: LandauParams, s: int, z) -> float:
    """|Phi_{n-s}/||Phi_{n-s}|| - c_{B,n} eta_{s,n}(z)| for s >= n.

    For s < n the two sides differ by the sign (-1)^(n-s); see
    landau_identity_sides.
    """
    if s < lp.n:
        raise DomainError(f"identity is checked on the branch s >= n (got s = {s}, n = {lp.n})")
    lhs, rhs = landau_identity_sides(lp, s, z)
    return float(np.max(np.abs(lhs - rhs)))

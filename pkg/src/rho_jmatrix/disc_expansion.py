"""Expansion coefficients between the eigenbasis {f_s} and the basis {phi_n^(z)}.

The basis label is either the complex number frakz (the "energy-like"
parametrization) or the disc point

    z = frakz / sqrt(|frakz|^2 + 2 beta w),   |z| < 1,

and the overlaps

    eta_{s,n}(z) = <phi_n^(z) | f_s>
                 = (-1)^n sqrt(n! (beta)_s / (s! (beta)_n)) (1-|z|^2)^(beta/2)
                   z^(s-n) P_n^(beta-1, s-n)(2|z|^2 - 1)

are complex disc polynomials.  Two routes are kept for each quantity:
one through Meixner polynomials in the level index, one through Jacobi
polynomials in |z|^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TruncationError
from .oscillator import FrakZ, OscillatorParams, eigenfunction_table
from .special_functions import eval_laguerre, eval_meixner, meixner_normalized, zernike_core

DEFAULT_TAIL_TOL = 1e-14
MAX_SERIES_TERMS = 4000


@dataclass(frozen=True)
class DiscPoint:
    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not abs(z) < 1:
            raise DomainError(f"disc label must satisfy |z| < 1, got |z| = {abs(z)}")
        object.__setattr__(self, "z", z)

    @property
    def xi(self) -> float:
        return abs(self.z) ** 2

    @property
    def tau(self) -> complex:
        # sqrt(tau) = z
        return self.z * self.z


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Matrix of overlaps; rows index the eigenlevel s, columns the basis index n."""

    values: np.ndarray
    params: OscillatorParams
    label: DiscPoint


def _z_array(disc):
    """Accept a DiscPoint, a complex scalar or a complex array of disc points."""
    if isinstance(disc, DiscPoint):
        return np.asarray(disc.z)
    z = np.asarray(disc, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("disc points must satisfy |z| < 1")
    return z


def _frakz_value(frakz) -> complex:
    return complex(frakz.value if isinstance(frakz, FrakZ) else frakz)


def _lpoch(a: float, n: int) -> float:
    # log of the rising factorial (a)_n for a > 0
    return math.lgamma(a + n) - math.lgamma(a)


def disc_from_frakz(params: OscillatorParams, frakz) -> DiscPoint:
    v = _frakz_value(frakz)
    return DiscPoint(v / math.sqrt(abs(v) ** 2 + 2 * params.beta * params.omega))


def frakz_from_disc(params: OscillatorParams, disc) -> FrakZ:
    z = disc.z if isinstance(disc, DiscPoint) else DiscPoint(disc).z
    return FrakZ(z * math.sqrt(2 * params.beta * params.omega / (1 - abs(z) ** 2)))


def meixner_parameter(params: OscillatorParams, frakz) -> float:
    """c = |frakz|^2 / (|frakz|^2 + 2 beta w), equal to |z|^2."""
    m2 = abs(_frakz_value(frakz)) ** 2
    return m2 / (m2 + 2 * params.beta * params.omega)


def meixner_chain_P(n: int, m: int, params: OscillatorParams, frakz, printed: bool = False) -> complex:
    """Recurrence polynomial P_n at the level energy 2 w m, through Meixner polynomials.

    P_n(2wm) = (-1)^n sqrt((beta)_n/n!) conj(z)^n Q_n(m),  Q_n = n!/(beta)_n M_n(m, beta; |z|^2).

    ``printed=True`` uses M_n in place of Q_n; that variant does not obey
    the three-term recurrence of the tridiagonal representation and is kept
    only for the verification report.  The polynomials are singular at
    frakz = 0 (the representation is then diagonal) and a DomainError is
    raised there.
    """
    v = _frakz_value(frakz)
    if v == 0:
        raise DomainError("recurrence polynomials are undefined at frakz = 0 (b_n vanishes)")
    beta = params.beta
    c = meixner_parameter(params, v)
    zc = np.conj(disc_from_frakz(params, v).z)
    q = eval_meixner(n, m, beta, c) if printed else meixner_normalized(n, m, beta, c)
    pref = (-1) ** n * math.exp(0.5 * (_lpoch(beta, n) - math.lgamma(n + 1)))
    return complex(pref * zc**n * q)


def meixner_recurrence_residual(n: int, m: int, params: OscillatorParams, frakz) -> float:
    """Relative residual of the Q_n three-term recurrence at the level 2 w m.

    2wm Q_n = -|frakz|^2 (n/beta + 1) Q_{n+1} + (|frakz|^2 + n(2w + 2|frakz|^2/beta)) Q_n
              - n (2w + |frakz|^2/beta) Q_{n-1},

    with Q_n = n!/(beta)_n M_n(m, beta; c).  Scaled by the largest term.
    """
    if n < 1:
        raise DomainError("the recurrence is checked for n >= 1")
    beta, w = params.beta, params.omega
    m2 = abs(_frakz_value(frakz)) ** 2
    c = meixner_parameter(params, frakz)
    q = [meixner_normalized(k, m, beta, c) for k in (n - 1, n, n + 1)]
    terms = [
        2 * w * m * q[1],
        m2 * (n / beta + 1) * q[2],
        -(m2 + n * (2 * w + 2 * m2 / beta)) * q[1],
        n * (2 * w + m2 / beta) * q[0],
    ]
    return abs(sum(terms)) / max(max(abs(t) for t in terms), 1e-300)


def meixner_weight(m, params: OscillatorParams, disc):
    """Orthogonality weight w_m = (beta)_m/m! xi^m (1-xi)^beta of the P_n at the levels 2 w m."""
    xi = np.abs(_z_array(disc)) ** 2
    beta = params.beta
    m = int(m)
    return (math.exp(_lpoch(beta, m) - math.lgamma(m + 1)) * xi**m * (1 - xi) ** beta)[()]


def rho_factor(m: int, params: OscillatorParams, disc):
    """Square-root weight with phase, sqrt((beta)_m/m!) z^m (1-|z|^2)^(beta/2).

    With this choice rho_m P_n(2wm) is exactly the overlap <phi_n | f_m>.
    """
    z = _z_array(disc)
    beta = params.beta
    return (math.exp(0.5 * (_lpoch(beta, m) - math.lgamma(m + 1))) * z**m * (1 - np.abs(z) ** 2) ** (beta / 2))[()]


def coefficient_C(n: int, s: int, params: OscillatorParams, disc, form: str = "jacobi"):
    """C_{n,s} = (-1)^n sqrt((beta)_s (beta)_n/(s! n!)) z^(s-n) P_n^(beta-1, s-n)(2|z|^2 - 1).

    ``form="meixner"`` evaluates the same quantity as
    (-1)^n sqrt(...) conj(z)^n z^s M_n(s, beta; |z|^2), which needs z != 0.
    """
    beta = params.beta
    z = _z_array(disc)
    pref = (-1) ** n * math.exp(0.5 * (_lpoch(beta, s) + _lpoch(beta, n) - math.lgamma(s + 1) - math.lgamma(n + 1)))
    if form == "jacobi":
        return (pref * zernike_core(s, n, beta - 1, z))[()]
    if form == "meixner":
        xi = np.abs(z) ** 2
        if np.any(xi == 0):
            raise DomainError("the Meixner form of C needs z != 0")
        vals = np.vectorize(lambda c: eval_meixner(n, s, beta, c), otypes=[float])(xi)
        return (pref * np.conj(z) ** n * z**s * vals)[()]
    raise ValueError(f"unknown form {form!r}")


def eta_coefficient(s: int, n: int, params: OscillatorParams, disc):
    """Overlap eta_{s,n}(z) = <phi_n^(z) | f_s>; finite for every s, n."""
    beta = params.beta
    z = _z_array(disc)
    pref = (-1) ** n * math.exp(0.5 * (math.lgamma(n + 1) + _lpoch(beta, s) - math.lgamma(s + 1) - _lpoch(beta, n)))
    return (pref * (1 - np.abs(z) ** 2) ** (beta / 2) * zernike_core(s, n, beta - 1, z))[()]


def gamma_coefficient(n: int, m: int, params: OscillatorParams, frakz, form: str = "chain"):
    """Coefficient gamma_{n,m} of f_m = sum_n gamma_{n,m} phi_n^(frakz).

    ``form="chain"`` builds rho_m P_n(2wm) from the Meixner route and
    equals eta_{m,n}.  ``form="printed"`` is the alternative normalization
    xi^(-beta/2) C_{n,m}; it fails the reconstruction check and is kept for
    the report.  At frakz = 0 the chain form returns its limit delta_{n,m}.
    """
    v = _frakz_value(frakz)
    disc = disc_from_frakz(params, v)
    if form == "chain":
        if v == 0:
            return complex(n == m)
        return complex(rho_factor(m, params, disc) * meixner_chain_P(n, m, params, v))
    if form == "printed":
        if v == 0:
            raise DomainError("printed normalization is singular at frakz = 0")
        return complex(disc.xi ** (-params.beta / 2) * coefficient_C(n, m, params, disc))
    raise ValueError(f"unknown form {form!r}")


def eta_matrix(params: OscillatorParams, disc, smax: int, nmax: int) -> ExpansionCoefficients:
    d = disc if isinstance(disc, DiscPoint) else DiscPoint(disc)
    vals = np.array([[eta_coefficient(s, n, params, d) for n in range(nmax + 1)] for s in range(smax + 1)])
    return ExpansionCoefficients(values=vals, params=params, label=d)


def series_cutoff(n: int, params: OscillatorParams, z_abs: float, tail_tol: float, max_terms: int) -> int:
    """Smallest S > n with sqrt((beta)_S/S!) |z|^S < tail_tol/10."""
    if z_abs == 0:
        return n + 1
    beta = params.beta
    log_target = math.log(tail_tol / 10)
    for S in range(n + 1, max_terms):
        if 0.5 * (_lpoch(beta, S) - math.lgamma(S + 1)) + S * math.log(z_abs) < log_target:
            return S
    raise TruncationError(f"coefficient tail not below {tail_tol} within {max_terms} terms")


def phi_series(n: int, params: OscillatorParams, disc, r, tail_tol: float = DEFAULT_TAIL_TOL,
               max_terms: int = MAX_SERIES_TERMS):
    """phi_n^(z)(r) = sum_s conj(eta_{s,n}(z)) f_s(r), truncated by the geometric tail bound.

    Summation continues past the cutoff until the last coefficient itself
    is below tail_tol/10, since the Jacobi factor grows polynomially in s.
    """
    d = disc if isinstance(disc, DiscPoint) else DiscPoint(disc)
    S = series_cutoff(n, params, abs(d.z), tail_tol, max_terms)
    coefs = [eta_coefficient(s, n, params, d) for s in range(S + 1)]
    while abs(coefs[-1]) >= tail_tol / 10 and d.z != 0:
        if len(coefs) >= max_terms:
            raise TruncationError(f"series for phi_{n} not converged within {max_terms} terms")
        coefs.append(eta_coefficient(len(coefs), n, params, d))
    table = eigenfunction_table(len(coefs) - 1, params, r)
    return np.tensordot(np.conj(np.array(coefs)), table, axes=(0, 0))[()]


def phi_closed_form(n: int, params: OscillatorParams, disc, r):
    """Closed form of phi_n^(z)(r).

    (sqrt(w) r)^(l+1) sqrt(n!/(beta)_n) sqrt(2 sqrt(w)/Gamma(beta))
    ((1-z)/(1-conj z))^n (1-|z|^2)^(beta/2) (1-conj z)^(-beta)
    exp(-w r^2 (1+conj z)/(2(1-conj z))) L_n^(beta-1)((1-|z|^2)/|1-z|^2 w r^2)
    """
    d = disc if isinstance(disc, DiscPoint) else DiscPoint(disc)
    z, zc = d.z, np.conj(d.z)
    beta, w, ell = params.beta, params.omega, params.ell
    r = np.asarray(r, dtype=float)
    x = w * r * r
    norm = math.exp(0.5 * (math.lgamma(n + 1) - _lpoch(beta, n) + math.log(2 * math.sqrt(w)) - math.lgamma(beta)))
    phase = ((1 - z) / (1 - zc)) ** n
    y = (1 - abs(z) ** 2) / abs(1 - z) ** 2
    return (
        norm
        * (math.sqrt(w) * r) ** (ell + 1)
        * phase
        * (1 - abs(z) ** 2) ** (beta / 2)
        * (1 - zc) ** (-beta)
        * np.exp(-0.5 * x * (1 + zc) / (1 - zc))
        * eval_laguerre(n, beta - 1, y * x)
    )[()]


def radial_coherent_state(params: OscillatorParams, disc, r):
    """Lowest member of the family, written out directly (no Laguerre factor).

    sqrt(2 sqrt(w)/Gamma(l+3/2)) (sqrt(w) r)^(l+1) (1-|z|^2)^(l/2+3/4)
    (1-conj z)^(-(l+3/2)) exp(-w r^2 (1+conj z)/(2(1-conj z)))
    """
    d = disc if isinstance(disc, DiscPoint) else DiscPoint(disc)
    zc = np.conj(d.z)
    w, ell = params.omega, params.ell
    r = np.asarray(r, dtype=float)
    return (
        math.sqrt(2 * math.sqrt(w) / math.gamma(ell + 1.5))
        * (math.sqrt(w) * r) ** (ell + 1)
        * (1 - abs(d.z) ** 2) ** (ell / 2 + 0.75)
        / (1 - zc) ** (ell + 1.5)
        * np.exp(-0.5 * w * r * r * (1 + zc) / (1 - zc))
    )[()]

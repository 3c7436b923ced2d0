"""Gaussian quadrature oracles on the half-line and on the unit disc.

Nodes come from the Golub-Welsch eigenvalue problem and are then polished
by Newton iteration on the recurrence-evaluated orthonormal polynomial;
weights are Christoffel numbers 1 / sum_k p_k(x_i)^2.  Every integral is
recomputed with doubled node counts and an :class:`AccuracyError` is raised
when the two results disagree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import AccuracyError, DivergenceError, DomainError

DEFAULT_RADIAL_NODES = 128
DEFAULT_ANGULAR_NODES = 64
DOUBLING_RTOL = 1e-12
NODE_TOL = 1e-15


def _gauss_from_recurrence(diag, off, mu0, scale=None, max_newton=8):
    """Nodes and Christoffel weights of the orthonormal system with recurrence (diag, off).

    ``off`` has length n: off[k] links degree k to k+1, so the last entry
    only scales p_n and does not move its zeros.  ``scale(t)`` optionally
    multiplies every p_k(t) by a common factor (keeps Laguerre values
    finite at large nodes); the weights are then 1 / sum_k (scale * p_k)^2.
    """
    n = len(diag)
    nodes = np.sort(eigh_tridiagonal(diag, off[:-1], eigvals_only=True))

    def evaluate(t):
        s = np.ones_like(t) if scale is None else scale(t)
        p_prev = np.zeros_like(t)
        p = s / math.sqrt(mu0)
        dp_prev = np.zeros_like(t)
        dp = np.zeros_like(t)
        sumsq = p * p
        for k in range(n):
            b_prev = off[k - 1] if k > 0 else 0.0
            p_new = ((t - diag[k]) * p - b_prev * p_prev) / off[k]
            dp_new = ((t - diag[k]) * dp + p - b_prev * dp_prev) / off[k]
            p_prev, p = p, p_new
            dp_prev, dp = dp, dp_new
            if k < n - 1:
                sumsq = sumsq + p * p
        return p, dp, sumsq

    for _ in range(max_newton):
        p, dp, _ = evaluate(nodes)
        step = p / dp
        nodes = nodes - step
        if np.all(np.abs(step) <= NODE_TOL * np.maximum(1.0, np.abs(nodes))):
            break
    _, _, sumsq = evaluate(nodes)
    return nodes, 1.0 / sumsq


@lru_cache(maxsize=64)
def gauss_laguerre(n: int, alpha: float):
    """Generalized Gauss-Laguerre rule for t^alpha e^(-t) on (0, inf).

    Returns ``(t, w_scaled)`` where ``w_scaled = w * exp(t) * t^(-alpha)``,
    i.e. the weights for integrating a plain function g(t) dt whose
    behaviour is ~ t^alpha e^(-t).  Storing the scaled weights avoids
    underflow of e^(-t) at the outermost nodes.
    """
    if alpha <= -1:
        raise DomainError("Laguerre weight exponent must exceed -1")
    k = np.arange(n, dtype=float)
    diag = 2 * k + alpha + 1
    off = np.sqrt((k + 1) * (k + 1 + alpha))
    mu0 = math.gamma(alpha + 1)
    t, w = _gauss_from_recurrence(diag, off, mu0, scale=lambda x: np.exp(-x / 2) * x ** (alpha / 2))
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def _jacobi_recurrence(n: int, a: float, b: float):
    k = np.arange(n, dtype=float)
    diag = np.empty(n)
    diag[0] = (b - a) / (a + b + 2)
    kk = k[1:]
    diag[1:] = (b * b - a * a) / ((2 * kk + a + b) * (2 * kk + a + b + 2))
    kk = k + 1
    s = 2 * kk + a + b
    off = np.sqrt(4 * kk * (kk + a) * (kk + b) * (kk + a + b) / (s * s * (s + 1) * (s - 1)))
    if abs(a + b + 1) < 1e-14:
        off[0] = math.sqrt(4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b)))
    mu0 = 2 ** (a + b + 1) * math.gamma(a + 1) * math.gamma(b + 1) / math.gamma(a + b + 2)
    return diag, off, mu0


@lru_cache(maxsize=64)
def gauss_jacobi(n: int, a: float, b: float = 0.0):
    """Gauss-Jacobi rule for (1-x)^a (1+x)^b on (-1, 1)."""
    if a <= -1 or b <= -1:
        raise DomainError("Jacobi weight exponents must exceed -1")
    diag, off, mu0 = _jacobi_recurrence(n, a, b)
    x, w = _gauss_from_recurrence(diag, off, mu0)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class HalfLineRule:
    """Quadrature for integrands ~ r^power * g(r^2) * exp(-decay_scale * r^2) on (0, inf).

    The substitution t = decay_scale * r^2 maps the integral onto a
    generalized Gauss-Laguerre rule with exponent (power - 1)/2, which is
    exact when g is a polynomial of low enough degree.
    """

    nodes: np.ndarray
    weights: np.ndarray
    decay_scale: float
    power: float

    @classmethod
    def build(cls, n: int, decay_scale: float, power: float = 0.0) -> "HalfLineRule":
        if decay_scale <= 0:
            raise DomainError("decay scale must be positive")
        alpha = (power - 1) / 2
        t, w = gauss_laguerre(n, alpha)
        r = np.sqrt(t / decay_scale)
        # dr = dt / (2 sqrt(c t))
        weights = w / (2 * np.sqrt(decay_scale * t))
        return cls(r, weights, decay_scale, power)

    def __call__(self, values):
        return np.tensordot(np.asarray(values), self.weights, axes=([-1], [0]))


def integrate_halfline(
    f: Callable,
    decay_scale: float = 1.0,
    degree_hint: int = DEFAULT_RADIAL_NODES,
    power: float = 0.0,
    rtol: float = DOUBLING_RTOL,
    global_scale: bool = False,
):
    """Integrate f over (0, inf) for Gaussian-decaying f.

    ``f`` must accept an array of radii.  It may return an array whose last
    axis runs over the radii, in which case a stacked result is returned.
    ``power`` is the small-r exponent of f (f ~ r^power near 0); matching it
    makes the rule exact for polynomial-times-Gaussian integrands.
    With ``global_scale`` the doubling test for a stacked result is taken
    relative to its largest entry rather than entry by entry.
    """
    rule = HalfLineRule.build(degree_hint, decay_scale, power)
    fine = HalfLineRule.build(2 * degree_hint, decay_scale, power)
    fc = np.asarray(f(rule.nodes))
    ff = np.asarray(f(fine.nodes))
    coarse = rule(fc)
    refined = fine(ff)
    scale = fine(np.abs(ff))
    if global_scale:
        scale = np.max(scale)
    if not np.all(np.abs(coarse - refined) <= rtol * np.maximum(np.abs(refined), scale)):
        raise AccuracyError(
            f"half-line quadrature not stable under node doubling: "
            f"max diff {np.max(np.abs(coarse - refined)):.3e}"
        )
    return refined[()] if isinstance(refined, np.ndarray) else refined


@dataclass(frozen=True)
class DiscRule:
    """Tensor polar rule on the unit disc in (rho = |z|^2, theta).

    Radial part: Gauss-Jacobi in rho with weight (1 - rho)^exponent.
    Angular part: M-point trapezoid, exact for e^(ik theta), |k| < M.
    The measure is d nu(z) / pi = d rho d theta / (2 pi).
    """

    rho: np.ndarray
    radial_weights: np.ndarray
    angular_nodes: int
    exponent: float

    @classmethod
    def build(cls, n_radial: int, n_angular: int, exponent: float) -> "DiscRule":
        x, w = gauss_jacobi(n_radial, exponent, 0.0)
        rho = (x + 1) / 2
        return cls(rho, w / 2 ** (exponent + 1), n_angular, exponent)

    def points(self) -> np.ndarray:
        theta = 2 * np.pi * np.arange(self.angular_nodes) / self.angular_nodes
        return np.sqrt(self.rho)[:, None] * np.exp(1j * theta)[None, :]

    def __call__(self, values):
        values = np.asarray(values)
        return np.tensordot(values.mean(axis=-1), self.radial_weights, axes=([-1], [0]))


def integrate_disc(
    f: Callable,
    weight_exponent: float = 0.0,
    boundary_order: float = 0.0,
    n_radial: int = DEFAULT_RADIAL_NODES,
    n_angular: int = DEFAULT_ANGULAR_NODES,
    rtol: float = DOUBLING_RTOL,
):
    """Integrate f(z) (1 - |z|^2)^weight_exponent over the disc with measure d nu / pi.

    ``boundary_order`` declares that f vanishes like (1 - |z|^2)^boundary_order
    at the rim; that power is moved into the Jacobi weight so the remaining
    factor is smooth.  A total exponent <= -1 diverges.
    """
    total = weight_exponent + boundary_order
    if total <= -1:
        raise DivergenceError(
            f"integrand ~ (1-|z|^2)^{total} is not integrable on the disc"
        )

    def run(nr, na):
        rule = DiscRule.build(nr, na, total)
        pts = rule.points()
        vals = np.asarray(f(pts)) / (1 - np.abs(pts) ** 2) ** boundary_order
        return rule(vals), rule(np.abs(vals))

    coarse, _ = run(n_radial, n_angular)
    refined, scale = run(2 * n_radial, 2 * n_angular)
    if not np.all(np.abs(coarse - refined) <= rtol * np.maximum(np.abs(refined), scale)):
        raise AccuracyError(
            f"disc quadrature not stable under node doubling: "
            f"max diff {np.max(np.abs(coarse - refined)):.3e}"
        )
    return refined[()] if isinstance(refined, np.ndarray) else refined

"""Affine-group coherent states of the radial oscillator.

The ax+b group acts on L^2(R+, dr) by

    T(x, y) phi(r) = y^(1/4) exp(-i x w r^2 / 2) phi(sqrt(y) r),

and the orbit of an eigenfunction f_n gives coherent states labeled by
(x, y) in the upper half-plane, or by z in the unit disc through the
Cayley map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .disc_expansion import DiscPoint
from .errors import DomainError
from .oscillator import OscillatorParams, eigenfunction_f
from .quadrature import integrate_halfline
from .special_functions import eval_laguerre


@dataclass(frozen=True)
class AffinePoint:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise DomainError(f"affine group needs y > 0, got {self.y}")

    def __mul__(self, other: "AffinePoint") -> "AffinePoint":
        return multiply(self, other)


@dataclass(frozen=True)
class CoherentLabel:
    point: AffinePoint | DiscPoint
    params: OscillatorParams
    n: int


IDENTITY = AffinePoint(0.0, 1.0)


def multiply(g1: AffinePoint, g2: AffinePoint) -> AffinePoint:
    """Group law (x, y)(x', y') = (x + y x', y y')."""
    return AffinePoint(g1.x + g1.y * g2.x, g1.y * g2.y)


def inverse(g: AffinePoint) -> AffinePoint:
    return AffinePoint(-g.x / g.y, 1.0 / g.y)


def affine_action(point: AffinePoint, phi: Callable, r, omega: float):
    r = np.asarray(r, dtype=float)
    return (point.y**0.25 * np.exp(-0.5j * point.x * omega * r * r) * phi(math.sqrt(point.y) * r))[()]


def cs_group(point: AffinePoint, params: OscillatorParams, n: int, r):
    """Closed form of T(x, y) f_n at r."""
    r = np.asarray(r, dtype=float)
    beta, w, ell = params.beta, params.omega, params.ell
    norm = math.exp(0.5 * (math.log(2) + math.lgamma(n + 1) - math.lgamma(n + beta)))
    return (
        norm
        * w ** (beta / 2)
        * point.y ** (beta / 2)
        * r ** (ell + 1)
        * np.exp(-0.5 * w * (1j * point.x + point.y) * r * r)
        * eval_laguerre(n, ell + 0.5, point.y * w * r * r)
    )[()]


def inverse_cayley(disc) -> AffinePoint:
    """Disc point z to (x, y) = (-2 Im z / |1-z|^2, (1-|z|^2) / |1-z|^2)."""
    z = disc.z if isinstance(disc, DiscPoint) else DiscPoint(disc).z
    m = abs(1 - z) ** 2
    if m == 0:
        raise DomainError("z = 1 has no preimage in the half-plane")
    return AffinePoint(-2 * z.imag / m, (1 - abs(z) ** 2) / m)


def cayley(point: AffinePoint) -> DiscPoint:
    """w = x + i y in the half-plane to (w - i)/(w + i)."""
    w = complex(point.x, point.y)
    return DiscPoint((w - 1j) / (w + 1j))


def cs_disc(disc, params: OscillatorParams, n: int, r):
    """Disc-labeled coherent state ((1-z)/(1-conj z))^(beta/2) T(C^-1(z)) f_n, in closed form."""
    d = disc if isinstance(disc, DiscPoint) else DiscPoint(disc)
    z, zc = d.z, np.conj(d.z)
    beta, w, ell = params.beta, params.omega, params.ell
    r = np.asarray(r, dtype=float)
    norm = math.exp(0.5 * (math.lgamma(n + 1) + math.log(2 * math.sqrt(w)) - math.lgamma(n + beta)))
    y = (1 - abs(z) ** 2) / abs(1 - z) ** 2
    return (
        norm
        * (math.sqrt(w) * r) ** (ell + 1)
        * (1 - abs(z) ** 2) ** (beta / 2)
        * (1 - zc) ** (-beta)
        * np.exp(-0.5 * w * r * r * (1 + zc) / (1 - zc))
        * eval_laguerre(n, beta - 1, w * y * r * r)
    )[()]


def disc_group_phase(disc, params: OscillatorParams, n: int, r):
    """Ratio cs_disc / cs_group(inverse_cayley(z)) sampled at r."""
    return cs_disc(disc, params, n, r) / cs_group(inverse_cayley(disc), params, n, r)


def admissibility_constant(params: OscillatorParams, n: int) -> float:
    """2 pi times the integral of |f_n|^2 r^-2 over the half-line, by quadrature."""
    if params.ell + 0.5 <= 0:
        raise DomainError("admissibility integral diverges")
    val = integrate_halfline(
        lambda r: eigenfunction_f(n, params, r) ** 2 / (r * r),
        decay_scale=params.omega,
        power=2 * params.ell,
    )
    return float(2 * math.pi * np.real(val))


def admissibility_closed_form(params: OscillatorParams) -> float:
    return 2 * math.pi * params.omega / (params.ell + 0.5)


def norm_sq(f: Callable, decay_scale: float, power: float) -> float:
    """Squared L^2(R+, dr) norm by quadrature."""
    return float(np.real(integrate_halfline(lambda r: np.abs(f(r)) ** 2, decay_scale=decay_scale, power=power)))


__all__ = [
    "AffinePoint",
    "CoherentLabel",
    "IDENTITY",
    "multiply",
    "inverse",
    "affine_action",
    "cs_group",
    "inverse_cayley",
    "cayley",
    "cs_disc",
    "disc_group_phase",
    "admissibility_constant",
    "admissibility_closed_form",
    "norm_sq",
]

"""Generic machinery for a Hermitian tridiagonal operator.

Conventions used throughout the package: for an orthonormal basis
{phi_n} the matrix elements are

    <phi_n | H phi_n>     = a_n   (real)
    <phi_n | H phi_{n+1}> = b_n   (complex)

so that an eigenvector sum_n g_n phi_n with eigenvalue E obeys

    E g_n = conj(b_{n-1}) g_{n-1} + a_n g_n + b_n g_{n+1}.

Normalizing g_0 = 1 gives the recurrence polynomials p_n(E).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, IrreducibilityError, NotFactorizableError

# relative size of an imaginary part tolerated in |c_n|^2, |d_n|^2
_IMAG_RTOL = 1e-8


@dataclass(frozen=True)
class TridiagonalRep:
    """Diagonal ``a`` (length N) and upper off-diagonal ``b``.

    ``b`` may have length N-1 (closed N x N block) or N, the last entry
    linking index N-1 to the next basis vector outside the block.  The
    extra entry is what lets the recurrence reach p_N.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=complex)
        if np.any(np.abs(a.imag) > 1e-12 * np.maximum(1.0, np.abs(a.real))):
            raise DomainError("diagonal of a Hermitian tridiagonal operator must be real")
        b = np.atleast_1d(np.asarray(self.b, dtype=complex))
        if len(b) not in (len(a) - 1, len(a)):
            raise DomainError(f"off-diagonal must have length {len(a) - 1} or {len(a)}, got {len(b)}")
        object.__setattr__(self, "a", a.real.copy())
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> int:
        return len(self.a)

    def matrix(self) -> np.ndarray:
        """Dense N x N Hermitian matrix (upper off-diagonal = b)."""
        n = self.length
        m = np.diag(self.a.astype(complex))
        idx = np.arange(n - 1)
        m[idx, idx + 1] = self.b[: n - 1]
        m[idx + 1, idx] = np.conj(self.b[: n - 1])
        return m


@dataclass(frozen=True)
class LadderCoefficients:
    """Factors of H = A^dagger A with A phi_n = c_n phi_n + d_n phi_{n-1}.

    ``c`` has length N and ``d`` length N+1 with d[0] = 0, so that
    b_n = c_n conj(d_{n+1}) is available for n < N.
    """

    c: np.ndarray
    d: np.ndarray


@dataclass(frozen=True)
class RecurrencePolynomialTable:
    """p_0(E), ..., p_N(E) for one energy.

    ``weight`` is the spectral weight |g_0(E)|^2 that turns the p_n into
    expansion coefficients; ``discrete_weights`` optionally records the
    weights of the other spectral points it was tabulated with.
    """

    energy: complex
    values: np.ndarray
    weight: float | None = None
    discrete_weights: dict = field(default_factory=dict)


def recurrence_polynomials(rep: TridiagonalRep, E, N: int, weight=None) -> RecurrencePolynomialTable:
    """Recurrence polynomials p_0..p_N at energy E.

    p_0 = 1, p_1 = (E - a_0)/b_0 and then
    p_{n+1} = ((E - a_n) p_n - conj(b_{n-1}) p_{n-1}) / b_n.
    """
    if N < 0:
        raise DomainError("N must be nonnegative")
    if N > len(rep.b) or (N > 0 and N - 1 >= rep.length):
        raise DomainError(f"rep too short for N = {N}")
    p = np.zeros(N + 1, dtype=complex)
    p[0] = 1.0
    for n in range(N):
        if rep.b[n] == 0:
            raise IrreducibilityError(f"b_{n} = 0; the recurrence cannot be continued")
        prev = np.conj(rep.b[n - 1]) * p[n - 1] if n > 0 else 0.0
        p[n + 1] = ((E - rep.a[n]) * p[n] - prev) / rep.b[n]
    return RecurrencePolynomialTable(energy=E, values=p, weight=weight)


def _real_square(value: complex, what: str) -> float:
    if abs(value.imag) > _IMAG_RTOL * max(1.0, abs(value.real)):
        raise NotFactorizableError(f"{what} is not real ({value})")
    if value.real < 0:
        raise NotFactorizableError(f"{what} is negative ({value.real:.3e}); operator not positive")
    return value.real


def ladder_factorize(rep: TridiagonalRep, p_at_zero: RecurrencePolynomialTable) -> LadderCoefficients:
    """Factor a positive tridiagonal operator with ground energy 0 as A^dagger A.

    |c_n|^2 = -b_n p_{n+1}(0)/p_n(0) and |d_{n+1}|^2 = -conj(b_n) p_n(0)/p_{n+1}(0).
    Gauge: c_n carries the phase of b_n, d_n is real and nonnegative.
    """
    N = rep.length
    p = np.asarray(p_at_zero.values, dtype=complex)
    if len(rep.b) < N or len(p) < N + 1:
        raise DomainError("ladder factorization needs b_0..b_{N-1} and p_0(0)..p_N(0)")
    if np.any(p[: N + 1] == 0):
        raise NotFactorizableError("p_n(0) vanishes; zero is not below the spectrum")
    c = np.zeros(N, dtype=complex)
    d = np.zeros(N + 1)
    for n in range(N):
        b = rep.b[n]
        c2 = _real_square(-b * p[n + 1] / p[n], f"|c_{n}|^2")
        d2 = _real_square(-np.conj(b) * p[n] / p[n + 1], f"|d_{n + 1}|^2")
        phase = b / abs(b) if b != 0 else 1.0
        c[n] = np.sqrt(c2) * phase
        d[n + 1] = np.sqrt(d2)
    return LadderCoefficients(c=c, d=d)


def reconstruct(ladder: LadderCoefficients) -> TridiagonalRep:
    """Rebuild (a, b) from ladder factors: a_n = |c_n|^2 + |d_n|^2, b_n = c_n conj(d_{n+1})."""
    c = np.asarray(ladder.c)
    d = np.asarray(ladder.d)
    a = np.abs(c) ** 2 + np.abs(d[: len(c)]) ** 2
    b = c * np.conj(d[1 : len(c) + 1])
    return TridiagonalRep(a=a, b=b)

"""Classical orthogonal polynomials and terminating hypergeometric series.

Every family is evaluated by its forward three-term recurrence in the
degree.  The explicit finite sums (``*_series``) are kept as independent
oracles for the tests; they are never used on the main evaluation path
except where the recurrence has a removable singularity.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, PoleError, TruncationError

__all__ = [
    "pochhammer",
    "binomial",
    "eval_laguerre",
    "laguerre_series",
    "eval_jacobi",
    "jacobi_series",
    "eval_meixner",
    "meixner_normalized",
    "zernike_core",
    "eval_zernike",
    "eval_hyp_terminating",
    "connection_formula_sides",
    "generating_function_series",
    "generating_function_closed",
    "kummer_sides",
]


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1)."""
    if n < 0:
        raise DomainError("Pochhammer index must be nonnegative")
    out = 1.0
    for k in range(n):
        out = out * (a + k)
    return out


def _frac_binomial(x: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out = out * (x - j) / (j + 1)
    return out


def binomial(x, k: int):
    """Binomial coefficient with real upper argument, as a falling factorial over k!."""
    if k < 0:
        return 0.0 * x
    out = 1.0
    for i in range(k):
        out = out * (x - i)
    return out / math.factorial(k)


def _check_degree(n: int) -> None:
    if n < 0 or int(n) != n:
        raise DomainError(f"degree must be a nonnegative integer, got {n}")


def eval_laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x).

    Uses (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}.
    ``x`` may be a scalar or an array (real or complex).
    """
    _check_degree(n)
    if alpha <= -1:
        raise DomainError(f"Laguerre parameter must exceed -1, got {alpha}")
    x = np.asarray(x)
    prev = np.ones_like(x, dtype=np.result_type(x, float))
    if n == 0:
        return prev[()]
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur[()] if isinstance(cur, np.ndarray) else cur


def laguerre_series(n: int, alpha: float, x):
    """Explicit sum for L_n^(alpha)(x); oracle only."""
    _check_degree(n)
    x = np.asarray(x)
    total = np.zeros_like(x, dtype=np.result_type(x, float))
    for k in range(n + 1):
        total = total + (-1) ** k * binomial(n + alpha, n - k) * x**k / math.factorial(k)
    return total[()]


def jacobi_series(n: int, a: float, b: float, x):
    """Explicit sum for P_n^(a,b)(x) with real-argument binomials; oracle only.

    Valid for every real (a, b), including the negative integers that make
    the three-term recurrence degenerate.
    """
    _check_degree(n)
    x = np.asarray(x)
    lo = (x - 1) / 2
    hi = (x + 1) / 2
    total = np.zeros_like(x, dtype=np.result_type(x, float))
    for k in range(n + 1):
        total = total + binomial(n + a, n - k) * binomial(n + b, k) * lo**k * hi ** (n - k)
    return total[()]


def _negative_integer_at_most(p: float, n: int) -> bool:
    return float(p).is_integer() and -n <= p < 0


def _jacobi_recurrence_degenerate(n: int, a: float, b: float) -> bool:
    for k in range(2, n + 1):
        if min(abs(k + a + b), abs(2 * k + a + b - 2)) < 1e-10:
            return True
    return False


def eval_jacobi(n: int, a: float, b: float, x):
    """Jacobi polynomial P_n^(a,b)(x) by forward recurrence in the degree.

    Uses the explicit sum instead when a recurrence denominator vanishes,
    and when a or b is a negative integer -l with l <= n: the polynomial
    then has a zero of order l at x = +-1 that every term of the sum
    carries, while the recurrence loses relative accuracy there.
    """
    _check_degree(n)
    x = np.asarray(x)
    if n == 0:
        return np.ones_like(x, dtype=np.result_type(x, float))[()]
    if _negative_integer_at_most(a, n) or _negative_integer_at_most(b, n) or _jacobi_recurrence_degenerate(n, a, b):
        return jacobi_series(n, a, b, x)
    prev = np.ones_like(x, dtype=np.result_type(x, float))
    cur = (a + 1) + (a + b + 2) * (x - 1) / 2
    ab = a + b
    for k in range(2, n + 1):
        c0 = 2 * k + ab
        c1 = 2 * k * (k + ab) * (c0 - 2)
        c2 = (c0 - 1) * (c0 * (c0 - 2) * x + a * a - b * b)
        c3 = 2 * (k + a - 1) * (k + b - 1) * c0
        prev, cur = cur, (c2 * cur - c3 * prev) / c1
    return cur[()]


def _meixner_exact(n: int, m: int, tau: Fraction, c: Fraction) -> float:
    total = Fraction(0)
    upper = Fraction(-m) - tau
    for k in range(min(n, m) + 1):
        total += _frac_binomial(Fraction(m), k) * _frac_binomial(upper, n - k) / c**k
    return float((-1) ** n * total)


def eval_meixner(n: int, x, tau: float, c: float):
    """Meixner double-binomial sum

        M_n(x, tau; c) = (-1)^n sum_k C(x, k) C(-x - tau, n - k) c^(-k).

    At integer x the sum is formed in exact rational arithmetic (every
    float is a rational) and rounded once, since the alternating terms grow
    like c^(-k) and cancel.  Other x use floating point.  This normalization
    equals (tau)_n / n! times the hypergeometric Meixner polynomial
    2F1(-n, -x; tau; 1 - 1/c); see :func:`meixner_normalized`.
    """
    _check_degree(n)
    if not 0 < c < 1:
        raise DomainError(f"Meixner parameter c must lie in (0, 1), got {c}")
    x = np.asarray(x, dtype=float)
    if np.all(np.mod(x, 1) == 0) and np.all(x >= 0):
        ft, fc = Fraction(float(tau)), Fraction(float(c))
        flat = [_meixner_exact(n, int(m), ft, fc) for m in x.ravel()]
        return np.array(flat).reshape(x.shape)[()]
    total = np.zeros_like(x)
    for k in range(n + 1):
        total = total + binomial(x, k) * binomial(-x - tau, n - k) * c ** (-k)
    return ((-1) ** n * total)[()]


def meixner_normalized(n: int, x, tau: float, c: float):
    """Meixner polynomial normalized to 1 at x = 0: n!/(tau)_n * M_n(x, tau; c).

    This is the normalization that obeys the oscillator three-term
    recurrence with the coefficients of the tridiagonal representation.
    """
    return eval_meixner(n, x, tau, c) * math.factorial(n) / pochhammer(tau, n)


def zernike_core(s: int, n: int, alpha: float, z):
    """z^(s-n) P_n^(alpha, s-n)(2|z|^2 - 1), finite for every (s, n).

    For s < n the negative power of z is traded, through the degree
    connection formula, for the conjugate form

        s! Gamma(n+alpha+1) / (n! Gamma(s+alpha+1)) conj(z)^(n-s) P_s^(alpha, n-s)(2|z|^2 - 1).
    """
    _check_degree(s)
    _check_degree(n)
    z = np.asarray(z, dtype=complex)
    x = 2 * np.abs(z) ** 2 - 1
    if s >= n:
        return (z ** (s - n) * eval_jacobi(n, alpha, s - n, x))[()]
    ratio = math.exp(
        math.lgamma(s + 1) - math.lgamma(n + 1) + math.lgamma(n + alpha + 1) - math.lgamma(s + alpha + 1)
    )
    return (ratio * np.conj(z) ** (n - s) * eval_jacobi(s, alpha, n - s, x))[()]


def _zernike_series_exact(s: int, n: int, alpha: float, z: complex) -> complex:
    """sum_k (-1)^k s! n! / (k! (s-k)! (n-k)! (alpha+1)_k) (1-|z|^2)^k z^(s-k) conj(z)^(n-k),

    summed exactly over the rationals (the alternating terms cancel
    strongly for moderate |z|) and rounded once.
    """
    x, y = Fraction(z.real), Fraction(z.imag)
    w = 1 - x * x - y * y
    a1 = Fraction(float(alpha)) + 1

    def powers(re, im, count):
        out = [(Fraction(1), Fraction(0))]
        for _ in range(count):
            pr, pi = out[-1]
            out.append((pr * re - pi * im, pr * im + pi * re))
        return out

    zp = powers(x, y, s)
    zcp = powers(x, -y, n)
    re = im = Fraction(0)
    coef = Fraction(1)
    for k in range(min(s, n) + 1):
        if k > 0:
            coef *= Fraction(-(s - k + 1) * (n - k + 1), k) / (a1 + k - 1)
        ar, ai = zp[s - k]
        br, bi = zcp[n - k]
        t = coef * w**k
        re += t * (ar * br - ai * bi)
        im += t * (ar * bi + ai * br)
    return complex(float(re), float(im))


def eval_zernike(s: int, n: int, alpha: float, z, path: str = "jacobi"):
    """Complex disc polynomial P_{s,n}^alpha(z, conj z).

    ``path="jacobi"`` goes through the Jacobi representation (with the
    conjugate form when s < n); ``path="series"`` sums the explicit
    finite series in (1 - |z|^2)^k z^(s-k) conj(z)^(n-k).
    """
    if alpha <= -1:
        raise DomainError(f"disc polynomial parameter must exceed -1, got {alpha}")
    z = np.asarray(z, dtype=complex)
    if path == "jacobi":
        pref = math.exp(math.lgamma(n + 1) + math.lgamma(alpha + 1) - math.lgamma(n + alpha + 1))
        return (pref * zernike_core(s, n, alpha, z))[()]
    if path == "series":
        _check_degree(s)
        _check_degree(n)
        flat = [_zernike_series_exact(s, n, alpha, complex(v)) for v in z.ravel()]
        return np.array(flat, dtype=complex).reshape(z.shape)[()]
    raise ValueError(f"unknown path {path!r}")


def _nonpositive_int(a: float) -> int | None:
    if float(a).is_integer() and a <= 0:
        return int(-a)
    return None


def eval_hyp_terminating(
    kind: str,
    numerators: Sequence[float],
    denominator: float,
    x,
    max_terms: int | None = None,
    tol: float = 1e-16,
):
    """Sum 1F1(a; b; x) or 2F1(a1, a2; b; x) by ratio recursion.

    The series must terminate (some numerator a nonpositive integer) unless
    ``max_terms`` is given; then summation stops once a geometric tail bound
    falls below ``tol`` relative to the partial sum, and
    :class:`TruncationError` is raised if the cap is reached first.
    """
    expected = {"1F1": 1, "2F1": 2}.get(kind)
    if expected is None:
        raise ValueError(f"unknown series kind {kind!r}")
    nums = [float(a) for a in numerators]
    if len(nums) != expected:
        raise ValueError(f"{kind} takes {expected} numerator parameter(s)")
    b = float(denominator)
    x = np.asarray(x)

    stops = [m for m in (_nonpositive_int(a) for a in nums) if m is not None]
    last = min(stops) if stops else None
    pole = _nonpositive_int(b)
    if last is None and max_terms is None:
        raise TruncationError("non-terminating series needs an explicit max_terms cap")
    n_terms = last if last is not None else max_terms
    if pole is not None and pole < n_terms:
        raise PoleError(f"denominator {b} vanishes at term {pole + 1} before termination")

    term = np.ones_like(x, dtype=np.result_type(x, float))
    total = term.copy()
    for k in range(n_terms):
        num = 1.0
        for a in nums:
            num *= a + k
        term = term * (num / ((b + k) * (k + 1))) * x
        total = total + term
        if last is None:
            q = _tail_ratio(nums, b, k + 1, x)
            if q < 0.5:
                tail = np.max(np.abs(term)) * q / (1 - q)
                if tail <= tol * max(np.max(np.abs(total)), 1e-300):
                    return total[()]
    if last is None:
        raise TruncationError(f"{kind} series not converged within {max_terms} terms")
    return total[()]


def _tail_ratio(nums: list[float], b: float, k: int, x) -> float:
    """Upper bound on |t_{j+1}/t_j| for j >= k, valid once k exceeds |b|.

    The bound is non-increasing in k past that point, so it bounds every
    later ratio as well.
    """
    if k <= abs(b) + 1:
        return math.inf
    num = 1.0
    for a in nums:
        num *= abs(a) + k
    return float(np.max(np.abs(x))) * num / ((k - abs(b)) * (k + 1))


def connection_formula_sides(n: int, s: int, alpha: float, X):
    """Both sides of the degree connection formula

        P_n^(alpha, s-n)(X) = s!/n! Gamma(n+alpha+1)/Gamma(s+alpha+1) ((X+1)/2)^(n-s) P_s^(alpha, n-s)(X).
    """
    X = np.asarray(X, dtype=float)
    lhs = eval_jacobi(n, alpha, s - n, X)
    pref = math.exp(
        math.lgamma(s + 1) - math.lgamma(n + 1) + math.lgamma(n + alpha + 1) - math.lgamma(s + alpha + 1)
    )
    rhs = pref * ((X + 1) / 2) ** (n - s) * eval_jacobi(s, alpha, n - s, X)
    return lhs, rhs


def generating_function_series(
    u, n: int, alpha: float, X: float, Y: float, tol: float = 1e-14, max_terms: int = 2000
):
    """Truncated left side of the Laguerre-Jacobi bilinear generating function

        sum_s u^s s!/(alpha+1)_s P_s^(alpha, n-s)(Y) L_s^(alpha)(X).

    Terms are added until |u|^S times the largest coefficient seen so far
    drops below ``tol``.
    """
    total = 0.0 + 0.0j
    ratio = 1.0
    biggest = 0.0
    for s in range(max_terms):
        if s > 0:
            ratio *= s / (alpha + s)
        coef = ratio * eval_jacobi(s, alpha, n - s, Y) * eval_laguerre(s, alpha, X)
        biggest = max(biggest, abs(coef))
        total += u**s * coef
        if s > n and abs(u) ** (s + 1) * biggest < tol:
            return total
    raise TruncationError(f"generating function series not converged within {max_terms} terms")


def generating_function_closed(u, n: int, alpha: float, X: float, Y: float):
    """Closed right side of the bilinear generating function."""
    arg = u * X * (1 - Y) / ((1 - u) * (2 - u - u * Y))
    f11 = eval_hyp_terminating("1F1", [alpha + n + 1], alpha + 1, arg, max_terms=4000)
    return (
        (1 - u) ** n
        * (1 - (1 + Y) * u / 2) ** (-alpha - n - 1)
        * np.exp(u * X / (u - 1))
        * f11
    )


def kummer_sides(a: float, n: int, X):
    """Both sides of 1F1(a; a-n; X) = (-1)^n n!/(1-a)_n e^X L_n^(a-n-1)(-X)."""
    lhs = eval_hyp_terminating("1F1", [a], a - n, X, max_terms=4000)
    rhs = (-1) ** n * math.factorial(n) / pochhammer(1 - a, n) * np.exp(X) * eval_laguerre(n, a - n - 1, -np.asarray(X))
    return lhs, rhs

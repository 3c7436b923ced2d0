"""Verification suites, report rows and numeric tables.

Each check computes a residual between two independent evaluations of the
same quantity and compares it with a tolerance.  Exceptions raised while a
check runs are turned into failed rows so a suite always completes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import coherent_group as cg
from . import disc_expansion as de
from . import landau as ld
from . import oscillator as osc
from . import special_functions as sf
from .jmatrix_core import ladder_factorize, reconstruct, recurrence_polynomials
from .quadrature import integrate_disc, integrate_halfline

SUITES = ("tridiag", "expansion", "coherent", "landau")
TABLE_KINDS = ("coefficients", "gram", "wavefunction", "landau-basis")
DEFAULT_Z = 0.45 + 0.3j
CSV_HEADER = ["check", "params", "residual", "tolerance", "status", "notes"]


@dataclass
class VerificationReport:
    check: str
    params: dict
    residual: float
    tolerance: float
    status: str = field(init=False)
    notes: str = ""

    def __post_init__(self):
        r = float(self.residual)
        self.residual = r
        self.status = "pass" if math.isfinite(r) and r <= self.tolerance else "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class SuiteConfig:
    ell: int | None = None
    omega: float | None = None
    z: complex | None = None
    B: float | None = None
    nmax: int | None = None
    tol: float | None = None
    seed: int = 0
    lam: float = 1.3


def parse_complex(text: str) -> complex:
    """Parse "a+bi" / "a-bj" / "0.3" / "-0.2i"."""
    return complex(text.strip().replace(" ", "").replace("i", "j"))


# ---------------------------------------------------------------- helpers


def _jsonable(v):
    if isinstance(v, (complex, np.complexfloating)):
        return {"re": _jsonable(float(v.real)), "im": _jsonable(float(v.imag))}
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in v]
    return v


def _params_key(params: dict) -> str:
    return json.dumps(_jsonable(params), sort_keys=True, separators=(",", ":"))


class _Collector:
    def __init__(self, config: SuiteConfig):
        self.config = config
        self.rows: list[VerificationReport] = []

    def tol(self, default: float) -> float:
        return self.config.tol if self.config.tol is not None else default

    def run(self, check: str, params: dict, tolerance: float, fn: Callable, notes: str = ""):
        """Run fn() -> residual or (residual, extra_notes); errors become failed rows."""
        try:
            out = fn()
            if isinstance(out, tuple):
                residual, extra = out
                text = f"{notes}; {extra}" if notes and extra else (notes or extra)
            else:
                residual, text = out, notes
        except Exception as exc:  # noqa: BLE001 - every failure must become a row
            residual, text = math.inf, f"{notes}; error {type(exc).__name__}: {exc}" if notes else f"error {type(exc).__name__}: {exc}"
        self.rows.append(VerificationReport(check, params, residual, self.tol(tolerance), text))


def _rng(config: SuiteConfig, suite: str) -> np.random.Generator:
    return np.random.default_rng([config.seed, SUITES.index(suite)])


def _disc_samples(rng, count: int, rmax: float) -> np.ndarray:
    radius = rmax * np.sqrt(rng.random(count))
    return radius * np.exp(2j * np.pi * rng.random(count))


def _grid(config: SuiteConfig, key: str, default: list):
    v = getattr(config, key)
    return default if v is None else [v]


def _nmax(config: SuiteConfig, default: int) -> int:
    return default if config.nmax is None else min(config.nmax, default)


# ---------------------------------------------------------------- tridiag


def _suite_tridiag(c: _Collector):
    cfg = c.config
    nmax = _nmax(cfg, 12)
    # recurrence-based checks use a disc label with |z|^2 near 0.3: forward
    # recurrence at a spectral point amplifies rounding by about |z|^(-2n)
    z_label = DEFAULT_Z if cfg.z is None else cfg.z
    for ell in _grid(cfg, "ell", [0, 1, 2]):
        for omega in _grid(cfg, "omega", [0.5, 1.0, 2.0]):
            params = osc.OscillatorParams(ell, omega)
            for lam in (0.7, 1.3):
                key = {"ell": ell, "omega": omega, "lam": lam, "nmax": nmax}
                cache = {}

                def matrices(params=params, lam=lam, cache=cache):
                    if not cache:
                        H = osc.hamiltonian_matrix(params, lam, nmax)
                        fz = osc.frakz_from_scale(params, lam)
                        n = np.arange(nmax + 1)
                        cache.update(
                            H=H,
                            scale=np.max(np.abs(H)),
                            a=osc.tridiag_diagonal(params, fz, n),
                            b=osc.tridiag_offdiagonal(params, fz, n[:-1]),
                            b_printed=osc.tridiag_offdiagonal(params, fz, n[:-1], printed=True),
                        )
                    return cache

                def off_band():
                    m = matrices()
                    idx = np.arange(nmax + 1)
                    mask = np.abs(idx[:, None] - idx[None, :]) >= 2
                    return float(np.max(np.abs(m["H"][mask])) / m["scale"])

                def diagonal():
                    m = matrices()
                    return float(np.max(np.abs(np.diag(m["H"]) - m["a"])) / m["scale"])

                def offdiagonal():
                    m = matrices()
                    upper = np.diag(m["H"], 1)
                    res = float(np.max(np.abs(upper - m["b"])) / m["scale"])
                    printed = float(np.max(np.abs(upper - m["b_printed"])) / m["scale"])
                    return res, f"printed n-variant residual {printed:.3e} (rejected)"

                def hermiticity():
                    m = matrices()
                    return float(np.max(np.abs(m["H"] - m["H"].conj().T)) / m["scale"])

                c.run("tridiag.off_band", key, 1e-8, off_band, "entries with |n-m|>=2 of <phi_n|H phi_m>")
                c.run("tridiag.diagonal", key, 1e-8, diagonal, "diagonal a_n = 2n(w+|Z|^2/beta)+|Z|^2")
                c.run("tridiag.offdiagonal", key, 1e-8, offdiagonal,
                      "off-diagonal b_n = Z sqrt((n+1)(2w+|Z|^2/beta)(n/beta+1)); quadrature override")
                c.run("tridiag.hermiticity", key, 1e-8, hermiticity, "matrix Hermitian")

            key = {"ell": ell, "omega": omega}

            def ladder(params=params):
                fz = de.frakz_from_disc(params, z_label)
                rep = osc.tridiag_coefficients(params, fz, 12)
                lad = ladder_factorize(rep, recurrence_polynomials(rep, 0.0, 12))
                back = reconstruct(lad)
                worst = max(float(np.max(np.abs(back.a - rep.a) / np.abs(rep.a).max())),
                            float(np.max(np.abs(back.b - rep.b) / np.abs(rep.b).max())))
                return max(worst, abs(lad.c[0] - fz.value) / abs(fz.value))

            def eigen_residual(params=params):
                r = np.linspace(0.5, 3.0, 60)
                worst = 0.0
                for s in range(9):
                    f = lambda x, s=s: osc.eigenfunction_f(s, params, x)  # noqa: E731
                    fr = f(r)
                    err = np.abs(osc.apply_hamiltonian(f, params, r) - 2 * omega * s * fr)
                    worst = max(worst, float(np.max(err) / np.max(np.abs(fr))))
                return worst

            def scale_roundtrip(params=params):
                lams = [0.05, 0.7, math.sqrt(params.omega), 1.3, 20.0]
                return max(abs(osc.scale_from_frakz(params, osc.frakz_from_scale(params, lam)).lam - lam) / lam
                           for lam in lams)

            def gram_f(params=params):
                fs = [lambda r, s=s: osc.eigenfunction_f(s, params, r) for s in range(16)]
                G = osc.gram_matrix(fs, params.omega, 2 * params.ell + 2)
                return float(np.max(np.abs(G - np.eye(16))))

            def gram_phi(params=params):
                lam = cfg.lam
                fs = [lambda r, n=n: osc.basis_phi(n, params, lam, r) for n in range(16)]
                G = osc.gram_matrix(fs, lam * lam, 2 * params.ell + 2)
                return float(np.max(np.abs(G - np.eye(16))))

            def discrete_orthogonality(params=params):
                disc = de.DiscPoint(z_label)
                return _biorthogonality(params, disc, de.frakz_from_disc(params, disc), use_recurrence=True)

            c.run("tridiag.ladder_roundtrip", {**key, "z": z_label, "N": 12}, 1e-13, ladder, "A^dagger A factorization then reconstruction")
            c.run("tridiag.eigen_residual", key, 1e-7, eigen_residual,
                  "|H f_s - 2ws f_s| / max|f_s| on r in [0.5,3], s<=8 (s=0: H f_0 = 0)")
            c.run("tridiag.scale_roundtrip", key, 1e-14, scale_roundtrip, "scale -> label -> scale")
            c.run("tridiag.gram_eigenfunctions", key, 1e-10, gram_f, "Gram matrix of f_s, s<=15")
            c.run("tridiag.gram_basis", {**key, "lam": cfg.lam}, 1e-10, gram_phi, "Gram matrix of phi_n, n<=15")
            c.run("tridiag.spectral_orthogonality", {**key, "z": z_label}, 1e-10, discrete_orthogonality,
                  "sum_m w_m p_n p_j* from the recurrence polynomials, n,j<=10")


def _biorthogonality(params, disc, frakz, use_recurrence: bool, nmax: int = 10):
    """max |sum_m w_m P_n(2wm) P_j(2wm)* - delta_nj| over n, j <= nmax.

    The sum stops once the weight tail beyond m, inflated by the growth of
    max_n |P_n|^2, is below 1e-16; the tail of w_m m^(2 nmax) is bounded by
    a geometric series once its term ratio is below 1.
    """
    xi = disc.xi
    if use_recurrence:
        rep = osc.tridiag_coefficients(params, frakz, nmax + 1)

    def row(m):
        if use_recurrence:
            return recurrence_polynomials(rep, 2 * params.omega * m, nmax).values
        return np.array([de.meixner_chain_P(n, m, params, frakz) for n in range(nmax + 1)])

    G = np.zeros((nmax + 1, nmax + 1), dtype=complex)
    m = 0
    while True:
        w = de.meixner_weight(m, params, disc)
        P = row(m)
        G += w * np.outer(P, P.conj())
        term = w * float(np.max(np.abs(P) ** 2))
        q = xi * (m + 1 + params.beta) / (m + 1) * ((m + 2) / (m + 1)) ** (2 * nmax)
        if q < 1 and term * q / (1 - q) < 1e-16:
            break
        m += 1
        if m > 20000:
            raise ArithmeticError("weight tail did not fall below 1e-16")
    return float(np.max(np.abs(G - np.eye(nmax + 1))))


# ---------------------------------------------------------------- expansion


def _suite_expansion(c: _Collector):
    cfg = c.config
    rng = _rng(cfg, "expansion")
    ell = 1 if cfg.ell is None else cfg.ell
    omega = 1.0 if cfg.omega is None else cfg.omega
    params = osc.OscillatorParams(ell, omega)
    z0 = DEFAULT_Z if cfg.z is None else cfg.z
    disc = de.DiscPoint(z0)
    fz = de.frakz_from_disc(params, disc)
    base = {"ell": ell, "omega": omega, "z": z0}
    nmax = _nmax(cfg, 10)

    def meixner_recurrence():
        c_ = de.meixner_parameter(params, fz)
        worst = 0.0
        for m in range(31):
            for n in range(1, _nmax(cfg, 15) + 1):
                worst = max(worst, de.meixner_recurrence_residual(n, m, params, fz))
        return worst, f"normalized Q_n = n!/(beta)_n M_n, c = {c_:.6g}"

    def chain_vs_recurrence():
        rep = osc.tridiag_coefficients(params, fz, 13)
        worst = 0.0
        for m in range(21):
            p = recurrence_polynomials(rep, 2 * omega * m, 12).values
            q = np.array([de.meixner_chain_P(n, m, params, fz) for n in range(13)])
            worst = max(worst, float(np.max(np.abs(p - q) / np.maximum(1, np.abs(q)))))
        printed = max(
            abs(recurrence_polynomials(rep, 2 * omega * m, 3).values[3] - de.meixner_chain_P(3, m, params, fz, printed=True))
            for m in range(5)
        )
        return worst, f"literal M_n normalization deviates by {printed:.3e} (rejected)"

    def biorth():
        return _biorthogonality(params, disc, fz, use_recurrence=False, nmax=nmax)

    def zernike_dual():
        worst = 0.0
        for _ in range(200):
            s, n = rng.integers(0, 11, size=2)
            alpha = float(rng.choice([0.5, 1.0, 2.5]))
            z = _disc_samples(rng, 1, 0.999)[0]
            a = sf.eval_zernike(int(s), int(n), alpha, z, path="jacobi")
            b = sf.eval_zernike(int(s), int(n), alpha, z, path="series")
            worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-300))
        return worst

    def zernike_conjugation():
        worst = 0.0
        for _ in range(50):
            s, n = rng.integers(0, 11, size=2)
            z = _disc_samples(rng, 1, 0.95)[0]
            a = np.conj(sf.eval_zernike(int(s), int(n), 1.5, z))
            b = sf.eval_zernike(int(n), int(s), 1.5, z)
            worst = max(worst, abs(a - b) / max(abs(a), 1e-300))
        return worst

    def jacobi_symmetry():
        worst = 0.0
        X = np.linspace(-0.95, 0.95, 11)
        for a, b in [(0.5, 1.5), (2.0, -0.5), (1.5, 3.0)]:
            for m in range(13):
                lhs = sf.eval_jacobi(m, a, b, -X)
                rhs = (-1) ** m * sf.eval_jacobi(m, b, a, X)
                worst = max(worst, float(np.max(np.abs(lhs - rhs) / np.maximum(1, np.abs(lhs)))))
        return worst

    def connection():
        worst = 0.0
        X = np.linspace(-0.95, 0.95, 9)
        for alpha in (0.5, 1.5):
            for n in range(11):
                for s in range(11):
                    lhs, rhs = sf.connection_formula_sides(n, s, alpha, X)
                    worst = max(worst, float(np.max(np.abs(lhs - rhs) / np.maximum(1, np.abs(lhs)))))
        return worst

    def generating():
        worst = 0.0
        for _ in range(20):
            u = 0.6 * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
            X = float(rng.uniform(0.05, 4.0))
            Y = float(rng.uniform(-0.99, 0.99))
            n = int(rng.integers(0, 6))
            a = sf.generating_function_series(u, n, 1.5, X, Y)
            b = sf.generating_function_closed(u, n, 1.5, X, Y)
            worst = max(worst, abs(a - b) / max(abs(b), 1.0))
        return worst

    def kummer():
        worst = 0.0
        for a, n, X in [(3.5, 2, 0.7), (4.5, 3, -1.2), (4.5, 1, 2.0), (5.5, 4, 0.3)]:
            lhs, rhs = sf.kummer_sides(a, n, X)
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1.0))
        return worst

    def c_dual():
        worst = 0.0
        for z in _disc_samples(rng, 10, 0.9):
            for n in range(nmax + 1):
                for s in range(nmax + 1):
                    a = de.coefficient_C(n, s, params, z)
                    b = de.coefficient_C(n, s, params, z, form="meixner")
                    worst = max(worst, abs(a - b) / max(abs(a), 1.0))
        return worst

    def unitarity(axis):
        def run():
            worst = 0.0
            for z in list(_disc_samples(rng, 5, 0.7)) + [0.7, -0.7j]:
                if axis == 0:
                    E = de.eta_matrix(params, z, 600, nmax).values
                    sums = (np.abs(E) ** 2).sum(axis=0)
                else:
                    E = de.eta_matrix(params, z, nmax, 600).values
                    sums = (np.abs(E) ** 2).sum(axis=1)
                worst = max(worst, float(np.max(np.abs(sums - 1))))
            return worst
        return run

    zs = list(_disc_samples(rng, 9, 0.7)) + [0.7]
    rs = np.linspace(0.05, 5.0, 10)

    def closed_vs_series():
        worst = 0.0
        for z in zs:
            for n in range(4):
                a = de.phi_closed_form(n, params, z, rs)
                b = de.phi_series(n, params, z, rs)
                worst = max(worst, float(np.max(np.abs(a - b))))
        return worst

    def ground_state():
        worst = 0.0
        for z in zs:
            ref = de.radial_coherent_state(params, z, rs)
            worst = max(worst, float(np.max(np.abs(de.phi_closed_form(0, params, z, rs) - ref))),
                        float(np.max(np.abs(de.phi_series(0, params, z, rs) - ref))))
        return worst

    def unit_norm():
        worst = 0.0
        for z in zs[:4]:
            y = (1 - abs(z) ** 2) / abs(1 - z) ** 2
            for n in range(4):
                v = integrate_halfline(lambda r: np.abs(de.phi_closed_form(n, params, z, r)) ** 2,
                                       decay_scale=omega * y, power=2 * ell + 2)
                worst = max(worst, abs(v - 1))
        return worst

    def reconstruction():
        lam = cfg.lam
        fzr = osc.frakz_from_scale(params, lam)
        r = np.linspace(0.2, 4.0, 40)
        worst = printed = 0.0
        for m in range(6):
            target = osc.eigenfunction_f(m, params, r)
            tot = sum(de.gamma_coefficient(n, m, params, fzr) * osc.basis_phi(n, params, lam, r) for n in range(150))
            worst = max(worst, float(np.max(np.abs(tot - target))))
            tot = sum(de.gamma_coefficient(n, m, params, fzr, "printed") * osc.basis_phi(n, params, lam, r)
                      for n in range(150))
            printed = max(printed, float(np.max(np.abs(tot - target))))
        return worst, f"printed xi^(-beta/2) C normalization residual {printed:.3e} (rejected)"

    c.run("expansion.meixner_recurrence", {**base, "nmax": 15, "mmax": 30}, 1e-10, meixner_recurrence,
          "Meixner three-term recurrence at levels 2wm")
    c.run("expansion.chain_vs_recurrence", {**base, "nmax": 12, "mmax": 20}, 1e-10, chain_vs_recurrence,
          "Meixner-built P_n vs tridiagonal recurrence polynomials")
    c.run("expansion.biorthogonality", {**base, "nmax": nmax}, 1e-9, biorth,
          "sum_m w_m P_n P_j* with real weight (beta)_m/m! xi^m (1-xi)^beta")
    c.run("expansion.zernike_dual_forms", {"samples": 200, "seed": cfg.seed}, 1e-12, zernike_dual,
          "disc polynomial: Jacobi form vs finite series")
    c.run("expansion.zernike_conjugation", {"samples": 50, "seed": cfg.seed}, 1e-13, zernike_conjugation,
          "conj P_{s,n} = P_{n,s}")
    c.run("expansion.jacobi_symmetry", {"mmax": 12}, 1e-13, jacobi_symmetry, "P_m^(a,b)(-X) = (-1)^m P_m^(b,a)(X)")
    c.run("expansion.connection_formula", {"alpha": [0.5, 1.5], "nmax": 10}, 1e-12, connection,
          "Jacobi degree connection formula")
    c.run("expansion.generating_function", {"umax": 0.6, "samples": 20, "seed": cfg.seed}, 1e-10, generating,
          "Laguerre-Jacobi bilinear generating function")
    c.run("expansion.kummer_identity", {"cases": 4}, 1e-12, kummer, "1F1(a; a-n; X) Laguerre reduction")
    c.run("expansion.C_dual_forms", {**base, "nmax": nmax}, 1e-11, c_dual, "C_{n,s}: Jacobi form vs Meixner form")
    c.run("expansion.eta_unitarity_columns", {**base, "nmax": nmax, "zmax": 0.7}, 1e-9, unitarity(0),
          "sum_s |eta_{s,n}|^2 = 1")
    c.run("expansion.eta_unitarity_rows", {**base, "smax": nmax, "zmax": 0.7}, 1e-9, unitarity(1),
          "sum_n |eta_{s,n}|^2 = 1")
    c.run("expansion.closed_vs_series", {**base, "grid": "10x10", "zmax": 0.7}, 1e-8, closed_vs_series,
          "closed-form basis function vs eigenfunction series")
    c.run("expansion.ground_state", {**base, "grid": "10x10"}, 1e-8, ground_state,
          "n = 0 member equals the radial coherent state")
    c.run("expansion.unit_norm", {**base, "nmax": 3}, 1e-8, unit_norm, "||phi_n^(z)|| = 1 by quadrature")
    c.run("expansion.reconstruction", {**base, "lam": cfg.lam, "terms": 150}, 1e-6, reconstruction,
          "f_m = sum_n gamma_{n,m} phi_n at real scale")


# ---------------------------------------------------------------- coherent


def _suite_coherent(c: _Collector):
    cfg = c.config
    rng = _rng(cfg, "coherent")
    pairs = [(0, 1.0), (2, 0.5), (1, 2.0)]
    if cfg.ell is not None or cfg.omega is not None:
        pairs = [(0 if cfg.ell is None else cfg.ell, 1.0 if cfg.omega is None else cfg.omega)]
    for ell, omega in pairs:
        params = osc.OscillatorParams(ell, omega)

        def admissible(params=params):
            ref = cg.admissibility_closed_form(params)
            vals = [cg.admissibility_constant(params, n) for n in range(5)]
            return max(abs(v - ref) / ref for v in vals), f"2 pi w/(l+1/2) = {ref:.15g}"

        c.run("coherent.admissibility", {"ell": ell, "omega": omega, "nmax": 4}, 1e-8, admissible,
              "2 pi int |f_n|^2 r^-2 dr is n-independent")

    ell = 1 if cfg.ell is None else cfg.ell
    omega = 1.0 if cfg.omega is None else cfg.omega
    params = osc.OscillatorParams(ell, omega)
    base = {"ell": ell, "omega": omega}
    points = [cg.AffinePoint(float(rng.uniform(-2, 2)), float(np.exp(rng.uniform(-1, 1)))) for _ in range(10)]

    def unitarity():
        worst = 0.0
        for g in points:
            for n in range(5):
                f = lambda r, n=n: osc.eigenfunction_f(n, params, r)  # noqa: E731
                v = integrate_halfline(lambda r: np.abs(cg.affine_action(g, f, r, omega)) ** 2,
                                       decay_scale=omega * g.y, power=2 * ell + 2)
                worst = max(worst, abs(v - 1))
        return worst

    r = np.linspace(0.1, 4.0, 25)

    def group_law():
        worst = 0.0
        for g1, g2 in zip(points[:5], points[5:]):
            for n in range(3):
                f = lambda x, n=n: osc.eigenfunction_f(n, params, x)  # noqa: E731
                a = cg.affine_action(g1, lambda x: cg.affine_action(g2, f, x, omega), r, omega)
                b = cg.affine_action(g1 * g2, f, r, omega)
                worst = max(worst, float(np.max(np.abs(a - b))))
        return worst

    def action_closed_form():
        worst = 0.0
        for g in points:
            for n in range(5):
                a = cg.cs_group(g, params, n, r)
                b = cg.affine_action(g, lambda x, n=n: osc.eigenfunction_f(n, params, x), r, omega)
                worst = max(worst, float(np.max(np.abs(a - b))))
        return worst

    zs = list(_disc_samples(rng, 6, 0.8))
    if cfg.z is not None:
        zs = [cfg.z]

    def phase_disc_group():
        worst = 0.0
        measured = []
        for z in zs:
            for n in range(4):
                ph = cg.disc_group_phase(z, params, n, r)
                worst = max(worst, float(np.max(np.abs(ph - ph[0]))), abs(abs(ph[0]) - 1))
                expected = ((1 - z) / (1 - np.conj(z))) ** (params.beta / 2)
                worst = max(worst, abs(ph[0] - expected))
                measured.append(ph[0])
        return worst, f"phase = ((1-z)/(1-conj z))^(beta/2); first measured {measured[0]:.12g}"

    def phase_disc_closed():
        worst = 0.0
        for z in zs:
            for n in range(4):
                ph = de.phi_closed_form(n, params, z, r) / cg.cs_disc(z, params, n, r)
                worst = max(worst, float(np.max(np.abs(ph - ph[0]))), abs(abs(ph[0]) - 1))
                worst = max(worst, abs(ph[0] - ((1 - z) / (1 - np.conj(z))) ** n))
        return worst, "phase = ((1-z)/(1-conj z))^n, r-independent"

    def cayley_roundtrip():
        worst = 0.0
        for z in zs + [0.0, 0.5]:
            back = cg.cayley(cg.inverse_cayley(z)).z
            worst = max(worst, abs(back - z))
        g = cg.inverse_cayley(0.5)
        worst = max(worst, abs(g.x), abs(g.y - 3))
        return worst

    c.run("coherent.unitarity", {**base, "points": 10, "seed": cfg.seed}, 1e-10, unitarity,
          "||T(x,y) f_n|| = 1")
    c.run("coherent.group_law", {**base, "pairs": 5, "seed": cfg.seed}, 1e-12, group_law,
          "T(g1) T(g2) = T(g1 g2), law (x,y)(x',y') = (x+yx', yy')")
    c.run("coherent.action_closed_form", {**base, "points": 10, "seed": cfg.seed}, 1e-13, action_closed_form,
          "group coherent state equals T(x,y) f_n")
    c.run("coherent.disc_group_phase", {**base, "seed": cfg.seed}, 1e-10, phase_disc_group,
          "disc state vs group state at the inverse Cayley point; phase measured")
    c.run("coherent.disc_closed_form_phase", {**base, "seed": cfg.seed}, 1e-10, phase_disc_closed,
          "disc state vs closed-form basis function; phase measured")
    c.run("coherent.cayley_roundtrip", {"seed": cfg.seed}, 1e-14, cayley_roundtrip,
          "inverse Cayley then forward Cayley")


# ---------------------------------------------------------------- landau


def _suite_landau(c: _Collector):
    cfg = c.config
    rng = _rng(cfg, "landau")
    Bs = [1.75, 3.25] if cfg.B is None else [cfg.B]
    for B in Bs:
        if not B > 0.5:
            c.run("landau.config", {"B": B}, 0.0, lambda B=B: ld.LandauParams(B, 0), "configuration error: B <= 1/2")
            return
    for B in Bs:
        levels = range(int(math.floor(B - 0.5)) + 1)
        points = _disc_samples(rng, 20, 0.6)

        def eigen(B=B, levels=levels, points=points):
            worst = 0.0
            for n in levels:
                lp = ld.LandauParams(B, n)
                eps = ld.landau_eigenvalue(lp)
                for j in range(-3, n + 1):
                    F = lambda z, j=j, lp=lp: ld.phi_landau(lp, j, z)  # noqa: E731
                    vals = np.array([F(z) for z in points])
                    out = np.array([ld.apply_delta_B(F, B, z) for z in points])
                    scale = max(abs(eps), 1.0) * math.sqrt(np.mean(np.abs(vals) ** 2))
                    worst = max(worst, float(np.max(np.abs(out - eps * vals)) / scale))
            return worst, "operator prefactor -1; the -1/4 normalization gives eps/4"

        def jacobi_forms(B=B, levels=levels, points=points):
            worst = 0.0
            for n in levels:
                lp = ld.LandauParams(B, n)
                for j in range(-5, n + 1):
                    a = ld.phi_landau(lp, j, points)
                    b = ld.phi_landau_jacobi(lp, j, points)
                    worst = max(worst, float(np.max(np.abs(a - b) / np.maximum(1, np.abs(a)))))
            return worst

        def norms(B=B, levels=levels):
            worst = 0.0
            for n in levels:
                lp = ld.LandauParams(B, n)
                for j in range(-4, n + 1):
                    q = integrate_disc(lambda z: np.abs(ld.phi_landau(lp, j, z)) ** 2, -2.0, 2 * (B - n))
                    worst = max(worst, abs(q.real / ld.phi_norm_sq(lp, j) - 1))
            return worst

        def orthogonality(B=B, levels=levels):
            worst = 0.0
            for n in levels:
                lp = ld.LandauParams(B, n)
                for j in range(-3, n + 1):
                    for k in range(-3, j):
                        v = integrate_disc(lambda z: ld.phi_landau(lp, j, z) * np.conj(ld.phi_landau(lp, k, z)),
                                           -2.0, 2 * (B - n))
                        nrm = math.sqrt(ld.phi_norm_sq(lp, j) * ld.phi_norm_sq(lp, k))
                        worst = max(worst, abs(v) / nrm)
            return worst

        key = {"B": B}
        c.run("landau.eigenfunction", {**key, "points": 20, "seed": cfg.seed, "j": "-3..n"}, 1e-5, eigen,
              "Delta_B Phi_j = (B-n)(1-B+n) Phi_j")
        c.run("landau.jacobi_forms", key, 1e-11, jacobi_forms, "2F1 form vs Jacobi forms, both branches")
        c.run("landau.norms", key, 1e-8, norms, "closed-form squared norms vs disc quadrature")
        c.run("landau.orthogonality", key, 1e-9, orthogonality, "<Phi_j, Phi_k> = 0 for j != k")

    radii = np.linspace(0.1, 0.85, 7)
    angles = 2 * np.pi * np.arange(7) / 7 + 0.3
    grid = (radii[:, None] * np.exp(1j * angles[None, :])).ravel()
    ells = [0, 1, 2] if cfg.ell is None else [cfg.ell]
    for ell in ells:
        params = osc.OscillatorParams(ell, 1.0)

        def capstone(params=params):
            worst = 0.0
            for n in range(4):
                lp = ld.LandauParams.from_oscillator(params, n)
                for s in range(n, 9):
                    lhs, rhs = ld.landau_identity_sides(lp, s, grid)
                    worst = max(worst, float(np.max(np.abs(lhs - rhs))))
            return worst

        def capstone_low(params=params):
            worst = 0.0
            for n in range(1, 4):
                lp = ld.LandauParams.from_oscillator(params, n)
                for s in range(n):
                    lhs, rhs = ld.landau_identity_sides(lp, s, grid)
                    worst = max(worst, float(np.max(np.abs(lhs - (-1) ** (n - s) * rhs))))
            return worst, "holds with the extra sign (-1)^(n-s)"

        key = {"ell": ell, "grid": "7x7", "smax": 8, "nmax": 3}
        c.run("landau.capstone", key, 1e-12, capstone,
              "normalized Phi_{n-s} = c_{B,n} eta_{s,n}, s >= n, 2B = beta + 2n")
        c.run("landau.capstone_low_branch", key, 1e-12, capstone_low,
              "normalized Phi_{n-s} vs c_{B,n} eta_{s,n} for s < n")

    params = osc.OscillatorParams(1 if cfg.ell is None else cfg.ell, 1.0 if cfg.omega is None else cfg.omega)
    lp = ld.LandauParams.from_oscillator(params, 1)
    pts = [cg.AffinePoint(0.2, 1.0), cg.AffinePoint(-0.5, 0.7), cg.AffinePoint(1.0, 2.0),
           cg.AffinePoint(0.0, 0.5), cg.AffinePoint(-1.3, 1.4)]
    r = np.linspace(0.1, 4.0, 25)

    def kappa_relation():
        worst = 0.0
        for g in pts:
            a = cg.cs_group(g, params, lp.n, r)
            b = np.sqrt(2 / r) * ld.kappa_state(g, lp, params, r * r)
            worst = max(worst, float(np.max(np.abs(a - b))))
        return worst

    def kappa_norm():
        worst = 0.0
        for g in pts:
            v = integrate_halfline(lambda x: np.abs(ld.kappa_state(g, lp, params, x * x)) ** 2 * 2 / x,
                                   decay_scale=g.y * params.omega, power=2 * params.beta - 1)
            worst = max(worst, abs(v - 1))
        return worst

    def transform_eigen():
        eps = ld.landau_eigenvalue(lp)
        worst = 0.0
        f = lambda x: osc.eigenfunction_f(2, params, x)  # noqa: E731
        F = lambda x, y: ld.transform_B(f, cg.AffinePoint(x, y), lp, params)  # noqa: E731
        for g in pts:
            v = F(g.x, g.y)
            hv = ld.apply_H_B(F, lp.B, g)
            worst = max(worst, abs(-hv - eps * v) / (max(abs(eps), 1) * abs(v)))
        return worst, "images satisfy -H_B F = eps F (sign recorded, not absorbed)"

    key = {"ell": params.ell, "omega": params.omega, "n": lp.n, "B": lp.B}
    c.run("landau.kappa_relation", key, 1e-12, kappa_relation, "group state = sqrt(2/r) kappa(r^2)")
    c.run("landau.kappa_norm", key, 1e-8, kappa_norm, "int |kappa|^2 u^-1 du = 1")
    c.run("landau.transform_eigen", {**key, "points": 5, "s": 2}, 1e-4, transform_eigen,
          "coherent-state transform image is a magnetic eigenfunction")


_SUITE_FUNCS = {
    "tridiag": _suite_tridiag,
    "expansion": _suite_expansion,
    "coherent": _suite_coherent,
    "landau": _suite_landau,
}


def run_suite(suite: str, config: SuiteConfig | None = None) -> list[VerificationReport]:
    """Run one suite (or "all") and return report rows in canonical order."""
    config = config or SuiteConfig()
    names = SUITES if suite == "all" else (suite,)
    col = _Collector(config)
    for name in names:
        if name not in _SUITE_FUNCS:
            col.run("config", {"suite": name}, 0.0, lambda: math.inf, f"unknown suite {name!r}")
            continue
        try:
            _SUITE_FUNCS[name](col)
        except Exception as exc:  # noqa: BLE001 - configuration errors become rows
            col.run(f"{name}.config", {"suite": name}, 0.0, lambda: math.inf,
                    f"configuration error {type(exc).__name__}: {exc}")
    return sorted(col.rows, key=lambda row: (row.check, _params_key(row.params)))


# ---------------------------------------------------------------- serialization


def report_to_json(rows: Iterable[VerificationReport]) -> str:
    data = [_jsonable({**asdict(row), "status": row.status}) for row in rows]
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def report_to_csv(rows: Iterable[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        res = _jsonable(row.residual)
        w.writerow([row.check, _params_key(row.params), repr(res) if isinstance(res, float) else res,
                    repr(float(row.tolerance)), row.status, row.notes])
    return buf.getvalue()


def report_from_json(text: str) -> list[dict]:
    return json.loads(text)


# ---------------------------------------------------------------- tables


def build_table(kind: str, config: SuiteConfig | None = None) -> list[dict]:
    config = config or SuiteConfig()
    ell = 1 if config.ell is None else config.ell
    omega = 1.0 if config.omega is None else config.omega
    params = osc.OscillatorParams(ell, omega)
    z = DEFAULT_Z if config.z is None else config.z
    nmax = 8 if config.nmax is None else config.nmax
    if kind == "coefficients":
        E = de.eta_matrix(params, z, nmax, nmax).values
        # gamma_{n,m} = eta_{m,n}
        return [{"n": n, "m": m, "gamma": complex(E[m, n])} for n in range(nmax + 1) for m in range(nmax + 1)]
    if kind == "gram":
        tol = 1e-10 if config.tol is None else config.tol
        lam = config.lam
        fs = [lambda r, n=n: osc.basis_phi(n, params, lam, r) for n in range(nmax + 1)]
        G = osc.gram_matrix(fs, lam * lam, 2 * ell + 2)
        rows = []
        for n in range(nmax + 1):
            for m in range(nmax + 1):
                dev = abs(G[n, m] - (n == m))
                rows.append({"n": n, "m": m, "value": complex(G[n, m]), "deviation": float(dev),
                             "tolerance": tol, "within": bool(dev <= tol)})
        return rows
    if kind == "wavefunction":
        r = np.linspace(0.25, 5.0, 20)
        rows = []
        for n in range(min(nmax, 4) + 1):
            vals = de.phi_closed_form(n, params, z, r)
            series = de.phi_series(n, params, z, r)
            for ri, v, s in zip(r, vals, series):
                rows.append({"n": n, "r": float(ri), "closed": complex(v), "series": complex(s)})
        return rows
    if kind == "landau-basis":
        B = 3.25 if config.B is None else config.B
        ld.LandauParams(B, 0)  # rejects B <= 1/2
        rows = []
        radii = np.linspace(0.0, 0.8, 5)
        angles = 2 * np.pi * np.arange(4) / 4
        for n in range(int(math.floor(B - 0.5)) + 1):
            lp = ld.LandauParams(B, n)
            for j in range(-3, n + 1):
                for rad in radii:
                    for th in angles:
                        zz = complex(rad * np.exp(1j * th))
                        rows.append({"B": B, "n": n, "j": j, "z": zz, "value": complex(ld.phi_landau(lp, j, zz))})
        return rows
    raise ValueError(f"unknown table kind {kind!r}")


def table_to_text(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(rows), indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    if not rows:
        return ""
    cols = []
    for key, val in rows[0].items():
        if isinstance(val, complex):
            cols += [f"{key}_re", f"{key}_im"]
        else:
            cols.append(key)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        out = []
        for val in row.values():
            if isinstance(val, complex):
                out += [repr(val.real), repr(val.imag)]
            elif isinstance(val, float):
                out.append(repr(val))
            else:
                out.append(val)
        w.writerow(out)
    return buf.getvalue()


def emit_table(kind: str, config: SuiteConfig | None, fmt: str, out) -> str:
    """Build a table and write it to ``out`` (a path or a text stream); returns the text."""
    text = table_to_text(build_table(kind, config), fmt)
    if hasattr(out, "write"):
        out.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text

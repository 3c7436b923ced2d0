"""Tridiagonal (J-matrix) representation of the radial harmonic oscillator,
its disc-polynomial expansion coefficients, affine-group coherent states and
the link to hyperbolic Landau levels, each cross-checked numerically.
"""

from .coherent_group import (
    AffinePoint,
    admissibility_closed_form,
    admissibility_constant,
    affine_action,
    cayley,
    cs_disc,
    cs_group,
    inverse_cayley,
)
from .disc_expansion import (
    DiscPoint,
    ExpansionCoefficients,
    coefficient_C,
    disc_from_frakz,
    eta_coefficient,
    eta_matrix,
    frakz_from_disc,
    gamma_coefficient,
    meixner_chain_P,
    meixner_weight,
    phi_closed_form,
    phi_series,
    radial_coherent_state,
)
from .errors import (
    AccuracyError,
    DivergenceError,
    DomainError,
    IrreducibilityError,
    NotFactorizableError,
    PoleError,
    StepError,
    TruncationError,
)
from .jmatrix_core import (
    LadderCoefficients,
    RecurrencePolynomialTable,
    TridiagonalRep,
    ladder_factorize,
    reconstruct,
    recurrence_polynomials,
)
from .landau import (
    LandauParams,
    apply_delta_B,
    apply_H_B,
    kappa_state,
    landau_eigenvalue,
    landau_identity_check,
    phi_landau,
    phi_norm_sq,
    transform_B,
)
from .oscillator import (
    BasisScale,
    FrakZ,
    OscillatorParams,
    apply_hamiltonian,
    basis_phi,
    eigenfunction_f,
    frakz_from_scale,
    hamiltonian_matrix,
    rho_eigenvalue,
    scale_from_frakz,
    tridiag_coefficients,
)
from .quadrature import gauss_jacobi, gauss_laguerre, integrate_disc, integrate_halfline
from .verify import SuiteConfig, VerificationReport, emit_table, run_suite

__version__ = "0.1.0"

"""Exact solutions, reductions and symmetries of u_t = (u^{-3/2} u_x)_x + u/x."""

from ._finverify import (
    BlowUp,
    DomainBreach,
    DomainError,
    EmptyGrid,
    FamilySpec,
    FinverifyError,
    NoBracket,
    OutOfRange,
    QuadFailure,
    RootFailure,
    SingularPoint,
    StabilityViolation,
    UnsupportedPair,
    act,
    ansatz_coeffs,
    antiderivative,
    antiderivative_quadrature,
    bracket,
    check_conditional,
    check_gcs,
    convergence_study,
    eval_u,
    eval_v,
    fd_solve,
    flow_pi_residual,
    integrand,
    integrate_ansatz,
    jet,
    psi_from_x,
    quad,
    run_cli,
    scan,
    solve_root,
    validity,
    verify,
)

__version__ = "0.1.0"

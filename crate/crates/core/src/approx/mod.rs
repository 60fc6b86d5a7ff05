//! Approximation functionals and theorem verifiers.
//!
//! Everything is evaluated on the spectral side of the discrete model,
//! where every operator is diagonal: the modulus of smoothness
//! `Ω_k(F, δ) = sup_{0<t≤δ} ‖(I − M_t)^k F‖`, the best approximation
//! `E_ν(F)` by band-limited functions, and a certified bracket for the
//! K-functional. The verifiers compare both sides of each inequality and
//! measure the constants.

mod functionals;
mod lemmas;
mod report;
mod verify;

pub use functionals::{
    best_approximation, k_functional_quadratic, k_objective, modulus, modulus_samples, modulus_sweep,
    KFunctionalBracket, ModulusSampler, MIN_T_SAMPLES,
};
pub use lemmas::{
    lambda_samples, t_samples, verify_lemmas, FINITE_CAP, LAMBDA_RANGE, LAMBDA_SAMPLES, PHI_SLACK,
    POSITIVE_FLOOR, RESIDUAL_TOL, T_RANGE, T_SAMPLES,
};
pub use report::{Check, Direction, Record, VerificationReport, BOUND_SLACK, ZERO_LHS, ZERO_RHS};
pub use verify::{Subject, Verifier, VerifyOptions};

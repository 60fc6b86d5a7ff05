//! Radial harmonic analysis on Damek–Ricci spaces.
//!
//! The crate evaluates spherical functions and the Plancherel density of a
//! Damek–Ricci space `S = N ⋉ A`, discretizes the spherical (Jacobi-type)
//! transform of radial functions, realizes the spherical mean, iterated
//! differences, Laplacian powers and band-limit projections as spectral
//! multipliers, and computes the approximation functionals (modulus of
//! smoothness, best approximation, K-functional) together with verifiers
//! for the direct Jackson theorems, the Nikolskii–Stechkin inequality and
//! the equivalence of the K-functional with the modulus of smoothness.
//!
//! Everything here is `no_std` + `alloc`; IO, configuration and the command
//! line live in the companion `harmonic-na` crate. The `std` feature swaps
//! the pure-Rust `libm` for the platform math library, so elementary
//! functions (and hence all outputs) agree to the last bit with any other
//! std build on the same platform.

#![no_std]
// `!(x > 0.0)` is used deliberately so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod approx;
mod error;
pub mod family;
pub mod operators;
pub mod quadrature;
pub mod space;
pub mod special;
pub mod transform;

pub use error::Error;
pub use space::{DamekRicciSpace, HalfInt};

pub type Result<T, E = Error> = core::result::Result<T, E>;

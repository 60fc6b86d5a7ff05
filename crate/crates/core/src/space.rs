//! Geometric parameters of a Damek–Ricci space.
//!
//! A Damek–Ricci space is determined (for radial analysis) by the pair
//! `(m, l)` with `m = dim 𝔳` even and `l = dim 𝔷`. Every derived constant is
//! a multiple of one half, so they are stored exactly as [`HalfInt`].

use core::fmt;

use alloc::format;

use crate::{Error, Result};

/// An exact element of `½ℤ`, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// `n / 2`.
    pub const fn halves(n: i64) -> Self {
        HalfInt(n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl core::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl core::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Damek–Ricci space `S` with `dim 𝔳 = m`, `dim 𝔷 = l`.
///
/// The radial part of the Laplace–Beltrami operator,
/// `∂² + ((m+l)/2 coth(t/2) + l/2 tanh(t/2)) ∂`, becomes `¼ L_{α,β}` under
/// `r = t/2`, which pins the Jacobi indices to `α = (m+l−1)/2` and
/// `β = (l−1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DamekRicciSpace {
    m: u32,
    l: u32,
    q: HalfInt,
    rho: HalfInt,
    d: u32,
    alpha: HalfInt,
    beta: HalfInt,
    rho_jacobi: HalfInt,
}

impl DamekRicciSpace {
    pub fn new(m: i64, l: i64) -> Result<Self> {
        if m < 2 || m % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "m = dim 𝔳 must be a positive even integer, got {m}"
            )));
        }
        if l < 1 {
            return Err(Error::InvalidParameter(format!(
                "l = dim 𝔷 must be a positive integer, got {l}"
            )));
        }
        if m > 1 << 20 || l > 1 << 20 {
            return Err(Error::InvalidParameter(format!("(m, l) = ({m}, {l}) is too large")));
        }
        let q = HalfInt::halves(m) + HalfInt::from_int(l);
        let alpha = HalfInt::halves(m + l - 1);
        let beta = HalfInt::halves(l - 1);
        let space = DamekRicciSpace {
            m: m as u32,
            l: l as u32,
            q,
            rho: HalfInt::halves(q.twice() / 2),
            d: (m + l + 1) as u32,
            alpha,
            beta,
            rho_jacobi: alpha + beta + HalfInt::from_int(1),
        };
        debug_assert_eq!(space.rho_jacobi, space.q);
        debug_assert_eq!(space.alpha.twice() + 1, space.d as i64 - 1);
        Ok(space)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Homogeneous dimension `Q = m/2 + l`.
    pub fn q(&self) -> HalfInt {
        self.q
    }

    /// `ρ = Q/2`.
    pub fn rho(&self) -> HalfInt {
        self.rho
    }

    /// Manifold dimension `d = m + l + 1`.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn alpha(&self) -> HalfInt {
        self.alpha
    }

    pub fn beta(&self) -> HalfInt {
        self.beta
    }

    /// Jacobi half-sum `ρ_J = α + β + 1`; always equal to `Q`.
    pub fn rho_jacobi(&self) -> HalfInt {
        self.rho_jacobi
    }

    /// `λ² + Q²/4`, the modulus of the Laplace–Beltrami eigenvalue of `φ_λ`.
    pub fn laplace_eigenvalue(&self, lambda: f64) -> f64 {
        let q = self.q.to_f64();
        lambda * lambda + 0.25 * q * q
    }
}

impl fmt::Display for DamekRicciSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(m={}, l={})", self.m, self.l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_hyperbolic_plane() {
        let s = DamekRicciSpace::new(2, 1).unwrap();
        assert_eq!(s.q(), HalfInt::from_int(2));
        assert_eq!(s.rho(), HalfInt::from_int(1));
        assert_eq!(s.d(), 4);
        assert_eq!(s.alpha(), HalfInt::from_int(1));
        assert_eq!(s.beta(), HalfInt::from_int(0));
        assert_eq!(s.rho_jacobi(), HalfInt::from_int(2));
    }

    #[test]
    fn quaternionic_like_indices() {
        let s = DamekRicciSpace::new(4, 3).unwrap();
        assert_eq!(s.q(), HalfInt::from_int(5));
        assert_eq!(s.rho(), HalfInt::halves(5));
        assert_eq!(s.d(), 8);
        assert_eq!(s.alpha(), HalfInt::from_int(3));
        assert_eq!(s.beta(), HalfInt::from_int(1));
        assert_eq!(s.rho_jacobi(), HalfInt::from_int(5));
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(matches!(DamekRicciSpace::new(3, 1), Err(Error::InvalidParameter(_))));
        assert!(DamekRicciSpace::new(0, 1).is_err());
        assert!(DamekRicciSpace::new(-2, 1).is_err());
        assert!(DamekRicciSpace::new(2, 0).is_err());
    }

    #[test]
    fn eigenvalue() {
        let s = DamekRicciSpace::new(2, 1).unwrap();
        assert_eq!(s.laplace_eigenvalue(0.0), 1.0);
        assert_eq!(s.laplace_eigenvalue(1.0), 2.0);
        let s = DamekRicciSpace::new(4, 3).unwrap();
        assert_eq!(s.laplace_eigenvalue(2.0), 10.25);
    }

    #[test]
    fn half_int_display() {
        assert_eq!(alloc::format!("{}", HalfInt::halves(5)), "5/2");
        assert_eq!(alloc::format!("{}", HalfInt::from_int(3)), "3");
    }

    proptest::proptest! {
        #[test]
        fn derived_constants_are_consistent(half_m in 1i64..200, l in 1i64..200) {
            let s = DamekRicciSpace::new(2 * half_m, l).unwrap();
            proptest::prop_assert_eq!(s.rho_jacobi(), s.q());
            proptest::prop_assert_eq!(s.alpha().twice() + 1, s.d() as i64 - 1);
            proptest::prop_assert!(s.alpha() > s.beta());
            proptest::prop_assert!(s.beta().twice() > -1);
            proptest::prop_assert_eq!(s.rho().twice() * 2, s.q().twice());
            proptest::prop_assert_eq!(s, DamekRicciSpace::new(2 * half_m, l).unwrap());
        }
    }
}

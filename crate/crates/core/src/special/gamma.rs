use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{Error, Result};

/// Stirling coefficients `B_{2k} / (2k (2k−1))`, k = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Real part at which the asymptotic series is used directly.
const STIRLING_THRESHOLD: f64 = 15.0;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Principal branch of `log Γ(z)`.
///
/// The argument is shifted right with `log Γ(z) = log Γ(z+n) − Σ log(z+k)`
/// until `Re z ≥ 15`, where the Stirling series with eight Bernoulli terms is
/// accurate to well below one ulp. Summing principal logarithms keeps the
/// result on the branch that is continuous off the negative real axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidParameter(alloc::format!("log_gamma of non-finite {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor() {
        return Err(Error::Pole(z.re));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < STIRLING_THRESHOLD {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

fn stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series
}

/// `log Γ(x)` for real `x > 0`.
pub(crate) fn ln_gamma_real(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut w = x;
    let mut shift = 0.0;
    while w < STIRLING_THRESHOLD {
        shift += w.ln();
        w += 1.0;
    }
    stirling(Complex64::new(w, 0.0)).re - shift
}

/// `ln |Γ(iy)|^{-2} = ln(y sinh(πy) / π)` for `y > 0`.
pub(crate) fn ln_inv_abs_gamma_imag_sq(y: f64) -> f64 {
    let x = core::f64::consts::PI * y;
    let ln_sinh = if x > 20.0 {
        x + (-(-2.0 * x).exp()).ln_1p() - core::f64::consts::LN_2
    } else {
        x.sinh().ln()
    };
    y.ln() + ln_sinh - core::f64::consts::PI.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn integer_and_half_integer_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-14);
        let v = log_gamma(c(5.0, 0.0)).unwrap();
        assert!((v.re - 24f64.ln()).abs() < 1e-13 * 24f64.ln());
        assert!(v.im.abs() < 1e-15);
        let v = log_gamma(c(0.5, 0.0)).unwrap();
        let expect = core::f64::consts::PI.sqrt().ln();
        assert!((v.re - expect).abs() < 1e-13 * expect);
    }

    #[test]
    fn large_real_argument() {
        // Γ(101) = 100!
        let expect: f64 = (1..=100).map(|k| (k as f64).ln()).sum();
        let v = log_gamma(c(101.0, 0.0)).unwrap();
        assert!((v.re - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn poles_are_rejected() {
        assert_eq!(log_gamma(c(0.0, 0.0)), Err(Error::Pole(0.0)));
        assert_eq!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole(-3.0)));
        assert!(log_gamma(c(-3.0, 1e-3)).is_ok());
        assert!(log_gamma(c(-2.5, 0.0)).is_ok());
    }

    #[test]
    fn recurrence_holds_off_axis() {
        for &(re, im) in &[(0.3, 2.0), (-4.2, 7.5), (12.0, -40.0), (0.5, 64.0), (-0.5, -0.25)] {
            let z = c(re, im);
            let lhs = log_gamma(z + 1.0).unwrap();
            let rhs = log_gamma(z).unwrap() + z.ln();
            let diff = lhs - rhs;
            // equal modulo 2πi
            let k = (diff.im / (2.0 * core::f64::consts::PI)).round();
            assert!((diff - c(0.0, 2.0 * core::f64::consts::PI * k)).norm() < 1e-12 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn reflection_modulus() {
        // |Γ(iy)|² = π / (y sinh πy)
        for &y in &[0.1, 1.0, 3.7, 30.0, 128.0] {
            let v = log_gamma(c(0.0, y)).unwrap();
            assert!((-2.0 * v.re - ln_inv_abs_gamma_imag_sq(y)).abs() < 1e-11 * (1.0 + v.re.abs()));
        }
    }

    #[test]
    fn real_helper_matches_complex() {
        for &x in &[0.25, 1.5, 2.0, 7.5, 33.3] {
            let a = ln_gamma_real(x);
            let b = log_gamma(c(x, 0.0)).unwrap().re;
            assert!((a - b).abs() < 1e-14 * (1.0 + a.abs()));
            assert!((a - libm::lgamma(x)).abs() < 1e-12 * (1.0 + a.abs()));
        }
    }
}

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::EvalAccuracy;
use crate::{Error, Result};

/// Gauss hypergeometric function `₂F₁(a, b; c; x)` on the negative half-line.
///
/// Pfaff's transformation `₂F₁(a,b;c;x) = (1−x)^{−a} ₂F₁(a, c−b; c; x/(x−1))`
/// maps `x ≤ 0` into `[0, 1)`, where the power series converges. Summation
/// stops once a geometric tail bound drops below `acc.rel_tol` times the
/// partial sum.
pub fn gauss_2f1_neg(
    a: Complex64,
    b: Complex64,
    c: f64,
    x: f64,
    acc: &EvalAccuracy,
) -> Result<Complex64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(alloc::format!("₂F₁ needs c > 0, got {c}")));
    }
    if !(x <= 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(alloc::format!("₂F₁ needs x ≤ 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let z = x / (x - 1.0);
    let prefactor = (-a * (-x).ln_1p()).exp();
    Ok(prefactor * power_series(a, Complex64::new(c, 0.0) - b, c, z, acc)?)
}

/// `Σ (a)_n (b)_n / ((c)_n n!) z^n` for `0 ≤ z < 1`.
pub(crate) fn power_series(
    a: Complex64,
    b: Complex64,
    c: f64,
    z: f64,
    acc: &EvalAccuracy,
) -> Result<Complex64> {
    debug_assert!((0.0..1.0).contains(&z));
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let past_growth = a.norm() + b.norm();
    for n in 0..acc.max_terms {
        let nf = n as f64;
        let factor = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
        term *= factor * z;
        sum += term;
        if term.re == 0.0 && term.im == 0.0 {
            // a or b is a non-positive integer: the series terminates
            return Ok(sum);
        }
        let ratio = factor.norm() * z;
        if nf + 1.0 > past_growth && ratio < 1.0 {
            let q = ratio.max(z);
            let tail = term.norm() * q / (1.0 - q);
            if tail <= acc.rel_tol * sum.norm() * 0.5 {
                return Ok(sum);
            }
        }
    }
    Err(Error::NonConvergence { what: "₂F₁ power series", terms: acc.max_terms })
}

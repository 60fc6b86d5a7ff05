use alloc::vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::gamma::ln_gamma_real;

/// Normalized Bessel function `j_α(x) = Γ(α+1) (2/x)^α J_α(x)`, `j_α(0) = 1`.
///
/// Small arguments use the ascending series directly. Otherwise `J` is
/// obtained from Miller's backward recurrence started well above
/// `max(x, α)` and normalized with the Neumann identity
/// `(x/2)^ν = Σ_k (ν+2k) Γ(ν+k)/k! J_{ν+2k}(x)` at the fractional order
/// `ν = α − ⌊α⌋`.
///
/// Panics if `α ≤ −1/2` or `α` is not finite.
pub fn bessel_j_normalized(alpha: f64, x: f64) -> f64 {
    assert!(alpha > -0.5 && alpha.is_finite(), "bessel_j_normalized needs α > −1/2, got {alpha}");
    let x = x.abs();
    if x <= 4.0 || 0.25 * x * x <= 2.0 * (alpha + 1.0) {
        ascending_series(alpha, x)
    } else {
        miller(alpha, x)
    }
}

fn ascending_series(alpha: f64, x: f64) -> f64 {
    let y = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= y / (k * (alpha + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || k > 500.0 {
            return sum;
        }
        k += 1.0;
    }
}

fn miller(alpha: f64, x: f64) -> f64 {
    let floor = alpha.floor();
    // fractional base order ν ∈ [0, 1); `target` may be −1 when α < 0
    let nu = alpha - floor;
    let target = floor as i64;
    let top = x.max(alpha);
    let start = (top + (200.0 * top).sqrt() + 20.0).ceil() as usize;

    let mut f = vec![0.0f64; start + 2];
    f[start] = 1.0;
    for k in (1..=start).rev() {
        let next = 2.0 * (nu + k as f64) / x * f[k] - f[k + 1];
        f[k - 1] = next;
        if next.abs() > 1e200 {
            for v in &mut f[k - 1..] {
                *v *= 1e-200;
            }
        }
    }

    let gamma_nu1 = ln_gamma_real(nu + 1.0).exp();
    let mut norm = gamma_nu1 * f[0];
    // c_k = Γ(ν+k)/k!
    let mut ck = gamma_nu1;
    let mut k = 1usize;
    while 2 * k <= start {
        norm += (nu + 2.0 * k as f64) * ck * f[2 * k];
        ck *= (nu + k as f64) / (k as f64 + 1.0);
        k += 1;
    }

    // f_n / norm = J_{ν+n}(x) (2/x)^ν, hence j_α = Γ(α+1) (2/x)^{α−ν} f_n / norm
    let f_target = if target >= 0 {
        f[target as usize]
    } else {
        2.0 * nu / x * f[0] - f[1]
    };
    let ln_scale = ln_gamma_real(alpha + 1.0) + (alpha - nu) * (2.0 / x).ln();
    ln_scale.exp() * f_target / norm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_at_origin() {
        for &a in &[-0.4, 0.0, 0.5, 1.0, 3.0, 7.5] {
            assert_eq!(bessel_j_normalized(a, 0.0), 1.0);
        }
    }

    #[test]
    fn half_integer_orders_are_elementary() {
        for i in 1..=400 {
            let x = 0.5 * i as f64;
            let (s, c) = (x.sin(), x.cos());
            let j12 = s / x;
            let j32 = 3.0 * (s - x * c) / (x * x * x);
            let j52 = 15.0 * ((3.0 - x * x) * s - 3.0 * x * c) / x.powi(5);
            assert!((bessel_j_normalized(0.5, x) - j12).abs() < 1e-13, "x={x}");
            assert!((bessel_j_normalized(1.5, x) - j32).abs() < 1e-13, "x={x}");
            if x > 1.0 {
                assert!((bessel_j_normalized(2.5, x) - j52).abs() < 1e-12, "x={x}");
            }
        }
        let pi = core::f64::consts::PI;
        assert!(bessel_j_normalized(0.5, pi).abs() < 1e-15);
    }

    #[test]
    fn negative_fractional_order_matches_series() {
        // α ∈ (−1/2, 0): Miller branch recurs one order below the base order
        for &x in &[4.5, 6.0, 9.25] {
            let a = -0.3;
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 1..200 {
                let k = k as f64;
                term *= -0.25 * x * x / (k * (a + k));
                sum += term;
            }
            assert!((bessel_j_normalized(a, x) - sum).abs() < 1e-11, "x={x}");
        }
    }

    #[test]
    fn series_and_recurrence_branches_agree_at_switch() {
        for &a in &[0.0, 0.25, 1.0, 2.0, 3.0] {
            let x = 4.0 + 1e-9;
            let s = ascending_series(a, x);
            let m = miller(a, x);
            assert!((s - m).abs() < 1e-13, "α={a}");
        }
    }

    #[test]
    fn even_in_x() {
        for &x in &[0.3, 5.0, 77.7] {
            assert_eq!(bessel_j_normalized(1.0, x), bessel_j_normalized(1.0, -x));
        }
    }

    #[test]
    fn first_zero_of_j1() {
        // bisection on the ascending series bracketing the first root of J₁
        let series = |x: f64| {
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 1..80 {
                let k = k as f64;
                term *= -0.25 * x * x / (k * (1.0 + k));
                sum += term;
            }
            sum
        };
        let (mut lo, mut hi) = (3.0, 4.5);
        assert!(series(lo) > 0.0 && series(hi) < 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if series(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        assert!((root - 3.831_705_970_207_512).abs() < 1e-12);
        assert!(bessel_j_normalized(1.0, root).abs() <= 1e-8);
    }

    #[test]
    fn large_arguments_stay_bounded() {
        for &a in &[0.0, 1.0, 3.0, 4.5] {
            for i in 0..2000 {
                let x = 0.37 * i as f64;
                assert!(bessel_j_normalized(a, x).abs() <= 1.0 + 1e-12);
            }
        }
    }
}

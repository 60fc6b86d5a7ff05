//! The reference family of radial test functions.
//!
//! Members are chosen to span the regimes the approximation theorems
//! quantify over: analytic spectra with Gaussian decay, an exactly
//! band-limited spectrum, a spectrum with only polynomial decay, and a
//! function prescribed on the time side.
//!
//! All members must be negligible at both ends of the default window
//! (`t ≤ 10`, `λ ≤ 64`), since the transform is a truncated quadrature.
//! This is why the bump carries a Gaussian taper and the polynomial
//! spectrum is stretched by `κ`: a pole of the spectrum at `λ = iκ` makes the
//! time-side function decay like `e^{−κt}`, and `κ = 1` would leave a
//! truncation error of order `e^{−10}` at the edge of the window.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::space::DamekRicciSpace;
use crate::transform::{RadialFunction, SpectralFunction, Transform};
use crate::{Error, Result};

/// Parametric description of one family member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MemberSpec {
    /// `F(λ) = exp(−a λ²)`.
    GaussianSpectrum { a: f64 },
    /// `F(λ) = exp(−1/(1 − (λ/ν₀)²) − b λ²)` for `λ < ν₀`, zero beyond.
    Bump { nu0: f64, taper: f64 },
    /// `F(λ) = (1 + (λ/κ)²)^{−s}`; square-integrable against the Plancherel
    /// density when `4s > d + 2`.
    PolynomialDecay { s: f64, kappa: f64 },
    /// `f(t) = exp(−b t²)`, transformed numerically.
    TimeGaussian { b: f64 },
}

impl MemberSpec {
    /// Stable identifier used in reports.
    pub fn id(&self) -> String {
        match *self {
            MemberSpec::GaussianSpectrum { a } => format!("gauss_a{a}"),
            MemberSpec::Bump { nu0, .. } => format!("bump_nu{nu0}"),
            MemberSpec::PolynomialDecay { s, .. } => format!("poly_s{s}"),
            MemberSpec::TimeGaussian { b } => format!("time_gauss_b{b}"),
        }
    }

    /// Upper end of the spectral support, if the member is band-limited.
    pub fn band_limit(&self) -> Option<f64> {
        match *self {
            MemberSpec::Bump { nu0, .. } => Some(nu0),
            _ => None,
        }
    }

    pub fn validate(&self, space: &DamekRicciSpace) -> Result<()> {
        let ok = match *self {
            MemberSpec::GaussianSpectrum { a } => a > 0.0,
            MemberSpec::Bump { nu0, taper } => nu0 > 0.0 && taper >= 0.0,
            MemberSpec::PolynomialDecay { s, kappa } => 4.0 * s > (space.d() + 2) as f64 && kappa > 0.0,
            MemberSpec::TimeGaussian { b } => b > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid family member {self:?} for space {space}")))
        }
    }

    fn spectrum(&self, lambda: f64) -> f64 {
        match *self {
            MemberSpec::GaussianSpectrum { a } => (-a * lambda * lambda).exp(),
            MemberSpec::Bump { nu0, taper } => {
                let x = lambda / nu0;
                if x.abs() < 1.0 {
                    (-1.0 / (1.0 - x * x) - taper * lambda * lambda).exp()
                } else {
                    0.0
                }
            }
            MemberSpec::PolynomialDecay { s, kappa } => (1.0 + (lambda / kappa).powi(2)).powf(-s),
            MemberSpec::TimeGaussian { .. } => unreachable!("time-side member"),
        }
    }
}

/// The default family for `space`.
pub fn default_specs(space: &DamekRicciSpace) -> Vec<MemberSpec> {
    let d = space.d() as f64;
    alloc::vec![
        MemberSpec::GaussianSpectrum { a: 0.1 },
        MemberSpec::GaussianSpectrum { a: 1.0 },
        MemberSpec::Bump { nu0: 4.0, taper: 1.0 },
        MemberSpec::PolynomialDecay { s: (d + 2.0) / 2.0, kappa: 3.0 },
        MemberSpec::TimeGaussian { b: 1.0 },
    ]
}

/// A family member sampled on both sides of the transform.
#[derive(Debug, Clone)]
pub struct Member {
    pub id: String,
    pub spec: MemberSpec,
    pub spectrum: SpectralFunction,
    pub time: RadialFunction,
}

impl Member {
    pub fn new(spec: MemberSpec, transform: &Transform) -> Result<Self> {
        spec.validate(transform.space())?;
        let (spectrum, time) = match spec {
            MemberSpec::TimeGaussian { b } => {
                let time = RadialFunction::from_fn(transform.radial_grid().clone(), |t| (-b * t * t).exp())?;
                (transform.forward(&time)?, time)
            }
            _ => {
                let spectrum = SpectralFunction::from_fn(transform.spectral_grid().clone(), |l| spec.spectrum(l))?;
                let time = transform.inverse(&spectrum)?;
                (spectrum, time)
            }
        };
        Ok(Member { id: spec.id(), spec, spectrum, time })
    }

    /// Transform diagnostics. The roundtrip starts from the side the member
    /// is prescribed on: `‖F(F⁻¹F) − F‖/‖F‖` for spectral members and
    /// `‖F⁻¹(Ff) − f‖/‖f‖` for the time-side one.
    pub fn diagnostics(&self, transform: &Transform) -> Result<Diagnostics> {
        let roundtrip = match self.spec {
            MemberSpec::TimeGaussian { .. } => {
                let back = transform.inverse(&self.spectrum)?;
                back.combine(1.0, &self.time, -1.0)?.norm() / self.time.norm()
            }
            _ => {
                let back = transform.forward(&self.time)?;
                back.combine(1.0, &self.spectrum, -1.0)?.norm() / self.spectrum.norm()
            }
        };
        let (norm_time, norm_spectral) = (self.time.norm(), self.spectrum.norm());
        Ok(Diagnostics {
            roundtrip,
            plancherel_defect: (norm_time - norm_spectral).abs() / norm_spectral,
            norm_time,
            norm_spectral,
        })
    }
}

/// Relative roundtrip error and Plancherel defect `|‖f‖ − ‖F‖| / ‖F‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub roundtrip: f64,
    pub plancherel_defect: f64,
    pub norm_time: f64,
    pub norm_spectral: f64,
}

/// Samples every spec on the transform's grids.
pub fn build(transform: &Transform, specs: &[MemberSpec]) -> Result<Vec<Member>> {
    specs.iter().map(|s| Member::new(*s, transform)).collect()
}

/// `(id, spectrum)` pairs for the verifiers.
pub fn subjects(members: &[Member]) -> Vec<crate::approx::Subject<'_>> {
    members.iter().map(|m| (m.id.as_str(), &m.spectrum)).collect()
}

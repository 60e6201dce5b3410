//! Numeric verification of the analytic continuation: dual numbers over
//! complex scalars, gamma machinery, series evaluation, and the contour
//! integral through the windows.

pub mod contour;
pub mod gamma;
pub mod series;

use core::fmt;

use lgcy33_core::series::TruncatedSeries;
use lgcy33_core::{EisensteinScalar, GwClass, MirrorMap};
use num_complex::Complex64;

pub use contour::{mellin_barnes_integrate, residue_sum_left, ContourSpec, MbResult};
pub use gamma::{complex_digamma, complex_gamma, gamma_nilpotent};
pub use series::{eval_hfjrw, eval_hgw, pf_residual_fjrw, pf_residual_gw_exact, SectorPair};

/// Errors on the numeric side.
#[derive(Clone, Debug, PartialEq)]
pub enum AnalyticError {
    /// Gamma evaluated at a non-positive integer.
    GammaPole(Complex64),
    /// Evaluation point too close to a pole of the integrand.
    PoleProximity(Complex64),
    /// Series argument outside its convergence disk.
    ConvergenceDomain,
    /// Im(log v) outside the window band.
    BandViolation { l: i64, im_log_v: f64 },
    /// Non-invertible dual number.
    NotInvertible,
    /// Contour truncation could not reach the requested tail bound.
    TruncationHeight,
}

impl fmt::Display for AnalyticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticError::GammaPole(z) => write!(f, "gamma pole at {z}"),
            AnalyticError::PoleProximity(s) => write!(f, "integrand pole too close to s = {s}"),
            AnalyticError::ConvergenceDomain => f.write_str("argument outside convergence disk"),
            AnalyticError::BandViolation { l, im_log_v } => {
                write!(f, "Im(log v) = {im_log_v} outside the band of window {l}")
            }
            AnalyticError::NotInvertible => f.write_str("dual number has zero constant term"),
            AnalyticError::TruncationHeight => f.write_str("contour tail bound not reached"),
        }
    }
}

impl std::error::Error for AnalyticError {}

/// c0 + c1 p + c2 p^2 + c3 p^3 over complex floats, p^4 = 0; the numeric
/// shadow of the exact ambient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentComplex(TruncatedSeries<Complex64>);

impl NilpotentComplex {
    pub fn zero() -> Self {
        NilpotentComplex(TruncatedSeries::zero(4))
    }

    pub fn one() -> Self {
        NilpotentComplex(TruncatedSeries::one(4))
    }

    pub fn from_scalar(c: Complex64) -> Self {
        NilpotentComplex(TruncatedSeries::from_scalar(4, c))
    }

    pub fn from_coeffs(c: [Complex64; 4]) -> Self {
        NilpotentComplex(TruncatedSeries::from_coeffs(c.to_vec()))
    }

    /// The nilpotent generator p.
    pub fn p() -> Self {
        NilpotentComplex(TruncatedSeries::epsilon(4))
    }

    pub fn coeff(&self, i: usize) -> Complex64 {
        *self.0.coeff(i)
    }

    pub fn coeffs(&self) -> [Complex64; 4] {
        [self.coeff(0), self.coeff(1), self.coeff(2), self.coeff(3)]
    }

    pub fn add(&self, rhs: &Self) -> Self {
        NilpotentComplex(self.0.add(&rhs.0))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        NilpotentComplex(self.0.sub(&rhs.0))
    }

    pub fn neg(&self) -> Self {
        NilpotentComplex(self.0.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        NilpotentComplex(self.0.mul(&rhs.0))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        NilpotentComplex(self.0.scalar_mul(&c))
    }

    pub fn inverse(&self) -> Result<Self, AnalyticError> {
        self.0
            .inverse()
            .map(NilpotentComplex)
            .map_err(|_| AnalyticError::NotInvertible)
    }

    pub fn powi(&self, k: i64) -> Result<Self, AnalyticError> {
        self.0
            .powi(k)
            .map(NilpotentComplex)
            .map_err(|_| AnalyticError::NotInvertible)
    }

    /// exp, defined for any constant term: exp(c0) times the finite
    /// exponential of the nilpotent part.
    pub fn exp(&self) -> Self {
        let c0 = self.coeff(0);
        let mut nil = self.clone();
        nil = nil.sub(&Self::from_scalar(c0));
        let e = NilpotentComplex(nil.0.exp().expect("zero constant term"));
        e.scale(c0.exp())
    }

    /// Principal-branch logarithm; needs a nonzero constant term.
    pub fn ln(&self) -> Result<Self, AnalyticError> {
        let c0 = self.coeff(0);
        if c0.norm() == 0.0 {
            return Err(AnalyticError::NotInvertible);
        }
        // ln(c0 (1 + w)) = ln c0 + w - w^2/2 + w^3/3
        let w = self.scale(1.0 / c0).sub(&Self::one());
        let w2 = w.mul(&w);
        let w3 = w2.mul(&w);
        Ok(Self::from_scalar(c0.ln())
            .add(&w)
            .sub(&w2.scale(Complex64::new(0.5, 0.0)))
            .add(&w3.scale(Complex64::new(1.0 / 3.0, 0.0))))
    }

    /// Complex power through exp(s ln self).
    pub fn powc(&self, s: Complex64) -> Result<Self, AnalyticError> {
        Ok(self.ln()?.scale(s).exp())
    }

    /// Largest coefficient magnitude.
    pub fn norm(&self) -> f64 {
        self.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Numeric image of an exact scalar.
pub fn eis_to_c64(x: &EisensteinScalar) -> Complex64 {
    let (re, im) = x.to_complex(53);
    Complex64::new(re, im)
}

/// Numeric image of an exact ambient class.
pub fn gw_to_nilpotent(c: &GwClass) -> NilpotentComplex {
    NilpotentComplex::from_coeffs([
        eis_to_c64(c.coeff(0)),
        eis_to_c64(c.coeff(1)),
        eis_to_c64(c.coeff(2)),
        eis_to_c64(c.coeff(3)),
    ])
}

/// Applies the exact window map to a numerically evaluated sector pair.
pub fn numeric_mirror_image(map: &MirrorMap, pair: &series::SectorPair) -> NilpotentComplex {
    let cols: Vec<NilpotentComplex> = map.columns.iter().map(gw_to_nilpotent).collect();
    cols[0]
        .scale(pair.s1.u)
        .add(&cols[1].scale(pair.s1.h))
        .add(&cols[2].scale(pair.s2.u))
        .add(&cols[3].scale(pair.s2.h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_exp_ln_roundtrip() {
        let x = NilpotentComplex::from_coeffs([
            Complex64::new(1.3, -0.4),
            Complex64::new(0.2, 0.9),
            Complex64::new(-0.7, 0.1),
            Complex64::new(0.05, -0.3),
        ]);
        let back = x.ln().unwrap().exp();
        for i in 0..4 {
            assert!((back.coeff(i) - x.coeff(i)).norm() < 1e-12, "slot {i}");
        }
    }

    #[test]
    fn p_to_the_fourth_vanishes() {
        let p = NilpotentComplex::p();
        assert_eq!(p.powi(4).unwrap(), NilpotentComplex::zero());
    }

    #[test]
    fn powc_matches_scalar_on_constants() {
        let x = NilpotentComplex::from_scalar(Complex64::new(2.0, 1.0));
        let s = Complex64::new(0.3, -1.1);
        let got = x.powc(s).unwrap().coeff(0);
        let want = Complex64::new(2.0, 1.0).powc(s);
        assert!((got - want).norm() < 1e-13);
    }
}

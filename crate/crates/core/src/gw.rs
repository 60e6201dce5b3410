//! The ambient-side state space: Q(zeta_3)[p]/(p^4), generated by the
//! hyperplane class p of the bicubic threefold.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};


use crate::eisenstein::EisensteinScalar;
use crate::rational::Rational;
use crate::series::{SeriesError, TruncatedSeries};

const ORDER: usize = 4;

/// A class c0 + c1 p + c2 p^2 + c3 p^3 with p^4 = 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GwClass(TruncatedSeries<EisensteinScalar>);

/// Both gradings assign degree 2n to p^n.
pub fn gr(n: usize) -> i64 {
    2 * n as i64
}

/// Bare degree; the age shift vanishes on the ambient side.
pub fn deg0(n: usize) -> i64 {
    2 * n as i64
}

impl GwClass {
    pub fn zero() -> Self {
        GwClass(TruncatedSeries::zero(ORDER))
    }

    pub fn one() -> Self {
        GwClass(TruncatedSeries::one(ORDER))
    }

    pub fn p() -> Self {
        GwClass(TruncatedSeries::epsilon(ORDER))
    }

    pub fn from_coeffs(c: [EisensteinScalar; 4]) -> Self {
        GwClass(TruncatedSeries::from_coeffs(c.to_vec()))
    }

    pub fn from_scalar(s: EisensteinScalar) -> Self {
        GwClass(TruncatedSeries::from_scalar(ORDER, s))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_scalar(EisensteinScalar::from_int(n))
    }

    pub fn coeff(&self, i: usize) -> &EisensteinScalar {
        self.0.coeff(i)
    }

    pub fn coeffs(&self) -> &[EisensteinScalar] {
        self.0.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scalar_mul(&self, s: &EisensteinScalar) -> Self {
        GwClass(self.0.scalar_mul(s))
    }

    pub fn rational_mul(&self, r: &Rational) -> Self {
        self.scalar_mul(&EisensteinScalar::from_rational(r.clone()))
    }

    /// e^{k p} = sum_{n<=3} k^n p^n / n!, exactly.
    pub fn gw_exp(k: i64) -> Self {
        let kp = TruncatedSeries::epsilon(ORDER).scalar_mul(&EisensteinScalar::from_int(k));
        GwClass(kp.exp().expect("k p has zero constant term"))
    }

    /// Inverse by geometric expansion in the nilpotent part.
    pub fn nilpotent_inverse(&self) -> Result<Self, SeriesError> {
        Ok(GwClass(self.0.inverse()?))
    }

    pub fn powi(&self, k: i64) -> Result<Self, SeriesError> {
        Ok(GwClass(self.0.powi(k)?))
    }
}

impl Add for GwClass {
    type Output = GwClass;
    fn add(self, rhs: Self) -> Self {
        GwClass(self.0.add(&rhs.0))
    }
}

impl Sub for GwClass {
    type Output = GwClass;
    fn sub(self, rhs: Self) -> Self {
        GwClass(self.0.sub(&rhs.0))
    }
}

impl Neg for GwClass {
    type Output = GwClass;
    fn neg(self) -> Self {
        GwClass(self.0.neg())
    }
}

impl Mul for GwClass {
    type Output = GwClass;
    fn mul(self, rhs: Self) -> Self {
        GwClass(self.0.mul(&rhs.0))
    }
}

impl fmt::Display for GwClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) + ({}) p + ({}) p^2 + ({}) p^3",
            self.coeff(0),
            self.coeff(1),
            self.coeff(2),
            self.coeff(3)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use num_traits::{One, Zero};

    #[test]
    fn gw_exp_small_cases() {
        assert_eq!(GwClass::gw_exp(0), GwClass::one());
        let e1 = GwClass::gw_exp(1);
        assert_eq!(e1.coeff(0), &EisensteinScalar::one());
        assert_eq!(e1.coeff(1), &EisensteinScalar::one());
        assert_eq!(e1.coeff(2), &EisensteinScalar::from_rational(rat(1, 2)));
        assert_eq!(e1.coeff(3), &EisensteinScalar::from_rational(rat(1, 6)));
    }

    #[test]
    fn one_minus_exp_p_to_the_sixth_vanishes() {
        // lowest-order term is p^6 and p^4 = 0
        let d = GwClass::one() - GwClass::gw_exp(1);
        let d2 = d.clone() * d.clone();
        let d4 = d2.clone() * d2.clone();
        assert!(!d2.is_zero());
        assert!(d4.is_zero());
        let d6 = d2.clone() * d2.clone() * d2;
        assert!(d6.is_zero());
    }

    #[test]
    fn gw_exp_additivity() {
        for a in -20..=20i64 {
            for b in [-20, -7, -1, 0, 1, 2, 13, 20] {
                assert_eq!(GwClass::gw_exp(a) * GwClass::gw_exp(b), GwClass::gw_exp(a + b));
            }
        }
    }

    #[test]
    fn nilpotent_inverse_of_one_minus_zeta_exp() {
        // constant term of 1/(1 - zeta e^p) is 1/(1 - zeta) = (2 + zeta)/3
        let zeta = EisensteinScalar::zeta();
        let c = GwClass::one() - GwClass::gw_exp(1).scalar_mul(&zeta);
        let inv = c.clone().nilpotent_inverse().unwrap();
        assert_eq!(inv.coeff(0), &EisensteinScalar::new(rat(2, 3), rat(1, 3)));
        assert_eq!(c * inv, GwClass::one());
        assert!(GwClass::p().nilpotent_inverse().is_err());
    }
}

//! The field Q(zeta_3), stored in the (1, zeta) basis.
//!
//! zeta = e^{2 pi i / 3} satisfies zeta^2 + zeta + 1 = 0; every product is
//! rewritten through zeta^2 = -1 - zeta, so elements are pairs of exact
//! rationals `a + b zeta`. This is the coefficient field of every exact
//! class in the crate.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{rat_int, ratio_to_f64, Rational};

/// Division by zero in Q(zeta_3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisionByZero;

impl fmt::Display for DivisionByZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("division by zero in Q(zeta_3)")
    }
}

/// An element `a + b zeta` of Q(zeta_3).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EisensteinScalar {
    pub a: Rational,
    pub b: Rational,
}

impl EisensteinScalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        EisensteinScalar { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        EisensteinScalar { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// zeta itself.
    pub fn zeta() -> Self {
        EisensteinScalar { a: Rational::zero(), b: Rational::one() }
    }

    /// zeta^k for any integer k (period 3).
    pub fn zeta_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::zeta(),
            _ => EisensteinScalar { a: -Rational::one(), b: -Rational::one() },
        }
    }

    /// Complex conjugation, the automorphism zeta <-> zeta^2 = -1 - zeta.
    pub fn conj(&self) -> Self {
        EisensteinScalar { a: &self.a - &self.b, b: -self.b.clone() }
    }

    /// Field norm a^2 - a b + b^2 = x * conj(x).
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Multiplicative inverse via conjugate over norm.
    pub fn inv(&self) -> Result<Self, DivisionByZero> {
        if self.is_zero() {
            return Err(DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(EisensteinScalar { a: c.a / &n, b: c.b / n })
    }

    /// Image under the embedding zeta |-> -1/2 + i sqrt(3)/2, as (re, im).
    ///
    /// The backend is IEEE double precision; `precision_bits` is capped at
    /// the 53 bits an f64 mantissa carries.
    pub fn to_complex(&self, precision_bits: u32) -> (f64, f64) {
        let _ = precision_bits.min(53);
        const HALF_SQRT3: f64 = 0.8660254037844386;
        let a = ratio_to_f64(&self.a);
        let b = ratio_to_f64(&self.b);
        (a - 0.5 * b, HALF_SQRT3 * b)
    }
}

/// Exact product with zeta^2 reduced to -1 - zeta.
pub fn eis_mul(x: &EisensteinScalar, y: &EisensteinScalar) -> EisensteinScalar {
    // (a1 + b1 z)(a2 + b2 z) = a1 a2 - b1 b2 + (a1 b2 + b1 a2 - b1 b2) z
    let bb = &x.b * &y.b;
    EisensteinScalar {
        a: &x.a * &y.a - &bb,
        b: &x.a * &y.b + &x.b * &y.a - bb,
    }
}

/// Multiplicative inverse; errors on zero.
pub fn eis_inv(x: &EisensteinScalar) -> Result<EisensteinScalar, DivisionByZero> {
    x.inv()
}

/// Bridge to the analytic side: a + b * (-1/2 + i sqrt(3)/2).
pub fn eis_to_complex(x: &EisensteinScalar, precision_bits: u32) -> (f64, f64) {
    x.to_complex(precision_bits)
}

impl Add for EisensteinScalar {
    type Output = EisensteinScalar;
    fn add(self, rhs: Self) -> Self {
        EisensteinScalar { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for EisensteinScalar {
    type Output = EisensteinScalar;
    fn sub(self, rhs: Self) -> Self {
        EisensteinScalar { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Neg for EisensteinScalar {
    type Output = EisensteinScalar;
    fn neg(self) -> Self {
        EisensteinScalar { a: -self.a, b: -self.b }
    }
}

impl Mul for EisensteinScalar {
    type Output = EisensteinScalar;
    fn mul(self, rhs: Self) -> Self {
        eis_mul(&self, &rhs)
    }
}

impl Div for EisensteinScalar {
    type Output = EisensteinScalar;
    /// Panics on a zero divisor; use [`eis_inv`] for a checked path.
    fn div(self, rhs: Self) -> Self {
        eis_mul(&self, &rhs.inv().expect("division by zero in Q(zeta_3)"))
    }
}

impl Zero for EisensteinScalar {
    fn zero() -> Self {
        EisensteinScalar { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for EisensteinScalar {
    fn one() -> Self {
        EisensteinScalar { a: Rational::one(), b: Rational::zero() }
    }
}

impl Mul<Rational> for EisensteinScalar {
    type Output = EisensteinScalar;
    fn mul(self, rhs: Rational) -> Self {
        EisensteinScalar { a: self.a * &rhs, b: self.b * rhs }
    }
}

impl fmt::Display for EisensteinScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {} z", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn z() -> EisensteinScalar {
        EisensteinScalar::zeta()
    }

    #[test]
    fn zeta_squared_is_reduced() {
        assert_eq!(z() * z(), EisensteinScalar::new(rat_int(-1), rat_int(-1)));
        assert_eq!(EisensteinScalar::zeta_pow(2), z() * z());
        assert_eq!(EisensteinScalar::zeta_pow(3), EisensteinScalar::one());
        assert_eq!(EisensteinScalar::zeta_pow(-1), z() * z());
    }

    #[test]
    fn one_is_identity() {
        let x = EisensteinScalar::new(rat(3, 7), rat(-2, 5));
        assert_eq!(EisensteinScalar::one() * x.clone(), x);
    }

    #[test]
    fn one_minus_zeta_squared() {
        let w = EisensteinScalar::one() - z();
        // (1 - z)^2 = -3 z
        assert_eq!(w.clone() * w.clone(), EisensteinScalar::new(rat_int(0), rat_int(-3)));
        // (1 - z)^6 = -27
        let w2 = w.clone() * w.clone();
        let w6 = w2.clone() * w2.clone() * w2;
        assert_eq!(w6, EisensteinScalar::from_int(-27));
    }

    #[test]
    fn inverses() {
        assert_eq!(eis_inv(&EisensteinScalar::one()).unwrap(), EisensteinScalar::one());
        // 1/z = z^2
        assert_eq!(eis_inv(&z()).unwrap(), EisensteinScalar::zeta_pow(2));
        // 1/(1 - z) = (2 + z)/3
        let w = EisensteinScalar::one() - z();
        assert_eq!(eis_inv(&w).unwrap(), EisensteinScalar::new(rat(2, 3), rat(1, 3)));
        assert!(eis_inv(&EisensteinScalar::zero()).is_err());
    }

    #[test]
    fn complex_embedding() {
        let (re, im) = EisensteinScalar::one().to_complex(53);
        assert_eq!((re, im), (1.0, 0.0));
        let (re, im) = z().to_complex(53);
        assert!((re + 0.5).abs() < 1e-15 && (im - 0.8660254037844386).abs() < 1e-15);
        // (1 - z)^6 = -27 exactly
        let w = EisensteinScalar::one() - z();
        let w2 = w.clone() * w.clone();
        let w6 = w2.clone() * w2.clone() * w2;
        let (re, im) = w6.to_complex(53);
        assert_eq!((re, im), (-27.0, 0.0));
    }

    #[test]
    fn conjugation_is_an_automorphism() {
        let x = EisensteinScalar::new(rat(3, 2), rat(-5, 4));
        let y = EisensteinScalar::new(rat(-1, 3), rat(7, 6));
        assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
    }
}

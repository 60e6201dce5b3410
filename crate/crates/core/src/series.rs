//! Truncated series: a scalar ring adjoined a nilpotent generator eps with
//! eps^order = 0.
//!
//! The order is a runtime value. The ambient p-ring needs order 4, the
//! narrow sectors order 2, and the numeric dual-number evaluation in the
//! companion crate reuses the same type at order 4 over complex scalars.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Div, Neg, Sub};

use num_traits::{One, Zero};

/// Errors from series arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesError {
    /// `exp` of a series with nonzero constant term.
    NonzeroConstantTerm,
    /// `inverse` of a series with zero constant term.
    NonInvertible,
    /// Operands with different truncation orders.
    OrderMismatch,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonzeroConstantTerm => f.write_str("exp needs a zero constant term"),
            SeriesError::NonInvertible => f.write_str("series has a non-invertible constant term"),
            SeriesError::OrderMismatch => f.write_str("truncation orders differ"),
        }
    }
}

/// Element of R[eps]/(eps^order); `coeffs[i]` is the eps^i coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T> TruncatedSeries<T>
where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Div<Output = T>,
{
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "order must be positive");
        TruncatedSeries { coeffs: vec![T::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    pub fn from_scalar(order: usize, t: T) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = t;
        s
    }

    /// The nilpotent generator eps (zero when order == 1).
    pub fn epsilon(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "order must be positive");
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> TruncatedSeries<U> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "truncation orders differ");
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "truncation orders differ");
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }

    /// Product, dropping all terms of degree >= order.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "truncation orders differ");
        let n = self.order();
        let mut out = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn scalar_mul(&self, s: &T) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    fn small_int(k: usize) -> T {
        let mut t = T::zero();
        for _ in 0..k {
            t = t + T::one();
        }
        t
    }

    /// exp of a nilpotent element: the finite sum over k < order.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut acc = Self::one(n);
        let mut term = Self::one(n);
        for k in 1..n {
            term = term.mul(self);
            let kfac = Self::small_int(k);
            term = TruncatedSeries {
                coeffs: term.coeffs.iter().map(|c| c.clone() / kfac.clone()).collect(),
            };
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Inverse via geometric expansion in the nilpotent part; terminates
    /// after `order` terms. Errors when the constant term is zero.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(SeriesError::NonInvertible);
        }
        let n = self.order();
        let c0_inv = T::one() / c0;
        // 1/(c0 + nu) = c0^{-1} sum_k (-nu/c0)^k
        let mut w = self.scalar_mul(&c0_inv).neg();
        w.coeffs[0] = T::zero();
        let mut acc = Self::one(n);
        let mut pw = Self::one(n);
        for _ in 1..n {
            pw = pw.mul(&w);
            acc = acc.add(&pw);
        }
        Ok(acc.scalar_mul(&c0_inv))
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn powi(&self, k: i64) -> Result<Self, SeriesError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut pw = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&pw);
            }
            e >>= 1;
            if e > 0 {
                pw = pw.mul(&pw);
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::EisensteinScalar;
    use crate::rational::rat;

    type S = TruncatedSeries<EisensteinScalar>;

    #[test]
    fn epsilon_nilpotency() {
        let e = S::epsilon(4);
        assert!(e.powi(4).unwrap().is_zero());
        assert!(!e.powi(3).unwrap().is_zero());
        let e2 = S::epsilon(2);
        assert!(e2.powi(2).unwrap().is_zero());
    }

    #[test]
    fn exp_additivity_on_nilpotents() {
        let e = S::epsilon(4);
        let a = e.scalar_mul(&EisensteinScalar::new(rat(2, 3), rat(1, 5)));
        let b = e.mul(&e).scalar_mul(&EisensteinScalar::new(rat(-1, 2), rat(4, 7)));
        let lhs = a.exp().unwrap().mul(&b.exp().unwrap());
        let rhs = a.add(&b).exp().unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_rejects_constant_terms() {
        let s = S::one(4);
        assert_eq!(s.exp(), Err(SeriesError::NonzeroConstantTerm));
    }

    #[test]
    fn inverse_is_exact() {
        let e = S::epsilon(4);
        let s = S::one(4).add(&e.scalar_mul(&EisensteinScalar::from_int(5)));
        let inv = s.inverse().unwrap();
        assert_eq!(s.mul(&inv), S::one(4));
        assert_eq!(S::zero(4).inverse(), Err(SeriesError::NonInvertible));
    }
}

//! Sparse bigraded polynomials in x_1..x_6, p_1, p_2 over exact rationals.
//!
//! The torus weights are fixed for this family: G-weight 1 on each x_i and
//! -3 on each p_j; R-weight 0 on the x_i and 2 on the p_j. A polynomial is
//! bihomogeneous when all of its monomials share both weights.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::rational::{rat_int, Rational};

/// Exponent vector (x_1..x_6, p_1, p_2).
pub type Exponents = [u8; 8];

/// G-weight of a monomial: sum a_i - 3 sum b_j.
pub fn g_weight(e: &Exponents) -> i64 {
    let xs: i64 = e[..6].iter().map(|&a| a as i64).sum();
    let ps: i64 = e[6] as i64 + e[7] as i64;
    xs - 3 * ps
}

/// R-weight of a monomial: 2 sum b_j.
pub fn r_weight(e: &Exponents) -> i64 {
    2 * (e[6] as i64 + e[7] as i64)
}

/// Total p-degree b_1 + b_2.
pub fn p_degree(e: &Exponents) -> u32 {
    e[6] as u32 + e[7] as u32
}

/// Sparse polynomial, zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BigradedPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl BigradedPoly {
    pub fn zero() -> Self {
        BigradedPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn one() -> Self {
        Self::constant(rat_int(1))
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term([0; 8], c);
        p
    }

    /// The variable x_i, 1-based.
    pub fn x(i: usize) -> Self {
        assert!((1..=6).contains(&i));
        let mut e = [0u8; 8];
        e[i - 1] = 1;
        Self::monomial(e, rat_int(1))
    }

    /// The variable p_j, 1-based.
    pub fn p(j: usize) -> Self {
        assert!((1..=2).contains(&j));
        let mut e = [0u8; 8];
        e[5 + j] = 1;
        Self::monomial(e, rat_int(1))
    }

    pub fn monomial(e: Exponents, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BigradedPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Shared (G, R)-weight when bihomogeneous; `None` for zero or mixed.
    pub fn biweight(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let w = (g_weight(first), r_weight(first));
        for e in it {
            if (g_weight(e), r_weight(e)) != w {
                return None;
            }
        }
        Some(w)
    }

    /// True for the zero polynomial or a single shared biweight.
    pub fn is_bihomogeneous(&self) -> bool {
        self.is_zero() || self.biweight().is_some()
    }

    /// Largest p-degree over the support (zero polynomial gives 0).
    pub fn max_p_degree(&self) -> u32 {
        self.terms.keys().map(p_degree).max().unwrap_or(0)
    }

    /// Exact quotient by p_j when every monomial carries at least one p_j.
    pub fn strip_p(&self, j: usize) -> Option<Self> {
        assert!((1..=2).contains(&j));
        let slot = 5 + j;
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[slot] == 0 {
                return None;
            }
            let mut f = *e;
            f[slot] -= 1;
            out.add_term(f, c.clone());
        }
        Some(out)
    }

    /// Writes the polynomial as p_1 a + p_2 b, sending each monomial with a
    /// p_1 factor into a and the rest into b. `None` when a monomial has no
    /// p factor at all.
    pub fn split_p_canonical(&self) -> Option<(Self, Self)> {
        let mut d1 = Self::zero();
        let mut d2 = Self::zero();
        for (e, c) in &self.terms {
            let mut f = *e;
            if e[6] >= 1 {
                f[6] -= 1;
                d1.add_term(f, c.clone());
            } else if e[7] >= 1 {
                f[7] -= 1;
                d2.add_term(f, c.clone());
            } else {
                return None;
            }
        }
        Some((d1, d2))
    }

    /// Splits into (p-degree 0 part, coefficient of p_1, coefficient of p_2,
    /// p-degree >= 2 part). The p_j coefficients have the p_j stripped.
    pub fn split_p_parts(&self) -> (Self, Self, Self, Self) {
        let mut d0 = Self::zero();
        let mut d1 = Self::zero();
        let mut d2 = Self::zero();
        let mut rest = Self::zero();
        for (e, c) in &self.terms {
            match (e[6], e[7]) {
                (0, 0) => d0.add_term(*e, c.clone()),
                (1, 0) => {
                    let mut f = *e;
                    f[6] = 0;
                    d1.add_term(f, c.clone());
                }
                (0, 1) => {
                    let mut f = *e;
                    f[7] = 0;
                    d2.add_term(f, c.clone());
                }
                _ => rest.add_term(*e, c.clone()),
            }
        }
        (d0, d1, d2, rest)
    }
}

impl Add for BigradedPoly {
    type Output = BigradedPoly;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for BigradedPoly {
    type Output = BigradedPoly;
    fn sub(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl Neg for BigradedPoly {
    type Output = BigradedPoly;
    fn neg(self) -> Self {
        BigradedPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for BigradedPoly {
    type Output = BigradedPoly;
    fn mul(self, rhs: Self) -> Self {
        (&self).mul_ref(&rhs)
    }
}

impl BigradedPoly {
    pub fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = [0u8; 8];
                for (k, slot) in e.iter_mut().enumerate() {
                    *slot = e1[k]
                        .checked_add(e2[k])
                        .expect("exponent overflow");
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BigradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = ["x1", "x2", "x3", "x4", "x5", "x6", "p1", "p2"];
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (k, &a) in e.iter().enumerate() {
                if a == 1 {
                    write!(f, "*{}", names[k])?;
                } else if a > 1 {
                    write!(f, "*{}^{}", names[k], a)?;
                }
            }
        }
        Ok(())
    }
}

/// Errors from potential validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PotentialError {
    /// W_j is not a G-weight-3, R-weight-0 polynomial in the x variables.
    BadCubic(usize),
    /// f_{ji} is not a G-weight-2, R-weight-0 polynomial in the x variables.
    BadQuadric(usize, usize),
    /// W_j != sum_i x_i f_{ji}.
    DecompositionFails(usize),
}

impl fmt::Display for PotentialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialError::BadCubic(j) => write!(f, "W{} is not a cubic in x", j + 1),
            PotentialError::BadQuadric(j, i) => {
                write!(f, "f[{}][{}] is not a quadric in x", j + 1, i + 1)
            }
            PotentialError::DecompositionFails(j) => {
                write!(f, "W{} != sum_i x_i f[{}][i]", j + 1, j + 1)
            }
        }
    }
}

/// The superpotential data: two cubics with a chosen Koszul decomposition
/// W_j = sum_i x_i f_{ji}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Potential {
    pub w: [BigradedPoly; 2],
    pub f: [[BigradedPoly; 6]; 2],
}

impl Potential {
    pub fn new(w: [BigradedPoly; 2], f: [[BigradedPoly; 6]; 2]) -> Result<Self, PotentialError> {
        let p = Potential { w, f };
        p.validate()?;
        Ok(p)
    }

    /// Fermat-split default: W_1 = x_1^3 + x_2^3 + x_3^3,
    /// W_2 = x_4^3 + x_5^3 + x_6^3, with f_{ji} = x_i^2 on the matching block.
    pub fn fermat_split() -> Self {
        let cube = |i: usize| {
            let x = BigradedPoly::x(i);
            x.mul_ref(&BigradedPoly::x(i)).mul_ref(&BigradedPoly::x(i))
        };
        let square = |i: usize| BigradedPoly::x(i).mul_ref(&BigradedPoly::x(i));
        let w1 = cube(1) + cube(2) + cube(3);
        let w2 = cube(4) + cube(5) + cube(6);
        let mut f = [
            [
                BigradedPoly::zero(),
                BigradedPoly::zero(),
                BigradedPoly::zero(),
                BigradedPoly::zero(),
                BigradedPoly::zero(),
                BigradedPoly::zero(),
            ],
            [
                BigradedPoly::zero(),
                BigradedPoly::zero(),
                BigradedPoly::zero(),
                BigradedPoly::zero(),
                BigradedPoly::zero(),
                BigradedPoly::zero(),
            ],
        ];
        for i in 1..=3 {
            f[0][i - 1] = square(i);
        }
        for i in 4..=6 {
            f[1][i - 1] = square(i);
        }
        Potential { w: [w1, w2], f }
    }

    pub fn validate(&self) -> Result<(), PotentialError> {
        for j in 0..2 {
            if !(self.w[j].is_zero() || self.w[j].biweight() == Some((3, 0))) {
                return Err(PotentialError::BadCubic(j));
            }
            for i in 0..6 {
                let fji = &self.f[j][i];
                if !(fji.is_zero() || fji.biweight() == Some((2, 0))) {
                    return Err(PotentialError::BadQuadric(j, i));
                }
            }
            let mut acc = BigradedPoly::zero();
            for i in 0..6 {
                acc = acc + BigradedPoly::x(i + 1).mul_ref(&self.f[j][i]);
            }
            if acc != self.w[j] {
                return Err(PotentialError::DecompositionFails(j));
            }
        }
        Ok(())
    }

    /// The full superpotential W = p_1 W_1 + p_2 W_2 (G-weight 0, R-weight 2).
    pub fn total(&self) -> BigradedPoly {
        BigradedPoly::p(1).mul_ref(&self.w[0]) + BigradedPoly::p(2).mul_ref(&self.w[1])
    }

    /// The cosection entries (p_1 f_{1i} + p_2 f_{2i}) for i = 1..6.
    pub fn pf_entries(&self) -> Vec<BigradedPoly> {
        (0..6)
            .map(|i| {
                BigradedPoly::p(1).mul_ref(&self.f[0][i])
                    + BigradedPoly::p(2).mul_ref(&self.f[1][i])
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn weights() {
        let m = BigradedPoly::x(1).mul_ref(&BigradedPoly::p(2));
        let e = *m.terms().next().unwrap().0;
        assert_eq!(g_weight(&e), 1 - 3);
        assert_eq!(r_weight(&e), 2);
        assert_eq!(p_degree(&e), 1);
        assert!(m.is_bihomogeneous());
        let mixed = m + BigradedPoly::x(2);
        assert!(!mixed.is_bihomogeneous());
    }

    #[test]
    fn product_adds_weights() {
        let a = BigradedPoly::x(3).mul_ref(&BigradedPoly::x(3));
        let b = BigradedPoly::p(1);
        let (ga, ra) = a.biweight().unwrap();
        let (gb, rb) = b.biweight().unwrap();
        let (gc, rc) = a.mul_ref(&b).biweight().unwrap();
        assert_eq!((gc, rc), (ga + gb, ra + rb));
    }

    #[test]
    fn fermat_split_potential_validates() {
        let pot = Potential::fermat_split();
        assert!(pot.validate().is_ok());
        assert_eq!(pot.total().biweight(), Some((0, 2)));
    }

    #[test]
    fn broken_decomposition_is_rejected() {
        let mut pot = Potential::fermat_split();
        pot.f[0][0] = BigradedPoly::x(2).mul_ref(&BigradedPoly::x(2));
        assert_eq!(pot.validate(), Err(PotentialError::DecompositionFails(0)));
    }

    #[test]
    fn split_p_parts_roundtrip() {
        let p = BigradedPoly::x(1)
            + BigradedPoly::p(1).mul_ref(&BigradedPoly::x(2))
            + BigradedPoly::p(2).mul_ref(&BigradedPoly::p(1)).scale(&rat(3, 2));
        let (d0, d1, d2, rest) = p.split_p_parts();
        assert_eq!(d0, BigradedPoly::x(1));
        assert_eq!(d1, BigradedPoly::x(2));
        assert!(d2.is_zero());
        assert_eq!(rest.max_p_degree(), 2);
    }
}

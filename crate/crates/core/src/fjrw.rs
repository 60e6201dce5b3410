//! The narrow two-sector state space: two copies of H*(P(3,3)), each a
//! rank-2 truncated ring Q(zeta_3)[H]/(H^2), glued as orthogonal idempotent
//! blocks.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::eisenstein::{DivisionByZero, EisensteinScalar};
use crate::rational::rat;

/// Gr values on the basis (1^(1), H^(1), 1^(2), H^(2)).
pub const GR: [i64; 4] = [0, 2, 4, 6];
/// Bare degrees on the same basis (age shift removed).
pub const DEG0: [i64; 4] = [-4, -2, -4, -2];

/// One sector: unit and H coefficients, with H^2 = 0.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Sector {
    pub unit: EisensteinScalar,
    pub h: EisensteinScalar,
}

impl Sector {
    pub fn new(unit: EisensteinScalar, h: EisensteinScalar) -> Self {
        Sector { unit, h }
    }

    pub fn zero() -> Self {
        Sector::default()
    }

    pub fn one() -> Self {
        Sector { unit: EisensteinScalar::one(), h: EisensteinScalar::zero() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Sector {
            unit: self.unit.clone() * rhs.unit.clone(),
            h: self.unit.clone() * rhs.h.clone() + self.h.clone() * rhs.unit.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, DivisionByZero> {
        // (u + h H)^{-1} = u^{-1} - (h/u^2) H
        let ui = self.unit.inv()?;
        let ui2 = ui.clone() * ui.clone();
        Ok(Sector { unit: ui, h: -(self.h.clone() * ui2) })
    }

    /// Integer power, negative exponents through the sector inverse.
    pub fn powi(&self, k: i64) -> Result<Self, DivisionByZero> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Sector::one();
        let mut pw = base;
        let mut e = k.unsigned_abs();
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

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && self.h.is_zero()
    }
}

/// A narrow class s1_unit 1^(1) + s1_H H^(1) + s2_unit 1^(2) + s2_H H^(2).
///
/// Sectors are orthogonal: 1^(j) 1^(k) = delta_{jk} 1^(k), H^(j) H^(k) = 0,
/// 1^(j) H^(k) = delta_{jk} H^(k).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FjrwClass {
    pub s1: Sector,
    pub s2: Sector,
}

impl FjrwClass {
    pub fn new(s1: Sector, s2: Sector) -> Self {
        FjrwClass { s1, s2 }
    }

    pub fn zero() -> Self {
        FjrwClass::default()
    }

    /// The unit 1^(1) + 1^(2) of the narrow subspace.
    pub fn one() -> Self {
        FjrwClass { s1: Sector::one(), s2: Sector::one() }
    }

    pub fn basis(i: usize) -> Self {
        let mut c = FjrwClass::zero();
        match i {
            0 => c.s1.unit = EisensteinScalar::one(),
            1 => c.s1.h = EisensteinScalar::one(),
            2 => c.s2.unit = EisensteinScalar::one(),
            _ => c.s2.h = EisensteinScalar::one(),
        }
        c
    }

    /// Coefficients in the basis order (1^(1), H^(1), 1^(2), H^(2)).
    pub fn coeffs(&self) -> [EisensteinScalar; 4] {
        [
            self.s1.unit.clone(),
            self.s1.h.clone(),
            self.s2.unit.clone(),
            self.s2.h.clone(),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.s1.is_zero() && self.s2.is_zero()
    }

    pub fn scalar_mul(&self, s: &EisensteinScalar) -> Self {
        FjrwClass {
            s1: Sector::new(self.s1.unit.clone() * s.clone(), self.s1.h.clone() * s.clone()),
            s2: Sector::new(self.s2.unit.clone() * s.clone(), self.s2.h.clone() * s.clone()),
        }
    }
}

impl Add for FjrwClass {
    type Output = FjrwClass;
    fn add(self, rhs: Self) -> Self {
        FjrwClass {
            s1: Sector::new(self.s1.unit + rhs.s1.unit, self.s1.h + rhs.s1.h),
            s2: Sector::new(self.s2.unit + rhs.s2.unit, self.s2.h + rhs.s2.h),
        }
    }
}

impl Sub for FjrwClass {
    type Output = FjrwClass;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FjrwClass {
    type Output = FjrwClass;
    fn neg(self) -> Self {
        FjrwClass {
            s1: Sector::new(-self.s1.unit, -self.s1.h),
            s2: Sector::new(-self.s2.unit, -self.s2.h),
        }
    }
}

impl Mul for FjrwClass {
    type Output = FjrwClass;
    fn mul(self, rhs: Self) -> Self {
        FjrwClass { s1: self.s1.mul(&rhs.s1), s2: self.s2.mul(&rhs.s2) }
    }
}

impl fmt::Display for FjrwClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) 1a + ({}) Ha + ({}) 1b + ({}) Hb",
            self.s1.unit, self.s1.h, self.s2.unit, self.s2.h
        )
    }
}

/// Narrow Chern character of the line O(n) with homological shift m:
/// (-1)^m sum_k zeta^{kn} (1^(k) + (n/3) H^(k)).
pub fn fjrw_ch_line(n: i64, m: i64) -> FjrwClass {
    let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
    let n_over_3 = EisensteinScalar::from_rational(rat(n, 3));
    let sector = |k: i64| {
        let zkn = EisensteinScalar::zeta_pow(k * n) * EisensteinScalar::from_int(sign);
        Sector::new(zkn.clone(), zkn * n_over_3.clone())
    };
    FjrwClass { s1: sector(1), s2: sector(2) }
}

/// Narrow inverse Todd class of the rank-6 tautological bundle:
/// sector-wise (1 - zeta^k (1 + H/3))^6 = (1-zeta^k)^6 - 2 zeta^k (1-zeta^k)^5 H.
pub fn todd_inverse_narrow() -> FjrwClass {
    let sector = |k: i64| {
        let z = EisensteinScalar::zeta_pow(k);
        let base = Sector::new(
            EisensteinScalar::one() - z.clone(),
            z * EisensteinScalar::from_rational(rat(-1, 3)),
        );
        base.powi(6).expect("positive power")
    };
    FjrwClass { s1: sector(1), s2: sector(2) }
}

/// Narrow Chern character of the Koszul object twisted by q and shifted by m:
/// (-1)^m sum_k (zeta^{-k} 1 - (1/3) zeta^{-k} H)^{q+6} ((1-zeta^k) 1 - (1/3) zeta^k H)^6,
/// computed sector-by-sector with negative powers expanded through H^2 = 0.
pub fn ch_kminus(q: i64, m: i64) -> FjrwClass {
    let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
    let third = EisensteinScalar::from_rational(rat(1, 3));
    let sector = |k: i64| {
        let zmk = EisensteinScalar::zeta_pow(-k);
        let line = Sector::new(zmk.clone(), -(zmk * third.clone()));
        let zk = EisensteinScalar::zeta_pow(k);
        let todd = Sector::new(EisensteinScalar::one() - zk.clone(), -(zk * third.clone()));
        let s = line
            .powi(q + 6)
            .expect("zeta^{-k} is invertible")
            .mul(&todd.powi(6).expect("positive power"));
        Sector::new(
            s.unit * EisensteinScalar::from_int(sign),
            s.h * EisensteinScalar::from_int(sign),
        )
    };
    FjrwClass { s1: sector(1), s2: sector(2) }
}

/// The three special combinations sum_k zeta^{-qk} (1-zeta^k)^t X^(k)
/// appearing in the expansion of [`ch_kminus`]; `x_is_h` selects whether X
/// is the unit or the hyperplane class.
pub fn special_element(q: i64, t: i64, x_is_h: bool) -> FjrwClass {
    debug_assert!(t >= 0);
    let sector = |k: i64| {
        let base = EisensteinScalar::one() - EisensteinScalar::zeta_pow(k);
        let mut pw = EisensteinScalar::one();
        for _ in 0..t {
            pw = pw * base.clone();
        }
        let coeff = EisensteinScalar::zeta_pow(-q * k) * pw;
        if x_is_h {
            Sector::new(EisensteinScalar::zero(), coeff)
        } else {
            Sector::new(coeff, EisensteinScalar::zero())
        }
    };
    FjrwClass { s1: sector(1), s2: sector(2) }
}

/// Expansion of [`ch_kminus`] into the three special combinations, used as
/// an independent route in tests:
/// (-1)^m [ S(q+6,6,unit) - 2 S(q+5,5,H) - ((q+6)/3) S(q+6,6,H) ].
pub fn ch_kminus_expanded(q: i64, m: i64) -> FjrwClass {
    let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
    let a = special_element(q + 6, 6, false);
    let b = special_element(q + 5, 5, true).scalar_mul(&EisensteinScalar::from_int(-2));
    let c = special_element(q + 6, 6, true)
        .scalar_mul(&EisensteinScalar::from_rational(rat(-(q + 6), 3)));
    (a + b + c).scalar_mul(&EisensteinScalar::from_int(sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn sector_orthogonality() {
        let e1 = FjrwClass::basis(0);
        let h1 = FjrwClass::basis(1);
        let e2 = FjrwClass::basis(2);
        let h2 = FjrwClass::basis(3);
        assert_eq!(e1.clone() * e1.clone(), e1);
        assert!((e1.clone() * e2.clone()).is_zero());
        assert!((h1.clone() * h1.clone()).is_zero());
        assert!((h1.clone() * h2.clone()).is_zero());
        assert_eq!(e1.clone() * h1.clone(), h1);
        assert!((e2.clone() * h1.clone()).is_zero());
        assert_eq!(FjrwClass::one() * h2.clone(), h2);
    }

    #[test]
    fn ch_line_small_cases() {
        // trivial bundle
        assert_eq!(fjrw_ch_line(0, 0), FjrwClass::basis(0) + FjrwClass::basis(2));
        // O(-1): zeta^{-k} (1 - H/3) per sector
        let c = fjrw_ch_line(-1, 0);
        assert_eq!(c.s1.unit, EisensteinScalar::zeta_pow(-1));
        assert_eq!(
            c.s1.h,
            EisensteinScalar::zeta_pow(-1) * EisensteinScalar::from_rational(rat(-1, 3))
        );
        assert_eq!(c.s2.unit, EisensteinScalar::zeta_pow(-2));
        // O(3): zeta^{3k} = 1 and (1 + H)
        let c = fjrw_ch_line(3, 0);
        assert_eq!(c.s1, Sector::new(EisensteinScalar::one(), EisensteinScalar::one()));
        assert_eq!(c.s2, Sector::new(EisensteinScalar::one(), EisensteinScalar::one()));
    }

    #[test]
    fn ch_line_multiplicativity() {
        for n in -7..=7 {
            assert_eq!(
                fjrw_ch_line(n + 3, 0),
                fjrw_ch_line(n, 0) * fjrw_ch_line(3, 0),
                "n = {n}"
            );
        }
    }

    #[test]
    fn todd_inverse_values() {
        let t = todd_inverse_narrow();
        assert_eq!(t.s1.unit, EisensteinScalar::from_int(-27));
        // -2 zeta (1 - zeta)^5 = -18 + 18 zeta
        assert_eq!(t.s1.h, EisensteinScalar::new(rat_int(-18), rat_int(18)));
        // second sector is the zeta <-> zeta^2 conjugate
        assert_eq!(t.s2.unit, t.s1.unit.conj());
        assert_eq!(t.s2.h, t.s1.h.conj());
    }

    #[test]
    fn ch_kminus_base_cases() {
        // q = 0: the line factor has unit part zeta^{-6k} = 1
        let c = ch_kminus(0, 0);
        assert_eq!(c.s1.unit, EisensteinScalar::from_int(-27));
        // q = -6: the line factor is 1, leaving the inverse Todd class
        assert_eq!(ch_kminus(-6, 0), todd_inverse_narrow());
        // (-1)^m periodicity
        assert_eq!(ch_kminus(2, 1), ch_kminus(2, 3));
        assert_eq!(ch_kminus(2, 0), -ch_kminus(2, 1));
    }

    #[test]
    fn grr_factorization_consistency() {
        // display form vs line-bundle character times inverse Todd class
        for q in -12..=12 {
            for m in -3..=3 {
                let product = fjrw_ch_line(-q - 6, m - 6) * todd_inverse_narrow();
                assert_eq!(ch_kminus(q, m), product, "q = {q}, m = {m}");
            }
        }
    }

    #[test]
    fn ch_kminus_three_term_expansion() {
        for q in -9..=9 {
            for m in 0..=1 {
                assert_eq!(ch_kminus(q, m), ch_kminus_expanded(q, m), "q = {q}, m = {m}");
            }
        }
    }

    #[test]
    fn gradings_table() {
        assert_eq!(GR, [0, 2, 4, 6]);
        assert_eq!(DEG0, [-4, -2, -4, -2]);
    }
}

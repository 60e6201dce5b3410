//! The window linear maps from the narrow state space to the ambient ring,
//! built two independent ways, plus the three expansion identities and the
//! commuting-square checker.
//!
//! Route one evaluates the closed columns
//!   H^(k) -> (1/3) (zeta^k e^p)^l / (1 - zeta^k e^p)
//!   1^(k) -> (l/9) (zeta^k e^p)^l / (1 - zeta^k e^p)
//!           + (1/9) (zeta^k e^p)^{l+1} / (1 - zeta^k e^p)^2
//! in Q(zeta_3)[p]/(p^4). Route two multiplies the semi-infinite
//! staircase matrix against the finitely supported special elements,
//! where every complete staircase line cancels exactly against
//! (1-e^p)^6 = (1-e^p)^5 e^p = 0, and solves for the basis columns.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::eisenstein::EisensteinScalar;
use crate::fjrw::{ch_kminus, special_element, FjrwClass};
use crate::gw::GwClass;
use crate::rational::{binomial, rat, rat_int, Rational};
use crate::window::{orlov_chern_closed, OrlovEngine, WindowError};

/// The window-l linear map, stored as images of the basis
/// (1^(1), H^(1), 1^(2), H^(2)).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MirrorMap {
    pub l: i64,
    pub columns: [GwClass; 4],
}

fn zeta_exp_pow(k: i64, l: i64) -> GwClass {
    // (zeta^k e^p)^l = zeta^{kl} e^{lp}
    GwClass::gw_exp(l).scalar_mul(&EisensteinScalar::zeta_pow(k * l))
}

fn one_minus_zeta_exp(k: i64) -> GwClass {
    GwClass::one() - GwClass::gw_exp(1).scalar_mul(&EisensteinScalar::zeta_pow(k))
}

/// Closed-form construction of the window map.
pub fn build_mirror_map(l: i64) -> MirrorMap {
    let third = EisensteinScalar::from_rational(rat(1, 3));
    let ninth = EisensteinScalar::from_rational(rat(1, 9));
    let l_ninth = EisensteinScalar::from_rational(rat(l, 9));
    let col_h = |k: i64| {
        let denom = one_minus_zeta_exp(k).nilpotent_inverse().expect("1 - zeta^k invertible");
        (zeta_exp_pow(k, l) * denom).scalar_mul(&third)
    };
    let col_unit = |k: i64| {
        let denom = one_minus_zeta_exp(k).nilpotent_inverse().expect("invertible");
        let denom2 = denom.clone() * denom.clone();
        (zeta_exp_pow(k, l) * denom).scalar_mul(&l_ninth)
            + (zeta_exp_pow(k, l + 1) * denom2).scalar_mul(&ninth)
    };
    MirrorMap { l, columns: [col_unit(1), col_h(1), col_unit(2), col_h(2)] }
}

/// Linear image of a narrow class under the window map.
pub fn apply_mirror(map: &MirrorMap, c: &FjrwClass) -> GwClass {
    let coeffs = c.coeffs();
    let mut acc = GwClass::zero();
    for (col, coeff) in map.columns.iter().zip(coeffs.iter()) {
        if !coeff.is_zero() {
            acc = acc + col.scalar_mul(coeff);
        }
    }
    acc
}

/// Alternating binomial column of (1 - x)^t, length t + 1.
fn binom_column(t: i64) -> Vec<Rational> {
    (0..=t)
        .map(|i| {
            let c = binomial(t, i);
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// Staircase-matrix image of sum_k zeta^{-qk} (column pattern)^(k), summed
/// over the anti-diagonal lines j + i = n with n = q - l mod 3. Incomplete
/// lines (n < len - 1) contribute; the first `margin` complete lines are
/// evaluated and must vanish exactly, which is what makes the truncation
/// exact.
pub fn mirmatrix_eval(l: i64, q: i64, col: &[Rational], weighted: bool, margin: usize) -> GwClass {
    let len = col.len() as i64;
    let residue = (q - l).rem_euclid(3);
    let mut acc = GwClass::zero();
    let line_sum = |n: i64| {
        let mut s = GwClass::zero();
        let j_min = (n - (len - 1)).max(0);
        for j in j_min..=n {
            let i = (n - j) as usize;
            let w = if weighted { rat_int(l + j) } else { rat_int(1) };
            let coeff = &w * &col[i];
            if !coeff.is_zero() {
                s = s + GwClass::gw_exp(l + j).rational_mul(&coeff);
            }
        }
        s
    };
    let mut n = residue;
    while n <= len - 2 {
        acc = acc + line_sum(n);
        n += 3;
    }
    // truncation adequacy: complete lines cancel to zero
    let mut checked = 0usize;
    while checked < margin {
        if n >= len - 1 {
            assert!(
                line_sum(n).is_zero(),
                "complete staircase line {n} failed to cancel"
            );
            checked += 1;
        }
        n += 3;
    }
    let pref = if weighted { rat(1, 3) } else { rat_int(1) };
    acc.rational_mul(&pref)
}

/// Staircase-matrix construction of the window map: evaluate the map on
/// the special elements for q = 0, 1 and solve the two-by-two zeta systems
/// for the basis columns.
pub fn build_mirror_map_mirmatrix(l: i64) -> MirrorMap {
    let col6 = binom_column(6);
    let margin = 8;
    // sum_k zeta^{-qk} (1-zeta^k)^6 X^(k) = -27 (zeta^{-q} X^(1) + zeta^{-2q} X^(2))
    let scale = EisensteinScalar::from_int(-27).inv().expect("nonzero");
    let u0 = mirmatrix_eval(l, 0, &col6, true, margin).scalar_mul(&scale);
    let u1 = mirmatrix_eval(l, 1, &col6, true, margin).scalar_mul(&scale);
    let h0 = mirmatrix_eval(l, 0, &col6, false, margin).scalar_mul(&scale);
    let h1 = mirmatrix_eval(l, 1, &col6, false, margin).scalar_mul(&scale);

    // a + b = A, zeta^2 a + zeta b = B  =>  a = (zeta A - B)/(zeta - zeta^2)
    let zeta = EisensteinScalar::zeta();
    let det_inv = (zeta.clone() - EisensteinScalar::zeta_pow(2)).inv().expect("nonzero");
    let solve = |a_sum: GwClass, b_sum: GwClass| {
        let first = (a_sum.scalar_mul(&zeta) - b_sum.clone()).scalar_mul(&det_inv);
        let second =
            (b_sum - a_sum.scalar_mul(&EisensteinScalar::zeta_pow(2))).scalar_mul(&det_inv);
        (first, second)
    };
    let (unit1, unit2) = solve(u0, u1);
    let (h_1, h_2) = solve(h0, h1);
    MirrorMap { l, columns: [unit1, h_1, unit2, h_2] }
}

/// Right side of the first expansion identity.
pub fn elem1_rhs(l: i64, q: i64) -> GwClass {
    let mut first = GwClass::zero();
    let mut second = GwClass::zero();
    for s in l..=l + 5 {
        if (s - q).rem_euclid(3) != 0 {
            continue;
        }
        for k in 0..=(s - l) {
            let sign6 = if (s - l - k).rem_euclid(2) == 0 { 1 } else { -1 };
            let c6 = binomial(6, s - l - k) * rat_int(sign6 * s);
            first = first + GwClass::gw_exp(k + l).rational_mul(&c6);
        }
        for k in 0..=(s - l - 1) {
            let sign5 = if (s - l - k).rem_euclid(2) == 0 { 1 } else { -1 };
            let c5 = binomial(5, s - l - k - 1) * rat_int(sign5);
            second = second + GwClass::gw_exp(k + l).rational_mul(&c5);
        }
    }
    first.rational_mul(&rat(1, 3)) - second.rational_mul(&rat_int(2))
}

/// Right side of the second expansion identity.
pub fn elem2_rhs(l: i64, q: i64) -> GwClass {
    let mut acc = GwClass::zero();
    for s in l..=l + 4 {
        if (s - q).rem_euclid(3) != 0 {
            continue;
        }
        for k in 0..=(s - l) {
            let sign = if (s - l - k).rem_euclid(2) == 0 { 1 } else { -1 };
            let c = binomial(5, s - l - k) * rat_int(sign);
            acc = acc + GwClass::gw_exp(k + l).rational_mul(&c);
        }
    }
    acc
}

/// Right side of the third expansion identity.
pub fn elem3_rhs(l: i64, q: i64) -> GwClass {
    let mut acc = GwClass::zero();
    for s in l..=l + 5 {
        if (s - q).rem_euclid(3) != 0 {
            continue;
        }
        for k in 0..=(s - l) {
            let sign = if (s - l - k).rem_euclid(2) == 0 { 1 } else { -1 };
            let c = binomial(6, s - l - k) * rat_int(sign);
            acc = acc + GwClass::gw_exp(k + l).rational_mul(&c);
        }
    }
    acc
}

/// One verified expansion identity: both sides and their agreement.
#[derive(Clone, Debug)]
pub struct ElemIdentity {
    pub lhs: GwClass,
    pub rhs: GwClass,
    pub pass: bool,
}

/// Report for the three expansion identities at a parameter pair.
#[derive(Clone, Debug)]
pub struct ElemReport {
    pub l: i64,
    pub q: i64,
    pub identities: [ElemIdentity; 3],
}

impl ElemReport {
    pub fn pass(&self) -> bool {
        self.identities.iter().all(|i| i.pass)
    }
}

/// Evaluates the three expansion identities exactly at (l, q); failure is
/// a report outcome, not an error.
pub fn check_elem_identities(l: i64, q: i64) -> ElemReport {
    let map = build_mirror_map(l);
    let make = |lhs: GwClass, rhs: GwClass| {
        let pass = lhs == rhs;
        ElemIdentity { lhs, rhs, pass }
    };
    let id1 = make(
        apply_mirror(&map, &special_element(q, 6, false)),
        elem1_rhs(l, q),
    );
    let id2 = make(
        apply_mirror(&map, &special_element(q, 5, true)),
        elem2_rhs(l, q),
    );
    let id3 = make(
        apply_mirror(&map, &special_element(q, 6, true)),
        elem3_rhs(l, q),
    );
    ElemReport { l, q, identities: [id1, id2, id3] }
}

/// Closed form of the window image of the twisted shifted Koszul
/// character: (-1)^m sum_{s = q mod 3, l <= s <= l+5} ((s-q-6)/3)
/// sum_{k=0}^{s-l} (-1)^{l+k+6-s} C(6, l+k+6-s) e^{(k+l)p}.
pub fn mirror_image_ch_kminus_closed(l: i64, q: i64, m: i64) -> GwClass {
    let mut acc = GwClass::zero();
    for s in l..=l + 5 {
        if (s - q).rem_euclid(3) != 0 {
            continue;
        }
        let outer = rat(s - q - 6, 3);
        for k in 0..=(s - l) {
            let idx = l + k + 6 - s;
            let sign = if idx.rem_euclid(2) == 0 { 1 } else { -1 };
            let c = binomial(6, idx) * rat_int(sign) * &outer;
            acc = acc + GwClass::gw_exp(k + l).rational_mul(&c);
        }
    }
    if m.rem_euclid(2) == 0 {
        acc
    } else {
        -acc
    }
}

/// Which route computes the right side of the commuting square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrlovMethod {
    Ledger,
    Closed,
}

impl fmt::Display for OrlovMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrlovMethod::Ledger => f.write_str("ledger"),
            OrlovMethod::Closed => f.write_str("closed"),
        }
    }
}

/// Verdict of one commuting-square check.
#[derive(Clone, Debug)]
pub struct MainReport {
    pub t: i64,
    pub q: i64,
    pub m: i64,
    pub method: OrlovMethod,
    pub lhs: GwClass,
    pub rhs: GwClass,
    pub pass: bool,
}

/// The central check: the window-t image of ch(K_-(q)[m]) must equal the
/// window-(t-3) twisted-shift character times e^{-3p}, exactly.
///
/// The ledger route needs t - 3 - q >= 1; the closed route is
/// unconditional.
pub fn check_main_theorem(
    t: i64,
    q: i64,
    m: i64,
    method: OrlovMethod,
    engine: &mut OrlovEngine,
) -> Result<MainReport, WindowError> {
    let map = build_mirror_map(t);
    let lhs = apply_mirror(&map, &ch_kminus(q, m));
    let orlov = match method {
        OrlovMethod::Ledger => engine.orlov_chern_ledger(t - 3, q, m)?,
        OrlovMethod::Closed => orlov_chern_closed(t - 3, q, m),
    };
    let rhs = orlov * GwClass::gw_exp(-3);
    let pass = lhs == rhs;
    Ok(MainReport { t, q, m, method, lhs, rhs, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Potential;

    #[test]
    fn h_column_constant_term_at_window_zero() {
        let map = build_mirror_map(0);
        // (1/3) * 1/(1 - zeta) has constant term (2 + zeta)/9
        assert_eq!(
            map.columns[1].coeff(0),
            &EisensteinScalar::new(rat(2, 9), rat(1, 9))
        );
    }

    #[test]
    fn h_column_satisfies_its_defining_identity() {
        for l in [-3, 0, 1, 5] {
            let map = build_mirror_map(l);
            let prod = map.columns[1].clone() * one_minus_zeta_exp(1);
            assert_eq!(prod, zeta_exp_pow(1, l).rational_mul(&rat(1, 3)), "l = {l}");
        }
    }

    #[test]
    fn window_shift_recursion_on_h_columns() {
        for l in -4..=4 {
            let cur = build_mirror_map(l);
            let next = build_mirror_map(l + 1);
            let stepped = cur.columns[1].clone()
                * GwClass::gw_exp(1).scalar_mul(&EisensteinScalar::zeta());
            assert_eq!(next.columns[1], stepped, "l = {l}");
            let stepped2 = cur.columns[3].clone()
                * GwClass::gw_exp(1).scalar_mul(&EisensteinScalar::zeta_pow(2));
            assert_eq!(next.columns[3], stepped2, "l = {l}");
        }
    }

    #[test]
    fn apply_is_linear_and_kills_zero() {
        let map = build_mirror_map(2);
        assert_eq!(apply_mirror(&map, &FjrwClass::zero()), GwClass::zero());
        assert_eq!(apply_mirror(&map, &FjrwClass::basis(1)), map.columns[1]);
    }

    #[test]
    fn staircase_construction_agrees_with_closed_form() {
        for l in -10..=10 {
            assert_eq!(build_mirror_map_mirmatrix(l), build_mirror_map(l), "l = {l}");
        }
    }

    #[test]
    fn elem_identities_at_origin() {
        assert!(check_elem_identities(0, 0).pass());
    }

    #[test]
    fn corollary_closed_form_matches_applied_map() {
        for l in -4..=4 {
            let map = build_mirror_map(l);
            for q in -4..=4 {
                for m in 0..=1 {
                    assert_eq!(
                        apply_mirror(&map, &ch_kminus(q, m)),
                        mirror_image_ch_kminus_closed(l, q, m),
                        "l={l} q={q} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn main_theorem_smallest_case() {
        let mut engine = OrlovEngine::new(&Potential::fermat_split()).unwrap();
        let r = check_main_theorem(4, 0, 0, OrlovMethod::Ledger, &mut engine).unwrap();
        assert!(r.pass);
        // both sides equal -e^{3p}
        assert_eq!(r.rhs, -GwClass::gw_exp(3));
        let r_closed = check_main_theorem(4, 0, 0, OrlovMethod::Closed, &mut engine).unwrap();
        assert!(r_closed.pass);
    }

    #[test]
    fn main_theorem_m_parity_is_a_global_sign() {
        let mut engine = OrlovEngine::new(&Potential::fermat_split()).unwrap();
        let r0 = check_main_theorem(5, 1, 0, OrlovMethod::Ledger, &mut engine).unwrap();
        let r1 = check_main_theorem(5, 1, 1, OrlovMethod::Ledger, &mut engine).unwrap();
        assert!(r0.pass && r1.pass);
        assert_eq!(r0.lhs, -r1.lhs.clone());
        assert_eq!(r0.rhs, -r1.rhs.clone());
    }

    #[test]
    fn ledger_route_range_error() {
        let mut engine = OrlovEngine::new(&Potential::fermat_split()).unwrap();
        let err = check_main_theorem(4, 1, 0, OrlovMethod::Ledger, &mut engine);
        assert!(matches!(err, Err(WindowError::OutOfRange)));
    }
}

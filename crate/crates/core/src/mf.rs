//! Graded matrix factorizations as explicit matrices of bigraded
//! polynomials: validation of d^2 = W Id, the two Koszul builders, twists,
//! shifts, and cones.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::{BigradedPoly, Potential};

/// One line summand O(twist)[shift]; multiplicity is handled by repetition.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Summand {
    pub twist: i64,
    pub shift: i64,
}

impl Summand {
    pub fn new(twist: i64, shift: i64) -> Self {
        Summand { twist, shift }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({})[{}]", self.twist, self.shift)
    }
}

/// Sparse column-major matrix of polynomials. Entry (i, j) maps summand j
/// to summand i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    nrows: usize,
    cols: Vec<BTreeMap<usize, BigradedPoly>>,
}

impl PolyMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        PolyMatrix { nrows, cols: vec![BTreeMap::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, BigradedPoly::one());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn set(&mut self, i: usize, j: usize, p: BigradedPoly) {
        assert!(i < self.nrows && j < self.ncols());
        if p.is_zero() {
            self.cols[j].remove(&i);
        } else {
            self.cols[j].insert(i, p);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, p: BigradedPoly) {
        let cur = self.get(i, j).cloned().unwrap_or_default();
        self.set(i, j, cur + p);
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&BigradedPoly> {
        self.cols[j].get(&i)
    }

    pub fn col(&self, j: usize) -> impl Iterator<Item = (usize, &BigradedPoly)> {
        self.cols[j].iter().map(|(i, p)| (*i, p))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigradedPoly)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, p)| (*i, j, p)))
    }

    pub fn num_entries(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn neg(&self) -> Self {
        PolyMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|(i, p)| (*i, -p.clone())).collect())
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols()), (rhs.nrows, rhs.ncols()));
        let mut out = self.clone();
        for (i, j, p) in rhs.entries() {
            out.add_to(i, j, p.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// self * rhs.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols(), rhs.nrows, "dimension mismatch");
        let mut out = Self::new(self.nrows, rhs.ncols());
        for j in 0..rhs.ncols() {
            for (k, b) in rhs.col(j) {
                for (i, a) in self.col(k) {
                    out.add_to(i, j, a.mul_ref(b));
                }
            }
        }
        out
    }
}

/// Why a matrix factorization failed validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MfDiagnostic {
    /// Entry (row, col) is not bihomogeneous of the required biweight.
    BadWeight { row: usize, col: usize, expected: (i64, i64), found: Option<(i64, i64)> },
    /// (d^2)(row, col) differs from (W Id)(row, col).
    SquareFails { row: usize, col: usize },
    /// Matrix dimensions do not match the summand list.
    ShapeMismatch,
}

impl fmt::Display for MfDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MfDiagnostic::BadWeight { row, col, expected, found } => write!(
                f,
                "entry ({row},{col}): expected biweight {expected:?}, found {found:?}"
            ),
            MfDiagnostic::SquareFails { row, col } => {
                write!(f, "d^2 != W id at ({row},{col})")
            }
            MfDiagnostic::ShapeMismatch => f.write_str("matrix shape does not match summands"),
        }
    }
}

/// A graded matrix factorization of W = p_1 W_1 + p_2 W_2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixFactorization {
    pub summands: Vec<Summand>,
    pub differential: PolyMatrix,
    pub potential: Potential,
}

impl MatrixFactorization {
    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// Multiset of summands as (summand, multiplicity), ordered.
    pub fn summand_multiset(&self) -> BTreeMap<Summand, usize> {
        let mut m = BTreeMap::new();
        for s in &self.summands {
            *m.entry(*s).or_insert(0) += 1;
        }
        m
    }

    /// Weight bihomogeneity of every entry plus the exact identity
    /// d^2 = W Id. Returns all failures, empty means valid.
    pub fn validate(&self) -> Vec<MfDiagnostic> {
        let mut out = Vec::new();
        let n = self.rank();
        if self.differential.nrows() != n || self.differential.ncols() != n {
            out.push(MfDiagnostic::ShapeMismatch);
            return out;
        }
        for (i, j, p) in self.differential.entries() {
            let expected = (
                self.summands[i].twist - self.summands[j].twist,
                self.summands[i].shift - self.summands[j].shift + 1,
            );
            let found = p.biweight();
            if found != Some(expected) {
                out.push(MfDiagnostic::BadWeight { row: i, col: j, expected, found });
            }
        }
        let w = self.potential.total();
        let sq = self.differential.mul(&self.differential);
        for j in 0..n {
            let mut seen_diag = false;
            for (i, p) in sq.col(j) {
                if i == j {
                    seen_diag = true;
                    if *p != w {
                        out.push(MfDiagnostic::SquareFails { row: i, col: j });
                    }
                } else if !p.is_zero() {
                    out.push(MfDiagnostic::SquareFails { row: i, col: j });
                }
            }
            if !seen_diag && !w.is_zero() {
                out.push(MfDiagnostic::SquareFails { row: j, col: j });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// M(a)[b]: all summands twisted and shifted, differential unchanged.
    pub fn twist_shift(&self, a: i64, b: i64) -> Self {
        MatrixFactorization {
            summands: self
                .summands
                .iter()
                .map(|s| Summand::new(s.twist + a, s.shift + b))
                .collect(),
            differential: self.differential.clone(),
            potential: self.potential.clone(),
        }
    }

    /// The shift functor [1]: shifts by one and negates the differential.
    pub fn shift_one(&self) -> Self {
        MatrixFactorization {
            summands: self
                .summands
                .iter()
                .map(|s| Summand::new(s.twist, s.shift + 1))
                .collect(),
            differential: self.differential.neg(),
            potential: self.potential.clone(),
        }
    }
}

/// Subsets of {1..n} ordered by cardinality then lexicographically on the
/// bitmask; the exterior-algebra basis order used by both Koszul builders.
fn subsets_by_rank(n: u32) -> Vec<u32> {
    let mut subs: Vec<u32> = (0..(1u32 << n)).collect();
    subs.sort_by_key(|s| (s.count_ones(), *s));
    subs
}

fn insertion_sign(mask: u32, i: u32) -> i64 {
    // parity of |{ j in mask : j < i }|
    let below = mask & ((1 << i) - 1);
    if below.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn signed(p: &BigradedPoly, sign: i64) -> BigradedPoly {
    if sign >= 0 {
        p.clone()
    } else {
        -p.clone()
    }
}

/// Generic Koszul factorization on Lambda^*(n lines): wedge against the
/// `section` vector and contraction against the `cosection` vector, with
/// subset-position signs. The summand for a subset S is
/// O(base.twist * |S|)[base.shift * |S|] shaped by `line`.
fn build_koszul(
    n: u32,
    line: impl Fn(u32) -> Summand,
    section: &[BigradedPoly],
    cosection: &[BigradedPoly],
    potential: &Potential,
) -> MatrixFactorization {
    let subs = subsets_by_rank(n);
    let index: BTreeMap<u32, usize> = subs.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    let summands: Vec<Summand> = subs.iter().map(|s| line(s.count_ones())).collect();
    let mut d = PolyMatrix::new(subs.len(), subs.len());
    for (col, &mask) in subs.iter().enumerate() {
        for i in 0..n {
            let bit = 1u32 << i;
            let sign = insertion_sign(mask, i);
            if mask & bit == 0 {
                // wedge: S -> S u {i}
                let row = index[&(mask | bit)];
                d.add_to(row, col, signed(&section[i as usize], sign));
            } else {
                // contraction: S -> S \ {i}
                let row = index[&(mask & !bit)];
                d.add_to(row, col, signed(&cosection[i as usize], sign));
            }
        }
    }
    MatrixFactorization { summands, differential: d, potential: potential.clone() }
}

/// The 64-summand Koszul factorization on Lambda^*(O(1)[-1]^6):
/// d = s_x wedge + s_pf contract, with s_x = (x_1..x_6) and
/// s_pf = (p_1 f_{1i} + p_2 f_{2i})_i.
pub fn build_koszul_minus(potential: &Potential) -> Result<MatrixFactorization, crate::poly::PotentialError> {
    potential.validate()?;
    let section: Vec<BigradedPoly> = (1..=6).map(BigradedPoly::x).collect();
    let cosection = potential.pf_entries();
    Ok(build_koszul(
        6,
        |j| Summand::new(j as i64, -(j as i64)),
        &section,
        &cosection,
        potential,
    ))
}

/// The 4-summand Koszul factorization on Lambda^*(O(-3)[1]^2):
/// d = s_p wedge + s_W contract.
pub fn build_koszul_plus(potential: &Potential) -> Result<MatrixFactorization, crate::poly::PotentialError> {
    potential.validate()?;
    let section = vec![BigradedPoly::p(1), BigradedPoly::p(2)];
    let cosection = vec![potential.w[0].clone(), potential.w[1].clone()];
    Ok(build_koszul(
        2,
        |j| Summand::new(-3 * (j as i64), j as i64),
        &section,
        &cosection,
        potential,
    ))
}

/// Why a morphism failed validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismError {
    ShapeMismatch,
    BadWeight { row: usize, col: usize },
    DoesNotIntertwine(String),
}

impl fmt::Display for MorphismError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismError::ShapeMismatch => f.write_str("morphism shape mismatch"),
            MorphismError::BadWeight { row, col } => {
                write!(f, "morphism entry ({row},{col}) has wrong biweight")
            }
            MorphismError::DoesNotIntertwine(s) => write!(f, "does not intertwine: {s}"),
        }
    }
}

/// Checks that `matrix` is bihomogeneous for a map source -> target of
/// C*_R-degree `r_degree` (0 for morphisms, -1 for homotopies).
pub fn check_matrix_weights(
    source: &[Summand],
    target: &[Summand],
    matrix: &PolyMatrix,
    r_degree: i64,
) -> Result<(), MorphismError> {
    if matrix.nrows() != target.len() || matrix.ncols() != source.len() {
        return Err(MorphismError::ShapeMismatch);
    }
    for (i, j, p) in matrix.entries() {
        let expected = (
            target[i].twist - source[j].twist,
            target[i].shift - source[j].shift + r_degree,
        );
        if p.biweight() != Some(expected) {
            return Err(MorphismError::BadWeight { row: i, col: j });
        }
    }
    Ok(())
}

/// A degree-0 map of graded matrix factorizations.
#[derive(Clone, Debug)]
pub struct MfMorphism {
    pub source: MatrixFactorization,
    pub target: MatrixFactorization,
    pub matrix: PolyMatrix,
}

impl MfMorphism {
    /// Weight bihomogeneity plus the intertwining identity
    /// d_target f = f d_source.
    pub fn validate(&self) -> Result<(), MorphismError> {
        check_matrix_weights(&self.source.summands, &self.target.summands, &self.matrix, 0)?;
        let lhs = self.target.differential.mul(&self.matrix);
        let rhs = self.matrix.mul(&self.source.differential);
        if lhs != rhs {
            return Err(MorphismError::DoesNotIntertwine(format!(
                "{} offending entries",
                lhs.sub(&rhs).num_entries()
            )));
        }
        Ok(())
    }
}

/// cone(f: E1 -> E2) = (E1[1] + E2, [[d1[1], 0], [f, d2]]).
pub fn cone(f: &MfMorphism) -> Result<MatrixFactorization, MorphismError> {
    f.validate()?;
    let n1 = f.source.rank();
    let n2 = f.target.rank();
    let mut summands = Vec::with_capacity(n1 + n2);
    for s in &f.source.summands {
        summands.push(Summand::new(s.twist, s.shift + 1));
    }
    summands.extend(f.target.summands.iter().copied());
    let mut d = PolyMatrix::new(n1 + n2, n1 + n2);
    for (i, j, p) in f.source.differential.entries() {
        d.set(i, j, -p.clone());
    }
    for (i, j, p) in f.matrix.entries() {
        d.set(n1 + i, j, p.clone());
    }
    for (i, j, p) in f.target.differential.entries() {
        d.set(n1 + i, n1 + j, p.clone());
    }
    Ok(MatrixFactorization {
        summands,
        differential: d,
        potential: f.source.potential.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat() -> Potential {
        Potential::fermat_split()
    }

    #[test]
    fn koszul_minus_shape_and_validity() {
        let k = build_koszul_minus(&fermat()).unwrap();
        assert_eq!(k.rank(), 64);
        let multiset = k.summand_multiset();
        let expected = [1usize, 6, 15, 20, 15, 6, 1];
        for (j, &mult) in expected.iter().enumerate() {
            assert_eq!(multiset[&Summand::new(j as i64, -(j as i64))], mult);
        }
        assert!(k.validate().is_empty());
    }

    #[test]
    fn koszul_plus_shape_and_validity() {
        let k = build_koszul_plus(&fermat()).unwrap();
        assert_eq!(k.rank(), 4);
        let m = k.summand_multiset();
        assert_eq!(m[&Summand::new(0, 0)], 1);
        assert_eq!(m[&Summand::new(-3, 1)], 2);
        assert_eq!(m[&Summand::new(-6, 2)], 1);
        assert!(k.validate().is_empty());
        let shifted = k.twist_shift(6, -2);
        let m = shifted.summand_multiset();
        assert_eq!(m[&Summand::new(6, -2)], 1);
        assert_eq!(m[&Summand::new(3, -1)], 2);
        assert_eq!(m[&Summand::new(0, 0)], 1);
    }

    #[test]
    fn zero_differential_reports_all_diagonal_failures() {
        let mut k = build_koszul_plus(&fermat()).unwrap();
        k.differential = PolyMatrix::new(4, 4);
        let diags = k.validate();
        assert_eq!(diags.len(), 4);
        assert!(diags
            .iter()
            .all(|d| matches!(d, MfDiagnostic::SquareFails { row, col } if row == col)));
    }

    #[test]
    fn tampered_entry_is_pinpointed() {
        let mut k = build_koszul_plus(&fermat()).unwrap();
        k.differential.set(0, 1, BigradedPoly::x(1));
        let diags = k.validate();
        assert!(!diags.is_empty());
        assert!(diags
            .iter()
            .any(|d| matches!(d, MfDiagnostic::BadWeight { row: 0, col: 1, .. })));
    }

    #[test]
    fn twist_shift_composes_and_preserves_validity() {
        let k = build_koszul_minus(&fermat()).unwrap();
        assert_eq!(k.twist_shift(0, 0), k);
        let a = k.twist_shift(2, -1).twist_shift(-5, 3);
        let b = k.twist_shift(-3, 2);
        assert_eq!(a, b);
        for q in [-6, -1, 0, 4, 6] {
            for m in [-3, 0, 3] {
                assert!(k.twist_shift(q, m).validate().is_empty());
            }
        }
    }

    #[test]
    fn shift_one_squares_to_plain_shift() {
        let k = build_koszul_plus(&fermat()).unwrap();
        let twice = k.shift_one().shift_one();
        assert_eq!(twice, k.twist_shift(0, 2));
        assert!(k.shift_one().validate().is_empty());
    }

    #[test]
    fn cone_of_zero_from_zero_object_is_identity() {
        let k = build_koszul_plus(&fermat()).unwrap();
        let zero_obj = MatrixFactorization {
            summands: Vec::new(),
            differential: PolyMatrix::new(0, 0),
            potential: fermat(),
        };
        let f = MfMorphism {
            source: zero_obj,
            target: k.clone(),
            matrix: PolyMatrix::new(4, 0),
        };
        let c = cone(&f).unwrap();
        assert_eq!(c, k);
    }

    #[test]
    fn cone_of_identity_validates_with_doubled_rank() {
        let k = build_koszul_plus(&fermat()).unwrap();
        let f = MfMorphism {
            source: k.clone(),
            target: k.clone(),
            matrix: PolyMatrix::identity(4),
        };
        // the identity does not intertwine with degree conventions unless
        // checked: d f = f d holds trivially here
        let c = cone(&f).unwrap();
        assert_eq!(c.rank(), 8);
        assert!(c.validate().is_empty());
    }

    #[test]
    fn non_intertwining_morphism_is_rejected() {
        let k = build_koszul_plus(&fermat()).unwrap();
        let mut m = PolyMatrix::new(4, 4);
        // O(0)[0] -> O(-3)[1] of biweight (-3, 1): p_1 has biweight (-3, 2),
        // so use a weight-correct but non-intertwining entry instead:
        // nothing of biweight (-3,1) exists among generators, so check the
        // weight failure path too.
        m.set(1, 0, BigradedPoly::p(1));
        let f = MfMorphism { source: k.clone(), target: k.clone(), matrix: m };
        assert!(f.validate().is_err());
    }
}

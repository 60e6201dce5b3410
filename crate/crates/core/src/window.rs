//! The window algorithm: push every summand twist into [t, t+5] by
//! replacing below-window blocks, recording each step in a ledger, and the
//! two independent Chern-character routes for the twisted shifted Koszul
//! images.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::eisenstein::EisensteinScalar;
use crate::gw::GwClass;
use crate::mf::{build_koszul_minus, MatrixFactorization, Summand};
use crate::poly::Potential;
use crate::rational::{binomial, rat, Rational};
use crate::replace::{replace_summand, NotReplaceable};

/// One replacement performed by the window algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub step: usize,
    /// twist of the replaced block
    pub twist: i64,
    /// shift of the replaced block
    pub shift: i64,
    pub multiplicity: usize,
}

impl fmt::Display for LedgerEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step {}: O({})[{}]^{} -> O({})[{}]^{} + O({})[{}]^{}",
            self.step,
            self.twist,
            self.shift,
            self.multiplicity,
            self.twist + 3,
            self.shift - 2,
            2 * self.multiplicity,
            self.twist + 6,
            self.shift - 3,
            self.multiplicity,
        )
    }
}

/// Window-push failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowError {
    /// A summand sits above the window; only upward replacement is
    /// implemented.
    AboveWindow(Summand),
    /// A below-window block failed the replaceability conditions.
    Blocked(Summand, NotReplaceable),
    /// The replaced object stopped satisfying d^2 = W id.
    InvalidObject,
    /// The requested window needs t - q >= 1.
    OutOfRange,
}

impl fmt::Display for WindowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowError::AboveWindow(s) => write!(f, "summand {s} above window"),
            WindowError::Blocked(s, r) => write!(f, "block {s} not replaceable: {r}"),
            WindowError::InvalidObject => f.write_str("object failed validation"),
            WindowError::OutOfRange => f.write_str("ledger route needs t - q >= 1"),
        }
    }
}

/// Replays the ledger on a summand multiset; each entry removes
/// O(t)[n]^m and adds O(t+3)[n-2]^{2m} + O(t+6)[n-3]^m.
pub fn replay_ledger(
    start: &BTreeMap<Summand, usize>,
    ledger: &[LedgerEntry],
) -> Option<BTreeMap<Summand, usize>> {
    let mut state = start.clone();
    for e in ledger {
        let k = Summand::new(e.twist, e.shift);
        let have = state.remove(&k)?;
        if have != e.multiplicity {
            return None;
        }
        *state.entry(Summand::new(e.twist + 3, e.shift - 2)).or_insert(0) +=
            2 * e.multiplicity;
        *state.entry(Summand::new(e.twist + 6, e.shift - 3)).or_insert(0) += e.multiplicity;
    }
    Some(state)
}

/// Pushes every summand of `m` into the window [t, t+5], processing twist
/// levels upward and, within a level, blocks by strictly decreasing shift.
pub fn window_push(
    m: &MatrixFactorization,
    t: i64,
    validate_each_step: bool,
) -> Result<(MatrixFactorization, Vec<LedgerEntry>), WindowError> {
    let mut cur = m.clone();
    let mut ledger = Vec::new();
    let mut step = 0usize;
    if let Some(s) = cur.summands.iter().find(|s| s.twist > t + 5) {
        return Err(WindowError::AboveWindow(*s));
    }
    loop {
        let below: Vec<Summand> = cur
            .summands
            .iter()
            .copied()
            .filter(|s| s.twist < t)
            .collect();
        if below.is_empty() {
            break;
        }
        let level = below.iter().map(|s| s.twist).min().expect("nonempty");
        // blocks at this twist level, highest shift first
        let mut shifts: Vec<i64> = below
            .iter()
            .filter(|s| s.twist == level)
            .map(|s| s.shift)
            .collect();
        shifts.sort_unstable();
        shifts.dedup();
        shifts.reverse();
        for shift in shifts {
            let block: Vec<usize> = cur
                .summands
                .iter()
                .enumerate()
                .filter(|(_, s)| s.twist == level && s.shift == shift)
                .map(|(i, _)| i)
                .collect();
            let mult = block.len();
            cur = replace_summand(&cur, &block)
                .map_err(|e| WindowError::Blocked(Summand::new(level, shift), e))?;
            if validate_each_step && !cur.is_valid() {
                return Err(WindowError::InvalidObject);
            }
            ledger.push(LedgerEntry { step, twist: level, shift, multiplicity: mult });
            step += 1;
        }
    }
    if !validate_each_step && !cur.is_valid() {
        return Err(WindowError::InvalidObject);
    }
    Ok((cur, ledger))
}

/// Incremental window walker for the Koszul object: caches the chain of
/// substitutions so a grid of evaluations shares one run.
pub struct OrlovEngine {
    current: MatrixFactorization,
    /// highest window index already reached
    window: i64,
    ledger: Vec<LedgerEntry>,
    validate_each_step: bool,
}

impl OrlovEngine {
    pub fn new(potential: &Potential) -> Result<Self, WindowError> {
        let k = build_koszul_minus(potential).map_err(|_| WindowError::InvalidObject)?;
        if !k.is_valid() {
            return Err(WindowError::InvalidObject);
        }
        Ok(OrlovEngine { current: k, window: 0, ledger: Vec::new(), validate_each_step: true })
    }

    /// Validates only at the end of each window push instead of after
    /// every block substitution.
    pub fn without_step_validation(potential: &Potential) -> Result<Self, WindowError> {
        let mut e = Self::new(potential)?;
        e.validate_each_step = false;
        Ok(e)
    }

    pub fn ledger(&self) -> &[LedgerEntry] {
        &self.ledger
    }

    pub fn current(&self) -> &MatrixFactorization {
        &self.current
    }

    /// Ensures the object has been pushed through window `t`.
    pub fn advance_to(&mut self, t: i64) -> Result<(), WindowError> {
        while self.window < t {
            let target = self.window + 1;
            let step0 = self.ledger.len();
            let (next, new_entries) =
                window_push(&self.current, target, self.validate_each_step)?;
            for (k, e) in new_entries.into_iter().enumerate() {
                self.ledger.push(LedgerEntry { step: step0 + k, ..e });
            }
            self.current = next;
            self.window = target;
        }
        Ok(())
    }

    /// Chern character of the window-t image of the plain Koszul object,
    /// accumulated from the ledger: base -e^{6p} for t = 1, plus
    /// (-1)^{n-1} m e^{(w+6)p} for each block O(w)[n]^m replaced at level
    /// w in 1..t.
    pub fn chern_of_window(&mut self, t: i64) -> Result<GwClass, WindowError> {
        if t < 1 {
            return Err(WindowError::OutOfRange);
        }
        self.advance_to(t)?;
        let mut acc = -GwClass::gw_exp(6);
        for e in &self.ledger {
            if e.twist >= 1 && e.twist < t {
                let sign = if (e.shift - 1).rem_euclid(2) == 0 { 1 } else { -1 };
                let coeff = EisensteinScalar::from_int(sign * e.multiplicity as i64);
                acc = acc + GwClass::gw_exp(e.twist + 6).scalar_mul(&coeff);
            }
        }
        Ok(acc)
    }

    /// ch of the window-t image of the Koszul object twisted by q and
    /// shifted by m, through the twist identity (reduce to window t - q,
    /// multiply by (-1)^m e^{qp}). Needs t - q >= 1.
    pub fn orlov_chern_ledger(&mut self, t: i64, q: i64, m: i64) -> Result<GwClass, WindowError> {
        if t - q < 1 {
            return Err(WindowError::OutOfRange);
        }
        let base = self.chern_of_window(t - q)?;
        let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
        Ok((base * GwClass::gw_exp(q)).scalar_mul(&EisensteinScalar::from_int(sign)))
    }
}

/// Closed-form ch of the window-t image of the twisted shifted Koszul
/// object:
/// (-1)^m sum_{t-3 <= s <= t+2, s = q mod 3} ((s-q)/3)
///        sum_{k=0}^{t-s+2} (-1)^{k+1} C(6,k) e^{(k+s+3)p}.
pub fn orlov_chern_closed(t: i64, q: i64, m: i64) -> GwClass {
    let sign: Rational = if m.rem_euclid(2) == 0 { rat(1, 1) } else { rat(-1, 1) };
    let mut acc = GwClass::zero();
    for s in (t - 3)..=(t + 2) {
        if (s - q).rem_euclid(3) != 0 {
            continue;
        }
        let outer = rat(s - q, 3);
        let kmax = t - s + 2;
        for k in 0..=kmax.min(6) {
            let c = binomial(6, k);
            let signed = if (k + 1).rem_euclid(2) == 0 { c } else { -c };
            acc = acc + GwClass::gw_exp(k + s + 3).rational_mul(&(&outer * signed));
        }
    }
    acc.rational_mul(&sign)
}

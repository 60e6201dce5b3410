//! Exact verification engine for the window correspondence of the bicubic
//! Calabi--Yau threefold in P^5.
//!
//! Everything in this crate is computed over the field Q(zeta_3) with
//! arbitrary-precision rationals; there is no floating point on any code
//! path. The crate is `no_std` (alloc only). The numeric side (contour
//! integration, series evaluation) lives in the companion `lgcy33-cli`
//! crate.
//!
//! Module map:
//! - [`rational`]: arbitrary-precision rationals and small combinatorial helpers
//! - [`eisenstein`]: the field Q(zeta_3) in the (1, zeta) basis
//! - [`series`]: truncated series over a scalar ring (nilpotent generator)
//! - [`gw`]: the ambient ring Q(zeta_3)[p]/(p^4) and its gradings
//! - [`fjrw`]: the two-sector narrow state space and its Chern characters
//! - [`mirror`]: the window linear maps, expansion identities, and the
//!   commuting-square checker
//! - [`poly`]: bigraded sparse polynomials in x_1..x_6, p_1, p_2
//! - [`mf`]: graded matrix factorizations, Koszul builders, twists and cones
//! - [`replace`]: replaceable summands, their substitution, and homotopy
//!   witnesses
//! - [`window`]: the window-pushing algorithm and both twisted-shift
//!   Chern-character routes

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod eisenstein;
pub mod fjrw;
pub mod gw;
pub mod mf;
pub mod mirror;
pub mod poly;
pub mod rational;
pub mod replace;
pub mod series;
pub mod window;

pub use eisenstein::EisensteinScalar;
pub use fjrw::FjrwClass;
pub use gw::GwClass;
pub use mf::{MatrixFactorization, MfMorphism, Summand};
pub use mirror::MirrorMap;
pub use poly::{BigradedPoly, Potential};
pub use rational::Rational;
pub use series::TruncatedSeries;
pub use window::{LedgerEntry, OrlovEngine};

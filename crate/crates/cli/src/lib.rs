//! Numeric companion and command-line front end for the exact engine.
//!
//! The exact side ([`lgcy33_core`]) never touches floating point; this
//! crate carries everything that does: complex gamma and polygamma
//! functions, dual-number evaluation of the hypergeometric series on both
//! sides of the correspondence, Mellin--Barnes contour integration through
//! the windows, and the JSON file formats spoken by the binary.

pub mod analytic;
pub mod json;
pub mod runs;

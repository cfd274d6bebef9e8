//! Symbolic engine for the differential subfield generated over the constants
//! by a rational expression in iterated logarithms, generic antiderivatives,
//! or exponentials of integrals.
//!
//! The crate is organized as follows:
//!
//! - [`constfield`]: exact arithmetic in the constant field Q(i)(atoms)
//! - [`mpoly`]: sparse multivariate polynomials, GCD, fractions
//! - [`symbol`], [`poly`]: tower symbols and the working polynomial ring
//! - [`iterlog`]: iterated-logarithm combinatorics (projections, closure,
//!   levelled partition, pi-base, towers)
//! - [`subfield`]: the structure algorithms producing generator presentations
//! - [`certify`]: independent checkers (J-I-E conditions, nonintegrability,
//!   the substitution oracle)
//! - [`verify`]: probe-grid soundness verification (data-parallel)
//! - [`parse`], [`frontend`]: expression grammar, tower declarations, CLI
//!   command implementations and JSON serialization

pub mod certify;
pub mod constfield;
pub mod error;
pub mod frontend;
pub mod gauss;
pub mod iterlog;
pub mod linalg;
pub mod mpoly;
pub mod parse;
pub mod poly;
pub mod subfield;
pub mod symbol;
pub mod verify;

pub use error::{Error, Result};

//! Exact enumeration of lozenge tilings of cored hexagons.
//!
//! The crate offers three independent routes to the same numbers:
//! a brute-force tiling enumerator ([`tilings`]), determinants of
//! lattice-path matrices ([`lgv`]), and closed-form product formulas
//! ([`formulas`]). The [`verify`] module wires them against each other.

pub mod error;
pub mod exactnum;
pub mod formulas;
pub mod hypergeom;
pub mod lgv;
pub mod tilings;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::{CycloElement, CycloRing, ExactValue, Rational, SqrtPiScaled};

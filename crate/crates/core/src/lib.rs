//! The advantage-standard model of collective choice.
//!
//! Profiles of weak orders are aggregated by collective choice rules into
//! social relations. A rule is advantage-standard rationalizable when its
//! strict social preference of `x` over `y` holds exactly when an advantage
//! computed from the voters' views on `{x, y}` alone exceeds a standard
//! computed from everything else in the profile. The crate provides the
//! rules, an exhaustive axiom checker, and a constructive rationalization
//! engine.

pub mod asmodel;
pub mod axioms;
pub mod ccr;
pub mod choice;
pub mod error;
pub mod figures;
pub mod margins;
pub mod profiles;
pub mod relations;

pub use error::{Error, Result};

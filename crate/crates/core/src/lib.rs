//! Moment polytopes of Borel-invariant subvarieties.
//!
//! The crate combines an exact rational kernel (root systems, Weyl groups,
//! polytopes, invariant sections) with floating-point moment-map sampling on
//! symmetric powers of the standard representation of `SU(n)`.

pub mod error;
pub mod lie;
pub mod linalg;
pub mod polytope;
pub mod rational;
pub mod reps;
pub mod sections;
pub mod theorems;

pub use error::{Error, Result};
pub use lie::{RootSystem, Weight, WeylElement};
pub use polytope::Polytope;
pub use rational::{GaussRational, QVec, Rational};
pub use reps::{ProjPoint, Rep};
pub use sections::Section;
pub use theorems::VerificationReport;

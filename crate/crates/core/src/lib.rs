//! Exact construction and certification of small-height rational points:
//! heights of vectors and subspaces, Siegel-type bases, and zeros of
//! polynomials that are linear in a designated set of variables.

pub mod certificate;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod factor;
pub mod heights;
pub mod lattice;
pub mod linalg;
pub mod polynomial;
pub mod selftest;
pub mod siegel;
pub mod solvers;

pub use certificate::{BoundFormula, Certificate, Check, Claim, Verdict, Witness};
pub use enumerate::SearchOptions;
pub use error::{Error, Result};
pub use exact::{exact_compare, ExactReal, Rational};
pub use heights::{FieldContext, HeightKind, HeightValue, VectorQ};
pub use linalg::{MatrixQ, Subspace};
pub use polynomial::MultiPoly;

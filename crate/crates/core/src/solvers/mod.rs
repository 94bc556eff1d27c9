//! Constructive zeros of polynomial systems, each returned with a
//! certificate against the corresponding closed-form height bound.

pub mod bounds;
mod multilinear;
mod single;
mod system;

pub use multilinear::{linear_form_zero_on_subspace, multilinear_zero, multilinear_zero_on_subspace};
pub use single::{solve_on_line, solve_single_avoiding};
pub use system::{solve_system, SystemProblem};

//! Problem files, dispatch to the solvers, and JSON certificates.

pub mod corpus;
pub mod json;
pub mod problem;
pub mod run;

pub use problem::{parse_problem, Directive, ParseError, ProblemFile, SubspaceKind, Task};
pub use run::{solve_text, Outcome, RunOptions};

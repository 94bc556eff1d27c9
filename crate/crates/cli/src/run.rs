//! Problem text in, JSON and exit code out. No I/O happens here, so the
//! binary and the tests share one code path.

use heightforge::heights::{euclidean_squared, height_projective, projective_rational};
use heightforge::linalg::kernel_of_rows;
use heightforge::siegel::{small_basis, sparse_basis};
use heightforge::solvers::{
    linear_form_zero_on_subspace, multilinear_zero, multilinear_zero_on_subspace, solve_on_line,
    solve_single_avoiding, solve_system, SystemProblem,
};
use heightforge::{
    Certificate, Claim, Error, FieldContext, MultiPoly, SearchOptions, Subspace, VectorQ, Verdict, Witness,
};
use num_traits::One;

use crate::json;
use crate::problem::{parse_problem, ParseError, ProblemFile, SubspaceKind, Task};

pub const EXIT_SATISFIED: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATED: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub json_indent: usize,
    pub max_shell: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { json_indent: 2, max_shell: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses and solves one problem. `label` prefixes diagnostics.
pub fn solve_text(text: &str, label: &str, opts: &RunOptions) -> Outcome {
    let problem = match parse_problem(text).and_then(|p| validate(&p).map(|_| p)) {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("{label}:{}:{}: error: {}\n", e.line, e.column, e.message),
                code: EXIT_USAGE,
            }
        }
    };
    let task = problem.task().name();
    let search = SearchOptions { max_shell: opts.max_shell };
    match dispatch(&problem, &search) {
        Ok(cert) => Outcome {
            stdout: json::render(&json::certificate(task, &cert), opts.json_indent),
            stderr: String::new(),
            code: if cert.verdict == Verdict::Satisfied { EXIT_SATISFIED } else { EXIT_VIOLATED },
        },
        Err(e) => Outcome {
            stdout: json::render(&json::error(task, &e), opts.json_indent),
            stderr: String::new(),
            code: EXIT_SOLVER,
        },
    }
}

/// Which directives each task needs, and how many polynomials.
fn validate(p: &ProblemFile) -> Result<(), ParseError> {
    let task = p.task();
    let missing = |what: &str| ParseError {
        line: p.task_line(),
        column: 1,
        message: format!("task {} requires {what}", task.name()),
    };
    if task == Task::Height {
        return p.vector().map(|_| ()).ok_or_else(|| missing("a vector directive"));
    }
    p.vars().ok_or_else(|| missing("a vars directive"))?;
    let polys = p.polys().len();
    let (min, max) = match task {
        Task::SolveSystem => (1, usize::MAX),
        Task::SparseBasis | Task::SmallBasis => (0, 0),
        _ => (1, 1),
    };
    if polys < min || polys > max {
        let what = match (min, max) {
            (0, 0) => "no poly directives".to_string(),
            (1, 1) => "exactly one poly directive".to_string(),
            _ => "at least one poly directive".to_string(),
        };
        return Err(missing(&what));
    }
    match task {
        Task::SolveSystem if p.index_set().is_none() => Err(missing("an index-set directive")),
        Task::SolveSingle if p.linear_var().is_none() => Err(missing("a linear-var directive")),
        Task::SolveLine | Task::MlSubspace | Task::LinearSubspace | Task::SparseBasis | Task::SmallBasis
            if p.subspace().is_none() =>
        {
            Err(missing("a subspace directive"))
        }
        _ => Ok(()),
    }
}

fn subspace(p: &ProblemFile) -> Result<Subspace, Error> {
    let n = p.vars().expect("validated");
    let (kind, rows) = p.subspace().expect("validated");
    match kind {
        SubspaceKind::Rows => Subspace::span(n, rows),
        SubspaceKind::Kernel => Ok(kernel_of_rows(rows, n)),
    }
}

fn first_poly(p: &ProblemFile) -> &MultiPoly {
    p.polys()[0].1
}

fn avoidance(p: &ProblemFile) -> MultiPoly {
    p.avoid().cloned().unwrap_or_else(|| MultiPoly::one(p.vars().expect("validated")))
}

fn dispatch(p: &ProblemFile, opts: &SearchOptions) -> Result<Certificate, Error> {
    let q = FieldContext::rationals();
    match p.task() {
        Task::SolveSystem => {
            let polys = p.polys().into_iter().map(|(_, f)| f.clone()).collect();
            let idx = p.index_set().expect("validated").iter().map(|i| i - 1).collect();
            solve_system(&SystemProblem::new(polys, idx), opts)
        }
        Task::SolveSingle => {
            solve_single_avoiding(first_poly(p), p.linear_var().expect("validated") - 1, &avoidance(p), opts)
        }
        Task::SolveLine => solve_on_line(first_poly(p), &avoidance(p), &subspace(p)?, &q, opts),
        Task::MlZero => multilinear_zero(first_poly(p)),
        Task::MlSubspace => multilinear_zero_on_subspace(first_poly(p), &subspace(p)?, p.avoid(), &q, opts),
        Task::LinearSubspace => linear_form_zero_on_subspace(first_poly(p), &subspace(p)?, p.avoid(), &q, opts),
        Task::SparseBasis => sparse_basis(&subspace(p)?, &q, opts).map(|(_, c)| c),
        Task::SmallBasis => small_basis(&subspace(p)?, &q, opts).map(|(_, c)| c),
        Task::Height => height_certificate(p.vector().expect("validated")),
    }
}

/// `H(v)` as the headline, with `𝓗` and `h` alongside and the comparison
/// `H² ≤ 𝓗² ≤ n H²`, `1 ≤ H` checked exactly.
fn height_certificate(v: &VectorQ) -> Result<Certificate, Error> {
    let h = height_projective(v)?;
    let hr = projective_rational(v)?;
    let hcal_sq = euclidean_squared(v)?;
    let inhom = heightforge::heights::inhomogeneous_rational(v);
    let n = v.dim();
    let h_sq = &hr * &hr;
    let c = Certificate::new(Claim::Height, Witness::Vector(v.clone()))
        .step(format!("H = {hr}"))
        .step(format!("Hcal^2 = {hcal_sq}"))
        .step(format!("h = {inhom}"))
        .fact("H >= 1", hr >= num_traits::one())
        .fact("H^2 <= Hcal^2", h_sq <= hcal_sq)
        .fact("Hcal^2 <= n H^2", hcal_sq <= h_sq * heightforge::Rational::from_integer(n.into()))
        .fact("h >= 1", inhom >= heightforge::Rational::one());
    Ok(Certificate { witness_height: Some(h), ..c })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Outcome {
        solve_text(text, "t.prob", &RunOptions::default())
    }

    #[test]
    fn worked_system_end_to_end() {
        let o = run("task solve-system\nvars 2\npoly F1 = x1*x2 - 1\nindex-set {1}\n");
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert!(o.stdout.contains("\"witness\": [\n    \"-1\",\n    \"-1\"\n  ]"), "{}", o.stdout);
        assert!(o.stdout.contains("\"expression\": \"1 * 2^{5} * 4\""));
        assert!(o.stdout.contains("\"approx\": \"128.000000000000\""));
    }

    #[test]
    fn parse_errors_exit_one_with_position() {
        let o = run("task solve-system\nvars 2\npoly F1 = x1 +* x2\n");
        assert_eq!(o.code, 1);
        assert!(o.stdout.is_empty());
        assert!(o.stderr.starts_with("t.prob:3:"), "{}", o.stderr);
    }

    #[test]
    fn missing_directive_is_a_usage_error() {
        let o = run("task solve-single\nvars 2\npoly F = x1*x2 - 1\n");
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("requires a linear-var directive"), "{}", o.stderr);
        let o = run("task sparse-basis\nvars 2\n");
        assert!(o.stderr.contains("requires a subspace directive"), "{}", o.stderr);
    }

    #[test]
    fn solver_errors_exit_three_with_json() {
        let o = run("task ml-zero\nvars 2\npoly F = x1^2\n");
        assert_eq!(o.code, 3);
        assert!(o.stdout.contains("\"code\": \"NOT_MULTILINEAR\""), "{}", o.stdout);
    }

    #[test]
    fn height_of_unit_vector() {
        let o = solve_text("task height\nvector 0 1\n", "t", &RunOptions { json_indent: 0, max_shell: None });
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("\"heights\":{\"kind\":\"H\",\"exact\":\"1\""), "{}", o.stdout);
    }

    #[test]
    fn max_shell_guard_reports_exhaustion() {
        // (-1,-1) sits in shell 1; a radius of 0 cannot reach it
        let o = solve_text(
            "task solve-system\nvars 2\npoly F1 = x1*x2 - 1\nindex-set {1}\n",
            "t",
            &RunOptions { json_indent: 2, max_shell: Some(0) },
        );
        assert_eq!(o.code, 3);
        assert!(o.stdout.contains("SEARCH_EXHAUSTED"), "{}", o.stdout);
    }
}

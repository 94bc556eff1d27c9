//! Problem files: a line-oriented list of directives.
//!
//! ```text
//! task solve-system        # one of the Task names
//! vars 2
//! poly F1 = x1*x2 - 1
//! index-set {1}
//! linear-var 1
//! avoid x1 - 1
//! subspace rows 2          # generators of V; `subspace kernel r` gives V = {x : Bx = 0}
//! 1 0 1
//! 0 1 1
//! vector 3 4
//! ```
//!
//! `#` starts a comment. Variable indices are 1-based, as written.

use std::fmt;

use heightforge::exact::{format_rational, parse_rational};
use heightforge::polynomial::{parse_poly, MultiPoly};
use heightforge::VectorQ;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    SolveSystem,
    SolveSingle,
    SolveLine,
    MlZero,
    MlSubspace,
    LinearSubspace,
    SparseBasis,
    SmallBasis,
    Height,
}

impl Task {
    pub const ALL: [Task; 9] = [
        Task::SolveSystem,
        Task::SolveSingle,
        Task::SolveLine,
        Task::MlZero,
        Task::MlSubspace,
        Task::LinearSubspace,
        Task::SparseBasis,
        Task::SmallBasis,
        Task::Height,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::SolveSystem => "solve-system",
            Task::SolveSingle => "solve-single",
            Task::SolveLine => "solve-line",
            Task::MlZero => "ml-zero",
            Task::MlSubspace => "ml-subspace",
            Task::LinearSubspace => "linear-subspace",
            Task::SparseBasis => "sparse-basis",
            Task::SmallBasis => "small-basis",
            Task::Height => "height",
        }
    }

    fn from_name(s: &str) -> Option<Task> {
        Task::ALL.into_iter().find(|t| t.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceKind {
    /// Rows span `V`.
    Rows,
    /// `V` is the kernel of the rows.
    Kernel,
}

impl SubspaceKind {
    fn keyword(self) -> &'static str {
        match self {
            SubspaceKind::Rows => "rows",
            SubspaceKind::Kernel => "kernel",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    Task(Task),
    Vars(usize),
    Poly { name: String, poly: MultiPoly },
    /// 1-based, in the order written.
    IndexSet(Vec<usize>),
    /// 1-based.
    LinearVar(usize),
    Avoid(MultiPoly),
    Subspace { kind: SubspaceKind, rows: Vec<VectorQ> },
    Vector(VectorQ),
}

/// Parsed directives plus the line each came from (not part of equality).
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub directives: Vec<Directive>,
    pub lines: Vec<usize>,
}

impl PartialEq for ProblemFile {
    fn eq(&self, other: &Self) -> bool {
        self.directives == other.directives
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// A whitespace-separated token with its 1-based character column.
#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

fn char_column(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

struct Parser<'a> {
    lines: Vec<&'a str>,
    next: usize,
    vars: Option<usize>,
    task_seen: bool,
    names: Vec<String>,
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut p = Parser { lines: text.lines().collect(), next: 0, vars: None, task_seen: false, names: Vec::new() };
    let mut directives = Vec::new();
    let mut lines = Vec::new();
    while let Some((no, line)) = p.next_content_line() {
        let d = p.directive(no, line)?;
        directives.push(d);
        lines.push(no);
    }
    if !p.task_seen {
        return Err(err(1, 1, "missing task directive"));
    }
    Ok(ProblemFile { directives, lines })
}

impl<'a> Parser<'a> {
    /// Next line with content after comment removal, 1-based number.
    fn next_content_line(&mut self) -> Option<(usize, &'a str)> {
        while self.next < self.lines.len() {
            let line = strip_comment(self.lines[self.next]);
            self.next += 1;
            if !line.trim().is_empty() {
                return Some((self.next, line));
            }
        }
        None
    }

    fn need_vars(&self, no: usize, column: usize) -> Result<usize, ParseError> {
        self.vars.ok_or_else(|| err(no, column, "vars must be declared before this directive"))
    }

    fn directive(&mut self, no: usize, line: &'a str) -> Result<Directive, ParseError> {
        let toks = tokens(line);
        let head = toks[0];
        let args = &toks[1..];
        let rest_column = args.first().map_or(head.column + head.text.chars().count(), |t| t.column);
        match head.text {
            "task" => {
                let [name] = args else {
                    return Err(err(no, rest_column, "expected: task <name>"));
                };
                if self.task_seen {
                    return Err(err(no, head.column, "duplicate task directive"));
                }
                let task = Task::from_name(name.text).ok_or_else(|| {
                    let names: Vec<&str> = Task::ALL.iter().map(|t| t.name()).collect();
                    err(no, name.column, format!("unknown task '{}' (expected one of {})", name.text, names.join(", ")))
                })?;
                self.task_seen = true;
                Ok(Directive::Task(task))
            }
            "vars" => {
                let [n] = args else {
                    return Err(err(no, rest_column, "expected: vars <n>"));
                };
                if self.vars.is_some() {
                    return Err(err(no, head.column, "duplicate vars directive"));
                }
                let v: usize = n
                    .text
                    .parse()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| err(no, n.column, format!("expected a positive variable count, got '{}'", n.text)))?;
                self.vars = Some(v);
                Ok(Directive::Vars(v))
            }
            "poly" => {
                let n = self.need_vars(no, head.column)?;
                let body = &line[byte_after(line, head)..];
                let (name_part, expr) = body
                    .split_once('=')
                    .ok_or_else(|| err(no, rest_column, "expected: poly <name> = <expression>"))?;
                let name = name_part.trim();
                if name.is_empty()
                    || !name.starts_with(|c: char| c.is_ascii_alphabetic())
                    || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    return Err(err(no, rest_column, format!("invalid polynomial name '{name}'")));
                }
                if self.names.iter().any(|x| x == name) {
                    return Err(err(no, rest_column, format!("duplicate polynomial name '{name}'")));
                }
                let expr_byte = line.len() - expr.len();
                let poly = parse_poly(expr, n).map_err(|e| err(no, char_column(line, expr_byte) + e.column - 1, e.message))?;
                self.names.push(name.to_string());
                Ok(Directive::Poly { name: name.to_string(), poly })
            }
            "avoid" => {
                let n = self.need_vars(no, head.column)?;
                let expr_byte = byte_after(line, head);
                let expr = &line[expr_byte..];
                let poly = parse_poly(expr, n).map_err(|e| err(no, char_column(line, expr_byte) + e.column - 1, e.message))?;
                Ok(Directive::Avoid(poly))
            }
            "index-set" => {
                let n = self.need_vars(no, head.column)?;
                let body_byte = byte_after(line, head);
                let body = line[body_byte..].trim();
                let inner = body
                    .strip_prefix('{')
                    .and_then(|b| b.strip_suffix('}'))
                    .ok_or_else(|| err(no, rest_column, "expected: index-set {i,j,...}"))?;
                let inner_byte = line.find('{').expect("checked") + 1;
                let mut out = Vec::new();
                let mut offset = 0;
                for part in inner.split(',') {
                    let col = char_column(line, inner_byte + offset + (part.len() - part.trim_start().len()));
                    offset += part.len() + 1;
                    let i: usize = part
                        .trim()
                        .parse()
                        .map_err(|_| err(no, col, format!("expected a variable index, got '{}'", part.trim())))?;
                    if i == 0 || i > n {
                        return Err(err(no, col, format!("index {i} out of range 1..{n}")));
                    }
                    if out.contains(&i) {
                        return Err(err(no, col, format!("index {i} repeated")));
                    }
                    out.push(i);
                }
                Ok(Directive::IndexSet(out))
            }
            "linear-var" => {
                let n = self.need_vars(no, head.column)?;
                let [j] = args else {
                    return Err(err(no, rest_column, "expected: linear-var <j>"));
                };
                let v: usize = j
                    .text
                    .parse()
                    .map_err(|_| err(no, j.column, format!("expected a variable index, got '{}'", j.text)))?;
                if v == 0 || v > n {
                    return Err(err(no, j.column, format!("index {v} out of range 1..{n}")));
                }
                Ok(Directive::LinearVar(v))
            }
            "subspace" => {
                let n = self.need_vars(no, head.column)?;
                let [kind, count] = args else {
                    return Err(err(no, rest_column, "expected: subspace rows|kernel <r>"));
                };
                let kind = match kind.text {
                    "rows" => SubspaceKind::Rows,
                    "kernel" => SubspaceKind::Kernel,
                    other => return Err(err(no, kind.column, format!("expected 'rows' or 'kernel', got '{other}'"))),
                };
                let r: usize = count
                    .text
                    .parse()
                    .map_err(|_| err(no, count.column, format!("expected a row count, got '{}'", count.text)))?;
                let mut rows = Vec::with_capacity(r);
                for k in 0..r {
                    let (rn, rl) = self
                        .next_content_line()
                        .ok_or_else(|| err(no, count.column, format!("expected {r} rows, found {k}")))?;
                    let row = rationals(rn, rl)?;
                    if row.dim() != n {
                        return Err(err(rn, 1, format!("row has {} entries, expected {n}", row.dim())));
                    }
                    rows.push(row);
                }
                Ok(Directive::Subspace { kind, rows })
            }
            "vector" => {
                if args.is_empty() {
                    return Err(err(no, rest_column, "expected: vector <q1> <q2> ..."));
                }
                let v = rationals(no, &line[byte_after(line, head)..]).map_err(|e| ParseError {
                    column: e.column + char_column(line, byte_after(line, head)) - 1,
                    ..e
                })?;
                if let Some(n) = self.vars {
                    if v.dim() != n {
                        return Err(err(no, rest_column, format!("vector has {} entries, expected {n}", v.dim())));
                    }
                }
                Ok(Directive::Vector(v))
            }
            other => Err(err(no, head.column, format!("unknown directive '{other}'"))),
        }
    }
}

fn byte_after(line: &str, t: Token<'_>) -> usize {
    let start = line.char_indices().nth(t.column - 1).map_or(line.len(), |(b, _)| b);
    start + t.text.len()
}

fn rationals(no: usize, line: &str) -> Result<VectorQ, ParseError> {
    tokens(line)
        .into_iter()
        .map(|t| parse_rational(t.text).ok_or_else(|| err(no, t.column, format!("expected a rational, got '{}'", t.text))))
        .collect::<Result<Vec<_>, _>>()
        .map(VectorQ)
}

fn render_vector(v: &VectorQ) -> String {
    v.0.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.directives {
            match d {
                Directive::Task(t) => writeln!(f, "task {}", t.name())?,
                Directive::Vars(n) => writeln!(f, "vars {n}")?,
                Directive::Poly { name, poly } => writeln!(f, "poly {name} = {poly}")?,
                Directive::IndexSet(idx) => {
                    let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                    writeln!(f, "index-set {{{}}}", parts.join(","))?
                }
                Directive::LinearVar(j) => writeln!(f, "linear-var {j}")?,
                Directive::Avoid(p) => writeln!(f, "avoid {p}")?,
                Directive::Subspace { kind, rows } => {
                    writeln!(f, "subspace {} {}", kind.keyword(), rows.len())?;
                    for r in rows {
                        writeln!(f, "{}", render_vector(r))?;
                    }
                }
                Directive::Vector(v) => writeln!(f, "vector {}", render_vector(v))?,
            }
        }
        Ok(())
    }
}

impl ProblemFile {
    pub fn task(&self) -> Task {
        self.directives
            .iter()
            .find_map(|d| match d {
                Directive::Task(t) => Some(*t),
                _ => None,
            })
            .expect("parser guarantees a task")
    }

    /// Line of the task directive, for semantic errors.
    pub fn task_line(&self) -> usize {
        self.directives
            .iter()
            .position(|d| matches!(d, Directive::Task(_)))
            .map_or(1, |i| self.lines[i])
    }

    pub fn vars(&self) -> Option<usize> {
        self.directives.iter().find_map(|d| match d {
            Directive::Vars(n) => Some(*n),
            _ => None,
        })
    }

    pub fn polys(&self) -> Vec<(&str, &MultiPoly)> {
        self.directives
            .iter()
            .filter_map(|d| match d {
                Directive::Poly { name, poly } => Some((name.as_str(), poly)),
                _ => None,
            })
            .collect()
    }

    pub fn index_set(&self) -> Option<&[usize]> {
        self.directives.iter().find_map(|d| match d {
            Directive::IndexSet(v) => Some(v.as_slice()),
            _ => None,
        })
    }

    pub fn linear_var(&self) -> Option<usize> {
        self.directives.iter().find_map(|d| match d {
            Directive::LinearVar(j) => Some(*j),
            _ => None,
        })
    }

    pub fn avoid(&self) -> Option<&MultiPoly> {
        self.directives.iter().find_map(|d| match d {
            Directive::Avoid(p) => Some(p),
            _ => None,
        })
    }

    pub fn subspace(&self) -> Option<(SubspaceKind, &[VectorQ])> {
        self.directives.iter().find_map(|d| match d {
            Directive::Subspace { kind, rows } => Some((*kind, rows.as_slice())),
            _ => None,
        })
    }

    pub fn vector(&self) -> Option<&VectorQ> {
        self.directives.iter().find_map(|d| match d {
            Directive::Vector(v) => Some(v),
            _ => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_file() {
        let p = parse_problem("task solve-system\nvars 2\npoly F1 = x1*x2 - 1\nindex-set {1}\n").unwrap();
        assert_eq!(p.task(), Task::SolveSystem);
        assert_eq!(p.polys().len(), 1);
        assert_eq!(p.index_set(), Some(&[1][..]));
    }

    #[test]
    fn height_file() {
        let p = parse_problem("task height\nvars 2\nvector 3 4").unwrap();
        assert_eq!(p.vector(), Some(&VectorQ::from_ints(&[3, 4])));
    }

    #[test]
    fn unknown_variable_is_positioned() {
        let e = parse_problem("task solve-system\nvars 2\npoly F1 = x3").unwrap_err();
        assert_eq!((e.line, e.column), (3, 11));
        assert!(e.message.contains("unknown variable x3"));
    }

    #[test]
    fn comments_and_subspace_rows() {
        let text = "# demo\ntask sparse-basis  # trailing\nvars 3\n\nsubspace kernel 1\n 1 1 1 # row\n";
        let p = parse_problem(text).unwrap();
        let (kind, rows) = p.subspace().unwrap();
        assert_eq!(kind, SubspaceKind::Kernel);
        assert_eq!(rows, &[VectorQ::from_ints(&[1, 1, 1])]);
        assert_eq!(p.lines, vec![2, 3, 5]);
    }

    #[test]
    fn structural_errors() {
        let cases = [
            ("vars 2", (1, 1), "missing task"),
            ("task fly", (1, 6), "unknown task"),
            ("task height\ntask height", (2, 1), "duplicate task"),
            ("task ml-zero\npoly F = x1", (2, 1), "vars must be declared"),
            ("task solve-system\nvars 2\nindex-set {1,3}", (3, 14), "out of range"),
            ("task sparse-basis\nvars 2\nsubspace rows 2\n1 0", (3, 15), "expected 2 rows"),
            ("task sparse-basis\nvars 2\nsubspace rows 1\n1 x", (4, 3), "expected a rational"),
            ("task height\nvector 1 1/0", (2, 10), "expected a rational"),
            ("task height\nfrobnicate", (2, 1), "unknown directive"),
        ];
        for (text, pos, msg) in cases {
            let e = parse_problem(text).unwrap_err();
            assert_eq!((e.line, e.column), pos, "{text}");
            assert!(e.message.contains(msg), "{text}: {}", e.message);
        }
    }

    #[test]
    fn round_trip() {
        let text = "task ml-subspace\nvars 3\npoly F = x1*x2*x3\nsubspace rows 2\n1 -1 0\n0 1/2 -1/2\navoid x1 - 2/3\n";
        let p = parse_problem(text).unwrap();
        let again = parse_problem(&p.to_string()).unwrap();
        assert_eq!(p, again);
    }
}

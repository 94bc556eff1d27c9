//! Golden-file corpus: every `name.prob` has a `name.exit` holding the
//! expected exit code, and `name.json` / `name.err` holding the expected
//! stdout / stderr when those are non-empty.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::run::{solve_text, Outcome, RunOptions};

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub name: String,
    pub expected_code: i32,
    pub actual: Outcome,
    pub mismatches: Vec<String>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `.prob` files in `dir`, sorted by name.
pub fn problem_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "prob"));
    files.sort();
    Ok(files)
}

fn read_or_empty(path: &Path) -> io::Result<String> {
    match fs::read_to_string(path) {
        Ok(s) => Ok(s),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(String::new()),
        Err(e) => Err(e),
    }
}

fn label(path: &Path) -> String {
    path.file_name().map_or_else(String::new, |f| f.to_string_lossy().into_owned())
}

/// Runs one case with the corpus conventions: default indent, no radius
/// override, diagnostics labelled by file name only.
pub fn run_case(path: &Path) -> io::Result<CaseResult> {
    let text = fs::read_to_string(path)?;
    let actual = solve_text(&text, &label(path), &RunOptions::default());
    let exit_text = fs::read_to_string(path.with_extension("exit"))?;
    let expected_code: i32 = exit_text
        .trim()
        .parse()
        .map_err(|_| io::Error::new(io::ErrorKind::InvalidData, format!("bad exit file for {}", label(path))))?;
    let mut mismatches = Vec::new();
    if actual.code != expected_code {
        mismatches.push(format!("exit code {} (expected {expected_code})", actual.code));
    }
    if actual.stdout != read_or_empty(&path.with_extension("json"))? {
        mismatches.push("stdout differs from .json".into());
    }
    if actual.stderr != read_or_empty(&path.with_extension("err"))? {
        mismatches.push("stderr differs from .err".into());
    }
    let name = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    Ok(CaseResult { name, expected_code, actual, mismatches })
}

pub fn run_corpus(dir: &Path) -> io::Result<Vec<CaseResult>> {
    problem_files(dir)?.iter().map(|p| run_case(p)).collect()
}

/// Rewrites the expected files from the current output.
pub fn bless(dir: &Path) -> io::Result<usize> {
    let files = problem_files(dir)?;
    for path in &files {
        let out = solve_text(&fs::read_to_string(path)?, &label(path), &RunOptions::default());
        fs::write(path.with_extension("exit"), format!("{}\n", out.code))?;
        for (ext, body) in [("json", &out.stdout), ("err", &out.stderr)] {
            let target = path.with_extension(ext);
            if body.is_empty() {
                if target.exists() {
                    fs::remove_file(target)?;
                }
            } else {
                fs::write(target, body)?;
            }
        }
    }
    Ok(files.len())
}

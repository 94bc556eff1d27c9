//! The full acceptance suite: the ten library criteria plus the golden
//! corpus, each at zero tolerance and under its runtime limit. Prints one
//! line per criterion and exits non-zero if any fails.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use heightforge::selftest::{run_criterion, seed_from_env, CriterionReport, LIBRARY_CRITERIA};
use heightforge_cli::corpus::{problem_files, run_corpus};
use heightforge_cli::parse_problem;

const MIN_CORPUS_FILES: usize = 12;

fn corpus_criterion() -> CriterionReport {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    match (run_corpus(&dir), run_corpus(&dir)) {
        (Ok(first), Ok(second)) => {
            cases = first.len();
            if cases < MIN_CORPUS_FILES {
                failures.push(format!("only {cases} problem files, need {MIN_CORPUS_FILES}"));
            }
            for (a, b) in first.iter().zip(&second) {
                if !a.passed() {
                    failures.push(format!("{}: {}", a.name, a.mismatches.join("; ")));
                }
                if a.actual != b.actual {
                    failures.push(format!("{}: output differs between runs", a.name));
                }
            }
        }
        (Err(e), _) | (_, Err(e)) => failures.push(format!("cannot read corpus: {e}")),
    }
    // files that parse must survive parse -> print -> parse
    let mut round_trips = 0;
    for path in problem_files(&dir).unwrap_or_default() {
        let text = std::fs::read_to_string(&path).unwrap_or_default();
        if let Ok(p) = parse_problem(&text) {
            round_trips += 1;
            if parse_problem(&p.to_string()).as_ref() != Ok(&p) {
                failures.push(format!("{}: round trip changed the problem", path.display()));
            }
        }
    }
    CriterionReport {
        id: 11,
        title: "CLI golden corpus",
        cases,
        failures: failures.len(),
        examples: failures.into_iter().take(5).collect(),
        elapsed: start.elapsed(),
        limit: Duration::from_secs(60),
        detail: format!("byte-identical twice, {round_trips} round trips"),
    }
}

fn main() -> ExitCode {
    let seed = seed_from_env();
    println!("acceptance suite, seed {seed:#x}");
    let mut reports: Vec<CriterionReport> = Vec::new();
    for &id in &LIBRARY_CRITERIA {
        let r = run_criterion(id, seed).expect("library criterion");
        println!("{}", r.line());
        for e in &r.examples {
            println!("    {e}");
        }
        reports.push(r);
    }
    let r = corpus_criterion();
    println!("{}", r.line());
    for e in &r.examples {
        println!("    {e}");
    }
    reports.push(r);
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!("acceptance: {passed}/{} criteria passed", reports.len());
    if passed == reports.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

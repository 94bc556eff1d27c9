use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use heightforge::selftest;
use heightforge_cli::corpus;
use heightforge_cli::run::{solve_text, RunOptions, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "heightforge", version, about = "Certified small-height rational points")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// Spaces of JSON indentation; 0 prints compact JSON.
    #[arg(long, default_value_t = 2, global = true)]
    json_indent: usize,
    /// Caps every shell search at this sup-norm instead of the derived radius.
    #[arg(long, global = true)]
    max_shell: Option<u64>,
    /// Checks every .prob file in a directory against its golden outputs.
    #[arg(long, value_name = "DIR", conflicts_with = "selftest")]
    corpus: Option<PathBuf>,
    /// With --corpus, rewrites the golden outputs instead of checking them.
    #[arg(long, requires = "corpus")]
    bless: bool,
    /// Runs the randomized property suites (seeded by HEIGHTFORGE_SEED).
    #[arg(long)]
    selftest: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Solves one problem file and prints its certificate.
    Solve { file: PathBuf },
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => code(EXIT_USAGE),
            };
        }
    };

    if cli.selftest {
        let reports = selftest::run_all(selftest::seed_from_env());
        for r in &reports {
            println!("{}", r.line());
        }
        let passed = reports.iter().filter(|r| r.passed() && r.within_limit()).count();
        println!("selftest: {passed}/{} criteria passed", reports.len());
        return if passed == reports.len() { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    }

    if let Some(dir) = cli.corpus {
        if cli.bless {
            return match corpus::bless(&dir) {
                Ok(n) => {
                    println!("blessed {n} files");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    code(EXIT_USAGE)
                }
            };
        }
        let results = match corpus::run_corpus(&dir) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return code(EXIT_USAGE);
            }
        };
        for r in &results {
            let status = if r.passed() { "ok" } else { "FAIL" };
            println!("{status:4} {} (exit {}) {}", r.name, r.actual.code, r.mismatches.join("; "));
        }
        let passed = results.iter().filter(|r| r.passed()).count();
        println!("corpus: {passed}/{} files match", results.len());
        return if passed == results.len() { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    }

    match cli.command {
        Some(Command::Solve { file }) => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}: error: {e}", file.display());
                    return code(EXIT_USAGE);
                }
            };
            let label = file.display().to_string();
            let out = solve_text(&text, &label, &RunOptions { json_indent: cli.json_indent, max_shell: cli.max_shell });
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            code(out.code)
        }
        None => {
            eprintln!("error: nothing to do; try `heightforge solve <file>`, --corpus <dir> or --selftest");
            code(EXIT_USAGE)
        }
    }
}

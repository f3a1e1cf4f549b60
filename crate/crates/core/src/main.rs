use clap::{Parser, Subcommand, ValueEnum};
use qav::liedata::{AlgType, AlgebraData};
use qav::report::SuiteReport;
use qav::suites::{self, Options, SuiteError};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qav", about = "Exact verification suites for R-matrices and L-operators of types B and D")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Target {
    /// Algebra type, B or D.
    #[arg(long = "type", value_parser = parse_type)]
    typ: AlgType,
    #[arg(long)]
    rank: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one suite, or `all`.
    Check {
        suite: String,
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        window: usize,
        /// Depth m of the psi_m embedding (psi suite).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write R-bar or the Gauss factors as JSON.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Gauss decomposition of L+ and L-.
    Gauss {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Print the Lie-theoretic data.
    Info {
        #[command(flatten)]
        target: Target,
    },
}

fn parse_type(s: &str) -> Result<AlgType, String> {
    AlgType::parse(s).ok_or_else(|| format!("unknown type '{s}', expected B or D"))
}

fn usage(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("qav: {e}");
    ExitCode::from(2)
}

fn emit(reports: &[SuiteReport], format: Format) -> ExitCode {
    match format {
        Format::Json => {
            let doc = suites::reports_json(reports);
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Text => {
            for r in reports {
                print!("{}", r.to_text());
            }
        }
    }
    if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(alg: &AlgebraData, names: &[&str], opts: &Options, format: Format, dump: Option<PathBuf>) -> ExitCode {
    let (reports, shared) = match suites::run_with(alg, names, opts) {
        Ok(x) => x,
        Err(e) => return usage(e),
    };
    if let Some(path) = dump {
        match suites::dump(alg, &shared) {
            Some(v) => {
                let text = serde_json::to_string_pretty(&v).expect("serializable");
                if let Err(e) = std::fs::write(&path, text) {
                    return usage(format!("cannot write {}: {e}", path.display()));
                }
            }
            None => eprintln!("qav: nothing to dump for these suites"),
        }
    }
    emit(&reports, format)
}

fn algebra(t: &Target) -> Result<AlgebraData, SuiteError> {
    Ok(AlgebraData::new(t.typ, t.rank)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Cmd::Info { target } => match algebra(&target) {
            Ok(a) => {
                print!("{}", a.describe());
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        },
        Cmd::Check { suite, target, order, window, m, format, dump } => {
            let alg = match algebra(&target) {
                Ok(a) => a,
                Err(e) => return usage(e),
            };
            let names = match suites::select(&suite) {
                Ok(n) => n,
                Err(e) => return usage(e),
            };
            let opts = Options { order, window, m, ..Options::default() };
            run(&alg, &names, &opts, format, dump)
        }
        Cmd::Gauss { target, order, format, dump } => {
            let alg = match algebra(&target) {
                Ok(a) => a,
                Err(e) => return usage(e),
            };
            let opts = Options { order, ..Options::default() };
            run(&alg, &["gauss"], &opts, format, dump)
        }
    }
}

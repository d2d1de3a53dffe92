use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::pairgroupoid::{Convention, PairGroupoid};
use crate::report::{CheckEntry, CheckReport, Verdict};
use crate::verifier::{run_algebroid_suite, run_correspondence, run_groupoid_suite, run_oracle_suite, AlgebroidData};

use super::specfile::{parse_specfile, CheckDecl, SpecFile, Suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pnverify", version, about = "Exact verification of Poisson-Nijenhuis structures")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check in an input file.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Seed for the numeric oracle, unless the file sets one.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random points per oracle instance, unless the file sets it.
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Default convention for checks that do not name one.
        #[arg(long, default_value_t = Convention::Right)]
        convention: Convention,
    },
    /// Print an input file in canonical form.
    Fmt { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub seed: u64,
    pub trials: usize,
    pub convention: Convention,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, trials: 100, convention: Convention::Right }
    }
}

/// Runs the checks of `spec` in file order. Entry ids are
/// `<k>.<suite>(<args>).<item>` with `k` the 1-based check number.
pub fn run_spec(spec: &SpecFile, opts: RunOptions) -> CheckReport {
    let mut report = CheckReport::new();
    for (k, check) in spec.checks.iter().enumerate() {
        let k = k + 1;
        match check {
            CheckDecl::Structure { suite, bivector, endo, convention } => {
                let conv = convention.unwrap_or(opts.convention);
                let lambda = spec.bivector(bivector).expect("resolved reference").clone();
                let n = spec.endo(endo).expect("resolved reference").clone();
                let data = AlgebroidData::new(lambda, n).expect("resolved to one space");
                let (prefix, sub) = match suite {
                    Suite::Algebroid => (format!("{k}.algebroid({bivector},{endo})."), run_algebroid_suite(&data)),
                    Suite::Groupoid => {
                        let g = PairGroupoid::new(data.base());
                        let p = g.extend_bivector(data.lambda(), conv);
                        let nt = g.extend_endo(data.n(), conv);
                        let sub = match run_groupoid_suite(&g, &p, &nt, data.n(), conv) {
                            Ok(r) => r,
                            Err(e) => {
                                let mut r = CheckReport::new();
                                r.push(CheckEntry::new("suite", Verdict::Error).with_note(e.to_string()));
                                r
                            }
                        };
                        (format!("{k}.groupoid({bivector},{endo},{conv})."), sub)
                    }
                    Suite::Correspondence => {
                        (format!("{k}.correspondence({bivector},{endo},{conv})."), run_correspondence(&data, conv))
                    }
                };
                report.extend_prefixed(&prefix, sub);
            }
            CheckDecl::Oracle { trials, seed } => {
                let trials = trials.unwrap_or(opts.trials);
                let seed = seed.unwrap_or(opts.seed);
                report.extend_prefixed(&format!("{k}.oracle."), run_oracle_suite(trials, seed));
            }
        }
    }
    report
}

fn read_spec(path: &PathBuf, err: &mut dyn Write) -> Option<SpecFile> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            return None;
        }
    };
    match parse_specfile(&text) {
        Ok(s) => Some(s),
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            None
        }
    }
}

/// Executes a parsed command line and returns the process exit code.
/// Parse errors produce a message on `err` and nothing on `out`.
pub fn execute(args: Args, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match args.command {
        Command::Verify { path, format, seed, trials, convention } => {
            let Some(spec) = read_spec(&path, err) else {
                return EXIT_USAGE;
            };
            let opts = RunOptions { seed, trials: trials as usize, convention };
            let report = run_spec(&spec, opts);
            let body = match format {
                OutputFormat::Text => report.to_text(),
                OutputFormat::Json => report.to_json() + "\n",
            };
            if out.write_all(body.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            if report.all_pass() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Command::Fmt { path } => {
            let Some(spec) = read_spec(&path, err) else {
                return EXIT_USAGE;
            };
            match write!(out, "{spec}") {
                Ok(()) => EXIT_PASS,
                Err(_) => EXIT_USAGE,
            }
        }
    }
}

//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nccumulant::partition::{enumerate, MoebiusCache};
use nccumulant::{Error, LatticeKind, Partition};
use serde_json::json;

use crate::data::{SpecFile, DEFAULT_DIMENSION, DEFAULT_MAX_ORDER};
use crate::report::{CheckReport, Params};
use crate::suites::{self, SUITES};

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "nccumulant", version, about = "Exact free cumulant calculus and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the partitions of {1..n}, one per line.
    Enumerate {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Only partitions whose blocks are intervals.
        #[arg(long)]
        interval: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Möbius function μ(π, σ); bottom to top of the lattice by default.
    Moebius {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, requires = "upper")]
        lower: Option<Partition>,
        #[arg(long, requires = "lower")]
        upper: Option<Partition>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Kreweras complement of one partition, or of every partition in NC_n.
    Kreweras {
        #[arg(long, required_unless_present = "partition")]
        n: Option<usize>,
        #[arg(long, conflicts_with = "n")]
        partition: Option<Partition>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Quotient σ/ρ for ρ ≤ σ.
    Quotient {
        sigma: Partition,
        rho: Partition,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Join of two partitions in the chosen lattice.
    Join {
        a: Partition,
        b: Partition,
        #[arg(long, value_enum, default_value_t = LatticeArg::Nc)]
        lattice: LatticeArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run one suite, or replay reports from a file.
    Check {
        #[arg(required_unless_present_any = ["replay", "list"], conflicts_with_all = ["replay", "list"])]
        suite: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
        /// File of json reports, one per line; each is evaluated again on its recorded data.
        #[arg(long, value_name = "FILE")]
        replay: Option<PathBuf>,
        /// Print the suites with their default and largest bounds.
        #[arg(long)]
        list: bool,
    },
    /// Run every suite at its default bound.
    CheckAll {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug)]
struct LatticeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = LatticeArg::Nc)]
    lattice: LatticeArg,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    max_order: Option<usize>,
    /// Moment or cumulant specification file (json).
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum LatticeArg {
    Full,
    Nc,
}

impl From<LatticeArg> for LatticeKind {
    fn from(l: LatticeArg) -> Self {
        match l {
            LatticeArg::Full => LatticeKind::Full,
            LatticeArg::Nc => LatticeKind::Noncrossing,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match command {
        Command::Enumerate { lattice, interval, format } => {
            for p in enumerate(lattice.n, lattice.lattice.into(), interval).map_err(lib)? {
                match format {
                    Format::Text => writeln!(out, "{p}"),
                    Format::Json => writeln!(out, "{}", json!({ "partition": p.to_string() })),
                }
                .map_err(io)?;
            }
        }
        Command::Moebius { lattice, lower, upper, format } => {
            let lower = lower.unwrap_or_else(|| Partition::discrete(lattice.n));
            let upper = upper.unwrap_or_else(|| Partition::full(lattice.n));
            if lower.n() != lattice.n || upper.n() != lattice.n {
                return Err(format!("partitions must be of {} points", lattice.n));
            }
            let mu = MoebiusCache::new().value(&lower, &upper, lattice.lattice.into()).map_err(lib)?;
            match format {
                Format::Text => writeln!(out, "{mu}"),
                Format::Json => {
                    writeln!(
                        out,
                        "{}",
                        json!({ "lower": lower.to_string(), "upper": upper.to_string(), "moebius": mu })
                    )
                }
            }
            .map_err(io)?;
        }
        Command::Kreweras { n, partition, format } => {
            let all = match partition {
                Some(p) => vec![p],
                None => enumerate(n.unwrap_or(0), LatticeKind::Noncrossing, false).map_err(lib)?,
            };
            for p in all {
                let k = p.kreweras().map_err(lib)?;
                match format {
                    Format::Text => writeln!(out, "{p} {k}"),
                    Format::Json => {
                        writeln!(out, "{}", json!({ "partition": p.to_string(), "kreweras": k.to_string() }))
                    }
                }
                .map_err(io)?;
            }
        }
        Command::Quotient { sigma, rho, format } => {
            let q = sigma.quotient(&rho).map_err(lib)?;
            match format {
                Format::Text => writeln!(out, "{q}"),
                Format::Json => writeln!(out, "{}", json!({ "quotient": q.to_string() })),
            }
            .map_err(io)?;
        }
        Command::Join { a, b, lattice, format } => {
            let j = a.join(&b, lattice.into()).map_err(lib)?;
            match format {
                Format::Text => writeln!(out, "{j}"),
                Format::Json => writeln!(out, "{}", json!({ "join": j.to_string() })),
            }
            .map_err(io)?;
        }
        Command::Check { list: true, .. } => {
            for s in SUITES {
                writeln!(out, "{:<26} n={} (max {})  {}", s.id, s.default_n, s.max_n, s.summary).map_err(io)?;
            }
        }
        Command::Check { replay: Some(path), run, .. } => {
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let mut reports = Vec::new();
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                let old: CheckReport = serde_json::from_str(line).map_err(|e| format!("{}: {e}", path.display()))?;
                let suite = suites::find(&old.id).ok_or_else(|| format!("unknown suite {}", old.id))?;
                reports.push(suite.replay(&old));
            }
            return emit(&reports, run.format, out).map_err(io);
        }
        Command::Check { suite, n, run, .. } => {
            let id = suite.unwrap_or_default();
            let suite = suites::find(&id).ok_or_else(|| format!("unknown suite {id}; try check --list"))?;
            let spec = load_spec(&run)?;
            let params = Params {
                n: n.unwrap_or(suite.default_n),
                dim: dim(&run, spec.as_ref()),
                max_order: max_order(&run, spec.as_ref()),
            };
            let report = suite.run(&params, run.seed, spec.as_ref());
            return emit(&[report], run.format, out).map_err(io);
        }
        Command::CheckAll { run } => {
            let spec = load_spec(&run)?;
            let reports =
                suites::run_all(run.seed, dim(&run, spec.as_ref()), max_order(&run, spec.as_ref()), spec.as_ref());
            return emit(&reports, run.format, out).map_err(io);
        }
    }
    Ok(0)
}

fn lib(e: Error) -> String {
    e.to_string()
}

fn load_spec(run: &RunArgs) -> Result<Option<SpecFile>, String> {
    run.spec.as_deref().map(SpecFile::load).transpose()
}

fn dim(run: &RunArgs, spec: Option<&SpecFile>) -> usize {
    run.dim.or(spec.map(|s| s.dimension)).unwrap_or(DEFAULT_DIMENSION)
}

fn max_order(run: &RunArgs, spec: Option<&SpecFile>) -> usize {
    run.max_order.or(spec.map(|s| s.max_order)).unwrap_or(DEFAULT_MAX_ORDER)
}

fn emit(reports: &[CheckReport], format: Format, out: &mut dyn Write) -> std::io::Result<i32> {
    for r in reports {
        match format {
            Format::Text => writeln!(out, "{}", r.text_line())?,
            Format::Json => writeln!(out, "{}", serde_json::to_string(r).expect("reports serialize"))?,
        }
    }
    Ok(if reports.iter().all(CheckReport::passed) { 0 } else { EXIT_FAIL })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("nccumulant").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn lattice_commands() {
        let (code, out) = call(&["enumerate", "--n", "4", "--lattice", "nc"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 14);
        assert_eq!(call(&["enumerate", "--n", "4", "--lattice", "full"]).1.lines().count(), 15);
        assert_eq!(call(&["moebius", "--n", "4", "--lattice", "nc"]), (0, "-5\n".into()));
        assert_eq!(call(&["moebius", "--n", "4", "--lattice", "full"]), (0, "-6\n".into()));
        assert_eq!(call(&["kreweras", "--partition", "{1,2}{3}"]), (0, "{1,2}{3} {1}{2,3}\n".into()));
        assert_eq!(call(&["kreweras", "--n", "5"]).1.lines().count(), 42);
        assert_eq!(call(&["quotient", "{1,2,3}{4}", "{1,2}{3}{4}"]), (0, "{1,2}{3}\n".into()));
        assert_eq!(call(&["join", "{1,3}{2}{4}", "{1}{2,4}{3}"]), (0, "{1,2,3,4}\n".into()));
        assert_eq!(call(&["join", "13|2|4", "1|24|3", "--lattice", "full"]), (0, "{1,3}{2,4}\n".into()));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["enumerate", "--n", "3", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["enumerate", "--n", "3", "--lattice", "tree"]).0, EXIT_USAGE);
        assert_eq!(call(&["check", "no-such-suite"]).0, EXIT_USAGE);
        assert_eq!(call(&["quotient", "{1}{2}", "{1,2}"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn check_reports() {
        let (code, out) = call(&["check", "kreweras", "--n", "4", "--format", "json"]);
        assert_eq!(code, 0);
        let report: CheckReport = serde_json::from_str(out.trim()).unwrap();
        assert!(report.passed() && report.instances > 0);
        // past the ceiling the report is an error and the exit code a failure
        let (code, out) = call(&["check", "examples", "--n", "9"]);
        assert_eq!(code, EXIT_FAIL);
        assert!(out.starts_with("ERROR examples"));
    }
}

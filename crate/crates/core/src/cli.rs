//! The `klv` command line: `orbits`, `closure`, `table` and `verify`.
//!
//! Exit codes: 0 success, 1 verification failure or engine invariant
//! breach, 2 usage error (bad flags, bad model parameters, cap exceeded).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::closure::ClosurePoset;
use crate::error::Error;
use crate::hecke_klv::KlvTable;
use crate::orbit_model::{ModelSpec, OrbitSet};
use crate::verify::verify_model;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest diagonal rank for which `verify` also runs the classical oracle.
pub const VERIFY_ORACLE_CAP: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "klv", version, about = "K-orbit closure orders and KLV polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List orbits with their lengths.
    Orbits(CommonArgs),
    /// Export the closure order (Hasse diagram).
    Closure(CommonArgs),
    /// Compute the table of KLV polynomials.
    Table {
        #[command(flatten)]
        common: CommonArgs,
        /// Include mu-coefficients.
        #[arg(long)]
        mu: bool,
    },
    /// Check semicontinuity and the structural facts behind it.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Include wall-clock time in the output.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("model").required(true).args(["clans", "diagonal"])))]
struct CommonArgs {
    /// (p,q)-clans for GL(p+q) with K = GL(p) x GL(q), given as `p,q`.
    #[arg(long, value_name = "P,Q", value_parser = parse_pair)]
    clans: Option<(usize, usize)>,
    /// Diagonal model (classical KL theory) for GL(n).
    #[arg(long, value_name = "N")]
    diagonal: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Size cap on p+q (default 7) or n (default 6).
    #[arg(long, value_name = "N")]
    max_size: Option<usize>,
    /// Suppress the status line on standard error.
    #[arg(long)]
    quiet: bool,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected p,q but got {s:?}"))?;
    let p = a.trim().parse().map_err(|e| format!("bad p: {e}"))?;
    let q = b.trim().parse().map_err(|e| format!("bad q: {e}"))?;
    Ok((p, q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

/// Resolved settings shared by all commands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub model: ModelSpec,
    pub cap: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub quiet: bool,
}

impl Config {
    fn from_args(args: &CommonArgs) -> Config {
        let model = match (args.clans, args.diagonal) {
            (Some((p, q)), _) => ModelSpec::Clans { p, q },
            (None, Some(n)) => ModelSpec::Diagonal { n },
            (None, None) => unreachable!("clap enforces the model group"),
        };
        Config {
            model,
            cap: args.max_size.unwrap_or_else(|| model.default_cap()),
            format: args.format,
            out: args.out.clone(),
            quiet: args.quiet,
        }
    }
}

/// Failure inside a command, mapped onto an exit code.
enum CmdError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeCap { .. } | Error::InvalidParameters(_) | Error::Parse { .. } => {
                CmdError::Usage(e.to_string())
            }
            _ => CmdError::Failure(e.to_string()),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };

    let (cfg, result) = match &cli.command {
        Command::Orbits(c) => {
            let cfg = Config::from_args(c);
            let r = cmd_orbits(&cfg);
            (cfg, r)
        }
        Command::Closure(c) => {
            let cfg = Config::from_args(c);
            let r = cmd_closure(&cfg);
            (cfg, r)
        }
        Command::Table { common, mu } => {
            let cfg = Config::from_args(common);
            let r = cmd_table(&cfg, *mu);
            (cfg, r)
        }
        Command::Verify { common, timing } => {
            let cfg = Config::from_args(common);
            let r = cmd_verify(&cfg, *timing);
            (cfg, r)
        }
    };

    match result {
        Ok(output) => {
            if let Err(e) = emit(&cfg, &output.body, stdout) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_FAILURE;
            }
            if !cfg.quiet {
                let _ = writeln!(stderr, "{}", output.status);
            }
            output.code
        }
        Err(CmdError::Usage(msg)) => {
            let _ = writeln!(stderr, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(CmdError::Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

struct Output {
    body: String,
    status: String,
    code: i32,
}

impl Output {
    fn ok(body: String, status: String) -> Self {
        Output {
            body,
            status,
            code: EXIT_OK,
        }
    }
}

fn emit(cfg: &Config, body: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, body),
        None => stdout.write_all(body.as_bytes()),
    }
}

fn unsupported(cfg: &Config, command: &str) -> CmdError {
    CmdError::Usage(format!("format {:?} is not available for {command}", cfg.format))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn build_set(cfg: &Config) -> Result<OrbitSet, CmdError> {
    Ok(cfg.model.build(cfg.cap)?)
}

fn cmd_orbits(cfg: &Config) -> Result<Output, CmdError> {
    let set = build_set(cfg)?;
    let body = match cfg.format {
        Format::Text => {
            let width = set.orbits().iter().map(|o| o.payload.len()).max().unwrap_or(0);
            let mut s = String::new();
            for o in set.orbits() {
                let _ = writeln!(s, "{:<width$}  d={}", o.payload, o.d);
            }
            s
        }
        Format::Json => json(&set.orbits()),
        Format::Csv => {
            let mut s = String::from("payload,d\n");
            for o in set.orbits() {
                let _ = writeln!(s, "{},{}", o.payload, o.d);
            }
            s
        }
        Format::Dot => return Err(unsupported(cfg, "orbits")),
    };
    Ok(Output::ok(body, format!("{}: {} orbits", cfg.model, set.len())))
}

fn cmd_closure(cfg: &Config) -> Result<Output, CmdError> {
    let set = build_set(cfg)?;
    let poset = ClosurePoset::build(&set)?;
    let body = match cfg.format {
        Format::Text => {
            let mut s = String::new();
            for &(x, y) in poset.covers() {
                let _ = writeln!(s, "{} < {}", set.payload(x), set.payload(y));
            }
            s
        }
        Format::Json => json(&poset.export(&set)),
        Format::Csv => {
            let mut s = String::from("lower,upper\n");
            for &(x, y) in poset.covers() {
                let _ = writeln!(s, "{},{}", set.payload(x), set.payload(y));
            }
            s
        }
        Format::Dot => poset.to_dot(&set),
    };
    Ok(Output::ok(
        body,
        format!(
            "{}: {} orbits, {} covers",
            cfg.model,
            set.len(),
            poset.covers().len()
        ),
    ))
}

fn cmd_table(cfg: &Config, with_mu: bool) -> Result<Output, CmdError> {
    let set = build_set(cfg)?;
    let table = KlvTable::build(&set)?;
    let records = if with_mu {
        table.records_with_mu(&set)
    } else {
        table.records(&set)
    };
    let coeff_list = |p: &crate::poly::Poly| {
        p.coeffs()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let body = match cfg.format {
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                let _ = write!(s, "P({}, {}) = {}", r.lower, r.upper, r.coeffs);
                if let Some(m) = r.mu {
                    let _ = write!(s, "  mu={m}");
                }
                s.push('\n');
            }
            s
        }
        Format::Json => json(&records),
        Format::Csv => {
            let mut s = String::from(if with_mu {
                "lower,upper,coeffs,mu\n"
            } else {
                "lower,upper,coeffs\n"
            });
            for r in &records {
                let _ = write!(s, "{},{},\"{}\"", r.lower, r.upper, coeff_list(&r.coeffs));
                if let Some(m) = r.mu {
                    let _ = write!(s, ",{m}");
                }
                s.push('\n');
            }
            s
        }
        Format::Dot => return Err(unsupported(cfg, "table")),
    };
    Ok(Output::ok(
        body,
        format!("{}: {} comparable pairs", cfg.model, records.len()),
    ))
}

fn cmd_verify(cfg: &Config, timing: bool) -> Result<Output, CmdError> {
    if matches!(cfg.format, Format::Csv | Format::Dot) {
        return Err(unsupported(cfg, "verify"));
    }
    let mut report = verify_model(cfg.model, cfg.cap, VERIFY_ORACLE_CAP)?;
    let elapsed = report.elapsed_ms;
    if !timing {
        report.elapsed_ms = None;
    }
    let body = match cfg.format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        _ => report.summary(),
    };
    let status = format!(
        "{}: {} chains, {} violations ({} ms)",
        cfg.model,
        report.counts.chains_checked,
        report.violations.len(),
        elapsed.unwrap_or_default()
    );
    Ok(Output {
        body,
        status,
        code: if report.passed() { EXIT_OK } else { EXIT_FAILURE },
    })
}

//! The `nearmiss` command line.
//!
//! ```text
//! nearmiss gen --count N [--format tsv|jsonl]
//! nearmiss verify --count N [--format tsv|jsonl]
//! nearmiss closed-form --n K [--format tsv|jsonl]
//! nearmiss identities
//! nearmiss search --max-x M [--min-x m] [--threshold T | --exact-residual R]
//!                 [--workers W] [--format tsv|jsonl] [--quiet]
//! ```
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes are
//! [`EXIT_OK`], [`EXIT_FAILED`] (a verification came out false),
//! [`EXIT_USAGE`] (bad flags or arguments) and [`EXIT_ERROR`].

use std::io::{self, Write};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::exactmath::{parse_integer, parse_rational, Integer, Rational};
use crate::format::{render, render_all, OutputFormat, Row};
use crate::identities::{perturb_g, run_suite};
use crate::search::{scan_with_progress, Progress, SearchConfig};
use crate::sequences::{
    check_triplets, closed_form_trace, gen_recurrence_from, ClosedFormConstants, InitialTerms,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nearmiss", version, about = "Near-solutions of x^4 + y^4 = z^2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first N triplets of the x^4 + y^4 - 8 = z^2 family
    Gen(GenArgs),
    /// Check the residual and closed forms for the first N triplets
    Verify(VerifyArgs),
    /// Show the exact closed-form evaluation at one index
    ClosedForm(ClosedFormArgs),
    /// Check the coefficient, root and expansion-table identities (JSON report)
    Identities(IdentitiesArgs),
    /// Scan for |x^4 + y^4 - z^2| <= threshold
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_parser = parse_count)]
    pub count: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_count)]
    pub count: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
    pub format: OutputFormat,
    /// Replace z_0 before generating (test hook)
    #[arg(long, hide = true, value_parser = parse_integer_arg)]
    pub override_z0: Option<Integer>,
}

#[derive(Debug, Args)]
pub struct ClosedFormArgs {
    #[arg(long = "n")]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    /// Add this rational to g before checking (test hook)
    #[arg(long, hide = true, value_parser = parse_rational_arg, allow_hyphen_values = true)]
    pub perturb_g: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value = "1", value_parser = parse_integer_arg)]
    pub min_x: Integer,
    #[arg(long, value_parser = parse_integer_arg)]
    pub max_x: Integer,
    /// Bound on |x^4 + y^4 - z^2| [default: 0]
    #[arg(long, value_parser = parse_integer_arg, conflicts_with = "exact_residual")]
    pub threshold: Option<Integer>,
    /// Keep only hits with x^4 + y^4 - z^2 equal to this value
    #[arg(long, value_parser = parse_integer_arg, allow_hyphen_values = true)]
    pub exact_residual: Option<Integer>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
    pub format: OutputFormat,
    /// No progress on stderr
    #[arg(long)]
    pub quiet: bool,
}

fn parse_count(s: &str) -> Result<u64, String> {
    let n: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if n == 0 {
        return Err("count must be at least 1".into());
    }
    Ok(n)
}

fn parse_integer_arg(s: &str) -> Result<Integer, String> {
    parse_integer(s).map_err(|e| e.to_string())
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        // downstream closed the pipe (`| head`): nothing left to report
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(CliError::Lib(Error::InvalidInput(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn execute(cmd: &Command, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    match cmd {
        Command::Gen(a) => {
            let rows = gen_recurrence_from(&InitialTerms::standard(), a.count)?;
            out.write_all(render_all(&rows, a.format).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Verify(a) => verify(a, out, err),
        Command::ClosedForm(a) => {
            let trace = closed_form_trace(a.n, &ClosedFormConstants::standard())?;
            match a.format {
                OutputFormat::Tsv => {
                    for (k, v) in trace.fields() {
                        writeln!(out, "{k}\t{v}")?;
                    }
                }
                OutputFormat::Jsonl => writeln!(out, "{}", serde_json::to_string(&trace)?)?,
            }
            Ok(EXIT_OK)
        }
        Command::Identities(a) => {
            let mut k = ClosedFormConstants::standard();
            if let Some(delta) = &a.perturb_g {
                k = perturb_g(&k, delta);
            }
            let report = run_suite(&k);
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            let total = report.five_identities.checks.len() + report.root_identities.checks.len() + 1;
            let passed = report.five_identities.checks.iter().filter(|c| c.equal).count()
                + report.root_identities.checks.iter().filter(|c| c.equal).count()
                + usize::from(report.expansion_tables.equal);
            writeln!(err, "identities: {passed}/{total} checks hold")?;
            Ok(if report.all_passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Search(a) => search(a, out, err),
    }
}

fn verify(a: &VerifyArgs, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let mut init = InitialTerms::standard();
    if let Some(z0) = &a.override_z0 {
        init.z[0] = z0.clone();
    }
    let triplets = gen_recurrence_from(&init, a.count)?;
    let checks = check_triplets(&triplets, &ClosedFormConstants::standard());
    for c in &checks {
        writeln!(out, "{}", render(c as &dyn Row, a.format))?;
    }
    let failing: Vec<String> = checks.iter().filter(|c| !c.passed()).map(|c| c.n.to_string()).collect();
    if failing.is_empty() {
        writeln!(err, "verify: all {} triplets pass", checks.len())?;
        Ok(EXIT_OK)
    } else {
        for c in checks.iter().filter(|c| c.closed_form_error.is_some()) {
            writeln!(err, "verify: n = {}: {}", c.n, c.closed_form_error.as_deref().unwrap_or_default())?;
        }
        writeln!(err, "verify: FAILED at n = {}", failing.join(", "))?;
        Ok(EXIT_FAILED)
    }
}

fn search(a: &SearchArgs, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let threshold = match (&a.threshold, &a.exact_residual) {
        (Some(t), _) => t.clone(),
        (None, Some(r)) => num_traits::Signed::abs(r),
        (None, None) => Integer::from(0),
    };
    let cfg = SearchConfig {
        min_x: a.min_x.clone(),
        max_x: a.max_x.clone(),
        threshold,
        exact_residual: a.exact_residual.clone(),
        workers: a.workers,
    };
    cfg.validate()?;

    let diag = Mutex::new(&mut *err);
    let report = |p: Progress| {
        let step = (p.stripes_total / 10).max(1);
        if !a.quiet && (p.stripes_done.is_multiple_of(step) || p.stripes_done == p.stripes_total) {
            let mut w = diag.lock().unwrap_or_else(|e| e.into_inner());
            let _ = writeln!(w, "search: {}/{} stripes of x", p.stripes_done, p.stripes_total);
        }
    };
    let hits = scan_with_progress(&cfg, &report)?;

    out.write_all(render_all(&hits, a.format).as_bytes())?;
    if !a.quiet {
        writeln!(err, "search: {} hits for {} <= x <= y <= {}", hits.len(), cfg.min_x, cfg.max_x)?;
    }
    Ok(EXIT_OK)
}

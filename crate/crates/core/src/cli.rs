//! Command-line front end.
//!
//! Exit codes: 0 success / pass, 1 failure (generation error or failing
//! report), 2 usage or invalid parameters, 3 indeterminate report.
//!
//! Environment: `BUDGET_NODES` sets the isomorphism node budget and
//! `COLUMN_CAP` the generator's column safety cap.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::export::{column_bound, matrix_pbm, rows_csv, ExportFormat, RowsDocument};
use crate::geometry::{build_pg, build_pg2_nim, expected_counts};
use crate::greedy::{generate, GenParams, DEFAULT_COLUMN_CAP};
use crate::nimber::{field_check, FieldCheckMode, EXHAUSTIVE_FIELD_LIMIT};
use crate::verify::{self, Budgets};
use crate::{Error, Result, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "naive-matrix", version, about = "Lexicographic generation of naive (k,r) matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate the first rows of the naive matrix of type (k, r).
    Generate(GenerateArgs),
    /// Run a verification harness and emit a JSON report.
    Verify {
        #[command(subcommand)]
        harness: Harness,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Export the canonical PG(n, q) point-line structure.
    ExportPg(ExportPgArgs),
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    k: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    r: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    rows: u64,
    #[arg(long, value_enum, default_value = "rows-csv")]
    format: ExportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExportPgArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value = "rows-csv")]
    format: ExportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Harness {
    /// q = 2 identification of the first d rows with the nim triples.
    Theorem {
        #[arg(long)]
        n: u32,
    },
    /// Zero blocks and the row/column shift periodicity.
    Periodicity {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        blocks: usize,
    },
    /// Replay of the completeness/connectability claims.
    Invariants {
        #[arg(long)]
        n: u32,
    },
    /// Experimental check for q = 2^(2^a).
    General {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        iso: bool,
    },
    /// Exhaustive greediness-lemma scan over [0, bound)^3.
    Lemma {
        #[arg(long)]
        bound: u64,
    },
    /// Field axioms of nim arithmetic on [0, q).
    Field {
        #[arg(long)]
        q: u64,
        /// exhaustive or sampled; defaults to exhaustive for q <= 256.
        #[arg(long)]
        mode: Option<FieldMode>,
        #[arg(long, default_value_t = FieldCheckMode::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum FieldMode {
    Exhaustive,
    Sampled,
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_io(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

pub fn run_with_io<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(rendered.as_bytes()) } else { stdout.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::InvalidParameter(_) | Error::InvalidArgument(_) | Error::Parse(_) => EXIT_USAGE,
                _ => EXIT_FAIL,
            }
        }
    }
}

fn env_number(name: &str) -> Result<Option<u64>> {
    match std::env::var(name) {
        Ok(raw) => raw
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidParameter(format!("{name}={raw:?} is not a nonnegative integer"))),
        Err(_) => Ok(None),
    }
}

fn column_cap() -> Result<usize> {
    Ok(env_number("COLUMN_CAP")?.map_or(DEFAULT_COLUMN_CAP, |c| c as usize))
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render_rows(format: ExportFormat, k: usize, r: usize, rows: &[Vec<usize>], width: usize) -> Result<String> {
    Ok(match format {
        ExportFormat::RowsCsv => rows_csv(rows),
        ExportFormat::RowsJson => RowsDocument { k, r, rows: rows.to_vec() }.to_json(),
        ExportFormat::MatrixPbm => matrix_pbm(rows, width),
        ExportFormat::ReportJson => {
            return Err(Error::InvalidArgument("report-json is only produced by `verify`".into()))
        }
    })
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Generate(args) => {
            let (k, r) = (args.k as usize, args.r as usize);
            let params = GenParams::new(k, r, args.rows as usize)?.with_column_cap(column_cap()?)?;
            if args.format == ExportFormat::ReportJson {
                return Err(Error::InvalidArgument("report-json is only produced by `verify`".into()));
            }
            let rows: Vec<Vec<usize>> = generate(params)?.into_iter().map(|row| row.points).collect();
            let text = render_rows(args.format, k, r, &rows, column_bound(&rows))?;
            emit(&text, args.out.as_ref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::ExportPg(args) => {
            let counts = expected_counts(args.n, args.q)?;
            let (v, lines) = if args.q == 2 {
                let s = build_pg2_nim(args.n)?;
                (s.point_count(), s.lines().to_vec())
            } else {
                let pg = build_pg(args.n, args.q)?;
                (pg.points.len(), pg.lines)
            };
            let text = render_rows(args.format, counts.k as usize, counts.r as usize, &lines, v)?;
            emit(&text, args.out.as_ref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Verify { harness, out } => {
            let report = run_harness(harness)?;
            emit(&report.to_json(), out.as_ref(), stdout)?;
            Ok(report.status.exit_code())
        }
    }
}

fn run_harness(harness: Harness) -> Result<VerificationReport> {
    match harness {
        Harness::Theorem { n } => verify::verify_theorem_q2_with(n, column_cap()?),
        Harness::Periodicity { n, blocks } => verify::verify_zero_blocks_and_periodicity(n, blocks),
        Harness::Invariants { n } => verify::verify_proof_invariants(n),
        Harness::General { a, n, iso } => {
            let mut budgets = Budgets { column_cap: column_cap()?, ..Budgets::default() };
            if let Some(nodes) = env_number("BUDGET_NODES")? {
                budgets.iso_nodes = nodes;
            }
            verify::verify_general_q_with(a, n, iso, &budgets)
        }
        Harness::Lemma { bound } => verify::lemma_exhaustive(bound),
        Harness::Field { q, mode, samples, seed } => {
            let mode = match mode {
                Some(FieldMode::Exhaustive) => FieldCheckMode::Exhaustive,
                Some(FieldMode::Sampled) => FieldCheckMode::Sampled { samples, seed },
                None if q <= EXHAUSTIVE_FIELD_LIMIT => FieldCheckMode::Exhaustive,
                None => FieldCheckMode::Sampled { samples, seed },
            };
            field_check(q, mode)
        }
    }
}

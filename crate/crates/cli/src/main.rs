use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chainvol::classify::{self, ChainLinkId, ResidualRange, Verdict};
use chainvol::reference::{self, ReferenceSet};
use chainvol::report::{self, ReportRow, ResidualRow, RootsReport, TableRow};
use chainvol::{bounds, roots, Context, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Certified volume bounds for hyperbolic chain link complements.
#[derive(Parser, Debug)]
#[command(name = "chainvol", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Tolerance for each Lobachevsky evaluation.
    #[arg(long, global = true, default_value_t = chainvol::numerics::DEFAULT_TOLERANCE)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RangeArg {
    Small,
    Large,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cover volumes, minimally twisted bounds and exact even-chain volumes.
    Tables {
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        min_n: i64,
        #[arg(long, default_value_t = 60, allow_negative_numbers = true)]
        max_n: i64,
    },
    /// Verdict for one chain link. Exits 0 if excluded by the bound, 1 otherwise.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Signed number of half-twists relative to the minimally twisted chain.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        half_twists: i64,
    },
    /// Root of f, its maximum, the maximum of R and every zero window.
    Roots,
    /// Fillings left open by the bound, with isometry deduplication.
    Residual {
        #[arg(long, value_enum)]
        range: RangeArg,
        /// Print only the number of canonical cases.
        #[arg(long)]
        count_only: bool,
    },
    /// Check a reference table against the certified computations.
    Verify {
        /// Reference CSV; defaults to the bundled tables.
        path: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn io_failure(e: Error) -> Failure {
    Failure::Io(e.to_string())
}

fn open_output(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Failure::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let ctx = Context::new(cli.tolerance).map_err(|e| Failure::Usage(e.to_string()))?;
    match &cli.command {
        Command::Tables { min_n, max_n } => {
            let rows = report::table_rows(&ctx, *min_n, *max_n)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let mut out = open_output(&cli.out)?;
            match cli.format {
                Format::Csv => TableRow::write_csv(&rows, &mut out).map_err(io_failure)?,
                Format::Json => write_json(&mut out, &rows)?,
            }
            out.flush()?;
            Ok(0)
        }
        Command::Classify { n, half_twists } => {
            let report = classify::classify_chain(&ctx, ChainLinkId::new(*n, *half_twists))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let row = ReportRow::from(&report);
            let mut out = open_output(&cli.out)?;
            match cli.format {
                Format::Csv => ReportRow::write_csv(std::slice::from_ref(&row), &mut out)
                    .map_err(io_failure)?,
                Format::Json => write_json(&mut out, &row)?,
            }
            out.flush()?;
            Ok(if report.verdict == Verdict::ExcludedByBound { 0 } else { 1 })
        }
        Command::Roots => {
            let exec = ctx.execution();
            let compute = || -> chainvol::Result<RootsReport> {
                Ok(RootsReport::new(
                    roots::f_root()?,
                    bounds::f_critical_point(),
                    roots::r_max(exec)?,
                    &roots::zero_windows(5, 59, exec)?,
                ))
            };
            let report = compute().map_err(io_failure)?;
            let mut out = open_output(&cli.out)?;
            match cli.format {
                Format::Csv => report.write_csv(&mut out).map_err(io_failure)?,
                Format::Json => write_json(&mut out, &report)?,
            }
            out.flush()?;
            Ok(0)
        }
        Command::Residual { range, count_only } => {
            let range = match range {
                RangeArg::Small => ResidualRange::Small,
                RangeArg::Large => ResidualRange::Large,
            };
            let cases = classify::enumerate_residual(range);
            let mut out = open_output(&cli.out)?;
            if *count_only {
                let counts = classify::residual_counts(&cases);
                match cli.format {
                    Format::Csv => writeln!(out, "{}", counts.canonical)?,
                    Format::Json => write_json(&mut out, &counts)?,
                }
            } else {
                let rows: Vec<ResidualRow> = cases.iter().map(ResidualRow::from).collect();
                match cli.format {
                    Format::Csv => ResidualRow::write_csv(&rows, &mut out).map_err(io_failure)?,
                    Format::Json => write_json(&mut out, &rows)?,
                }
            }
            out.flush()?;
            Ok(0)
        }
        Command::Verify { path } => {
            let set = match path {
                Some(p) => ReferenceSet::load(p),
                None => Ok(ReferenceSet::bundled().clone()),
            };
            let set = match set {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("chainvol: {e}");
                    return Ok(2);
                }
            };
            let result = reference::verify_reference(&ctx, &set);
            let mut out = open_output(&cli.out)?;
            match cli.format {
                Format::Csv => report::write_findings_csv(&result, &mut out).map_err(io_failure)?,
                Format::Json => write_json(&mut out, &result)?,
            }
            out.flush()?;
            eprintln!(
                "chainvol: {} rows, {} checks, {} failures",
                result.rows,
                result.checks,
                result.failures.len()
            );
            Ok(if result.is_ok() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("chainvol: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("chainvol: {msg}");
            ExitCode::from(3)
        }
    }
}

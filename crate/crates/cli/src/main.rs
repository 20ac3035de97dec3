use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use zlab::reproduce;
use zlab::scan::{self, Format, Mode, ScanConfig, ScanKind};
use zlab::{CliError, Outcome};
use zlab_core::rees::Family;

#[derive(Parser)]
#[command(name = "zlab", version, about = "m-primary ideals of k[x,y]: series, depth, factorizations, Rees algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReproduceFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Auto,
    Increasing,
    Decreasing,
    Generic,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute every published example and compare.
    Reproduce {
        #[arg(long, value_enum, default_value = "text")]
        format: ReproduceFormat,
    },
    /// Hilbert series of the associated graded ring.
    Hs {
        ideal: String,
        #[arg(long, default_value_t = 3)]
        window: usize,
    },
    /// Depth of the associated graded ring, with its certificate.
    Depth {
        ideal: String,
        #[arg(long, default_value_t = 3)]
        window: usize,
    },
    /// Zariski factorization of a contracted ideal or divisor ledger.
    Factor { input: String },
    /// Block profile and transform of a lex-segment ideal.
    Transform { ideal: String },
    /// Generic forms of the given comma-separated degrees.
    Generic { degrees: String },
    /// Verified Gröbner basis of the Rees algebra presentation.
    Rees {
        ideal: String,
        #[arg(long, value_enum, default_value = "auto")]
        family: FamilyArg,
    },
    /// Census scans over lex-segment ideals.
    Scan {
        #[arg(value_enum)]
        kind: ScanKind,
        #[arg(long, default_value_t = 5)]
        dmax: usize,
        #[arg(long, default_value_t = 10)]
        admax: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample this many ideals instead of the whole census.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 3)]
        window: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| CliError::Io(e.to_string()))
}

fn print_outcome(o: Outcome) -> Result<bool, CliError> {
    let text = serde_json::to_string_pretty(&o.report).map_err(|e| CliError::Io(e.to_string()))?;
    emit(&text)?;
    Ok(o.ok)
}

fn reproduce(format: ReproduceFormat) -> Result<bool, CliError> {
    let m = reproduce::cmd_reproduce();
    match format {
        ReproduceFormat::Json => {
            let text = serde_json::to_string_pretty(&m).map_err(|e| CliError::Io(e.to_string()))?;
            emit(&text)?;
        }
        ReproduceFormat::Text => {
            for c in &m.checks {
                if c.pass {
                    emit(&format!("PASS {}", c.name))?;
                } else {
                    emit(&format!("FAIL {} expected {} computed {}", c.name, c.expected, c.computed))?;
                }
            }
            emit(&format!("{}/{} checks pass", m.passed(), m.checks.len()))?;
        }
    }
    Ok(m.all_pass())
}

fn run_scan(kind: ScanKind, cfg: ScanConfig, out: Option<PathBuf>) -> Result<bool, CliError> {
    let mut sink: Box<dyn Write> = match &out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    let failed = match kind {
        ScanKind::H1 => {
            let r = scan::cmd_scan_h1(&cfg)?;
            scan::write_report(&r, scan::H1_COLUMNS, cfg.format, &mut sink)?;
            r.failed
        }
        ScanKind::H2 => {
            let r = scan::cmd_scan_h2(&cfg)?;
            scan::write_report(&r, scan::H2_COLUMNS, cfg.format, &mut sink)?;
            r.failed
        }
        ScanKind::Depth => {
            let r = scan::cmd_depth_census(&cfg)?;
            scan::write_report(&r, scan::DEPTH_COLUMNS, cfg.format, &mut sink)?;
            r.failed
        }
        ScanKind::Rees => {
            let r = scan::cmd_rees_verify(&cfg)?;
            scan::write_report(&r, scan::REES_COLUMNS, cfg.format, &mut sink)?;
            r.failed
        }
    };
    sink.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(!failed)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Reproduce { format } => reproduce(format),
        Command::Hs { ideal, window } => print_outcome(zlab::cmd_hs(&ideal, window)?),
        Command::Depth { ideal, window } => print_outcome(zlab::cmd_depth(&ideal, window)?),
        Command::Factor { input } => print_outcome(zlab::cmd_factor(&input)?),
        Command::Transform { ideal } => print_outcome(zlab::cmd_transform(&ideal)?),
        Command::Generic { degrees } => print_outcome(zlab::cmd_generic(&degrees)?),
        Command::Rees { ideal, family } => {
            let family = match family {
                FamilyArg::Auto => None,
                FamilyArg::Increasing => Some(Family::Increasing),
                FamilyArg::Decreasing => Some(Family::Decreasing),
                FamilyArg::Generic => Some(Family::Generic),
            };
            print_outcome(zlab::cmd_rees(&ideal, family)?)
        }
        Command::Scan {
            kind,
            dmax,
            admax,
            seed,
            samples,
            window,
            out,
            format,
            jobs,
        } => {
            let cfg = ScanConfig {
                dmax,
                admax,
                window,
                seed,
                mode: samples.map_or(Mode::Exhaustive, |count| Mode::Sampled { count }),
                format,
                jobs,
            };
            run_scan(kind, cfg, out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("zlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

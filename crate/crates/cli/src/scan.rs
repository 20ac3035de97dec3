//! Census scans over lex-segment ideals.

use std::collections::BTreeMap;
use std::io::Write;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use zlab_core::hilbert::{self, StabilizationConfig};
use zlab_core::rees::{self, SampleCaps};
use zlab_core::{census, ColumnSequence, DepthClassifier, DepthConfig};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    H1,
    H2,
    Depth,
    Rees,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled { count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanConfig {
    pub dmax: usize,
    pub admax: u64,
    pub window: usize,
    pub seed: u64,
    pub mode: Mode,
    pub format: Format,
    /// Worker threads; 0 lets rayon decide.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            dmax: 5,
            admax: 10,
            window: hilbert::DEFAULT_WINDOW,
            seed: 0,
            mode: Mode::Exhaustive,
            format: Format::Json,
            jobs: 0,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.window == 0 {
            return Err(CliError::Usage("window must be at least 1".into()));
        }
        if matches!(self.mode, Mode::Sampled { count: 0 }) {
            return Err(CliError::Usage("sample count must be at least 1".into()));
        }
        Ok(())
    }

    /// The census, or a seeded sample of it in census order.
    pub fn population(&self) -> Vec<ColumnSequence> {
        let all = census::lex_ideals(self.dmax, self.admax);
        match self.mode {
            Mode::Exhaustive => all,
            Mode::Sampled { count } if count >= all.len() => all,
            Mode::Sampled { count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let mut picked = index::sample(&mut rng, all.len(), count).into_vec();
                picked.sort_unstable();
                picked.into_iter().map(|i| all[i].clone()).collect()
            }
        }
    }

    fn run<T: Send, F: Fn(&ColumnSequence) -> T + Sync>(&self, f: F) -> Result<Vec<T>, CliError> {
        let ideals = self.population();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
        Ok(pool.install(|| ideals.par_iter().map(&f).collect()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport<R> {
    pub scan: ScanKind,
    pub config: ScanConfig,
    pub summary: BTreeMap<String, i128>,
    pub rows: Vec<R>,
    /// A failed theorem check: the scan reports it and the process exits 1.
    pub failed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Row {
    pub ideal: String,
    pub d: usize,
    pub mu: usize,
    pub lambda: i128,
    pub h1: i128,
    pub bound: i128,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H2Row {
    pub ideal: String,
    pub d: usize,
    pub h0: i128,
    pub h1: i128,
    pub h2: i128,
    pub h_len: usize,
    pub cm: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthRow {
    pub ideal: String,
    pub d: usize,
    pub depth: u8,
    pub certainty: String,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReesRow {
    pub ideal: String,
    pub family: String,
    pub basis_size: usize,
    pub buchberger_ok: bool,
    pub toric_ok: bool,
    pub toric_violations: usize,
    pub normal: bool,
    pub integrally_closed: bool,
}

pub const H1_COLUMNS: &[&str] = &["ideal", "d", "mu", "lambda", "h1", "bound", "ok"];
pub const H2_COLUMNS: &[&str] = &["ideal", "d", "h0", "h1", "h2", "h_len", "cm"];
pub const DEPTH_COLUMNS: &[&str] = &["ideal", "d", "depth", "certainty", "certificate"];
pub const REES_COLUMNS: &[&str] = &[
    "ideal",
    "family",
    "basis_size",
    "buchberger_ok",
    "toric_ok",
    "toric_violations",
    "normal",
    "integrally_closed",
];

fn stabilization(cfg: &ScanConfig) -> StabilizationConfig {
    StabilizationConfig {
        window: cfg.window,
        ..StabilizationConfig::default()
    }
}

fn series(cfg: &ScanConfig, a: &ColumnSequence) -> Result<hilbert::HilbertSeries, String> {
    hilbert::hilbert_series_with(a, stabilization(cfg)).map_err(|e| format!("{a}: {e}"))
}

fn collect<T>(rows: Vec<Result<T, String>>) -> Result<Vec<T>, CliError> {
    rows.into_iter().collect::<Result<_, _>>().map_err(CliError::Math)
}

pub fn cmd_scan_h1(cfg: &ScanConfig) -> Result<ScanReport<H1Row>, CliError> {
    cfg.validate()?;
    let rows = collect(cfg.run(|a| {
        let hs = series(cfg, a)?;
        let mu = a.mu() as i128;
        let bound = (mu - 1) * (mu - 2) / 2;
        Ok(H1Row {
            ideal: a.to_string(),
            d: a.d(),
            mu: a.mu(),
            lambda: hs.lambda(),
            h1: hs.h_at(1),
            bound,
            ok: hilbert::h1_bound_check(a, &hs),
        })
    })?)?;
    let violations = rows.iter().filter(|r| !r.ok).count() as i128;
    let mut summary = BTreeMap::new();
    summary.insert("ideals".into(), rows.len() as i128);
    summary.insert("violations".into(), violations);
    if let Some(slack) = rows.iter().map(|r| r.h1 - r.bound).min() {
        summary.insert("min_slack".into(), slack);
    }
    Ok(ScanReport {
        scan: ScanKind::H1,
        config: cfg.clone(),
        summary,
        rows,
        failed: violations > 0,
    })
}

/// Report-only: negative `h₂` values are listed, never treated as failures.
pub fn cmd_scan_h2(cfg: &ScanConfig) -> Result<ScanReport<H2Row>, CliError> {
    cfg.validate()?;
    let rows = collect(cfg.run(|a| {
        let hs = series(cfg, a)?;
        Ok(H2Row {
            ideal: a.to_string(),
            d: a.d(),
            h0: hs.h_at(0),
            h1: hs.h_at(1),
            h2: hilbert::h2_report(&hs),
            h_len: hs.h().len(),
            cm: hs.is_cohen_macaulay(),
        })
    })?)?;
    let mut summary = BTreeMap::new();
    summary.insert("ideals".into(), rows.len() as i128);
    summary.insert("negative_h2".into(), rows.iter().filter(|r| r.h2 < 0).count() as i128);
    summary.insert("zero_h2".into(), rows.iter().filter(|r| r.h2 == 0).count() as i128);
    if let Some(min) = rows.iter().map(|r| r.h2).min() {
        summary.insert("min_h2".into(), min);
    }
    Ok(ScanReport {
        scan: ScanKind::H2,
        config: cfg.clone(),
        summary,
        rows,
        failed: false,
    })
}

pub fn cmd_depth_census(cfg: &ScanConfig) -> Result<ScanReport<DepthRow>, CliError> {
    cfg.validate()?;
    let classifier = DepthClassifier::new(DepthConfig {
        stabilization: stabilization(cfg),
        ..DepthConfig::default()
    });
    let rows = collect(cfg.run(|a| {
        let v = classifier.classify(a).map_err(|e| format!("{a}: {e}"))?;
        Ok(DepthRow {
            ideal: a.to_string(),
            d: a.d(),
            depth: v.depth,
            certainty: v.certainty.to_string(),
            certificate: v.certificate,
        })
    })?)?;
    let mut summary = BTreeMap::new();
    summary.insert("ideals".into(), rows.len() as i128);
    for r in &rows {
        let name = r.certificate.split_whitespace().next().unwrap_or("");
        *summary
            .entry(format!("depth={} {} {}", r.depth, r.certainty, name))
            .or_insert(0) += 1;
    }
    Ok(ScanReport {
        scan: ScanKind::Depth,
        config: cfg.clone(),
        summary,
        rows,
        failed: false,
    })
}

/// Runs every eligible basis family on every ideal of the population.
pub fn cmd_rees_verify(cfg: &ScanConfig) -> Result<ScanReport<ReesRow>, CliError> {
    cfg.validate()?;
    let per_ideal = collect(cfg.run(|a| {
        rees::eligible_families(a)
            .into_iter()
            .map(|family| {
                let r = rees::verify_family(a, family, SampleCaps::default_for(a))
                    .map_err(|e| format!("{a}: {e}"))?;
                Ok(ReesRow {
                    ideal: a.to_string(),
                    family: family.to_string(),
                    basis_size: r.basis.len(),
                    buchberger_ok: r.buchberger_ok,
                    toric_ok: r.toric_sample_ok,
                    toric_violations: r.toric_violations,
                    normal: r.normal,
                    integrally_closed: r.integrally_closed,
                })
            })
            .collect::<Result<Vec<_>, String>>()
    })?)?;
    let rows: Vec<ReesRow> = per_ideal.into_iter().flatten().collect();
    let failures = rows.iter().filter(|r| !(r.buchberger_ok && r.toric_ok)).count() as i128;
    let mut summary = BTreeMap::new();
    summary.insert("runs".into(), rows.len() as i128);
    summary.insert("failures".into(), failures);
    for r in &rows {
        let key = format!("{} normal={} closed={}", r.family, r.normal, r.integrally_closed);
        *summary.entry(key).or_insert(0) += 1;
    }
    Ok(ScanReport {
        scan: ScanKind::Rees,
        config: cfg.clone(),
        summary,
        rows,
        failed: failures > 0,
    })
}

/// JSON carries the whole report, CSV only the rows under a fixed header.
pub fn write_report<R: Serialize>(
    report: &ScanReport<R>,
    columns: &[&str],
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report).map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(out).map_err(|e| CliError::Io(e.to_string()))?;
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            let io = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(columns).map_err(io)?;
            for row in &report.rows {
                w.serialize(row).map_err(io)?;
            }
            w.flush().map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    Ok(())
}

//! Reproduction checks, single-ideal reports and census scans behind the `zlab` binary.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical mismatch, 2 on a usage error.

pub mod reproduce;
pub mod scan;

use serde_json::{json, Value};
use thiserror::Error;
use zlab_core::contracted::{self, DivisorLedger};
use zlab_core::genforms;
use zlab_core::hilbert::{self, StabilizationConfig};
use zlab_core::lexseg;
use zlab_core::rees::{self, Family, SampleCaps};
use zlab_core::{ColumnSequence, DepthClassifier, DepthConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("mismatch: {0}")]
    Math(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

/// A JSON report and whether all of its internal checks passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

pub fn parse_ideal(s: &str) -> Result<ColumnSequence, CliError> {
    let a: ColumnSequence = s.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
    if a.is_unit() {
        return Err(CliError::Usage("the unit ideal is not m-primary".into()));
    }
    Ok(a)
}

fn stabilization(window: usize) -> Result<StabilizationConfig, CliError> {
    if window == 0 {
        return Err(CliError::Usage("window must be at least 1".into()));
    }
    Ok(StabilizationConfig {
        window,
        ..StabilizationConfig::default()
    })
}

fn math<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Math(e.to_string())
}

pub fn cmd_hs(input: &str, window: usize) -> Result<Outcome, CliError> {
    let a = parse_ideal(input)?;
    let hs = hilbert::hilbert_series_with(&a, stabilization(window)?).map_err(math)?;
    let ok = hs.lambda() == a.colength() as i128;
    Ok(Outcome {
        report: json!({
            "ideal": a.to_string(),
            "generators": a.minimal_generators().to_string(),
            "colength": a.colength(),
            "h": hs.h(),
            "series": hs.to_string(),
            "multiplicity": hs.multiplicity(),
            "cohen_macaulay": hs.is_cohen_macaulay(),
            "stabilized_at": hs.stabilized_at(),
        }),
        ok,
    })
}

pub fn cmd_depth(input: &str, window: usize) -> Result<Outcome, CliError> {
    let a = parse_ideal(input)?;
    let classifier = DepthClassifier::new(DepthConfig {
        stabilization: stabilization(window)?,
        ..DepthConfig::default()
    });
    let v = classifier.classify(&a).map_err(math)?;
    Ok(Outcome {
        report: json!({ "ideal": a.to_string(), "verdict": v }),
        ok: true,
    })
}

/// Accepts a divisor ledger (`d=…; form …`) or a contracted monomial ideal.
pub fn cmd_factor(input: &str) -> Result<Outcome, CliError> {
    let (ledger, monomial) = if input.trim_start().starts_with("d=") {
        let l: DivisorLedger = input.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
        (l, None)
    } else {
        let a = parse_ideal(input)?;
        let l = contracted::ledger_from_monomial(&a).map_err(|e| CliError::Usage(e.to_string()))?;
        (l, Some(a))
    };
    let z = contracted::zariski_factor(&ledger);
    let routes = contracted::colength_routes(&ledger);
    let hs = contracted::hilbert_series_composite(&ledger).map_err(math)?;
    let e = contracted::multiplicity_composite(&ledger).map_err(math)?;
    let depth = contracted::depth_composite(&ledger, &DepthClassifier::default()).map_err(math)?;
    let mut ok = routes.from_factors == routes.from_gcd_degrees && e == hs.multiplicity();
    let mut report = json!({
        "ledger": ledger.to_string(),
        "m_exponent": z.m_exp,
        "factors": z.factors.iter().map(|(f, l)| json!({"form": f.to_string(), "lex": l.to_string()})).collect::<Vec<_>>(),
        "colength": routes,
        "h": hs.h(),
        "multiplicity": e,
        "depth": depth,
    });
    if let Some(a) = monomial {
        let f = contracted::monomial_zariski(&a).map_err(math)?;
        let rebuilt = f.reconstruct();
        let direct = hilbert::hilbert_series(&a).map_err(math)?;
        ok &= rebuilt == a && direct.h() == hs.h();
        report["reconstructed"] = json!(rebuilt.to_string());
    }
    Ok(Outcome { report, ok })
}

pub fn cmd_transform(input: &str) -> Result<Outcome, CliError> {
    let a = parse_ideal(input)?;
    let profile = lexseg::blocks(&a).map_err(|e| CliError::Usage(e.to_string()))?;
    let t = lexseg::transform(&a).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Outcome {
        report: json!({
            "ideal": a.to_string(),
            "blocks": profile,
            "shape": lexseg::transform_shape(&profile),
            "transform": t.to_string(),
            "transform_generators": t.minimal_generators().to_string(),
        }),
        ok: t.is_unit() || t.colength() < a.colength(),
    })
}

pub fn parse_degrees(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("bad degree {t:?}")))
        })
        .collect()
}

pub fn cmd_generic(input: &str) -> Result<Outcome, CliError> {
    let degrees = parse_degrees(input)?;
    let hs = genforms::generic_hs(&degrees).map_err(|e| CliError::Usage(e.to_string()))?;
    let profile = genforms::delta_profile(&hs).map_err(math)?;
    let lex = profile.blocks().to_lex();
    let back = genforms::reconstruct_degrees(&profile).map_err(math)?;
    let round = genforms::delta_profile(&genforms::generic_hs(&back).map_err(math)?).map_err(math)?;
    let ok = round == profile && genforms::graded_hilbert_function(&lex) == hs;
    Ok(Outcome {
        report: json!({
            "degrees": degrees,
            "hilbert_function": hs,
            "delta": genforms::delta(&hs),
            "profile": profile,
            "lex": lex.to_string(),
            "lex_generators": lex.minimal_generators().to_string(),
            "reconstructed_degrees": back,
        }),
        ok,
    })
}

/// `family = None` picks the first eligible family (increasing, generic, decreasing).
pub fn cmd_rees(input: &str, family: Option<Family>) -> Result<Outcome, CliError> {
    let a = parse_ideal(input)?;
    let family = match family {
        Some(f) => f,
        None => rees::auto_family(&a).ok_or_else(|| CliError::Usage(format!("no basis family applies to {a}")))?,
    };
    let caps = SampleCaps::default_for(&a);
    let r = rees::verify_family(&a, family, caps).map_err(|e| match e {
        rees::ReesError::Precondition { .. } => CliError::Usage(e.to_string()),
        other => math(other),
    })?;
    Ok(Outcome {
        report: json!({
            "ideal": a.to_string(),
            "family": family,
            "basis": r.basis.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "order_weights": r.order_weights,
            "buchberger_ok": r.buchberger_ok,
            "toric_sample_ok": r.toric_sample_ok,
            "normal": r.normal,
            "integrally_closed": r.integrally_closed,
            "caps": caps,
        }),
        ok: r.buchberger_ok && r.toric_sample_ok,
    })
}

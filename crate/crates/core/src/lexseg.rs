//! Lex-segment ideals: generator blocks, the transform `T(L)` and depth of `gr_L(R)`.
//!
//! The depth classifier combines exact criteria. Cohen–Macaulayness is read
//! from the Hilbert series. Positive depth comes from reduction equalities,
//! block-profile conditions, the transform recursion and (for contracted
//! ideals) the Zariski factors. Depth zero is only ever reported when some
//! power of the ideal fails to be Ratliff–Rush closed.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use serde::Serialize;
use thiserror::Error;

use crate::contracted;
use crate::hilbert::{self, HilbertError, HilbertSeries, StabilizationConfig};
use crate::staircase::{ColumnSequence, Monomial, MonomialGeneratorSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("{0} is not a lex-segment ideal")]
    NotLex(ColumnSequence),
    #[error("{0} is not contracted")]
    NotContracted(ColumnSequence),
    #[error("the unit ideal has no depth")]
    UnitIdeal,
    #[error("{generator} is not a minimal generator of {ideal}")]
    NotAGenerator {
        generator: Monomial,
        ideal: ColumnSequence,
    },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

/// Generator counts per degree. `p[0] = |B₁| - 1`, `p[k] = |B_(k+1)|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockProfile {
    pub order: u64,
    pub p: Vec<u64>,
}

impl BlockProfile {
    /// Number of blocks after the first one.
    pub fn s(&self) -> usize {
        self.p.len() - 1
    }

    /// `p_i` with the 1-based indexing of the block decomposition.
    pub fn p_i(&self, i: usize) -> u64 {
        self.p[i - 1]
    }

    /// The lex-segment ideal with this profile.
    pub fn to_lex(&self) -> ColumnSequence {
        let mut a = Vec::with_capacity(self.order as usize + 1);
        a.push(0);
        for (k, &count) in self.p.iter().enumerate() {
            for _ in 0..count {
                let i = a.len() as u64;
                a.push(i + k as u64);
            }
        }
        ColumnSequence::new(a).expect("block profile yields an increasing sequence")
    }
}

pub fn blocks(a: &ColumnSequence) -> Result<BlockProfile, LexError> {
    if a.is_unit() || !a.is_contracted() {
        return Err(LexError::NotContracted(a.clone()));
    }
    let order = a.order();
    let degrees: Vec<u64> = a.minimal_generators().iter().map(Monomial::degree).collect();
    let top = *degrees.iter().max().unwrap();
    let mut p = vec![0u64; (top - order + 1) as usize];
    for deg in degrees {
        p[(deg - order) as usize] += 1;
    }
    p[0] -= 1;
    Ok(BlockProfile { order, p })
}

/// `T(L)` in the variables `(z, y)`, with `z` in the role of `x`. For `L = m^d` this is the unit ideal.
pub fn transform(a: &ColumnSequence) -> Result<ColumnSequence, LexError> {
    if !a.is_lex() || a.is_unit() {
        return Err(LexError::NotLex(a.clone()));
    }
    let profile = blocks(a)?;
    let d = profile.order;
    let mut gens = vec![Monomial::new(d - profile.p_i(1), 0)];
    let mut cum = profile.p_i(1);
    for i in 2..=profile.p.len() {
        let pi = profile.p_i(i);
        cum += pi;
        if pi != 0 {
            gens.push(Monomial::new(d - cum, i as u64 - 1));
        }
    }
    if gens.iter().any(|m| m.x == 0 && m.y == 0) {
        return Ok(ColumnSequence::unit());
    }
    Ok(ColumnSequence::from_generators(&gens).expect("transform contains z-power and y-power"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformShape {
    LexInZ,
    LexInY,
    Both,
    Neither,
}

pub fn transform_shape(profile: &BlockProfile) -> TransformShape {
    let tail = &profile.p[1..];
    let in_z = tail.iter().all(|&p| p <= 1);
    let in_y = tail.iter().all(|&p| p != 0);
    match (in_z, in_y) {
        (true, true) => TransformShape::Both,
        (true, false) => TransformShape::LexInZ,
        (false, true) => TransformShape::LexInY,
        (false, false) => TransformShape::Neither,
    }
}

/// Ideal generated by all products of generators of `j` and `l`.
pub fn product_ideal(j: &MonomialGeneratorSet, l: &ColumnSequence) -> ColumnSequence {
    let lg = l.minimal_generators();
    let prods: Vec<Monomial> = j
        .iter()
        .flat_map(|g| lg.iter().map(move |h| Monomial::new(g.x + h.x, g.y + h.y)))
        .collect();
    ColumnSequence::from_generators(&prods).expect("product of m-primary ideals")
}

/// `L² = JL` for a set `J` of minimal generators of `L`.
pub fn reduction_equality(a: &ColumnSequence, j: &MonomialGeneratorSet) -> Result<bool, LexError> {
    let gens = a.minimal_generators();
    if let Some(g) = j.iter().find(|g| !gens.iter().any(|h| h == *g)) {
        return Err(LexError::NotAGenerator {
            generator: *g,
            ideal: a.clone(),
        });
    }
    Ok(a.power(2) == product_ideal(j, a))
}

/// `(x^d, x^(d-i) y^(a_i), y^(a_d))` as a generator set.
pub fn three_generator_reduction(a: &ColumnSequence, i: usize) -> MonomialGeneratorSet {
    let d = a.d();
    MonomialGeneratorSet::new([
        Monomial::new(d as u64, 0),
        Monomial::new((d - i) as u64, a.entries()[i]),
        Monomial::new(0, a.a_d()),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatliffRush {
    pub closure: ColumnSequence,
    pub closed: bool,
    /// The last two partial unions agreed.
    pub stable: bool,
    /// Least `k` whose colon `(I^(k+1) : I^k)` already exceeds `I`.
    pub witness_k: Option<u32>,
}

/// `∪_{k ≤ kmax} (I^(k+1) : I^k)`.
pub fn ratliff_rush(a: &ColumnSequence, kmax: u32) -> RatliffRush {
    let kmax = kmax.max(1);
    let mut union = a.clone();
    let mut previous = a.clone();
    let mut stable = false;
    let mut witness_k = None;
    let mut pow_k = a.clone();
    for k in 1..=kmax {
        let pow_k1 = pow_k.min_plus_product(a);
        let colon = pow_k1.colon(&pow_k);
        union = union.sum(&colon);
        if witness_k.is_none() && union != *a {
            witness_k = Some(k);
        }
        stable = k > 1 && union == previous;
        previous = union.clone();
        pow_k = pow_k1;
    }
    RatliffRush {
        closed: union == *a,
        closure: union,
        stable,
        witness_k,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certainty {
    Exact,
    LowerBound,
    Heuristic,
}

impl fmt::Display for Certainty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certainty::Exact => "exact",
            Certainty::LowerBound => "lower-bound",
            Certainty::Heuristic => "heuristic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchWindow {
    pub kmax: u32,
    pub power_probe: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthVerdict {
    pub depth: u8,
    pub certainty: Certainty,
    pub certificate: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<SearchWindow>,
}

impl DepthVerdict {
    fn exact(depth: u8, certificate: impl Into<String>) -> Self {
        Self {
            depth,
            certainty: Certainty::Exact,
            certificate: certificate.into(),
            window: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.certainty == Certainty::Exact
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthConfig {
    pub stabilization: StabilizationConfig,
    pub kmax: u32,
    pub power_probe: u32,
    pub max_transform_depth: u32,
}

impl Default for DepthConfig {
    fn default() -> Self {
        Self {
            stabilization: StabilizationConfig::default(),
            kmax: 6,
            power_probe: 4,
            max_transform_depth: 10,
        }
    }
}

/// Depth classifier with a shared memo table keyed by column sequence.
#[derive(Debug, Default)]
pub struct DepthClassifier {
    cfg: DepthConfig,
    memo: Mutex<HashMap<ColumnSequence, DepthVerdict>>,
}

pub fn depth_classify(a: &ColumnSequence, window: usize) -> Result<DepthVerdict, LexError> {
    let mut cfg = DepthConfig::default();
    cfg.stabilization.window = window;
    DepthClassifier::new(cfg).classify(a)
}

impl DepthClassifier {
    pub fn new(cfg: DepthConfig) -> Self {
        Self {
            cfg,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &DepthConfig {
        &self.cfg
    }

    pub fn classify(&self, a: &ColumnSequence) -> Result<DepthVerdict, LexError> {
        self.classify_at(a, 0)
    }

    fn classify_at(&self, a: &ColumnSequence, level: u32) -> Result<DepthVerdict, LexError> {
        if let Some(v) = self.memo.lock().unwrap().get(a) {
            return Ok(v.clone());
        }
        let verdict = self.compute(a, level)?;
        self.memo
            .lock()
            .unwrap()
            .insert(a.clone(), verdict.clone());
        Ok(verdict)
    }

    fn compute(&self, a: &ColumnSequence, level: u32) -> Result<DepthVerdict, LexError> {
        if a.is_unit() {
            return Err(LexError::UnitIdeal);
        }
        if a.is_integrally_closed() {
            return Ok(DepthVerdict::exact(2, "integrally-closed"));
        }
        let series = match hilbert::hilbert_series_with(a, self.cfg.stabilization) {
            Ok(hs) => Some(hs),
            Err(HilbertError::NotStabilized { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        if let Some(hs) = &series {
            if hs.is_cohen_macaulay() {
                return Ok(DepthVerdict::exact(2, "HScorta h-length"));
            }
        }
        let cm_excluded = series.is_some();
        if let Some(cert) = self.positive_depth_certificate(a, series.as_ref(), level)? {
            let certainty = if cm_excluded {
                Certainty::Exact
            } else {
                Certainty::LowerBound
            };
            return Ok(DepthVerdict {
                depth: 1,
                certainty,
                certificate: cert,
                window: None,
            });
        }
        for n in 1..=self.cfg.power_probe {
            let rr = ratliff_rush(&a.power(n), self.cfg.kmax);
            if !rr.closed {
                return Ok(DepthVerdict::exact(
                    0,
                    format!(
                        "ratliff-rush n={n} k={} not closed",
                        rr.witness_k.expect("non-closed union has a witness")
                    ),
                ));
            }
        }
        Ok(DepthVerdict {
            depth: 1,
            certainty: Certainty::Heuristic,
            certificate: "ratliff-rush probe found closed powers".into(),
            window: Some(SearchWindow {
                kmax: self.cfg.kmax,
                power_probe: self.cfg.power_probe,
            }),
        })
    }

    /// A named reason for `depth gr_I(R) > 0`, if one applies.
    fn positive_depth_certificate(
        &self,
        a: &ColumnSequence,
        series: Option<&HilbertSeries>,
        level: u32,
    ) -> Result<Option<String>, LexError> {
        if a.is_lex() {
            return self.lex_certificate(a, series, level);
        }
        if a.is_contracted() {
            let factors = contracted::monomial_zariski(a)
                .map_err(|e| LexError::Inconsistent(e.to_string()))?;
            let mut reasons = Vec::new();
            for (name, l) in factors.lex_factors() {
                if l.d() <= 2 {
                    reasons.push(format!("{name}:order<=2"));
                    continue;
                }
                let v = self.classify_at(&l, level)?;
                if v.depth == 0 || !v.is_exact() {
                    return Ok(None);
                }
                reasons.push(format!("{name}:{}", v.certificate));
            }
            return Ok(Some(format!("zariski-factors[{}]", reasons.join("; "))));
        }
        Ok(None)
    }

    fn lex_certificate(
        &self,
        a: &ColumnSequence,
        series: Option<&HilbertSeries>,
        level: u32,
    ) -> Result<Option<String>, LexError> {
        let not_cm = series.is_some();
        let b = a.differences();
        if b.len() >= 2 && b[1..].windows(2).all(|w| w[0] >= w[1]) {
            if !reduction_equality(a, &three_generator_reduction(a, 1))? {
                return Err(LexError::Inconsistent(format!(
                    "{a}: b_2 >= ... >= b_d but L^2 != (x^d, x^(d-1)y^(a_1), y^(a_d))L"
                )));
            }
            return Ok(Some("redn1".into()));
        }
        let profile = blocks(a)?;
        let tail = &profile.p[1..];
        let increasing = !tail.is_empty() && tail[0] > 0 && tail.windows(2).all(|w| w[0] <= w[1]);
        let decreasing = tail.windows(2).all(|w| w[0] >= w[1]);
        if (increasing || decreasing) && not_cm {
            return Err(LexError::Inconsistent(format!(
                "{a}: monotone block profile {:?} but gr is not Cohen-Macaulay",
                profile.p
            )));
        }
        for i in 0..=a.d() {
            if reduction_equality(a, &three_generator_reduction(a, i))? {
                return Ok(Some(format!("redndepth i={i}")));
            }
        }
        if level >= self.cfg.max_transform_depth {
            return Ok(None);
        }
        let t = transform(a)?;
        if t.is_unit() {
            return Ok(None);
        }
        let next = match transform_shape(&profile) {
            TransformShape::LexInZ | TransformShape::Both => t,
            TransformShape::LexInY => t.transpose(),
            TransformShape::Neither => return Ok(None),
        };
        let v = self.classify_at(&next, level + 1)?;
        if !v.is_exact() || v.depth == 0 {
            return Ok(None);
        }
        if v.depth == 2 && not_cm {
            return Err(LexError::Inconsistent(format!(
                "{a} is not Cohen-Macaulay but its transform {next} is"
            )));
        }
        Ok(Some(format!("transform-recursion -> {next} ({})", v.certificate)))
    }
}

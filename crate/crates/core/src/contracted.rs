//! Contracted ideals described by the linear forms dividing `GCD(I_h)`.
//!
//! A contracted ideal of order `d` is determined by `d` and the forms
//! `f_h = GCD(I_h)` for `h ≥ d`, since `I_h = f_h R_(h-s_h)`. A
//! [`DivisorLedger`] stores, for every linear form, its exponent in
//! `f_(d+j)`. From a ledger we get the Zariski factors (one lex-segment ideal
//! per form), the colength, the Hilbert series and the depth.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::hilbert::{self, HilbertError, HilbertSeries};
use crate::lexseg::{Certainty, DepthClassifier, DepthVerdict, LexError};
use crate::poly::BiPoly;
use crate::staircase::ColumnSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractedError {
    #[error("{0} is not contracted")]
    NotContracted(ColumnSequence),
    #[error("invalid ledger: {0}")]
    InvalidLedger(String),
    #[error("invalid Hilbert-Burch data: {0}")]
    InvalidHilbertBurch(String),
    #[error("cannot parse ledger {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Depth(#[from] LexError),
}

/// `y`, or `x + αy`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinearForm {
    Y,
    Affine(BigRational),
}

impl LinearForm {
    pub fn x() -> Self {
        LinearForm::Affine(BigRational::zero())
    }

    pub fn to_poly(&self) -> BiPoly {
        match self {
            LinearForm::Y => BiPoly::y_pow(1),
            LinearForm::Affine(a) => BiPoly::linear(a),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearForm::Y => f.write_str("y"),
            LinearForm::Affine(a) if a.is_zero() => f.write_str("x"),
            LinearForm::Affine(a) => {
                let sign = if a.is_negative() { '-' } else { '+' };
                write!(f, "x{sign}{}y", a.abs())
            }
        }
    }
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for LinearForm {
    type Err = String;

    /// `y`, `x`, `x+2y`, `x-1y`, `x+3/2y`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "y" => return Ok(LinearForm::Y),
            "x" => return Ok(LinearForm::x()),
            _ => {}
        }
        let rest = t
            .strip_prefix('x')
            .and_then(|r| r.strip_suffix('y'))
            .ok_or_else(|| format!("expected `x`, `y` or `x±αy`, got {s:?}"))?;
        let (neg, body) = match rest.as_bytes().first() {
            Some(b'+') => (false, &rest[1..]),
            Some(b'-') => (true, &rest[1..]),
            _ => return Err(format!("missing sign in {s:?}")),
        };
        let body = if body.is_empty() { "1" } else { body };
        let alpha = parse_rational(body).ok_or_else(|| format!("bad coefficient in {s:?}"))?;
        Ok(LinearForm::Affine(if neg { -alpha } else { alpha }))
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

/// Order `d` and, per linear form, its exponents in `GCD(I_(d+j))`, `j = 0, 1, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorLedger {
    order: u64,
    entries: Vec<(LinearForm, Vec<u64>)>,
}

impl DivisorLedger {
    pub fn new(order: u64, entries: Vec<(LinearForm, Vec<u64>)>) -> Result<Self, ContractedError> {
        let bad = |m: String| Err(ContractedError::InvalidLedger(m));
        let mut cleaned = Vec::with_capacity(entries.len());
        for (form, mut exps) in entries {
            if let Some(j) = exps.windows(2).position(|w| w[0] < w[1]) {
                return bad(format!("exponents of {form} increase at offset {}", j + 1));
            }
            while exps.last() == Some(&0) {
                exps.pop();
            }
            if exps.is_empty() {
                continue;
            }
            if cleaned.iter().any(|(f, _): &(LinearForm, Vec<u64>)| *f == form) {
                return bad(format!("form {form} listed twice"));
            }
            cleaned.push((form, exps));
        }
        cleaned.sort_by(|a, b| a.0.cmp(&b.0));
        let ledger = Self {
            order,
            entries: cleaned,
        };
        if ledger.s(0) > order {
            return bad(format!(
                "characteristic form degree {} exceeds order {order}",
                ledger.s(0)
            ));
        }
        if order == 0 {
            return bad("order must be positive".into());
        }
        Ok(ledger)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn entries(&self) -> &[(LinearForm, Vec<u64>)] {
        &self.entries
    }

    /// `s_j = deg f_(d+j)`.
    pub fn s(&self, j: usize) -> u64 {
        self.entries
            .iter()
            .map(|(_, e)| e.get(j).copied().unwrap_or(0))
            .sum()
    }

    /// Offsets `j` with `s_j > 0`.
    pub fn support(&self) -> usize {
        self.entries.iter().map(|(_, e)| e.len()).max().unwrap_or(0)
    }

    /// `β_i = e_i(0)`, per form.
    pub fn betas(&self) -> Vec<u64> {
        self.entries.iter().map(|(_, e)| e[0]).collect()
    }

    pub fn lex(&self) -> ColumnSequence {
        let s: Vec<u64> = (0..self.support()).map(|j| self.s(j)).collect();
        lex_from_gcd_exponents(self.order, &s)
    }
}

impl fmt::Display for DivisorLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}", self.order)?;
        for (form, exps) in &self.entries {
            let list: Vec<String> = exps.iter().map(u64::to_string).collect();
            write!(f, "; form {form}: {}", list.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for DivisorLedger {
    type Err = ContractedError;

    /// `d=5; form x+2y: 3,2,1; form x-1y: 2,2,0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: String| ContractedError::Parse {
            input: s.to_string(),
            reason,
        };
        let mut parts = s.split(';').map(str::trim).filter(|p| !p.is_empty());
        let head = parts.next().ok_or_else(|| fail("empty".into()))?;
        let order: u64 = head
            .strip_prefix("d=")
            .and_then(|d| d.trim().parse().ok())
            .ok_or_else(|| fail(format!("expected `d=<order>`, got {head:?}")))?;
        let mut entries = Vec::new();
        for part in parts {
            let body = part
                .strip_prefix("form")
                .ok_or_else(|| fail(format!("expected `form <ℓ>: e0,e1,...`, got {part:?}")))?;
            let (form, exps) = body
                .split_once(':')
                .ok_or_else(|| fail(format!("missing `:` in {part:?}")))?;
            let form: LinearForm = form.trim().parse().map_err(fail)?;
            let exps = exps
                .split(',')
                .map(|e| e.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| fail(e.to_string()))?;
            entries.push((form, exps));
        }
        DivisorLedger::new(order, entries)
    }
}

/// Lex-segment ideal of order `beta` whose GCD in degree `beta + j` is `x^(e_j)`.
pub fn lex_from_gcd_exponents(beta: u64, e: &[u64]) -> ColumnSequence {
    let e_at = |j: u64| e.get(j as usize).copied().unwrap_or(0);
    let a = (0..=beta)
        .map(|i| {
            (i..)
                .find(|&v| beta - i >= e_at(v - i))
                .expect("exponents vanish eventually")
        })
        .collect();
    ColumnSequence::new(a).expect("lex factor is strictly increasing")
}

/// The bidiagonal `d × (d+1)` matrix with `y^(b_i)` and `x + α_i y` on its diagonals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBurchData {
    b: Vec<u64>,
    alpha: Vec<BigRational>,
}

impl HilbertBurchData {
    pub fn new(b: Vec<u64>, alpha: Vec<BigRational>) -> Result<Self, ContractedError> {
        if b.is_empty() || b.len() != alpha.len() {
            return Err(ContractedError::InvalidHilbertBurch(
                "need as many α values as exponents, at least one".into(),
            ));
        }
        if b.contains(&0) {
            return Err(ContractedError::InvalidHilbertBurch("exponents must be positive".into()));
        }
        Ok(Self { b, alpha })
    }

    pub fn from_integers(b: Vec<u64>, alpha: &[i64]) -> Result<Self, ContractedError> {
        let alpha = alpha
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        Self::new(b, alpha)
    }

    pub fn d(&self) -> usize {
        self.b.len()
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn alpha(&self) -> &[BigRational] {
        &self.alpha
    }

    /// `a_k = b_1 + … + b_k`.
    pub fn a(&self, k: usize) -> u64 {
        self.b[..k].iter().sum()
    }

    pub fn has_distinct_alpha(&self) -> bool {
        let mut v = self.alpha.clone();
        v.sort();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// Minor deleting column `k` (`0 ≤ k ≤ d`): `y^(a_k) Π_{j>k} (x + α_j y)`,
    /// returned as the y-exponent and the α's of the linear factors.
    pub fn minor_factors(&self, k: usize) -> (u64, &[BigRational]) {
        (self.a(k), &self.alpha[k..])
    }

    pub fn minor_degree(&self, k: usize) -> u64 {
        self.a(k) + (self.d() - k) as u64
    }

    pub fn minor(&self, k: usize) -> BiPoly {
        let (ye, alphas) = self.minor_factors(k);
        alphas
            .iter()
            .fold(BiPoly::y_pow(ye), |acc, a| &acc * &BiPoly::linear(a))
    }

    /// Entry `(row, col)` of the matrix, rows `0..d`, columns `0..=d`.
    pub fn entry(&self, row: usize, col: usize) -> BiPoly {
        if col == row {
            BiPoly::y_pow(self.b[row])
        } else if col == row + 1 {
            BiPoly::linear(&self.alpha[row])
        } else {
            BiPoly::zero()
        }
    }
}

pub fn ledger_from_hilbert_burch(hb: &HilbertBurchData) -> DivisorLedger {
    let d = hb.d() as u64;
    let top = (0..=hb.d()).map(|k| hb.minor_degree(k)).max().unwrap();
    let mut distinct: Vec<BigRational> = hb.alpha.clone();
    distinct.sort();
    distinct.dedup();
    let entries = distinct
        .into_iter()
        .map(|alpha| {
            let exps = (0..=top - d)
                .map(|j| {
                    (0..=hb.d())
                        .filter(|&k| hb.minor_degree(k) <= d + j)
                        .map(|k| hb.alpha[k..].iter().filter(|&a| *a == alpha).count() as u64)
                        .min()
                        .expect("the minor deleting column 0 has degree d")
                })
                .collect();
            (LinearForm::Affine(alpha), exps)
        })
        .collect();
    DivisorLedger::new(d, entries).expect("minors give a valid ledger")
}

/// GCD exponents of `x` and `y` in every degree `h ≥ o(I)` of a contracted monomial ideal.
pub fn ledger_from_monomial(a: &ColumnSequence) -> Result<DivisorLedger, ContractedError> {
    if a.is_unit() || !a.is_contracted() {
        return Err(ContractedError::NotContracted(a.clone()));
    }
    let o = a.order();
    let top = a.d() as u64 + a.a_d();
    let mut ex = Vec::new();
    let mut ey = Vec::new();
    for h in o..=top {
        let members: Vec<u64> = (0..=h).filter(|&u| h - u >= a.min_y(u)).collect();
        let (lo, hi) = (members[0], *members.last().unwrap());
        if members.len() as u64 != hi - lo + 1 {
            return Err(ContractedError::Inconsistent(format!(
                "degree {h} of {a} is not a multiple of a power of m"
            )));
        }
        ex.push(lo);
        ey.push(h - hi);
    }
    DivisorLedger::new(o, vec![(LinearForm::x(), ex), (LinearForm::Y, ey)])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZariskiFactorization {
    /// Exponent of `m`, `d - s`.
    pub m_exp: u64,
    /// Lex-segment factors with the form in the role of `x`.
    pub factors: Vec<(LinearForm, ColumnSequence)>,
}

pub fn zariski_factor(ledger: &DivisorLedger) -> ZariskiFactorization {
    let factors = ledger
        .entries
        .iter()
        .map(|(form, e)| (form.clone(), lex_from_gcd_exponents(e[0], e)))
        .collect();
    ZariskiFactorization {
        m_exp: ledger.order - ledger.s(0),
        factors,
    }
}

/// Factorization `m^k · L_x · L_y` of a contracted monomial ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialFactorization {
    pub m_exp: u64,
    /// Lex in `x`.
    pub l_x: Option<ColumnSequence>,
    /// Lex with `y` in the role of `x`; `transpose()` gives it in the original variables.
    pub l_y: Option<ColumnSequence>,
}

impl MonomialFactorization {
    pub fn reconstruct(&self) -> ColumnSequence {
        let mut out = ColumnSequence::maximal_power(self.m_exp as usize);
        if let Some(l) = &self.l_x {
            out = out.min_plus_product(l);
        }
        if let Some(l) = &self.l_y {
            out = out.min_plus_product(&l.transpose());
        }
        out
    }

    /// Nontrivial factors, each as a lex-segment column sequence.
    pub fn lex_factors(&self) -> Vec<(&'static str, ColumnSequence)> {
        let mut out = Vec::new();
        if let Some(l) = &self.l_x {
            out.push(("x", l.clone()));
        }
        if let Some(l) = &self.l_y {
            out.push(("y", l.clone()));
        }
        out
    }
}

pub fn monomial_zariski(a: &ColumnSequence) -> Result<MonomialFactorization, ContractedError> {
    let z = zariski_factor(&ledger_from_monomial(a)?);
    let mut out = MonomialFactorization {
        m_exp: z.m_exp,
        l_x: None,
        l_y: None,
    };
    for (form, l) in z.factors {
        match form {
            LinearForm::Y => out.l_y = Some(l),
            _ => out.l_x = Some(l),
        }
    }
    Ok(out)
}

fn binom2(n: u64) -> u128 {
    let n = n as u128;
    n * n.saturating_sub(1) / 2
}

/// `λ(R/I)` two ways: from the factors, and as `C(d+1,2) + Σ_j s_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ColengthRoutes {
    pub from_factors: u128,
    pub from_gcd_degrees: u128,
}

pub fn colength_routes(ledger: &DivisorLedger) -> ColengthRoutes {
    let d = ledger.order;
    let z = zariski_factor(ledger);
    let from_factors = z.factors.iter().map(|(_, l)| l.colength()).sum::<u128>() + binom2(d + 1)
        - ledger
            .betas()
            .iter()
            .map(|&b| binom2(b + 1))
            .sum::<u128>();
    let from_gcd_degrees =
        binom2(d + 1) + (0..ledger.support()).map(|j| ledger.s(j) as u128).sum::<u128>();
    ColengthRoutes {
        from_factors,
        from_gcd_degrees,
    }
}

pub fn colength_composite(ledger: &DivisorLedger) -> Result<u128, ContractedError> {
    let r = colength_routes(ledger);
    if r.from_factors != r.from_gcd_degrees {
        return Err(ContractedError::Inconsistent(format!(
            "colength of {ledger}: {} from factors, {} from GCD degrees",
            r.from_factors, r.from_gcd_degrees
        )));
    }
    Ok(r.from_factors)
}

/// `HS_I = Σ HS_(L_j) + (C(d+1,2) + C(d,2)z - Σ [C(β_j+1,2) + C(β_j,2)z]) / (1-z)²`.
pub fn hilbert_series_composite(ledger: &DivisorLedger) -> Result<HilbertSeries, ContractedError> {
    let d = ledger.order;
    let mut h: Vec<i128> = vec![binom2(d + 1) as i128, binom2(d) as i128];
    for beta in ledger.betas() {
        h[0] -= binom2(beta + 1) as i128;
        h[1] -= binom2(beta) as i128;
    }
    for (_, l) in zariski_factor(ledger).factors {
        let hs = hilbert::hilbert_series(&l)?;
        if h.len() < hs.h().len() {
            h.resize(hs.h().len(), 0);
        }
        for (k, v) in hs.h().iter().enumerate() {
            h[k] += v;
        }
    }
    Ok(HilbertSeries::from_numerator(h))
}

/// `e(I) = Σ e(L_j) + d² - Σ β_j²`.
pub fn multiplicity_composite(ledger: &DivisorLedger) -> Result<i128, ContractedError> {
    let d = ledger.order as i128;
    let mut e = d * d;
    for beta in ledger.betas() {
        e -= (beta as i128).pow(2);
    }
    for (_, l) in zariski_factor(ledger).factors {
        e += hilbert::hilbert_series(&l)?.multiplicity();
    }
    Ok(e)
}

/// Minimum of the factor depths; with no factors `I` is a power of `m`.
pub fn depth_composite(
    ledger: &DivisorLedger,
    classifier: &DepthClassifier,
) -> Result<DepthVerdict, ContractedError> {
    let z = zariski_factor(ledger);
    if z.factors.is_empty() {
        return Ok(DepthVerdict {
            depth: 2,
            certainty: Certainty::Exact,
            certificate: "power of the maximal ideal".into(),
            window: None,
        });
    }
    let mut verdicts = Vec::with_capacity(z.factors.len());
    for (form, l) in &z.factors {
        verdicts.push((form, classifier.classify(l)?));
    }
    let depth = verdicts.iter().map(|(_, v)| v.depth).min().unwrap();
    let certainty = if verdicts.iter().all(|(_, v)| v.is_exact()) {
        Certainty::Exact
    } else {
        Certainty::Heuristic
    };
    let parts: Vec<String> = verdicts
        .iter()
        .map(|(f, v)| format!("{f}: depth {} ({})", v.depth, v.certificate))
        .collect();
    Ok(DepthVerdict {
        depth,
        certainty,
        certificate: format!("min over factors [{}]", parts.join("; ")),
        window: None,
    })
}

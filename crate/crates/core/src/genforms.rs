//! Hilbert series of ideals generated by generic forms, and their lex-segment ideals.

use serde::Serialize;
use thiserror::Error;

use crate::lexseg::{self, BlockProfile};
use crate::staircase::ColumnSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenformsError {
    #[error("need at least two degrees, got {0}")]
    TooFewDegrees(usize),
    #[error("degrees must be positive")]
    ZeroDegree,
    #[error("invalid delta profile: {0}")]
    InvalidProfile(String),
}

/// `|f|`: coefficients are kept while every coefficient so far is positive.
pub fn truncate_positive(f: &[i128]) -> Vec<i128> {
    let keep = f.iter().position(|&c| c <= 0).unwrap_or(f.len());
    f[..keep].to_vec()
}

/// `Δf = Σ (f_i - f_(i-1)) z^i`, including the final drop to zero.
pub fn delta(f: &[i128]) -> Vec<i128> {
    let mut out = Vec::with_capacity(f.len() + 1);
    let mut prev = 0;
    for &c in f {
        out.push(c - prev);
        prev = c;
    }
    if prev != 0 {
        out.push(-prev);
    }
    out
}

/// `|Π (1 - z^(d_i)) / (1-z)²|`, the Hilbert series of `R/I` for generic forms of these degrees.
pub fn generic_hs(degrees: &[u64]) -> Result<Vec<i128>, GenformsError> {
    if degrees.len() < 2 {
        return Err(GenformsError::TooFewDegrees(degrees.len()));
    }
    if degrees.contains(&0) {
        return Err(GenformsError::ZeroDegree);
    }
    let top: usize = degrees.iter().map(|&d| d as usize).sum();
    let mut num = vec![0i128; top + 1];
    num[0] = 1;
    for &d in degrees {
        let d = d as usize;
        for i in (d..=top).rev() {
            num[i] -= num[i - d];
        }
    }
    // dividing by (1-z) is a running sum
    for _ in 0..2 {
        for i in 1..=top {
            num[i] += num[i - 1];
        }
    }
    Ok(truncate_positive(&num))
}

/// `ΔH = 1 + … + z^(d-1) - p_1 z^d - … - p_s z^(d+s-1) - c z^(d+s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DeltaProfile {
    pub d: u64,
    pub p: Vec<u64>,
    pub c: u64,
}

impl DeltaProfile {
    pub fn new(d: u64, p: Vec<u64>, c: u64) -> Result<Self, GenformsError> {
        let profile = Self { d, p, c };
        profile.validate()?;
        Ok(profile)
    }

    pub fn validate(&self) -> Result<(), GenformsError> {
        let bad = |m: &str| Err(GenformsError::InvalidProfile(format!("{m}: {self:?}")));
        let Some(&ps) = self.p.last() else {
            return bad("no p entries");
        };
        if !self.p.windows(2).all(|w| w[0] <= w[1]) {
            return bad("p is not nondecreasing");
        }
        if self.c >= ps {
            return bad("c must be smaller than p_s");
        }
        if self.p.iter().sum::<u64>() + self.c != self.d {
            return bad("p_1 + … + p_s + c must equal d");
        }
        Ok(())
    }

    pub fn s(&self) -> usize {
        self.p.len()
    }

    /// Generator counts per degree of the associated lex-segment ideal.
    pub fn blocks(&self) -> BlockProfile {
        let mut p = self.p.clone();
        if self.c > 0 {
            p.push(self.c);
        }
        BlockProfile { order: self.d, p }
    }

    /// `ΔH` as a coefficient list.
    pub fn delta_h(&self) -> Vec<i128> {
        let mut out = vec![1i128; self.d as usize];
        out.extend(self.p.iter().map(|&p| -(p as i128)));
        if self.c > 0 {
            out.push(-(self.c as i128));
        }
        out
    }
}

/// Reads `(d, p, c)` off a Hilbert series produced by [`generic_hs`].
pub fn delta_profile(hs: &[i128]) -> Result<DeltaProfile, GenformsError> {
    let dh = delta(hs);
    let d = dh.iter().take_while(|&&c| c == 1).count();
    if d == 0 || dh[d..].iter().any(|&c| c > 0) {
        return Err(GenformsError::InvalidProfile(format!("ΔH = {dh:?} has the wrong shape")));
    }
    let q: Vec<u64> = dh[d..].iter().map(|&c| (-c) as u64).collect();
    let profile = if q.windows(2).all(|w| w[0] <= w[1]) {
        DeltaProfile {
            d: d as u64,
            p: q,
            c: 0,
        }
    } else {
        let (&c, p) = q.split_last().expect("non-monotone q has two entries");
        DeltaProfile {
            d: d as u64,
            p: p.to_vec(),
            c,
        }
    };
    profile.validate()?;
    Ok(profile)
}

pub fn generic_lex(degrees: &[u64]) -> Result<ColumnSequence, GenformsError> {
    Ok(delta_profile(&generic_hs(degrees)?)?.blocks().to_lex())
}

/// `dim_k (R/L)_h` for `h = 0, 1, …` until it vanishes.
pub fn graded_hilbert_function(a: &ColumnSequence) -> Vec<i128> {
    let top = a.d() as u64 + a.a_d();
    let mut out: Vec<i128> = (0..=top)
        .map(|h| (0..=h).filter(|&u| h - u < a.min_y(u)).count() as i128)
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Profile of a lex-segment ideal, if it is the lex ideal of some generic forms.
pub fn generic_profile_of(a: &ColumnSequence) -> Option<DeltaProfile> {
    if !a.is_lex() || a.is_unit() {
        return None;
    }
    let b = lexseg::blocks(a).ok()?;
    let candidates = [
        DeltaProfile {
            d: b.order,
            p: b.p.clone(),
            c: 0,
        },
        DeltaProfile {
            d: b.order,
            p: b.p[..b.p.len() - 1].to_vec(),
            c: *b.p.last().unwrap(),
        },
    ];
    candidates.into_iter().find(|p| p.validate().is_ok())
}

/// A degree list whose generic Hilbert series has this profile.
pub fn reconstruct_degrees(profile: &DeltaProfile) -> Result<Vec<u64>, GenformsError> {
    profile.validate()?;
    let mut out = reconstruct(profile);
    out.sort_unstable();
    Ok(out)
}

fn reconstruct(profile: &DeltaProfile) -> Vec<u64> {
    let d1 = profile.d;
    let s = profile.s();
    let ps = profile.p[s - 1];
    if ps == 1 {
        let zeros = profile.p.iter().filter(|&&p| p == 0).count() as u64;
        return vec![d1, d1 + zeros];
    }
    // j = max { n : p_n > p_(n-1) } with p_0 = 0
    let j = (1..=s)
        .rev()
        .find(|&n| profile.p[n - 1] > if n == 1 { 0 } else { profile.p[n - 2] })
        .expect("p_s > 0");
    let pj = profile.p[j - 1];
    let total = profile.c + (s - j + 1) as u64;
    let (q, r) = (total / (pj - 1), total % (pj - 1));
    let mut p: Vec<u64> = profile.p[..j - 1].to_vec();
    p.extend(std::iter::repeat_n(pj - 1, s + q as usize - j + 1));
    let reduced = DeltaProfile { d: d1, p, c: r };
    debug_assert!(reduced.validate().is_ok(), "{reduced:?}");
    let mut out = reconstruct(&reduced);
    out.push(d1 + j as u64 - 1);
    out
}

//! Hilbert–Samuel functions and Hilbert series of `gr_I(R)` for monomial ideals.
//!
//! `P(n) = λ(R/Iⁿ)` is read off the column sequence of `Iⁿ`, `HF(n) = P(n+1) - P(n)`
//! and the numerator `h(z) = (1-z)² Σ HF(n) zⁿ`. Powers are computed one at a
//! time until the numerator has been zero for a full window and one extra
//! power confirms it.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::staircase::{ColumnSequence, StaircaseError};

pub const DEFAULT_WINDOW: usize = 3;
pub const DEFAULT_MAX_POWER: u32 = 96;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("the unit ideal has no associated graded ring")]
    UnitIdeal,
    #[error("Hilbert series did not stabilize within {max_power} powers (window {window}); lengths so far: {lengths:?}")]
    NotStabilized {
        window: usize,
        max_power: u32,
        lengths: Vec<u128>,
    },
    #[error("differences sequence is not monotone")]
    NotMonotone,
    #[error(transparent)]
    Staircase(#[from] StaircaseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizationConfig {
    pub window: usize,
    pub max_power: u32,
}

impl Default for StabilizationConfig {
    fn default() -> Self {
        Self {
            window: DEFAULT_WINDOW,
            max_power: DEFAULT_MAX_POWER,
        }
    }
}

/// `h(z)/(1-z)²`. Trailing entries of `h` may be negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    h: Vec<i128>,
    /// Power at which the Hilbert–Samuel polynomial was confirmed, `None` for closed forms.
    #[serde(skip_serializing_if = "Option::is_none")]
    stabilized_at: Option<u32>,
}

impl HilbertSeries {
    /// Builds a series from a numerator; trailing zeros are dropped.
    pub fn from_numerator(mut h: Vec<i128>) -> Self {
        while h.last() == Some(&0) {
            h.pop();
        }
        Self {
            h,
            stabilized_at: None,
        }
    }

    pub fn h(&self) -> &[i128] {
        &self.h
    }

    pub fn h_at(&self, k: usize) -> i128 {
        self.h.get(k).copied().unwrap_or(0)
    }

    pub fn stabilized_at(&self) -> Option<u32> {
        self.stabilized_at
    }

    /// `λ(R/I) = h₀`.
    pub fn lambda(&self) -> i128 {
        self.h_at(0)
    }

    /// `e(I) = h(1)`.
    pub fn multiplicity(&self) -> i128 {
        self.h.iter().sum()
    }

    /// `HF(n) = λ(Iⁿ/Iⁿ⁺¹) = Σ_k h_k (n-k+1)`.
    pub fn hf(&self, n: u64) -> i128 {
        let n = n as i128;
        self.h
            .iter()
            .enumerate()
            .filter(|&(k, _)| (k as i128) <= n)
            .map(|(k, &hk)| hk * (n - k as i128 + 1))
            .sum()
    }

    /// `λ(R/Iⁿ)`.
    pub fn hilbert_samuel(&self, n: u64) -> i128 {
        (0..n).map(|j| self.hf(j)).sum()
    }

    /// Cohen–Macaulayness of `gr_I(R)`: the numerator has degree at most one.
    pub fn is_cohen_macaulay(&self) -> bool {
        self.h.len() <= 2
    }

    /// Degree of the numerator; `Σ k h_k` enters `HF(n) = (n+1)e - Σ k h_k` for `n ≥ s`.
    fn first_moment(&self) -> i128 {
        self.h
            .iter()
            .enumerate()
            .map(|(k, &hk)| k as i128 * hk)
            .sum()
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, &hk) in self.h.iter().enumerate() {
            if k == 0 {
                write!(f, "{hk}")?;
                continue;
            }
            let sign = if hk < 0 { '-' } else { '+' };
            let mag = hk.unsigned_abs();
            match k {
                1 => write!(f, " {sign} {mag}z")?,
                _ => write!(f, " {sign} {mag}z^{k}")?,
            }
        }
        if self.h.is_empty() {
            f.write_str("0")?;
        }
        f.write_str(")/(1-z)^2")
    }
}

/// `λ(R/Iⁿ)`.
pub fn hilbert_samuel(a: &ColumnSequence, n: u32) -> u128 {
    a.power(n).colength()
}

pub fn hilbert_series(a: &ColumnSequence) -> Result<HilbertSeries, HilbertError> {
    hilbert_series_with(a, StabilizationConfig::default())
}

pub fn hilbert_series_with(
    a: &ColumnSequence,
    cfg: StabilizationConfig,
) -> Result<HilbertSeries, HilbertError> {
    if a.is_unit() {
        return Err(HilbertError::UnitIdeal);
    }
    let window = cfg.window.max(1);
    // lengths[n] = λ(R/Iⁿ)
    let mut lengths: Vec<u128> = vec![0];
    let mut current = ColumnSequence::unit();
    let mut h: Vec<i128> = Vec::new();
    let mut zero_run = 0usize;
    let mut confirmed_from: Option<usize> = None;
    for n in 1..=cfg.max_power {
        current = current.min_plus_product(a);
        lengths.push(current.colength());
        // lengths up to n give HF up to n-1, hence h_{n-1}
        let k = n as usize - 1;
        let hf = |j: isize| -> i128 {
            if j < 0 {
                0
            } else {
                (lengths[j as usize + 1] - lengths[j as usize]) as i128
            }
        };
        let k_i = k as isize;
        let hk = hf(k_i) - 2 * hf(k_i - 1) + hf(k_i - 2);
        h.push(hk);
        if hk == 0 && second_difference_constant(&lengths, window) {
            zero_run += 1;
        } else {
            zero_run = 0;
            confirmed_from = None;
        }
        if let Some(start) = confirmed_from {
            // the extra power beyond the window also produced a zero coefficient
            debug_assert!(start < h.len());
            let mut series = HilbertSeries::from_numerator(h);
            series.stabilized_at = Some(n);
            return Ok(series);
        }
        if zero_run >= window {
            confirmed_from = Some(k);
        }
    }
    Err(HilbertError::NotStabilized {
        window,
        max_power: cfg.max_power,
        lengths,
    })
}

/// `Δ²P` constant over the last `window` steps.
fn second_difference_constant(lengths: &[u128], window: usize) -> bool {
    let n = lengths.len();
    if n < window + 3 {
        return false;
    }
    let d2 = |i: usize| lengths[i] as i128 - 2 * lengths[i - 1] as i128 + lengths[i - 2] as i128;
    let last = d2(n - 1);
    (n - window..n).all(|i| d2(i) == last)
}

/// Closed forms for monotone differences: `(λ + (λ - a_d) z)` when
/// `b₁ ≤ … ≤ b_d`, `(λ + (d·a_d - λ) z)` when `b₁ ≥ … ≥ b_d`.
pub fn closed_form_monotone(a: &ColumnSequence) -> Result<HilbertSeries, HilbertError> {
    if a.is_unit() {
        return Err(HilbertError::UnitIdeal);
    }
    let b = a.differences();
    let lambda = a.colength() as i128;
    let a_d = a.a_d() as i128;
    let h1 = if b.windows(2).all(|w| w[0] <= w[1]) {
        lambda - a_d
    } else if b.windows(2).all(|w| w[0] >= w[1]) {
        a.d() as i128 * a_d - lambda
    } else {
        return Err(HilbertError::NotMonotone);
    };
    Ok(HilbertSeries::from_numerator(vec![lambda, h1]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum HfComparison {
    /// `lhs(n) ≥ rhs(n)` for every `n` (includes equality).
    Dominates,
    /// `lhs(n) ≤ rhs(n)` for every `n`, strictly somewhere.
    Dominated,
    /// Neither; `first_violation` is the least `n` with `lhs(n) > rhs(n)`.
    Incomparable { first_violation: u64 },
}

/// Pointwise comparison of Hilbert functions over all `n ≥ 0`.
///
/// Beyond the numerator degrees both functions are linear, so their
/// difference changes sign at most once more; scanning past that point is exhaustive.
pub fn compare_hf(lhs: &HilbertSeries, rhs: &HilbertSeries) -> HfComparison {
    let s = lhs.h.len().max(rhs.h.len()) as u64;
    let gap = (lhs.first_moment() - rhs.first_moment()).unsigned_abs();
    let horizon = s + gap.min(u64::MAX as u128 / 2) as u64 + 2;
    let mut first_above: Option<u64> = None;
    let mut any_below = false;
    for n in 0..=horizon {
        let (l, r) = (lhs.hf(n), rhs.hf(n));
        if l > r && first_above.is_none() {
            first_above = Some(n);
        }
        if l < r {
            any_below = true;
        }
    }
    match (first_above, any_below) {
        (None, true) => HfComparison::Dominated,
        (None, false) | (Some(_), false) => HfComparison::Dominates,
        (Some(n), true) => HfComparison::Incomparable { first_violation: n },
    }
}

fn binom2(n: i128) -> i128 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// `h₁(I) ≥ C(μ(I)-1, 2)`.
pub fn h1_bound_check(a: &ColumnSequence, hs: &HilbertSeries) -> bool {
    hs.h_at(1) >= binom2(a.mu() as i128 - 1)
}

/// `h₂(I)` (zero when the numerator is shorter).
pub fn h2_report(hs: &HilbertSeries) -> i128 {
    hs.h_at(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> ColumnSequence {
        ColumnSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn samuel_function_small_cases() {
        let a = seq(&[0, 3, 3, 5]);
        assert_eq!(hilbert_samuel(&a, 0), 0);
        assert_eq!(hilbert_samuel(&a, 1), 11);
        assert_eq!(hilbert_samuel(&a, 2), 35);
    }

    #[test]
    fn nondecreasing_differences_quadratic() {
        // |a(Iⁿ)| = n²|a(I)| - C(n,2) a_d
        let a = seq(&[0, 1, 3, 6, 10]);
        for n in 1..6u32 {
            let n128 = n as u128;
            let expect = n128 * n128 * 20 - n128 * (n128 - 1) / 2 * 10;
            assert_eq!(hilbert_samuel(&a, n), expect);
        }
    }

    #[test]
    fn maximal_ideal_powers_are_cm() {
        for d in 1..8usize {
            let hs = hilbert_series(&ColumnSequence::maximal_power(d)).unwrap();
            let d = d as i128;
            assert_eq!(hs.h(), &[d * (d + 1) / 2, d * (d - 1) / 2][..if d == 1 { 1 } else { 2 }]);
            assert!(hs.is_cohen_macaulay());
            assert_eq!(hs.multiplicity(), d * d);
        }
    }

    #[test]
    fn contracted_ideal_and_its_lex() {
        let i = seq(&[0, 1, 1, 3, 5, 12, 13, 14, 17, 19]);
        let hs = hilbert_series(&i).unwrap();
        assert_eq!(hs.h(), &[85, 42, 10, -3]);
        assert!(!hs.is_cohen_macaulay());
        let l = seq(&[0, 2, 3, 5, 12, 13, 14, 17, 19]);
        let hl = hilbert_series(&l).unwrap();
        // brute-force lattice counting gives λ(R/Lⁿ) = 85, 298, 646, 1129, 1746
        assert_eq!(hl.h(), &[85, 43, 7, 0, -1]);
        assert_eq!(hs.hf(2), 349);
        assert_eq!(hl.hf(2), 348);
        assert_eq!(compare_hf(&hs, &hl), HfComparison::Incomparable { first_violation: 2 });
        assert!(h1_bound_check(&i, &hs));
    }

    #[test]
    fn lex_initial_ideal_series() {
        // lengths 32, 112, 240, 420, 650 from brute-force lattice counting
        let hs = hilbert_series(&seq(&[0, 2, 5, 7, 8, 10])).unwrap();
        assert_eq!(hs.h(), &[32, 16, 0, 4, -2]);
        assert_eq!(hs.hf(2), 128);
        let printed_i = HilbertSeries::from_numerator(vec![32, 14, 6, -2]);
        assert_eq!(printed_i.hf(2), 130);
        for n in 3..10 {
            assert_eq!(printed_i.hf(n), hs.hf(n));
        }
        assert_eq!(compare_hf(&printed_i, &hs), HfComparison::Incomparable { first_violation: 2 });
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_monotone(&seq(&[0, 1, 3])).unwrap().h(), &[4, 1]);
        assert_eq!(closed_form_monotone(&seq(&[0, 3, 4])).unwrap().h(), &[7, 1]);
        assert_eq!(closed_form_monotone(&seq(&[0, 1, 2])).unwrap().h(), &[3, 1]);
        assert_eq!(
            closed_form_monotone(&seq(&[0, 1, 3, 4])),
            Err(HilbertError::NotMonotone)
        );
        for a in [seq(&[0, 1, 3]), seq(&[0, 3, 4]), seq(&[0, 2, 4, 7, 11]), seq(&[0, 5, 8, 10])] {
            assert_eq!(closed_form_monotone(&a).unwrap().h(), hilbert_series(&a).unwrap().h());
        }
    }

    #[test]
    fn hf_reconstruction_matches_lengths() {
        let a = seq(&[0, 2, 5, 7, 8, 10]);
        let hs = hilbert_series(&a).unwrap();
        for n in 0..8u32 {
            assert_eq!(hs.hilbert_samuel(n as u64), hilbert_samuel(&a, n) as i128);
        }
    }

    #[test]
    fn comparison_relations() {
        let hs = hilbert_series(&seq(&[0, 2, 5, 7, 8, 10])).unwrap();
        assert_eq!(compare_hf(&hs, &hs), HfComparison::Dominates);
        let bigger = HilbertSeries::from_numerator(vec![32, 17, 4, -2]);
        assert_eq!(compare_hf(&hs, &bigger), HfComparison::Dominated);
        assert_eq!(compare_hf(&bigger, &hs), HfComparison::Dominates);
    }

    #[test]
    fn display_format() {
        let hs = HilbertSeries::from_numerator(vec![85, 42, 10, -3]);
        assert_eq!(hs.to_string(), "(85 + 42z + 10z^2 - 3z^3)/(1-z)^2");
    }

    #[test]
    fn unit_ideal_rejected() {
        assert_eq!(hilbert_series(&ColumnSequence::unit()), Err(HilbertError::UnitIdeal));
    }

    #[test]
    fn cap_reports_partial_data() {
        let cfg = StabilizationConfig { window: 3, max_power: 2 };
        match hilbert_series_with(&seq(&[0, 2, 5, 7, 8, 10]), cfg) {
            Err(HilbertError::NotStabilized { lengths, .. }) => assert_eq!(lengths[..2], [0, 32]),
            other => panic!("unexpected {other:?}"),
        }
    }
}

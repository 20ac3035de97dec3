//! Exhaustive enumeration of column sequences, in a fixed deterministic order.

use crate::staircase::ColumnSequence;

fn extend(
    d: usize,
    max: u64,
    strict: bool,
    cur: &mut Vec<u64>,
    out: &mut Vec<ColumnSequence>,
) {
    if cur.len() == d + 1 {
        out.push(ColumnSequence::new(cur.clone()).expect("enumerated sequences are valid"));
        return;
    }
    let last = *cur.last().unwrap();
    let lo = if strict || cur.len() == 1 { last + 1 } else { last };
    for v in lo..=max {
        cur.push(v);
        extend(d, max, strict, cur, out);
        cur.pop();
    }
}

fn enumerate(dmax: usize, admax: u64, strict: bool) -> Vec<ColumnSequence> {
    let mut out = Vec::new();
    for d in 1..=dmax {
        extend(d, admax, strict, &mut vec![0], &mut out);
    }
    out
}

/// Every proper m-primary monomial ideal with `1 ≤ d ≤ dmax` and `a_d ≤ admax`.
pub fn monomial_ideals(dmax: usize, admax: u64) -> Vec<ColumnSequence> {
    enumerate(dmax, admax, false)
}

/// Lex-segment ideals (strictly increasing sequences) with `1 ≤ d ≤ dmax`, `a_d ≤ admax`.
pub fn lex_ideals(dmax: usize, admax: u64) -> Vec<ColumnSequence> {
    enumerate(dmax, admax, true)
}

pub fn contracted_ideals(dmax: usize, admax: u64) -> Vec<ColumnSequence> {
    monomial_ideals(dmax, admax)
        .into_iter()
        .filter(ColumnSequence::is_contracted)
        .collect()
}

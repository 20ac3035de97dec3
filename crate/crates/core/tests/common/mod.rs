//! Brute-force oracles on raw exponent pairs. Nothing here uses column-sequence arithmetic.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub type Gens = Vec<(u64, u64)>;

/// Generators read straight off the sequence: `x^(d-i) y^(a_i)` for every `i`.
pub fn raw_gens(a: &[u64]) -> Gens {
    let d = a.len() as u64 - 1;
    a.iter().enumerate().map(|(i, &v)| (d - i as u64, v)).collect()
}

pub fn member(gens: &[(u64, u64)], u: u64, v: u64) -> bool {
    gens.iter().any(|&(p, q)| u >= p && v >= q)
}

pub fn product(g: &[(u64, u64)], h: &[(u64, u64)]) -> Gens {
    let set: BTreeSet<_> = g
        .iter()
        .flat_map(|&(p, q)| h.iter().map(move |&(r, s)| (p + r, q + s)))
        .collect();
    set.into_iter().collect()
}

pub fn power(g: &[(u64, u64)], n: u32) -> Gens {
    (0..n).fold(vec![(0, 0)], |acc, _| product(&acc, g))
}

/// Lattice points outside the ideal.
pub fn colength(gens: &[(u64, u64)]) -> u128 {
    let xmax = gens.iter().filter(|g| g.1 == 0).map(|g| g.0).min().unwrap();
    let ymax = gens.iter().filter(|g| g.0 == 0).map(|g| g.1).min().unwrap();
    let mut n = 0;
    for u in 0..xmax {
        for v in 0..ymax {
            if !member(gens, u, v) {
                n += 1;
            }
        }
    }
    n
}

/// `(u, v)` lies in the Newton polyhedron: some convex combination of two generators is below it.
pub fn in_hull(gens: &[(u64, u64)], u: u64, v: u64) -> bool {
    if member(gens, u, v) {
        return true;
    }
    let (u, v) = (u as i128, v as i128);
    for &(p1, q1) in gens {
        for &(p2, q2) in gens {
            let (p1, q1, p2, q2) = (p1 as i128, q1 as i128, p2 as i128, q2 as i128);
            // points t(p1,q1) + (1-t)(p2,q2), 0 ≤ t ≤ 1; need one with coordinates ≤ (u, v)
            if p1 == p2 {
                if p1 <= u && q1.min(q2) <= v {
                    return true;
                }
                continue;
            }
            // x-coordinate ≤ u gives t on one side; check the best endpoint of the feasible t-range
            let (lo_p, hi_p, lo_q, hi_q) = if p1 < p2 { (p1, p2, q1, q2) } else { (p2, p1, q2, q1) };
            if lo_p > u {
                continue;
            }
            // the largest x allowed is min(u, hi_p); y at that point, scaled by (hi_p - lo_p)
            let x = u.min(hi_p);
            let y_scaled = lo_q * (hi_p - x) + hi_q * (x - lo_p);
            let best_scaled = y_scaled.min(lo_q * (hi_p - lo_p));
            if best_scaled <= v * (hi_p - lo_p) {
                return true;
            }
        }
    }
    false
}

/// Random column sequence with `1 ≤ d ≤ dmax`, `a_d ≤ admax`.
pub fn random_sequence(rng: &mut ChaCha8Rng, dmax: usize, admax: u64, strict: bool) -> Vec<u64> {
    loop {
        let d = rng.gen_range(1..=dmax);
        let mut v: Vec<u64> = (0..d).map(|_| rng.gen_range(1..=admax)).collect();
        v.sort_unstable();
        if strict {
            v.dedup();
            if v.len() != d {
                continue;
            }
        }
        let mut a = vec![0];
        a.extend(v);
        return a;
    }
}

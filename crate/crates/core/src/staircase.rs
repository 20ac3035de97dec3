//! m-primary monomial ideals of `k[x,y]` stored as column sequences.
//!
//! An ideal `I` with `d = min { j : x^j ∈ I }` is encoded by
//! `a_i = min { j : x^(d-i) y^j ∈ I }` for `i = 0..=d`. The sequence starts at
//! zero, is nondecreasing, and (for `d ≥ 1`) has `a_1 ≥ 1`, otherwise
//! `x^(d-1)` would already lie in `I`. The sequence `(0)` is the unit ideal.
//!
//! Every operation here is exact. Products are min-plus convolutions of the
//! column sequences, colons and intersections work on the "lowest y-exponent
//! per x-exponent" profile, and integral closure is computed from the lower
//! convex hull of the generator exponents using integer half-plane tests.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StaircaseError {
    #[error("column sequence is empty")]
    Empty,
    #[error("column sequence must start with 0, found {0}")]
    NonZeroStart(u64),
    #[error("column sequence decreases at index {0}")]
    Decreasing(usize),
    #[error("a_1 = 0 means x^(d-1) is already in the ideal; drop the leading column")]
    NotCanonical,
    #[error("ideal is not m-primary: {0}")]
    NotPrimary(&'static str),
    #[error("cannot parse ideal {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A monomial `x^x y^y`, written `(x, y)` in generator lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub x: u64,
    pub y: u64,
}

impl Monomial {
    pub const fn new(x: u64, y: u64) -> Self {
        Self { x, y }
    }

    pub fn degree(&self) -> u64 {
        self.x + self.y
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A minimal generating set, sorted by decreasing x-exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialGeneratorSet(Vec<Monomial>);

impl MonomialGeneratorSet {
    /// Minimalizes `gens` (drops every monomial divisible by another one).
    pub fn new(gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort();
        all.dedup();
        let mut out: Vec<Monomial> = Vec::with_capacity(all.len());
        // walking by increasing x, a generator survives iff its y is below every y seen so far
        let mut best_y = u64::MAX;
        for m in all {
            if m.y < best_y {
                best_y = m.y;
                out.push(m);
            }
        }
        out.reverse();
        Self(out)
    }

    pub fn as_slice(&self) -> &[Monomial] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.0.iter()
    }
}

impl fmt::Display for MonomialGeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("g:")?;
        for m in &self.0 {
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ColumnSequence(Vec<u64>);

impl ColumnSequence {
    pub fn new(a: Vec<u64>) -> Result<Self, StaircaseError> {
        match a.first() {
            None => return Err(StaircaseError::Empty),
            Some(&v) if v != 0 => return Err(StaircaseError::NonZeroStart(v)),
            _ => {}
        }
        if let Some(i) = a.windows(2).position(|w| w[0] > w[1]) {
            return Err(StaircaseError::Decreasing(i + 1));
        }
        if a.len() > 1 && a[1] == 0 {
            return Err(StaircaseError::NotCanonical);
        }
        Ok(Self(a))
    }

    /// The multiplicative identity `(0)`, i.e. the unit ideal.
    pub fn unit() -> Self {
        Self(vec![0])
    }

    /// `m^d`, column sequence `(0, 1, ..., d)`.
    pub fn maximal_power(d: usize) -> Self {
        Self((0..=d as u64).collect())
    }

    /// Builds the ideal whose lowest y-exponent above x-exponent `u` is
    /// `min_y(u)`. `min_y` must be nonincreasing and vanish from some
    /// `u ≤ bound` on.
    pub(crate) fn from_min_y(bound: u64, min_y: impl Fn(u64) -> u64) -> Self {
        let d = (0..=bound)
            .find(|&u| min_y(u) == 0)
            .expect("staircase profile must reach the x-axis within its bound");
        let a: Vec<u64> = (0..=d).map(|i| min_y(d - i)).collect();
        debug_assert!(a.windows(2).all(|w| w[0] <= w[1]));
        Self(a)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// `d`, the least exponent with `x^d ∈ I`.
    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    pub fn a_d(&self) -> u64 {
        *self.0.last().unwrap()
    }

    pub fn is_unit(&self) -> bool {
        self.0.len() == 1
    }

    /// Differences `b_i = a_i - a_(i-1)` for `i = 1..=d`.
    pub fn differences(&self) -> Vec<u64> {
        self.0.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Least `v` with `x^u y^v ∈ I`.
    pub fn min_y(&self, u: u64) -> u64 {
        let d = self.d() as u64;
        if u >= d {
            0
        } else {
            self.0[(d - u) as usize]
        }
    }

    /// Least `u` with `x^u y^v ∈ I`.
    pub fn min_x(&self, v: u64) -> u64 {
        // a is nondecreasing, so the admissible columns form a prefix 0..=k
        let k = self.0.partition_point(|&ai| ai <= v) - 1;
        (self.d() - k) as u64
    }

    pub fn contains(&self, m: Monomial) -> bool {
        m.y >= self.min_y(m.x)
    }

    pub fn minimal_generators(&self) -> MonomialGeneratorSet {
        let d = self.d();
        let gens = (0..=d)
            .filter(|&i| i == d || self.0[i] < self.0[i + 1])
            .map(|i| Monomial::new((d - i) as u64, self.0[i]))
            .collect();
        MonomialGeneratorSet(gens)
    }

    pub fn from_generators(gens: &[Monomial]) -> Result<Self, StaircaseError> {
        let set = MonomialGeneratorSet::new(gens.iter().copied());
        let pure_x = set.iter().filter(|m| m.y == 0).map(|m| m.x).min();
        let pure_y = set.iter().any(|m| m.x == 0);
        let Some(d) = pure_x else {
            return Err(StaircaseError::NotPrimary("no pure power of x"));
        };
        if !pure_y {
            return Err(StaircaseError::NotPrimary("no pure power of y"));
        }
        let min_y = |u: u64| {
            set.iter()
                .filter(|m| m.x <= u)
                .map(|m| m.y)
                .min()
                .expect("the pure y-power lies in every column")
        };
        Ok(Self::from_min_y(d, min_y))
    }

    /// `μ(I)`.
    pub fn mu(&self) -> usize {
        let d = self.d();
        (0..d).filter(|&i| self.0[i] < self.0[i + 1]).count() + 1
    }

    /// Order `o(I)`: least total degree of a minimal generator.
    pub fn order(&self) -> u64 {
        self.minimal_generators()
            .iter()
            .map(Monomial::degree)
            .min()
            .unwrap()
    }

    /// `λ(R/I) = Σ a_i`.
    pub fn colength(&self) -> u128 {
        self.0.iter().map(|&v| v as u128).sum()
    }

    /// Lex-segment ideals are exactly the strictly increasing sequences.
    pub fn is_lex(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// `μ(I) = o(I) + 1`.
    pub fn is_contracted(&self) -> bool {
        !self.is_unit() && self.mu() as u64 == self.order() + 1
    }

    pub fn min_plus_product(&self, other: &Self) -> Self {
        let (p, q) = (&self.0, &other.0);
        let mut out = vec![u64::MAX; p.len() + q.len() - 1];
        for (j, &pj) in p.iter().enumerate() {
            for (k, &qk) in q.iter().enumerate() {
                let slot = &mut out[j + k];
                *slot = (*slot).min(pj + qk);
            }
        }
        Self(out)
    }

    /// `I^n`; `n = 0` gives the unit ideal.
    pub fn power(&self, n: u32) -> Self {
        let mut result = Self::unit();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.min_plus_product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.min_plus_product(&base);
            }
        }
        result
    }

    /// `(I : x^u y^v)`.
    pub fn colon_monomial(&self, m: Monomial) -> Self {
        let bound = self.d() as u64;
        Self::from_min_y(bound, |p| self.min_y(p + m.x).saturating_sub(m.y))
    }

    /// `I ∩ J`.
    pub fn intersect(&self, other: &Self) -> Self {
        let bound = self.d().max(other.d()) as u64;
        Self::from_min_y(bound, |u| self.min_y(u).max(other.min_y(u)))
    }

    /// `I + J`.
    pub fn sum(&self, other: &Self) -> Self {
        let bound = self.d().min(other.d()) as u64;
        Self::from_min_y(bound, |u| self.min_y(u).min(other.min_y(u)))
    }

    /// `(I : J) = { f : fJ ⊆ I }`, intersecting `(I : g)` over the generators `g` of `J`.
    pub fn colon(&self, other: &Self) -> Self {
        other
            .minimal_generators()
            .iter()
            .map(|&g| self.colon_monomial(g))
            .reduce(|acc, c| acc.intersect(&c))
            .expect("every ideal has a generator")
    }

    /// `J ⊆ I`.
    pub fn contains_ideal(&self, other: &Self) -> bool {
        other.minimal_generators().iter().all(|&g| self.contains(g))
    }

    /// Swaps the roles of `x` and `y`.
    pub fn transpose(&self) -> Self {
        let bound = self.a_d();
        Self::from_min_y(bound, |u| self.min_x(u))
    }

    /// Integral closure: lattice points of the Newton polyhedron
    /// `conv(exponents) + R²₊`.
    pub fn integral_closure(&self) -> Self {
        let edges = self.newton_edges();
        let bound = self.d() as u64;
        Self::from_min_y(bound, |u| {
            edges
                .iter()
                .map(|e| e.min_y_at(u as i128))
                .max()
                .unwrap_or(0)
                .max(0) as u64
        })
    }

    pub fn is_integrally_closed(&self) -> bool {
        self.integral_closure() == *self
    }

    /// Edges of the lower convex hull of the generator exponents, from the
    /// pure y-power to the pure x-power.
    fn newton_edges(&self) -> Vec<HullEdge> {
        let mut pts: Vec<(i128, i128)> = self
            .minimal_generators()
            .iter()
            .map(|m| (m.x as i128, m.y as i128))
            .collect();
        pts.sort();
        let mut hull: Vec<(i128, i128)> = Vec::with_capacity(pts.len());
        for p in pts {
            while hull.len() >= 2 {
                let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.windows(2)
            .map(|w| HullEdge { from: w[0], to: w[1] })
            .collect()
    }
}

/// A lower-hull edge; points on or above its supporting line satisfy
/// `(to.0-from.0)(v-from.1) ≥ (to.1-from.1)(u-from.0)`.
#[derive(Debug, Clone, Copy)]
struct HullEdge {
    from: (i128, i128),
    to: (i128, i128),
}

impl HullEdge {
    /// Least integer `v` with `(u, v)` in the closed upper half-plane of the edge line.
    fn min_y_at(&self, u: i128) -> i128 {
        let du = self.to.0 - self.from.0;
        let dv = self.to.1 - self.from.1;
        debug_assert!(du > 0);
        // v ≥ from.1 + dv (u - from.0) / du
        let num = dv * (u - self.from.0);
        self.from.1 + div_ceil(num, du)
    }
}

fn div_ceil(n: i128, d: i128) -> i128 {
    let q = n.div_euclid(d);
    if n.rem_euclid(d) == 0 {
        q
    } else {
        q + 1
    }
}

impl fmt::Display for ColumnSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a:")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for ColumnSequence {
    type Err = StaircaseError;

    /// Accepts `a:0,3,3,5` or `g:(3,0)(1,3)(0,5)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| StaircaseError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s_trim = s.trim();
        if let Some(body) = s_trim.strip_prefix("a:") {
            let a = body
                .split(',')
                .map(|t| t.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| fail(&e.to_string()))?;
            ColumnSequence::new(a)
        } else if let Some(body) = s_trim.strip_prefix("g:") {
            let gens = parse_generators(body).ok_or_else(|| fail("expected (u,v)(u,v)..."))?;
            ColumnSequence::from_generators(&gens)
        } else {
            Err(fail("expected prefix `a:` or `g:`"))
        }
    }
}

fn parse_generators(body: &str) -> Option<Vec<Monomial>> {
    let mut out = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(')?;
        let close = inner.find(')')?;
        let (u, v) = inner[..close].split_once(',')?;
        out.push(Monomial::new(u.trim().parse().ok()?, v.trim().parse().ok()?));
        rest = inner[close + 1..].trim_start();
    }
    if out.is_empty() {
        None
    } else {
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> ColumnSequence {
        ColumnSequence::new(v.to_vec()).unwrap()
    }

    fn gens(v: &[(u64, u64)]) -> Vec<Monomial> {
        v.iter().map(|&(x, y)| Monomial::new(x, y)).collect()
    }

    #[test]
    fn generators_to_columns() {
        let a = ColumnSequence::from_generators(&gens(&[(3, 0), (1, 3), (0, 5)])).unwrap();
        assert_eq!(a.entries(), &[0, 3, 3, 5]);
        let a = ColumnSequence::from_generators(&gens(&[(4, 0), (3, 1), (2, 4), (1, 7), (0, 9)]))
            .unwrap();
        assert_eq!(a.entries(), &[0, 1, 4, 7, 9]);
        let m = ColumnSequence::from_generators(&gens(&[(1, 0), (0, 1)])).unwrap();
        assert_eq!(m.entries(), &[0, 1]);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let a = ColumnSequence::from_generators(&gens(&[(3, 0), (4, 0), (1, 3), (2, 5), (0, 5)]))
            .unwrap();
        assert_eq!(a.entries(), &[0, 3, 3, 5]);
    }

    #[test]
    fn rejects_non_primary_and_bad_sequences() {
        assert!(matches!(
            ColumnSequence::from_generators(&gens(&[(1, 3), (0, 5)])),
            Err(StaircaseError::NotPrimary(_))
        ));
        assert!(matches!(
            ColumnSequence::from_generators(&gens(&[(3, 0), (1, 3)])),
            Err(StaircaseError::NotPrimary(_))
        ));
        assert_eq!(ColumnSequence::new(vec![]), Err(StaircaseError::Empty));
        assert_eq!(ColumnSequence::new(vec![1, 2]), Err(StaircaseError::NonZeroStart(1)));
        assert_eq!(ColumnSequence::new(vec![0, 3, 2]), Err(StaircaseError::Decreasing(2)));
        assert_eq!(ColumnSequence::new(vec![0, 0, 2]), Err(StaircaseError::NotCanonical));
    }

    #[test]
    fn minimal_generators_read_back() {
        let g = seq(&[0, 3, 3, 5]).minimal_generators();
        assert_eq!(g.as_slice(), &gens(&[(3, 0), (1, 3), (0, 5)])[..]);
        assert_eq!(ColumnSequence::maximal_power(5).minimal_generators().len(), 6);
        let contracted = seq(&[0, 1, 1, 3, 5, 12, 13, 14, 17, 19]);
        assert_eq!(contracted.minimal_generators().len(), 9);
        assert_eq!(contracted.mu(), 9);
    }

    #[test]
    fn products_and_powers() {
        let a = seq(&[0, 3, 3, 5]);
        let sq = a.min_plus_product(&a);
        assert_eq!(sq.entries(), &[0, 3, 3, 5, 6, 8, 10]);
        assert_eq!(sq.colength(), 35);
        assert_eq!(a.min_plus_product(&ColumnSequence::unit()), a);
        let m = ColumnSequence::maximal_power(1);
        assert_eq!(m.min_plus_product(&m), ColumnSequence::maximal_power(2));
        assert_eq!(m.power(3), ColumnSequence::maximal_power(3));
        assert_eq!(a.power(0), ColumnSequence::unit());
        assert_eq!(a.power(2), sq);
    }

    #[test]
    fn colength_examples() {
        assert_eq!(seq(&[0, 1, 1, 3, 5, 12, 13, 14, 17, 19]).colength(), 85);
        assert_eq!(seq(&[0, 2, 5, 7, 8, 10]).colength(), 32);
        assert_eq!(ColumnSequence::maximal_power(7).colength(), 28);
    }

    #[test]
    fn colon_examples() {
        let a = seq(&[0, 3, 3, 5]);
        assert_eq!(a.colon(&a), ColumnSequence::unit());
        let m = ColumnSequence::maximal_power(1);
        assert_eq!(ColumnSequence::maximal_power(2).colon(&m), m);
        // (x^2, y^3) ∩ (x^3, xy^2, y^4) = (x^3, x^2 y^2, x y^3, y^4)
        assert_eq!(a.colon(&m).entries(), &[0, 2, 3, 4]);
    }

    #[test]
    fn order_and_contractedness() {
        let ex = seq(&[0, 1, 1, 3, 5, 12, 13, 14, 17, 19]);
        assert_eq!(ex.order(), 8);
        assert!(ex.is_contracted());
        assert!(ColumnSequence::maximal_power(4).is_contracted());
        let a = seq(&[0, 3, 3, 5]);
        assert_eq!(a.order(), 3);
        assert_eq!(a.mu(), 3);
        assert!(!a.is_contracted());
    }

    #[test]
    fn closure_examples() {
        assert!(seq(&[0, 1, 3]).is_integrally_closed());
        assert!(seq(&[0, 2]).is_integrally_closed());
        assert_eq!(seq(&[0, 2, 2]).integral_closure(), ColumnSequence::maximal_power(2));
        // the hull edge from (1,3) to (3,0) passes through (2, 3/2)
        assert_eq!(seq(&[0, 3, 3, 5]).integral_closure().entries(), &[0, 2, 3, 5]);
    }

    #[test]
    fn transpose_swaps_variables() {
        let a = seq(&[0, 3, 3, 5]);
        let t = a.transpose();
        // (y^3, x^3 y, x^5)
        assert_eq!(t.entries(), &[0, 1, 1, 3, 3, 3]);
        assert_eq!(t.transpose(), a);
    }

    #[test]
    fn parse_and_display() {
        let a: ColumnSequence = "a:0,3,3,5".parse().unwrap();
        let b: ColumnSequence = "g:(3,0)(1,3)(0,5)".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "a:0,3,3,5");
        assert_eq!(a.minimal_generators().to_string(), "g:(3,0)(1,3)(0,5)");
        assert!("b:1".parse::<ColumnSequence>().is_err());
        assert!("g:(3,0)(1,3".parse::<ColumnSequence>().is_err());
    }
}

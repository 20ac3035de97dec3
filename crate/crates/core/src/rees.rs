//! Binomial Gröbner bases for the presentation ideal `H = ker ψ` of the Rees algebra
//! of a lex-segment ideal, where `ψ(T_i) = x^(d-i) y^(a_i) t`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::contracted::HilbertBurchData;
use crate::genforms;
use crate::poly::BiPoly;
use crate::staircase::ColumnSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReesError {
    #[error("{ideal} does not satisfy the {family} precondition: {reason}")]
    Precondition {
        ideal: ColumnSequence,
        family: Family,
        reason: &'static str,
    },
    #[error("no basis family applies to {0}")]
    NoFamily(ColumnSequence),
    #[error("binomial {0} is not in the kernel of ψ")]
    NotInKernel(String),
    #[error("lead of {0} does not dominate its trail")]
    OrderIncompatible(String),
    #[error("reduction did not terminate within {0} steps")]
    NonTermination(usize),
    #[error("invalid Hilbert–Burch input: {0}")]
    HilbertBurch(&'static str),
}

/// Exponents of `x, y, T_0, …, T_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReesMonomial(Vec<u32>);

impl ReesMonomial {
    pub fn one(d: usize) -> Self {
        Self(vec![0; d + 3])
    }

    pub fn new(x: u32, y: u32, t: &[u32]) -> Self {
        let mut e = Vec::with_capacity(t.len() + 2);
        e.push(x);
        e.push(y);
        e.extend_from_slice(t);
        Self(e)
    }

    /// `x^x y^y` times the product of `T_i` over `ts`.
    pub fn with_ts(d: usize, x: u32, y: u32, ts: &[usize]) -> Self {
        let mut m = Self::one(d);
        m.0[0] = x;
        m.0[1] = y;
        for &i in ts {
            m.0[i + 2] += 1;
        }
        m
    }

    pub fn d(&self) -> usize {
        self.0.len() - 3
    }

    pub fn x(&self) -> u32 {
        self.0[0]
    }

    pub fn y(&self) -> u32 {
        self.0[1]
    }

    pub fn t(&self, i: usize) -> u32 {
        self.0[i + 2]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn t_degree(&self) -> u32 {
        self.0[2..].iter().sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_square_free(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; the caller guarantees divisibility.
    pub fn div(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }
}

impl fmt::Display for ReesMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |name: String, e: u32| match e {
            0 => {}
            1 => parts.push(name),
            e => parts.push(format!("{name}^{e}")),
        };
        push("x".into(), self.x());
        push("y".into(), self.y());
        for i in 0..=self.d() {
            push(format!("T{i}"), self.t(i));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

impl Serialize for ReesMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `(x-degree, y-degree, t-degree)` of `ψ(m)`.
pub fn psi(m: &ReesMonomial, a: &ColumnSequence) -> (u64, u64, u64) {
    let d = a.d();
    let mut xd = m.x() as u64;
    let mut yd = m.y() as u64;
    let mut td = 0;
    for (i, &ai) in a.entries().iter().enumerate() {
        let e = m.t(i) as u64;
        xd += e * (d - i) as u64;
        yd += e * ai;
        td += e;
    }
    (xd, yd, td)
}

/// `lead - trail`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Binomial {
    pub lead: ReesMonomial,
    pub trail: ReesMonomial,
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.lead, self.trail)
    }
}

/// Weight order on `x, y, T_0, …, T_d`, refined by total degree and then by
/// lexicographic comparison in the order listed in `precedence`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightOrder {
    pub weights: Vec<i128>,
    pub precedence: Vec<usize>,
}

impl WeightOrder {
    /// `T_d > … > T_0 > x > y` on ties.
    pub fn new(weights: Vec<i128>) -> Self {
        assert!(weights.iter().all(|&w| w >= 0), "weights must be nonnegative");
        let n = weights.len();
        let mut precedence: Vec<usize> = (2..n).rev().collect();
        precedence.extend([0, 1]);
        Self { weights, precedence }
    }

    pub fn weight(&self, m: &ReesMonomial) -> i128 {
        self.weights.iter().zip(&m.0).map(|(&w, &e)| w * e as i128).sum()
    }

    pub fn cmp(&self, a: &ReesMonomial, b: &ReesMonomial) -> Ordering {
        self.weight(a)
            .cmp(&self.weight(b))
            .then(a.total_degree().cmp(&b.total_degree()))
            .then_with(|| {
                self.precedence
                    .iter()
                    .map(|&v| a.0[v].cmp(&b.0[v]))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Increasing,
    Decreasing,
    Generic,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Increasing => "increasing",
            Family::Decreasing => "decreasing",
            Family::Generic => "generic",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "increasing" | "gb1" => Ok(Family::Increasing),
            "decreasing" => Ok(Family::Decreasing),
            "generic" | "normalrees" => Ok(Family::Generic),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

pub fn eligible_families(a: &ColumnSequence) -> Vec<Family> {
    let mut out = Vec::new();
    if !a.is_lex() || a.is_unit() {
        return out;
    }
    let b = a.differences();
    if b.windows(2).all(|w| w[0] <= w[1]) {
        out.push(Family::Increasing);
    }
    if b.windows(2).all(|w| w[0] >= w[1]) {
        out.push(Family::Decreasing);
    }
    if is_generic_c_p1_zero(a) {
        out.push(Family::Generic);
    }
    out
}

/// Increasing first, then generic, then decreasing.
pub fn auto_family(a: &ColumnSequence) -> Option<Family> {
    let fams = eligible_families(a);
    [Family::Increasing, Family::Generic, Family::Decreasing]
        .into_iter()
        .find(|f| fams.contains(f))
}

fn is_generic_c_p1_zero(a: &ColumnSequence) -> bool {
    matches!(genforms::generic_profile_of(a), Some(p) if p.c == 0 && p.p[0] == 0)
}

fn precondition(a: &ColumnSequence, family: Family) -> Result<(), ReesError> {
    let fail = |reason| {
        Err(ReesError::Precondition {
            ideal: a.clone(),
            family,
            reason,
        })
    };
    if !a.is_lex() || a.is_unit() {
        return fail("not a proper lex-segment ideal");
    }
    if !eligible_families(a).contains(&family) {
        return fail(match family {
            Family::Increasing => "differences are not nondecreasing",
            Family::Decreasing => "differences are not nonincreasing",
            Family::Generic => "not a generic lex-segment ideal with c = p_1 = 0",
        });
    }
    Ok(())
}

/// The basis for `family` together with a term order making every listed lead dominant.
pub fn gb_family(a: &ColumnSequence, family: Family) -> Result<(Vec<Binomial>, WeightOrder), ReesError> {
    precondition(a, family)?;
    let d = a.d();
    let ai = |i: usize| a.entries()[i] as u32;
    let b = |i: usize| ai(i) - ai(i - 1);
    let m = |x: u32, y: u32, ts: &[usize]| ReesMonomial::with_ts(d, x, y, ts);

    let mut basis: Vec<Binomial> = (1..=d)
        .map(|i| Binomial {
            lead: m(1, 0, &[i]),
            trail: m(0, b(i), &[i - 1]),
        })
        .collect();
    let t_weight: Box<dyn Fn(usize) -> i128> = match family {
        Family::Increasing => {
            for i in 1..=d {
                for j in 1..i {
                    basis.push(Binomial {
                        lead: m(0, 0, &[i, j - 1]),
                        trail: m(0, b(i) - b(j), &[i - 1, j]),
                    });
                }
            }
            Box::new(|k| (k * k) as i128)
        }
        Family::Decreasing => {
            for i in 1..=d {
                for j in i + 1..=d {
                    basis.push(Binomial {
                        lead: m(0, 0, &[i, j - 1]),
                        trail: m(0, b(i) - b(j), &[i - 1, j]),
                    });
                }
            }
            Box::new(move |k| (k * (2 * d + 1 - k)) as i128)
        }
        Family::Generic => {
            for i in 1..d {
                for j in i..d {
                    let trail = if i + j <= d {
                        m(0, ai(i) + ai(j) - ai(i + j), &[0, i + j])
                    } else {
                        m(0, ai(i) + ai(j) - ai(i + j - d) - ai(d), &[i + j - d, d])
                    };
                    basis.push(Binomial {
                        lead: m(0, 0, &[i, j]),
                        trail,
                    });
                }
            }
            Box::new(move |k| (k * (2 * d + 1 - k)) as i128)
        }
    };
    let mut weights = vec![1, 0];
    weights.extend((0..=d).map(t_weight));
    let order = WeightOrder::new(weights);
    for g in &basis {
        if psi(&g.lead, a) != psi(&g.trail, a) {
            return Err(ReesError::NotInKernel(g.to_string()));
        }
        if order.cmp(&g.lead, &g.trail) != Ordering::Greater {
            return Err(ReesError::OrderIncompatible(g.to_string()));
        }
    }
    Ok((basis, order))
}

const STEP_CAP: usize = 1 << 20;

/// Normal form of a monomial. Every step replaces a lead by its trail.
pub fn normal_form(m: &ReesMonomial, basis: &[Binomial]) -> Result<ReesMonomial, ReesError> {
    let mut cur = m.clone();
    for _ in 0..STEP_CAP {
        match basis.iter().find(|g| g.lead.divides(&cur)) {
            Some(g) => cur = cur.div(&g.lead).mul(&g.trail),
            None => return Ok(cur),
        }
    }
    Err(ReesError::NonTermination(STEP_CAP))
}

/// Buchberger's criterion for a basis of binomials with unit coefficients.
pub fn buchberger_verify(basis: &[Binomial], order: &WeightOrder) -> Result<bool, ReesError> {
    for g in basis {
        if order.cmp(&g.lead, &g.trail) != Ordering::Greater {
            return Err(ReesError::OrderIncompatible(g.to_string()));
        }
    }
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            if f.lead.coprime(&g.lead) {
                continue;
            }
            let l = f.lead.lcm(&g.lead);
            let s1 = l.div(&f.lead).mul(&f.trail);
            let s2 = l.div(&g.lead).mul(&g.trail);
            if normal_form(&s1, basis)? != normal_form(&s2, basis)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Caps for [`toric_membership_sample`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleCaps {
    pub t_degree: u32,
    pub xy_degree: u32,
}

impl SampleCaps {
    pub fn default_for(a: &ColumnSequence) -> Self {
        Self {
            t_degree: 4,
            xy_degree: (a.a_d() + a.d() as u64) as u32,
        }
    }
}

fn t_exponents(d: usize, max_deg: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, max_deg, &mut vec![0; d + 1], &mut out);
    out
}

/// Kernel binomials `m1 - m2` with both terms inside the caps whose terms have different
/// normal forms. An empty result means every sampled element of `H` reduces to zero.
pub fn toric_membership_sample(
    a: &ColumnSequence,
    basis: &[Binomial],
    caps: SampleCaps,
) -> Result<Vec<Binomial>, ReesError> {
    assert!(caps.t_degree >= 2 && caps.xy_degree >= 2, "caps must be at least 2");
    let d = a.d();
    // no lead involves y, so normal forms commute with multiplication by y
    let y_free = basis.iter().all(|g| g.lead.y() == 0);
    let mut nf_cache: HashMap<ReesMonomial, ReesMonomial> = HashMap::new();
    let mut fibers: HashMap<(u64, u64, u64), (ReesMonomial, ReesMonomial)> = HashMap::new();
    let mut violations = Vec::new();
    for t in t_exponents(d, caps.t_degree) {
        for u in 0..=caps.xy_degree {
            let base = ReesMonomial::new(u, 0, &t);
            let base_nf = if y_free {
                Some(match nf_cache.get(&base) {
                    Some(n) => n.clone(),
                    None => {
                        let n = normal_form(&base, basis)?;
                        nf_cache.insert(base.clone(), n.clone());
                        n
                    }
                })
            } else {
                None
            };
            for v in 0..=caps.xy_degree - u {
                let m = ReesMonomial::new(u, v, &t);
                let nf = match &base_nf {
                    Some(n) => {
                        let mut n = n.clone();
                        n.0[1] += v;
                        n
                    }
                    None => normal_form(&m, basis)?,
                };
                match fibers.get(&psi(&m, a)) {
                    Some((rep, rep_nf)) => {
                        if *rep_nf != nf {
                            violations.push(Binomial {
                                lead: rep.clone(),
                                trail: m,
                            });
                        }
                    }
                    None => {
                        fibers.insert(psi(&m, a), (m, nf));
                    }
                }
            }
        }
    }
    Ok(violations)
}

/// Searches the three binomial shapes that can never lie in `H` (exponents up to `max_exp`)
/// and returns every nonzero kernel element found.
pub fn forbidden_shape_search(a: &ColumnSequence, max_exp: u32) -> Vec<Binomial> {
    let d = a.d();
    let mut found = Vec::new();
    let check = |l: ReesMonomial, r: ReesMonomial, found: &mut Vec<Binomial>| {
        if l != r && psi(&l, a) == psi(&r, a) {
            found.push(Binomial { lead: l, trail: r });
        }
    };
    let mono = |y: u32, pairs: &[(usize, u32)]| {
        let mut m = ReesMonomial::one(d);
        m.0[1] = y;
        for &(i, e) in pairs {
            m.0[i + 2] += e;
        }
        m
    };
    let r = 0..=max_exp;
    let y_gap = |l: &ReesMonomial, rr: &ReesMonomial| psi(l, a).1 as i64 - psi(rr, a).1 as i64;
    if d >= 2 {
        // T_i^a T_(i+1)^b - y^c T_j^f T_(j+1)^g, 1 ≤ i, j ≤ d-1
        for i in 1..d {
            for (ea, eb) in r.clone().flat_map(|x| r.clone().map(move |y| (x, y))) {
                let l = mono(0, &[(i, ea), (i + 1, eb)]);
                for j in 1..d {
                    for (ef, eg) in r.clone().flat_map(|x| r.clone().map(move |y| (x, y))) {
                        let rr = mono(0, &[(j, ef), (j + 1, eg)]);
                        let c = y_gap(&l, &rr);
                        if (0..=max_exp as i64).contains(&c) {
                            check(l.clone(), mono(c as u32, &[(j, ef), (j + 1, eg)]), &mut found);
                        }
                    }
                }
            }
        }
    }
    // y^a T_i^b T_(i+1)^c - y^f T_j^g, 0 ≤ i, j ≤ d-1
    for i in 0..d {
        for (eb, ec) in r.clone().flat_map(|x| r.clone().map(move |y| (x, y))) {
            for j in 0..d {
                for eg in r.clone() {
                    let l0 = mono(0, &[(i, eb), (i + 1, ec)]);
                    let r0 = mono(0, &[(j, eg)]);
                    let gap = y_gap(&l0, &r0);
                    for ea in r.clone() {
                        let ef = ea as i64 + gap;
                        if (0..=max_exp as i64).contains(&ef) {
                            check(mono(ea, &[(i, eb), (i + 1, ec)]), mono(ef as u32, &[(j, eg)]), &mut found);
                        }
                    }
                }
            }
        }
    }
    // T_0^a T_d^b T_j^l - y^c T_0^f T_d^g T_k^h, 1 ≤ j ≠ k ≤ d-1, l, h ≤ 1
    for j in 1..d {
        for k in (1..d).filter(|&k| k != j) {
            for (l, h) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                for (ea, eb) in r.clone().flat_map(|x| r.clone().map(move |y| (x, y))) {
                    let lm = mono(0, &[(0, ea), (d, eb), (j, l)]);
                    for (ef, eg) in r.clone().flat_map(|x| r.clone().map(move |y| (x, y))) {
                        let rm = mono(0, &[(0, ef), (d, eg), (k, h)]);
                        let c = y_gap(&lm, &rm);
                        if (0..=max_exp as i64).contains(&c) {
                            check(lm.clone(), mono(c as u32, &[(0, ef), (d, eg), (k, h)]), &mut found);
                        }
                    }
                }
            }
        }
    }
    found
}

/// True iff every lead is square-free.
pub fn normality_certificate(basis: &[Binomial]) -> bool {
    basis.iter().all(|g| g.lead.is_square_free())
}

/// Normality of the Rees algebra of a monomial ideal in two variables is equivalent to
/// integral closedness of the ideal.
pub fn crosscheck_integral_closedness(a: &ColumnSequence) -> bool {
    a.is_integrally_closed()
}

/// Everything [`verify_family`] checks for one ideal.
#[derive(Debug, Clone, Serialize)]
pub struct ReesReport {
    pub ideal: ColumnSequence,
    pub family: Family,
    pub basis: Vec<Binomial>,
    pub order_weights: Vec<i128>,
    pub buchberger_ok: bool,
    pub toric_sample_ok: bool,
    pub toric_violations: usize,
    pub normal: bool,
    pub integrally_closed: bool,
    pub caps: SampleCaps,
}

pub fn verify_family(a: &ColumnSequence, family: Family, caps: SampleCaps) -> Result<ReesReport, ReesError> {
    let (basis, order) = gb_family(a, family)?;
    let buchberger_ok = buchberger_verify(&basis, &order)?;
    let violations = toric_membership_sample(a, &basis, caps)?;
    Ok(ReesReport {
        ideal: a.clone(),
        family,
        normal: normality_certificate(&basis),
        integrally_closed: crosscheck_integral_closedness(a),
        order_weights: order.weights,
        basis,
        buchberger_ok,
        toric_sample_ok: violations.is_empty(),
        toric_violations: violations.len(),
        caps,
    })
}

/// A linear form `Σ c_i t_i` in the Rees variables.
pub type TForm = Vec<(usize, BiPoly)>;

type FiberForm = Vec<(usize, BigRational)>;

/// Quadratic form in `t_0, …, t_d`, keyed by sorted index pairs.
pub type QuadForm = std::collections::BTreeMap<(usize, usize), BigRational>;

#[derive(Debug, Clone)]
pub struct ReesMatrixReport {
    /// Columns of the `2 × (d+1)` matrix: `(x, -y)`, then `(α_i t_i + y^(b_i-1) t_(i-1), t_i)`.
    pub columns: Vec<(TForm, TForm)>,
    /// 2-minors that do not vanish under `t_i ↦ (-1)^i M_i`, as column pairs.
    pub nonvanishing: Vec<(usize, usize)>,
    pub minor_count: usize,
    /// 2-minors of the fiber-cone matrix (`x, y ↦ 0`).
    pub fiber_minors: Vec<QuadForm>,
    pub fiber_codim: usize,
    /// `(minor index, k)` where `t_k` divides a fiber-cone minor.
    pub t_factors: Vec<(usize, usize)>,
}

impl ReesMatrixReport {
    pub fn all_vanish(&self) -> bool {
        self.nonvanishing.is_empty()
    }
}

fn eval(form: &TForm, subs: &[BiPoly]) -> BiPoly {
    form.iter()
        .fold(BiPoly::zero(), |acc, (i, c)| acc + c * &subs[*i])
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The matrix whose 2-minors define the Rees algebra of the ideal of maximal minors.
pub fn expected_rees_matrix(hb: &HilbertBurchData) -> Result<ReesMatrixReport, ReesError> {
    if !hb.has_distinct_alpha() {
        return Err(ReesError::HilbertBurch("repeated α: characteristic form is not square-free"));
    }
    let d = hb.d();
    let mut columns: Vec<(TForm, TForm)> = vec![(vec![], vec![])];
    for i in 1..=d {
        let alpha = &hb.alpha()[i - 1];
        let top = vec![
            (i, BiPoly::monomial(alpha.clone(), 0, 0)),
            (i - 1, BiPoly::y_pow(hb.b()[i - 1] - 1)),
        ];
        columns.push((top, vec![(i, BiPoly::one())]));
    }
    let subs: Vec<BiPoly> = (0..=d)
        .map(|i| {
            let m = hb.minor(i);
            if i % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect();
    let entry = |col: usize, row: usize| -> BiPoly {
        match (col, row) {
            (0, 0) => BiPoly::x(),
            (0, _) => -BiPoly::y_pow(1),
            (c, 0) => eval(&columns[c].0, &subs),
            (c, _) => eval(&columns[c].1, &subs),
        }
    };
    let mut nonvanishing = Vec::new();
    let mut minor_count = 0;
    for p in 0..=d {
        for r in p + 1..=d {
            minor_count += 1;
            let m = &entry(p, 0) * &entry(r, 1) - &entry(r, 0) * &entry(p, 1);
            if !m.is_zero() {
                nonvanishing.push((p, r));
            }
        }
    }

    // fiber cone: drop the x, y column and every entry with a positive power of y
    let fiber_col = |c: usize| -> (FiberForm, FiberForm) {
        let mut top = vec![(c, hb.alpha()[c - 1].clone())];
        if hb.b()[c - 1] == 1 {
            top.push((c - 1, BigRational::one()));
        }
        (top, vec![(c, BigRational::one())])
    };
    let mul = |u: &[(usize, BigRational)], v: &[(usize, BigRational)], sign: i64, out: &mut QuadForm| {
        for (i, ci) in u {
            for (j, cj) in v {
                let key = ((*i).min(*j), (*i).max(*j));
                let slot = out.entry(key).or_insert_with(BigRational::zero);
                *slot += ci * cj * q(sign);
            }
        }
    };
    let mut fiber_minors = Vec::new();
    let mut t_factors = Vec::new();
    for p in 1..=d {
        for r in p + 1..=d {
            let (cp, cr) = (fiber_col(p), fiber_col(r));
            let mut f = QuadForm::new();
            mul(&cp.0, &cr.1, 1, &mut f);
            mul(&cr.0, &cp.1, -1, &mut f);
            f.retain(|_, c| !c.is_zero());
            for k in 0..=d {
                if !f.is_empty() && f.keys().all(|&(i, j)| i == k || j == k) {
                    t_factors.push((fiber_minors.len(), k));
                }
            }
            fiber_minors.push(f);
        }
    }
    Ok(ReesMatrixReport {
        columns,
        nonvanishing,
        minor_count,
        fiber_minors,
        fiber_codim: d - 1,
        t_factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(v: &[u64]) -> ColumnSequence {
        ColumnSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn psi_images() {
        let a = cs(&[0, 1, 3, 6]);
        assert_eq!(psi(&ReesMonomial::with_ts(3, 0, 0, &[0]), &a), (3, 0, 1));
        // x T_2 and y^2 T_1
        let l = ReesMonomial::with_ts(3, 1, 0, &[2]);
        let r = ReesMonomial::with_ts(3, 0, 2, &[1]);
        assert_eq!(psi(&l, &a), psi(&r, &a));
    }

    #[test]
    fn increasing_family() {
        let a = cs(&[0, 1, 3, 6]);
        let (basis, order) = gb_family(&a, Family::Increasing).unwrap();
        assert_eq!(basis.len(), 3 + 3);
        assert!(buchberger_verify(&basis, &order).unwrap());
        assert!(toric_membership_sample(&a, &basis, SampleCaps::default_for(&a))
            .unwrap()
            .is_empty());
        assert!(normality_certificate(&basis));
        assert!(gb_family(&a, Family::Decreasing).is_err());
    }

    #[test]
    fn veronese_for_maximal_power() {
        let a = ColumnSequence::maximal_power(3);
        let (basis, _) = gb_family(&a, Family::Increasing).unwrap();
        assert!(basis[3..].iter().all(|g| g.trail.y() == 0));
        assert_eq!(basis[3].to_string(), "T0*T2 - T1^2");
    }

    #[test]
    fn generic_family() {
        let a = genforms::generic_lex(&[5, 7, 8]).unwrap();
        assert_eq!(auto_family(&a), Some(Family::Generic));
        let (basis, order) = gb_family(&a, Family::Generic).unwrap();
        assert!(buchberger_verify(&basis, &order).unwrap());
        assert!(toric_membership_sample(&a, &basis, SampleCaps::default_for(&a))
            .unwrap()
            .is_empty());
        // T_i^2 leads occur in this family
        assert!(!normality_certificate(&basis));
    }

    #[test]
    fn decreasing_family() {
        let a = cs(&[0, 3, 5, 6]);
        let (basis, order) = gb_family(&a, Family::Decreasing).unwrap();
        assert!(buchberger_verify(&basis, &order).unwrap());
        assert!(toric_membership_sample(&a, &basis, SampleCaps::default_for(&a))
            .unwrap()
            .is_empty());
        assert!(!normality_certificate(&basis));
    }

    #[test]
    fn deleting_a_binomial_breaks_the_basis() {
        let a = cs(&[0, 1, 3, 6]);
        let (mut basis, order) = gb_family(&a, Family::Increasing).unwrap();
        basis.remove(4);
        let toric = toric_membership_sample(&a, &basis, SampleCaps::default_for(&a)).unwrap();
        assert!(!toric.is_empty());
        let single = vec![basis[0].clone()];
        assert!(buchberger_verify(&single, &order).unwrap());
        assert!(!toric_membership_sample(&a, &[], SampleCaps::default_for(&a))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn forbidden_shapes_absent() {
        for a in [cs(&[0, 1, 3, 6]), cs(&[0, 2, 3, 5, 9]), ColumnSequence::maximal_power(4)] {
            assert!(forbidden_shape_search(&a, 4).is_empty(), "{a}");
        }
    }

    #[test]
    fn rees_matrix_small() {
        let hb = HilbertBurchData::new(vec![1, 2], vec![q(0), q(1)]).unwrap();
        let r = expected_rees_matrix(&hb).unwrap();
        assert!(r.all_vanish(), "{:?}", r.nonvanishing);
        assert_eq!(r.minor_count, 3);
        assert_eq!(r.fiber_minors.len(), 1);
        assert_eq!(r.fiber_codim, 1);
        // b_2 = 2 makes t_2 a factor
        assert!(r.t_factors.iter().any(|&(_, k)| k == 2));

        let hb = HilbertBurchData::new(vec![1, 1, 1], vec![q(0), q(1), q(2)]).unwrap();
        let r = expected_rees_matrix(&hb).unwrap();
        assert!(r.all_vanish());
        assert!(r.t_factors.is_empty());
        assert_eq!(r.fiber_minors.len(), 3);

        let hb = HilbertBurchData::new(vec![1, 1], vec![q(1), q(1)]).unwrap();
        assert!(expected_rees_matrix(&hb).is_err());
    }
}

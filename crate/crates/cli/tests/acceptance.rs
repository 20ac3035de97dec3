//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see them.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zlab::reproduce::{ideal, CONTRACTED_85, GENERIC_1012131515, GENERIC_578, INITIAL_32, LEX_85, TRANSFORM_EXAMPLE};
use zlab::scan::{self, ScanConfig};
use zlab_core::contracted::{self, HilbertBurchData};
use zlab_core::hilbert::{self, HfComparison, HilbertSeries};
use zlab_core::{census, genforms, lexseg, Certainty, ColumnSequence, DepthClassifier, Monomial, MonomialGeneratorSet};

const LIMIT_CONTRACTED_85: Duration = Duration::from_secs(1);
const LIMIT_IDENTITIES: Duration = Duration::from_secs(60);
const LIMIT_REES: Duration = Duration::from_secs(300);

const HB_SAMPLES: usize = 50;
const ORACLE_SAMPLES: usize = 200;
const GENERIC_SAMPLES: usize = 100;

fn verdict(n: u32, failures: &[String], detail: &str) {
    if failures.is_empty() {
        println!("PASS criterion {n}: {detail}");
    } else {
        println!("FAIL criterion {n}: {detail}");
        for f in failures {
            println!("     criterion {n}: {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {n}: {failures:?}");
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn series(a: &ColumnSequence) -> HilbertSeries {
    hilbert::hilbert_series(a).unwrap()
}

type Gens = Vec<(u64, u64)>;

fn raw_gens(a: &ColumnSequence) -> Gens {
    let d = a.d() as u64;
    a.entries().iter().enumerate().map(|(i, &v)| (d - i as u64, v)).collect()
}

fn member(g: &[(u64, u64)], u: u64, v: u64) -> bool {
    g.iter().any(|&(p, q)| u >= p && v >= q)
}

fn product(g: &[(u64, u64)], h: &[(u64, u64)]) -> Gens {
    let set: BTreeSet<_> = g.iter().flat_map(|&(p, q)| h.iter().map(move |&(r, s)| (p + r, q + s))).collect();
    set.into_iter().collect()
}

fn power(g: &[(u64, u64)], n: u32) -> Gens {
    (0..n).fold(vec![(0, 0)], |acc, _| product(&acc, g))
}

/// Points of the staircase box outside the ideal.
fn brute_colength(g: &[(u64, u64)]) -> u128 {
    let xmax = g.iter().filter(|m| m.1 == 0).map(|m| m.0).min().unwrap();
    let ymax = g.iter().filter(|m| m.0 == 0).map(|m| m.1).min().unwrap();
    let mut n = 0;
    for u in 0..xmax {
        for v in 0..ymax {
            if !member(g, u, v) {
                n += 1;
            }
        }
    }
    n
}

/// Monomials in `(I^(k+1) : I^k)` but not in `I`, by direct enumeration.
fn colon_excess(g: &[(u64, u64)], k: u32) -> Vec<(u64, u64)> {
    let (pk, pk1) = (power(g, k), power(g, k + 1));
    let xmax = g.iter().filter(|m| m.1 == 0).map(|m| m.0).min().unwrap();
    let ymax = g.iter().filter(|m| m.0 == 0).map(|m| m.1).min().unwrap();
    let mut out = Vec::new();
    for u in 0..xmax {
        for v in 0..ymax {
            if !member(g, u, v) && pk.iter().all(|&(p, q)| member(&pk1, u + p, v + q)) {
                out.push((u, v));
            }
        }
    }
    out
}

fn random_sequence(rng: &mut ChaCha8Rng, dmax: usize, admax: u64) -> ColumnSequence {
    let d = rng.gen_range(1..=dmax);
    let mut v: Vec<u64> = (0..d).map(|_| rng.gen_range(1..=admax)).collect();
    v.sort_unstable();
    let mut a = vec![0];
    a.extend(v);
    ColumnSequence::new(a).unwrap()
}

fn binom2(n: usize) -> i128 {
    (n * n.saturating_sub(1) / 2) as i128
}

fn trimmed(mut h: Vec<i128>) -> Vec<i128> {
    while h.last() == Some(&0) {
        h.pop();
    }
    h
}

#[test]
fn criterion_01_contracted_85() {
    let start = Instant::now();
    let (i, l) = (ideal(CONTRACTED_85), ideal(LEX_85));
    let (si, sl) = (series(&i), series(&l));
    let cmp = hilbert::compare_hf(&si, &sl);
    let elapsed = start.elapsed();
    let mut f = Vec::new();
    check(&mut f, si.h() == [85, 42, 10, -3], || format!("series of I: {:?}", si.h()));
    check(&mut f, sl.h() == [85, 43, 7, -1], || format!("series of L: expected [85, 43, 7, -1], computed {:?}", sl.h()));
    check(&mut f, cmp == HfComparison::Incomparable { first_violation: 2 }, || format!("comparison {cmp:?}"));
    check(&mut f, (si.hf(2), sl.hf(2)) == (349, 348), || format!("HF(2) = {} vs {}", si.hf(2), sl.hf(2)));
    check(&mut f, elapsed < LIMIT_CONTRACTED_85, || format!("runtime {elapsed:?} ≥ {LIMIT_CONTRACTED_85:?}"));
    verdict(1, &f, &format!("contracted 85 series, violation at n = 2, {elapsed:?}"));
}

#[test]
fn criterion_02_initial_32() {
    let a = ideal(INITIAL_32);
    let s = series(&a);
    let v = DepthClassifier::default().classify(&a).unwrap();
    let mut f = Vec::new();
    check(&mut f, s.h() == [32, 16, 4, -2], || format!("series: expected [32, 16, 4, -2], computed {:?}", s.h()));
    check(&mut f, v.depth == 0 && v.certainty == Certainty::Exact, || format!("depth verdict {v:?}"));
    check(&mut f, v.certificate.starts_with("ratliff-rush"), || format!("certificate {:?}", v.certificate));
    let g = raw_gens(&a);
    let witness = (1..=4).find(|&k| !colon_excess(&g, k).is_empty());
    check(&mut f, witness.is_some(), || "colon-chain oracle finds no element outside I".into());
    let rr = lexseg::ratliff_rush(&a, 4);
    check(&mut f, rr.witness_k == witness, || format!("witness k {:?} vs oracle {witness:?}", rr.witness_k));
    verdict(2, &f, &format!("initial ideal depth 0 via {:?}, oracle witness k = {witness:?}", v.certificate));
}

#[test]
fn criterion_03_transform() {
    let t = lexseg::transform(&ideal(TRANSFORM_EXAMPLE)).unwrap();
    let expected = ColumnSequence::from_generators(&[Monomial::new(3, 0), Monomial::new(1, 1), Monomial::new(0, 6)]).unwrap();
    let mut f = Vec::new();
    check(&mut f, t == expected, || format!("transform {}", t.minimal_generators()));
    verdict(3, &f, &format!("transform = {}", t.minimal_generators()));
}

#[test]
fn criterion_04_generic_578() {
    let l = genforms::generic_lex(&GENERIC_578).unwrap();
    let dh = genforms::delta(&genforms::generic_hs(&GENERIC_578).unwrap());
    let j = MonomialGeneratorSet::new([Monomial::new(5, 0), Monomial::new(0, 9)]);
    let v = DepthClassifier::default().classify(&l).unwrap();
    let mut f = Vec::new();
    check(&mut f, l.minimal_generators().to_string() == "g:(5,0)(4,3)(3,5)(2,6)(1,8)(0,9)", || {
        format!("lex {}", l.minimal_generators())
    });
    check(&mut f, dh == [1, 1, 1, 1, 1, 0, 0, -1, -2, -2], || format!("ΔH {dh:?}"));
    check(&mut f, lexseg::reduction_equality(&l, &j).unwrap(), || "I² ≠ JI".into());
    check(&mut f, v.depth == 2 && v.is_exact(), || format!("depth {v:?}"));
    verdict(4, &f, "generic (5,7,8): lex, ΔH, reduction, depth 2");
}

#[test]
fn criterion_05_generic_boundary() {
    let l = genforms::generic_lex(&GENERIC_1012131515).unwrap();
    let printed = "g:(10,0)(9,3)(8,5)(7,6)(6,8)(5,9)(4,11)(3,12)(2,13)(1,14)(0,16)";
    let s = series(&l);
    let v = DepthClassifier::default().classify(&l).unwrap();
    let mut f = Vec::new();
    check(&mut f, l.minimal_generators().to_string() == printed, || format!("lex {}", l.minimal_generators()));
    check(&mut f, s.h() == [97, 58, 0, 1], || format!("series {:?}", s.h()));
    check(&mut f, v.depth == 1 && v.is_exact(), || format!("depth {v:?}"));
    verdict(5, &f, "generic (10,12,13,15,15): 11 generators, numerator, depth exactly 1");
}

#[test]
fn criterion_06_square_free_characteristic_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let classifier = DepthClassifier::default();
    let mut f = Vec::new();
    for _ in 0..HB_SAMPLES {
        let d = rng.gen_range(1..=6usize);
        let b: Vec<u64> = (0..d).map(|_| rng.gen_range(1..=3)).collect();
        let mut alpha: Vec<i64> = Vec::new();
        while alpha.len() < d {
            let x = rng.gen_range(-6..=6);
            if !alpha.contains(&x) {
                alpha.push(x);
            }
        }
        let hb = HilbertBurchData::from_integers(b.clone(), &alpha).unwrap();
        let ledger = contracted::ledger_from_hilbert_burch(&hb);
        let hs = contracted::hilbert_series_composite(&ledger).unwrap();
        let lambda = contracted::colength_composite(&ledger).unwrap() as i128;
        let v = contracted::depth_composite(&ledger, &classifier).unwrap();
        let rm = zlab_core::rees::expected_rees_matrix(&hb).unwrap();
        let tag = format!("b={b:?} α={alpha:?}");
        check(&mut f, hs.h() == trimmed(vec![lambda, binom2(d)]), || format!("{tag}: h {:?}", hs.h()));
        check(&mut f, v.depth == 2 && v.is_exact(), || format!("{tag}: depth {v:?}"));
        check(&mut f, rm.all_vanish(), || format!("{tag}: non-vanishing minors {:?}", rm.nonvanishing));
    }
    verdict(6, &f, &format!("{HB_SAMPLES} random Hilbert–Burch inputs, d ≤ 6"));
}

#[test]
fn criterion_07_contracted_identities() {
    let start = Instant::now();
    let ideals = census::contracted_ideals(6, 12);
    let mut f = Vec::new();
    for a in &ideals {
        let z = contracted::monomial_zariski(a).unwrap();
        check(&mut f, z.reconstruct() == *a, || format!("{a}: reconstruction {}", z.reconstruct()));
        let ledger = contracted::ledger_from_monomial(a).unwrap();
        let r = contracted::colength_routes(&ledger);
        let lam = a.colength();
        check(&mut f, r.from_factors == lam && r.from_gcd_degrees == lam, || format!("{a}: colength {r:?} vs {lam}"));
        let e = contracted::multiplicity_composite(&ledger).unwrap();
        let direct = series(a).multiplicity();
        check(&mut f, e == direct, || format!("{a}: multiplicity {e} vs {direct}"));
    }
    let elapsed = start.elapsed();
    check(&mut f, elapsed < LIMIT_IDENTITIES, || format!("runtime {elapsed:?} ≥ {LIMIT_IDENTITIES:?}"));
    verdict(7, &f, &format!("{} contracted ideals (d ≤ 6, a_d ≤ 12), {elapsed:?}", ideals.len()));
}

#[test]
fn criterion_08_colength_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut f = Vec::new();
    for _ in 0..ORACLE_SAMPLES {
        let a = random_sequence(&mut rng, 6, 12);
        let g = raw_gens(&a);
        for n in 1..=4 {
            let fast = hilbert::hilbert_samuel(&a, n);
            let slow = brute_colength(&power(&g, n));
            check(&mut f, fast == slow, || format!("{a} n={n}: {fast} vs {slow}"));
        }
    }
    verdict(8, &f, &format!("{ORACLE_SAMPLES} random ideals, n ≤ 4, min-plus vs enumeration"));
}

#[test]
fn criterion_09_rees_families() {
    let start = Instant::now();
    let cfg = ScanConfig { dmax: 6, admax: 12, ..ScanConfig::default() };
    let r = scan::cmd_rees_verify(&cfg).unwrap();
    let elapsed = start.elapsed();
    let mut f = Vec::new();
    for row in &r.rows {
        check(&mut f, row.buchberger_ok, || format!("{} {}: Buchberger", row.ideal, row.family));
        check(&mut f, row.toric_ok, || format!("{} {}: {} toric violations", row.ideal, row.family, row.toric_violations));
    }
    for family in ["increasing", "generic"] {
        let rows: Vec<_> = r.rows.iter().filter(|row| row.family == family).collect();
        let normal = rows.iter().filter(|row| row.normal).count();
        let mismatched = rows.iter().filter(|row| row.normal != row.integrally_closed).count();
        check(&mut f, normal == rows.len(), || {
            format!("{family}: {normal} of {} bases have square-free leads", rows.len())
        });
        check(&mut f, mismatched == 0, || {
            format!("{family}: {mismatched} of {} disagree with integral closedness", rows.len())
        });
    }
    check(&mut f, elapsed < LIMIT_REES, || format!("runtime {elapsed:?} ≥ {LIMIT_REES:?}"));
    verdict(9, &f, &format!("{} family runs over the lex census (d ≤ 6, a_d ≤ 12), {elapsed:?}", r.rows.len()));
}

#[test]
fn criterion_10_property_suites() {
    let classifier = DepthClassifier::default();
    let mut f = Vec::new();

    let h1 = scan::cmd_scan_h1(&ScanConfig { dmax: 5, admax: 10, ..ScanConfig::default() }).unwrap();
    check(&mut f, h1.summary["violations"] == 0, || format!("h1 bound: {} violations", h1.summary["violations"]));

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..GENERIC_SAMPLES {
        let r = rng.gen_range(2..=5);
        let degrees: Vec<u64> = (0..r).map(|_| rng.gen_range(1..=10)).collect();
        let l = genforms::generic_lex(&degrees).unwrap();
        let v = classifier.classify(&l).unwrap();
        check(&mut f, v.depth >= 1 && v.is_exact(), || format!("generic {degrees:?}: {v:?}"));
    }

    let mut depth_two = 0;
    for d in 1..=9u64 {
        for r in 2..=5usize {
            let l = genforms::generic_lex(&vec![d; r]).unwrap();
            let v = classifier.classify(&l).unwrap();
            check(&mut f, v.depth == 2, || format!("equal degrees {d} x {r}: {v:?}"));
            depth_two += 1;
        }
    }
    let lex = census::lex_ideals(5, 10);
    for a in &lex {
        let p = lexseg::blocks(a).unwrap().p;
        let tail = &p[1..];
        let up = tail.first().is_none_or(|&x| x > 0) && tail.windows(2).all(|w| w[0] <= w[1]);
        let down = tail.windows(2).all(|w| w[0] >= w[1]);
        if up || down {
            let v = classifier.classify(a).unwrap();
            check(&mut f, v.depth == 2 && v.is_exact(), || format!("monotone blocks {a}: {v:?}"));
            depth_two += 1;
        }
    }

    let mut compared = 0;
    for a in &lex {
        let t = lexseg::transform(a).unwrap();
        if t.is_unit() {
            continue;
        }
        let (vl, vt) = (classifier.classify(a).unwrap(), classifier.classify(&t).unwrap());
        if vl.is_exact() && vt.is_exact() {
            compared += 1;
            check(&mut f, vl.depth == vt.depth, || format!("{a} -> {t}: {} vs {}", vl.depth, vt.depth));
        }
    }

    let h2 = scan::cmd_scan_h2(&ScanConfig { dmax: 5, admax: 10, ..ScanConfig::default() }).unwrap();
    check(&mut f, h2.rows.len() == lex.len(), || "h2 scan incomplete".into());
    verdict(
        10,
        &f,
        &format!(
            "h1 on {} lex ideals; {GENERIC_SAMPLES} generic; {depth_two} depth-2 cases; {compared} transform pairs; h2 report: {} negative, min {}",
            h1.rows.len(),
            h2.summary["negative_h2"],
            h2.summary.get("min_h2").copied().unwrap_or(0),
        ),
    );
}

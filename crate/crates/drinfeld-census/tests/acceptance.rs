//! Acceptance gate: one test per criterion, named criterion_NN_*, each
//! printing a "criterion N: PASS/FAIL" line with the measured values.
//!
//! Criteria 1 and 8 assert properties of the underlying mathematics that
//! the exact data refutes at desk scale (the rank-1 ratio oscillates with
//! the parity of the top degree instead of decreasing, and the rank-2
//! Undetermined fraction rises from the L=1 transient).  Those tests state
//! the criteria faithfully and fail honestly; the counterexamples are in
//! their output.

use std::collections::BTreeMap;
use std::process::Command;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use drinfeld_census::drinfeld::DrinfeldModule;
use drinfeld_census::galois::{
    contains_sl2, det_compatibility_check, frobenius_matrix, frobenius_matrix_shuffled,
    generated_subgroup, sl2_order, ClassTable, Mat2, ResidueField,
};
use drinfeld_census::poly::monic_irreducibles;
use drinfeld_census::rank1::{nonsurjective_density_lower_bound, rank1_census, rank1_report};
use drinfeld_census::sieve::{
    joint_sl2_density_lower_bound, large_sieve_value, omega_census, rank2_box_size,
    sieve_bound_check, sl2_density_lower_bound, surjective_density_lower_bound, Orientation,
    SieveParams,
};
use drinfeld_census::{FieldCtx, FqPoly, PrimeIdeal};

fn field(q: u32) -> FieldCtx {
    let (p, e) = match q {
        4 => (2, 2),
        8 => (2, 3),
        9 => (3, 2),
        _ => (q, 1),
    };
    FieldCtx::new(p, e).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ratio(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[test]
fn criterion_01_rank1_ratio_vs_bound_and_monotone() {
    let mut violations = Vec::new();
    for q in [3u32, 4, 5, 7] {
        let k = field(q);
        let bound = nonsurjective_density_lower_bound(q);
        let mut prev: Option<BigRational> = None;
        for l in 2..=8 {
            let c = rank1_census(&k, l).unwrap();
            let r = ratio(c.nonsurjective, c.box_size);
            if r < bound {
                violations.push(format!(
                    "q={q} L={l}: ratio {}/{} < bound {}",
                    c.nonsurjective, c.box_size, bound
                ));
            }
            if let Some(p) = &prev {
                if &r > p {
                    violations.push(format!(
                        "q={q} L={l}: ratio {}/{} increased from {} at L={}",
                        c.nonsurjective,
                        c.box_size,
                        p,
                        l - 1
                    ));
                }
            }
            prev = Some(r);
        }
    }
    if violations.is_empty() {
        println!("criterion 1: PASS (ratio >= bound and non-increasing, q in {{3,4,5,7}}, L in 2..=8)");
    } else {
        println!("criterion 1: FAIL ({} violations)", violations.len());
        for v in &violations {
            println!("  {v}");
        }
    }
    assert!(violations.is_empty(), "rank-1 ratio vs bound: {violations:?}");
}

#[test]
fn criterion_02_rank1_hand_fixtures() {
    let k = field(5);
    let c1 = rank1_census(&k, 1).unwrap();
    assert_eq!(c1.nonsurjective, 0);
    let c2 = rank1_census(&k, 2).unwrap();
    assert_eq!(c2.nonsurjective, 10);
    assert_eq!(c2.tally.get(&2), Some(&5));
    assert_eq!(c2.tally.get(&4), Some(&5));

    // Independent oracle: exhaustive defect evaluation straight from the
    // closed formula, one nonzero Delta at a time.
    let mut oracle: BTreeMap<u64, u128> = BTreeMap::new();
    for code in 1..25u32 {
        let delta = FqPoly::from_coeffs(vec![(code % 5) as u8, (code / 5) as u8]);
        let rec = drinfeld_census::rank1::defect(&k, &delta).unwrap();
        if rec.defect > 1 {
            *oracle.entry(rec.defect).or_default() += 1;
        }
    }
    assert_eq!(oracle.values().sum::<u128>(), 10);
    let expected: BTreeMap<u64, u128> = [(2, 5), (4, 5)].into_iter().collect();
    assert_eq!(oracle, expected);
    println!("criterion 2: PASS (L=1 -> 0; L=2 -> 10 with tally {{2:5, 4:5}}, oracle agrees)");
}

#[test]
fn criterion_03_formula_reconciliation_report() {
    let mut flagged = 0;
    for q in [3u32, 4, 5] {
        let k = field(q);
        let report = rank1_report(&k, 8).unwrap();
        assert_eq!(report.rows.len(), 8, "report must cover L = 1..=8 at q = {q}");
        for (i, row) in report.rows.iter().enumerate() {
            assert_eq!(row.l, i + 1);
            // Completeness: both the formula and the census value are
            // present, and the agreement flag is computed honestly.
            let census = i128::try_from(row.nonsurjective).unwrap();
            assert_eq!(row.formula_agrees, row.formula_count == census);
            if !row.formula_agrees {
                flagged += 1;
            }
        }
    }
    println!(
        "criterion 3: PASS (reports complete for q in {{3,4,5}}, L <= 8; {flagged} divergences flagged, agreement reported not required)"
    );
}

#[test]
fn criterion_04_group_theory_suite() {
    for (q, want_order, want_classes) in [(4u32, 60u64, 5usize), (5, 120, 9)] {
        let k = field(q);
        let ell = PrimeIdeal::parse("T", &k).unwrap();
        let rf = ResidueField::new(&k, &ell).unwrap();
        let table = ClassTable::cached(&rf).unwrap();
        assert_eq!(sl2_order(rf.q_l()), want_order);
        assert_eq!(table.classes().len(), want_classes);
        assert_eq!(table.classes().iter().map(|c| c.size).sum::<u64>(), want_order);

        // Coverage criterion brute check: 500 seeded random generating
        // sets; meeting every SL2 class must imply containing SL2.
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + q as u64);
        let n = rf.q_l() as u16;
        let mut counterexamples = 0;
        for _ in 0..500 {
            let gens: Vec<Mat2> = (0..rng.random_range(1..=3usize))
                .map(|_| loop {
                    let m = Mat2::new(
                        rng.random_range(0..n),
                        rng.random_range(0..n),
                        rng.random_range(0..n),
                        rng.random_range(0..n),
                    );
                    if m.det(&rf) != 0 {
                        break m;
                    }
                })
                .collect();
            let sub = generated_subgroup(&rf, &gens).unwrap();
            let covers_all = table.coverage(sub.elems.iter()).iter().all(|&b| b);
            if covers_all && !contains_sl2(&rf, &sub) {
                counterexamples += 1;
            }
        }
        assert_eq!(counterexamples, 0, "coverage criterion failed at q = {q}");
    }
    println!(
        "criterion 4: PASS (|SL2(F4)| = 60 / 5 classes, |SL2(F5)| = 120 / 9 classes, sizes partition, 500 seeded coverage checks per field, zero counterexamples)"
    );
}

#[test]
fn criterion_05_det_compatibility() {
    let k = field(5);
    let ell = PrimeIdeal::parse("T", &k).unwrap();
    let rf = ResidueField::new(&k, &ell).unwrap();
    // (T - 1) = (T + 4) over F_5.
    let p = PrimeIdeal::parse("T+4", &k).unwrap();
    let mut checked = 0;
    for g1 in 0..5u8 {
        for g2 in 1..5u8 {
            let m = DrinfeldModule::rank2(
                &k,
                &FqPoly::from_coeffs(vec![g1]),
                &FqPoly::from_coeffs(vec![g2]),
            )
            .unwrap();
            assert!(det_compatibility_check(&m, &p, &rf).unwrap());
            checked += 1;
        }
    }
    assert_eq!(checked, 20);

    let primes = monic_irreducibles(&k, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut random_checked = 0;
    while random_checked < 50 {
        let g1 = FqPoly::from_coeffs((0..3).map(|_| rng.random_range(0..5u8)).collect());
        let g2 = FqPoly::from_coeffs((0..3).map(|_| rng.random_range(0..5u8)).collect());
        if g2.is_zero() {
            continue;
        }
        let p = &primes[rng.random_range(0..primes.len())];
        if p.gen() == ell.gen() || p.divides(&g2, &k) {
            continue;
        }
        let m = DrinfeldModule::rank2(&k, &g1, &g2).unwrap();
        assert!(
            det_compatibility_check(&m, p, &rf).unwrap(),
            "det mismatch at g1 = {}, g2 = {}, p = {}",
            g1.display(),
            g2.display(),
            p.display()
        );
        random_checked += 1;
    }
    println!("criterion 5: PASS (20/20 pairs at p = (T-1), 50/50 seeded (g1, g2, p) with deg p <= 2)");
}

#[test]
fn criterion_06_shuffled_basis_invariance() {
    let k = field(5);
    let ell = PrimeIdeal::parse("T", &k).unwrap();
    let rf = ResidueField::new(&k, &ell).unwrap();
    let primes = monic_irreducibles(&k, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut done = 0u64;
    while done < 20 {
        let g1 = FqPoly::from_coeffs((0..3).map(|_| rng.random_range(0..5u8)).collect());
        let g2 = FqPoly::from_coeffs((0..3).map(|_| rng.random_range(0..5u8)).collect());
        if g2.is_zero() {
            continue;
        }
        let p = &primes[rng.random_range(0..primes.len())];
        if p.gen() == ell.gen() || p.divides(&g2, &k) {
            continue;
        }
        let m = DrinfeldModule::rank2(&k, &g1, &g2).unwrap();
        let a = frobenius_matrix(&m, p, &rf).unwrap();
        let b = frobenius_matrix_shuffled(&m, p, &rf, done).unwrap();
        assert_eq!(
            a.char_poly(&rf),
            b.char_poly(&rf),
            "char poly moved under basis shuffle at g1 = {}, g2 = {}, p = {}",
            g1.display(),
            g2.display(),
            p.display()
        );
        done += 1;
    }
    println!("criterion 6: PASS (20 seeded instances, characteristic polynomial invariant under shuffled torsion bases)");
}

#[test]
fn criterion_07_omega_census_partition() {
    let mut cells = 0;
    for q in [4u32, 5] {
        let k = field(q);
        let deg1 = monic_irreducibles(&k, 1);
        for ell in &deg1 {
            for p in &deg1 {
                if p.gen() == ell.gen() {
                    continue;
                }
                let census = omega_census(&k, p, ell).unwrap();
                let total: u64 = census.rows.iter().map(|r| r.count).sum();
                assert_eq!(total, census.q_p * (census.q_p - 1));
                cells += census.rows.len();
            }
        }
    }
    println!("criterion 7: PASS (all degree-1 (p, ell) pairs at q in {{4,5}}: class counts partition |F_p|(|F_p|-1); {cells} cells checked)");
}

#[test]
fn criterion_08_rank2_density_vs_bound() {
    let cfg = drinfeld_census::runner::RunConfig {
        p: 5,
        e: 1,
        mode: drinfeld_census::runner::Mode::Rank2,
        l: 2,
        s: vec!["T".into()],
        d_cap: 2,
        seed: 0,
        cache_dir: None,
        format: drinfeld_census::runner::Format::Json,
        both_orientations: false,
    };
    let out = drinfeld_census::runner::run(&cfg).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let row = |l: u64| {
        rows.iter()
            .find(|r| r["L"] == l && r["ell"] == "T")
            .unwrap()
    };
    let r2 = row(2);
    let box2 = r2["box_size"].as_u64().unwrap();
    let contains = r2["contains_sl2"].as_u64().unwrap();
    assert_eq!(box2, 600);
    let frac_ok = ratio(contains as u128, box2 as u128) >= rat(4, 5);
    let undet1 = row(1)["undetermined_fraction"].as_str().unwrap().to_string();
    let undet2 = r2["undetermined_fraction"].as_str().unwrap().to_string();
    let monotone = r2["undet_nonincreasing_from_prev"].as_bool().unwrap();
    let verdict = if frac_ok && monotone { "PASS" } else { "FAIL" };
    println!(
        "criterion 8: {verdict} (ContainsSL2 fraction {contains}/{box2} >= 4/5: {frac_ok}; Undetermined fraction L=1 -> L=2: {undet1} -> {undet2}, non-increasing: {monotone})"
    );
    assert!(frac_ok, "l-adic ContainsSL2 fraction {contains}/{box2} < 4/5");
    assert!(
        monotone,
        "Undetermined fraction increased from {undet1} (L=1) to {undet2} (L=2)"
    );
}

#[test]
fn criterion_09_sieve_fixtures() {
    let k = field(5);
    // All-ones a: every factor vanishes, L(K) = 1 for K <= 4.
    for k_cut in 0..=4 {
        let entries = monic_irreducibles(&k, k_cut)
            .into_iter()
            .map(|p| (p, BigRational::from_integer(BigInt::from(1))))
            .collect();
        let params = SieveParams::new(k_cut, entries).unwrap();
        assert_eq!(
            large_sieve_value(&k, &params, Orientation::Standard).unwrap(),
            BigRational::from_integer(BigInt::from(1))
        );
    }
    // Hand case: q = 5, K = 1, a = 1/2 everywhere.
    let entries = monic_irreducibles(&k, 1).into_iter().map(|p| (p, rat(1, 2))).collect();
    let params = SieveParams::new(1, entries).unwrap();
    let hand = large_sieve_value(&k, &params, Orientation::Standard).unwrap();
    assert_eq!(hand, rat(6, 1));

    // The inequality on the q = 5, L = 2 rank-2 census with K = 1: the
    // 600-pair box against every per-class sieve value derived from the
    // omega censuses at the degree-1 primes.
    let ell = PrimeIdeal::parse("T", &k).unwrap();
    let rf = ResidueField::new(&k, &ell).unwrap();
    let table = ClassTable::cached(&rf).unwrap();
    let box_count = rank2_box_size(5, 2);
    let census_primes: Vec<PrimeIdeal> = monic_irreducibles(&k, 1)
        .into_iter()
        .filter(|p| p.gen() != ell.gen())
        .collect();
    let censuses: Vec<_> = census_primes
        .iter()
        .map(|p| omega_census(&k, p, &ell).unwrap())
        .collect();
    for info in table.classes() {
        let mut entries = Vec::new();
        for (p, census) in census_primes.iter().zip(&censuses) {
            let count: u64 = census
                .rows
                .iter()
                .filter(|r| r.class_id == Some(info.id))
                .map(|r| r.count)
                .sum();
            if count == 0 {
                continue;
            }
            let alpha = ratio(count as u128, (census.q_p * census.q_p) as u128);
            entries.push((p.clone(), BigRational::from_integer(BigInt::from(1)) - alpha));
        }
        let params = SieveParams::new(1, entries).unwrap();
        let l_value = large_sieve_value(&k, &params, Orientation::Standard).unwrap();
        let check = sieve_bound_check(5, 2, 1, box_count, &l_value);
        assert!(
            check.holds,
            "sieve bound fails for class {}: {} > {}",
            info.id, check.lhs, check.rhs
        );
    }
    // And with the hand-case value on the same box.
    assert!(sieve_bound_check(5, 2, 1, box_count, &hand).holds);
    println!(
        "criterion 9: PASS (all-ones L(K) = 1 for K <= 4; hand case L(1) = 6; bound holds on the 600-pair census for every SL2 class at K = 1)"
    );
}

#[test]
fn criterion_10_bound_evaluators() {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    for _ in 0..100 {
        let q = [3u32, 4, 5, 7, 9][rng.random_range(0..5usize)];
        let degs: Vec<usize> = (0..rng.random_range(0..=4usize))
            .map(|_| rng.random_range(1..=5usize))
            .collect();
        let joint = joint_sl2_density_lower_bound(q, &degs);
        let product: BigRational = degs
            .iter()
            .map(|&d| sl2_density_lower_bound(q, d))
            .product();
        assert_eq!(joint, product, "joint bound != product at q = {q}, degs = {degs:?}");
    }
    assert_eq!(joint_sl2_density_lower_bound(5, &[1]), rat(4, 5));
    assert_eq!(surjective_density_lower_bound(5, &[1]), rat(19, 30));
    assert_eq!(surjective_density_lower_bound(4, &[1]), rat(3, 4));
    println!(
        "criterion 10: PASS (joint = product on 100 random S; fixtures 4/5, 19/30, 3/4 exact)"
    );
}

#[test]
fn criterion_11_reproducibility() {
    let bin = env!("CARGO_BIN_EXE_census-cli");
    let args = [
        "--q", "5", "--mode", "rank2", "--L", "2", "--S", "T", "--frob-deg-cap", "2",
        "--seed", "3", "--format", "json",
    ];
    let run = |extra: &[&str]| {
        let out = Command::new(bin)
            .args(args)
            .args(extra)
            .env_remove("DD_CACHE_DIR")
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let first = run(&[]);
    let second = run(&[]);
    assert_eq!(first, second, "two identical runs must be byte-identical");

    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap().to_string();
    let cold = run(&["--cache-dir", &cache]);
    assert!(dir.path().join("rank2_q5.jsonl").exists());
    let warm = run(&["--cache-dir", &cache]);
    assert_eq!(cold, warm, "cache-warm rerun must match the cold run");
    assert_eq!(first, cold, "caching must not change the report");
    println!("criterion 11: PASS (byte-identical reruns; cache-warm output equals cold)");
}

//! Run configurations, the verdict cache, and report rendering for the CLI.
//!
//! Every mode produces a fully deterministic report: identical configs give
//! byte-identical output, and the rank-2 mode is resumable through an
//! append-only JSON-lines cache keyed by (prime, degree cap, coefficients).

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, Write as IoWrite};
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::drinfeld::DrinfeldModule;
use crate::field::FieldCtx;
use crate::galois::{
    frobenius_matrix, frobenius_matrix_shuffled, ClassTable, ModEllProber, ResidueField, Verdict,
};
use crate::poly::{monic_irreducibles, FqPoly, PrimeIdeal};
use crate::rank1::{rank1_report, Rank1Report};
use crate::sieve::{
    bound_report, joint_sl2_density_lower_bound, large_sieve_value, omega_census, rank2_box_size,
    sl2_density_lower_bound, BoundReport, Orientation, SieveParams,
};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Rank1,
    Rank2,
    Bounds,
    Sieve,
    GroupTables,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        Ok(match s {
            "rank1" => Mode::Rank1,
            "rank2" => Mode::Rank2,
            "bounds" => Mode::Bounds,
            "sieve" => Mode::Sieve,
            "group-tables" => Mode::GroupTables,
            other => {
                return Err(Error::Config(format!(
                    "unknown mode {other:?}; expected rank1|rank2|bounds|sieve|group-tables"
                )))
            }
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format> {
        Ok(match s {
            "json" => Format::Json,
            "csv" => Format::Csv,
            "table" => Format::Table,
            other => {
                return Err(Error::Config(format!(
                    "unknown format {other:?}; expected json|csv|table"
                )))
            }
        })
    }
}

/// One CLI invocation, fully validated before any work starts.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: u32,
    pub e: u32,
    pub mode: Mode,
    /// Degree box exponent; in sieve mode it feeds the bound context only.
    pub l: usize,
    /// Torsion primes, as parseable polynomial strings.
    pub s: Vec<String>,
    /// Degree cap for Frobenius sampling primes; the sieve cut-off K.
    pub d_cap: usize,
    /// Governs the shuffled-basis spot check in rank-2 runs.
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub both_orientations: bool,
}

/// Parse "5", "4", or "2^2" into (p, e).
pub fn parse_q(s: &str) -> Result<(u32, u32)> {
    let err = || Error::Config(format!("q must be a prime power like 5 or 2^2, got {s:?}"));
    if let Some((p, e)) = s.split_once('^') {
        let p: u32 = p.trim().parse().map_err(|_| err())?;
        let e: u32 = e.trim().parse().map_err(|_| err())?;
        return Ok((p, e));
    }
    let n: u32 = s.trim().parse().map_err(|_| err())?;
    if n < 2 {
        return Err(err());
    }
    let p = (2..=n).find(|d| n % d == 0).unwrap();
    let mut e = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    if m != 1 {
        return Err(Error::Config(format!("q = {n} is not a prime power")));
    }
    Ok((p, e))
}

pub fn run(cfg: &RunConfig) -> Result<String> {
    let k = FieldCtx::new(cfg.p, cfg.e)?;
    match cfg.mode {
        Mode::Rank1 => run_rank1(cfg, &k),
        Mode::Rank2 => run_rank2(cfg, &k),
        Mode::Bounds => run_bounds(cfg, &k),
        Mode::Sieve => run_sieve(cfg, &k),
        Mode::GroupTables => run_group_tables(cfg, &k),
    }
}

fn parse_primes(cfg: &RunConfig, k: &FieldCtx) -> Result<Vec<PrimeIdeal>> {
    if cfg.s.is_empty() {
        return Err(Error::Config("this mode needs at least one prime in S".into()));
    }
    cfg.s.iter().map(|s| PrimeIdeal::parse(s, k)).collect()
}

fn ratio_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn fraction(num: u64, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

// ---------------------------------------------------------------- rendering

fn render_json<T: Serialize>(report: &T) -> Result<String> {
    let s = serde_json::to_string_pretty(report)
        .map_err(|e| Error::Config(format!("serialization: {e}")))?;
    Ok(format!("{s}\n"))
}

fn render_csv(meta: &[(String, String)], header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for (key, value) in meta {
        out.push_str(&format!("# {key}={value}\n"));
    }
    out.push_str(&header.join(","));
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn render_table(meta: &[(String, String)], header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for (key, value) in meta {
        out.push_str(&format!("{key}: {value}\n"));
    }
    if !meta.is_empty() {
        out.push('\n');
    }
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (i, cell) in r.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let line = |cells: &[String]| -> String {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<w$}", c, w = widths[i]))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    out.push_str(&line(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>()));
    out.push('\n');
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

fn render(
    cfg: &RunConfig,
    json: Result<String>,
    meta: Vec<(String, String)>,
    header: &[&str],
    rows: Vec<Vec<String>>,
) -> Result<String> {
    match cfg.format {
        Format::Json => json,
        Format::Csv => Ok(render_csv(&meta, header, &rows)),
        Format::Table => Ok(render_table(&meta, header, &rows)),
    }
}

// -------------------------------------------------------------------- rank1

fn rank1_rows(report: &Rank1Report) -> Vec<Vec<String>> {
    report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.l.to_string(),
                r.box_size.to_string(),
                r.nonsurjective.to_string(),
                format!("{}/{}", r.ratio_num, r.ratio_den),
                r.formula_count.to_string(),
                r.formula_agrees.to_string(),
                r.ratio_ge_bound.to_string(),
                r.nonincreasing_from_prev
                    .map(|b| b.to_string())
                    .unwrap_or_default(),
                r.tally
                    .iter()
                    .map(|(d, c)| format!("{d}:{c}"))
                    .collect::<Vec<_>>()
                    .join(";"),
            ]
        })
        .collect()
}

fn run_rank1(cfg: &RunConfig, k: &FieldCtx) -> Result<String> {
    let report = rank1_report(k, cfg.l)?;
    let meta = vec![
        ("q".into(), report.q.to_string()),
        ("density_bound".into(), report.bound.clone()),
        ("monotone_from_l2".into(), report.monotone_from_l2.to_string()),
    ];
    let header = [
        "L",
        "box_size",
        "nonsurjective",
        "ratio",
        "formula_count",
        "formula_agrees",
        "ratio_ge_bound",
        "nonincreasing_from_prev",
        "tally",
    ];
    let rows = rank1_rows(&report);
    render(cfg, render_json(&report), meta, &header, rows)
}

// -------------------------------------------------------------------- rank2

const CACHE_SCHEMA: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheRecord {
    schema: u32,
    q: u32,
    ell: String,
    d_cap: usize,
    /// Base-q coefficient codes, constant digit first.
    g1: u64,
    g2: u64,
    verdict: String,
}

type VerdictKey = (String, usize, u64, u64);

struct VerdictCache {
    path: Option<PathBuf>,
    map: HashMap<VerdictKey, bool>,
}

impl VerdictCache {
    fn open(cfg: &RunConfig, q: u32) -> Result<VerdictCache> {
        let dir = std::env::var_os("DD_CACHE_DIR")
            .map(PathBuf::from)
            .or_else(|| cfg.cache_dir.clone());
        let Some(dir) = dir else {
            return Ok(VerdictCache { path: None, map: HashMap::new() });
        };
        fs::create_dir_all(&dir)?;
        let path = dir.join(format!("rank2_q{q}.jsonl"));
        let mut map = HashMap::new();
        if path.exists() {
            for line in BufReader::new(fs::File::open(&path)?).lines() {
                let Ok(rec) = serde_json::from_str::<CacheRecord>(&line?) else {
                    continue;
                };
                // First write wins; later duplicates never overwrite.
                if rec.schema == CACHE_SCHEMA && rec.q == q {
                    map.entry((rec.ell, rec.d_cap, rec.g1, rec.g2))
                        .or_insert(rec.verdict == "contains_sl2");
                }
            }
        }
        Ok(VerdictCache { path: Some(path), map })
    }

    fn get(&self, key: &VerdictKey) -> Option<bool> {
        self.map.get(key).copied()
    }

    fn append(&mut self, q: u32, records: &[(VerdictKey, bool)]) -> Result<()> {
        for (key, v) in records {
            self.map.entry(key.clone()).or_insert(*v);
        }
        let Some(path) = &self.path else { return Ok(()) };
        let mut f = fs::OpenOptions::new().create(true).append(true).open(path)?;
        for ((ell, d_cap, g1, g2), v) in records {
            let rec = CacheRecord {
                schema: CACHE_SCHEMA,
                q,
                ell: ell.clone(),
                d_cap: *d_cap,
                g1: *g1,
                g2: *g2,
                verdict: if *v { "contains_sl2" } else { "undetermined" }.into(),
            };
            let line = serde_json::to_string(&rec)
                .map_err(|e| Error::Config(format!("serialization: {e}")))?;
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn poly_of_code(mut code: u64, q: u32) -> FqPoly {
    let mut coeffs = Vec::new();
    while code > 0 {
        coeffs.push((code % q as u64) as u8);
        code /= q as u64;
    }
    FqPoly::from_coeffs(coeffs)
}

#[derive(Serialize, Clone, Debug)]
pub struct Rank2Row {
    #[serde(rename = "L")]
    pub l: usize,
    /// A prime from S, or "joint" for the all-primes row.
    pub ell: String,
    pub box_size: u128,
    pub contains_sl2: u64,
    pub undetermined: u64,
    /// contains_sl2 / box_size, exact.
    pub fraction: String,
    pub undetermined_fraction: String,
    /// The limiting density lower bound this fraction is compared against.
    pub density_bound: String,
    pub meets_bound: bool,
    /// Undetermined fraction compared with the same row at L-1; None on the
    /// first box.  The density-zero limit predicts non-increase.
    pub undet_nonincreasing_from_prev: Option<bool>,
}

#[derive(Serialize, Clone, Debug)]
pub struct Rank2Report {
    pub q: u32,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(rename = "L")]
    pub l: usize,
    pub d_cap: usize,
    pub seed: u64,
    pub rows: Vec<Rank2Row>,
}

/// Every pair (g1, g2 != 0) with both degrees below L, probed with the
/// l-adic verdict at every prime in S.  Undetermined counts against the
/// empirical fraction; there are no negative verdicts to count.
fn run_rank2(cfg: &RunConfig, k: &FieldCtx) -> Result<String> {
    let q = k.q();
    if q < 4 {
        return Err(Error::QTooSmall(q));
    }
    if cfg.l == 0 {
        return Err(Error::Config("rank2 mode needs L >= 1".into()));
    }
    let box_size = rank2_box_size(q, cfg.l);
    if box_size > 1_000_000 {
        return Err(Error::BoxTooLarge(cfg.l));
    }
    if cfg.d_cap == 0 {
        return Err(Error::Config("rank2 mode needs a positive prime degree cap".into()));
    }
    let primes = parse_primes(cfg, k)?;
    for p in &primes {
        if p.degree() > 2 {
            return Err(Error::Config(format!(
                "rank2 mode caps torsion primes at degree 2, got {}",
                p.display()
            )));
        }
    }
    let probers: Vec<ModEllProber> =
        primes.iter().map(|p| ModEllProber::new(k, p)).collect::<Result<_>>()?;

    let n = (q as u64).pow(cfg.l as u32);
    let mut cache = VerdictCache::open(cfg, q)?;
    let mut missing: Vec<(usize, u64, u64)> = Vec::new();
    for (i, p) in primes.iter().enumerate() {
        for c1 in 0..n {
            for c2 in 1..n {
                let key = (p.display(), cfg.d_cap, c1, c2);
                if cache.get(&key).is_none() {
                    missing.push((i, c1, c2));
                }
            }
        }
    }
    let computed: Vec<(VerdictKey, bool)> = missing
        .par_iter()
        .map(|&(i, c1, c2)| {
            let m = DrinfeldModule::rank2(k, &poly_of_code(c1, q), &poly_of_code(c2, q))?;
            let ev = probers[i].l_adic_verdict(&m, cfg.d_cap)?;
            let key = (primes[i].display(), cfg.d_cap, c1, c2);
            Ok((key, ev.verdict == Verdict::ContainsSL2))
        })
        .collect::<Result<_>>()?;
    cache.append(q, &computed)?;

    spot_check_shuffled_bases(cfg, k, &probers[0], n)?;

    let mut rows = Vec::new();
    for l in 1..=cfg.l {
        let sub_n = (q as u64).pow(l as u32);
        let sub_box = rank2_box_size(q, l);
        let mut joint = 0u64;
        let mut per_ell = vec![0u64; primes.len()];
        for c1 in 0..sub_n {
            for c2 in 1..sub_n {
                let mut all = true;
                for (i, p) in primes.iter().enumerate() {
                    let ok = cache
                        .get(&(p.display(), cfg.d_cap, c1, c2))
                        .expect("every pair was just computed or cached");
                    per_ell[i] += ok as u64;
                    all &= ok;
                }
                joint += all as u64;
            }
        }
        for (i, p) in primes.iter().enumerate() {
            let bound = sl2_density_lower_bound(q, p.degree());
            rows.push(rank2_row(l, p.display(), sub_box, per_ell[i], bound));
        }
        let degs: Vec<usize> = primes.iter().map(|p| p.degree()).collect();
        rows.push(rank2_row(
            l,
            "joint".into(),
            sub_box,
            joint,
            joint_sl2_density_lower_bound(q, &degs),
        ));
    }
    let per_l = primes.len() + 1;
    for i in per_l..rows.len() {
        let prev = &rows[i - per_l];
        debug_assert_eq!(prev.ell, rows[i].ell);
        let prev_frac = fraction(prev.undetermined, prev.box_size);
        let cur_frac = fraction(rows[i].undetermined, rows[i].box_size);
        rows[i].undet_nonincreasing_from_prev = Some(cur_frac <= prev_frac);
    }
    let report = Rank2Report {
        q,
        s: primes.iter().map(|p| p.display()).collect(),
        l: cfg.l,
        d_cap: cfg.d_cap,
        seed: cfg.seed,
        rows,
    };
    let meta = vec![
        ("q".into(), report.q.to_string()),
        ("S".into(), report.s.join(";")),
        ("d_cap".into(), report.d_cap.to_string()),
        ("seed".into(), report.seed.to_string()),
    ];
    let header = [
        "L",
        "ell",
        "box_size",
        "contains_sl2",
        "undetermined",
        "fraction",
        "undetermined_fraction",
        "density_bound",
        "meets_bound",
        "undet_nonincreasing_from_prev",
    ];
    let table_rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.l.to_string(),
                r.ell.clone(),
                r.box_size.to_string(),
                r.contains_sl2.to_string(),
                r.undetermined.to_string(),
                r.fraction.clone(),
                r.undetermined_fraction.clone(),
                r.density_bound.clone(),
                r.meets_bound.to_string(),
                r.undet_nonincreasing_from_prev
                    .map(|b| b.to_string())
                    .unwrap_or_default(),
            ]
        })
        .collect();
    render(cfg, render_json(&report), meta, &header, table_rows)
}

fn rank2_row(
    l: usize,
    ell: String,
    box_size: u128,
    contains: u64,
    bound: BigRational,
) -> Rank2Row {
    let frac = fraction(contains, box_size);
    let undet = box_size as u64 - contains;
    Rank2Row {
        l,
        ell,
        box_size,
        contains_sl2: contains,
        undetermined: undet,
        fraction: ratio_str(&frac),
        undetermined_fraction: ratio_str(&fraction(undet, box_size)),
        density_bound: ratio_str(&bound),
        meets_bound: frac >= bound,
        undet_nonincreasing_from_prev: None,
    }
}

/// Recompute a seeded sample of Frobenius matrices with a shuffled root
/// scan and insist the characteristic polynomial does not move.  A failure
/// here means the torsion basis machinery is broken, so it is fatal.
fn spot_check_shuffled_bases(
    cfg: &RunConfig,
    k: &FieldCtx,
    prober: &ModEllProber,
    n: u64,
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let good_primes: Vec<PrimeIdeal> = monic_irreducibles(k, cfg.d_cap)
        .into_iter()
        .filter(|p| p.gen() != prober.ell().gen())
        .collect();
    for trial in 0..8 {
        let g1 = poly_of_code(rng.random_range(0..n), k.q());
        let g2 = poly_of_code(rng.random_range(1..n), k.q());
        let m = DrinfeldModule::rank2(k, &g1, &g2)?;
        let Some(p) = good_primes.iter().find(|p| !p.divides(m.g(2), k)) else {
            continue;
        };
        let a = frobenius_matrix(&m, p, prober.rf())?;
        let b = frobenius_matrix_shuffled(&m, p, prober.rf(), cfg.seed ^ trial)?;
        if a.char_poly(prober.rf()) != b.char_poly(prober.rf()) {
            return Err(Error::Config(format!(
                "shuffled-basis cross-check failed at (g1, g2) = ({}, {}), p = {}",
                g1.display(),
                g2.display(),
                p.display()
            )));
        }
    }
    Ok(())
}

// ------------------------------------------------------------------- bounds

fn run_bounds(cfg: &RunConfig, k: &FieldCtx) -> Result<String> {
    let primes = parse_primes(cfg, k)?;
    let report: BoundReport = bound_report(k, &primes);
    let meta = vec![
        ("q".into(), report.q.to_string()),
        ("S".into(), report.s.join(";")),
    ];
    let header = ["kind", "key", "value"];
    let mut rows = Vec::new();
    for (ell, v) in &report.per_ell {
        rows.push(vec!["per_ell".to_string(), ell.clone(), v.clone()]);
    }
    rows.push(vec!["joint".to_string(), String::new(), report.joint.clone()]);
    rows.push(vec![
        "surjective".to_string(),
        String::new(),
        report.surjective.clone(),
    ]);
    render(cfg, render_json(&report), meta, &header, rows)
}

// -------------------------------------------------------------------- sieve

#[derive(Serialize, Clone, Debug)]
pub struct SieveRow {
    /// None marks the all-ones baseline row.
    pub class_id: Option<u32>,
    pub class_size: Option<u64>,
    /// L(K) in the standard orientation, exact.
    pub l_value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_value_flipped: Option<String>,
    /// floor(q^(2 (m0 + 1)) / L(K)): the sieve cap on modules whose
    /// Frobenius avoids this class at every census prime.
    pub avoider_cap: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct SieveReport {
    pub q: u32,
    pub ell: String,
    pub k_cut: usize,
    pub box_exponent: usize,
    pub box_size: u128,
    pub m0: usize,
    pub rhs: String,
    pub census_primes: Vec<String>,
    pub rows: Vec<SieveRow>,
}

/// Per-SL2-class sieve values: censuses at every prime of degree <= K
/// produce confinement fractions alpha, the map a = 1 - alpha feeds L(K),
/// and each class row caps the count of modules avoiding it everywhere.
fn run_sieve(cfg: &RunConfig, k: &FieldCtx) -> Result<String> {
    let primes = parse_primes(cfg, k)?;
    if primes.len() != 1 {
        return Err(Error::Config(format!(
            "sieve mode uses a single torsion prime, got {} in S",
            primes.len()
        )));
    }
    let ell = &primes[0];
    let k_cut = cfg.d_cap;
    if k_cut == 0 {
        return Err(Error::Config("sieve mode needs a positive cut-off degree".into()));
    }
    let rf = ResidueField::new(k, ell)?;
    let table = ClassTable::cached(&rf)?;
    let census_primes: Vec<PrimeIdeal> = monic_irreducibles(k, k_cut)
        .into_iter()
        .filter(|p| p.gen() != ell.gen())
        .collect();
    // Per census prime: class id -> pair count, plus the prime's q_p^2.
    let mut class_counts: Vec<(PrimeIdeal, u64, HashMap<u32, u64>)> = Vec::new();
    for p in &census_primes {
        let census = omega_census(k, p, ell)?;
        let mut by_class = HashMap::new();
        for row in &census.rows {
            if let Some(id) = row.class_id {
                *by_class.entry(id).or_insert(0u64) += row.count;
            }
        }
        class_counts.push((p.clone(), census.q_p, by_class));
    }
    let q = k.q();
    let m0 = cfg.l.max((2 * k_cut).saturating_sub(1));
    let rhs = BigInt::from(q).pow(2 * (m0 as u32 + 1));
    let mut rows = Vec::new();
    let baseline = SieveParams::new(k_cut, vec![])?;
    let one = large_sieve_value(k, &baseline, Orientation::Standard)?;
    rows.push(SieveRow {
        class_id: None,
        class_size: None,
        l_value: ratio_str(&one),
        l_value_flipped: cfg
            .both_orientations
            .then(|| large_sieve_value(k, &baseline, Orientation::Flipped).map(|v| ratio_str(&v)))
            .transpose()?,
        avoider_cap: rhs.to_string(),
    });
    for info in table.classes() {
        let mut entries = Vec::new();
        for (p, q_p, by_class) in &class_counts {
            let count = by_class.get(&info.id).copied().unwrap_or(0);
            if count == 0 {
                // alpha = 0 means a = 1: the prime contributes factor 0
                // and is represented by omission.
                continue;
            }
            let alpha = BigRational::new(BigInt::from(count), BigInt::from(q_p * q_p));
            entries.push((p.clone(), BigRational::from_integer(BigInt::from(1)) - alpha));
        }
        let params = SieveParams::new(k_cut, entries)?;
        let l_std = large_sieve_value(k, &params, Orientation::Standard)?;
        let flipped = cfg
            .both_orientations
            .then(|| large_sieve_value(k, &params, Orientation::Flipped).map(|v| ratio_str(&v)))
            .transpose()?;
        let cap = BigRational::from_integer(rhs.clone()) / &l_std;
        rows.push(SieveRow {
            class_id: Some(info.id),
            class_size: Some(info.size),
            l_value: ratio_str(&l_std),
            l_value_flipped: flipped,
            avoider_cap: cap.floor().numer().to_string(),
        });
    }
    let report = SieveReport {
        q,
        ell: ell.display(),
        k_cut,
        box_exponent: cfg.l,
        box_size: rank2_box_size(q, cfg.l),
        m0,
        rhs: rhs.to_string(),
        census_primes: census_primes.iter().map(|p| p.display()).collect(),
        rows,
    };
    let meta = vec![
        ("q".into(), report.q.to_string()),
        ("ell".into(), report.ell.clone()),
        ("K".into(), report.k_cut.to_string()),
        ("box_exponent".into(), report.box_exponent.to_string()),
        ("m0".into(), report.m0.to_string()),
        ("rhs".into(), report.rhs.clone()),
    ];
    let header = ["class_id", "class_size", "l_value", "l_value_flipped", "avoider_cap"];
    let table_rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.class_id.map(|i| i.to_string()).unwrap_or_else(|| "baseline".into()),
                r.class_size.map(|s| s.to_string()).unwrap_or_default(),
                r.l_value.clone(),
                r.l_value_flipped.clone().unwrap_or_default(),
                r.avoider_cap.clone(),
            ]
        })
        .collect();
    render(cfg, render_json(&report), meta, &header, table_rows)
}

// ------------------------------------------------------------- group-tables

#[derive(Serialize, Clone, Debug)]
pub struct ClassRow {
    pub class_id: u32,
    pub size: u64,
    pub representative: String,
    pub trace: String,
    pub det: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct GroupTable {
    pub ell: String,
    pub group_order: u64,
    pub classes: Vec<ClassRow>,
}

#[derive(Serialize, Clone, Debug)]
pub struct GroupTablesReport {
    pub q: u32,
    pub tables: Vec<GroupTable>,
}

fn run_group_tables(cfg: &RunConfig, k: &FieldCtx) -> Result<String> {
    let primes = parse_primes(cfg, k)?;
    let mut tables = Vec::new();
    for ell in &primes {
        let rf = ResidueField::new(k, ell)?;
        let table = ClassTable::cached(&rf)?;
        let classes = table
            .classes()
            .iter()
            .map(|info| {
                let (tr, det) = info.rep.char_poly(&rf);
                ClassRow {
                    class_id: info.id,
                    size: info.size,
                    representative: info.rep.display(&rf),
                    trace: rf.display(tr),
                    det: rf.display(det),
                }
            })
            .collect();
        tables.push(GroupTable {
            ell: ell.display(),
            group_order: crate::galois::sl2_order(rf.q_l()),
            classes,
        });
    }
    let report = GroupTablesReport { q: k.q(), tables };
    let meta = vec![("q".into(), report.q.to_string())];
    let header = ["ell", "class_id", "size", "representative", "trace", "det"];
    let mut rows = Vec::new();
    for t in &report.tables {
        for c in &t.classes {
            rows.push(vec![
                t.ell.clone(),
                c.class_id.to_string(),
                c.size.to_string(),
                c.representative.clone(),
                c.trace.clone(),
                c.det.clone(),
            ]);
        }
    }
    render(cfg, render_json(&report), meta, &header, rows)
}

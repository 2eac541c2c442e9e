//! Exhaustive and seeded randomized verification suites over all partitions
//! up to a size bound, with machine-readable reports and counterexample
//! capture.
//!
//! Every suite iterates the partitions of 1..=nmax; each partition gets an
//! independent random stream derived from the master seed and the partition
//! itself, so reports are deterministic for a fixed [`Config`] regardless of
//! execution order or thread count, and estimates agree across suites.
//! Counterexamples never abort a suite — they are captured with full
//! reproduction data.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{hilbert_minimum, mcninch_pair, CommutingPair, PairAlgebra, PencilPoint};
use crate::commutant::{check_power_rank_bound, estimate_qp_in, jordan_matrix, sample_nilpotent};
use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::hilbert::HilbertFunction;
use crate::matrix::FieldMatrix;
use crate::partition::{partitions_of_bounded, Comparison, Partition};
use crate::rng::{parts_tag, Rng};

/// Shared configuration for all suites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Field modulus; must be prime and, unless small characteristic is
    /// explicitly allowed, larger than nmax.
    #[serde(rename = "p")]
    pub modulus: u64,
    /// Sampling trials per partition.
    pub trials: usize,
    /// Master seed; per-partition streams are derived from it.
    pub seed: u64,
    /// Exhaustive sweep bound: all partitions of 1..=nmax.
    pub nmax: usize,
    /// Permit moduli at or below nmax (characteristic-sensitivity runs).
    pub allow_small_characteristic: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            modulus: PrimeField::DEFAULT_MODULUS,
            trials: 20,
            seed: 0,
            nmax: 8,
            allow_small_characteristic: false,
        }
    }
}

impl Config {
    /// Validates the modulus and the run discipline p > nmax.
    pub fn field(&self) -> Result<PrimeField> {
        let field = PrimeField::new(self.modulus)?;
        if !self.allow_small_characteristic && self.modulus <= self.nmax as u64 {
            return Err(Error::InvalidConfig(format!(
                "modulus {} is not larger than nmax {}; pass allow_small_characteristic to override",
                self.modulus, self.nmax
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        Ok(field)
    }

    fn rng_for(&self, p: &Partition) -> Rng {
        Rng::new(self.seed).derive(parts_tag(p.parts()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// Verdict for one swept partition.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub partition: Partition,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A failed check with everything needed to reproduce it.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub partition: Partition,
    pub seed: u64,
    pub check: String,
    pub expected: String,
    pub observed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<FieldMatrix>,
}

/// Result of one suite run. Serialization omits the wall-clock duration so
/// identical configurations produce byte-identical reports.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub suite: String,
    pub config: Config,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub verdicts: Vec<Verdict>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip)]
    pub duration_ms: u128,
}

impl ExperimentReport {
    /// 0 = all pass, 1 = counterexamples, 2 = inconclusive sampling present.
    pub fn exit_status(&self) -> i32 {
        if self.failed > 0 {
            1
        } else if self.inconclusive > 0 {
            2
        } else {
            0
        }
    }
}

/// Exit status across several reports; counterexamples outrank inconclusive.
pub fn combined_exit_status(reports: &[ExperimentReport]) -> i32 {
    reports.iter().map(|r| r.exit_status()).max().unwrap_or(0)
}

/// JSON with sorted keys and a trailing newline; byte-stable for a fixed
/// value.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

/// Accumulates the checks run against one partition.
struct Checks {
    partition: Partition,
    seed: u64,
    notes: Vec<String>,
    inconclusive: Vec<String>,
    counterexamples: Vec<Counterexample>,
}

impl Checks {
    fn new(partition: &Partition, seed: u64) -> Self {
        Checks {
            partition: partition.clone(),
            seed,
            notes: Vec::new(),
            inconclusive: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    fn fail(&mut self, check: &str, expected: impl ToString, observed: impl ToString) {
        self.fail_with_matrix(check, expected, observed, None)
    }

    fn fail_with_matrix(
        &mut self,
        check: &str,
        expected: impl ToString,
        observed: impl ToString,
        matrix: Option<FieldMatrix>,
    ) {
        self.counterexamples.push(Counterexample {
            partition: self.partition.clone(),
            seed: self.seed,
            check: check.to_string(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            matrix,
        });
    }

    fn inconclusive(&mut self, msg: impl ToString) {
        self.inconclusive.push(msg.to_string());
    }

    fn note(&mut self, msg: impl ToString) {
        self.notes.push(msg.to_string());
    }

    fn finish(self) -> PartitionCheck {
        let status = if !self.counterexamples.is_empty() {
            Status::Fail
        } else if !self.inconclusive.is_empty() {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        let mut details: Vec<String> = self.inconclusive;
        details.extend(self.notes);
        PartitionCheck {
            verdict: Verdict {
                partition: self.partition,
                status,
                detail: if details.is_empty() {
                    None
                } else {
                    Some(details.join("; "))
                },
            },
            counterexamples: self.counterexamples,
        }
    }
}

struct PartitionCheck {
    verdict: Verdict,
    counterexamples: Vec<Counterexample>,
}

/// Applies `f` to each partition, optionally on several worker threads;
/// results come back in input order either way.
fn par_map<T, F>(partitions: &[Partition], jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Partition) -> T + Sync,
{
    if jobs <= 1 {
        return partitions.iter().map(&f).collect();
    }
    let slots: Vec<Mutex<Option<T>>> = partitions.iter().map(|_| Mutex::new(None)).collect();
    let cursor = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                if i >= partitions.len() {
                    break;
                }
                let out = f(&partitions[i]);
                *slots[i].lock().unwrap() = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("all slots filled"))
        .collect()
}

fn swept_partitions(cfg: &Config, nmin: usize) -> Result<Vec<Partition>> {
    let mut partitions = Vec::new();
    for n in nmin..=cfg.nmax {
        partitions.extend(partitions_of_bounded(n, cfg.nmax.max(1))?);
    }
    Ok(partitions)
}

/// Runs `check` over every partition of nmin..=nmax.
fn sweep<F>(cfg: &Config, jobs: usize, nmin: usize, check: F) -> Result<Vec<PartitionCheck>>
where
    F: Fn(&Partition) -> PartitionCheck + Sync,
{
    Ok(par_map(&swept_partitions(cfg, nmin)?, jobs, check))
}

fn assemble(
    suite: &str,
    cfg: &Config,
    checks: Vec<PartitionCheck>,
    started: Instant,
) -> ExperimentReport {
    let mut verdicts = Vec::with_capacity(checks.len());
    let mut counterexamples = Vec::new();
    let (mut passed, mut failed, mut inconclusive) = (0, 0, 0);
    for c in checks {
        match c.verdict.status {
            Status::Pass => passed += 1,
            Status::Fail => failed += 1,
            Status::Inconclusive => inconclusive += 1,
        }
        counterexamples.extend(c.counterexamples);
        verdicts.push(c.verdict);
    }
    ExperimentReport {
        suite: suite.to_string(),
        config: cfg.clone(),
        total: verdicts.len(),
        passed,
        failed,
        inconclusive,
        verdicts,
        counterexamples,
        duration_ms: started.elapsed().as_millis(),
    }
}

/// Runs estimate_qp and folds an inconclusive-sampling error into the check
/// record.
fn estimate_or_flag(
    p: &Partition,
    field: PrimeField,
    trials: usize,
    rng: &mut Rng,
    checks: &mut Checks,
) -> Option<crate::commutant::QpEstimate> {
    match estimate_qp_in(p, field, trials, rng) {
        Ok(est) => Some(est),
        Err(Error::Inconclusive(msg)) => {
            checks.inconclusive(msg);
            None
        }
        Err(other) => {
            checks.fail("estimate-qp", "a partition estimate", other);
            None
        }
    }
}

/// Stability: a partition is a fixed point of the generic-commutator map
/// exactly when its parts differ pairwise by at least two; doubling the
/// multiplicity of a stable partition scales its estimate.
pub fn verify_stable(cfg: &Config, jobs: usize) -> Result<ExperimentReport> {
    let field = cfg.field()?;
    let started = Instant::now();
    let checks = sweep(cfg, jobs, 1, |p| {
        let mut rng = cfg.rng_for(p);
        let mut checks = Checks::new(p, rng.seed());
        if let Some(est) = estimate_or_flag(p, field, cfg.trials, &mut rng, &mut checks) {
            let fixed = est.partition == *p;
            if fixed != p.is_stable() {
                checks.fail(
                    "stable-iff-fixed-point",
                    format!("stable={} implies Q(P)=P iff stable", p.is_stable()),
                    format!("Q(P)={}", est.partition),
                );
            } else {
                checks.note(format!("QP={}", est.partition));
            }
        }
        if p.is_stable() && 2 * p.sum() <= cfg.nmax {
            let doubled = p.repeat(2);
            let mut rng2 = cfg.rng_for(&doubled);
            let mut scratch = Checks::new(&doubled, rng2.seed());
            if let Some(est) =
                estimate_or_flag(&doubled, field, cfg.trials, &mut rng2, &mut scratch)
            {
                let expected = p.scale(2);
                if est.partition != expected {
                    checks.fail(
                        "stable-doubling",
                        format!("Q(2P)={expected}"),
                        format!("Q(2P)={}", est.partition),
                    );
                }
            }
            checks.counterexamples.extend(scratch.counterexamples);
            checks.inconclusive.extend(scratch.inconclusive);
        }
        checks.finish()
    })?;
    Ok(assemble("stable", cfg, checks, started))
}

/// Where string combinatorics pins the answer (unique minimal decomposition,
/// equal-length strings), the sampled estimate matches the block sums.
pub fn verify_qp_strings(cfg: &Config, jobs: usize) -> Result<ExperimentReport> {
    let field = cfg.field()?;
    let started = Instant::now();
    let checks = sweep(cfg, jobs, 1, |p| {
        let mut rng = cfg.rng_for(p);
        let mut checks = Checks::new(p, rng.seed());
        match p.qp_predicted() {
            None => checks.note("not applicable"),
            Some(predicted) => {
                if let Some(est) = estimate_or_flag(p, field, cfg.trials, &mut rng, &mut checks) {
                    if est.partition != predicted {
                        checks.fail(
                            "qp-strings",
                            format!("Q(P)={predicted}"),
                            format!("Q(P)={}", est.partition),
                        );
                    }
                }
            }
        }
        checks.finish()
    })?;
    Ok(assemble("qp-strings", cfg, checks, started))
}

/// The estimate has exactly r_P parts, dominates every observation, and every
/// sample satisfies the power-rank inequality rank((A^{s_P})^m) ≤ rank(B^m).
pub fn verify_parts_and_dominance(cfg: &Config, jobs: usize) -> Result<ExperimentReport> {
    let field = cfg.field()?;
    let started = Instant::now();
    let checks = sweep(cfg, jobs, 1, |p| {
        let mut rng = cfg.rng_for(p);
        let mut checks = Checks::new(p, rng.seed());
        let stats = p.string_stats();
        if let Some(est) = estimate_or_flag(p, field, cfg.trials, &mut rng, &mut checks) {
            if est.partition.num_parts() != stats.min_strings {
                checks.fail(
                    "parts-count",
                    format!("{} parts", stats.min_strings),
                    format!(
                        "Q(P)={} with {} parts",
                        est.partition,
                        est.partition.num_parts()
                    ),
                );
            }
            for obs in &est.observed {
                match est.partition.dominance(obs) {
                    Ok(Comparison::Greater) | Ok(Comparison::Equal) => {}
                    other => checks.fail(
                        "dominates-observed",
                        format!("Q(P)={} >= {obs}", est.partition),
                        format!("{other:?}"),
                    ),
                }
            }
            // identical derived stream: the samples below are the estimate's
            let mut replay = cfg.rng_for(p);
            for (t, obs) in est.observed.iter().enumerate() {
                let a = sample_nilpotent(p, field, &mut replay);
                debug_assert_eq!(&a.jordan_partition().unwrap(), obs);
                match check_power_rank_bound(p, &a, p.sum()) {
                    Ok(true) => {}
                    Ok(false) => checks.fail_with_matrix(
                        "power-rank-bound",
                        format!(
                            "rank((A^{})^m) <= rank(B^m) for all m",
                            stats.longest_string
                        ),
                        format!("violated on trial {t}"),
                        Some(a),
                    ),
                    Err(e) => checks.fail_with_matrix(
                        "power-rank-bound",
                        "sample in the nilpotent commutator",
                        e,
                        Some(a),
                    ),
                }
            }
        }
        checks.finish()
    })?;
    Ok(assemble("parts-dominance", cfg, checks, started))
}

/// Pure combinatorics: grouping the partitions of each n by diagonal
/// lengths, the bar-graph partition of each group is its unique dominance
/// maximum, and the partition/Hilbert-function bijection reverses order on
/// strictly decreasing partitions.
pub fn verify_ph_maximality(cfg: &Config, _jobs: usize) -> Result<ExperimentReport> {
    if cfg.nmax > 14 {
        return Err(Error::InvalidConfig(format!(
            "ph-maximality is brute force; nmax {} exceeds 14",
            cfg.nmax
        )));
    }
    cfg.field()?;
    let started = Instant::now();
    let mut checks = Vec::new();
    for n in 1..=cfg.nmax {
        let all: Vec<Partition> = partitions_of_bounded(n, 14)?.collect();
        let decreasing: Vec<&Partition> = all
            .iter()
            .filter(|q| q.parts().windows(2).all(|w| w[0] > w[1]))
            .collect();
        for p in &all {
            let mut c = Checks::new(p, cfg.seed);
            match p.diagonal_hilbert() {
                Err(e) => c.fail("diagonal-shape", "a codimension-two sequence", e),
                Ok(h) => {
                    let top = h.to_partition();
                    if top.diagonal_lengths() != p.diagonal_lengths() {
                        c.fail(
                            "ph-in-group",
                            format!("diagonal lengths {h}"),
                            format!("P(H)={top} with other diagonal lengths"),
                        );
                    }
                    match top.dominance(p) {
                        Ok(Comparison::Greater) | Ok(Comparison::Equal) => {}
                        other => c.fail(
                            "ph-maximal",
                            format!("P(H)={top} >= {p}"),
                            format!("{other:?}"),
                        ),
                    }
                }
            }
            if p.parts().windows(2).all(|w| w[0] > w[1]) {
                match p.to_hilbert() {
                    Err(e) => c.fail("bijection", "a Hilbert function", e),
                    Ok(hp) => {
                        if hp.to_partition() != *p {
                            c.fail("bijection-roundtrip", p, hp.to_partition());
                        }
                        for q in &decreasing {
                            let hq = q.to_hilbert().expect("decreasing parts");
                            let fwd = p.dominance(q).expect("same n");
                            let rev = hp.compare(&hq).expect("same n");
                            let expected = match fwd {
                                Comparison::Less => Comparison::Greater,
                                Comparison::Greater => Comparison::Less,
                                other => other,
                            };
                            if rev != expected {
                                c.fail(
                                    "order-reversal",
                                    format!("H({p}) vs H({q}) ~ {expected:?}"),
                                    format!("{rev:?}"),
                                );
                            }
                        }
                    }
                }
            }
            checks.push(c.finish());
        }
    }
    Ok(assemble("ph-maximality", cfg, checks, started))
}

/// Sampled pairs (A, J_P): the algebra has full dimension, the generic
/// pencil partition equals the bar-graph partition of the Hilbert function,
/// and the commutator estimate equals both the dominance maximum of observed
/// pencil partitions and the bar-graph partition of the dominance-minimum
/// Hilbert function.
pub fn verify_pencil_and_hilbert(cfg: &Config, jobs: usize) -> Result<ExperimentReport> {
    let field = cfg.field()?;
    let started = Instant::now();
    let checks = sweep(cfg, jobs, 1, |p| {
        let n = p.sum();
        let mut rng = cfg.rng_for(p);
        let mut checks = Checks::new(p, rng.seed());
        let Some(est) = estimate_or_flag(p, field, cfg.trials, &mut rng, &mut checks) else {
            return checks.finish();
        };
        let b = jordan_matrix(p, field);
        let mut hs: Vec<HilbertFunction> = Vec::new();
        for t in 0..cfg.trials {
            let a = sample_nilpotent(p, field, &mut rng);
            let pair = match CommutingPair::new(a.clone(), b.clone()) {
                Ok(pair) => pair,
                Err(e) => {
                    checks.fail_with_matrix(
                        "pair-construction",
                        "a commuting nilpotent pair",
                        e,
                        Some(a),
                    );
                    continue;
                }
            };
            let alg = PairAlgebra::new(pair);
            if alg.dim() != n {
                checks.fail_with_matrix(
                    "generic-dimension",
                    format!("dim K[A,B] = {n}"),
                    alg.dim(),
                    Some(a),
                );
                continue;
            }
            let lh = alg.local_hilbert();
            let h = match lh.hilbert() {
                Ok(h) => h,
                Err(e) => {
                    checks.fail_with_matrix("hilbert-shape", "codimension-two shape", e, Some(a));
                    continue;
                }
            };
            match alg.generic_pencil_partition(5, &mut rng) {
                Err(Error::Inconclusive(msg)) => checks.inconclusive(format!("trial {t}: {msg}")),
                Err(e) => {
                    checks.fail_with_matrix("generic-pencil", "a pencil partition", e, Some(a))
                }
                Ok(gp) => {
                    let ph = h.to_partition();
                    if gp != ph {
                        checks.fail_with_matrix(
                            "pencil-equals-ph",
                            format!("P(H)={ph} for H={h}"),
                            format!("generic pencil {gp}"),
                            Some(a),
                        );
                    }
                }
            }
            hs.push(h);
        }
        if !hs.is_empty() {
            // distribution note: distinct H values with multiplicities
            let mut tally: std::collections::BTreeMap<String, usize> = Default::default();
            for h in &hs {
                *tally.entry(h.to_string()).or_default() += 1;
            }
            let dist: Vec<String> = tally.iter().map(|(k, v)| format!("{k} x{v}")).collect();
            checks.note(format!("H distribution: {}", dist.join(" | ")));
            let max_ph = crate::commutant::dominance_maximum(
                &hs.iter().map(|h| h.to_partition()).collect::<Vec<_>>(),
            );
            match max_ph {
                None => checks.inconclusive("no dominance maximum among observed P(H)"),
                Some(m) => {
                    if m != est.partition {
                        checks.fail(
                            "qp-equals-max-ph",
                            format!("Q(P)={}", est.partition),
                            format!("max P(H)={m}"),
                        );
                    }
                }
            }
            match hilbert_minimum(&hs) {
                None => checks.inconclusive("no dominance minimum among observed H"),
                Some(hmin) => {
                    if hmin.to_partition() != est.partition {
                        checks.fail(
                            "qp-equals-ph-of-hmin",
                            format!("Q(P)={}", est.partition),
                            format!("P(H_min)={} for H_min={hmin}", hmin.to_partition()),
                        );
                    }
                }
            }
        }
        checks.finish()
    })?;
    Ok(assemble("pencil-hilbert", cfg, checks, started))
}

/// Sampled generic pairs have Gorenstein algebras: one-dimensional socle,
/// Hilbert drops bounded by one beyond the order, and a stable estimate.
pub fn verify_gorenstein(cfg: &Config, jobs: usize) -> Result<ExperimentReport> {
    let field = cfg.field()?;
    let started = Instant::now();
    let checks = sweep(cfg, jobs, 1, |p| {
        let mut rng = cfg.rng_for(p);
        let mut checks = Checks::new(p, rng.seed());
        if let Some(est) = estimate_or_flag(p, field, cfg.trials, &mut rng, &mut checks) {
            if !est.partition.is_stable() {
                checks.fail(
                    "qp-stable",
                    "estimate with pairwise gaps >= 2",
                    format!("Q(P)={}", est.partition),
                );
            }
        }
        let b = jordan_matrix(p, field);
        for t in 0..cfg.trials {
            let a = sample_nilpotent(p, field, &mut rng);
            let pair = match CommutingPair::new(a.clone(), b.clone()) {
                Ok(pair) => pair,
                Err(e) => {
                    checks.fail_with_matrix(
                        "pair-construction",
                        "a commuting nilpotent pair",
                        e,
                        Some(a),
                    );
                    continue;
                }
            };
            let alg = PairAlgebra::new(pair);
            match alg.socle() {
                Err(e) => {
                    checks.fail_with_matrix("socle", "socle of the algebra", e, Some(a.clone()))
                }
                Ok(socle) => {
                    if !socle.gorenstein {
                        checks.fail_with_matrix(
                            "gorenstein",
                            "socle dimension 1",
                            format!("socle dimension {} on trial {t}", socle.socle_dim),
                            Some(a.clone()),
                        );
                    }
                }
            }
            if let Ok(h) = alg.local_hilbert().hilbert() {
                if !h.drops_bounded_by(2) {
                    checks.fail_with_matrix(
                        "hilbert-drops",
                        "drops of at most 1 beyond the order",
                        format!("H={h}"),
                        Some(a),
                    );
                }
            }
        }
        checks.finish()
    })?;
    Ok(assemble("gorenstein", cfg, checks, started))
}

/// Characteristic sensitivity of the tensor-product pair: over a small prime
/// dividing d the pencil partition collapses to (d,d); over the default
/// large prime it is (d+1, d−1).
pub fn characteristic_sensitivity(
    d: usize,
    p_small: u64,
    cfg: &Config,
) -> Result<ExperimentReport> {
    if !cfg.allow_small_characteristic {
        return Err(Error::InvalidConfig(
            "characteristic-sensitivity requires allow_small_characteristic".into(),
        ));
    }
    let small = PrimeField::new(p_small)?;
    if !d.is_multiple_of(p_small as usize) {
        return Err(Error::InvalidConfig(format!(
            "{p_small} does not divide d = {d}"
        )));
    }
    let started = Instant::now();
    let key = Partition::new(vec![d, d])?;
    let mut checks = Vec::new();
    let mut rng = Rng::new(cfg.seed).derive(d as u64);

    let small_alg = PairAlgebra::new(mcninch_pair(d, small)?);
    let expected_small = key.clone();
    let ts: Vec<u64> = (1..p_small).take(5).collect();
    for &t in &ts {
        let mut c = Checks::new(&key, cfg.seed);
        match small_alg.pencil_partition(PencilPoint::Finite(t)) {
            Err(e) => c.fail(
                "small-char-pencil",
                format!("partition {expected_small}"),
                e,
            ),
            Ok(got) => {
                if got == expected_small {
                    c.note(format!("p={p_small} t={t} -> {got}"));
                } else {
                    c.fail(
                        "small-char-pencil",
                        format!("p={p_small} t={t} -> {expected_small}"),
                        got,
                    );
                }
            }
        }
        checks.push(c.finish());
    }

    let large = PrimeField::default_field();
    let large_alg = PairAlgebra::new(mcninch_pair(d, large)?);
    let expected_large = Partition::new(vec![d + 1, d - 1])?;
    for _ in 0..5 {
        let t = rng.nonzero_element(large);
        let mut c = Checks::new(&key, cfg.seed);
        match large_alg.pencil_partition(PencilPoint::Finite(t)) {
            Err(e) => c.fail(
                "large-char-pencil",
                format!("partition {expected_large}"),
                e,
            ),
            Ok(got) => {
                if got == expected_large {
                    c.note(format!("p={} t={t} -> {got}", large.modulus()));
                } else {
                    c.fail(
                        "large-char-pencil",
                        format!("p={} t={t} -> {expected_large}", large.modulus()),
                        got,
                    );
                }
            }
        }
        checks.push(c.finish());
    }
    Ok(assemble("characteristic-sensitivity", cfg, checks, started))
}

/// One row of the summary table.
#[derive(Debug, Clone, Serialize)]
pub struct QpRow {
    pub partition: Partition,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qp: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_min: Option<HilbertFunction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qp_diagonal: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<usize>,
}

/// Summary table over all partitions of 0..=nmax.
#[derive(Debug, Clone, Serialize)]
pub struct QpTable {
    pub config: Config,
    pub rows: Vec<QpRow>,
    #[serde(skip)]
    pub duration_ms: u128,
}

impl QpTable {
    /// 0 unless some sampled column came back inconclusive.
    pub fn exit_status(&self) -> i32 {
        let incomplete = self
            .rows
            .iter()
            .any(|r| r.n > 0 && (r.qp.is_none() || r.h_min.is_none()));
        if incomplete {
            2
        } else {
            0
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "partition",
            "n",
            "r",
            "s",
            "stable",
            "predicted",
            "qp",
            "h_min",
            "qp_diagonal",
            "nu",
        ])
        .expect("in-memory write");
        for row in &self.rows {
            let fmt_opt = |x: &Option<String>| x.clone().unwrap_or_default();
            let diag = row.qp_diagonal.as_ref().map(|d| {
                d.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            });
            w.write_record([
                row.partition.to_string(),
                row.n.to_string(),
                row.r.to_string(),
                row.s.to_string(),
                row.stable.to_string(),
                fmt_opt(&row.predicted.as_ref().map(|p| p.to_string())),
                fmt_opt(&row.qp.as_ref().map(|p| p.to_string())),
                fmt_opt(&row.h_min.as_ref().map(|h| h.to_string())),
                fmt_opt(&diag),
                fmt_opt(&row.nu.as_ref().map(|v| v.to_string())),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf8")
    }
}

/// Per-partition summary: string statistics, predicted and sampled
/// commutator partitions, minimum observed Hilbert function, and the
/// diagonal lengths of the estimate with their order.
pub fn qp_table(cfg: &Config, jobs: usize) -> Result<QpTable> {
    let field = cfg.field()?;
    let started = Instant::now();
    let rows = par_map(&swept_partitions(cfg, 0)?, jobs, |p| {
        let n = p.sum();
        let mut rng = cfg.rng_for(p);
        let stats = p.string_stats();
        let mut row = QpRow {
            partition: p.clone(),
            n,
            r: stats.min_strings,
            s: stats.longest_string,
            stable: p.is_stable(),
            predicted: p.qp_predicted(),
            qp: None,
            h_min: None,
            qp_diagonal: None,
            nu: None,
        };
        if let Ok(est) = estimate_qp_in(p, field, cfg.trials, &mut rng) {
            row.qp_diagonal = Some(est.partition.diagonal_lengths());
            row.nu = est.partition.diagonal_hilbert().ok().map(|h| h.order());
            row.qp = Some(est.partition);
        }
        if n > 0 {
            let b = jordan_matrix(p, field);
            let mut hs = Vec::new();
            for _ in 0..cfg.trials {
                let a = sample_nilpotent(p, field, &mut rng);
                if let Ok(pair) = CommutingPair::new(a, b.clone()) {
                    let alg = PairAlgebra::new(pair);
                    if let Ok(h) = alg.local_hilbert().hilbert() {
                        hs.push(h);
                    }
                }
            }
            row.h_min = hilbert_minimum(&hs);
        }
        row
    });
    Ok(QpTable {
        config: cfg.clone(),
        rows,
        duration_ms: started.elapsed().as_millis(),
    })
}

/// All suites in a fixed, documented order.
pub const SUITE_ORDER: [&str; 6] = [
    "stable",
    "qp-strings",
    "parts-dominance",
    "ph-maximality",
    "pencil-hilbert",
    "gorenstein",
];

/// Runs a suite by name.
pub fn run_suite(name: &str, cfg: &Config, jobs: usize) -> Result<ExperimentReport> {
    match name {
        "stable" => verify_stable(cfg, jobs),
        "qp-strings" => verify_qp_strings(cfg, jobs),
        "parts-dominance" => verify_parts_and_dominance(cfg, jobs),
        "ph-maximality" => verify_ph_maximality(cfg, jobs),
        "pencil-hilbert" => verify_pencil_and_hilbert(cfg, jobs),
        "gorenstein" => verify_gorenstein(cfg, jobs),
        _ => Err(Error::InvalidConfig(format!("unknown suite {name:?}"))),
    }
}

/// Runs every suite in [`SUITE_ORDER`].
pub fn verify_all(cfg: &Config, jobs: usize) -> Result<Vec<ExperimentReport>> {
    SUITE_ORDER
        .iter()
        .map(|name| run_suite(name, cfg, jobs))
        .collect()
}

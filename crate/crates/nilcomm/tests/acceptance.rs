//! Acceptance suite: every shipping criterion, one pass/fail line each.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use nilcomm::algebra::{mcninch_pair, monomial_pair, CommutingPair, PairAlgebra, PencilPoint};
use nilcomm::commutant::{centralizer_basis, centralizer_dimension, estimate_qp, jordan_matrix};
use nilcomm::harness::{
    canonical_json, characteristic_sensitivity, qp_table, verify_all, verify_gorenstein,
    verify_parts_and_dominance, verify_pencil_and_hilbert, verify_ph_maximality, verify_qp_strings,
    verify_stable, Config,
};
use nilcomm::partition::partitions_of;
use nilcomm::{Comparison, FieldMatrix, HilbertFunction, Partition, PrimeField, Rng};

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn h(values: &[usize]) -> HilbertFunction {
    HilbertFunction::new(values.to_vec()).unwrap()
}

fn rng_for(q: &Partition) -> Rng {
    Rng::new(0).derive(nilcomm::rng::parts_tag(q.parts()))
}

/// Runs one criterion, printing a single pass/fail line with its duration.
fn criterion(id: u32, name: &str, budget: Duration, body: impl FnOnce()) {
    let started = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = started.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("ACCEPTANCE {id} {name}: PASS ({elapsed:.2?})");
        }
        Ok(()) => {
            println!("ACCEPTANCE {id} {name}: FAIL (exceeded budget {budget:.2?}: {elapsed:.2?})");
            panic!("criterion {id} exceeded its time budget");
        }
        Err(cause) => {
            println!("ACCEPTANCE {id} {name}: FAIL ({elapsed:.2?})");
            std::panic::resume_unwind(cause);
        }
    }
}

#[test]
fn criterion_1_pinned_value_fixtures() {
    criterion(1, "pinned-value fixtures", Duration::from_secs(5), || {
        // generic commutator partitions; the 42-box fixture is pinned here
        assert_eq!(
            estimate_qp(&p(&[3, 1, 1]), 20, &mut rng_for(&p(&[3, 1, 1])))
                .unwrap()
                .partition,
            p(&[4, 1])
        );
        assert_eq!(
            estimate_qp(&p(&[5, 4, 2, 2]), 20, &mut rng_for(&p(&[5, 4, 2, 2])))
                .unwrap()
                .partition,
            p(&[9, 4])
        );
        let big = p(&[8, 7, 7, 5, 5, 4, 2, 2, 2]);
        let big_started = Instant::now();
        assert_eq!(
            estimate_qp(&big, 20, &mut rng_for(&big)).unwrap().partition,
            p(&[22, 14, 6])
        );
        assert!(big_started.elapsed() < Duration::from_secs(1));

        // bar-graph partitions of Hilbert functions
        assert_eq!(h(&[1, 2, 3, 2, 1]).to_partition(), p(&[5, 3, 1]));
        assert_eq!(
            h(&[1, 2, 3, 4, 3, 3, 2, 1]).to_partition(),
            p(&[8, 6, 4, 1])
        );

        // diagonal lengths and duals
        assert_eq!(p(&[3, 1, 1]).diagonal_lengths(), vec![1, 2, 2]);
        assert_eq!(p(&[6, 4, 3]).dual(), p(&[3, 3, 3, 2, 1, 1]));

        // Hilbert functions of decreasing partitions, with the order relation
        let h1 = p(&[6, 4, 3]).to_hilbert().unwrap();
        let h2 = p(&[6, 4, 2, 1]).to_hilbert().unwrap();
        assert_eq!(h1, h(&[1, 2, 3, 3, 3, 1]));
        assert_eq!(h2, h(&[1, 2, 3, 4, 2, 1]));
        assert_eq!(h1.compare(&h2).unwrap(), Comparison::Less);

        // string statistics
        let stats = p(&[5, 4, 4, 3, 2]).string_stats();
        assert_eq!((stats.min_strings, stats.longest_string), (2, 3));
        assert_eq!(
            p(&[8, 7, 7, 7, 5, 5, 4, 2, 1]).string_stats().min_strings,
            3
        );
        assert_eq!(p(&[5, 4, 3, 2, 1]).string_stats().min_strings, 3);

        // block sums of string decompositions
        let src = p(&[3, 3, 3, 2, 2, 1]);
        let d1 =
            nilcomm::StringDecomposition::new(&src, vec![p(&[3, 3, 3]), p(&[2, 2, 1])]).unwrap();
        assert_eq!(d1.tilde(), p(&[9, 5]));
        let d2 =
            nilcomm::StringDecomposition::new(&src, vec![p(&[3, 3, 3, 2, 2]), p(&[1])]).unwrap();
        assert_eq!(d2.tilde(), p(&[13, 1]));

        // powers of a single Jordan block, combinatorially and by rank
        let seven = p(&[7]);
        assert_eq!(seven.power(2), p(&[4, 3]));
        assert_eq!(seven.power(3), p(&[3, 2, 2]));
        assert_eq!(seven.power(4), p(&[2, 2, 2, 1]));
        let j7 = jordan_matrix(&seven, PrimeField::default_field());
        for i in [2usize, 3, 4] {
            assert_eq!(
                j7.pow(i).unwrap().jordan_partition().unwrap(),
                seven.power(i)
            );
        }
    });
}

#[test]
fn criterion_2_pinned_pair_end_to_end() {
    criterion(
        2,
        "pinned 5x5 pair end-to-end",
        Duration::from_secs(1),
        || {
            let field = PrimeField::default_field();
            let b = jordan_matrix(&p(&[3, 1, 1]), field);
            let a = FieldMatrix::from_rows(
                field,
                &[
                    vec![0, 1, 1, 1, 1],
                    vec![0, 0, 1, 0, 0],
                    vec![0, 0, 0, 0, 0],
                    vec![0, 0, 1, 0, 1],
                    vec![0, 0, 1, 0, 0],
                ],
            )
            .unwrap();
            let alg = PairAlgebra::new(CommutingPair::new(a, b).unwrap());
            assert_eq!(alg.dim(), 5);
            assert_eq!(alg.local_hilbert().hilbert().unwrap(), h(&[1, 2, 1, 1]));
            assert_eq!(
                alg.multiplication_matrix(alg.pair().a())
                    .unwrap()
                    .jordan_partition()
                    .unwrap(),
                p(&[4, 1])
            );
            assert_eq!(
                alg.multiplication_matrix(alg.pair().b())
                    .unwrap()
                    .jordan_partition()
                    .unwrap(),
                p(&[3, 1, 1])
            );
            assert_eq!(
                alg.generic_pencil_partition(5, &mut Rng::new(0)).unwrap(),
                p(&[4, 1])
            );
            let mono = monomial_pair(&p(&[4, 1]), field).unwrap();
            assert_eq!(mono.a().jordan_partition().unwrap(), p(&[2, 1, 1, 1]));
        },
    );
}

#[test]
fn criterion_3_characteristic_sensitivity() {
    criterion(
        3,
        "tensor-pair characteristic sensitivity",
        Duration::from_secs(1),
        || {
            let large = PairAlgebra::new(mcninch_pair(3, PrimeField::default_field()).unwrap());
            let mut rng = Rng::new(0);
            for _ in 0..5 {
                let t = rng.nonzero_element(PrimeField::default_field());
                assert_eq!(
                    large.pencil_partition(PencilPoint::Finite(t)).unwrap(),
                    p(&[4, 2])
                );
            }
            let small = PairAlgebra::new(mcninch_pair(3, PrimeField::new(3).unwrap()).unwrap());
            for t in [1u64, 2] {
                assert_eq!(
                    small.pencil_partition(PencilPoint::Finite(t)).unwrap(),
                    p(&[3, 3])
                );
            }
            // the harness view of the same contrast
            let cfg = Config {
                allow_small_characteristic: true,
                ..Config::default()
            };
            let report = characteristic_sensitivity(3, 3, &cfg).unwrap();
            assert_eq!(report.failed, 0, "{:?}", report.counterexamples);
            assert_eq!(report.inconclusive, 0);
        },
    );
}

#[test]
fn criterion_4_exhaustive_suites_nmax_8() {
    criterion(
        4,
        "exhaustive suites at nmax=8",
        Duration::from_secs(60),
        || {
            let cfg = Config::default(); // p = 2^31 - 1, trials = 20, seed = 0, nmax = 8
            let suites = [
                verify_stable(&cfg, 1).unwrap(),
                verify_qp_strings(&cfg, 1).unwrap(),
                verify_parts_and_dominance(&cfg, 1).unwrap(),
                verify_pencil_and_hilbert(&cfg, 1).unwrap(),
                verify_gorenstein(&cfg, 1).unwrap(),
            ];
            for report in &suites {
                assert_eq!(
                    report.failed, 0,
                    "suite {} counterexamples: {:?}",
                    report.suite, report.counterexamples
                );
                assert_eq!(
                    report.inconclusive, 0,
                    "suite {} inconclusive entries",
                    report.suite
                );
                // sum of p(n) for n in 1..=8
                assert_eq!(report.total, 66);
            }
        },
    );
}

#[test]
fn criterion_5_ph_maximality_nmax_12() {
    criterion(
        5,
        "P(H) maximality at nmax=12",
        Duration::from_secs(30),
        || {
            let cfg = Config {
                nmax: 12,
                ..Config::default()
            };
            let report = verify_ph_maximality(&cfg, 1).unwrap();
            assert_eq!(report.failed, 0, "{:?}", report.counterexamples);
            assert_eq!(report.inconclusive, 0);
            // sum of p(n) for n in 1..=12
            assert_eq!(report.total, 271);
        },
    );
}

#[test]
fn criterion_6_oracle_cross_checks() {
    criterion(6, "oracle cross-checks", Duration::from_secs(30), || {
        let field = PrimeField::default_field();
        // power partitions against matrix rank sequences, n <= 10
        for n in 1..=10 {
            for q in partitions_of(n).unwrap() {
                let j = jordan_matrix(&q, field);
                let mut power = FieldMatrix::identity(field, n);
                for i in 1..=n {
                    power = power.mul(&j).unwrap();
                    assert_eq!(
                        power.jordan_partition().unwrap(),
                        q.power(i),
                        "power partition P={q} i={i}"
                    );
                }
            }
        }
        // centralizer dimension formula against the construction, n <= 10
        for n in 1..=10 {
            for q in partitions_of(n).unwrap() {
                let cb = centralizer_basis(&q, field);
                assert_eq!(cb.dimension(), centralizer_dimension(&q), "P={q}");
                assert_eq!(
                    nilcomm::matrix::span_dimension(cb.basis()).unwrap(),
                    cb.dimension(),
                    "independence P={q}"
                );
            }
        }
        // rank identity rank(J_P^i) = n - (n(1) + ... + n(i)), n <= 12
        for n in 1..=12 {
            for q in partitions_of(n).unwrap() {
                let j = jordan_matrix(&q, field);
                let dual = q.dual();
                let mut power = FieldMatrix::identity(field, n);
                for i in 1..=q.parts()[0] {
                    power = power.mul(&j).unwrap();
                    let expected = n - dual.parts()[..i].iter().sum::<usize>();
                    assert_eq!(power.rank(), expected, "rank identity P={q} i={i}");
                }
            }
        }
    });
}

#[test]
fn criterion_7_byte_identical_reports() {
    criterion(
        7,
        "byte-identical verify-all reports",
        Duration::from_secs(120),
        || {
            let cfg = Config::default();
            let reports = verify_all(&cfg, 1).unwrap();
            // the full fixed-order run is clean, including ph-maximality
            for report in &reports {
                assert_eq!(report.failed, 0, "suite {}", report.suite);
                assert_eq!(report.inconclusive, 0, "suite {}", report.suite);
            }
            let first = canonical_json(&reports);
            let second = canonical_json(&verify_all(&cfg, 1).unwrap());
            assert_eq!(first.as_bytes(), second.as_bytes());
            // parallel execution does not change the bytes either
            let parallel = canonical_json(&verify_all(&cfg, 4).unwrap());
            assert_eq!(first.as_bytes(), parallel.as_bytes());
            // the table is deterministic too and mentions every partition once
            let table = qp_table(&cfg, 1).unwrap();
            assert_eq!(
                canonical_json(&table),
                canonical_json(&qp_table(&cfg, 2).unwrap())
            );
            assert_eq!(table.rows.len(), 67); // sum of p(n), n = 0..=8
        },
    );
}

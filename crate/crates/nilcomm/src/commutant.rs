//! The centralizer of a Jordan nilpotent matrix and its nilpotent elements:
//! structured basis, random sampling of generic nilpotent commuting matrices,
//! the Monte-Carlo estimator for the generic commutator partition, and
//! explicit witness matrices for string decompositions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::matrix::FieldMatrix;
use crate::partition::{Comparison, Partition, StringDecomposition};
use crate::rng::Rng;

/// The Jordan nilpotent matrix of a partition: one nilpotent block per part,
/// blocks in descending part order, ones on each block superdiagonal.
pub fn jordan_matrix(p: &Partition, field: PrimeField) -> FieldMatrix {
    let n = p.sum();
    let mut m = FieldMatrix::zeros(field, n, n);
    let mut offset = 0;
    for &part in p.parts() {
        for i in 0..part - 1 {
            m.set(offset + i, offset + i + 1, 1);
        }
        offset += part;
    }
    m
}

/// Offsets of each Jordan block in the standard basis.
pub fn block_offsets(p: &Partition) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(p.num_parts());
    let mut o = 0;
    for &part in p.parts() {
        offsets.push(o);
        o += part;
    }
    offsets
}

/// A maximal run of equal parts: blocks `first..first + count` all have the
/// given size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeClass {
    pub size: usize,
    pub first: usize,
    pub count: usize,
}

/// Basis of the centralizer of `J_P`, organized by block pair and shift
/// degree.
///
/// For blocks i (size p_i) and j (size p_j) the intertwiners form a
/// min(p_i, p_j)-dimensional space of shifted Toeplitz rectangles, graded by
/// shift order k; the k = 0 map between equal-size blocks is the full-rank
/// one, and its coefficient in any centralizer element can be read off the
/// top-left corner entry of that block rectangle. The nilpotent elements of
/// the centralizer are exactly those whose per-size-class matrices of k = 0
/// coefficients are nilpotent.
#[derive(Debug, Clone)]
pub struct CentralizerBasis {
    partition: Partition,
    field: PrimeField,
    offsets: Vec<usize>,
    classes: Vec<SizeClass>,
    basis: Vec<FieldMatrix>,
}

impl CentralizerBasis {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn basis(&self) -> &[FieldMatrix] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn size_classes(&self) -> &[SizeClass] {
        &self.classes
    }

    /// Matrix coordinate carrying the leading (shift-0) coefficient of the
    /// block-pair map i ← j; defined when the two blocks have equal size.
    pub fn leading_coordinate(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        let parts = self.partition.parts();
        if parts.get(i).is_some() && parts.get(i) == parts.get(j) {
            Some((self.offsets[i], self.offsets[j]))
        } else {
            None
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
}

/// Expected centralizer dimension Σ (2i−1) p_i for parts sorted descending,
/// equivalently Σ_{i,j} min(p_i, p_j).
pub fn centralizer_dimension(p: &Partition) -> usize {
    p.parts()
        .iter()
        .enumerate()
        .map(|(i, &part)| (2 * i + 1) * part)
        .sum()
}

fn size_classes(p: &Partition) -> Vec<SizeClass> {
    let mut classes: Vec<SizeClass> = Vec::new();
    for (i, &part) in p.parts().iter().enumerate() {
        match classes.last_mut() {
            Some(c) if c.size == part => c.count += 1,
            _ => classes.push(SizeClass {
                size: part,
                first: i,
                count: 1,
            }),
        }
    }
    classes
}

/// Entries of the shift-k intertwiner mapping block j into block i: basis
/// vector u of block j goes to basis vector u − σ of block i, where
/// σ = k + max(p_j − p_i, 0).
fn shift_map_entries(
    offsets: &[usize],
    parts: &[usize],
    i: usize,
    j: usize,
    k: usize,
) -> Vec<(usize, usize)> {
    let (pi, pj) = (parts[i], parts[j]);
    let sigma = k + pj.saturating_sub(pi);
    (sigma + 1..=pj)
        .map(|u| (offsets[i] + u - sigma - 1, offsets[j] + u - 1))
        .collect()
}

/// Basis of the centralizer C_B of B = J_P, i.e. of the kernel of
/// X ↦ XJ_P − J_PX, built block pair by block pair. Cardinality is
/// Σ (2i−1) p_i.
pub fn centralizer_basis(p: &Partition, field: PrimeField) -> CentralizerBasis {
    let n = p.sum();
    let parts = p.parts();
    let offsets = block_offsets(p);
    let mut basis = Vec::new();
    for i in 0..parts.len() {
        for j in 0..parts.len() {
            for k in 0..parts[i].min(parts[j]) {
                let mut m = FieldMatrix::zeros(field, n, n);
                for (r, c) in shift_map_entries(&offsets, parts, i, j, k) {
                    m.set(r, c, 1);
                }
                basis.push(m);
            }
        }
    }
    CentralizerBasis {
        partition: p.clone(),
        field,
        offsets,
        classes: size_classes(p),
        basis,
    }
}

/// A uniform random element of a maximal nilpotent subalgebra of the
/// nilpotent commutator of J_P: every centralizer coordinate is uniform
/// except the leading coefficients within each equal-size class, which form
/// a strictly upper triangular matrix. Every element of the nilpotent
/// commutator is conjugate to one of this shape by a centralizer unit, and
/// conjugation preserves Jordan type, so generic samples attain the generic
/// partition.
///
/// The number of random draws depends only on P, so re-running with an
/// identically seeded stream reproduces the same samples.
pub fn sample_nilpotent(p: &Partition, field: PrimeField, rng: &mut Rng) -> FieldMatrix {
    let n = p.sum();
    let parts = p.parts();
    let offsets = block_offsets(p);
    let mut m = FieldMatrix::zeros(field, n, n);
    for i in 0..parts.len() {
        for j in 0..parts.len() {
            for k in 0..parts[i].min(parts[j]) {
                let coeff = if k == 0 && parts[i] == parts[j] {
                    // leading coefficient: strictly upper triangular in the
                    // size class
                    if i < j {
                        rng.element(field)
                    } else {
                        continue;
                    }
                } else {
                    rng.element(field)
                };
                if coeff == 0 {
                    continue;
                }
                for (r, c) in shift_map_entries(&offsets, parts, i, j, k) {
                    m.set(r, c, coeff);
                }
            }
        }
    }
    m
}

/// Monte-Carlo estimate of the generic commutator partition.
#[derive(Debug, Clone, Serialize)]
pub struct QpEstimate {
    /// The partition of the Jordan matrix being centralized.
    #[serde(rename = "P")]
    pub input: Partition,
    /// Dominance maximum of the observed Jordan partitions.
    #[serde(rename = "QP")]
    pub partition: Partition,
    pub trials: usize,
    pub seed: u64,
    /// Per-trial Jordan partitions, in trial order.
    pub observed: Vec<Partition>,
}

impl QpEstimate {
    /// How many trials attained the maximum.
    pub fn agreement(&self) -> usize {
        self.observed
            .iter()
            .filter(|o| **o == self.partition)
            .count()
    }

    pub fn note(&self) -> String {
        format!(
            "dominance maximum attained in {}/{} trials",
            self.agreement(),
            self.trials
        )
    }
}

/// Estimates Q(P) by sampling `trials` random nilpotent elements of the
/// commutator of J_P and taking the dominance maximum of their Jordan
/// partitions. The maximum must be attained by some sample; incomparable
/// observations with no maximum yield an inconclusive-sampling error
/// (raise `trials`).
pub fn estimate_qp(p: &Partition, trials: usize, rng: &mut Rng) -> Result<QpEstimate> {
    assert!(trials >= 1, "at least one trial required");
    let field = PrimeField::default_field();
    estimate_qp_in(p, field, trials, rng)
}

/// [`estimate_qp`] over an explicit field (small moduli are only meaningful
/// in flagged characteristic-sensitivity runs).
pub fn estimate_qp_in(
    p: &Partition,
    field: PrimeField,
    trials: usize,
    rng: &mut Rng,
) -> Result<QpEstimate> {
    let seed = rng.seed();
    let mut observed = Vec::with_capacity(trials);
    for _ in 0..trials {
        let a = sample_nilpotent(p, field, rng);
        observed.push(a.jordan_partition()?);
    }
    let max = dominance_maximum(&observed)
        .ok_or_else(|| Error::Inconclusive(format!("no dominance maximum for P = {p}")))?;
    Ok(QpEstimate {
        input: p.clone(),
        partition: max,
        trials,
        seed,
        observed,
    })
}

/// The element of `items` that dominates all others, if one exists.
pub fn dominance_maximum(items: &[Partition]) -> Option<Partition> {
    'candidates: for cand in items {
        for other in items {
            match cand.dominance(other) {
                Ok(Comparison::Greater) | Ok(Comparison::Equal) => {}
                _ => continue 'candidates,
            }
        }
        return Some(cand.clone());
    }
    None
}

/// A nilpotent matrix commuting with J_P whose Jordan partition is the block
/// sums of the given string decomposition.
///
/// Each string block S with i parts and total m is realized on its own
/// subspace as a conjugate W of a single length-m Jordan chain whose i-th
/// power is exactly the Jordan matrix of S: the chain indices split into i
/// residue-class subchains whose lengths, sorted, are the parts of S, and
/// reordering the basis by subchain makes W^i the standard Jordan matrix.
/// The direct sum over blocks commutes with J_P.
pub fn string_witness(
    p: &Partition,
    d: &StringDecomposition,
    field: PrimeField,
) -> Result<FieldMatrix> {
    let concat: Vec<usize> = d
        .blocks()
        .iter()
        .flat_map(|b| b.parts().iter().copied())
        .collect();
    if concat != p.parts() {
        return Err(Error::InvalidDecomposition);
    }
    let n = p.sum();
    let mut w = FieldMatrix::zeros(field, n, n);
    let mut offset = 0;
    for block in d.blocks() {
        let m = block.sum();
        let i = block.num_parts();
        // residue-class subchains of the length-m chain, longest first
        let mut chains: Vec<Vec<usize>> =
            (1..=i).map(|rho| (rho..=m).step_by(i).collect()).collect();
        chains.sort_by_key(|c| std::cmp::Reverse(c.len()));
        let layout: Vec<usize> = chains.into_iter().flatten().collect();
        let mut pos = vec![0usize; m + 1]; // 1-based chain index -> layout position
        for (t, &v) in layout.iter().enumerate() {
            pos[v] = t + 1;
        }
        for (t, &v) in layout.iter().enumerate() {
            if v > 1 {
                w.set(offset + pos[v - 1] - 1, offset + t, 1);
            }
        }
        offset += m;
    }
    Ok(w)
}

/// Whether rank((A^s)^m) ≤ rank(J_P^m) for all 1 ≤ m ≤ mmax, where s is the
/// longest string length of P. Errors unless A is a nilpotent element of the
/// commutator of J_P.
pub fn check_power_rank_bound(p: &Partition, a: &FieldMatrix, mmax: usize) -> Result<bool> {
    let b = jordan_matrix(p, a.field());
    if !a.commutes(&b)? || !a.is_nilpotent()? {
        return Err(Error::NotInCommutant);
    }
    let s = p.string_stats().longest_string;
    let a_s = a.pow(s)?;
    let mut left = FieldMatrix::identity(a.field(), p.sum());
    let mut right = left.clone();
    for _ in 1..=mmax {
        left = left.mul(&a_s)?;
        right = right.mul(&b)?;
        if left.rank() > right.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{span_dimension, SpanBasis};
    use crate::partition::partitions_of;

    fn f() -> PrimeField {
        PrimeField::default_field()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn jordan_matrix_examples() {
        let b = jordan_matrix(&p(&[3, 1, 1]), f());
        let expected = FieldMatrix::from_rows(
            f(),
            &[
                vec![0, 1, 0, 0, 0],
                vec![0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 0],
            ],
        )
        .unwrap();
        assert_eq!(b, expected);
        assert!(jordan_matrix(&p(&[1, 1, 1, 1]), f()).is_zero());
        assert_eq!(jordan_matrix(&p(&[6]), f()).rank(), 5);
        for n in 0..=10 {
            for q in partitions_of(n).unwrap() {
                assert_eq!(jordan_matrix(&q, f()).jordan_partition().unwrap(), q);
            }
        }
    }

    /// Kernel dimension of X ↦ XJ − JX on the n²-dimensional matrix space,
    /// the independent oracle for the centralizer dimension.
    fn commutator_kernel_dim(j: &FieldMatrix) -> usize {
        let n = j.rows();
        if n == 0 {
            return 0;
        }
        let field = j.field();
        let mut map = FieldMatrix::zeros(field, n * n, n * n);
        // column (r,c): vec(E_rc J - J E_rc)
        for r in 0..n {
            for c in 0..n {
                let col = r * n + c;
                for cp in 0..n {
                    let v = j.get(c, cp);
                    if v != 0 {
                        let row = r * n + cp;
                        map.set(row, col, field.add(map.get(row, col), v));
                    }
                }
                for rp in 0..n {
                    let v = j.get(rp, r);
                    if v != 0 {
                        let row = rp * n + c;
                        map.set(row, col, field.sub(map.get(row, col), v));
                    }
                }
            }
        }
        n * n - map.rank()
    }

    #[test]
    fn centralizer_dimension_examples() {
        assert_eq!(centralizer_dimension(&p(&[3, 1, 1])), 11);
        assert_eq!(centralizer_dimension(&p(&[2, 2])), 8);
        assert_eq!(centralizer_dimension(&p(&[7])), 7);
        assert_eq!(centralizer_basis(&p(&[3, 1, 1]), f()).dimension(), 11);
        assert_eq!(centralizer_basis(&p(&[2, 2]), f()).dimension(), 8);
        assert_eq!(centralizer_basis(&p(&[5]), f()).dimension(), 5);
    }

    #[test]
    fn centralizer_basis_is_kernel_basis() {
        for n in 1..=8 {
            for q in partitions_of(n).unwrap() {
                let j = jordan_matrix(&q, f());
                let cb = centralizer_basis(&q, f());
                for m in cb.basis() {
                    assert!(m.commutes(&j).unwrap(), "P={q}");
                }
                assert_eq!(
                    span_dimension(cb.basis()).unwrap(),
                    cb.dimension(),
                    "independence for P={q}"
                );
                assert_eq!(
                    cb.dimension(),
                    commutator_kernel_dim(&j),
                    "kernel oracle for P={q}"
                );
                assert_eq!(cb.dimension(), centralizer_dimension(&q));
            }
        }
    }

    #[test]
    fn leading_coordinates() {
        let cb = centralizer_basis(&p(&[3, 1, 1]), f());
        assert_eq!(cb.leading_coordinate(1, 2), Some((3, 4)));
        assert_eq!(cb.leading_coordinate(2, 1), Some((4, 3)));
        assert_eq!(cb.leading_coordinate(0, 1), None);
        assert_eq!(
            cb.size_classes(),
            &[
                SizeClass {
                    size: 3,
                    first: 0,
                    count: 1
                },
                SizeClass {
                    size: 1,
                    first: 1,
                    count: 2
                },
            ]
        );
    }

    #[test]
    fn samples_live_in_the_nilpotent_commutator() {
        let mut rng = Rng::new(5);
        for n in 1..=8 {
            for q in partitions_of(n).unwrap() {
                let j = jordan_matrix(&q, f());
                let cb = centralizer_basis(&q, f());
                let mut span = SpanBasis::new(f(), n * n);
                for m in cb.basis() {
                    span.insert(m.entries().to_vec());
                }
                for _ in 0..5 {
                    let a = sample_nilpotent(&q, f(), &mut rng);
                    assert!(a.commutes(&j).unwrap(), "P={q}");
                    assert!(a.is_nilpotent().unwrap(), "P={q}");
                    assert!(span.contains(a.entries()), "P={q}");
                }
            }
        }
    }

    #[test]
    fn sample_on_trivial_jordan_type_is_strictly_upper_triangular() {
        let mut rng = Rng::new(9);
        let a = sample_nilpotent(&p(&[1, 1, 1, 1]), f(), &mut rng);
        for r in 0..4 {
            for c in 0..=r {
                assert_eq!(a.get(r, c), 0);
            }
        }
    }

    #[test]
    fn sample_reproduces_generic_canonical_form() {
        // for (3,1,1) the sampler's free coordinates are exactly the
        // parametrized canonical form of a nilpotent commuting element
        let mut rng = Rng::new(3);
        let a = sample_nilpotent(&p(&[3, 1, 1]), f(), &mut rng);
        for (r, c) in [
            (1usize, 0usize),
            (2, 0),
            (2, 1),
            (3, 0),
            (3, 1),
            (4, 0),
            (4, 1),
            (4, 3),
        ] {
            assert_eq!(a.get(r, c), 0, "structural zero at ({r},{c})");
        }
        assert_eq!(a.get(0, 1), a.get(1, 2), "repeated shift coefficient");
        assert_eq!(a.jordan_partition().unwrap(), p(&[4, 1]));
    }

    #[test]
    fn estimate_qp_pinned_values() {
        let rng = Rng::new(0);
        let est = estimate_qp(&p(&[3, 1, 1]), 20, &mut rng.derive(1)).unwrap();
        assert_eq!(est.partition, p(&[4, 1]));
        assert_eq!(est.trials, 20);
        assert_eq!(est.observed.len(), 20);
        assert!(est.agreement() >= 1);

        let est = estimate_qp(&p(&[5, 4, 2, 2]), 20, &mut rng.derive(2)).unwrap();
        assert_eq!(est.partition, p(&[9, 4]));

        let est = estimate_qp(&p(&[2, 2]), 20, &mut rng.derive(3)).unwrap();
        assert_eq!(est.partition, p(&[4]));
    }

    #[test]
    fn estimate_qp_serialization_shape() {
        let mut rng = Rng::new(0);
        let est = estimate_qp(&p(&[2, 1]), 3, &mut rng).unwrap();
        let v = serde_json::to_value(&est).unwrap();
        let obj = v.as_object().unwrap();
        let keys: Vec<&String> = obj.keys().collect();
        assert_eq!(keys, ["P", "QP", "observed", "seed", "trials"]);
    }

    #[test]
    fn string_witness_examples() {
        // (2,2) as a single string: the witness has one Jordan chain and its
        // square is exactly J_{(2,2)}
        let q = p(&[2, 2]);
        let d = StringDecomposition::new(&q, vec![p(&[2, 2])]).unwrap();
        let w = string_witness(&q, &d, f()).unwrap();
        assert_eq!(w.jordan_partition().unwrap(), p(&[4]));
        assert_eq!(w.pow(2).unwrap(), jordan_matrix(&q, f()));
        assert!(w.commutes(&jordan_matrix(&q, f())).unwrap());

        let q = p(&[5, 4, 2, 2]);
        let d = StringDecomposition::new(&q, vec![p(&[5, 4]), p(&[2, 2])]).unwrap();
        let w = string_witness(&q, &d, f()).unwrap();
        assert_eq!(w.jordan_partition().unwrap(), p(&[9, 4]));
        assert!(w.commutes(&jordan_matrix(&q, f())).unwrap());

        let q = p(&[3]);
        let d = StringDecomposition::new(&q, vec![p(&[3])]).unwrap();
        let w = string_witness(&q, &d, f()).unwrap();
        assert_eq!(w.jordan_partition().unwrap(), p(&[3]));

        // mismatched decomposition is rejected
        let other = StringDecomposition::new(&p(&[2, 2]), vec![p(&[2, 2])]).unwrap();
        assert_eq!(
            string_witness(&p(&[3, 1]), &other, f()),
            Err(Error::InvalidDecomposition)
        );
    }

    #[test]
    fn string_witness_all_minimal_decompositions_up_to_8() {
        for n in 1..=8 {
            for q in partitions_of(n).unwrap() {
                let j = jordan_matrix(&q, f());
                let stats = q.string_stats();
                for d in &stats.decompositions {
                    let w = string_witness(&q, d, f()).unwrap();
                    assert!(w.commutes(&j).unwrap(), "P={q}");
                    assert_eq!(w.jordan_partition().unwrap(), d.tilde(), "P={q}");
                }
                // equal-length decompositions recover P as the s-th power
                if let Some(d) = stats.decompositions.iter().find(|d| {
                    d.blocks()
                        .iter()
                        .all(|b| b.num_parts() == stats.longest_string)
                }) {
                    let w = string_witness(&q, d, f()).unwrap();
                    let pow = w.pow(stats.longest_string).unwrap();
                    assert_eq!(pow.jordan_partition().unwrap(), q, "P={q}");
                }
            }
        }
    }

    #[test]
    fn power_rank_bound() {
        let q = p(&[5, 4, 2, 2]);
        let d = StringDecomposition::new(&q, vec![p(&[5, 4]), p(&[2, 2])]).unwrap();
        let w = string_witness(&q, &d, f()).unwrap();
        assert!(check_power_rank_bound(&q, &w, q.sum()).unwrap());

        let zero = FieldMatrix::zeros(f(), 13, 13);
        assert!(check_power_rank_bound(&q, &zero, 13).unwrap());

        // equality for witnesses whose strings all have length s_P
        let s = q.string_stats().longest_string;
        let ws = w.pow(s).unwrap();
        let j = jordan_matrix(&q, f());
        let mut lhs = FieldMatrix::identity(f(), 13);
        let mut rhs = lhs.clone();
        for _ in 1..=5 {
            lhs = lhs.mul(&ws).unwrap();
            rhs = rhs.mul(&j).unwrap();
            assert_eq!(lhs.rank(), rhs.rank());
        }

        // a matrix outside the commutator is rejected
        let outsider = FieldMatrix::identity(f(), 13);
        assert_eq!(
            check_power_rank_bound(&q, &outsider, 3),
            Err(Error::NotInCommutant)
        );
    }

    #[test]
    fn dominance_maximum_requires_a_maximum() {
        // incomparable observations have no maximum: inconclusive
        let items = vec![p(&[4, 2, 1, 1, 1]), p(&[3, 3, 3])];
        assert_eq!(dominance_maximum(&items), None);
        let items = vec![p(&[3, 3, 3]), p(&[4, 4, 1]), p(&[3, 3, 3])];
        assert_eq!(dominance_maximum(&items), Some(p(&[4, 4, 1])));
        assert_eq!(dominance_maximum(&[]), None);
    }

    #[test]
    fn estimate_is_reproducible() {
        let q = p(&[4, 3, 3, 1]);
        let a = estimate_qp(&q, 10, &mut Rng::new(11).derive(7)).unwrap();
        let b = estimate_qp(&q, 10, &mut Rng::new(11).derive(7)).unwrap();
        assert_eq!(a.partition, b.partition);
        assert_eq!(a.observed, b.observed);
    }
}

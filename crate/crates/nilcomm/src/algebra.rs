//! The Artinian algebra generated by a commuting nilpotent pair: monomial
//! basis and dimension, local Hilbert function via the maximal-ideal
//! filtration, socle and Gorenstein test, cyclic vectors, and the Jordan
//! partitions of pencil multiplication operators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::hilbert::HilbertFunction;
use crate::matrix::{FieldMatrix, SpanBasis};
use crate::partition::{Comparison, Partition};
use crate::rng::Rng;

/// Two commuting nilpotent square matrices over the same prime field.
///
/// Wire format: `{"p": modulus, "A": [[...], ...], "B": [[...], ...]}` with
/// entries as nonnegative integers below the modulus; deserialization
/// re-validates commutation and nilpotency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutingPair {
    a: FieldMatrix,
    b: FieldMatrix,
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    p: u64,
    #[serde(rename = "A")]
    a: Vec<Vec<u64>>,
    #[serde(rename = "B")]
    b: Vec<Vec<u64>>,
}

impl Serialize for CommutingPair {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let grid = |m: &FieldMatrix| {
            (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
                .collect()
        };
        PairRepr {
            p: self.field().modulus(),
            a: grid(&self.a),
            b: grid(&self.b),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CommutingPair {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PairRepr::deserialize(deserializer)?;
        let field = crate::fp::PrimeField::new(repr.p).map_err(D::Error::custom)?;
        let a = FieldMatrix::from_rows(field, &repr.a).map_err(D::Error::custom)?;
        let b = FieldMatrix::from_rows(field, &repr.b).map_err(D::Error::custom)?;
        CommutingPair::new(a, b).map_err(D::Error::custom)
    }
}

impl CommutingPair {
    pub fn new(a: FieldMatrix, b: FieldMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if !a.commutes(&b)? {
            return Err(Error::NotCommuting);
        }
        if !a.is_nilpotent()? || !b.is_nilpotent()? {
            return Err(Error::NotNilpotent);
        }
        Ok(CommutingPair { a, b })
    }

    pub fn a(&self) -> &FieldMatrix {
        &self.a
    }

    pub fn b(&self) -> &FieldMatrix {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn field(&self) -> PrimeField {
        self.a.field()
    }
}

/// Monomials A^a B^b selected as a basis of the algebra they generate,
/// scanned in degree-lexicographic order (1 < y < x < y² < yx < x² < ...,
/// with B playing y and A playing x).
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    monomials: Vec<(usize, usize)>,
    matrices: Vec<FieldMatrix>,
    span: SpanBasis,
}

impl AlgebraBasis {
    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    /// Selected exponent pairs (a, b) meaning A^a B^b, in scan order.
    pub fn monomials(&self) -> &[(usize, usize)] {
        &self.monomials
    }

    pub fn matrices(&self) -> &[FieldMatrix] {
        &self.matrices
    }

    /// Coordinates of a matrix over the selected basis, if it lies in the
    /// span.
    pub fn coords(&self, m: &FieldMatrix) -> Option<Vec<u64>> {
        self.span.coords(m.entries())
    }
}

/// A point of the projective line parametrizing the pencil A + λB; infinity
/// means B itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PencilPoint {
    Finite(u64),
    Infinity,
}

impl std::fmt::Display for PencilPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PencilPoint::Finite(t) => write!(f, "{t}"),
            PencilPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Socle data of the algebra: the annihilator of the maximal ideal, whose
/// dimension plus one is the minimal generator count of the defining ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleInfo {
    pub socle_dim: usize,
    pub min_generators: usize,
    pub gorenstein: bool,
}

/// Filtration dimensions d_i = dim span{A^a B^b : a+b ≥ i} and the resulting
/// value sequence h_i = d_i − d_{i+1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalHilbert {
    pub filtration: Vec<usize>,
    pub values: Vec<usize>,
}

impl LocalHilbert {
    /// Packages the values as a codimension-two Hilbert function; shape
    /// violations (possible only for degenerate pairs) surface as errors to
    /// be reported, not asserted away.
    pub fn hilbert(&self) -> Result<HilbertFunction> {
        HilbertFunction::new(self.values.clone())
    }
}

/// A commuting pair together with its computed algebra basis and cached
/// matrix powers.
#[derive(Debug, Clone)]
pub struct PairAlgebra {
    pair: CommutingPair,
    apow: Vec<FieldMatrix>,
    bpow: Vec<FieldMatrix>,
    basis: AlgebraBasis,
}

impl PairAlgebra {
    pub fn new(pair: CommutingPair) -> Self {
        let n = pair.n();
        let field = pair.field();
        // powers 0..n of each generator (A^n = B^n = 0 already)
        let powers = |m: &FieldMatrix| -> Vec<FieldMatrix> {
            let mut out = vec![FieldMatrix::identity(field, n)];
            for k in 1..n.max(1) {
                out.push(out[k - 1].mul(m).expect("square"));
            }
            out
        };
        let apow = powers(&pair.a);
        let bpow = powers(&pair.b);
        let basis = Self::scan_basis(n, field, &apow, &bpow);
        PairAlgebra {
            pair,
            apow,
            bpow,
            basis,
        }
    }

    /// Greedy deg-lex scan: keep each monomial independent of the kept ones.
    /// Once a whole degree level adds nothing, no later level can (products
    /// by A or B of spanned monomials stay in the span), so the scan stops.
    fn scan_basis(
        n: usize,
        field: PrimeField,
        apow: &[FieldMatrix],
        bpow: &[FieldMatrix],
    ) -> AlgebraBasis {
        let mut span = SpanBasis::new(field, n * n);
        let mut monomials = Vec::new();
        let mut matrices = Vec::new();
        if n == 0 {
            return AlgebraBasis {
                monomials,
                matrices,
                span,
            };
        }
        for degree in 0..=2 * (n - 1) {
            let mut added = false;
            let lo = degree.saturating_sub(n - 1);
            let hi = degree.min(n - 1);
            for (a, apow_a) in apow.iter().enumerate().take(hi + 1).skip(lo) {
                let b = degree - a;
                let m = apow_a.mul(&bpow[b]).expect("square");
                if span.insert(m.entries().to_vec()) {
                    monomials.push((a, b));
                    matrices.push(m);
                    added = true;
                }
            }
            if !added {
                break;
            }
        }
        // two commuting n x n matrices generate an algebra of dimension <= n
        assert!(matrices.len() <= n, "Gerstenhaber bound violated");
        AlgebraBasis {
            monomials,
            matrices,
            span,
        }
    }

    pub fn pair(&self) -> &CommutingPair {
        &self.pair
    }

    pub fn basis(&self) -> &AlgebraBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn field(&self) -> PrimeField {
        self.pair.field()
    }

    /// The matrix of left multiplication by C on the algebra, in the scanned
    /// basis. C must lie in the algebra span.
    pub fn multiplication_matrix(&self, c: &FieldMatrix) -> Result<FieldMatrix> {
        if self.basis.coords(c).is_none() {
            return Err(Error::NotInSpan);
        }
        let dim = self.dim();
        let mut out = FieldMatrix::zeros(self.field(), dim, dim);
        for (k, basis_elt) in self.basis.matrices.iter().enumerate() {
            let image = c.mul(basis_elt)?;
            let coords = self.basis.coords(&image).ok_or(Error::NotInSpan)?;
            for (r, &v) in coords.iter().enumerate() {
                out.set(r, k, v);
            }
        }
        Ok(out)
    }

    /// The pencil element A + λB (or B at infinity).
    pub fn pencil_element(&self, lambda: PencilPoint) -> FieldMatrix {
        match lambda {
            PencilPoint::Infinity => self.pair.b.clone(),
            PencilPoint::Finite(t) => self
                .pair
                .a
                .add(&self.pair.b.scalar_mul(t))
                .expect("same shape"),
        }
    }

    /// Jordan partition of multiplication by A + λB on the algebra.
    pub fn pencil_partition(&self, lambda: PencilPoint) -> Result<Partition> {
        let c = self.pencil_element(lambda);
        self.multiplication_matrix(&c)?.jordan_partition()
    }

    /// Dominance maximum of the pencil partition over random λ; the maximum
    /// must be attained by a sampled point.
    pub fn generic_pencil_partition(&self, trials: usize, rng: &mut Rng) -> Result<Partition> {
        assert!(trials >= 1);
        let mut observed = Vec::with_capacity(trials);
        for _ in 0..trials {
            let lambda = PencilPoint::Finite(rng.element(self.field()));
            observed.push(self.pencil_partition(lambda)?);
        }
        crate::commutant::dominance_maximum(&observed)
            .ok_or_else(|| Error::Inconclusive("no dominance maximum over pencil points".into()))
    }

    /// Local Hilbert function from the filtration by total monomial degree.
    pub fn local_hilbert(&self) -> LocalHilbert {
        let n = self.pair.n();
        let field = self.field();
        if n == 0 {
            return LocalHilbert {
                filtration: vec![0],
                values: Vec::new(),
            };
        }
        // insert monomials from the top degree down, reading off each W_i
        let top = 2 * (n - 1);
        let mut span = SpanBasis::new(field, n * n);
        let mut dims = vec![0usize; top + 2];
        for degree in (0..=top).rev() {
            for a in degree.saturating_sub(n - 1)..=degree.min(n - 1) {
                let b = degree - a;
                let m = self.apow[a].mul(&self.bpow[b]).expect("square");
                span.insert(m.entries().to_vec());
            }
            dims[degree] = span.dim();
        }
        let j = (0..=top + 1).rev().find(|&i| dims[i] > 0).unwrap_or(0);
        let values: Vec<usize> = (0..=j).map(|i| dims[i] - dims[i + 1]).collect();
        let filtration = dims[..=j + 1].to_vec();
        debug_assert_eq!(values.iter().sum::<usize>(), self.dim());
        LocalHilbert { filtration, values }
    }

    /// Socle of the algebra: the joint kernel of multiplication by A and by
    /// B, computed as a corank of the stacked operators.
    pub fn socle(&self) -> Result<SocleInfo> {
        let dim = self.dim();
        let ma = self.multiplication_matrix(&self.pair.a)?;
        let mb = self.multiplication_matrix(&self.pair.b)?;
        let field = self.field();
        let mut stacked = FieldMatrix::zeros(field, 2 * dim, dim);
        for r in 0..dim {
            for c in 0..dim {
                stacked.set(r, c, ma.get(r, c));
                stacked.set(dim + r, c, mb.get(r, c));
            }
        }
        let socle_dim = dim - stacked.rank();
        Ok(SocleInfo {
            socle_dim,
            min_generators: socle_dim + 1,
            gorenstein: socle_dim == 1,
        })
    }

    /// Searches for a cyclic vector: ten random probes (from a fixed,
    /// documented seed so results are deterministic), then every standard
    /// basis vector. Absence is certain only when dim K\[A,B\] < n; when any
    /// cyclic vector exists a random probe finds one with overwhelming
    /// probability.
    pub fn cyclic_vector(&self) -> Option<Vec<u64>> {
        let n = self.pair.n();
        let field = self.field();
        let mut rng = Rng::new(0x6379_636c_6963); // fixed probe seed
        let mut candidates: Vec<Vec<u64>> = (0..10)
            .map(|_| (0..n).map(|_| rng.element(field)).collect())
            .collect();
        for i in 0..n {
            let mut e = vec![0u64; n];
            e[i] = 1;
            candidates.push(e);
        }
        candidates.into_iter().find(|v| self.krylov_dim(v) == n)
    }

    /// Dimension of the closure of span{v} under A and B.
    fn krylov_dim(&self, v: &[u64]) -> usize {
        let n = self.pair.n();
        let mut span = SpanBasis::new(self.field(), n);
        let mut queue = Vec::new();
        if span.insert(v.to_vec()) {
            queue.push(v.to_vec());
        }
        while let Some(w) = queue.pop() {
            for m in [&self.pair.a, &self.pair.b] {
                let u = m.apply(&w);
                if span.insert(u.clone()) {
                    queue.push(u);
                }
            }
        }
        span.dim()
    }

    /// The machine-readable per-pair report.
    pub fn report(&self, pencil_trials: usize, rng: &mut Rng) -> PairReport {
        let lh = self.local_hilbert();
        let generic_pencil = self
            .generic_pencil_partition(pencil_trials.max(1), rng)
            .ok();
        PairReport {
            dim: self.dim(),
            h: lh.values.clone(),
            socle: self.socle().map(|s| s.socle_dim).unwrap_or(0),
            generic_pencil,
            cyclic: self.cyclic_vector().is_some(),
        }
    }
}

/// Summary of one pair: dimension, Hilbert values, socle dimension, generic
/// pencil partition, cyclic-vector existence.
#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub dim: usize,
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    pub socle: usize,
    #[serde(rename = "genericPencil")]
    pub generic_pencil: Option<Partition>,
    pub cyclic: bool,
}

/// Tensor-product pair A = J_d ⊗ I_2, B = I_d ⊗ J_2 on a 2d-dimensional
/// space: A has partition (d,d), B has partition (2,...,2), and the algebra
/// has dimension 2d with Hilbert function (1,2,...,2,1) of socle degree d.
pub fn mcninch_pair(d: usize, field: PrimeField) -> Result<CommutingPair> {
    assert!(d >= 1);
    let jd = crate::commutant::jordan_matrix(&Partition::new(vec![d])?, field);
    let j2 = crate::commutant::jordan_matrix(&Partition::new(vec![2])?, field);
    let a = jd.kron(&FieldMatrix::identity(field, 2))?;
    let b = FieldMatrix::identity(field, d).kron(&j2)?;
    CommutingPair::new(a, b)
}

/// Multiplication operators by x and y on the monomial cobasis of the
/// staircase monomial ideal of P (row b of the Ferrers diagram holds the
/// monomials y^b x^a, a < p_b). Returns the pair (A, B) = (×y, ×x): B has
/// Jordan partition P and A the dual partition, and the algebra has
/// dimension n.
pub fn monomial_pair(p: &Partition, field: PrimeField) -> Result<CommutingPair> {
    let n = p.sum();
    let parts = p.parts();
    // cell (a, b) -> basis index, rows concatenated
    let row_offset: Vec<usize> = parts
        .iter()
        .scan(0usize, |acc, &len| {
            let o = *acc;
            *acc += len;
            Some(o)
        })
        .collect();
    let mut mx = FieldMatrix::zeros(field, n, n);
    let mut my = FieldMatrix::zeros(field, n, n);
    for (b, &len) in parts.iter().enumerate() {
        for a in 0..len {
            let idx = row_offset[b] + a;
            if a + 1 < len {
                mx.set(row_offset[b] + a + 1, idx, 1);
            }
            if b + 1 < parts.len() && a < parts[b + 1] {
                my.set(row_offset[b + 1] + a, idx, 1);
            }
        }
    }
    CommutingPair::new(my, mx)
}

/// Dominance minimum of Hilbert functions, if one is attained.
pub fn hilbert_minimum(items: &[HilbertFunction]) -> Option<HilbertFunction> {
    'candidates: for cand in items {
        for other in items {
            match cand.compare(other) {
                Ok(Comparison::Less) | Ok(Comparison::Equal) => {}
                _ => continue 'candidates,
            }
        }
        return Some(cand.clone());
    }
    None
}

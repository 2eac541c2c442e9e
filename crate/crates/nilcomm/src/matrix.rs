//! Dense exact matrices over a prime field.
//!
//! Row-major storage, entries always reduced mod p. Rank and kernels use
//! plain Gaussian elimination with first-nonzero pivoting — deterministic and
//! plenty fast at desk scale. Jordan partitions of nilpotent matrices are
//! read off the rank sequence of powers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::partition::Partition;

/// A rows × cols matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from nested rows, reducing entries mod p. All rows must have
    /// equal length.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimMismatch(r, c, r, 0));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| field.reduce(v)))
            .collect();
        Ok(FieldMatrix {
            field,
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    fn check_same_shape(&self, other: &FieldMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Ok(FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scalar_mul(&self, s: u64) -> FieldMatrix {
        let s = self.field.reduce(s);
        let entries = self.entries.iter().map(|&a| self.field.mul(a, s)).collect();
        FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        if self.cols != other.rows {
            return Err(Error::DimMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let p = self.field.modulus() as u128;
        let mut out = FieldMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let a = a as u128;
                for j in 0..other.cols {
                    let cur = out.entries[i * other.cols + j] as u128;
                    out.entries[i * other.cols + j] =
                        ((cur + a * other.get(k, j) as u128) % p) as u64;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.modulus() as u128;
        (0..self.rows)
            .map(|i| {
                let row = &self.entries[i * self.cols..(i + 1) * self.cols];
                let mut acc = 0u128;
                for (&a, &x) in row.iter().zip(v) {
                    acc = (acc + a as u128 * x as u128) % p;
                }
                acc as u64
            })
            .collect()
    }

    /// e-th power by repeated squaring; e = 0 gives the identity.
    pub fn pow(&self, e: usize) -> Result<FieldMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = FieldMatrix::identity(self.field, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Kronecker product: (m×n) ⊗ (p×q) → (mp × nq).
    pub fn kron(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        let mut out =
            FieldMatrix::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            self.field.mul(a, other.get(k, l)),
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row rank by Gaussian elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            // first nonzero pivot in this column at or below `rank`
            let Some(piv) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for c in 0..cols {
                    m.swap(rank * cols + c, piv * cols + c);
                }
            }
            let inv = f.inv(m[rank * cols + col]);
            for c in col..cols {
                m[rank * cols + c] = f.mul(m[rank * cols + c], inv);
            }
            for r in 0..rows {
                if r != rank && m[r * cols + col] != 0 {
                    let factor = m[r * cols + col];
                    for c in col..cols {
                        let sub = f.mul(factor, m[rank * cols + c]);
                        m[r * cols + c] = f.sub(m[r * cols + c], sub);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<FieldMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = self.field;
        let mut a = self.entries.clone();
        let mut inv = FieldMatrix::identity(f, n).entries;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0)?;
            if piv != col {
                for c in 0..n {
                    a.swap(col * n + c, piv * n + c);
                    inv.swap(col * n + c, piv * n + c);
                }
            }
            let s = f.inv(a[col * n + col]);
            for c in 0..n {
                a[col * n + c] = f.mul(a[col * n + c], s);
                inv[col * n + c] = f.mul(inv[col * n + c], s);
            }
            for r in 0..n {
                if r != col && a[r * n + col] != 0 {
                    let factor = a[r * n + col];
                    for c in 0..n {
                        let s1 = f.mul(factor, a[col * n + c]);
                        a[r * n + c] = f.sub(a[r * n + c], s1);
                        let s2 = f.mul(factor, inv[col * n + c]);
                        inv[r * n + c] = f.sub(inv[r * n + c], s2);
                    }
                }
            }
        }
        Some(FieldMatrix {
            field: f,
            rows: n,
            cols: n,
            entries: inv,
        })
    }

    /// Whether M^n = 0, decided by repeated squaring.
    pub fn is_nilpotent(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(true);
        }
        let mut m = self.clone();
        let mut e = 1usize;
        while e < n {
            m = m.mul(&m)?;
            e *= 2;
        }
        Ok(m.is_zero())
    }

    /// Whether AB = BA.
    pub fn commutes(&self, other: &FieldMatrix) -> Result<bool> {
        if !self.is_square() || !other.is_square() {
            return Err(Error::NotSquare {
                rows: other.rows,
                cols: other.cols,
            });
        }
        self.check_same_shape(other)?;
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Jordan partition of a nilpotent matrix: the difference sequence of
    /// (n, rk M, rk M², ...) is the dual partition. Powers are formed
    /// incrementally so each is computed once. Errors when the rank sequence
    /// does not reach zero by the n-th power.
    pub fn jordan_partition(&self) -> Result<Partition> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut ranks = vec![n];
        let mut power = self.clone();
        while *ranks.last().unwrap() > 0 {
            if ranks.len() > n {
                return Err(Error::NotNilpotent);
            }
            let r = power.rank();
            if r >= *ranks.last().unwrap() {
                // rank of powers must strictly drop until zero
                return Err(Error::NotNilpotent);
            }
            ranks.push(r);
            if r > 0 {
                power = power.mul(self)?;
            }
        }
        let deltas: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        debug_assert!(deltas.windows(2).all(|w| w[0] >= w[1]));
        let dual = Partition::new(deltas).expect("strict rank drops give positive deltas");
        Ok(dual.dual())
    }
}

/// Dimension of the span of the given matrices inside the full matrix space,
/// i.e. the rank of the matrix whose rows are the flattened inputs.
pub fn span_dimension(mats: &[FieldMatrix]) -> Result<usize> {
    let Some(first) = mats.first() else {
        return Ok(0);
    };
    let mut span = SpanBasis::new(first.field(), first.rows() * first.cols());
    for m in mats {
        first.check_same_shape(m)?;
        span.insert(m.entries().to_vec());
    }
    Ok(span.dim())
}

/// Incremental row-echelon span with coordinate tracking: vectors are
/// inserted one at a time; dependent vectors can be expressed over the
/// previously inserted independent ones.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    // expression of each echelon row over the inserted independent vectors
    exprs: Vec<Vec<u64>>,
}

impl SpanBasis {
    pub fn new(field: PrimeField, ambient: usize) -> Self {
        SpanBasis {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
            exprs: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduces v against the echelon rows. Returns the residual and the
    /// coefficients f with v = Σ f_i · row_i + residual.
    fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let f = self.field;
        let mut w = v.to_vec();
        let mut used = vec![0u64; self.rows.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let c = w[self.pivots[i]];
            if c != 0 {
                used[i] = c;
                for (wj, rj) in w.iter_mut().zip(row) {
                    *wj = f.sub(*wj, f.mul(c, *rj));
                }
            }
        }
        (w, used)
    }

    /// Inserts v; returns true when v was independent of the current span.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let (w, used) = self.reduce(&v);
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let k = self.rows.len(); // index of this new basis vector
                                 // new row = (v - Σ used_i row_i) / w[pivot]; its expression over the
                                 // basis is (e_k - Σ used_i expr_i) / w[pivot]
        let inv = f.inv(w[pivot]);
        let row: Vec<u64> = w.iter().map(|&x| f.mul(x, inv)).collect();
        let mut expr = vec![0u64; k + 1];
        expr[k] = inv;
        for (i, &u) in used.iter().enumerate() {
            if u != 0 {
                let scale = f.mul(u, inv);
                for (ej, &xj) in expr.iter_mut().zip(self.exprs[i].iter()) {
                    *ej = f.sub(*ej, f.mul(scale, xj));
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(pivot);
        for e in &mut self.exprs {
            e.resize(k + 1, 0);
        }
        self.exprs.push(expr);
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let (w, _) = self.reduce(v);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of v over the inserted independent vectors, if v lies in
    /// the span.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        let f = self.field;
        let (w, used) = self.reduce(v);
        if w.iter().any(|&x| x != 0) {
            return None;
        }
        let mut out = vec![0u64; self.rows.len()];
        for (i, &u) in used.iter().enumerate() {
            if u != 0 {
                for (oj, &xj) in out.iter_mut().zip(self.exprs[i].iter()) {
                    *oj = f.add(*oj, f.mul(u, xj));
                }
            }
        }
        Some(out)
    }
}

/// Wire format for matrices: modulus plus nested rows of entries.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u64>>,
}

impl Serialize for FieldMatrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect();
        MatrixRepr {
            p: self.field.modulus(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::deserialize(deserializer)?;
        let field = PrimeField::new(repr.p).map_err(D::Error::custom)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|row| row.len() != repr.cols)
        {
            return Err(D::Error::custom("entry shape does not match rows/cols"));
        }
        FieldMatrix::from_rows(field, &repr.entries).map_err(D::Error::custom)
    }
}

//! Exact computation with pairs of commuting nilpotent matrices.
//!
//! The library is organized around a small set of exact objects:
//!
//! - [`partition`] / [`hilbert`]: integer partitions, dominance order, strings,
//!   diagonal lengths, and the order-reversing bijection between Hilbert
//!   functions and partitions with strictly decreasing parts.
//! - [`fp`] / [`matrix`]: dense exact linear algebra over a prime field —
//!   rank, kernels, matrix powers, nilpotency, and Jordan partitions read off
//!   rank sequences.
//! - [`commutant`]: the centralizer of a Jordan matrix, random sampling of its
//!   nilpotent elements, the Monte-Carlo estimator for the generic commutator
//!   partition, and explicit string-decomposition witness matrices.
//! - [`algebra`]: the Artinian algebra generated by a commuting nilpotent
//!   pair — basis, local Hilbert function, socle, cyclic vectors, and pencil
//!   Jordan partitions.
//! - [`harness`]: exhaustive and seeded randomized verification suites over
//!   all partitions up to a size bound, with machine-readable reports.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to share across threads; [`rng::Rng`] streams
//! are single-owner and are split via [`rng::Rng::derive`] for parallel work.

pub mod algebra;
pub mod commutant;
pub mod error;
pub mod fp;
pub mod harness;
pub mod hilbert;
pub mod matrix;
pub mod partition;
pub mod rng;

pub use error::{Error, Result};
pub use fp::PrimeField;
pub use hilbert::HilbertFunction;
pub use matrix::FieldMatrix;
pub use partition::{Comparison, Partition, StringDecomposition};
pub use rng::Rng;

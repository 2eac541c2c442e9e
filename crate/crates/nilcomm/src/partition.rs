//! Integer partitions: dominance order, duals, diagonal lengths, strings,
//! power partitions, and the string-decomposition combinatorics behind the
//! generic commutator partition.
//!
//! A [`Partition`] is stored sorted descending and canonicalized on
//! construction; the empty partition is permitted and is the identity for
//! multiset union.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hilbert::HilbertFunction;

/// Outcome of comparing two elements of a partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// A partition of a nonnegative integer: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    sum: usize,
}

impl Partition {
    /// Builds a partition from parts given in any order; parts are sorted
    /// descending. Zero parts are rejected.
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let sum = parts.iter().sum();
        Ok(Partition { parts, sum })
    }

    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            sum: 0,
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The partitioned integer n.
    pub fn sum(&self) -> usize {
        self.sum
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transpose of the Ferrers diagram: part i of the dual counts the parts
    /// of `self` that are at least i+1. An involution.
    pub fn dual(&self) -> Partition {
        let mut parts = Vec::new();
        if let Some(&max) = self.parts.first() {
            for i in 1..=max {
                parts.push(self.parts.iter().take_while(|&&p| p >= i).count());
            }
        }
        let sum = self.sum;
        Partition { parts, sum }
    }

    /// Lengths of the lower-left to upper-right antidiagonals of the Ferrers
    /// diagram. The entries sum to n.
    pub fn diagonal_lengths(&self) -> Vec<usize> {
        let depth = self
            .parts
            .iter()
            .enumerate()
            .map(|(r, &p)| r + p)
            .max()
            .unwrap_or(0);
        let mut out = vec![0usize; depth];
        for (r, &p) in self.parts.iter().enumerate() {
            for c in 0..p {
                out[r + c] += 1;
            }
        }
        out
    }

    /// Diagonal lengths packaged as a Hilbert function (the sequence always
    /// has the codimension-two shape).
    pub fn diagonal_hilbert(&self) -> Result<HilbertFunction> {
        HilbertFunction::new(self.diagonal_lengths())
    }

    /// Majorization (dominance) comparison of two partitions of the same n:
    /// greater means every prefix sum of `self` weakly exceeds the other's.
    pub fn dominance(&self, other: &Partition) -> Result<Comparison> {
        if self.sum != other.sum {
            return Err(Error::TotalMismatch(self.sum, other.sum));
        }
        Ok(compare_prefix_sums(&self.parts, &other.parts))
    }

    /// Jordan partition of the i-th power of the Jordan matrix of `self`:
    /// each part m contributes the unique partition of m into min(i, m) parts
    /// whose sizes differ by at most one, and the results are merged.
    pub fn power(&self, i: usize) -> Partition {
        assert!(i >= 1, "power index must be at least 1");
        let mut parts = Vec::new();
        for &m in &self.parts {
            if i >= m {
                parts.extend(std::iter::repeat_n(1, m));
            } else {
                let q = m / i;
                let r = m % i;
                parts.extend(std::iter::repeat_n(q + 1, r));
                parts.extend(std::iter::repeat_n(q, i - r));
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition {
            parts,
            sum: self.sum,
        }
    }

    /// Whether consecutive parts differ by at least two (vacuously true for
    /// at most one part).
    pub fn is_stable(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] - w[1] >= 2)
    }

    /// Whether the largest and smallest part differ by at most one.
    pub fn is_string(&self) -> bool {
        match (self.parts.first(), self.parts.last()) {
            (Some(&max), Some(&min)) => max - min <= 1,
            _ => true,
        }
    }

    /// Each part repeated c times.
    pub fn repeat(&self, c: usize) -> Partition {
        assert!(c >= 1, "repeat count must be at least 1");
        let mut parts = Vec::with_capacity(self.parts.len() * c);
        for &p in &self.parts {
            parts.extend(std::iter::repeat_n(p, c));
        }
        Partition {
            parts,
            sum: self.sum * c,
        }
    }

    /// Each part scaled by c.
    pub fn scale(&self, c: usize) -> Partition {
        assert!(c >= 1, "scale factor must be at least 1");
        Partition {
            parts: self.parts.iter().map(|&p| p * c).collect(),
            sum: self.sum * c,
        }
    }

    /// Minimum string count, longest string segment, and all minimal string
    /// decompositions into contiguous segments of the sorted part list.
    pub fn string_stats(&self) -> StringStats {
        let t = self.parts.len();
        if t == 0 {
            return StringStats {
                min_strings: 0,
                longest_string: 0,
                decompositions: vec![StringDecomposition { blocks: Vec::new() }],
            };
        }
        let valid = |l: usize, r: usize| self.parts[l] - self.parts[r - 1] <= 1;
        // longest window with max - min <= 1
        let mut longest = 1;
        for l in 0..t {
            let mut r = l + 1;
            while r < t && valid(l, r + 1) {
                r += 1;
            }
            longest = longest.max(r - l);
        }
        // fewest segments, computed right to left
        let mut min_blocks = vec![usize::MAX; t + 1];
        min_blocks[t] = 0;
        for l in (0..t).rev() {
            for r in l + 1..=t {
                if !valid(l, r) {
                    break;
                }
                if min_blocks[r] != usize::MAX {
                    min_blocks[l] = min_blocks[l].min(1 + min_blocks[r]);
                }
            }
        }
        // enumerate every segmentation achieving the minimum
        let mut decompositions = Vec::new();
        let mut cuts = Vec::new();
        enumerate_minimal(self, &min_blocks, &valid, 0, &mut cuts, &mut decompositions);
        StringStats {
            min_strings: min_blocks[0],
            longest_string: longest,
            decompositions,
        }
    }

    /// The predicted generic commutator partition when it is determined by
    /// string combinatorics alone: requires a unique minimal string
    /// decomposition whose blocks all have the longest-string length.
    pub fn qp_predicted(&self) -> Option<Partition> {
        let stats = self.string_stats();
        if stats.decompositions.len() != 1 {
            return None;
        }
        let d = &stats.decompositions[0];
        if d.blocks
            .iter()
            .all(|b| b.num_parts() == stats.longest_string)
        {
            Some(d.tilde())
        } else {
            None
        }
    }

    /// The Hilbert function whose bar graph has rows `self` (requires
    /// strictly decreasing parts; inverse of [`HilbertFunction::to_partition`]).
    pub fn to_hilbert(&self) -> Result<HilbertFunction> {
        if self.parts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedParts);
        }
        if self.is_empty() {
            return Err(Error::InvalidHilbert("empty partition".into()));
        }
        let nu = self.parts.len();
        // rearrange the dual: one copy of each of 1..=nu first, the rest
        // descending
        let mut remaining = self.dual().parts;
        for v in 1..=nu {
            let pos = remaining
                .iter()
                .position(|&x| x == v)
                .expect("dual of a strictly decreasing partition has no gaps");
            remaining.remove(pos);
        }
        let mut values: Vec<usize> = (1..=nu).collect();
        values.extend(remaining);
        HilbertFunction::new(values)
    }
}

fn enumerate_minimal(
    p: &Partition,
    min_blocks: &[usize],
    valid: &impl Fn(usize, usize) -> bool,
    l: usize,
    cuts: &mut Vec<(usize, usize)>,
    out: &mut Vec<StringDecomposition>,
) {
    let t = p.parts().len();
    if l == t {
        let blocks = cuts
            .iter()
            .map(|&(a, b)| Partition {
                parts: p.parts()[a..b].to_vec(),
                sum: p.parts()[a..b].iter().sum(),
            })
            .collect();
        out.push(StringDecomposition { blocks });
        return;
    }
    for r in l + 1..=t {
        if !valid(l, r) {
            break;
        }
        if min_blocks[r] != usize::MAX && 1 + min_blocks[r] == min_blocks[l] {
            cuts.push((l, r));
            enumerate_minimal(p, min_blocks, valid, r, cuts, out);
            cuts.pop();
        }
    }
}

/// Result of [`Partition::string_stats`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringStats {
    /// Minimum number of strings in a decomposition (r_P).
    pub min_strings: usize,
    /// Length of the longest string segment (s_P).
    pub longest_string: usize,
    /// All decompositions achieving the minimum, in segment order.
    pub decompositions: Vec<StringDecomposition>,
}

/// A decomposition of a partition into contiguous string segments of its
/// sorted part list, kept in segment order (largest parts first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringDecomposition {
    blocks: Vec<Partition>,
}

impl StringDecomposition {
    /// Validates that `blocks`, concatenated in order, are exactly the sorted
    /// parts of `source` and that every block is a string.
    pub fn new(source: &Partition, blocks: Vec<Partition>) -> Result<Self> {
        let concat: Vec<usize> = blocks
            .iter()
            .flat_map(|b| b.parts.iter().copied())
            .collect();
        if concat != source.parts || blocks.iter().any(|b| b.is_empty() || !b.is_string()) {
            return Err(Error::InvalidDecomposition);
        }
        Ok(StringDecomposition { blocks })
    }

    pub fn blocks(&self) -> &[Partition] {
        &self.blocks
    }

    /// Block sums, sorted descending.
    pub fn tilde(&self) -> Partition {
        let mut parts: Vec<usize> = self.blocks.iter().map(|b| b.sum()).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let sum = parts.iter().sum();
        Partition { parts, sum }
    }
}

pub(crate) fn compare_prefix_sums(a: &[usize], b: &[usize]) -> Comparison {
    let mut ge = true;
    let mut le = true;
    let (mut sa, mut sb) = (0usize, 0usize);
    for i in 0..a.len().max(b.len()) {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa < sb {
            ge = false;
        }
        if sa > sb {
            le = false;
        }
    }
    match (ge, le) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::Greater,
        (false, true) => Comparison::Less,
        (false, false) => Comparison::Incomparable,
    }
}

/// Default cap for exhaustive partition enumeration (p(40) ≈ 37k).
pub const MAX_ENUMERATION_N: usize = 40;

/// All partitions of n in reverse-lexicographic order, each exactly once.
/// Rejects n above [`MAX_ENUMERATION_N`].
pub fn partitions_of(n: usize) -> Result<Partitions> {
    partitions_of_bounded(n, MAX_ENUMERATION_N)
}

/// Like [`partitions_of`] with an explicit bound.
pub fn partitions_of_bounded(n: usize, bound: usize) -> Result<Partitions> {
    if n > bound {
        return Err(Error::EnumerationBound(n, bound));
    }
    Ok(Partitions {
        next: Some(if n == 0 { Vec::new() } else { vec![n] }),
    })
}

/// Iterator over the partitions of a fixed n, reverse-lexicographic.
#[derive(Debug, Clone)]
pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        let result = Partition {
            sum: current.iter().sum(),
            parts: current.clone(),
        };
        // successor: shrink the rightmost part above 1, refill with the
        // largest allowed parts
        if let Some(k) = current.iter().rposition(|&p| p > 1) {
            let mut parts = current;
            let mut rem = parts.len() - k; // the trailing 1s plus the unit removed
            parts.truncate(k + 1);
            parts[k] -= 1;
            let v = parts[k];
            while rem > 0 {
                let take = rem.min(v);
                parts.push(take);
                rem -= take;
            }
            self.next = Some(parts);
        }
        Some(result)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let joined = self
            .parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{joined}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|tok| tok.trim().parse::<usize>().map_err(|_| Error::ZeroPart))
            .collect::<Result<_>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(D::Error::custom(
                "partition parts must be weakly decreasing",
            ));
        }
        Partition::new(parts).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn construction_canonicalizes() {
        assert_eq!(p(&[2, 5, 4, 2]).parts(), &[5, 4, 2, 2]);
        assert_eq!(Partition::new(vec![1, 0]), Err(Error::ZeroPart));
        assert!(Partition::empty().is_empty());
        assert_eq!(Partition::empty().sum(), 0);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(p(&[6, 4, 3]).dual(), p(&[3, 3, 3, 2, 1, 1]));
        assert_eq!(p(&[1]).dual(), p(&[1]));
        // counted directly: parts >= 1,2,3,4,5 of (5,4,2,2)
        assert_eq!(p(&[5, 4, 2, 2]).dual(), p(&[4, 4, 2, 2, 1]));
        assert_eq!(Partition::empty().dual(), Partition::empty());
    }

    #[test]
    fn dual_is_involution_up_to_12() {
        for n in 0..=12 {
            for q in partitions_of(n).unwrap() {
                assert_eq!(q.dual().dual(), q);
                assert_eq!(q.dual().sum(), q.sum());
            }
        }
    }

    #[test]
    fn diagonal_lengths_examples() {
        assert_eq!(p(&[5, 3, 1]).diagonal_lengths(), vec![1, 2, 3, 2, 1]);
        assert_eq!(p(&[3, 1, 1]).diagonal_lengths(), vec![1, 2, 2]);
        assert_eq!(p(&[6]).diagonal_lengths(), vec![1; 6]);
        let q = p(&[4, 2, 1, 1, 1]);
        assert_eq!(q.diagonal_lengths().iter().sum::<usize>(), q.sum());
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(
            p(&[6, 4, 3]).dominance(&p(&[6, 4, 2, 1])).unwrap(),
            Comparison::Greater
        );
        let q = p(&[5, 4, 2, 2]);
        assert_eq!(q.dominance(&q).unwrap(), Comparison::Equal);
        assert_eq!(
            p(&[4, 2, 1, 1, 1]).dominance(&p(&[3, 3, 3])).unwrap(),
            Comparison::Incomparable
        );
        assert_eq!(
            p(&[3]).dominance(&p(&[2, 2])),
            Err(Error::TotalMismatch(3, 4))
        );
    }

    #[test]
    fn dual_reverses_dominance_up_to_12() {
        for n in 1..=12 {
            let all: Vec<Partition> = partitions_of(n).unwrap().collect();
            for a in &all {
                for b in &all {
                    let fwd = a.dominance(b).unwrap();
                    let rev = a.dual().dominance(&b.dual()).unwrap();
                    let expected = match fwd {
                        Comparison::Less => Comparison::Greater,
                        Comparison::Greater => Comparison::Less,
                        other => other,
                    };
                    assert_eq!(rev, expected, "P={a} P'={b}");
                }
            }
        }
    }

    #[test]
    fn power_single_block() {
        let seven = p(&[7]);
        assert_eq!(seven.power(2), p(&[4, 3]));
        assert_eq!(seven.power(3), p(&[3, 2, 2]));
        assert_eq!(seven.power(4), p(&[2, 2, 2, 1]));
        assert_eq!(seven.power(7), p(&[1; 7]));
        assert_eq!(seven.power(9), p(&[1; 7]));
    }

    #[test]
    fn power_general() {
        let q = p(&[5, 4]);
        assert_eq!(q.power(1), q);
        // rank oracle value frozen in matrix tests; combinatorial value here
        assert_eq!(q.power(2), p(&[3, 2, 2, 2]));
    }

    #[test]
    fn stability() {
        assert!(!p(&[3, 1, 1]).is_stable());
        assert!(p(&[9]).is_stable());
        assert!(p(&[8, 6, 4, 1]).is_stable());
        assert!(!p(&[5, 4]).is_stable());
        assert!(Partition::empty().is_stable());
    }

    #[test]
    fn string_stats_examples() {
        let s = p(&[5, 4, 4, 3, 2]).string_stats();
        assert_eq!(s.min_strings, 2);
        assert_eq!(s.longest_string, 3);

        let s = p(&[8, 7, 7, 7, 5, 5, 4, 2, 1]).string_stats();
        assert_eq!(s.min_strings, 3);

        let s = p(&[5, 4, 3, 2, 1]).string_stats();
        assert_eq!(s.min_strings, 3);
        assert!(s.decompositions.len() >= 2);

        // s_P = 1 exactly for stable partitions
        for n in 1..=12 {
            for q in partitions_of(n).unwrap() {
                assert_eq!(q.string_stats().longest_string == 1, q.is_stable());
            }
        }
    }

    #[test]
    fn tilde_examples() {
        let src = p(&[3, 3, 3, 2, 2, 1]);
        let d1 = StringDecomposition::new(&src, vec![p(&[3, 3, 3]), p(&[2, 2, 1])]).unwrap();
        assert_eq!(d1.tilde(), p(&[9, 5]));
        let d2 = StringDecomposition::new(&src, vec![p(&[3, 3, 3, 2, 2]), p(&[1])]).unwrap();
        assert_eq!(d2.tilde(), p(&[13, 1]));
        let single = p(&[2, 2]);
        let d3 = StringDecomposition::new(&single, vec![p(&[2, 2])]).unwrap();
        assert_eq!(d3.tilde(), p(&[4]));
        // blocks out of order or non-strings are rejected
        assert!(StringDecomposition::new(&src, vec![p(&[2, 2, 1]), p(&[3, 3, 3])]).is_err());
        assert!(StringDecomposition::new(&p(&[3, 1]), vec![p(&[3, 1])]).is_err());
    }

    #[test]
    fn tilde_preserves_total_up_to_10() {
        for n in 1..=10 {
            for q in partitions_of(n).unwrap() {
                for d in q.string_stats().decompositions {
                    assert_eq!(d.tilde().sum(), q.sum());
                }
            }
        }
    }

    #[test]
    fn qp_predicted_examples() {
        assert_eq!(p(&[5, 4, 2, 2]).qp_predicted(), Some(p(&[9, 4])));
        assert_eq!(
            p(&[8, 7, 7, 5, 5, 4, 2, 2, 2]).qp_predicted(),
            Some(p(&[22, 14, 6]))
        );
        assert_eq!(p(&[5, 3, 1]).qp_predicted(), Some(p(&[5, 3, 1])));
        // several minimal decompositions: not applicable
        assert_eq!(p(&[5, 4, 3, 2, 1]).qp_predicted(), None);
    }

    #[test]
    fn repeat_examples() {
        assert_eq!(p(&[3, 1, 1]).repeat(2), p(&[3, 3, 1, 1, 1, 1]));
        assert_eq!(p(&[2]).repeat(3), p(&[2, 2, 2]));
        let q = p(&[4, 2]);
        assert_eq!(q.repeat(1), q);
        assert_eq!(p(&[3, 1]).scale(2), p(&[6, 2]));
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(partitions_of(0).unwrap().count(), 1);
        assert_eq!(partitions_of(4).unwrap().count(), 5);
        assert_eq!(partitions_of(10).unwrap().count(), 42);
        let four: Vec<Partition> = partitions_of(4).unwrap().collect();
        assert_eq!(
            four,
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        assert_eq!(
            partitions_of(41).err(),
            Some(Error::EnumerationBound(41, MAX_ENUMERATION_N))
        );
        assert!(partitions_of_bounded(41, 45).is_ok());
    }

    #[test]
    fn parse_and_display() {
        let q: Partition = "5,4,2,2".parse().unwrap();
        assert_eq!(q, p(&[5, 4, 2, 2]));
        assert_eq!(q.to_string(), "5,4,2,2");
        assert!("5,x".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
    }

    #[test]
    fn serde_roundtrip() {
        let q = p(&[5, 4, 2, 2]);
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, "[5,4,2,2]");
        let back: Partition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Partition>("[2,5]").is_err());
        assert!(serde_json::from_str::<Partition>("[1,0]").is_err());
    }
}

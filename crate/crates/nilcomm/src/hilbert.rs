//! Hilbert functions of codimension at most two.
//!
//! A valid sequence has the shape `(1, 2, ..., ν, h_ν, ..., h_j)` with
//! `ν ≥ h_ν ≥ ... ≥ h_j > 0`; the all-ones sequence has order ν = 1, and a
//! full staircase `(1, 2, ..., ν)` has an empty tail.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{compare_prefix_sums, Comparison, Partition};

/// A codimension-two Hilbert function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertFunction {
    values: Vec<usize>,
    order: usize,
}

impl HilbertFunction {
    /// Validates the codimension-two shape and computes the order ν.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidHilbert("empty sequence".into()));
        }
        if values.contains(&0) {
            return Err(Error::InvalidHilbert("zero entry".into()));
        }
        let order = values
            .iter()
            .enumerate()
            .take_while(|&(i, &h)| h == i + 1)
            .count();
        if order == 0 {
            return Err(Error::InvalidHilbert("h_0 must be 1".into()));
        }
        let tail = &values[order..];
        if let Some(&first) = tail.first() {
            if first > order {
                return Err(Error::InvalidHilbert(format!(
                    "h_{order} = {first} exceeds the order {order}"
                )));
            }
        }
        if tail.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidHilbert(
                "tail must be weakly decreasing".into(),
            ));
        }
        Ok(HilbertFunction { values, order })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The order ν: the sequence begins (1, 2, ..., ν).
    pub fn order(&self) -> usize {
        self.order
    }

    /// The socle degree j (index of the last nonzero value).
    pub fn socle_degree(&self) -> usize {
        self.values.len() - 1
    }

    /// The length n = Σ h_i.
    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }

    /// Prefix-sum comparison in the Hilbert-function partial order; requires
    /// equal lengths n.
    pub fn compare(&self, other: &HilbertFunction) -> Result<Comparison> {
        let (a, b) = (self.sum(), other.sum());
        if a != b {
            return Err(Error::TotalMismatch(a, b));
        }
        Ok(compare_prefix_sums(&self.values, &other.values))
    }

    /// P(H): the unique partition with ν strictly decreasing parts whose
    /// diagonal lengths are this sequence — the dual of the values sorted
    /// descending.
    pub fn to_partition(&self) -> Partition {
        let mut sorted = self.values.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let p = Partition::new(sorted).expect("validated values are positive");
        let out = p.dual();
        debug_assert!(out.parts().windows(2).all(|w| w[0] > w[1]));
        debug_assert_eq!(out.num_parts(), self.order);
        out
    }

    /// Whether every drop beyond the order is at most e−1, counting the final
    /// drop to zero.
    pub fn drops_bounded_by(&self, e: usize) -> bool {
        let j = self.socle_degree();
        for i in self.order..=j + 1 {
            let prev = self.values[i - 1];
            let cur = self.values.get(i).copied().unwrap_or(0);
            if prev.saturating_sub(cur) > e - 1 {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let joined = self
            .values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{joined}")
    }
}

impl FromStr for HilbertFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values: Vec<usize> = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidHilbert(format!("bad entry {tok:?}")))
            })
            .collect::<Result<_>>()?;
        HilbertFunction::new(values)
    }
}

impl Serialize for HilbertFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HilbertFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<usize>::deserialize(deserializer)?;
        HilbertFunction::new(values).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    fn h(values: &[usize]) -> HilbertFunction {
        HilbertFunction::new(values.to_vec()).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(h(&[1, 2, 3, 2, 1]).order(), 3);
        assert_eq!(h(&[1, 1, 1]).order(), 1);
        assert_eq!(h(&[1, 2, 3]).order(), 3);
        assert_eq!(h(&[1, 2, 2]).socle_degree(), 2);
        assert!(HilbertFunction::new(vec![]).is_err());
        assert!(HilbertFunction::new(vec![2]).is_err());
        assert!(HilbertFunction::new(vec![1, 3]).is_err());
        assert!(HilbertFunction::new(vec![1, 2, 2, 3]).is_err());
        assert!(HilbertFunction::new(vec![1, 2, 0]).is_err());
        assert!(HilbertFunction::new(vec![1, 2, 1, 2]).is_err());
    }

    #[test]
    fn p_of_h_examples() {
        assert_eq!(h(&[1, 2, 3, 2, 1]).to_partition(), p(&[5, 3, 1]));
        assert_eq!(
            h(&[1, 2, 3, 4, 3, 3, 2, 1]).to_partition(),
            p(&[8, 6, 4, 1])
        );
        assert_eq!(h(&[1, 1, 1]).to_partition(), p(&[3]));
    }

    #[test]
    fn h_of_p_examples() {
        assert_eq!(p(&[6, 4, 3]).to_hilbert().unwrap(), h(&[1, 2, 3, 3, 3, 1]));
        assert_eq!(
            p(&[6, 4, 2, 1]).to_hilbert().unwrap(),
            h(&[1, 2, 3, 4, 2, 1])
        );
        assert_eq!(p(&[1]).to_hilbert().unwrap(), h(&[1]));
        assert_eq!(p(&[2, 2]).to_hilbert(), Err(Error::RepeatedParts));
    }

    #[test]
    fn bijection_across_decreasing_partitions() {
        // both composites are the identity, for all strictly decreasing
        // partitions of n <= 12 and all Hilbert functions arising from them
        for n in 1..=12 {
            for q in partitions_of(n).unwrap() {
                if q.parts().windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let hf = q.to_hilbert().unwrap();
                assert_eq!(hf.to_partition(), q);
                assert_eq!(hf.sum(), n);
                let back = hf.to_partition().to_hilbert().unwrap();
                assert_eq!(back, hf);
                // for decreasing parts the diagonal lengths agree with the
                // rearranged dual
                assert_eq!(q.diagonal_lengths(), hf.values());
            }
        }
    }

    #[test]
    fn compare_examples() {
        assert_eq!(
            h(&[1, 1, 1, 1, 1]).compare(&h(&[1, 2, 1, 1])).unwrap(),
            Comparison::Less
        );
        assert_eq!(
            h(&[1, 2, 3, 3, 3, 1])
                .compare(&h(&[1, 2, 3, 4, 2, 1]))
                .unwrap(),
            Comparison::Less
        );
        let x = h(&[1, 2, 2]);
        assert_eq!(x.compare(&x).unwrap(), Comparison::Equal);
        assert_eq!(
            h(&[1, 2, 1, 1]).compare(&h(&[1, 2, 2])).unwrap(),
            Comparison::Less
        );
        assert!(h(&[1, 1]).compare(&h(&[1, 1, 1])).is_err());
    }

    #[test]
    fn drops() {
        assert!(h(&[1, 2, 1, 1, 1]).drops_bounded_by(2));
        assert!(h(&[1, 2, 2, 1]).drops_bounded_by(2));
        assert!(!h(&[1, 2, 3, 1]).drops_bounded_by(2));
        // the final drop to zero counts: h_j must be <= e-1
        assert!(!h(&[1, 2, 2]).drops_bounded_by(2));
        assert!(h(&[1, 2, 3, 1]).drops_bounded_by(3));
    }

    #[test]
    fn serde_and_parse() {
        let x = h(&[1, 2, 1, 1]);
        assert_eq!(serde_json::to_string(&x).unwrap(), "[1,2,1,1]");
        let back: HilbertFunction = serde_json::from_str("[1,2,1,1]").unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<HilbertFunction>("[1,3]").is_err());
        assert_eq!("1,2,1,1".parse::<HilbertFunction>().unwrap(), x);
        assert_eq!(x.to_string(), "1,2,1,1");
    }
}

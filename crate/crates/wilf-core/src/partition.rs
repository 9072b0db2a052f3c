//! Canonical partition representation in part-multiplicity form, the
//! parts/multiplicities involution, and the Wilf / fixed-point predicates.
//!
//! A partition is stored as a list of `(part, multiplicity)` pairs with
//! pairwise-distinct parts, sorted by strictly decreasing part. A partition
//! is *Wilf* when its nonzero multiplicities are also pairwise distinct; on
//! those, swapping every pair `(p, m) -> (m, p)` is a weight-preserving
//! involution.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("duplicate part {0}")]
    DuplicatePart(u64),
    #[error("part must be positive")]
    ZeroPart,
    #[error("multiplicity of part {0} must be positive")]
    ZeroMultiplicity(u64),
    #[error("malformed term `{0}`, expected part^multiplicity")]
    MalformedTerm(String),
    #[error("multiplicity {0} occurs more than once, involution undefined")]
    NotWilf(u64),
}

/// Integer partition in canonical part-multiplicity form.
///
/// Invariants: parts pairwise distinct and strictly decreasing, every
/// multiplicity at least 1. The empty partition (weight 0) is legal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    pairs: Vec<(u64, u64)>,
}

impl Partition {
    /// The empty partition of weight 0.
    pub fn empty() -> Self {
        Partition { pairs: Vec::new() }
    }

    /// Builds the canonical form from raw `(part, multiplicity)` pairs.
    ///
    /// Duplicate parts are rejected rather than merged: merging would
    /// silently alter multiplicities.
    pub fn from_pairs<I>(raw: I) -> Result<Self, PartitionError>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut pairs: Vec<(u64, u64)> = raw.into_iter().collect();
        for &(part, mult) in &pairs {
            if part == 0 {
                return Err(PartitionError::ZeroPart);
            }
            if mult == 0 {
                return Err(PartitionError::ZeroMultiplicity(part));
            }
        }
        pairs.sort_unstable_by_key(|&(part, _)| std::cmp::Reverse(part));
        for window in pairs.windows(2) {
            if window[0].0 == window[1].0 {
                return Err(PartitionError::DuplicatePart(window[0].0));
            }
        }
        Ok(Partition { pairs })
    }

    /// Canonical pairs, sorted by strictly decreasing part.
    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    /// Total weight: sum of part * multiplicity over all pairs.
    pub fn weight(&self) -> u128 {
        self.pairs
            .iter()
            .map(|&(p, m)| u128::from(p) * u128::from(m))
            .fold(0u128, |acc, term| {
                acc.checked_add(term).expect("partition weight overflow")
            })
    }

    /// Number of distinct parts.
    pub fn distinct_part_count(&self) -> usize {
        self.pairs.len()
    }

    /// True when all multiplicities are pairwise distinct.
    pub fn is_wilf(&self) -> bool {
        let mut mults: Vec<u64> = self.pairs.iter().map(|&(_, m)| m).collect();
        mults.sort_unstable();
        mults.windows(2).all(|w| w[0] != w[1])
    }

    /// Swaps every pair `(p, m)` to `(m, p)` and re-canonicalizes.
    ///
    /// Defined only on Wilf partitions; otherwise the image would have
    /// duplicate parts.
    pub fn involute(&self) -> Result<Partition, PartitionError> {
        if let Some(mult) = self.first_repeated_multiplicity() {
            return Err(PartitionError::NotWilf(mult));
        }
        Partition::from_pairs(self.pairs.iter().map(|&(p, m)| (m, p)))
    }

    /// True when the partition is Wilf and equal to its own involution,
    /// i.e. the pair set is closed under `(p, m) -> (m, p)`.
    pub fn is_fixed_point(&self) -> bool {
        match self.involute() {
            Ok(image) => image == *self,
            Err(_) => false,
        }
    }

    fn first_repeated_multiplicity(&self) -> Option<u64> {
        let mut mults: Vec<u64> = self.pairs.iter().map(|&(_, m)| m).collect();
        mults.sort_unstable();
        mults.windows(2).find(|w| w[0] == w[1]).map(|w| w[0])
    }

    /// JSON form: array of `[part, multiplicity]` pairs in canonical order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("partition serialization cannot fail")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.pairs.len()))?;
        for pair in &self.pairs {
            seq.serialize_element(pair)?;
        }
        seq.end()
    }
}

/// Canonical text format: `part^multiplicity` terms joined by `+`, parts
/// strictly decreasing, multiplicity always explicit. The empty partition
/// serializes to the empty string.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(p, m)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{p}^{m}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Partition::empty());
        }
        let mut raw = Vec::new();
        for term in text.split('+') {
            let (part, mult) = term
                .split_once('^')
                .ok_or_else(|| PartitionError::MalformedTerm(term.to_string()))?;
            let part: u64 = part
                .parse()
                .map_err(|_| PartitionError::MalformedTerm(term.to_string()))?;
            let mult: u64 = mult
                .parse()
                .map_err(|_| PartitionError::MalformedTerm(term.to_string()))?;
            raw.push((part, mult));
        }
        Partition::from_pairs(raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(pairs: &[(u64, u64)]) -> Partition {
        Partition::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn from_pairs_canonicalizes_order() {
        let got = p(&[(1, 6), (6, 1), (3, 3), (4, 2), (2, 4)]);
        assert_eq!(got.pairs(), &[(6, 1), (4, 2), (3, 3), (2, 4), (1, 6)]);
    }

    #[test]
    fn from_pairs_empty() {
        let got = Partition::from_pairs([]).unwrap();
        assert_eq!(got, Partition::empty());
        assert_eq!(got.weight(), 0);
    }

    #[test]
    fn from_pairs_rejects_duplicate_part() {
        assert_eq!(
            Partition::from_pairs([(2, 1), (2, 3)]),
            Err(PartitionError::DuplicatePart(2))
        );
    }

    #[test]
    fn from_pairs_rejects_zeros() {
        assert_eq!(
            Partition::from_pairs([(0, 3)]),
            Err(PartitionError::ZeroPart)
        );
        assert_eq!(
            Partition::from_pairs([(3, 0)]),
            Err(PartitionError::ZeroMultiplicity(3))
        );
    }

    #[test]
    fn weight_examples() {
        assert_eq!(p(&[(5, 2), (4, 1), (3, 3), (1, 6)]).weight(), 29);
        assert_eq!(p(&[(3, 3)]).weight(), 9);
        assert_eq!(p(&[(6, 1), (4, 2), (3, 3), (2, 4), (1, 6)]).weight(), 37);
    }

    #[test]
    fn is_wilf_examples() {
        assert!(p(&[(5, 2), (4, 1), (3, 3), (1, 6)]).is_wilf());
        assert!(!p(&[(4, 1), (1, 1)]).is_wilf());
        assert!(Partition::empty().is_wilf());
    }

    #[test]
    fn involute_swaps_parts_and_multiplicities() {
        let source = p(&[(5, 2), (4, 1), (3, 3), (1, 6)]);
        let image = source.involute().unwrap();
        assert_eq!(image, p(&[(6, 1), (3, 3), (2, 5), (1, 4)]));
        assert_eq!(image.weight(), 29);
        assert!(image.is_wilf());
    }

    #[test]
    fn involute_fixes_the_symmetric_partition() {
        let fixed = p(&[(6, 1), (4, 2), (3, 3), (2, 4), (1, 6)]);
        assert_eq!(fixed.involute().unwrap(), fixed);
    }

    #[test]
    fn involute_single_pair() {
        assert_eq!(p(&[(5, 1)]).involute().unwrap(), p(&[(1, 5)]));
    }

    #[test]
    fn involute_rejects_non_wilf() {
        assert_eq!(
            p(&[(4, 1), (1, 1)]).involute(),
            Err(PartitionError::NotWilf(1))
        );
    }

    #[test]
    fn fixed_point_examples() {
        assert!(p(&[(6, 1), (4, 2), (3, 3), (2, 4), (1, 6)]).is_fixed_point());
        assert!(!p(&[(5, 2), (4, 1), (3, 3), (1, 6)]).is_fixed_point());
        assert!(p(&[(1, 1)]).is_fixed_point());
        assert!(Partition::empty().is_fixed_point());
    }

    #[test]
    fn distinct_part_count_examples() {
        assert_eq!(
            p(&[(6, 1), (4, 2), (3, 3), (2, 4), (1, 6)]).distinct_part_count(),
            5
        );
        assert_eq!(Partition::empty().distinct_part_count(), 0);
        let witness = p(&[(3, 1), (2, 2), (1, 3)]);
        assert!(witness.is_wilf());
        assert_eq!(witness.weight(), 10);
        assert_eq!(witness.distinct_part_count(), 3);
    }

    #[test]
    fn parse_canonical_text() {
        let fixed: Partition = "6^1+4^2+3^3+2^4+1^6".parse().unwrap();
        assert_eq!(fixed, p(&[(6, 1), (4, 2), (3, 3), (2, 4), (1, 6)]));
        assert!(fixed.is_fixed_point());
    }

    #[test]
    fn parse_empty_text() {
        let empty: Partition = "".parse().unwrap();
        assert_eq!(empty, Partition::empty());
    }

    #[test]
    fn parse_rejects_zero_multiplicity() {
        assert_eq!(
            "3^0+1^2".parse::<Partition>(),
            Err(PartitionError::ZeroMultiplicity(3))
        );
    }

    #[test]
    fn parse_rejects_malformed_and_duplicates() {
        assert!(matches!(
            "6".parse::<Partition>(),
            Err(PartitionError::MalformedTerm(_))
        ));
        assert!(matches!(
            "6^".parse::<Partition>(),
            Err(PartitionError::MalformedTerm(_))
        ));
        assert_eq!(
            "2^1+2^3".parse::<Partition>(),
            Err(PartitionError::DuplicatePart(2))
        );
    }

    #[test]
    fn serialize_round_trip() {
        for text in ["6^1+4^2+3^3+2^4+1^6", "5^2+4^1+3^3+1^6", ""] {
            let parsed: Partition = text.parse().unwrap();
            assert_eq!(parsed.to_string(), text);
        }
    }

    #[test]
    fn json_form() {
        let fixed = p(&[(2, 1), (1, 2)]);
        assert_eq!(fixed.to_json(), "[[2,1],[1,2]]");
        assert_eq!(Partition::empty().to_json(), "[]");
    }
}

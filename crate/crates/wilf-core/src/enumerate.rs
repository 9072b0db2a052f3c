//! Exhaustive partition streams, used as independent oracles for the fast
//! counting kernels.
//!
//! Partitions of `n` are generated as descending part lists in
//! lexicographically decreasing order: `[n]` first, all ones last. Wilf
//! partitions are obtained by filtering; nothing here depends on the
//! structure-based fixed-point search.

use crate::partition::Partition;

/// Iterator over all partitions of `n`, each in canonical
/// part-multiplicity form, in lexicographically decreasing order of the
/// underlying descending part list.
#[derive(Debug, Clone)]
pub struct PartitionStream {
    next: Option<Vec<u64>>,
}

impl PartitionStream {
    fn new(n: u64) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        PartitionStream { next: Some(first) }
    }
}

impl Iterator for PartitionStream {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.next.take()?;
        self.next = successor(&parts);
        Some(to_partition(&parts))
    }
}

/// Next descending part list after `parts`, or `None` after `[1, 1, ..., 1]`.
fn successor(parts: &[u64]) -> Option<Vec<u64>> {
    let pivot = parts.iter().rposition(|&p| p > 1)?;
    let mut next: Vec<u64> = parts[..=pivot].to_vec();
    // Mass to redistribute: the trailing ones plus the 1 shaved off the pivot.
    let mut rem = (parts.len() - 1 - pivot) as u64 + 1;
    next[pivot] -= 1;
    let fill = next[pivot];
    while rem >= fill {
        next.push(fill);
        rem -= fill;
    }
    if rem > 0 {
        next.push(rem);
    }
    Some(next)
}

fn to_partition(parts: &[u64]) -> Partition {
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for &part in parts {
        match pairs.last_mut() {
            Some((p, m)) if *p == part => *m += 1,
            _ => pairs.push((part, 1)),
        }
    }
    Partition::from_pairs(pairs).expect("descending part list is canonical")
}

/// Every partition of `n`, exactly once.
pub fn enumerate_all_partitions(n: u64) -> PartitionStream {
    PartitionStream::new(n)
}

/// Every Wilf partition of `n`, exactly once, in the same order as
/// [`enumerate_all_partitions`].
pub fn enumerate_wilf(n: u64) -> impl Iterator<Item = Partition> {
    enumerate_all_partitions(n).filter(Partition::is_wilf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(n: u64) -> Vec<String> {
        enumerate_all_partitions(n).map(|p| p.to_string()).collect()
    }

    #[test]
    fn n_zero_yields_only_the_empty_partition() {
        let all: Vec<Partition> = enumerate_all_partitions(0).collect();
        assert_eq!(all, vec![Partition::empty()]);
        let wilf: Vec<Partition> = enumerate_wilf(0).collect();
        assert_eq!(wilf, vec![Partition::empty()]);
    }

    #[test]
    fn partitions_of_four_in_order() {
        assert_eq!(texts(4), vec!["4^1", "3^1+1^1", "2^2", "2^1+1^2", "1^4"]);
    }

    #[test]
    fn classical_partition_counts() {
        assert_eq!(enumerate_all_partitions(4).count(), 5);
        assert_eq!(enumerate_all_partitions(10).count(), 42);
        assert_eq!(enumerate_all_partitions(20).count(), 627);
    }

    #[test]
    fn every_yield_has_the_right_weight_and_no_duplicates() {
        for n in 0..=15u64 {
            let all: Vec<Partition> = enumerate_all_partitions(n).collect();
            for p in &all {
                assert_eq!(p.weight(), u128::from(n));
            }
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
        }
    }

    #[test]
    fn wilf_partitions_of_three() {
        let got: Vec<String> = enumerate_wilf(3).map(|p| p.to_string()).collect();
        assert_eq!(got, vec!["3^1", "1^3"]);
    }

    #[test]
    fn wilf_partitions_of_five() {
        let got: Vec<String> = enumerate_wilf(5).map(|p| p.to_string()).collect();
        assert_eq!(got, vec!["5^1", "3^1+1^2", "2^2+1^1", "2^1+1^3", "1^5"]);
    }
}

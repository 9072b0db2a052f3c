//! Exact counting of Wilf partitions and involution fixed points.
//!
//! `count_wilf` backtracks over decreasing part sizes with a used-multiplicity
//! set; `count_fixed` searches fixed-point structures, which is exponentially
//! smaller than filtering the Wilf search space. Both are guarded: above a
//! configurable limit they return an explicit error instead of running
//! unbounded. `count_fixed_oracle` is the slow filter route kept as an
//! independent check.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::enumerate::enumerate_wilf;
use crate::partition::Partition;
use crate::structure::{count_structures, visit_structures, FixedPointStructure};

/// Exact count; arithmetic is checked so a result is never silently wrong.
pub type Count = u128;

/// Default feasibility limit for [`count_wilf`].
pub const WILF_COUNT_LIMIT: u64 = 200;
/// Default feasibility limit for [`count_fixed`] and [`enumerate_fixed`].
pub const FIXED_COUNT_LIMIT: u64 = 400;
/// Default feasibility limit for the brute-force oracles.
pub const ORACLE_LIMIT: u64 = 45;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error(
        "n = {n} exceeds the feasibility limit {limit}; raise the limit explicitly to proceed"
    )]
    TooLarge { n: u64, limit: u64 },
    #[error("count exceeds 128-bit range")]
    Overflow,
}

/// Number of Wilf partitions of `n` (the sequence `f`), default limit.
pub fn count_wilf(n: u64) -> Result<Count, CountError> {
    count_wilf_with_limit(n, WILF_COUNT_LIMIT)
}

/// Number of Wilf partitions of `n` with an explicit feasibility limit.
pub fn count_wilf_with_limit(n: u64, limit: u64) -> Result<Count, CountError> {
    if n > limit {
        return Err(CountError::TooLarge { n, limit });
    }
    let mut used = vec![false; n as usize + 2];
    wilf_rec(n, n, &mut used, 1)
}

/// Counts completions of weight `w` using distinct parts at most `top` and
/// multiplicities outside `used`; `min_free` is the smallest unused
/// multiplicity, the cheapest possible next move.
fn wilf_rec(w: u64, top: u64, used: &mut [bool], min_free: u64) -> Result<Count, CountError> {
    if w == 0 {
        return Ok(1);
    }
    let top = top.min(w);
    if top == 0 || w < min_free {
        return Ok(0);
    }
    if top == 1 {
        // Only the pair (1, w) can finish.
        return Ok(u128::from(!used[w as usize]));
    }
    let mut total: Count = 0;
    for part in (1..=top).rev() {
        for mult in 1..=w / part {
            if used[mult as usize] {
                continue;
            }
            used[mult as usize] = true;
            let next_free = if mult == min_free {
                next_unused(used, min_free + 1)
            } else {
                min_free
            };
            let sub = wilf_rec(w - part * mult, part - 1, used, next_free)?;
            used[mult as usize] = false;
            total = total.checked_add(sub).ok_or(CountError::Overflow)?;
        }
    }
    Ok(total)
}

fn next_unused(used: &[bool], from: u64) -> u64 {
    let mut m = from as usize;
    while m < used.len() && used[m] {
        m += 1;
    }
    m as u64
}

/// Number of fixed points of the involution among partitions of `n`
/// (the sequence `F`), via the structure bijection, default limit.
pub fn count_fixed(n: u64) -> Result<Count, CountError> {
    count_fixed_with_limit(n, FIXED_COUNT_LIMIT)
}

/// [`count_fixed`] with an explicit feasibility limit.
pub fn count_fixed_with_limit(n: u64, limit: u64) -> Result<Count, CountError> {
    if n > limit {
        return Err(CountError::TooLarge { n, limit });
    }
    Ok(count_structures(n, n.max(1)))
}

/// Slow independent route to `F(n)`: filter the exhaustive Wilf stream by
/// the fixed-point predicate. Must always agree with [`count_fixed`].
pub fn count_fixed_oracle(n: u64) -> Result<Count, CountError> {
    count_fixed_oracle_with_limit(n, ORACLE_LIMIT)
}

/// [`count_fixed_oracle`] with an explicit feasibility limit.
pub fn count_fixed_oracle_with_limit(n: u64, limit: u64) -> Result<Count, CountError> {
    if n > limit {
        return Err(CountError::TooLarge { n, limit });
    }
    Ok(enumerate_wilf(n).filter(Partition::is_fixed_point).count() as Count)
}

/// All fixed points of weight `n`, decoded from structures in the
/// deterministic search order, default limit.
pub fn enumerate_fixed(n: u64) -> Result<Vec<Partition>, CountError> {
    enumerate_fixed_with_limit(n, FIXED_COUNT_LIMIT)
}

/// [`enumerate_fixed`] with an explicit feasibility limit.
pub fn enumerate_fixed_with_limit(n: u64, limit: u64) -> Result<Vec<Partition>, CountError> {
    Ok(fixed_point_structures_with_limit(n, limit)?
        .iter()
        .map(FixedPointStructure::decode)
        .collect())
}

/// All fixed-point structures of weight `n` in deterministic search order.
pub fn fixed_point_structures_with_limit(
    n: u64,
    limit: u64,
) -> Result<Vec<FixedPointStructure>, CountError> {
    if n > limit {
        return Err(CountError::TooLarge { n, limit });
    }
    let mut found = Vec::new();
    let _ = visit_structures(n, n.max(1), &mut |s| {
        found.push(s.clone());
        ControlFlow::Continue(())
    });
    Ok(found)
}

/// Largest `r` with `r(r+1)(r+2)/6 <= n`: no partition of `n` with pairwise
/// distinct multiplicities can have more distinct parts, and the bound is
/// itself at most `(6n)^(1/3)`.
pub fn max_distinct_parts(n: u64) -> u64 {
    let n = u128::from(n);
    let mut r: u128 = 0;
    while (r + 1) * (r + 2) * (r + 3) / 6 <= n {
        r += 1;
    }
    r as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilf_counts_small() {
        assert_eq!(count_wilf(0).unwrap(), 1);
        assert_eq!(count_wilf(1).unwrap(), 1);
        assert_eq!(count_wilf(2).unwrap(), 2);
        assert_eq!(count_wilf(6).unwrap(), 7);
    }

    #[test]
    fn wilf_count_matches_filter_oracle() {
        for n in 0..=25u64 {
            let oracle = enumerate_wilf(n).count() as Count;
            assert_eq!(count_wilf(n).unwrap(), oracle, "n = {n}");
        }
    }

    #[test]
    fn fixed_counts_from_the_reference_table() {
        assert_eq!(count_fixed(1).unwrap(), 1);
        assert_eq!(count_fixed(4).unwrap(), 2);
        assert_eq!(count_fixed(7).unwrap(), 0);
        assert_eq!(count_fixed(20).unwrap(), 6);
    }

    #[test]
    fn fixed_oracle_examples() {
        assert_eq!(count_fixed_oracle(10).unwrap(), 3);
        assert_eq!(count_fixed_oracle(2).unwrap(), 0);
        assert_eq!(count_fixed_oracle(15).unwrap(), 0);
    }

    #[test]
    fn guards_reject_oversized_requests() {
        assert_eq!(
            count_wilf(201),
            Err(CountError::TooLarge { n: 201, limit: 200 })
        );
        assert_eq!(
            count_fixed(401),
            Err(CountError::TooLarge { n: 401, limit: 400 })
        );
        assert_eq!(
            count_fixed_oracle(46),
            Err(CountError::TooLarge { n: 46, limit: 45 })
        );
        assert!(count_fixed_with_limit(401, 450).is_ok());
        assert_eq!(
            count_wilf_with_limit(30, 10),
            Err(CountError::TooLarge { n: 30, limit: 10 })
        );
    }

    #[test]
    fn enumerate_fixed_small() {
        let four: Vec<String> = enumerate_fixed(4)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(four, vec!["2^2", "2^1+1^2"]);
        assert!(enumerate_fixed(2).unwrap().is_empty());
        let one: Vec<String> = enumerate_fixed(1)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(one, vec!["1^1"]);
    }

    #[test]
    fn enumerate_fixed_yields_are_valid_and_counted() {
        for n in 0..=40u64 {
            let fixed = enumerate_fixed(n).unwrap();
            for p in &fixed {
                assert!(p.is_fixed_point());
                assert_eq!(p.weight(), u128::from(n));
            }
            let mut dedup = fixed.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), fixed.len());
            assert_eq!(fixed.len() as Count, count_fixed(n).unwrap());
        }
    }

    #[test]
    fn max_distinct_parts_examples() {
        assert_eq!(max_distinct_parts(0), 0);
        assert_eq!(max_distinct_parts(1), 1);
        assert_eq!(max_distinct_parts(4), 2);
        assert_eq!(max_distinct_parts(10), 3);
        // One below each tetrahedral threshold.
        assert_eq!(max_distinct_parts(9), 2);
        assert_eq!(max_distinct_parts(19), 3);
        assert_eq!(max_distinct_parts(20), 4);
    }

    #[test]
    fn max_distinct_parts_stays_below_the_cube_root_bound() {
        for n in 1..=500u64 {
            let r = max_distinct_parts(n) as f64;
            assert!(r <= (6.0 * n as f64).cbrt() + 1e-9, "n = {n}");
        }
    }
}

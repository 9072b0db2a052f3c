//! Estimates and exact auxiliaries behind the counting bounds: the
//! cube-root-of-n logarithmic estimates, partitions into distinct squares,
//! divisor counts, partitions with a fixed number of summands and their
//! closed-form majorants, involution numbers, and an exact-rational upper
//! bound on the number of fixed points.

use std::f64::consts::PI;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, One, Zero};
use thiserror::Error;

use crate::count::{Count, CountError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EstimateError {
    #[error("estimates require n >= 2, got {0}")]
    TooSmall(u64),
}

/// Leading-order estimate for `ln f(n)`: `(1/3) (6n)^(1/3) ln n`.
pub fn log_wilf_estimate(n: u64) -> Result<f64, EstimateError> {
    if n < 2 {
        return Err(EstimateError::TooSmall(n));
    }
    let nf = n as f64;
    Ok((6.0 * nf).cbrt() * nf.ln() / 3.0)
}

/// Leading-order estimate for `ln F(n)`: exactly half of
/// [`log_wilf_estimate`].
pub fn log_fixed_estimate(n: u64) -> Result<f64, EstimateError> {
    Ok(log_wilf_estimate(n)? / 2.0)
}

/// Number of partitions of `k` into pairwise-distinct positive squares.
pub fn q_distinct_squares(k: u64) -> Result<Count, CountError> {
    Ok(q_distinct_squares_table(k)?[k as usize])
}

/// `q(j)` for all `j <= max`, by 0/1 knapsack over the squares.
pub(crate) fn q_distinct_squares_table(max: u64) -> Result<Vec<Count>, CountError> {
    let cap = max as usize;
    let mut ways: Vec<Count> = vec![0; cap + 1];
    ways[0] = 1;
    let mut s = 1u64;
    while s * s <= max {
        let sq = (s * s) as usize;
        for j in (sq..=cap).rev() {
            ways[j] = ways[j]
                .checked_add(ways[j - sq])
                .ok_or(CountError::Overflow)?;
        }
        s += 1;
    }
    Ok(ways)
}

/// `zeta(3/2)` by Euler-Maclaurin summation.
pub fn zeta_three_halves() -> f64 {
    // With cutoff N:
    //   zeta(s) = sum_{j=1}^{N} j^(-s) + N^(1-s)/(s-1) - N^(-s)/2
    //             + (s/12) N^(-s-1) - s(s+1)(s+2)/720 * N^(-s-3) + R_N,
    //   |R_N| <= s(s+1)(s+2)(s+3)(s+4) * |B_6|/6! * N^(-s-5).
    // At s = 3/2, N = 1000: |R_N| < 4e-22, so f64 rounding dominates and
    // the relative error sits far below the 1e-9 target. The partial sum
    // runs smallest-first to keep accumulation error down.
    const N: u64 = 1000;
    let s = 1.5_f64;
    let mut sum = 0.0;
    for j in (1..=N).rev() {
        sum += (j as f64).powf(-s);
    }
    let nf = N as f64;
    sum += nf.powf(1.0 - s) / (s - 1.0);
    sum -= nf.powf(-s) / 2.0;
    sum += s / 12.0 * nf.powf(-s - 1.0);
    sum -= s * (s + 1.0) * (s + 2.0) / 720.0 * nf.powf(-s - 3.0);
    sum
}

/// The outer map of the constant: `3 (sqrt(pi) z / 4)^(2/3)` for a given
/// zeta value `z`. Split out so the evaluation pipeline is testable with
/// `z = 1`.
pub fn meinardus_scaled(z: f64) -> f64 {
    3.0 * (PI.sqrt() * z / 4.0).powf(2.0 / 3.0)
}

/// `3 (sqrt(pi) zeta(3/2) / 4)^(2/3)`, the growth constant for partitions
/// into squares.
pub fn meinardus_constant() -> f64 {
    meinardus_scaled(zeta_three_halves())
}

/// Exact divisor count `d(x)` by trial-division factorization.
pub fn divisor_count(x: u64) -> Count {
    assert!(x >= 1, "divisor_count requires a positive argument");
    let mut n = x;
    let mut count: Count = 1;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e: Count = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            count *= e + 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        count *= 2;
    }
    count
}

/// `max_{1 <= x <= limit} d(x)`.
pub fn max_divisor_count(limit: u64) -> Count {
    assert!(limit >= 1, "max_divisor_count requires a positive limit");
    (1..=limit)
        .map(divisor_count)
        .max()
        .expect("nonempty range")
}

/// `p(m, r)`: partitions of `m` into exactly `r` positive summands, with
/// `p(0, 0) = 1`.
pub fn partitions_into_parts(m: u64, r: u64) -> Result<Count, CountError> {
    let table = partitions_into_parts_table(m, r)?;
    Ok(table[m as usize][r as usize])
}

fn factorial_big(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn binomial_big(n: u128, k: u128) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut numer = BigUint::one();
    let mut denom = BigUint::one();
    for i in 0..k {
        numer *= BigUint::from(n - i);
        denom *= BigUint::from(i + 1);
    }
    numer / denom
}

/// Full table `p(m, r)` for `m <= m_max`, `r <= r_max`, by the recurrence
/// `p(m, r) = p(m-1, r-1) + p(m-r, r)`.
pub(crate) fn partitions_into_parts_table(
    m_max: u64,
    r_max: u64,
) -> Result<Vec<Vec<Count>>, CountError> {
    let mm = m_max as usize;
    let rr = r_max as usize;
    let mut t = vec![vec![0 as Count; rr + 1]; mm + 1];
    t[0][0] = 1;
    for m in 1..=mm {
        for r in 1..=rr.min(m) {
            let shrink = t[m - 1][r - 1];
            let shift = t[m - r][r];
            t[m][r] = shrink.checked_add(shift).ok_or(CountError::Overflow)?;
        }
    }
    Ok(t)
}

/// The two closed-form majorants of `p(m, r)`, exact rationals:
/// `C(m + r(r-1)/2 - 1, r-1) / r!` and the looser
/// `(m + r^2/2)^(r-1) / (r! (r-1)!)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCountBounds {
    pub binomial_form: BigRational,
    pub power_form: BigRational,
}

pub fn partition_count_bound(m: u64, r: u64) -> PartitionCountBounds {
    assert!(m >= 1 && r >= 1, "bounds are defined for m >= 1, r >= 1");
    let top = u128::from(m) + u128::from(r) * u128::from(r - 1) / 2 - 1;
    let binom = binomial_big(top, u128::from(r) - 1);
    let r_fact = factorial_big(r);
    let binomial_form = BigRational::new(BigInt::from(binom), BigInt::from(r_fact.clone()));

    let base = BigInt::from(2u64 * m) + BigInt::from(r) * BigInt::from(r);
    let numer = base.pow(u32::try_from(r - 1).expect("r fits u32"));
    let denom = (BigInt::one() << (r - 1) as usize)
        * BigInt::from(r_fact)
        * BigInt::from(factorial_big(r - 1));
    let power_form = BigRational::new(numer, denom);

    PartitionCountBounds {
        binomial_form,
        power_form,
    }
}

/// Involution numbers: `I(0) = I(1) = 1`,
/// `I(n) = I(n-1) + (n-1) I(n-2)`.
pub fn involution_count(n: u64) -> Result<Count, CountError> {
    let (mut prev, mut curr): (Count, Count) = (1, 1);
    for i in 2..=u128::from(n) {
        let next = curr
            .checked_add((i - 1).checked_mul(prev).ok_or(CountError::Overflow)?)
            .ok_or(CountError::Overflow)?;
        prev = curr;
        curr = next;
    }
    Ok(curr)
}

/// Largest `r >= 0` with `8 r^3 <= x`.
fn summand_bound(x: u128) -> u64 {
    let mut r = 0u64;
    loop {
        let next = u128::from(r) + 1;
        if 8 * next * next * next <= x {
            r += 1;
        } else {
            return r;
        }
    }
}

/// Exact-rational upper bound on the number of fixed points of weight `n`:
/// the diagonal contributes a distinct-square partition of some `k` with
/// the same parity as `n`, the off-diagonal pairs contribute a partition of
/// `(n - k) / 2` into `r` summands with at most `d_max / 2` label splits
/// each, where `d_max` majorizes the divisor count up to `n`.
pub fn fixed_point_upper_bound(n: u64) -> Result<BigRational, CountError> {
    assert!(n >= 1, "bound is defined for positive weights");
    let q = q_distinct_squares_table(n)?;
    let d_max = BigInt::from(max_divisor_count(n));
    let p = partitions_into_parts_table(n / 2, summand_bound(6 * u128::from(n)))?;
    let mut total = BigRational::zero();
    let mut k = n % 2;
    while k <= n {
        let q_k = q[k as usize];
        if q_k != 0 {
            let rest = n - k;
            let m_half = (rest / 2) as usize;
            for r in 0..=summand_bound(6 * u128::from(rest)) {
                let p_mr = p[m_half][r as usize];
                if p_mr == 0 {
                    continue;
                }
                let numer = BigInt::from(q_k) * BigInt::from(p_mr) * d_max.pow(r as u32);
                let denom = BigInt::one() << r as usize;
                total += BigRational::new(numer, denom);
            }
        }
        k += 2;
    }
    Ok(total)
}

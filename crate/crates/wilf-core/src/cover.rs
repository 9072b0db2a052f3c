//! Constructive fixed-point certificates from a sparse label set.
//!
//! The label set grows by a square recurrence: `a_k = k` for `k <= 10` with
//! `b_10 = 136`, then `a_k = isqrt(b_{k-1} - 15)` and `b_k = b_{k-1} + a_k^2`.
//! Every weight in `[16, b_k]` has a fixed point whose labels lie in
//! `{a_1, ..., a_k}`: a base table covers `1..=136` (labels at most 10,
//! weights 2, 3, 7, 11, 15 excepted), and larger weights reduce by adding a
//! diagonal label `a_k`, which lands the residual back in `[16, b_{k-1}]`.

use std::sync::OnceLock;

use thiserror::Error;

use crate::partition::Partition;
use crate::structure::{visit_structures, FixedPointStructure};

/// The only positive integers with no fixed point of the involution.
pub const EXCEPTIONS: [u64; 5] = [2, 3, 7, 11, 15];

/// Largest weight handled by the [`BaseTable`].
pub const BASE_TABLE_MAX: u64 = 136;

const BASE_LABEL_MAX: u64 = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("cover set built to max weight {built}, too shallow for {needed}; extend it first")]
    TooShallow { built: u128, needed: u128 },
    #[error("label sequence exceeds 64-bit range at depth {0}")]
    DepthOverflow(usize),
    #[error("base table integrity violated: {0}")]
    Integrity(String),
    #[error("weight must be positive")]
    ZeroWeight,
}

/// Outcome of a cover query: a certificate partition, or the witness that
/// the weight is one of the five exceptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    Covered(Partition),
    NoCover,
}

/// The sparse label sequence `a_k` with its interval endpoints `b_k`.
#[derive(Debug, Clone)]
pub struct CoverSet {
    /// `a[k-1]` holds `a_k`; strictly increasing from `k = 10` on.
    a: Vec<u64>,
    /// `b[k-10]` holds `b_k` for `k >= 10`.
    b: Vec<u128>,
}

impl CoverSet {
    /// Builds the sequences through index `k_max` (at least 10), using exact
    /// integer square roots throughout.
    pub fn with_depth(k_max: usize) -> Result<Self, CoverError> {
        let mut cs = CoverSet {
            a: (1..=10).collect(),
            b: vec![136],
        };
        cs.extend_to_depth(k_max)?;
        Ok(cs)
    }

    /// Extends the recurrence until `b_k >= n`, so `n` is coverable.
    pub fn for_weight(n: u64) -> Result<Self, CoverError> {
        let mut cs = CoverSet::with_depth(10)?;
        cs.extend_to_weight(u128::from(n))?;
        Ok(cs)
    }

    pub fn depth(&self) -> usize {
        self.a.len()
    }

    /// `a_k`, 1-based; `None` beyond the built depth.
    pub fn a(&self, k: usize) -> Option<u64> {
        if k == 0 {
            return None;
        }
        self.a.get(k - 1).copied()
    }

    /// `b_k` for `k >= 10`; `None` beyond the built depth.
    pub fn b(&self, k: usize) -> Option<u128> {
        if k < 10 {
            return None;
        }
        self.b.get(k - 10).copied()
    }

    /// Largest weight the built prefix can certify.
    pub fn max_weight(&self) -> u128 {
        *self.b.last().expect("b is never empty")
    }

    pub fn extend_to_depth(&mut self, k_max: usize) -> Result<(), CoverError> {
        while self.a.len() < k_max.max(10) {
            self.extend_once()?;
        }
        Ok(())
    }

    pub fn extend_to_weight(&mut self, n: u128) -> Result<(), CoverError> {
        while self.max_weight() < n {
            self.extend_once()?;
        }
        Ok(())
    }

    /// Extends until membership of `x` is decided by the built prefix.
    pub fn extend_past_label(&mut self, x: u64) -> Result<(), CoverError> {
        while *self.a.last().expect("a is never empty") < x {
            self.extend_once()?;
        }
        Ok(())
    }

    fn extend_once(&mut self) -> Result<(), CoverError> {
        let prev_b = self.max_weight();
        let next_a = (prev_b - 15).isqrt();
        let next_a =
            u64::try_from(next_a).map_err(|_| CoverError::DepthOverflow(self.a.len() + 1))?;
        self.a.push(next_a);
        self.b
            .push(prev_b + u128::from(next_a) * u128::from(next_a));
        Ok(())
    }

    /// True iff `x` appears in the label sequence.
    pub fn contains(&self, x: u64) -> Result<bool, CoverError> {
        if x == 0 {
            return Err(CoverError::ZeroWeight);
        }
        if x <= BASE_LABEL_MAX {
            return Ok(true);
        }
        let last = *self.a.last().expect("a is never empty");
        if x > last {
            return Err(CoverError::TooShallow {
                built: u128::from(last),
                needed: u128::from(x),
            });
        }
        Ok(self.a[BASE_LABEL_MAX as usize..].binary_search(&x).is_ok())
    }

    /// The `t` smallest positive integers outside the label set, ascending.
    pub fn smallest_non_members(&self, t: usize) -> Result<Vec<u64>, CoverError> {
        let mut found = Vec::with_capacity(t);
        let mut x = BASE_LABEL_MAX + 1;
        while found.len() < t {
            if !self.contains(x)? {
                found.push(x);
            }
            x += 1;
        }
        // The t-th non-member equals t plus the number of members below it.
        if let Some(&largest) = found.last() {
            let members_below = (1..largest)
                .filter(|&v| self.contains(v).unwrap_or(false))
                .count();
            debug_assert_eq!(largest as usize, t + members_below);
        }
        Ok(found)
    }
}

/// For each coverable weight up to [`BASE_TABLE_MAX`], the first structure
/// (in the deterministic search order) using labels at most 10.
#[derive(Debug, Clone)]
pub struct BaseTable {
    first: Vec<Option<FixedPointStructure>>,
}

impl BaseTable {
    /// Exhaustive search over structures with labels in `1..=10`. Fails if
    /// the achievable weights are not exactly `1..=136` minus the five
    /// exceptions.
    pub fn build() -> Result<Self, CoverError> {
        let mut first: Vec<Option<FixedPointStructure>> = vec![None; BASE_TABLE_MAX as usize + 1];
        for weight in 1..=BASE_TABLE_MAX {
            let slot = &mut first[weight as usize];
            let _ = visit_structures(weight, BASE_LABEL_MAX, &mut |s| {
                *slot = Some(s.clone());
                std::ops::ControlFlow::Break(())
            });
        }
        for weight in 1..=BASE_TABLE_MAX {
            let covered = first[weight as usize].is_some();
            let expected = !EXCEPTIONS.contains(&weight);
            if covered != expected {
                return Err(CoverError::Integrity(format!(
                    "weight {weight}: covered = {covered}, expected {expected}"
                )));
            }
        }
        Ok(BaseTable { first })
    }

    /// Process-wide table; the underlying search is deterministic.
    pub fn shared() -> &'static BaseTable {
        static TABLE: OnceLock<BaseTable> = OnceLock::new();
        TABLE.get_or_init(|| BaseTable::build().expect("base table domain is fixed"))
    }

    pub fn get(&self, weight: u64) -> Option<&FixedPointStructure> {
        self.first.get(weight as usize).and_then(Option::as_ref)
    }
}

/// A fixed point of weight `n` whose labels all lie in the cover set, or
/// `NoCover` exactly when `n` is one of the five exceptions.
pub fn fixed_point_cover(n: u64, cs: &CoverSet) -> Result<CoverOutcome, CoverError> {
    if n == 0 {
        return Err(CoverError::ZeroWeight);
    }
    if EXCEPTIONS.contains(&n) {
        return Ok(CoverOutcome::NoCover);
    }
    if u128::from(n) > cs.max_weight() {
        return Err(CoverError::TooShallow {
            built: cs.max_weight(),
            needed: u128::from(n),
        });
    }

    let mut diagonal: Vec<u64> = Vec::new();
    let mut w = n;
    while w > BASE_TABLE_MAX {
        // Minimal k with w <= b_k; w > 136 = b_10 keeps k >= 11 here.
        let idx = cs.b.partition_point(|&b_k| b_k < u128::from(w));
        let k = 10 + idx;
        let a_k = cs.a(k).expect("depth checked above");
        diagonal.push(a_k);
        // a_k^2 <= b_{k-1} - 15 < w, so the residual stays at least 16.
        w -= a_k * a_k;
    }

    let base = BaseTable::shared()
        .get(w)
        .ok_or_else(|| CoverError::Integrity(format!("residual {w} missing from base table")))?;
    let singletons = base
        .singletons()
        .iter()
        .copied()
        .chain(diagonal.into_iter().rev());
    let combined = FixedPointStructure::new(singletons, base.pairs().iter().copied())
        .map_err(|e| CoverError::Integrity(e.to_string()))?;
    Ok(CoverOutcome::Covered(combined.decode()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deep() -> CoverSet {
        CoverSet::with_depth(20).unwrap()
    }

    #[test]
    fn recurrence_prefix_values() {
        let cs = deep();
        assert_eq!(cs.a(5), Some(5));
        assert_eq!(cs.a(10), Some(10));
        assert_eq!(cs.b(10), Some(136));
        let expected = [
            (11, 11, 257),
            (12, 15, 482),
            (13, 21, 923),
            (14, 30, 1823),
            (15, 42, 3587),
        ];
        for (k, a_k, b_k) in expected {
            assert_eq!(cs.a(k), Some(a_k), "a_{k}");
            assert_eq!(cs.b(k), Some(b_k), "b_{k}");
        }
    }

    #[test]
    fn base_table_spot_checks() {
        let table = BaseTable::shared();
        assert_eq!(table.get(1).unwrap().decode().to_string(), "1^1");
        let sixteen = table.get(16).unwrap();
        assert_eq!(sixteen.singletons(), &[4]);
        assert!(sixteen.pairs().is_empty());
        for exc in EXCEPTIONS {
            assert!(table.get(exc).is_none());
        }
        assert!(table.get(0).is_none());
        assert!(table.get(BASE_TABLE_MAX + 1).is_none());
    }

    #[test]
    fn cover_returns_no_cover_on_exceptions() {
        let cs = deep();
        for exc in EXCEPTIONS {
            assert_eq!(fixed_point_cover(exc, &cs).unwrap(), CoverOutcome::NoCover);
        }
    }

    #[test]
    fn cover_of_four_is_the_first_base_structure() {
        let cs = deep();
        match fixed_point_cover(4, &cs).unwrap() {
            CoverOutcome::Covered(p) => assert_eq!(p.to_string(), "2^2"),
            CoverOutcome::NoCover => panic!("4 is coverable"),
        }
    }

    #[test]
    fn cover_of_137_adds_the_diagonal_label_11() {
        let cs = deep();
        let CoverOutcome::Covered(p) = fixed_point_cover(137, &cs).unwrap() else {
            panic!("137 is coverable");
        };
        assert_eq!(p.to_string(), "11^11+4^4");
        assert_eq!(p.weight(), 137);
        assert!(p.is_fixed_point());
    }

    #[test]
    fn cover_rejects_zero_and_shallow_sets() {
        let cs = CoverSet::with_depth(10).unwrap();
        assert_eq!(fixed_point_cover(0, &cs), Err(CoverError::ZeroWeight));
        assert!(matches!(
            fixed_point_cover(137, &cs),
            Err(CoverError::TooShallow { .. })
        ));
    }

    #[test]
    fn membership_examples() {
        let cs = deep();
        assert!(cs.contains(10).unwrap());
        assert!(!cs.contains(12).unwrap());
        assert!(cs.contains(15).unwrap());
        assert!(cs.contains(11).unwrap());
        assert!(!cs.contains(14).unwrap());
        assert!(matches!(
            CoverSet::with_depth(10).unwrap().contains(11),
            Err(CoverError::TooShallow { .. })
        ));
    }

    #[test]
    fn smallest_non_members_examples() {
        let cs = deep();
        assert_eq!(cs.smallest_non_members(1).unwrap(), vec![12]);
        assert_eq!(cs.smallest_non_members(4).unwrap(), vec![12, 13, 14, 16]);
        assert_eq!(
            cs.smallest_non_members(6).unwrap(),
            vec![12, 13, 14, 16, 17, 18]
        );
    }

    #[test]
    fn lazy_extension_reaches_large_weights() {
        let mut cs = CoverSet::with_depth(10).unwrap();
        cs.extend_to_weight(1_000_000).unwrap();
        assert!(cs.max_weight() >= 1_000_000);
        let CoverOutcome::Covered(p) = fixed_point_cover(999_983, &cs).unwrap() else {
            panic!("coverable");
        };
        assert_eq!(p.weight(), 999_983);
        assert!(p.is_fixed_point());
    }
}

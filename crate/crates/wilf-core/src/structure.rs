//! Weight decomposition behind fixed points of the involution.
//!
//! A fixed point's pair set is closed under `(p, m) -> (m, p)`, so it splits
//! into diagonal pairs `(c, c)` costing `c^2` and mirrored off-diagonal pairs
//! `(a, b), (b, a)` costing `2ab`. Recording only the labels gives a
//! [`FixedPointStructure`]: a set of singleton labels plus a set of unordered
//! label pairs, all labels globally distinct. Encode/decode is a bijection
//! between structures of total weight `n` and fixed points of weight `n`,
//! which is why the fast counter searches structures instead of filtering
//! the full Wilf search space.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("label {0} used more than once")]
    DuplicateLabel(u64),
    #[error("label must be positive")]
    ZeroLabel,
    #[error("pair ({0}, {0}) must use two distinct labels")]
    DegeneratePair(u64),
    #[error("partition is not a fixed point of the involution")]
    NotFixedPoint,
}

/// Singleton labels (each `c` contributes `c^2`) plus unordered label pairs
/// (each `{a, b}` contributes `2ab`), all labels pairwise distinct.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPointStructure {
    singletons: Vec<u64>,
    pairs: Vec<(u64, u64)>,
}

impl FixedPointStructure {
    /// Validates label distinctness and normalizes order: singletons
    /// ascending, each pair stored `(low, high)`, pairs sorted by low label.
    pub fn new<S, P>(singletons: S, pairs: P) -> Result<Self, StructureError>
    where
        S: IntoIterator<Item = u64>,
        P: IntoIterator<Item = (u64, u64)>,
    {
        let mut singletons: Vec<u64> = singletons.into_iter().collect();
        let mut pairs: Vec<(u64, u64)> = pairs
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        singletons.sort_unstable();
        pairs.sort_unstable();

        let mut labels: Vec<u64> = singletons.clone();
        for &(a, b) in &pairs {
            if a == b {
                return Err(StructureError::DegeneratePair(a));
            }
            labels.push(a);
            labels.push(b);
        }
        if labels.contains(&0) {
            return Err(StructureError::ZeroLabel);
        }
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(StructureError::DuplicateLabel(w[0]));
        }
        Ok(FixedPointStructure { singletons, pairs })
    }

    pub fn singletons(&self) -> &[u64] {
        &self.singletons
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    /// Total weight: sum of `c^2` over singletons plus `2ab` over pairs.
    pub fn weight(&self) -> u128 {
        let squares: u128 = self
            .singletons
            .iter()
            .map(|&c| u128::from(c) * u128::from(c))
            .sum();
        let products: u128 = self
            .pairs
            .iter()
            .map(|&(a, b)| 2 * u128::from(a) * u128::from(b))
            .sum();
        squares + products
    }

    /// The fixed point this structure encodes: label `c` appears with
    /// multiplicity `c`; labels `a, b` appear with multiplicities `b, a`.
    pub fn decode(&self) -> Partition {
        let mut raw: Vec<(u64, u64)> = Vec::new();
        for &c in &self.singletons {
            raw.push((c, c));
        }
        for &(a, b) in &self.pairs {
            raw.push((a, b));
            raw.push((b, a));
        }
        Partition::from_pairs(raw).expect("structure labels are distinct")
    }

    /// Inverse of [`decode`](Self::decode); defined exactly on fixed points.
    pub fn encode(partition: &Partition) -> Result<Self, StructureError> {
        if !partition.is_fixed_point() {
            return Err(StructureError::NotFixedPoint);
        }
        let mut singletons = Vec::new();
        let mut pairs = Vec::new();
        for &(p, m) in partition.pairs() {
            if p == m {
                singletons.push(p);
            } else if p < m {
                pairs.push((p, m));
            }
        }
        FixedPointStructure::new(singletons, pairs)
    }
}

/// Walks every structure of weight `target` whose labels are all at most
/// `max_label`, in a fixed deterministic order, calling `visit` on each.
///
/// Order: labels are considered ascending; at each free label the branches
/// are skip, then singleton, then pairing with each larger free label
/// ascending. `ControlFlow::Break` from the visitor stops the walk early.
pub(crate) fn visit_structures<F>(target: u64, max_label: u64, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&FixedPointStructure) -> ControlFlow<()>,
{
    let mut used = vec![false; partner_bound(target, max_label)];
    let mut singletons = Vec::new();
    let mut pairs = Vec::new();
    visit_rec(
        target,
        1,
        max_label,
        &mut used,
        &mut singletons,
        &mut pairs,
        visit,
    )
}

/// Counts the structures [`visit_structures`] would yield, without
/// materializing them.
pub(crate) fn count_structures(target: u64, max_label: u64) -> u128 {
    let mut used = vec![false; partner_bound(target, max_label)];
    count_rec(target, 1, max_label, &mut used)
}

/// Largest label that can still appear: a pair `{1, b}` costs `2b`.
fn partner_bound(target: u64, max_label: u64) -> usize {
    (target / 2).min(max_label).max(1) as usize + 1
}

fn visit_rec<F>(
    w: u64,
    label: u64,
    max_label: u64,
    used: &mut [bool],
    singletons: &mut Vec<u64>,
    pairs: &mut Vec<(u64, u64)>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&FixedPointStructure) -> ControlFlow<()>,
{
    if w == 0 {
        let found = FixedPointStructure {
            singletons: singletons.clone(),
            pairs: pairs.clone(),
        };
        return visit(&found);
    }
    // Any later move costs at least label^2 (singleton) and pairs cost even more.
    if label > max_label || label.checked_mul(label).is_none_or(|sq| sq > w) {
        return ControlFlow::Continue(());
    }
    if used[label as usize] {
        return visit_rec(w, label + 1, max_label, used, singletons, pairs, visit);
    }

    visit_rec(w, label + 1, max_label, used, singletons, pairs, visit)?;

    let square = label * label;
    if square <= w {
        singletons.push(label);
        let flow = visit_rec(
            w - square,
            label + 1,
            max_label,
            used,
            singletons,
            pairs,
            visit,
        );
        singletons.pop();
        flow?;
    }

    let mut partner = label + 1;
    while partner <= max_label && 2 * label * partner <= w {
        if !used[partner as usize] {
            used[partner as usize] = true;
            pairs.push((label, partner));
            let flow = visit_rec(
                w - 2 * label * partner,
                label + 1,
                max_label,
                used,
                singletons,
                pairs,
                visit,
            );
            pairs.pop();
            used[partner as usize] = false;
            flow?;
        }
        partner += 1;
    }
    ControlFlow::Continue(())
}

fn count_rec(w: u64, label: u64, max_label: u64, used: &mut [bool]) -> u128 {
    if w == 0 {
        return 1;
    }
    if label > max_label || label.checked_mul(label).is_none_or(|sq| sq > w) {
        return 0;
    }
    if used[label as usize] {
        return count_rec(w, label + 1, max_label, used);
    }

    let mut total = count_rec(w, label + 1, max_label, used);
    total += count_rec(w - label * label, label + 1, max_label, used);
    let mut partner = label + 1;
    while partner <= max_label && 2 * label * partner <= w {
        if !used[partner as usize] {
            used[partner as usize] = true;
            total += count_rec(w - 2 * label * partner, label + 1, max_label, used);
            used[partner as usize] = false;
        }
        partner += 1;
    }
    total
}

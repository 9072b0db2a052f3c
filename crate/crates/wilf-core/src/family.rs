//! Large families of fixed points witnessing lower bounds on their count.
//!
//! A family is parametrised by a block count `K` and block size `R`. It
//! draws `2RK` labels from outside the cover set, pairs the lower half
//! (multiplicities) against the upper half (parts) under `K` permutations of
//! `1..=R`, mirrors every pair, and tops the weight up to `n` with a cover
//! certificate on the residual. Distinct permutation tuples give distinct
//! fixed points, so the family has `R!^K` members.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cover::{fixed_point_cover, CoverError, CoverOutcome, CoverSet};
use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("block size rounds to zero for n = {n} with {blocks} blocks")]
    BlockSizeZero { n: u64, blocks: u32 },
    #[error("invalid family parameters: {0}")]
    InvalidSpec(String),
    #[error("pair mass {mass} exceeds the target weight {n}")]
    MassExceedsTarget { mass: u128, n: u64 },
    #[error("residual weight {0} admits no fixed point")]
    ResidualUncoverable(u64),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("constructed member failed verification: {0}")]
    Verification(String),
}

impl FamilyError {
    /// True when the parameters admit no member at all, as opposed to
    /// malformed input or an internal failure.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            FamilyError::BlockSizeZero { .. }
                | FamilyError::MassExceedsTarget { .. }
                | FamilyError::ResidualUncoverable(_)
        )
    }
}

/// Block size `R` for weight `n` and `blocks` permutation blocks: the cube
/// root `(6nK / (K + 3))^(1/3)` scaled by `1 / (2K)`, rounded to nearest
/// with ties away from zero.
pub fn block_size_for(n: u64, blocks: u32) -> Result<u32, FamilyError> {
    if blocks == 0 {
        return Err(FamilyError::InvalidSpec("blocks must be positive".into()));
    }
    let k = f64::from(blocks);
    let cube = (6.0 * n as f64 * k / (k + 3.0)).cbrt();
    let r = (cube / (2.0 * k)).round();
    if r < 1.0 {
        return Err(FamilyError::BlockSizeZero { n, blocks });
    }
    Ok(r as u32)
}

/// Natural logarithm of the family size `R!^K` for the canonical block size.
pub fn family_log_size(n: u64, blocks: u32) -> Result<f64, FamilyError> {
    let r = block_size_for(n, blocks)?;
    Ok(log_size(blocks, r))
}

/// `K * ln(R!)` via summed logarithms.
pub fn log_size(blocks: u32, block_size: u32) -> f64 {
    // Starting at 1 keeps the empty-factorial sum at +0.0.
    let ln_factorial: f64 = (1..=u64::from(block_size)).map(|i| (i as f64).ln()).sum();
    f64::from(blocks) * ln_factorial
}

/// `blocks` copies of the identity permutation of `1..=block_size`.
pub fn identity_permutations(blocks: u32, block_size: u32) -> Vec<Vec<u32>> {
    vec![(1..=block_size).collect(); blocks as usize]
}

/// Deterministic permutation source backed by a seeded ChaCha stream.
pub struct PermutationSampler {
    rng: ChaCha8Rng,
}

impl PermutationSampler {
    pub fn new(seed: u64) -> Self {
        PermutationSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A uniform permutation of `1..=len`.
    pub fn permutation(&mut self, len: u32) -> Vec<u32> {
        let mut v: Vec<u32> = (1..=len).collect();
        v.shuffle(&mut self.rng);
        v
    }

    pub fn permutations(&mut self, blocks: u32, block_size: u32) -> Vec<Vec<u32>> {
        (0..blocks).map(|_| self.permutation(block_size)).collect()
    }
}

/// Fully resolved family parameters: weight, block shape, the `2RK` labels,
/// and one permutation per block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    n: u64,
    blocks: u32,
    block_size: u32,
    labels: Vec<u64>,
    permutations: Vec<Vec<u32>>,
}

impl FamilySpec {
    /// Canonical spec: block size from [`block_size_for`], labels the
    /// smallest non-members of the cover set. Extends `cs` as needed.
    pub fn new(
        n: u64,
        blocks: u32,
        permutations: Vec<Vec<u32>>,
        cs: &mut CoverSet,
    ) -> Result<Self, FamilyError> {
        let block_size = block_size_for(n, blocks)?;
        FamilySpec::with_block_size(n, blocks, block_size, permutations, cs)
    }

    /// Canonical labels under an explicit block size.
    pub fn with_block_size(
        n: u64,
        blocks: u32,
        block_size: u32,
        permutations: Vec<Vec<u32>>,
        cs: &mut CoverSet,
    ) -> Result<Self, FamilyError> {
        if blocks == 0 || block_size == 0 {
            return Err(FamilyError::InvalidSpec(
                "blocks and block size must be positive".into(),
            ));
        }
        let t = 2 * blocks as usize * block_size as usize;
        let labels = loop {
            match cs.smallest_non_members(t) {
                Ok(v) => break v,
                Err(CoverError::TooShallow { .. }) => {
                    cs.extend_to_depth(cs.depth() + 1)?;
                }
                Err(e) => return Err(e.into()),
            }
        };
        FamilySpec::with_labels(n, blocks, block_size, labels, permutations, cs)
    }

    /// Fully explicit spec; validates every component against the cover set.
    pub fn with_labels(
        n: u64,
        blocks: u32,
        block_size: u32,
        labels: Vec<u64>,
        permutations: Vec<Vec<u32>>,
        cs: &mut CoverSet,
    ) -> Result<Self, FamilyError> {
        if blocks == 0 || block_size == 0 {
            return Err(FamilyError::InvalidSpec(
                "blocks and block size must be positive".into(),
            ));
        }
        let expected = 2 * blocks as usize * block_size as usize;
        if labels.len() != expected {
            return Err(FamilyError::InvalidSpec(format!(
                "need {expected} labels, got {}",
                labels.len()
            )));
        }
        if !labels.windows(2).all(|w| w[0] < w[1]) {
            return Err(FamilyError::InvalidSpec(
                "labels must be strictly ascending".into(),
            ));
        }
        if labels[0] == 0 {
            return Err(FamilyError::InvalidSpec("labels must be positive".into()));
        }
        cs.extend_past_label(*labels.last().expect("nonempty"))?;
        for &x in &labels {
            if cs.contains(x)? {
                return Err(FamilyError::InvalidSpec(format!(
                    "label {x} lies in the cover set"
                )));
            }
        }
        if permutations.len() != blocks as usize {
            return Err(FamilyError::InvalidSpec(format!(
                "need {blocks} permutations, got {}",
                permutations.len()
            )));
        }
        for (i, perm) in permutations.iter().enumerate() {
            let mut seen = perm.clone();
            seen.sort_unstable();
            let valid =
                perm.len() == block_size as usize && seen.iter().copied().eq(1..=block_size);
            if !valid {
                return Err(FamilyError::InvalidSpec(format!(
                    "entry {i} is not a permutation of 1..={block_size}"
                )));
            }
        }
        Ok(FamilySpec {
            n,
            blocks,
            block_size,
            labels,
            permutations,
        })
    }

    pub fn weight(&self) -> u64 {
        self.n
    }

    pub fn blocks(&self) -> u32 {
        self.blocks
    }

    pub fn block_size(&self) -> u32 {
        self.block_size
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn permutations(&self) -> &[Vec<u32>] {
        &self.permutations
    }

    /// Natural logarithm of the family size `R!^K`.
    pub fn log_size(&self) -> f64 {
        log_size(self.blocks, self.block_size)
    }

    /// Builds the member selected by this spec's permutations: mirrored
    /// cross pairs from the label halves plus a cover certificate on the
    /// residual weight. Extends `cs` as far as the residual requires. The
    /// result is verified to be a fixed point of weight `n` before it is
    /// returned.
    pub fn member(&self, cs: &mut CoverSet) -> Result<Partition, FamilyError> {
        let r = self.block_size as usize;
        let k = self.blocks as usize;
        let xs = &self.labels;
        let mut raw: Vec<(u64, u64)> = Vec::with_capacity(2 * r * k + 8);
        let mut mass: u128 = 0;
        for i in 1..=k {
            let sigma = &self.permutations[i - 1];
            for j in 1..=r {
                let lo = xs[(i - 1) * r + (j - 1)];
                let hi = xs[(2 * k - i) * r + (sigma[j - 1] as usize - 1)];
                raw.push((hi, lo));
                raw.push((lo, hi));
                mass = mass
                    .checked_add(2 * u128::from(hi) * u128::from(lo))
                    .ok_or_else(|| FamilyError::Verification("mass overflow".into()))?;
            }
        }
        if mass > u128::from(self.n) {
            return Err(FamilyError::MassExceedsTarget { mass, n: self.n });
        }
        let residual = self.n - mass as u64;
        if residual > 0 {
            cs.extend_to_weight(u128::from(residual))?;
            match fixed_point_cover(residual, cs)? {
                CoverOutcome::Covered(p) => raw.extend_from_slice(p.pairs()),
                CoverOutcome::NoCover => {
                    return Err(FamilyError::ResidualUncoverable(residual));
                }
            }
        }
        let member =
            Partition::from_pairs(raw).map_err(|e| FamilyError::Verification(e.to_string()))?;
        if member.weight() != u128::from(self.n) {
            return Err(FamilyError::Verification(format!(
                "weight {} != {}",
                member.weight(),
                self.n
            )));
        }
        if !member.is_fixed_point() {
            return Err(FamilyError::Verification("not a fixed point".into()));
        }
        Ok(member)
    }
}

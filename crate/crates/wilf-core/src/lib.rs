//! Wilf partitions and the fixed points of their involution.
//!
//! A Wilf partition has pairwise-distinct nonzero part multiplicities, so
//! swapping each (part, multiplicity) pair to (multiplicity, part) is an
//! involution on these partitions. This crate provides:
//!
//! - canonical partition values with parsing, serialization, and the
//!   involution itself ([`partition`]);
//! - exhaustive partition and Wilf-partition streams ([`enumerate`]);
//! - the bijection between fixed points and label structures built from
//!   singletons and unordered pairs ([`structure`]);
//! - guarded exact counters for both families ([`count`]);
//! - a sparse label set that certifies a fixed point of every weight
//!   outside the five exceptions, constructively ([`cover`]);
//! - permutation families that witness factorial lower bounds on the
//!   number of fixed points ([`family`]);
//! - estimates, exact bounding machinery, and comparison reports
//!   ([`asym`], [`report`]).

pub mod asym;
pub mod count;
pub mod cover;
pub mod enumerate;
pub mod family;
pub mod partition;
pub mod report;
pub mod structure;

pub use asym::{
    divisor_count, fixed_point_upper_bound, involution_count, log_fixed_estimate,
    log_wilf_estimate, max_divisor_count, meinardus_constant, meinardus_scaled,
    partition_count_bound, partitions_into_parts, q_distinct_squares, zeta_three_halves,
    EstimateError, PartitionCountBounds,
};
pub use count::{
    count_fixed, count_fixed_oracle, count_fixed_oracle_with_limit, count_fixed_with_limit,
    count_wilf, count_wilf_with_limit, enumerate_fixed, enumerate_fixed_with_limit,
    fixed_point_structures_with_limit, max_distinct_parts, Count, CountError, FIXED_COUNT_LIMIT,
    ORACLE_LIMIT, WILF_COUNT_LIMIT,
};
pub use cover::{
    fixed_point_cover, BaseTable, CoverError, CoverOutcome, CoverSet, BASE_TABLE_MAX, EXCEPTIONS,
};
pub use enumerate::{enumerate_all_partitions, enumerate_wilf, PartitionStream};
pub use family::{
    block_size_for, family_log_size, identity_permutations, FamilyError, FamilySpec,
    PermutationSampler,
};
pub use partition::{Partition, PartitionError};
pub use report::{
    report, report_row, report_with_limits, to_csv, to_json, ReportLimits, ReportRow, RATIO_BAND,
};
pub use structure::{FixedPointStructure, StructureError};

//! Ozone groups: automorphisms fixing the center, bounded from below by
//! normal elements and from above by exhaustive diagonal search.

mod auto;
mod group;
mod sandwich;

pub use auto::{verify_automorphism, AutoKind, GradedAutomorphism};
pub use group::FiniteGroupTable;
pub use sandwich::{
    diagonal_upper_bound, divisibility_check, filtered_realization_check, fixes_center, group_structure,
    ozone_sandwich, skew_recognition, verify_named, GroupStructure, OzoneReport, OzoneWitness, SkewParams,
    DIAGONAL_SEARCH_LIMIT,
};

#[cfg(test)]
mod tests;

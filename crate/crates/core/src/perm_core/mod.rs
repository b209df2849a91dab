//! Permutations, stabilizer chains and the permutation groups built from
//! finite groups (regular representations, holomorph, orbitals, block actions).

mod actions;
mod chain;
mod permutation;
mod regular;

pub use actions::{block_action_with_kernel, orbitals, BlockAction, RelationPartition};
pub use chain::PermutationGroup;
pub use permutation::Permutation;
pub use regular::{
    d2_group, left_translation, regular_representations, regular_subgroups, regular_subgroups_up_to_conjugacy,
    right_translation, RegularRepresentations, RegularSubgroup, DEFAULT_ENUMERATION_CAP,
};

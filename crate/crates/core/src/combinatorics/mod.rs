//! Partitions, permutations, index sequences, symmetric-group characters,
//! Kostka numbers and pairings.

mod characters;
mod cosets;
mod pairing;
mod partition;
mod permutation;
mod sequence;
mod union_find;

pub(crate) use characters::{CHARACTERS, KOSTKA};
pub use characters::{dimension, irreducible_character, kostka};
pub use cosets::{double_coset_class_counts, ClassCounts, YoungSubgroup, MAX_COSET_DEGREE};
pub use pairing::{pairings, Pairing};
pub use partition::{partitions, Partition};
pub use permutation::{all_permutations, Permutation};
pub use sequence::{
    count_sequences_of_type, count_sequences_of_type_polynomial, set_partition_patterns, IndexSequence, StabilizerIter,
    DEFAULT_STABILIZER_CAP,
};
pub use union_find::UnionFind;

//! Induced-pattern detection and structural class tests.

pub mod patterns;
pub mod search;

pub use patterns::{by_name, catalog, h_k, hk_vertex, t_k, HkVariant, Pattern, PatternError};
pub use search::{
    are_isomorphic, find_induced, find_induced_with_order, for_each_induced, is_induced_copy,
    PatternMatch,
};
pub mod classes;

pub use classes::{
    chordality, distance_hereditary, find_hk, find_hole, find_max_hk, find_tk, is_chordal,
    is_chordless_cycle, is_distance_hereditary, is_ptolemaic, max_hk_index, max_tk_index,
    prune_pendants_and_twins, ptolemaic, twins_and_pendants, Chordality, DistanceHereditary,
    Prunable, PruneRule, PruneStep, PruningSequence, Ptolemaic,
};

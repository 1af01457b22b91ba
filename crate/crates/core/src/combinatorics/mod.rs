//! Arcs, multisets, q-set partitions and their statistics.

mod arcs;
mod conflicts;
mod enumerate;
mod nodes;
mod stats;

pub use arcs::{Arc, ArcMultiset, QSetPartition};
pub use conflicts::{find_conflicts, is_set_partition, Conflict, ConflictKind};
pub use enumerate::{enumerate_set_partitions, q_stirling, DEFAULT_ENUMERATION_GUARD};
pub use nodes::{Node, NodeSet};
pub use stats::{conjugate, crossings, degree_exponent, r_exponent, stats, PairStats};

pub(crate) use arcs::{format_arcs, parse_arc_list};
pub(crate) use conflicts::{arcs_form_set_partition, classify_pair};
pub(crate) use stats::{degree_exponent_arcs, r_exponent_arcs};

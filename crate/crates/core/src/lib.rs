//! Exact decompositions of supercharacters of unipotent upper-triangular
//! groups `U_K(q)`, `q` prime, indexed by q-set partitions.

pub mod certificates;
pub mod cli;
pub mod combinatorics;
pub mod cyclotomic;
pub mod engine;
pub mod error;
pub mod explicit;
pub mod field;
pub mod poset;
pub mod straighten;
pub mod values;

pub use combinatorics::{Arc, ArcMultiset, Node, NodeSet, QSetPartition};
pub use error::{Error, Result};
pub use field::{FieldElement, NonzeroFieldElement, PrimeModulus};

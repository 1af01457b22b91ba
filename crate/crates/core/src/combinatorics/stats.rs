//! Statistics on arc multisets: pair counts, crossings, degrees, conjugation.

use crate::error::Result;
use crate::field::FieldElement;

use super::arcs::{Arc, ArcMultiset};
use super::nodes::{Node, NodeSet};

/// The occurrences running from `j` to `k`, their number, and their label sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairStats {
    pub occurrences: Vec<usize>,
    pub count: usize,
    pub weight: FieldElement,
}

pub fn stats(lambda: &ArcMultiset, j: Node, k: Node) -> PairStats {
    let q = lambda.modulus();
    let occurrences: Vec<usize> = lambda
        .arcs()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.left == j && a.right == k)
        .map(|(o, _)| o)
        .collect();
    let weight = occurrences
        .iter()
        .fold(q.element(0), |acc, &o| acc + q.element(lambda.occurrence(o).label));
    PairStats {
        count: occurrences.len(),
        occurrences,
        weight,
    }
}

/// Ordered occurrence pairs `(i-a-k, j-b-l)` with `i < j < k < l`.
pub fn crossings(lambda: &ArcMultiset) -> Vec<(usize, usize)> {
    crossing_pairs(lambda.arcs())
}

pub(crate) fn crossing_pairs(arcs: &[Arc]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (x, a) in arcs.iter().enumerate() {
        for (y, b) in arcs.iter().enumerate() {
            if a.left < b.left && b.left < a.right && a.right < b.right {
                out.push((x, y));
            }
        }
    }
    out
}

pub(crate) fn r_exponent_arcs(arcs: &[Arc], k: &NodeSet, l: &NodeSet) -> u32 {
    arcs.iter()
        .map(|a| {
            l.strictly_between(a.left, a.right)
                .iter()
                .filter(|&&j| !k.contains(j))
                .count() as u32
        })
        .sum()
}

/// Number of pairs `(j, i-a-l)` with `j ∈ L \ K` strictly under the arc.
pub fn r_exponent(lambda: &ArcMultiset, k: &NodeSet, l: &NodeSet) -> Result<u32> {
    k.require_subset_of(l)?;
    Ok(r_exponent_arcs(lambda.arcs(), k, l))
}

pub(crate) fn degree_exponent_arcs(arcs: &[Arc], l: &NodeSet) -> u32 {
    arcs.iter().map(|a| l.count_between(a.left, a.right) as u32).sum()
}

/// Exponent `e` such that `χ^λ(1) = q^e` as a character of `U_L`.
pub fn degree_exponent(lambda: &ArcMultiset, l: &NodeSet) -> u32 {
    degree_exponent_arcs(lambda.arcs(), l)
}

/// Negates every label.
pub fn conjugate(lambda: &ArcMultiset) -> ArcMultiset {
    let q = lambda.modulus();
    let mut arcs: Vec<Arc> = lambda
        .arcs()
        .iter()
        .map(|a| Arc {
            label: q.neg(a.label),
            ..*a
        })
        .collect();
    arcs.sort_unstable();
    ArcMultiset::from_sorted_unchecked(q, lambda.support().clone(), arcs)
}

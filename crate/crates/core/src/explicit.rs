//! Closed-form trivial coefficients for half-in set partitions and for
//! multisets whose endpoints all carry mixed labels.

use serde::Serialize;

use crate::certificates::{perturb_labels, EndLabel};
use crate::combinatorics::{crossings, r_exponent, ArcMultiset, NodeSet, QSetPartition};
use crate::engine::Coefficient;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossingVariant {
    /// Crossings `(i-k, j-l)` with `i, l ∉ K` and `j, k ∈ K`.
    SetPartition,
    /// Crossings whose first arc is labelled `(∘,•)` and second `(•,∘)`.
    Labeled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignificantCrossingSet {
    pub variant: CrossingVariant,
    /// Ordered occurrence pairs `(first, second)`.
    pub pairs: Vec<(usize, usize)>,
}

impl SignificantCrossingSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn set_partition_crossings(lambda: &ArcMultiset, k: &NodeSet) -> Vec<(usize, usize)> {
    let arcs = lambda.arcs();
    crossings(lambda)
        .into_iter()
        .filter(|&(x, y)| {
            let (a, b) = (arcs[x], arcs[y]);
            !k.contains(a.left) && k.contains(a.right) && k.contains(b.left) && !k.contains(b.right)
        })
        .collect()
}

fn labeled_crossings(lambda: &ArcMultiset, k: &NodeSet) -> Vec<(usize, usize)> {
    let labels = perturb_labels(lambda, k);
    let open_solid = |o: usize| (labels[o].left_label, labels[o].right_label) == (EndLabel::Open, EndLabel::Solid);
    let solid_open = |o: usize| (labels[o].left_label, labels[o].right_label) == (EndLabel::Solid, EndLabel::Open);
    crossings(lambda)
        .into_iter()
        .filter(|&(x, y)| open_solid(x) && solid_open(y))
        .collect()
}

/// `C_K(λ)`: the endpoint form for set partitions, the labelled form otherwise.
pub fn significant_crossings(lambda: &ArcMultiset, k: &NodeSet) -> SignificantCrossingSet {
    if crate::combinatorics::is_set_partition(lambda) {
        let pairs = set_partition_crossings(lambda, k);
        debug_assert!(
            !every_arc_half_in(lambda, k) || pairs == labeled_crossings(lambda, k),
            "crossing variants disagree on {lambda}"
        );
        SignificantCrossingSet {
            variant: CrossingVariant::SetPartition,
            pairs,
        }
    } else {
        SignificantCrossingSet {
            variant: CrossingVariant::Labeled,
            pairs: labeled_crossings(lambda, k),
        }
    }
}

fn every_arc_half_in(lambda: &ArcMultiset, k: &NodeSet) -> bool {
    lambda.arcs().iter().all(|a| k.contains(a.left) != k.contains(a.right))
}

fn q_power(q: u32, e: u32) -> Result<Coefficient> {
    (q as Coefficient).checked_pow(e).ok_or(Error::Overflow)
}

/// `q^{r} q^{|C_K(λ)|}` for a set partition with exactly one endpoint of
/// every arc in `K`.
pub fn explicit_trivial_coefficient(lambda: &QSetPartition, k: &NodeSet, l: &NodeSet) -> Result<Coefficient> {
    k.require_subset_of(l)?;
    if let Some(n) = lambda
        .arcs()
        .iter()
        .flat_map(|a| [a.left, a.right])
        .find(|&n| !l.contains(n))
    {
        return Err(Error::NodeOutsideSupport(n));
    }
    if let Some(a) = lambda.arcs().iter().find(|a| k.contains(a.left) == k.contains(a.right)) {
        return Err(Error::Hypothesis(format!(
            "arc {a} does not have exactly one endpoint in K"
        )));
    }
    let r = r_exponent(lambda, k, l)?;
    let c = set_partition_crossings(lambda, k).len() as u32;
    q_power(lambda.q(), r + c)
}

/// `q^{|C_K(λ)|}` for a multiset over `K` whose every occurrence is labelled
/// `(∘,•)` or `(•,∘)`.
pub fn mixed_label_trivial_coefficient(lambda: &ArcMultiset, k: &NodeSet) -> Result<Coefficient> {
    if let Some(n) = lambda
        .arcs()
        .iter()
        .flat_map(|a| [a.left, a.right])
        .find(|&n| !k.contains(n))
    {
        return Err(Error::NodeOutsideSupport(n));
    }
    if let Some(bad) = perturb_labels(lambda, k).iter().find(|l| l.left_label == l.right_label) {
        return Err(Error::Hypothesis(format!("occurrence {bad} is not mixed")));
    }
    q_power(lambda.q(), labeled_crossings(lambda, k).len() as u32)
}

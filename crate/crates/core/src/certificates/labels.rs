//! Perturbed diagrams: stack heights at shared endpoints and solid/open labels.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::combinatorics::{stats, Arc, ArcMultiset, Node, NodeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EndLabel {
    Solid,
    Open,
}

impl EndLabel {
    pub fn symbol(self) -> char {
        match self {
            EndLabel::Solid => '•',
            EndLabel::Open => '∘',
        }
    }
}

/// One occurrence of the perturbed diagram. Heights count from 0 at the bottom
/// of the stack of arcs sharing that endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LabeledOccurrence {
    pub occurrence: usize,
    #[serde(serialize_with = "crate::certificates::labels::arc_string")]
    pub arc: Arc,
    pub left_label: EndLabel,
    pub right_label: EndLabel,
    pub left_height: usize,
    pub right_height: usize,
}

pub(crate) fn arc_string<S: serde::Serializer>(arc: &Arc, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(arc)
}

impl LabeledOccurrence {
    pub fn is_solid(&self) -> bool {
        self.left_label == EndLabel::Solid && self.right_label == EndLabel::Solid
    }

    pub fn is_open(&self) -> bool {
        self.left_label == EndLabel::Open && self.right_label == EndLabel::Open
    }
}

impl fmt::Display for LabeledOccurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}@{} ({},{})",
            self.arc,
            self.occurrence,
            self.left_label.symbol(),
            self.right_label.symbol()
        )
    }
}

/// Occurrences of each endpoint pair, ordered for the `(TB)` rule: by label
/// then occurrence. Returns `(left_order, right_order)`, bottom first.
fn parallel_orders(lambda: &ArcMultiset, left: Node, right: Node) -> (Vec<usize>, Vec<usize>) {
    let s = stats(lambda, left, right);
    let mut order = s.occurrences;
    order.sort_by_key(|&o| (lambda.occurrence(o).label, o));
    let right_order = order.clone();
    let mut left_order = order;
    let m = left_order.len();
    if m >= 2 && s.weight.is_zero() {
        left_order.swap(m - 2, m - 1);
    }
    (left_order, right_order)
}

/// Applies the stacking rules and labels every endpoint: open iff the node is
/// outside `k` or another arc sits above it at that node.
pub fn perturb_labels(lambda: &ArcMultiset, k: &NodeSet) -> Vec<LabeledOccurrence> {
    let arcs = lambda.arcs();
    let mut groups: BTreeMap<(Node, Node), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for a in arcs {
        groups
            .entry((a.left, a.right))
            .or_insert_with(|| parallel_orders(lambda, a.left, a.right));
    }

    // left stacks: shorter arcs lower; right stacks: larger left endpoint lower
    let mut left_stacks: BTreeMap<Node, Vec<usize>> = BTreeMap::new();
    let mut right_stacks: BTreeMap<Node, Vec<usize>> = BTreeMap::new();
    for (&(i, _), (left_order, _)) in &groups {
        left_stacks.entry(i).or_default().extend(left_order);
    }
    let mut by_right: Vec<(&(Node, Node), &Vec<usize>)> = groups.iter().map(|(key, (_, r))| (key, r)).collect();
    by_right.sort_by_key(|&(&(i, l), _)| (l, std::cmp::Reverse(i)));
    for (&(_, l), right_order) in by_right {
        right_stacks.entry(l).or_default().extend(right_order);
    }

    let mut left_height = vec![0usize; arcs.len()];
    let mut left_top = vec![false; arcs.len()];
    for stack in left_stacks.values() {
        for (h, &o) in stack.iter().enumerate() {
            left_height[o] = h;
            left_top[o] = h + 1 == stack.len();
        }
    }
    let mut right_height = vec![0usize; arcs.len()];
    let mut right_top = vec![false; arcs.len()];
    for stack in right_stacks.values() {
        for (h, &o) in stack.iter().enumerate() {
            right_height[o] = h;
            right_top[o] = h + 1 == stack.len();
        }
    }

    let label = |inside: bool, top: bool| if inside && top { EndLabel::Solid } else { EndLabel::Open };
    arcs.iter()
        .enumerate()
        .map(|(o, a)| LabeledOccurrence {
            occurrence: o,
            arc: *a,
            left_label: label(k.contains(a.left), left_top[o]),
            right_label: label(k.contains(a.right), right_top[o]),
            left_height: left_height[o],
            right_height: right_height[o],
        })
        .collect()
}

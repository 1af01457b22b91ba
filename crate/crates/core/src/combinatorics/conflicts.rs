use std::fmt;

use super::arcs::{Arc, ArcMultiset};
use super::nodes::{Node, NodeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConflictKind {
    /// Shared left endpoint, different right endpoints.
    Left,
    /// Shared right endpoint, different left endpoints.
    Right,
    /// Identical endpoints.
    Both,
    /// Arcs incident to a node outside the ambient set.
    Node,
}

impl ConflictKind {
    pub fn tag(self) -> &'static str {
        match self {
            ConflictKind::Left => "CL",
            ConflictKind::Right => "CR",
            ConflictKind::Both => "CB",
            ConflictKind::Node => "CN",
        }
    }
}

impl fmt::Display for ConflictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A conflict in a multiset, referring to occurrences by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Conflict {
    /// `longer = i-a-l`, `shorter = i-b-k` with `k < l`.
    Left { longer: usize, shorter: usize },
    /// `longer = i-a-l`, `shorter = j-b-l` with `i < j`.
    Right { longer: usize, shorter: usize },
    /// Two occurrences with identical endpoints, `first < second`.
    Both { first: usize, second: usize },
    /// All occurrences incident to `node`.
    Node { node: Node, arcs: Vec<usize> },
}

impl Conflict {
    pub fn kind(&self) -> ConflictKind {
        match self {
            Conflict::Left { .. } => ConflictKind::Left,
            Conflict::Right { .. } => ConflictKind::Right,
            Conflict::Both { .. } => ConflictKind::Both,
            Conflict::Node { .. } => ConflictKind::Node,
        }
    }

    /// The occurrences making up the conflict.
    pub fn occurrences(&self) -> Vec<usize> {
        match self {
            Conflict::Left { longer, shorter } | Conflict::Right { longer, shorter } => {
                vec![*longer, *shorter]
            }
            Conflict::Both { first, second } => vec![*first, *second],
            Conflict::Node { arcs, .. } => arcs.clone(),
        }
    }

    /// Text form, e.g. `CL 1-1-4,1-1-2` or `CN@4 1-1-4,3-1-4,4-1-6`.
    pub fn describe(&self, lambda: &ArcMultiset) -> String {
        let arcs: Vec<String> = self
            .occurrences()
            .iter()
            .map(|&o| lambda.occurrence(o).to_string())
            .collect();
        match self {
            Conflict::Node { node, .. } => format!("CN@{node} {}", arcs.join(",")),
            _ => format!("{} {}", self.kind(), arcs.join(",")),
        }
    }
}

/// Classifies an ordered pair of distinct occurrences `x < y` (canonical order).
pub(crate) fn classify_pair(arcs: &[Arc], x: usize, y: usize) -> Option<Conflict> {
    let (a, b) = (arcs[x], arcs[y]);
    if a.left == b.left && a.right == b.right {
        Some(Conflict::Both { first: x, second: y })
    } else if a.left == b.left {
        // canonical order puts the shorter arc first
        Some(Conflict::Left { longer: y, shorter: x })
    } else if a.right == b.right {
        // a.left < b.left, so `a` is the longer arc
        Some(Conflict::Right { longer: x, shorter: y })
    } else {
        None
    }
}

/// Every conflict of `lambda` over `k`: pair conflicts in occurrence order,
/// then one node conflict per node of the support outside `k` with incident arcs.
pub fn find_conflicts(lambda: &ArcMultiset, k: &NodeSet) -> Vec<Conflict> {
    let arcs = lambda.arcs();
    let mut out = Vec::new();
    for x in 0..arcs.len() {
        for y in x + 1..arcs.len() {
            if let Some(c) = classify_pair(arcs, x, y) {
                out.push(c);
            }
        }
    }
    let mut outside: Vec<Node> = lambda
        .support()
        .iter()
        .chain(arcs.iter().flat_map(|a| [a.left, a.right]))
        .filter(|&n| !k.contains(n))
        .collect();
    outside.sort_unstable();
    outside.dedup();
    for node in outside {
        let incident: Vec<usize> = (0..arcs.len())
            .filter(|&o| arcs[o].left == node || arcs[o].right == node)
            .collect();
        if !incident.is_empty() {
            out.push(Conflict::Node { node, arcs: incident });
        }
    }
    out
}

pub(crate) fn arcs_form_set_partition(arcs: &[Arc]) -> bool {
    let mut lefts: Vec<Node> = arcs.iter().map(|a| a.left).collect();
    let mut rights: Vec<Node> = arcs.iter().map(|a| a.right).collect();
    lefts.sort_unstable();
    rights.sort_unstable();
    lefts.windows(2).all(|w| w[0] != w[1]) && rights.windows(2).all(|w| w[0] != w[1])
}

pub fn is_set_partition(lambda: &ArcMultiset) -> bool {
    arcs_form_set_partition(lambda.arcs())
}

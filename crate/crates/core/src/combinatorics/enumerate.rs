use crate::error::{Error, Result};
use crate::field::PrimeModulus;

use super::arcs::{Arc, ArcMultiset, QSetPartition};
use super::nodes::NodeSet;

/// Largest node set enumerated unless the caller raises the guard.
pub const DEFAULT_ENUMERATION_GUARD: usize = 10;

/// Every q-set partition of `k`, each once, ordered by arc count and then by
/// canonical arc sequence. `arc_count` keeps only partitions with that many arcs.
///
/// Nodes are scanned left to right; each node may close at most one arc
/// opened by an earlier node that has not yet opened one.
pub fn enumerate_set_partitions(
    k: &NodeSet,
    q: PrimeModulus,
    arc_count: Option<usize>,
    guard: usize,
) -> Result<std::vec::IntoIter<QSetPartition>> {
    if k.len() > guard {
        return Err(Error::GuardExceeded(format!(
            "{} nodes exceeds the enumeration guard of {guard}",
            k.len()
        )));
    }
    let mut raw = Vec::new();
    let mut arcs = Vec::new();
    let mut open_left = vec![false; k.len()];
    extend(k.as_slice(), 0, q, &mut open_left, &mut arcs, &mut raw);
    if let Some(m) = arc_count {
        raw.retain(|a: &Vec<Arc>| a.len() == m);
    }
    for a in &mut raw {
        a.sort_unstable();
    }
    raw.sort_unstable_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let out: Vec<QSetPartition> = raw
        .into_iter()
        .map(|arcs| QSetPartition::from_multiset_unchecked(ArcMultiset::from_sorted_unchecked(q, k.clone(), arcs)))
        .collect();
    Ok(out.into_iter())
}

fn extend(
    nodes: &[u32],
    pos: usize,
    q: PrimeModulus,
    used_left: &mut Vec<bool>,
    arcs: &mut Vec<Arc>,
    out: &mut Vec<Vec<Arc>>,
) {
    if pos == nodes.len() {
        out.push(arcs.clone());
        return;
    }
    // no incoming arc at this node
    extend(nodes, pos + 1, q, used_left, arcs, out);
    for from in 0..pos {
        if used_left[from] {
            continue;
        }
        used_left[from] = true;
        for label in q.units() {
            arcs.push(Arc {
                left: nodes[from],
                right: nodes[pos],
                label,
            });
            extend(nodes, pos + 1, q, used_left, arcs, out);
            arcs.pop();
        }
        used_left[from] = false;
    }
}

/// `S_q(n, k)`: number of q-set partitions of an `n`-set with `n - k` arcs,
/// from `S_q(n,k) = S_q(n-1,k-1) + k(q-1) S_q(n-1,k)`.
pub fn q_stirling(n: usize, k: usize, q: u32) -> u128 {
    let mut table = vec![vec![0u128; n + 1]; n + 1];
    table[0][0] = 1;
    for m in 1..=n {
        for j in 1..=m {
            table[m][j] = table[m - 1][j - 1] + (j as u128) * (q as u128 - 1) * table[m - 1][j];
        }
    }
    table[n][k]
}

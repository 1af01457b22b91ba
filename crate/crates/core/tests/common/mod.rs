#![allow(dead_code)]

use rand::Rng;
use superchar::combinatorics::enumerate_set_partitions;
use superchar::{Arc, ArcMultiset, NodeSet, PrimeModulus, QSetPartition};

pub fn modulus(q: u32) -> PrimeModulus {
    PrimeModulus::new(q).unwrap()
}

pub fn partitions(k: &NodeSet, q: u32) -> Vec<QSetPartition> {
    enumerate_set_partitions(k, modulus(q), None, 10).unwrap().collect()
}

pub fn all_arcs(support: &NodeSet, q: u32) -> Vec<Arc> {
    let nodes = support.as_slice();
    let mut out = Vec::new();
    for (x, &i) in nodes.iter().enumerate() {
        for &l in &nodes[x + 1..] {
            for a in 1..q {
                out.push(Arc {
                    left: i,
                    right: l,
                    label: a,
                });
            }
        }
    }
    out
}

/// Every multiset of at most `max_size` arcs over `support`.
pub fn multisets(support: &NodeSet, q: u32, max_size: usize) -> Vec<ArcMultiset> {
    let arcs = all_arcs(support, q);
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(arcs: &[Arc], from: usize, left: usize, current: &mut Vec<Arc>, out: &mut Vec<Vec<Arc>>) {
        out.push(current.clone());
        if left == 0 {
            return;
        }
        for x in from..arcs.len() {
            current.push(arcs[x]);
            rec(arcs, x, left - 1, current, out);
            current.pop();
        }
    }
    rec(&arcs, 0, max_size, &mut current, &mut out);
    out.into_iter()
        .map(|a| ArcMultiset::new(modulus(q), support.clone(), a).unwrap())
        .collect()
}

pub fn random_multiset<R: Rng>(rng: &mut R, support: &NodeSet, q: u32, max_size: usize) -> ArcMultiset {
    let arcs = all_arcs(support, q);
    let size = rng.gen_range(0..=max_size);
    let picked = (0..size).map(|_| arcs[rng.gen_range(0..arcs.len())]).collect();
    ArcMultiset::new(modulus(q), support.clone(), picked).unwrap()
}

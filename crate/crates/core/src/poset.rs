//! One-step relations of the conflict poset and bounded comparability search.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::certificates::{complete_matching, Bipartite, MatchingWitness};
use crate::combinatorics::{find_conflicts, format_arcs, Arc, ArcMultiset, Conflict, NodeSet};
use crate::error::{Error, Result};
use crate::field::PrimeModulus;

/// Largest number of steps `one_step_descents` returns by default.
pub const DEFAULT_STEP_GUARD: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PosetRule {
    PL,
    PR,
    PB,
    PN,
}

impl fmt::Display for PosetRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `(index into replacement, parent occurrence)` pairs.
pub type Injection = Vec<(usize, usize)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetStep {
    pub parent: ArcMultiset,
    pub child: ArcMultiset,
    pub rule: PosetRule,
    pub conflict: Conflict,
    /// `ν`, the arcs that replace the conflict.
    pub replacement: Vec<Arc>,
    /// Present for `PN` only.
    pub injection: Option<Injection>,
}

/// `parent => child [rule, conflict]`.
impl fmt::Display for PosetStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} => {} [{}, {}]",
            self.parent,
            self.child,
            self.rule,
            self.conflict.describe(&self.parent)
        )
    }
}

fn units(q: PrimeModulus) -> Vec<u32> {
    q.units().collect()
}

fn arc(left: u32, label: u32, right: u32) -> Arc {
    Arc { left, right, label }
}

/// Option set for `ν` for a pair conflict.
fn pair_options(arcs: &[Arc], conflict: &Conflict, q: PrimeModulus, k: &NodeSet) -> (PosetRule, Vec<Vec<Arc>>) {
    let labels = units(q);
    let mut out = Vec::new();
    match *conflict {
        Conflict::Left { longer, shorter } => {
            let (outer, inner) = (arcs[longer], arcs[shorter]);
            out.push(vec![outer]);
            for &j in k.strictly_between(outer.left, inner.right) {
                for &c in &labels {
                    out.push(vec![outer, arc(j, c, inner.right)]);
                }
            }
            (PosetRule::PL, out)
        }
        Conflict::Right { longer, shorter } => {
            let (outer, inner) = (arcs[longer], arcs[shorter]);
            out.push(vec![outer]);
            for &m in k.strictly_between(inner.left, outer.right) {
                for &c in &labels {
                    out.push(vec![outer, arc(inner.left, c, m)]);
                }
            }
            (PosetRule::PR, out)
        }
        Conflict::Both { first, second } => {
            let (a, b) = (arcs[first], arcs[second]);
            let (i, l) = (a.left, a.right);
            let inside = k.strictly_between(i, l);
            let sum = q.add(a.label, b.label);
            if sum == 0 {
                out.push(vec![]);
                for &m in inside {
                    for &c in &labels {
                        out.push(vec![arc(i, c, m)]);
                    }
                }
                for &j in inside {
                    for &c in &labels {
                        out.push(vec![arc(j, c, l)]);
                    }
                }
                for &m in inside {
                    for &j in inside {
                        for &c in &labels {
                            for &d in &labels {
                                out.push(vec![arc(i, c, m), arc(j, d, l)]);
                            }
                        }
                    }
                }
            } else {
                let merged = arc(i, sum, l);
                out.push(vec![merged]);
                for (x, &j) in inside.iter().enumerate() {
                    for &m in &inside[x + 1..] {
                        for &c in &labels {
                            out.push(vec![merged, arc(j, c, m)]);
                        }
                    }
                }
            }
            (PosetRule::PB, out)
        }
        Conflict::Node { .. } => unreachable!(),
    }
}

/// `(ν, ι)` pairs for a node conflict: every incident arc is deleted or
/// shrunk at the offending node to a new endpoint in `k`, any label.
fn node_options(arcs: &[Arc], node: u32, gamma: &[usize], q: PrimeModulus, k: &NodeSet) -> Vec<(Vec<Arc>, Injection)> {
    let labels = units(q);
    let mut choices: Vec<Vec<Option<Arc>>> = Vec::with_capacity(gamma.len());
    for &o in gamma {
        let a = arcs[o];
        let mut c = vec![None];
        if a.left == node {
            for &m in k.strictly_between(a.left, a.right) {
                c.extend(labels.iter().map(|&lab| Some(arc(m, lab, a.right))));
            }
        } else {
            for &m in k.strictly_between(a.left, a.right) {
                c.extend(labels.iter().map(|&lab| Some(arc(a.left, lab, m))));
            }
        }
        choices.push(c);
    }
    let mut out = vec![(Vec::new(), Vec::new())];
    for (g, c) in gamma.iter().zip(&choices) {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for (nu, iota) in &out {
            for choice in c {
                let (mut nu2, mut iota2): (Vec<Arc>, Injection) = (nu.clone(), iota.clone());
                if let Some(a) = choice {
                    iota2.push((nu2.len(), *g));
                    nu2.push(*a);
                }
                next.push((nu2, iota2));
            }
        }
        out = next;
    }
    out
}

/// Every one-step descent of `lambda` over `k`, conflict by conflict in the
/// order of [`find_conflicts`]. The same child may appear more than once.
pub fn one_step_descents(lambda: &ArcMultiset, k: &NodeSet, guard: usize) -> Result<Vec<PosetStep>> {
    let arcs = lambda.arcs();
    let q = lambda.modulus();
    let mut steps = Vec::new();
    for conflict in find_conflicts(lambda, k) {
        let gamma = conflict.occurrences();
        let rest = lambda.without(&gamma);
        let options: Vec<(PosetRule, Vec<Arc>, Option<Injection>)> = match &conflict {
            Conflict::Node { node, arcs: g } => node_options(arcs, *node, g, q, k)
                .into_iter()
                .map(|(nu, iota)| (PosetRule::PN, nu, Some(iota)))
                .collect(),
            _ => {
                let (rule, opts) = pair_options(arcs, &conflict, q, k);
                opts.into_iter().map(|nu| (rule, nu, None)).collect()
            }
        };
        for (rule, nu, injection) in options {
            if steps.len() >= guard {
                return Err(Error::GuardExceeded(format!("more than {guard} one-step descents")));
            }
            let mut child_arcs = rest.arcs().to_vec();
            child_arcs.extend_from_slice(&nu);
            let child = ArcMultiset::new(q, lambda.support().clone(), child_arcs)?;
            steps.push(PosetStep {
                parent: lambda.clone(),
                child,
                rule,
                conflict: conflict.clone(),
                replacement: nu,
                injection,
            });
        }
    }
    Ok(steps)
}

/// An injection `child → parent` sending `j-b-k` to some `i-a-l` with
/// `i ≤ j < k ≤ l`, as parent occurrence indices, if one exists.
pub fn shrinking_injection(child: &ArcMultiset, parent: &ArcMultiset) -> Option<Vec<usize>> {
    let (c, p) = (child.arcs(), parent.arcs());
    if c.len() > p.len() {
        return None;
    }
    let edges = c.iter().enumerate().flat_map(|(x, a)| {
        p.iter()
            .enumerate()
            .filter(move |(_, b)| b.left <= a.left && a.right <= b.right)
            .map(move |(y, _)| (x, y))
    });
    match complete_matching(&Bipartite::new(c.len(), p.len(), edges)) {
        MatchingWitness::Covering(assignment) => Some(assignment),
        MatchingWitness::HallViolator(_) => None,
    }
}

/// Whether `mu ⪯ lambda` is witnessed by at most `depth` one-step descents.
///
/// `Ok(false)` means the whole down-set was searched; if the bound cuts the
/// search short the result is `Err(Error::DepthExhausted(depth))`.
pub fn comparable(mu: &ArcMultiset, lambda: &ArcMultiset, k: &NodeSet, depth: usize) -> Result<bool> {
    if mu.modulus() != lambda.modulus() {
        return Err(Error::ModulusMismatch(mu.q(), lambda.q()));
    }
    let target = mu.arcs().to_vec();
    if target == lambda.arcs() {
        return Ok(true);
    }
    let mut seen: HashSet<Vec<Arc>> = HashSet::new();
    seen.insert(lambda.arcs().to_vec());
    let mut queue = VecDeque::from([(lambda.clone(), 0usize)]);
    let mut cut = false;
    while let Some((node, d)) = queue.pop_front() {
        if shrinking_injection(mu, &node).is_none() {
            continue;
        }
        let steps = one_step_descents(&node, k, DEFAULT_STEP_GUARD)?;
        if d == depth {
            cut |= !steps.is_empty();
            continue;
        }
        for s in steps {
            if s.child.arcs() == target.as_slice() {
                return Ok(true);
            }
            if seen.insert(s.child.arcs().to_vec()) {
                queue.push_back((s.child, d + 1));
            }
        }
    }
    if cut {
        Err(Error::DepthExhausted(depth))
    } else {
        Ok(false)
    }
}

/// Text form of a list of steps, one per line.
pub fn steps_text(steps: &[PosetStep]) -> String {
    steps.iter().map(|s| format!("{s}\n")).collect()
}

/// Canonical strings of the distinct children, sorted.
pub fn child_strings(steps: &[PosetStep]) -> Vec<String> {
    let mut v: Vec<String> = steps.iter().map(|s| format_arcs(s.child.arcs())).collect();
    v.sort();
    v.dedup();
    v
}

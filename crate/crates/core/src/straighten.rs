//! Node-inserting rewrites turning a multiset over `K` into a q-set partition
//! over a larger node set whose restriction recovers the multiset character.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::combinatorics::{
    format_arcs, parse_arc_list, r_exponent_arcs, Arc, ArcMultiset, Conflict, Node, NodeSet, QSetPartition,
};
use crate::engine::{expand, first_pair_conflict, restrict_multiset, CharacterCombination, Coefficient, ConflictOrder};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StraightenRule {
    #[serde(rename = "SL")]
    Left,
    #[serde(rename = "SR")]
    Right,
    #[serde(rename = "SB")]
    Both,
}

impl StraightenRule {
    pub fn tag(self) -> &'static str {
        match self {
            StraightenRule::Left => "SL",
            StraightenRule::Right => "SR",
            StraightenRule::Both => "SB",
        }
    }
}

impl fmt::Display for StraightenRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StraighteningStep {
    pub rule: StraightenRule,
    #[serde(serialize_with = "arcs_string")]
    pub conflict: Vec<Arc>,
    pub inserted: Vec<Node>,
    /// Pairs (inserted node, arc of the new multiset spanning it).
    pub r: u32,
}

fn arcs_string<S: serde::Serializer>(arcs: &[Arc], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_arcs(arcs))
}

/// `SB 1-1-3,1-2-3 inserted 2,4 r=1`.
impl fmt::Display for StraighteningStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inserted: Vec<String> = self.inserted.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{} {} inserted {} r={}",
            self.rule,
            format_arcs(&self.conflict),
            inserted.join(","),
            self.r
        )
    }
}

impl FromStr for StraighteningStep {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad trace line {line:?}"));
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [rule, conflict, "inserted", inserted, r] = parts.as_slice() else {
            return Err(bad());
        };
        let rule = match *rule {
            "SL" => StraightenRule::Left,
            "SR" => StraightenRule::Right,
            "SB" => StraightenRule::Both,
            _ => return Err(bad()),
        };
        let inserted = inserted
            .split(',')
            .map(|n| n.parse::<Node>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let r = r.strip_prefix("r=").and_then(|r| r.parse().ok()).ok_or_else(bad)?;
        Ok(Self {
            rule,
            conflict: parse_arc_list(conflict)?,
            inserted,
            r,
        })
    }
}

/// Parses the output of [`StraighteningResult::trace_text`].
pub fn parse_trace(text: &str) -> Result<Vec<StraighteningStep>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(str::parse).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StraighteningResult {
    pub tilde_lambda: QSetPartition,
    pub k_prime: NodeSet,
    pub l_prime: NodeSet,
    pub r: u32,
    /// `(original node, image)` for every node of `K`, ascending.
    pub index_map: Vec<(Node, Node)>,
    pub trace: Vec<StraighteningStep>,
}

impl StraighteningResult {
    pub fn trace_text(&self) -> String {
        self.trace.iter().map(|s| format!("{s}\n")).collect()
    }

    /// `q^{-r} Res^{U_{K'∪L'}}_{U_{K'}} χ^{λ̃}`, relabelled back onto `K`.
    pub fn restricted_character(&self, k: &NodeSet) -> Result<CharacterCombination> {
        let ambient = self.k_prime.union(&self.l_prime);
        let res = restrict_multiset(self.tilde_lambda.as_multiset(), &self.k_prime, &ambient)?;
        let q = self.tilde_lambda.q() as Coefficient;
        let scale = q.checked_pow(self.r).ok_or(Error::Overflow)?;
        res.divide_exact(scale)
            .ok_or_else(|| {
                Error::Hypothesis(format!(
                    "restriction of {} is not divisible by q^{}",
                    self.tilde_lambda, self.r
                ))
            })?
            .transport(k)
    }
}

/// Shift applied to surviving nodes by one insertion step.
fn shifted(n: Node, i: Node, k: Node, rule: StraightenRule) -> Node {
    match rule {
        StraightenRule::Left => {
            if n > i {
                n + 1
            } else {
                n
            }
        }
        StraightenRule::Right => {
            if n >= k {
                n + 1
            } else {
                n
            }
        }
        StraightenRule::Both => {
            if n <= i {
                n
            } else if n < k {
                n + 1
            } else {
                n + 2
            }
        }
    }
}

/// Applies one straightening rule to `conflict`. `k` holds the images of the
/// original nodes and `l` the inserted ones; both are returned updated.
pub fn straighten_step(
    lambda: &ArcMultiset,
    conflict: &Conflict,
    k: &NodeSet,
    l: &NodeSet,
) -> Result<(ArcMultiset, NodeSet, NodeSet)> {
    let (next, k2, l2, _) = step(lambda, conflict, k, l)?;
    Ok((next, k2, l2))
}

fn step(
    lambda: &ArcMultiset,
    conflict: &Conflict,
    k: &NodeSet,
    l: &NodeSet,
) -> Result<(ArcMultiset, NodeSet, NodeSet, StraighteningStep)> {
    let q = lambda.modulus();
    let arcs = lambda.arcs();
    let (rule, x, y) = match *conflict {
        Conflict::Left { longer, shorter } => (StraightenRule::Left, longer, shorter),
        Conflict::Right { longer, shorter } => (StraightenRule::Right, longer, shorter),
        Conflict::Both { first, second } => (StraightenRule::Both, first, second),
        Conflict::Node { .. } => {
            return Err(Error::Hypothesis(
                "straightening applies only to CL, CR and CB conflicts".into(),
            ))
        }
    };
    let (a, b) = (arcs[x], arcs[y]);
    // pivot nodes: i is the shared left endpoint (or the outer left), k the
    // shorter arc's right endpoint (or the shared right endpoint)
    let (i, kk) = match rule {
        StraightenRule::Left => (a.left, b.right),
        StraightenRule::Right => (a.left, a.right),
        StraightenRule::Both => (a.left, a.right),
    };
    if classify(&a, &b) != Some(rule) {
        return Err(Error::Hypothesis(format!("{a},{b} is not a {} conflict", rule)));
    }
    let f = |n: Node| shifted(n, i, kk, rule);
    let (inserted, replacement) = match rule {
        StraightenRule::Left => (
            vec![i + 1],
            vec![
                Arc {
                    left: i,
                    right: f(a.right),
                    label: a.label,
                },
                Arc {
                    left: i + 1,
                    right: f(b.right),
                    label: 1,
                },
            ],
        ),
        StraightenRule::Right => (
            vec![kk],
            vec![
                Arc {
                    left: a.left,
                    right: kk + 1,
                    label: a.label,
                },
                Arc {
                    left: f(b.left),
                    right: kk,
                    label: 1,
                },
            ],
        ),
        StraightenRule::Both => {
            let sum = q.add(a.label, b.label);
            let pair = if sum == 0 {
                vec![
                    Arc {
                        left: i,
                        right: kk + 1,
                        label: 1,
                    },
                    Arc {
                        left: i + 1,
                        right: kk + 2,
                        label: 1,
                    },
                ]
            } else {
                vec![
                    Arc {
                        left: i,
                        right: kk + 2,
                        label: sum,
                    },
                    Arc {
                        left: i + 1,
                        right: kk + 1,
                        label: 1,
                    },
                ]
            };
            (vec![i + 1, kk + 1], pair)
        }
    };
    let mut next: Vec<Arc> = arcs
        .iter()
        .enumerate()
        .filter(|&(o, _)| o != x && o != y)
        .map(|(_, a)| Arc {
            left: f(a.left),
            right: f(a.right),
            label: a.label,
        })
        .collect();
    next.extend_from_slice(&replacement);
    let k2: NodeSet = k.iter().map(f).collect();
    let l2: NodeSet = l.iter().map(f).chain(inserted.iter().copied()).collect();
    let support = k2.union(&l2);
    let r = r_exponent_arcs(
        &next,
        &support.difference(&NodeSet::new(inserted.iter().copied())?),
        &support,
    );
    let record = StraighteningStep {
        rule,
        conflict: vec![a, b],
        inserted,
        r,
    };
    Ok((ArcMultiset::new(q, support, next)?, k2, l2, record))
}

fn classify(a: &Arc, b: &Arc) -> Option<StraightenRule> {
    match (a.left == b.left, a.right == b.right) {
        (true, true) => Some(StraightenRule::Both),
        (true, false) if b.right < a.right => Some(StraightenRule::Left),
        (false, true) if a.left < b.left => Some(StraightenRule::Right),
        _ => None,
    }
}

/// Straightens with the default priority `CB`, `CL`, `CR`.
pub fn straighten(lambda: &ArcMultiset, k: &NodeSet) -> Result<StraighteningResult> {
    straighten_with_order(lambda, k, ConflictOrder::default())
}

pub fn straighten_with_order(lambda: &ArcMultiset, k: &NodeSet, order: ConflictOrder) -> Result<StraighteningResult> {
    if let Some(n) = lambda
        .arcs()
        .iter()
        .flat_map(|a| [a.left, a.right])
        .find(|&n| !k.contains(n))
    {
        return Err(Error::NodeOutsideSupport(n));
    }
    let mut current = lambda.with_support(k.clone())?;
    let mut kk = k.clone();
    let mut ll = NodeSet::empty();
    let mut trace = Vec::new();
    while let Some(conflict) = first_pair_conflict(current.arcs(), order) {
        let (next, k2, l2, record) = step(&current, &conflict, &kk, &ll)?;
        current = next;
        kk = k2;
        ll = l2;
        trace.push(record);
    }
    let support = kk.union(&ll);
    let r = r_exponent_arcs(current.arcs(), &kk, &support);
    debug_assert_eq!(r, trace.iter().map(|s| s.r).sum::<u32>());
    let index_map = k.iter().zip(kk.iter()).collect();
    Ok(StraighteningResult {
        tilde_lambda: QSetPartition::new(current)?,
        k_prime: kk,
        l_prime: ll,
        r,
        index_map,
        trace,
    })
}

/// Compares `expand(λ, K)` with the transported, rescaled restriction of `λ̃`.
pub fn check_identity(lambda: &ArcMultiset, k: &NodeSet, result: &StraighteningResult) -> Result<bool> {
    Ok(expand(lambda, k)? == result.restricted_character(k)?)
}

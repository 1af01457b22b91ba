use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A node index. Nodes are positive integers.
pub type Node = u32;

/// A finite set of positive integers, stored strictly increasing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(Vec<Node>);

impl NodeSet {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds a node set from arbitrary input, sorting and removing duplicates.
    pub fn new(nodes: impl IntoIterator<Item = Node>) -> Result<Self> {
        let mut v: Vec<Node> = nodes.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&n| n == 0) {
            return Err(Error::Parse(format!("node {bad} is not positive")));
        }
        v.sort_unstable();
        v.dedup();
        Ok(Self(v))
    }

    /// The interval `[lo, hi]`; empty when `hi < lo`.
    pub fn interval(lo: Node, hi: Node) -> Self {
        let lo = lo.max(1);
        Self((lo..=hi).collect())
    }

    pub fn as_slice(&self) -> &[Node] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Node> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    #[inline]
    pub fn contains(&self, n: Node) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    /// Nodes strictly between `lo` and `hi`.
    pub fn strictly_between(&self, lo: Node, hi: Node) -> &[Node] {
        if hi <= lo {
            return &[];
        }
        let start = self.0.partition_point(|&n| n <= lo);
        let end = self.0.partition_point(|&n| n < hi);
        &self.0[start..end.max(start)]
    }

    #[inline]
    pub fn count_between(&self, lo: Node, hi: Node) -> usize {
        self.strictly_between(lo, hi).len()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.0.iter().all(|&n| other.contains(n))
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mut v: Vec<Node> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        Self(self.0.iter().copied().filter(|&n| !other.contains(n)).collect())
    }

    /// Position of `n` within the set.
    pub fn rank(&self, n: Node) -> Option<usize> {
        self.0.binary_search(&n).ok()
    }

    /// All subsets, in binary-counter order over the sorted elements.
    pub fn subsets(&self) -> impl Iterator<Item = NodeSet> + '_ {
        let n = self.0.len();
        assert!(n < 32, "too many nodes to enumerate subsets");
        (0u32..(1u32 << n)).map(move |mask| {
            Self(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    pub(crate) fn require_subset_of(&self, sup: &NodeSet) -> Result<()> {
        if self.is_subset(sup) {
            Ok(())
        } else {
            Err(Error::NotSubset {
                sub: format!("{{{self}}}"),
                sup: format!("{{{sup}}}"),
            })
        }
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, n) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

/// Accepts comma-separated integers and `m..n` ranges; the empty string is
/// the empty set.
impl FromStr for NodeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut nodes = Vec::new();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        for part in s.split(',') {
            let part = part.trim();
            let parse = |t: &str| {
                t.trim()
                    .parse::<Node>()
                    .map_err(|_| Error::Parse(format!("bad node `{t}`")))
            };
            if let Some((lo, hi)) = part.split_once("..") {
                let (lo, hi) = (parse(lo)?, parse(hi)?);
                if lo > hi {
                    return Err(Error::Parse(format!("empty range `{part}`")));
                }
                nodes.extend(lo..=hi);
            } else {
                nodes.push(parse(part)?);
            }
        }
        Self::new(nodes)
    }
}

impl FromIterator<Node> for NodeSet {
    fn from_iter<I: IntoIterator<Item = Node>>(iter: I) -> Self {
        Self::new(iter).expect("nodes must be positive")
    }
}

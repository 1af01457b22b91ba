use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::PrimeModulus;

use super::nodes::{Node, NodeSet};

/// A labeled arc `left -label-> right` with `left < right`.
///
/// The label is a residue in `[1, q)`; it is checked against a modulus when the
/// arc is placed into an [`ArcMultiset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub left: Node,
    pub right: Node,
    pub label: u32,
}

impl Arc {
    pub fn new(left: Node, label: u32, right: Node) -> Result<Self> {
        if left == 0 || left >= right {
            return Err(Error::BadArc { left, right });
        }
        if label == 0 {
            return Err(Error::Parse(format!("arc {left}-{label}-{right} has zero label")));
        }
        Ok(Self { left, right, label })
    }

    /// `self` is strictly nested inside `outer`: `outer.left < left < right < outer.right`.
    #[inline]
    pub fn strictly_inside(&self, outer: &Arc) -> bool {
        outer.left < self.left && self.right < outer.right
    }

    #[inline]
    pub fn length(&self) -> u32 {
        self.right - self.left
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{}", self.left, self.label, self.right)
    }
}

impl FromStr for Arc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad arc `{s}`, expected i-a-l"));
        let mut it = s.trim().split('-');
        let mut next = || -> Result<u32> { it.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad()) };
        let (left, label, right) = (next()?, next()?, next()?);
        if it.next().is_some() {
            return Err(bad());
        }
        Arc::new(left, label, right)
    }
}

pub(crate) fn parse_arc_list(s: &str) -> Result<Vec<Arc>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

pub(crate) fn format_arcs(arcs: &[Arc]) -> String {
    let mut out = String::new();
    for (k, a) in arcs.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&a.to_string());
    }
    out
}

/// A finite multiset of arcs over an ambient node set.
///
/// Occurrences are kept sorted by `(left, right, label)`; the position of an
/// occurrence in that order is its occurrence index, so equal arcs remain
/// distinguishable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcMultiset {
    modulus: PrimeModulus,
    support: NodeSet,
    arcs: Vec<Arc>,
}

impl ArcMultiset {
    pub fn new(modulus: PrimeModulus, support: NodeSet, mut arcs: Vec<Arc>) -> Result<Self> {
        for a in &arcs {
            if a.label == 0 || a.label >= modulus.get() {
                return Err(Error::BadLabel {
                    label: a.label,
                    q: modulus.get(),
                });
            }
            for n in [a.left, a.right] {
                if !support.contains(n) {
                    return Err(Error::NodeOutsideSupport(n));
                }
            }
        }
        arcs.sort_unstable();
        Ok(Self { modulus, support, arcs })
    }

    /// Multiset whose support is exactly the set of arc endpoints.
    pub fn from_arcs(modulus: PrimeModulus, arcs: Vec<Arc>) -> Result<Self> {
        let support = NodeSet::new(arcs.iter().flat_map(|a| [a.left, a.right]))?;
        Self::new(modulus, support, arcs)
    }

    pub fn empty(modulus: PrimeModulus, support: NodeSet) -> Self {
        Self {
            modulus,
            support,
            arcs: Vec::new(),
        }
    }

    /// Parses the comma-separated `i-a-l` grammar; the empty string is `∅`.
    pub fn parse(modulus: PrimeModulus, support: NodeSet, text: &str) -> Result<Self> {
        Self::new(modulus, support, parse_arc_list(text)?)
    }

    pub(crate) fn from_sorted_unchecked(modulus: PrimeModulus, support: NodeSet, arcs: Vec<Arc>) -> Self {
        debug_assert!(arcs.windows(2).all(|w| w[0] <= w[1]));
        Self { modulus, support, arcs }
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.modulus.get()
    }

    pub fn support(&self) -> &NodeSet {
        &self.support
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn occurrence(&self, occ: usize) -> Arc {
        self.arcs[occ]
    }

    /// Same arcs over a different ambient node set.
    pub fn with_support(&self, support: NodeSet) -> Result<Self> {
        Self::new(self.modulus, support, self.arcs.clone())
    }

    /// Multiset union (sum). Supports are united.
    pub fn union(&self, other: &ArcMultiset) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.q(), other.q()));
        }
        let mut arcs = self.arcs.clone();
        arcs.extend_from_slice(&other.arcs);
        Self::new(self.modulus, self.support.union(&other.support), arcs)
    }

    /// Removes the listed occurrences.
    pub fn without(&self, occurrences: &[usize]) -> Self {
        let arcs = self
            .arcs
            .iter()
            .enumerate()
            .filter(|(k, _)| !occurrences.contains(k))
            .map(|(_, a)| *a)
            .collect();
        Self::from_sorted_unchecked(self.modulus, self.support.clone(), arcs)
    }

    /// Canonical text form: comma-separated arcs in canonical order.
    pub fn canonical_string(&self) -> String {
        format_arcs(&self.arcs)
    }

    /// `i-a-l@occ` reference to one occurrence.
    pub fn occurrence_string(&self, occ: usize) -> String {
        format!("{}@{}", self.arcs[occ], occ)
    }
}

impl fmt::Display for ArcMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// An arc multiset in which distinct occurrences never share a left endpoint
/// and never share a right endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSetPartition(ArcMultiset);

impl QSetPartition {
    pub fn new(multiset: ArcMultiset) -> Result<Self> {
        if super::is_set_partition(&multiset) {
            Ok(Self(multiset))
        } else {
            Err(Error::NotSetPartition(multiset.canonical_string()))
        }
    }

    pub fn parse(modulus: PrimeModulus, support: NodeSet, text: &str) -> Result<Self> {
        Self::new(ArcMultiset::parse(modulus, support, text)?)
    }

    pub fn empty(modulus: PrimeModulus, support: NodeSet) -> Self {
        Self(ArcMultiset::empty(modulus, support))
    }

    pub fn as_multiset(&self) -> &ArcMultiset {
        &self.0
    }

    pub fn into_multiset(self) -> ArcMultiset {
        self.0
    }

    pub(crate) fn from_multiset_unchecked(ms: ArcMultiset) -> Self {
        debug_assert!(super::is_set_partition(&ms));
        Self(ms)
    }
}

impl Deref for QSetPartition {
    type Target = ArcMultiset;

    fn deref(&self) -> &ArcMultiset {
        &self.0
    }
}

impl fmt::Display for QSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

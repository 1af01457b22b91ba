//! The rewriting oracle: restrictions and tensor products of supercharacters
//! expanded into nonnegative integer combinations of supercharacters by
//! repeatedly applying the arc restriction rule and the pair resolution rule.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::combinatorics::{
    arcs_form_set_partition, classify_pair, degree_exponent_arcs, format_arcs, r_exponent_arcs, Arc, ArcMultiset,
    Conflict, ConflictKind, NodeSet, QSetPartition,
};
use crate::error::{Error, Result};
use crate::field::PrimeModulus;

pub type Coefficient = u128;

/// Which pair conflict is resolved first when a term has several.
///
/// Within the chosen kind the first pair in canonical occurrence order wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConflictOrder {
    /// `CB`, then `CL`, then `CR`.
    #[default]
    BothLeftRight,
    /// `CR`, then `CL`, then `CB`.
    RightLeftBoth,
}

impl ConflictOrder {
    fn priority(self) -> [ConflictKind; 3] {
        match self {
            ConflictOrder::BothLeftRight => [ConflictKind::Both, ConflictKind::Left, ConflictKind::Right],
            ConflictOrder::RightLeftBoth => [ConflictKind::Right, ConflictKind::Left, ConflictKind::Both],
        }
    }
}

/// A combination `Σ c_ν χ^ν` of supercharacters of `U_K(q)` with positive
/// integer coefficients. Absent keys have coefficient zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterCombination {
    modulus: PrimeModulus,
    ambient: NodeSet,
    terms: BTreeMap<Vec<Arc>, Coefficient>,
}

impl CharacterCombination {
    pub(crate) fn from_terms(modulus: PrimeModulus, ambient: NodeSet, terms: BTreeMap<Vec<Arc>, Coefficient>) -> Self {
        debug_assert!(terms.keys().all(|k| arcs_form_set_partition(k)));
        debug_assert!(terms.values().all(|&c| c > 0));
        Self {
            modulus,
            ambient,
            terms,
        }
    }

    /// `{λ: coefficient}`.
    pub fn single(lambda: &QSetPartition, ambient: NodeSet, coefficient: Coefficient) -> Self {
        let mut terms = BTreeMap::new();
        if coefficient > 0 {
            terms.insert(lambda.arcs().to_vec(), coefficient);
        }
        Self::from_terms(lambda.modulus(), ambient, terms)
    }

    /// Builds a combination from canonical term strings; zero coefficients are dropped.
    pub fn parse_map(modulus: PrimeModulus, ambient: NodeSet, map: &BTreeMap<String, Coefficient>) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (text, &c) in map {
            let term = QSetPartition::parse(modulus, ambient.clone(), text)?;
            if c > 0 {
                let slot = terms.entry(term.arcs().to_vec()).or_insert(0 as Coefficient);
                *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self::from_terms(modulus, ambient, terms))
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn ambient(&self) -> &NodeSet {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `χ^ν`; zero when absent.
    pub fn coefficient(&self, nu: &ArcMultiset) -> Coefficient {
        self.coefficient_of_arcs(nu.arcs())
    }

    pub fn coefficient_of_arcs(&self, arcs: &[Arc]) -> Coefficient {
        if arcs.windows(2).all(|w| w[0] <= w[1]) {
            self.terms.get(arcs).copied().unwrap_or(0)
        } else {
            let mut sorted = arcs.to_vec();
            sorted.sort_unstable();
            self.terms.get(&sorted).copied().unwrap_or(0)
        }
    }

    /// Coefficient of the trivial character `χ^∅`.
    pub fn trivial_coefficient(&self) -> Coefficient {
        self.terms.get(&Vec::new()).copied().unwrap_or(0)
    }

    /// Terms in canonical arc order.
    pub fn iter(&self) -> impl Iterator<Item = (&[Arc], Coefficient)> + '_ {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    pub fn partitions(&self) -> impl Iterator<Item = (QSetPartition, Coefficient)> + '_ {
        self.terms.iter().map(move |(k, &c)| {
            let ms = ArcMultiset::from_sorted_unchecked(self.modulus, self.ambient.clone(), k.clone());
            (QSetPartition::from_multiset_unchecked(ms), c)
        })
    }

    /// Canonical term strings mapped to coefficients, sorted by string.
    pub fn to_string_map(&self) -> BTreeMap<String, Coefficient> {
        self.terms.iter().map(|(k, &c)| (format_arcs(k), c)).collect()
    }

    /// `Σ c_ν · χ^ν(1)`.
    pub fn total_degree(&self) -> Result<Coefficient> {
        let q = self.modulus.get() as Coefficient;
        self.terms.iter().try_fold(0 as Coefficient, |acc, (k, &c)| {
            let d = checked_pow(q, degree_exponent_arcs(k, &self.ambient))?;
            acc.checked_add(c.checked_mul(d).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)
        })
    }

    /// Divides every coefficient by `divisor`; `None` if some division is inexact.
    pub fn divide_exact(&self, divisor: Coefficient) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (k, &c) in &self.terms {
            if divisor == 0 || c % divisor != 0 {
                return None;
            }
            terms.insert(k.clone(), c / divisor);
        }
        Some(Self::from_terms(self.modulus, self.ambient.clone(), terms))
    }

    /// Relabels nodes through an order-preserving bijection `ambient → target`.
    pub fn transport(&self, target: &NodeSet) -> Result<Self> {
        if target.len() != self.ambient.len() {
            return Err(Error::Hypothesis(format!(
                "cannot transport {{{}}} onto {{{target}}}",
                self.ambient
            )));
        }
        let map = |n| target.as_slice()[self.ambient.rank(n).expect("node in ambient")];
        let terms = self
            .terms
            .iter()
            .map(|(k, &c)| {
                let mut arcs: Vec<Arc> = k
                    .iter()
                    .map(|a| Arc {
                        left: map(a.left),
                        right: map(a.right),
                        label: a.label,
                    })
                    .collect();
                arcs.sort_unstable();
                (arcs, c)
            })
            .collect();
        Ok(Self::from_terms(self.modulus, target.clone(), terms))
    }
}

impl fmt::Display for CharacterCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, v)) in self.to_string_map().iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{v}·χ{{{k}}}")?;
        }
        Ok(())
    }
}

/// Intermediate rewriting state: multisets (as canonical arc lists) with
/// positive coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermCombination {
    terms: HashMap<Vec<Arc>, Coefficient>,
}

impl TermCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, mut arcs: Vec<Arc>, coefficient: Coefficient) -> Result<()> {
        if coefficient == 0 {
            return Ok(());
        }
        arcs.sort_unstable();
        let slot = self.terms.entry(arcs).or_insert(0);
        *slot = slot.checked_add(coefficient).ok_or(Error::Overflow)?;
        Ok(())
    }

    pub fn coefficient(&self, arcs: &[Arc]) -> Coefficient {
        let mut sorted = arcs.to_vec();
        sorted.sort_unstable();
        self.terms.get(&sorted).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Arc], Coefficient)> + '_ {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    /// Terms sorted by canonical arc list.
    pub fn sorted(&self) -> Vec<(Vec<Arc>, Coefficient)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, &c)| (k.clone(), c)).collect();
        v.sort();
        v
    }

    pub fn to_string_map(&self) -> BTreeMap<String, Coefficient> {
        self.terms.iter().map(|(k, &c)| (format_arcs(k), c)).collect()
    }
}

fn checked_pow(base: Coefficient, exp: u32) -> Result<Coefficient> {
    base.checked_pow(exp).ok_or(Error::Overflow)
}

fn require_arcs_within(arcs: &[Arc], k: &NodeSet) -> Result<()> {
    match arcs.iter().flat_map(|a| [a.left, a.right]).find(|&n| !k.contains(n)) {
        Some(n) => Err(Error::NodeOutsideSupport(n)),
        None => Ok(()),
    }
}

/// Restriction of the single-arc supercharacter `χ^{arc}` from `U_L` to `U_K`.
pub fn restrict_arc(arc: Arc, q: PrimeModulus, k: &NodeSet, l: &NodeSet) -> Result<CharacterCombination> {
    k.require_subset_of(l)?;
    require_arcs_within(&[arc], l)?;
    let mut terms = BTreeMap::new();
    for (arcs, c) in restrict_arc_terms(arc, q, k, l)? {
        terms.insert(arcs, c);
    }
    Ok(CharacterCombination::from_terms(q, k.clone(), terms))
}

fn restrict_arc_terms(arc: Arc, q: PrimeModulus, k: &NodeSet, l: &NodeSet) -> Result<Vec<(Vec<Arc>, Coefficient)>> {
    let Arc {
        left: i,
        right: l_end,
        label,
    } = arc;
    let scale = checked_pow(q.get() as Coefficient, r_exponent_arcs(&[arc], k, l))?;
    let inner = k.strictly_between(i, l_end);
    let qm1 = q.get() as Coefficient - 1;
    let mut out = Vec::new();
    match (k.contains(i), k.contains(l_end)) {
        (true, true) => out.push((
            vec![Arc {
                left: i,
                right: l_end,
                label,
            }],
            scale,
        )),
        (false, true) => {
            out.push((Vec::new(), scale));
            for &j in inner {
                for b in q.units() {
                    out.push((
                        vec![Arc {
                            left: j,
                            right: l_end,
                            label: b,
                        }],
                        scale,
                    ));
                }
            }
        }
        (true, false) => {
            out.push((Vec::new(), scale));
            for &m in inner {
                for b in q.units() {
                    out.push((
                        vec![Arc {
                            left: i,
                            right: m,
                            label: b,
                        }],
                        scale,
                    ));
                }
            }
        }
        (false, false) => {
            let trivial = (inner.len() as Coefficient * qm1 + 1)
                .checked_mul(scale)
                .ok_or(Error::Overflow)?;
            out.push((Vec::new(), trivial));
            let c = qm1.checked_mul(scale).ok_or(Error::Overflow)?;
            for (x, &j) in inner.iter().enumerate() {
                for &m in &inner[x + 1..] {
                    for b in q.units() {
                        out.push((
                            vec![Arc {
                                left: j,
                                right: m,
                                label: b,
                            }],
                            c,
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Replacement terms for a pair of arcs over `K`, one rule application.
///
/// A pair without a conflict is returned unchanged with coefficient 1.
pub fn resolve_conflict_pair(a1: Arc, a2: Arc, q: PrimeModulus, k: &NodeSet) -> TermCombination {
    let mut out = TermCombination::new();
    let (x, y) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
    let pair = [x, y];
    let replacements = match classify_pair(&pair, 0, 1) {
        None => vec![(pair.to_vec(), 1)],
        Some(conflict) => pair_replacements(&pair, &conflict, q, k),
    };
    for (arcs, c) in replacements {
        out.add(arcs, c).expect("single rule coefficients are small");
    }
    out
}

/// The rule applied to `conflict` (a pair conflict among `arcs`), listing the
/// replacement for the two arcs involved.
pub(crate) fn pair_replacements(
    arcs: &[Arc],
    conflict: &Conflict,
    q: PrimeModulus,
    k: &NodeSet,
) -> Vec<(Vec<Arc>, Coefficient)> {
    let qm1 = q.get() as Coefficient - 1;
    let mut out = Vec::new();
    match *conflict {
        Conflict::Left { longer, shorter } => {
            let (outer, short) = (arcs[longer], arcs[shorter]);
            out.push((vec![outer], 1));
            for &j in k.strictly_between(short.left, short.right) {
                for c in q.units() {
                    out.push((
                        vec![
                            outer,
                            Arc {
                                left: j,
                                right: short.right,
                                label: c,
                            },
                        ],
                        1,
                    ));
                }
            }
        }
        Conflict::Right { longer, shorter } => {
            let (outer, short) = (arcs[longer], arcs[shorter]);
            out.push((vec![outer], 1));
            for &m in k.strictly_between(short.left, short.right) {
                for c in q.units() {
                    out.push((
                        vec![
                            outer,
                            Arc {
                                left: short.left,
                                right: m,
                                label: c,
                            },
                        ],
                        1,
                    ));
                }
            }
        }
        Conflict::Both { first, second } => {
            let (a, b) = (arcs[first], arcs[second]);
            let (i, l) = (a.left, a.right);
            let inner = k.strictly_between(i, l);
            let sum = q.add(a.label, b.label);
            if sum == 0 {
                out.push((Vec::new(), 1));
                for &m in inner {
                    for c in q.units() {
                        out.push((
                            vec![Arc {
                                left: i,
                                right: m,
                                label: c,
                            }],
                            1,
                        ));
                        out.push((
                            vec![Arc {
                                left: m,
                                right: l,
                                label: c,
                            }],
                            1,
                        ));
                    }
                }
                for &j in inner {
                    for &m in inner {
                        for c in q.units() {
                            for d in q.units() {
                                out.push((
                                    vec![
                                        Arc {
                                            left: i,
                                            right: j,
                                            label: c,
                                        },
                                        Arc {
                                            left: m,
                                            right: l,
                                            label: d,
                                        },
                                    ],
                                    1,
                                ));
                            }
                        }
                    }
                }
            } else {
                let merged = Arc {
                    left: i,
                    right: l,
                    label: sum,
                };
                out.push((vec![merged], inner.len() as Coefficient * qm1 + 1));
                for (x, &j) in inner.iter().enumerate() {
                    for &m in &inner[x + 1..] {
                        for c in q.units() {
                            out.push((
                                vec![
                                    merged,
                                    Arc {
                                        left: j,
                                        right: m,
                                        label: c,
                                    },
                                ],
                                qm1,
                            ));
                        }
                    }
                }
            }
        }
        Conflict::Node { .. } => unreachable!("node conflicts are resolved by restriction"),
    }
    out
}

/// First pair conflict of a canonical arc list under `order`.
pub(crate) fn first_pair_conflict(arcs: &[Arc], order: ConflictOrder) -> Option<Conflict> {
    let mut first: [Option<Conflict>; 3] = [None, None, None];
    let slot = |kind: ConflictKind| match kind {
        ConflictKind::Both => 0,
        ConflictKind::Left => 1,
        ConflictKind::Right => 2,
        ConflictKind::Node => unreachable!(),
    };
    for x in 0..arcs.len() {
        for y in x + 1..arcs.len() {
            // arcs are sorted, so once the left endpoint of y passes the right
            // endpoint of x neither endpoint can be shared
            if arcs[y].left > arcs[x].right {
                break;
            }
            if let Some(c) = classify_pair(arcs, x, y) {
                let s = slot(c.kind());
                if first[s].is_none() {
                    first[s] = Some(c);
                }
            }
        }
    }
    order.priority().into_iter().find_map(|kind| first[slot(kind)].take())
}

fn length_sum(arcs: &[Arc]) -> usize {
    arcs.iter().map(|a| a.length() as usize).sum()
}

/// Rewrites a batch of multisets over `k` to a combination of q-set partitions.
///
/// Terms are bucketed by total arc length; every rule application strictly
/// lowers that total, so each bucket is complete when it is processed.
pub(crate) fn expand_terms(
    terms: impl IntoIterator<Item = (Vec<Arc>, Coefficient)>,
    q: PrimeModulus,
    k: &NodeSet,
    order: ConflictOrder,
) -> Result<BTreeMap<Vec<Arc>, Coefficient>> {
    let mut buckets: Vec<HashMap<Vec<Arc>, Coefficient>> = Vec::new();
    let push = |buckets: &mut Vec<HashMap<Vec<Arc>, Coefficient>>, arcs: Vec<Arc>, c: Coefficient| -> Result<()> {
        let len = length_sum(&arcs);
        if buckets.len() <= len {
            buckets.resize_with(len + 1, HashMap::new);
        }
        let slot = buckets[len].entry(arcs).or_insert(0);
        *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
        Ok(())
    };
    for (mut arcs, c) in terms {
        if c == 0 {
            continue;
        }
        arcs.sort_unstable();
        push(&mut buckets, arcs, c)?;
    }
    let mut result: BTreeMap<Vec<Arc>, Coefficient> = BTreeMap::new();
    let mut level = buckets.len();
    while level > 0 {
        level -= 1;
        let bucket = std::mem::take(&mut buckets[level]);
        for (arcs, c) in bucket {
            match first_pair_conflict(&arcs, order) {
                None => {
                    let slot = result.entry(arcs).or_insert(0);
                    *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
                }
                Some(conflict) => {
                    let involved = conflict.occurrences();
                    let rest: Vec<Arc> = arcs
                        .iter()
                        .enumerate()
                        .filter(|(o, _)| !involved.contains(o))
                        .map(|(_, a)| *a)
                        .collect();
                    for (replacement, rc) in pair_replacements(&arcs, &conflict, q, k) {
                        let mut next = rest.clone();
                        next.extend(replacement);
                        next.sort_unstable();
                        debug_assert!(length_sum(&next) < level);
                        push(&mut buckets, next, c.checked_mul(rc).ok_or(Error::Overflow)?)?;
                    }
                }
            }
        }
    }
    Ok(result)
}

/// Expands `χ^λ` for a multiset `λ` over `K` into supercharacters of `U_K`.
pub fn expand(lambda: &ArcMultiset, k: &NodeSet) -> Result<CharacterCombination> {
    expand_with_order(lambda, k, ConflictOrder::default())
}

pub fn expand_with_order(lambda: &ArcMultiset, k: &NodeSet, order: ConflictOrder) -> Result<CharacterCombination> {
    require_arcs_within(lambda.arcs(), k)?;
    let terms = expand_terms([(lambda.arcs().to_vec(), 1)], lambda.modulus(), k, order)?;
    Ok(CharacterCombination::from_terms(lambda.modulus(), k.clone(), terms))
}

/// `Res^{U_L}_{U_K}(χ^λ)`.
///
/// Arcs are restricted one at a time and the running product is re-expanded
/// after each factor, which keeps the intermediate state small.
pub fn restrict(lambda: &QSetPartition, k: &NodeSet, l: &NodeSet) -> Result<CharacterCombination> {
    restrict_with_order(lambda, k, l, ConflictOrder::default())
}

pub fn restrict_with_order(
    lambda: &QSetPartition,
    k: &NodeSet,
    l: &NodeSet,
    order: ConflictOrder,
) -> Result<CharacterCombination> {
    k.require_subset_of(l)?;
    require_arcs_within(lambda.arcs(), l)?;
    restrict_multiset_arcs(lambda.arcs(), lambda.modulus(), k, l, order)
        .map(|terms| CharacterCombination::from_terms(lambda.modulus(), k.clone(), terms))
}

/// Restriction of `χ^λ` for any multiset `λ` over `L` (not necessarily a set
/// partition); used by the straightening identity checks.
pub fn restrict_multiset(lambda: &ArcMultiset, k: &NodeSet, l: &NodeSet) -> Result<CharacterCombination> {
    k.require_subset_of(l)?;
    require_arcs_within(lambda.arcs(), l)?;
    restrict_multiset_arcs(lambda.arcs(), lambda.modulus(), k, l, ConflictOrder::default())
        .map(|terms| CharacterCombination::from_terms(lambda.modulus(), k.clone(), terms))
}

fn restrict_multiset_arcs(
    arcs: &[Arc],
    q: PrimeModulus,
    k: &NodeSet,
    l: &NodeSet,
    order: ConflictOrder,
) -> Result<BTreeMap<Vec<Arc>, Coefficient>> {
    let mut acc: BTreeMap<Vec<Arc>, Coefficient> = BTreeMap::new();
    acc.insert(Vec::new(), 1);
    for &arc in arcs {
        let factor = restrict_arc_terms(arc, q, k, l)?;
        let mut product = Vec::with_capacity(acc.len() * factor.len());
        for (base, c) in &acc {
            for (extra, d) in &factor {
                let mut arcs = base.clone();
                arcs.extend_from_slice(extra);
                product.push((arcs, c.checked_mul(*d).ok_or(Error::Overflow)?));
            }
        }
        acc = expand_terms(product, q, k, order)?;
    }
    Ok(acc)
}

/// Literal form: the product of all per-arc restrictions is formed first and
/// expanded once at the end.
pub fn restrict_unstaged(lambda: &QSetPartition, k: &NodeSet, l: &NodeSet) -> Result<CharacterCombination> {
    k.require_subset_of(l)?;
    require_arcs_within(lambda.arcs(), l)?;
    let q = lambda.modulus();
    let mut product: Vec<(Vec<Arc>, Coefficient)> = vec![(Vec::new(), 1)];
    for &arc in lambda.arcs() {
        let factor = restrict_arc_terms(arc, q, k, l)?;
        let mut next = Vec::with_capacity(product.len() * factor.len());
        for (base, c) in &product {
            for (extra, d) in &factor {
                let mut arcs = base.clone();
                arcs.extend_from_slice(extra);
                next.push((arcs, c.checked_mul(*d).ok_or(Error::Overflow)?));
            }
        }
        product = next;
    }
    let terms = expand_terms(product, q, k, ConflictOrder::default())?;
    Ok(CharacterCombination::from_terms(q, k.clone(), terms))
}

/// `χ^λ ⊗ χ^μ` for q-set partitions over `K`.
pub fn tensor(lambda: &QSetPartition, mu: &QSetPartition, k: &NodeSet) -> Result<CharacterCombination> {
    if lambda.modulus() != mu.modulus() {
        return Err(Error::ModulusMismatch(lambda.q(), mu.q()));
    }
    let mut arcs = lambda.arcs().to_vec();
    arcs.extend_from_slice(mu.arcs());
    require_arcs_within(&arcs, k)?;
    let terms = expand_terms([(arcs, 1)], lambda.modulus(), k, ConflictOrder::default())?;
    Ok(CharacterCombination::from_terms(lambda.modulus(), k.clone(), terms))
}

/// Coefficient of `χ^ν` in `comb`.
pub fn coefficient(comb: &CharacterCombination, nu: &QSetPartition) -> Coefficient {
    comb.coefficient(nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{conjugate, crossings, degree_exponent, enumerate_set_partitions};

    fn q(n: u32) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn ns(s: &str) -> NodeSet {
        s.parse().unwrap()
    }

    fn arc(s: &str) -> Arc {
        s.parse().unwrap()
    }

    fn sp(qq: u32, k: &str, arcs: &str) -> QSetPartition {
        QSetPartition::parse(q(qq), ns(k), arcs).unwrap()
    }

    fn ms(qq: u32, k: &str, arcs: &str) -> ArcMultiset {
        ArcMultiset::parse(q(qq), ns(k), arcs).unwrap()
    }

    fn map(pairs: &[(&str, Coefficient)]) -> BTreeMap<String, Coefficient> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn restrict_arc_cases() {
        let both_in = restrict_arc(arc("1-1-3"), q(2), &ns("1,3"), &ns("1..3")).unwrap();
        assert_eq!(both_in.to_string_map(), map(&[("1-1-3", 2)]));

        let left_out = restrict_arc(arc("1-1-3"), q(2), &ns("2,3"), &ns("1..3")).unwrap();
        assert_eq!(left_out.to_string_map(), map(&[("", 1), ("2-1-3", 1)]));

        // both endpoints outside, two interior nodes in K: (2(q-1)+1) = 3 trivial
        let both_out = restrict_arc(arc("1-1-4"), q(2), &ns("2,3"), &ns("1..4")).unwrap();
        assert_eq!(both_out.to_string_map(), map(&[("", 3), ("2-1-3", 1)]));

        let right_out = restrict_arc(arc("1-2-4"), q(3), &ns("1,2"), &ns("1..4")).unwrap();
        // r = 1 (node 3), so every term carries a factor q
        assert_eq!(right_out.to_string_map(), map(&[("", 3), ("1-1-2", 3), ("1-2-2", 3)]));

        assert!(restrict_arc(arc("1-1-3"), q(2), &ns("1..4"), &ns("1..3")).is_err());
    }

    #[test]
    fn pair_rules() {
        let k = ns("1..4");
        let disjoint = resolve_conflict_pair(arc("1-1-2"), arc("3-1-4"), q(2), &k);
        assert_eq!(disjoint.to_string_map(), map(&[("1-1-2,3-1-4", 1)]));

        let k3 = ns("1..3");
        let zero_sum = resolve_conflict_pair(arc("1-1-3"), arc("1-1-3"), q(2), &k3);
        assert_eq!(
            zero_sum.to_string_map(),
            map(&[("", 1), ("1-1-2", 1), ("2-1-3", 1), ("1-1-2,2-1-3", 1)])
        );

        let nonzero_sum = resolve_conflict_pair(arc("1-1-3"), arc("1-1-3"), q(3), &k3);
        assert_eq!(nonzero_sum.to_string_map(), map(&[("1-2-3", 3)]));

        let left = resolve_conflict_pair(arc("1-1-4"), arc("1-1-3"), q(2), &k);
        assert_eq!(left.to_string_map(), map(&[("1-1-4", 1), ("1-1-4,2-1-3", 1)]));

        let right = resolve_conflict_pair(arc("1-1-4"), arc("2-1-4"), q(2), &k);
        assert_eq!(right.to_string_map(), map(&[("1-1-4", 1), ("1-1-4,2-1-3", 1)]));
    }

    #[test]
    fn expand_examples() {
        let lambda = sp(3, "1..4", "1-1-3,2-2-4");
        let e = expand(&lambda, &ns("1..4")).unwrap();
        assert_eq!(e.to_string_map(), map(&[("1-1-3,2-2-4", 1)]));

        let e = expand(&ms(2, "1..3", "1-1-3,1-1-3"), &ns("1..3")).unwrap();
        assert_eq!(
            e.to_string_map(),
            map(&[("", 1), ("1-1-2", 1), ("2-1-3", 1), ("1-1-2,2-1-3", 1)])
        );

        // a + b + c = 0 at q = 3: trivial coefficient 3q - 2 = 7
        let e = expand(&ms(3, "1..5", "1-1-5,1-1-5,1-1-5"), &ns("1..5")).unwrap();
        assert_eq!(e.trivial_coefficient(), 7);

        assert!(expand(&ms(2, "1..3", "1-1-3"), &ns("1,2")).is_err());
    }

    #[test]
    fn restriction_examples() {
        let lambda = sp(2, "1..10", "1-1-3,2-1-10,4-1-7,7-1-9,3-1-8,5-1-6");
        let k = ns("1,4,5,6,7,9");
        let r = restrict(&lambda, &k, &ns("1..10")).unwrap();
        assert_eq!(r.trivial_coefficient(), 0);

        let lambda = sp(2, "1..12", "1-1-5,2-1-7,3-1-9,4-1-12,6-1-10,8-1-11");
        let r = restrict(&lambda, &ns("4,5,7,8,9,10"), &ns("1..12")).unwrap();
        assert_eq!(r.trivial_coefficient(), 4096);

        // already inside K: q^r χ^λ
        let lambda = sp(3, "1..5", "1-2-4,2-1-5");
        let k = ns("1,2,4,5");
        let r = restrict(&lambda, &k, &ns("1..5")).unwrap();
        assert_eq!(r.to_string_map(), map(&[("1-2-4,2-1-5", 9)]));
    }

    #[test]
    fn tensor_examples() {
        let k = ns("1..4");
        let lambda = sp(3, "1..4", "1-1-3,2-2-4");
        let empty = sp(3, "1..4", "");
        assert_eq!(
            tensor(&lambda, &empty, &k).unwrap().to_string_map(),
            map(&[("1-1-3,2-2-4", 1)])
        );
        let conj = QSetPartition::new(conjugate(&lambda)).unwrap();
        let t = tensor(&lambda, &conj, &k).unwrap();
        assert_eq!(t.trivial_coefficient(), 3u128.pow(crossings(&lambda).len() as u32));

        let k1 = ns("1");
        let trivial = sp(2, "1", "");
        assert_eq!(
            tensor(&trivial, &trivial, &k1).unwrap().to_string_map(),
            map(&[("", 1)])
        );
    }

    #[test]
    fn degree_is_conserved_for_small_cases() {
        for qq in [2u32, 3] {
            let l = NodeSet::interval(1, 4);
            for lambda in enumerate_set_partitions(&l, q(qq), None, 10).unwrap() {
                let deg = (qq as Coefficient).pow(degree_exponent(&lambda, &l));
                for k in l.subsets() {
                    let r = restrict(&lambda, &k, &l).unwrap();
                    assert_eq!(r.total_degree().unwrap(), deg, "{lambda} to {k}");
                }
            }
        }
    }

    #[test]
    fn staged_and_unstaged_restriction_agree() {
        let l = NodeSet::interval(1, 5);
        for lambda in enumerate_set_partitions(&l, q(2), None, 10).unwrap() {
            for k in l.subsets() {
                assert_eq!(
                    restrict(&lambda, &k, &l).unwrap(),
                    restrict_unstaged(&lambda, &k, &l).unwrap(),
                    "{lambda} to {k}"
                );
            }
        }
    }

    #[test]
    fn transport_and_division() {
        let e = expand(&ms(2, "1..3", "1-1-3,1-1-3"), &ns("1..3")).unwrap();
        let moved = e.transport(&ns("2,5,7")).unwrap();
        assert_eq!(moved.coefficient_of_arcs(&[arc("2-1-5"), arc("5-1-7")]), 1);
        assert!(e.divide_exact(2).is_none());
        assert_eq!(e.divide_exact(1).unwrap(), e);
    }
}

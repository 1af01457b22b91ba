//! Supercharacter values on superclasses and pointwise verification of
//! decompositions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::combinatorics::{
    enumerate_set_partitions, Arc, ArcMultiset, NodeSet, QSetPartition, DEFAULT_ENUMERATION_GUARD,
};
use crate::cyclotomic::CyclotomicRational;
use crate::engine::CharacterCombination;
use crate::error::{Error, Result};

/// `± q^e ζ^x` or zero: every supercharacter value has this shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Monomial {
    Zero,
    Term { exponent: i32, zeta: u32 },
}

impl Monomial {
    const ONE: Monomial = Monomial::Term { exponent: 0, zeta: 0 };

    fn times(self, other: Monomial, q: u32) -> Monomial {
        match (self, other) {
            (Monomial::Term { exponent: e1, zeta: z1 }, Monomial::Term { exponent: e2, zeta: z2 }) => Monomial::Term {
                exponent: e1 + e2,
                zeta: (z1 + z2) % q,
            },
            _ => Monomial::Zero,
        }
    }

    fn to_cyclotomic(self, q: u32, coefficient: &BigInt) -> CyclotomicRational {
        match self {
            Monomial::Zero => CyclotomicRational::zero(q),
            Monomial::Term { exponent, zeta } => {
                let power = BigInt::from(q).pow(exponent.unsigned_abs());
                let c = if exponent >= 0 {
                    BigRational::from_integer(coefficient * power)
                } else {
                    BigRational::new(coefficient.clone(), power)
                };
                CyclotomicRational::monomial(q, c, zeta)
            }
        }
    }
}

fn require_in(arcs: &[Arc], s: &NodeSet) -> Result<()> {
    match arcs.iter().flat_map(|a| [a.left, a.right]).find(|&n| !s.contains(n)) {
        Some(n) => Err(Error::NodeOutsideSupport(n)),
        None => Ok(()),
    }
}

fn arc_monomial(arc: &Arc, mu: &[Arc], s: &NodeSet, q: u32) -> Monomial {
    let (i, l) = (arc.left, arc.right);
    let mut nested = 0i32;
    let mut weight = 0u32;
    for m in mu {
        if (m.left == i && m.right < l) || (m.left > i && m.right == l) {
            return Monomial::Zero;
        }
        if m.left == i && m.right == l {
            weight = (weight + m.label) % q;
        } else if i < m.left && m.right < l {
            nested += 1;
        }
    }
    Monomial::Term {
        exponent: s.count_between(i, l) as i32 - nested,
        zeta: (arc.label as u64 * weight as u64 % q as u64) as u32,
    }
}

fn char_monomial(lambda: &[Arc], mu: &[Arc], s: &NodeSet, q: u32) -> Monomial {
    lambda
        .iter()
        .fold(Monomial::ONE, |acc, a| acc.times(arc_monomial(a, mu, s, q), q))
}

/// `χ^{i-a-l}(μ)` for the supercharacter of `U_S`.
pub fn arc_value(arc: &Arc, mu: &QSetPartition, s: &NodeSet) -> Result<CyclotomicRational> {
    require_in(std::slice::from_ref(arc), s)?;
    require_in(mu.arcs(), s)?;
    let q = mu.q();
    Ok(arc_monomial(arc, mu.arcs(), s, q).to_cyclotomic(q, &BigInt::from(1)))
}

/// `χ^λ(μ)`, the product of the arc values.
pub fn char_value(lambda: &QSetPartition, mu: &QSetPartition, s: &NodeSet) -> Result<CyclotomicRational> {
    if lambda.modulus() != mu.modulus() {
        return Err(Error::ModulusMismatch(lambda.q(), mu.q()));
    }
    require_in(lambda.arcs(), s)?;
    require_in(mu.arcs(), s)?;
    let q = mu.q();
    Ok(char_monomial(lambda.arcs(), mu.arcs(), s, q).to_cyclotomic(q, &BigInt::from(1)))
}

/// The character a combination is claimed to decompose.
#[derive(Debug, Clone, Copy)]
pub enum Decomposed<'a> {
    /// `Res^{U_L}_{U_K} χ^λ`.
    Restriction { lambda: &'a QSetPartition, l: &'a NodeSet },
    /// `χ^λ ⊗ χ^μ` over the combination's node set.
    Tensor {
        lambda: &'a QSetPartition,
        mu: &'a QSetPartition,
    },
    /// `χ^λ = ⊗ χ^{arc}` for an arbitrary multiset over the node set.
    Multiset { lambda: &'a ArcMultiset },
}

/// Checks decompositions value by value on every superclass of `U_K(q)`.
/// Superclass labels are enumerated once per verifier.
#[derive(Debug)]
pub struct PointwiseVerifier {
    k: NodeSet,
    q: u32,
    superclasses: Vec<Vec<Arc>>,
    cache: HashMap<Vec<Arc>, Vec<Monomial>>,
}

impl PointwiseVerifier {
    pub fn new(k: &NodeSet, q: crate::field::PrimeModulus, guard: usize) -> Result<Self> {
        let superclasses = enumerate_set_partitions(k, q, None, guard)?
            .map(|p| p.arcs().to_vec())
            .collect();
        Ok(Self {
            k: k.clone(),
            q: q.get(),
            superclasses,
            cache: HashMap::new(),
        })
    }

    pub fn superclass_count(&self) -> usize {
        self.superclasses.len()
    }

    fn values_of(&mut self, sigma: &[Arc]) -> &[Monomial] {
        let (k, q, classes) = (&self.k, self.q, &self.superclasses);
        self.cache
            .entry(sigma.to_vec())
            .or_insert_with(|| classes.iter().map(|nu| char_monomial(sigma, nu, k, q)).collect())
    }

    /// `true` iff both sides agree on every superclass label in `S_K(q)`.
    pub fn verify(&mut self, lhs: Decomposed<'_>, comb: &CharacterCombination) -> Result<bool> {
        if comb.modulus().get() != self.q {
            return Err(Error::ModulusMismatch(self.q, comb.modulus().get()));
        }
        if comb.ambient() != &self.k {
            return Err(Error::Hypothesis(format!(
                "combination over {{{}}} checked against superclasses of {{{}}}",
                comb.ambient(),
                self.k
            )));
        }
        let q = self.q;
        let lhs_values: Vec<Monomial> = match lhs {
            Decomposed::Restriction { lambda, l } => {
                self.k.require_subset_of(l)?;
                require_in(lambda.arcs(), l)?;
                self.superclasses
                    .iter()
                    .map(|nu| char_monomial(lambda.arcs(), nu, l, q))
                    .collect()
            }
            Decomposed::Tensor { lambda, mu } => {
                require_in(lambda.arcs(), &self.k)?;
                require_in(mu.arcs(), &self.k)?;
                let a = self.values_of(lambda.arcs()).to_vec();
                let b = self.values_of(mu.arcs());
                a.iter().zip(b).map(|(x, y)| x.times(*y, q)).collect()
            }
            Decomposed::Multiset { lambda } => {
                require_in(lambda.arcs(), &self.k)?;
                self.values_of(lambda.arcs()).to_vec()
            }
        };
        let terms: Vec<(Vec<Arc>, BigInt)> = comb.iter().map(|(s, c)| (s.to_vec(), BigInt::from(c))).collect();
        for (n, lhs_value) in lhs_values.iter().enumerate() {
            let mut rhs = CyclotomicRational::zero(q);
            for (sigma, c) in &terms {
                let v = self.values_of(sigma)[n];
                if v != Monomial::Zero {
                    rhs = &rhs + &v.to_cyclotomic(q, c);
                }
            }
            if rhs != lhs_value.to_cyclotomic(q, &BigInt::from(1)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One-shot form of [`PointwiseVerifier::verify`].
pub fn verify_pointwise(lhs: Decomposed<'_>, comb: &CharacterCombination) -> Result<bool> {
    PointwiseVerifier::new(comb.ambient(), comb.modulus(), DEFAULT_ENUMERATION_GUARD)?.verify(lhs, comb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{expand, restrict, tensor};
    use crate::field::PrimeModulus;

    fn q(n: u32) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn sp(qq: u32, k: &str, arcs: &str) -> QSetPartition {
        QSetPartition::parse(q(qq), k.parse().unwrap(), arcs).unwrap()
    }

    #[test]
    fn arc_values() {
        let s: NodeSet = "1..4".parse().unwrap();
        let empty = sp(2, "1..4", "");
        assert_eq!(
            arc_value(&"1-1-4".parse().unwrap(), &empty, &s).unwrap(),
            CyclotomicRational::from_integer(2, 4)
        );
        let mu = sp(2, "1..4", "1-1-3");
        assert!(arc_value(&"1-1-4".parse().unwrap(), &mu, &s).unwrap().is_zero());
        let s2: NodeSet = "1..2".parse().unwrap();
        let v = arc_value(&"1-1-2".parse().unwrap(), &sp(2, "1..2", "1-1-2"), &s2).unwrap();
        assert_eq!(v, CyclotomicRational::from_integer(2, -1));
        let s3: NodeSet = "1..3".parse().unwrap();
        let v = char_value(&sp(2, "1..3", "1-1-3"), &sp(2, "1..3", "1-1-3"), &s3).unwrap();
        assert_eq!(v, CyclotomicRational::from_integer(2, -2));
        assert!(arc_value(&"1-1-5".parse().unwrap(), &empty, &s).is_err());
    }

    #[test]
    fn doubled_arc_expansion_verifies() {
        let k: NodeSet = "1..3".parse().unwrap();
        let lambda = sp(2, "1..3", "1-1-3");
        let comb = tensor(&lambda, &lambda, &k).unwrap();
        let mut verifier = PointwiseVerifier::new(&k, q(2), 10).unwrap();
        assert_eq!(verifier.superclass_count(), 5);
        assert!(verifier
            .verify(
                Decomposed::Tensor {
                    lambda: &lambda,
                    mu: &lambda
                },
                &comb
            )
            .unwrap());
        let doubled = ArcMultiset::parse(q(2), k.clone(), "1-1-3,1-1-3").unwrap();
        assert_eq!(comb, expand(&doubled, &k).unwrap());
        assert!(verifier
            .verify(Decomposed::Multiset { lambda: &doubled }, &comb)
            .unwrap());

        let mut bad = comb.to_string_map();
        *bad.get_mut("").unwrap() += 1;
        let corrupted = crate::engine::CharacterCombination::parse_map(q(2), k.clone(), &bad).unwrap();
        assert!(!verifier
            .verify(
                Decomposed::Tensor {
                    lambda: &lambda,
                    mu: &lambda
                },
                &corrupted
            )
            .unwrap());
    }

    #[test]
    fn restriction_of_contained_partition() {
        let l: NodeSet = "1..5".parse().unwrap();
        let k: NodeSet = "1,2,4,5".parse().unwrap();
        let lambda = sp(3, "1..5", "1-2-4,2-1-5");
        let comb = restrict(&lambda, &k, &l).unwrap();
        assert!(verify_pointwise(Decomposed::Restriction { lambda: &lambda, l: &l }, &comb).unwrap());
    }
}

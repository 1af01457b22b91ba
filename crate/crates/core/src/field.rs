//! Prime fields `F_q` realized as integers modulo a prime `q`.

use std::fmt;

use crate::error::{Error, Result};

/// A prime `q >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 || (2..q).take_while(|d| d * d <= q).any(|d| q.is_multiple_of(d)) {
            return Err(Error::NotPrime(q));
        }
        Ok(Self(q))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.0 - a % self.0) % self.0
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// The nonzero residues `1..q`, i.e. the possible arc labels.
    pub fn units(self) -> impl Iterator<Item = u32> + Clone {
        1..self.0
    }

    pub fn element(self, value: u32) -> FieldElement {
        FieldElement {
            value: value % self.0,
            modulus: self,
        }
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `F_q`, stored as its residue in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    modulus: PrimeModulus,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn checked_nonzero(self) -> Option<NonzeroFieldElement> {
        (self.value != 0).then_some(NonzeroFieldElement(self))
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        self.modulus.element(self.modulus.add(self.value, rhs.value))
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> Self {
        self.modulus.element(self.modulus.neg(self.value))
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        self.modulus.element(self.modulus.mul(self.value, rhs.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// An element of `F_q^×`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NonzeroFieldElement(FieldElement);

impl NonzeroFieldElement {
    pub fn new(modulus: PrimeModulus, value: u32) -> Result<Self> {
        modulus.element(value).checked_nonzero().ok_or(Error::BadLabel {
            label: value,
            q: modulus.get(),
        })
    }

    pub fn get(self) -> FieldElement {
        self.0
    }

    pub fn value(self) -> u32 {
        self.0.value
    }
}

//! Exact arithmetic in the cyclotomic field `Q(ζ_q)` for a prime `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::FieldElement;

/// `c_0 + c_1 ζ + … + c_{q-2} ζ^{q-2}` in the power basis, with `ζ` a fixed
/// primitive q-th root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicRational {
    q: u32,
    coeffs: Vec<BigRational>,
}

impl CyclotomicRational {
    pub fn zero(q: u32) -> Self {
        assert!(q >= 2);
        Self {
            q,
            coeffs: vec![BigRational::zero(); q as usize - 1],
        }
    }

    pub fn one(q: u32) -> Self {
        Self::from_rational(q, BigRational::one())
    }

    pub fn from_rational(q: u32, value: BigRational) -> Self {
        let mut z = Self::zero(q);
        z.coeffs[0] = value;
        z
    }

    pub fn from_integer(q: u32, value: impl Into<BigInt>) -> Self {
        Self::from_rational(q, BigRational::from_integer(value.into()))
    }

    /// `c · ζ^k`.
    pub fn monomial(q: u32, c: BigRational, k: u32) -> Self {
        let mut full = vec![BigRational::zero(); q as usize];
        full[(k % q) as usize] = c;
        Self::reduce(q, full)
    }

    pub fn zeta_power(q: u32, k: u32) -> Self {
        Self::monomial(q, BigRational::one(), k)
    }

    /// Reduces a length-`q` vector modulo `1 + ζ + … + ζ^{q-1}`.
    fn reduce(q: u32, mut full: Vec<BigRational>) -> Self {
        debug_assert_eq!(full.len(), q as usize);
        let top = full.pop().expect("q >= 2");
        if !top.is_zero() {
            for c in &mut full {
                *c -= &top;
            }
        }
        Self { q, coeffs: full }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value when this lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            q: self.q,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn div_rational(&self, c: &BigRational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Hypothesis("division by zero".into()));
        }
        Ok(self.scale(&c.recip()))
    }

    /// Image under `ζ ↦ ζ^{-1}`, i.e. complex conjugation.
    pub fn conjugate(&self) -> Self {
        let q = self.q as usize;
        let mut full = vec![BigRational::zero(); q];
        for (k, c) in self.coeffs.iter().enumerate() {
            full[(q - k) % q] += c;
        }
        Self::reduce(self.q, full)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.q, other.q, "cyclotomic fields of different order");
    }
}

impl Add for &CyclotomicRational {
    type Output = CyclotomicRational;

    fn add(self, rhs: Self) -> CyclotomicRational {
        self.check(rhs);
        CyclotomicRational {
            q: self.q,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicRational {
    type Output = CyclotomicRational;

    fn sub(self, rhs: Self) -> CyclotomicRational {
        self.check(rhs);
        CyclotomicRational {
            q: self.q,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CyclotomicRational {
    type Output = CyclotomicRational;

    fn neg(self) -> CyclotomicRational {
        CyclotomicRational {
            q: self.q,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CyclotomicRational {
    type Output = CyclotomicRational;

    fn mul(self, rhs: Self) -> CyclotomicRational {
        self.check(rhs);
        let q = self.q as usize;
        let mut full = vec![BigRational::zero(); q];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % q] += a * b;
                }
            }
        }
        CyclotomicRational::reduce(self.q, full)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CyclotomicRational {
            type Output = CyclotomicRational;
            fn $m(self, rhs: Self) -> CyclotomicRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for CyclotomicRational {
    type Output = CyclotomicRational;

    fn neg(self) -> CyclotomicRational {
        -&self
    }
}

/// `(c0, c1, …, c_{q-2})`.
impl fmt::Display for CyclotomicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `ϑ(x) = ζ^x`.
pub fn theta(x: FieldElement) -> CyclotomicRational {
    CyclotomicRational::zeta_power(x.modulus().get(), x.value())
}

//! Integer vectors and linear forms on `Z^n`, with exact arithmetic.

use std::fmt;

use num::bigint::BigInt;
use num::{Integer, Signed, Zero};

use crate::error::{Error, Result};

/// An element of the rank-`n` lattice `Z^n`, written in a fixed basis.
///
/// All coordinates are arbitrary-precision integers; nothing in the crate
/// ever rounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        IntVector(vec![BigInt::zero(); rank])
    }

    /// Standard basis vector `e_i`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::from(1);
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// True when every coordinate is even (the mod-2 reduction vanishes).
    pub fn is_even(&self) -> bool {
        self.0.iter().all(|c| c.is_even())
    }

    pub fn add(&self, other: &IntVector) -> Result<IntVector> {
        check_rank(self.rank(), other.rank())?;
        Ok(IntVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &IntVector) -> Result<IntVector> {
        check_rank(self.rank(), other.rank())?;
        Ok(IntVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|c| c * s).collect())
    }

    /// gcd of the coordinates; 0 for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == BigInt::from(1)
    }

    /// Divide out the content, leaving the zero vector untouched.
    pub fn primitive_part(&self) -> IntVector {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        IntVector(self.0.iter().map(|c| c / &g).collect())
    }

    /// Sign-normalize so the first nonzero coordinate is positive.
    pub fn normalize_sign(&self) -> IntVector {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An integral linear form on `Z^n`; its value on a vector is the dot
/// product with the stored coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm(Vec<BigInt>);

impl LinearForm {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        LinearForm(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        LinearForm(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LinearForm(vec![BigInt::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, w: &IntVector) -> Result<BigInt> {
        check_rank(self.rank(), w.rank())?;
        Ok(self
            .0
            .iter()
            .zip(w.coords())
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn add(&self, other: &LinearForm) -> Result<LinearForm> {
        check_rank(self.rank(), other.rank())?;
        Ok(LinearForm(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &BigInt) -> LinearForm {
        LinearForm(self.0.iter().map(|c| c * s).collect())
    }

    /// gcd of the coefficients; 0 for the zero form.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == BigInt::from(1)
    }

    pub fn primitive_part(&self) -> LinearForm {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        LinearForm(self.0.iter().map(|c| c / &g).collect())
    }

    pub fn normalize_sign(&self) -> LinearForm {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Coefficient-wise congruence, used by the mod-48 homotopy rule.
    pub fn congruent_mod(&self, other: &LinearForm, modulus: u64) -> Result<bool> {
        check_rank(self.rank(), other.rank())?;
        let m = BigInt::from(modulus);
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| ((a - b) % &m).is_zero()))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

//! Exact scalar fields.
//!
//! Every matrix in the crate is generic over a [`Field`]. Three fields are
//! provided: arbitrary-precision rationals [`Q`], Gaussian rationals [`QI`]
//! and prime fields [`Fp`] with a compile-time modulus.

mod gaussian;
mod prime;
mod rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde_json::Value;

use crate::error::Result;

pub use gaussian::QI;
pub use prime::{with_prime, Fp, SUPPORTED_PRIMES};
pub use rational::Q;

/// A commutative field with exact, decidable equality.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Field tag used in file headers: `Q`, `Q(i)` or `Fp:<p>`.
    fn tag() -> String;

    /// Draw a random element. For rationals `height` bounds numerator and
    /// denominator; prime fields ignore it and sample uniformly.
    fn sample<R: Rng + ?Sized>(rng: &mut R, height: u32) -> Self;

    fn to_json(&self) -> Value;
    fn from_json(value: &Value) -> Result<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.clone() * inv)
    }

    /// `self^e` for possibly negative `e`; `None` when inverting zero.
    fn pow_i64(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        Some(acc)
    }
}

/// Fields with a conjugation, needed for adjoints and the real moment map.
pub trait Conjugate: Field {
    fn conj(&self) -> Self;
    /// The imaginary unit.
    fn imag_unit() -> Self;
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde_json::Value;

use super::Field;
use crate::error::{Error, Result};

/// Residue modulo the prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

/// Moduli reachable from runtime values through [`with_prime!`].
pub const SUPPORTED_PRIMES: &[u64] = &[
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 65521, 2147483647,
];

/// Dispatch a runtime prime to a block generic over the const modulus.
///
/// ```
/// use quiverlab::field::{Field, Fp};
/// use quiverlab::with_prime;
/// let tag: quiverlab::Result<String> = with_prime!(7, P => Ok(Fp::<P>::tag()));
/// assert_eq!(tag.unwrap(), "Fp:7");
/// ```
#[macro_export]
macro_rules! with_prime {
    ($p:expr, $P:ident => $body:expr) => {
        $crate::__with_prime_arms!($p, $P, $body;
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
            83, 89, 97, 101, 65521, 2147483647)
    };
}

#[doc(hidden)]
#[macro_export]
macro_rules! __with_prime_arms {
    ($p:expr, $P:ident, $body:expr; $($value:literal),*) => {
        match $p {
            $(
                $value => {
                    const $P: u64 = $value;
                    $body
                }
            )*
            other => Err($crate::Error::UnsupportedPrime(other)),
        }
    };
}

pub use crate::with_prime;

impl<const P: u64> Fp<P> {
    pub fn new(value: i64) -> Self {
        Fp(value.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub const fn modulus() -> u64 {
        P
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1 % P)
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn tag() -> String {
        format!("Fp:{P}")
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, _height: u32) -> Self {
        Fp(rng.gen_range(0..P))
    }

    fn to_json(&self) -> Value {
        Value::from(self.0)
    }

    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Number(n) => n
                .as_i64()
                .map(Fp::new)
                .ok_or_else(|| Error::Parse(format!("invalid residue {n}"))),
            Value::String(s) => s
                .trim()
                .parse::<i64>()
                .map(Fp::new)
                .map_err(|_| Error::Parse(format!("invalid residue {s:?}"))),
            other => Err(Error::Parse(format!("expected integer residue, got {other}"))),
        }
    }
}

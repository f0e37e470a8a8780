use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde_json::Value;

use super::{Conjugate, Field, Q};
use crate::error::{Error, Result};

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QI {
    pub re: Q,
    pub im: Q,
}

impl QI {
    pub fn new(re: Q, im: Q) -> Self {
        QI { re, im }
    }

    pub fn real(re: Q) -> Self {
        QI { re, im: Q::zero() }
    }

    pub fn norm(&self) -> Q {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
}

impl From<Q> for QI {
    fn from(re: Q) -> Self {
        QI::real(re)
    }
}

impl fmt::Display for QI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for QI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for QI {
    type Output = QI;
    fn add(self, rhs: QI) -> QI {
        QI::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for QI {
    type Output = QI;
    fn sub(self, rhs: QI) -> QI {
        QI::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for QI {
    type Output = QI;
    fn mul(self, rhs: QI) -> QI {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        QI::new(re, im)
    }
}

impl Neg for QI {
    type Output = QI;
    fn neg(self) -> QI {
        QI::new(-self.re, -self.im)
    }
}

impl Field for QI {
    fn zero() -> Self {
        QI::new(Q::zero(), Q::zero())
    }

    fn one() -> Self {
        QI::new(Q::one(), Q::zero())
    }

    fn from_i64(n: i64) -> Self {
        QI::real(Q::from(n))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        Some(QI::new(self.re.clone() * n.clone(), -(self.im.clone() * n)))
    }

    fn tag() -> String {
        "Q(i)".to_string()
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, height: u32) -> Self {
        QI::new(Q::sample(rng, height), Q::sample(rng, height))
    }

    fn to_json(&self) -> Value {
        Value::Array(vec![self.re.to_json(), self.im.to_json()])
    }

    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Array(parts) if parts.len() == 2 => {
                Ok(QI::new(Q::from_json(&parts[0])?, Q::from_json(&parts[1])?))
            }
            // a bare rational is accepted as a real number
            Value::String(_) | Value::Number(_) => Ok(QI::real(Q::from_json(value)?)),
            other => Err(Error::Parse(format!("expected [re, im] pair, got {other}"))),
        }
    }
}

impl Conjugate for QI {
    fn conj(&self) -> Self {
        QI::new(self.re.clone(), -self.im.clone())
    }

    fn imag_unit() -> Self {
        QI::new(Q::zero(), Q::one())
    }
}

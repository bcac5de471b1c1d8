//! Runtime-tagged scalars.
//!
//! [`Scalar`] carries its [`FieldSpec`] with it. It is the interchange type for
//! files and the command line; computation happens on the statically typed
//! [`Field`](super::Field) implementations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::field::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {input:?} as an element of {field}: {reason}")]
    Parse {
        input: String,
        field: FieldSpec,
        reason: String,
    },
    #[error("unknown field {0:?} (expected F<p> or Q)")]
    UnknownField(String),
}

/// Which ground field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    /// Checked constructor for a prime field.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) && p < (1 << 32) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ScalarError;

    /// Accepts `Q`, `F<p>` and `GF(<p>)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix('F')
            .or_else(|| t.strip_prefix('f'))
            .or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => FieldSpec::prime(p),
            None => Err(ScalarError::UnknownField(s.to_string())),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ScalarValue {
    Residue(u64),
    Fraction(BigRational),
}

/// A field element in canonical form, tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    value: ScalarValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub(crate) fn from_parts(field: FieldSpec, value: ScalarValue) -> Self {
        Scalar { field, value }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn value(&self) -> &ScalarValue {
        &self.value
    }

    pub fn from_i64(field: FieldSpec, n: i64) -> Self {
        let value = match field {
            FieldSpec::Prime(p) => ScalarValue::Residue(n.rem_euclid(p as i64) as u64),
            FieldSpec::Rationals => ScalarValue::Fraction(BigRational::from_integer(BigInt::from(n))),
        };
        Scalar { field, value }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            ScalarValue::Residue(r) => *r == 0,
            ScalarValue::Fraction(q) => q.is_zero(),
        }
    }

    /// Nonzero field elements are exactly the units.
    pub fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    /// Parses `"3"`, `"-1/3"`; for prime fields fractions are reduced modulo p.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Self, ScalarError> {
        let err = |reason: &str| ScalarError::Parse {
            input: text.to_string(),
            field,
            reason: reason.to_string(),
        };
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
        let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        match field {
            FieldSpec::Rationals => Ok(Scalar {
                field,
                value: ScalarValue::Fraction(BigRational::new(num, den)),
            }),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    u64::try_from(r).expect("residue fits in u64")
                };
                let n = Scalar::from_parts(field, ScalarValue::Residue(reduce(&num)));
                let d = Scalar::from_parts(field, ScalarValue::Residue(reduce(&den)));
                n.div(&d).map_err(|_| err("denominator vanishes modulo p"))
            }
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch {
                left: self.field,
                right: other.field,
            })
        }
    }

    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
        self.check_same(other)?;
        let value = match (&self.value, &other.value, self.field) {
            (ScalarValue::Residue(a), ScalarValue::Residue(b), FieldSpec::Prime(p)) => {
                let (a, b, p) = (*a as u128, *b as u128, p as u128);
                ScalarValue::Residue(match op {
                    ArithOp::Add => (a + b) % p,
                    ArithOp::Sub => (a + p - b) % p,
                    ArithOp::Mul => (a * b) % p,
                    ArithOp::Div => {
                        if b == 0 {
                            return Err(ScalarError::DivisionByZero);
                        }
                        (a * mod_pow(b, p - 2, p)) % p
                    }
                } as u64)
            }
            (ScalarValue::Fraction(a), ScalarValue::Fraction(b), FieldSpec::Rationals) => {
                ScalarValue::Fraction(match op {
                    ArithOp::Add => a + b,
                    ArithOp::Sub => a - b,
                    ArithOp::Mul => a * b,
                    ArithOp::Div => {
                        if b.is_zero() {
                            return Err(ScalarError::DivisionByZero);
                        }
                        a / b
                    }
                })
            }
            _ => unreachable!("value representation always matches its field tag"),
        };
        Ok(Scalar {
            field: self.field,
            value,
        })
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.arith(other, ArithOp::Add)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.arith(other, ArithOp::Mul)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.arith(other, ArithOp::Div)
    }

    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        Scalar::one(self.field).div(self)
    }

    pub fn neg(&self) -> Scalar {
        Scalar::zero(self.field).sub(self).expect("same field")
    }
}

fn mod_pow(mut base: u128, mut exp: u128, p: u128) -> u128 {
    let mut acc = 1u128;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ScalarValue::Residue(r) => write!(f, "{r}"),
            ScalarValue::Fraction(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            ScalarValue::Fraction(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

//! Exact coefficient fields.
//!
//! Every algebraic structure in this crate is generic over a [`Field`]. Two
//! families implement it: prime fields [`Fp<P>`] with the modulus fixed at the
//! type level, and the rationals as [`BigRational`]. Both are exact.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{FieldSpec, Scalar, ScalarError, ScalarValue};

/// An exact commutative field.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Runtime description of this field.
    fn spec() -> FieldSpec;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Image of an integer under the canonical ring map `Z -> K`.
    fn from_i64(n: i64) -> Self;

    /// All elements, when the field is finite.
    fn elements() -> Option<Vec<Self>>;

    fn to_scalar(&self) -> Scalar;

    fn from_scalar(s: &Scalar) -> Result<Self, ScalarError>;

    /// The nonzero elements, when the field is finite.
    fn units() -> Option<Vec<Self>> {
        Self::elements().map(|all| all.into_iter().filter(|x| !x.is_zero()).collect())
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn parse(text: &str) -> Result<Self, ScalarError> {
        Self::from_scalar(&Scalar::parse(Self::spec(), text)?)
    }

    /// Integer power; negative exponents need a unit.
    fn pow_i(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            sq = sq.clone() * sq;
            e >>= 1;
        }
        Some(acc)
    }

    fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.clone() * inv)
    }
}

pub(crate) const fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `Z/PZ`, stored as a residue in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const MODULUS_IS_PRIME: () = assert!(is_prime(P) && P < (1 << 32), "Fp modulus must be a prime below 2^32");

    pub fn new(value: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::MODULUS_IS_PRIME;
        Fp(value.rem_euclid(P as i64) as u64)
    }

    pub fn residue(self) -> u64 {
        self.0
    }

    pub const fn modulus() -> u64 {
        P
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
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
    fn spec() -> FieldSpec {
        FieldSpec::Prime(P)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2) = a^-1
        self.pow_i(P as i64 - 2)
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P as i64).map(Fp::new).collect())
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::from_parts(FieldSpec::Prime(P), ScalarValue::Residue(self.0))
    }

    fn from_scalar(s: &Scalar) -> Result<Self, ScalarError> {
        match (s.field(), s.value()) {
            (FieldSpec::Prime(p), ScalarValue::Residue(r)) if *p == P => Ok(Fp::new(*r as i64)),
            (other, _) => Err(ScalarError::FieldMismatch {
                left: FieldSpec::Prime(P),
                right: *other,
            }),
        }
    }
}

impl Field for BigRational {
    fn spec() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::from_parts(FieldSpec::Rationals, ScalarValue::Fraction(self.clone()))
    }

    fn from_scalar(s: &Scalar) -> Result<Self, ScalarError> {
        match s.value() {
            ScalarValue::Fraction(q) => Ok(q.clone()),
            ScalarValue::Residue(_) => Err(ScalarError::FieldMismatch {
                left: FieldSpec::Rationals,
                right: *s.field(),
            }),
        }
    }
}

/// Small nonzero rationals `1, 2, ..., bound` used to sample the infinite unit
/// group of a characteristic-zero field.
pub fn sample_units<K: Field>(bound: u64) -> Vec<K> {
    let mut out: Vec<K> = Vec::new();
    for n in 1..=bound as i64 {
        let z = K::from_i64(n);
        if !z.is_zero() && !out.contains(&z) {
            out.push(z);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, F3, F5, Q};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Q {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn prime_field_basics() {
        assert_eq!(F3::new(2) + F3::new(2), F3::new(1));
        assert_eq!(F2::new(1) + F2::new(1), F2::zero());
        assert_eq!(F5::new(2).inverse(), Some(F5::new(3)));
        assert_eq!(F5::zero().inverse(), None);
        assert_eq!(F3::new(-1), F3::new(2));
    }

    #[test]
    fn rational_basics() {
        assert_eq!(q(1, 2) * q(1, 3), q(1, 6));
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(-1, 3).to_string(), "-1/3");
    }

    #[test]
    fn units_of_small_fields() {
        assert_eq!(F3::units().unwrap(), vec![F3::new(1), F3::new(2)]);
        assert_eq!(F2::units().unwrap(), vec![F2::new(1)]);
        assert!(Q::units().is_none());
    }

    #[test]
    fn negative_powers() {
        assert_eq!(F5::new(2).pow_i(-1), Some(F5::new(3)));
        assert_eq!(F5::new(2).pow_i(4), Some(F5::one()));
        assert_eq!(F5::zero().pow_i(-2), None);
        assert_eq!(q(2, 3).pow_i(-2), Some(q(9, 4)));
    }

    fn check_axioms<K: Field>(a: K, b: K, c: K) {
        assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        assert_eq!(a.clone() - a.clone(), K::zero());
        if let Some(inv) = a.inverse() {
            assert_eq!(a * inv, K::one());
        }
    }

    proptest! {
        #[test]
        fn field_axioms_f2(a in 0i64..2, b in 0i64..2, c in 0i64..2) {
            check_axioms(F2::new(a), F2::new(b), F2::new(c));
        }

        #[test]
        fn field_axioms_f5(a in -20i64..20, b in -20i64..20, c in -20i64..20) {
            check_axioms(F5::new(a), F5::new(b), F5::new(c));
        }

        #[test]
        fn field_axioms_q(a in -9i64..9, b in 1i64..9, c in -9i64..9, d in 1i64..9) {
            check_axioms(q(a, b), q(c, d), q(a + c, b * d));
        }
    }
}

//! Commutative test algebras `R` at which the group schemes are evaluated:
//! the ground field itself, the cyclic group algebras `K[x]/(x^n - 1)`, and the
//! Laurent algebra `K[x, x^-1]` representing `GL_1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::field::Field;
use super::scalar::{Scalar, ScalarError};
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: TestAlgebra, right: TestAlgebra },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("the unit group of {0} over this field is infinite")]
    InfiniteUnitGroup(TestAlgebra),
    #[error("enumeration would visit {needed} elements, above the bound {bound}")]
    BoundExceeded { needed: u128, bound: u64 },
    #[error("cyclic group algebra needs order n >= 1")]
    InvalidOrder,
    #[error("exponent {0} has no meaning in the base field")]
    NoGenerator(i64),
    #[error("{0} is not a valid image for a homomorphism out of {1}")]
    NotAHomomorphism(String, TestAlgebra),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which commutative algebra `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TestAlgebra {
    /// `R = K`.
    Base,
    /// `R = K[x]/(x^n - 1)`, the group algebra of `Z_n`.
    Cyclic(u64),
    /// `R = K[x, x^-1]`, the group algebra of `Z`.
    Laurent,
}

impl TestAlgebra {
    pub fn cyclic(n: u64) -> Result<Self, AlgebraError> {
        if n == 0 {
            Err(AlgebraError::InvalidOrder)
        } else {
            Ok(TestAlgebra::Cyclic(n))
        }
    }

    fn reduce_exponent(&self, e: i64) -> Result<i64, AlgebraError> {
        match self {
            TestAlgebra::Base if e == 0 => Ok(0),
            TestAlgebra::Base => Err(AlgebraError::NoGenerator(e)),
            TestAlgebra::Cyclic(n) => Ok(e.rem_euclid(*n as i64)),
            TestAlgebra::Laurent => Ok(e),
        }
    }
}

impl fmt::Display for TestAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestAlgebra::Base => write!(f, "K"),
            TestAlgebra::Cyclic(n) => write!(f, "K[x]/(x^{n}-1)"),
            TestAlgebra::Laurent => write!(f, "K[x,x^-1]"),
        }
    }
}

/// A sparse element `sum c_k x^k` of a [`TestAlgebra`]. Zero coefficients are
/// never stored and cyclic exponents live in `[0, n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TestAlgebraElement<K> {
    algebra: TestAlgebra,
    coeffs: BTreeMap<i64, K>,
}

impl<K: Field> fmt::Debug for TestAlgebraElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.algebra)
    }
}

impl<K: Field> fmt::Display for TestAlgebraElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (*e, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}x")?,
                (e, true) => write!(f, "x^{e}")?,
                (e, false) => write!(f, "{c}x^{e}")?,
            }
        }
        Ok(())
    }
}

impl<K: Field> TestAlgebraElement<K> {
    pub fn zero(algebra: TestAlgebra) -> Self {
        TestAlgebraElement {
            algebra,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(algebra: TestAlgebra, c: K) -> Self {
        let mut out = Self::zero(algebra);
        out.accumulate(0, c);
        out
    }

    pub fn one(algebra: TestAlgebra) -> Self {
        Self::constant(algebra, K::one())
    }

    /// `c x^e`; fails in the base field unless `e = 0`.
    pub fn monomial(algebra: TestAlgebra, c: K, e: i64) -> Result<Self, AlgebraError> {
        let e = algebra.reduce_exponent(e)?;
        let mut out = Self::zero(algebra);
        out.accumulate(e, c);
        Ok(out)
    }

    /// The generator `x` (the universal unit for the Laurent algebra).
    pub fn x(algebra: TestAlgebra) -> Result<Self, AlgebraError> {
        Self::monomial(algebra, K::one(), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, K)>>(algebra: TestAlgebra, terms: I) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(algebra);
        for (e, c) in terms {
            let e = algebra.reduce_exponent(e)?;
            out.accumulate(e, c);
        }
        Ok(out)
    }

    fn accumulate(&mut self, e: i64, c: K) {
        if c.is_zero() {
            return;
        }
        let e = self.algebra.reduce_exponent(e).expect("exponent already valid");
        match self.coeffs.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.coeffs.insert(e, s);
                }
            }
            None => {
                self.coeffs.insert(e, c);
            }
        }
    }

    pub fn algebra(&self) -> TestAlgebra {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(K::is_one)
    }

    pub fn coeff(&self, e: i64) -> K {
        match self.algebra.reduce_exponent(e) {
            Ok(e) => self.coeffs.get(&e).cloned().unwrap_or_else(K::zero),
            Err(_) => K::zero(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &K)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn support(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }

    fn same_algebra(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch {
                left: self.algebra,
                right: other.algebra,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.accumulate(e, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_algebra(other)?;
        let mut out = Self::zero(self.algebra);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.accumulate(a + b, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero(self.algebra);
        for (e, x) in self.terms() {
            out.accumulate(e, x.clone() * c.clone());
        }
        out
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, exp: i64) -> Result<Self, AlgebraError> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.algebra);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            sq = sq.try_mul(&sq)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Matrix of multiplication by `self` on the basis `1, x, ..., x^{n-1}` of
    /// `K[x]/(x^n - 1)`.
    fn cyclic_multiplication_matrix(&self, n: u64) -> Matrix<K> {
        let n = n as usize;
        let mut m = Matrix::<K>::zeros(n, n);
        for j in 0..n {
            for (e, c) in self.terms() {
                let i = (e as usize + j) % n;
                let cur = m.get(i, j).clone();
                m.set(i, j, cur + c.clone());
            }
        }
        m
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_ok()
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        match self.algebra {
            TestAlgebra::Base => {
                let inv = self.coeff(0).inverse().ok_or(AlgebraError::NotAUnit)?;
                Ok(Self::constant(TestAlgebra::Base, inv))
            }
            TestAlgebra::Laurent => {
                // The units of K[x, x^-1] are exactly the nonzero monomials.
                if self.coeffs.len() != 1 {
                    return Err(AlgebraError::NotAUnit);
                }
                let (e, c) = self.coeffs.iter().next().expect("one term");
                let inv = c.inverse().ok_or(AlgebraError::NotAUnit)?;
                Self::monomial(TestAlgebra::Laurent, inv, -e)
            }
            TestAlgebra::Cyclic(n) => {
                let m = self.cyclic_multiplication_matrix(n);
                let mut rhs = vec![K::zero(); n as usize];
                rhs[0] = K::one();
                let inv = m.inverse().ok_or(AlgebraError::NotAUnit)?;
                let b = inv.mul_vec(&rhs);
                Self::from_terms(self.algebra, b.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
            }
        }
    }

    /// Image under the algebra map out of `K Lambda` sending `x` to `z`. The
    /// source must be a group algebra (Laurent or cyclic); for `Z_n` the image
    /// must satisfy `z^n = 1`.
    pub fn evaluate_at(&self, z: &TestAlgebraElement<K>) -> Result<TestAlgebraElement<K>, AlgebraError> {
        let target = z.algebra;
        match self.algebra {
            TestAlgebra::Base => Ok(Self::constant(target, self.coeff(0))),
            TestAlgebra::Laurent => {
                if !z.is_unit() {
                    return Err(AlgebraError::NotAHomomorphism(z.to_string(), self.algebra));
                }
                let mut out = Self::zero(target);
                for (e, c) in self.terms() {
                    out = out.try_add(&z.pow(e)?.scale(c))?;
                }
                Ok(out)
            }
            TestAlgebra::Cyclic(n) => {
                if !z.pow(n as i64)?.is_one() {
                    return Err(AlgebraError::NotAHomomorphism(z.to_string(), self.algebra));
                }
                let mut out = Self::zero(target);
                for (e, c) in self.terms() {
                    out = out.try_add(&z.pow(e)?.scale(c))?;
                }
                Ok(out)
            }
        }
    }

    /// Sparse `exponent -> coefficient` map for reports.
    pub fn to_json(&self) -> TestAlgebraElementJson {
        TestAlgebraElementJson(self.terms().map(|(e, c)| (e.to_string(), c.to_scalar().to_string())).collect())
    }

    pub fn from_json(algebra: TestAlgebra, json: &TestAlgebraElementJson) -> Result<Self, AlgebraError> {
        let mut terms = Vec::new();
        for (e, c) in &json.0 {
            let e: i64 = e.trim().parse().map_err(|_| {
                AlgebraError::Scalar(ScalarError::Parse {
                    input: e.clone(),
                    field: K::spec(),
                    reason: "exponent is not an integer".into(),
                })
            })?;
            terms.push((e, K::from_scalar(&Scalar::parse(K::spec(), c)?)?));
        }
        Self::from_terms(algebra, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TestAlgebraElementJson(pub BTreeMap<String, String>);

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<K: Field> $tr for &TestAlgebraElement<K> {
            type Output = TestAlgebraElement<K>;

            /// Panics when the operands live in different algebras.
            fn $method(self, rhs: Self) -> TestAlgebraElement<K> {
                let f: fn(&TestAlgebraElement<K>, &TestAlgebraElement<K>) -> Result<TestAlgebraElement<K>, AlgebraError> = $body;
                f(self, rhs).expect("operands in the same test algebra")
            }
        }

        impl<K: Field> $tr for TestAlgebraElement<K> {
            type Output = TestAlgebraElement<K>;

            fn $method(self, rhs: Self) -> TestAlgebraElement<K> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.try_add(b));
forward_binop!(Mul, mul, |a, b| a.try_mul(b));
forward_binop!(Sub, sub, |a, b| a.try_add(&b.scale(&-K::one())));

impl<K: Field> Neg for &TestAlgebraElement<K> {
    type Output = TestAlgebraElement<K>;

    fn neg(self) -> TestAlgebraElement<K> {
        self.scale(&-K::one())
    }
}

/// Every unit of `r`, provided the unit group is finite and the enumeration
/// visits at most `bound` elements.
pub fn enumerate_units<K: Field>(r: TestAlgebra, bound: u64) -> Result<Vec<TestAlgebraElement<K>>, AlgebraError> {
    let field_elems = K::elements().ok_or(AlgebraError::InfiniteUnitGroup(r))?;
    match r {
        TestAlgebra::Laurent => Err(AlgebraError::InfiniteUnitGroup(r)),
        TestAlgebra::Base => {
            let units: Vec<_> = field_elems
                .into_iter()
                .filter(|c| !c.is_zero())
                .map(|c| TestAlgebraElement::constant(r, c))
                .collect();
            if units.len() as u64 > bound {
                return Err(AlgebraError::BoundExceeded {
                    needed: units.len() as u128,
                    bound,
                });
            }
            Ok(units)
        }
        TestAlgebra::Cyclic(n) => {
            let q = field_elems.len() as u128;
            let total = q.checked_pow(n as u32).unwrap_or(u128::MAX);
            if total > bound as u128 {
                return Err(AlgebraError::BoundExceeded { needed: total, bound });
            }
            let mut units = Vec::new();
            let mut digits = vec![0usize; n as usize];
            for _ in 0..total {
                let elem = TestAlgebraElement::from_terms(r, digits.iter().enumerate().map(|(i, &d)| (i as i64, field_elems[d].clone())))?;
                if elem.is_unit() {
                    units.push(elem);
                }
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < field_elems.len() {
                        break;
                    }
                    *d = 0;
                }
            }
            Ok(units)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::{F2, F3, F5, Q};
    use proptest::prelude::*;

    fn lq(terms: &[(i64, i64)]) -> TestAlgebraElement<Q> {
        TestAlgebraElement::from_terms(TestAlgebra::Laurent, terms.iter().map(|&(e, c)| (e, Q::from_i64(c)))).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(lq(&[(2, 1)]) * lq(&[(3, 1)]), lq(&[(5, 1)]));
        let c3 = TestAlgebra::Cyclic(3);
        let x2: TestAlgebraElement<F3> = TestAlgebraElement::monomial(c3, F3::one(), 2).unwrap();
        assert_eq!(&x2 * &x2, TestAlgebraElement::x(c3).unwrap());
        assert_eq!(lq(&[(0, 1), (1, 1)]) * lq(&[(0, 1), (1, -1)]), lq(&[(0, 1), (2, -1)]));
    }

    #[test]
    fn mismatched_algebras() {
        let a = lq(&[(0, 1)]);
        let b = TestAlgebraElement::<Q>::one(TestAlgebra::Base);
        assert!(matches!(a.try_mul(&b), Err(AlgebraError::AlgebraMismatch { .. })));
    }

    #[test]
    fn laurent_units() {
        assert!(!lq(&[(0, 1), (1, 1)]).is_unit());
        let z = TestAlgebraElement::<F5>::monomial(TestAlgebra::Laurent, F5::new(2), -3).unwrap();
        assert_eq!(z.inverse().unwrap(), TestAlgebraElement::monomial(TestAlgebra::Laurent, F5::new(3), 3).unwrap());
    }

    #[test]
    fn nilpotent_is_not_a_unit_in_characteristic_two() {
        let r = TestAlgebra::Cyclic(2);
        let a = TestAlgebraElement::<F2>::from_terms(r, [(0, F2::one()), (1, F2::one())]).unwrap();
        assert!((&a * &a).is_zero());
        assert!(!a.is_unit());
        assert_eq!(a.inverse(), Err(AlgebraError::NotAUnit));
    }

    #[test]
    fn cyclic_inverse_over_q() {
        let r = TestAlgebra::Cyclic(3);
        // 2 + x is a unit of Q[x]/(x^3-1): it does not vanish at any cube root of 1.
        let a = TestAlgebraElement::<Q>::from_terms(r, [(0, Q::from_i64(2)), (1, Q::one())]).unwrap();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        // 1 - x vanishes at x = 1.
        let b = TestAlgebraElement::<Q>::from_terms(r, [(0, Q::one()), (1, -Q::one())]).unwrap();
        assert!(!b.is_unit());
    }

    #[test]
    fn unit_enumeration() {
        let u3 = enumerate_units::<F3>(TestAlgebra::Base, 100).unwrap();
        assert_eq!(u3, vec![TestAlgebraElement::constant(TestAlgebra::Base, F3::new(1)), TestAlgebraElement::constant(TestAlgebra::Base, F3::new(2))]);
        assert_eq!(enumerate_units::<F2>(TestAlgebra::Base, 100).unwrap().len(), 1);
        assert!(matches!(enumerate_units::<Q>(TestAlgebra::Base, 100), Err(AlgebraError::InfiniteUnitGroup(_))));
        assert!(matches!(enumerate_units::<F3>(TestAlgebra::Laurent, 100), Err(AlgebraError::InfiniteUnitGroup(_))));
        // F2[x]/(x^2-1) has units 1 and x only.
        assert_eq!(enumerate_units::<F2>(TestAlgebra::Cyclic(2), 100).unwrap().len(), 2);
        // F3[x]/(x^2-1) = F3 x F3 has 4 units.
        assert_eq!(enumerate_units::<F3>(TestAlgebra::Cyclic(2), 100).unwrap().len(), 4);
        assert!(matches!(enumerate_units::<F3>(TestAlgebra::Cyclic(4), 10), Err(AlgebraError::BoundExceeded { .. })));
    }

    #[test]
    fn evaluation_homomorphism() {
        let p = lq(&[(-1, 2), (0, 1), (2, 3)]);
        let c = TestAlgebra::Cyclic(2);
        let xbar = TestAlgebraElement::<Q>::x(c).unwrap();
        // x^-1 -> x, x^2 -> 1 in Q[x]/(x^2-1)
        let img = p.evaluate_at(&xbar).unwrap();
        assert_eq!(img, TestAlgebraElement::from_terms(c, [(0, Q::from_i64(4)), (1, Q::from_i64(2))]).unwrap());
        assert!(p.evaluate_at(&lq(&[(0, 1), (1, 1)])).is_err());
    }

    fn laurent_f5() -> impl Strategy<Value = TestAlgebraElement<F5>> {
        prop::collection::vec((-3i64..4, 0i64..5), 0..4)
            .prop_map(|ts| TestAlgebraElement::from_terms(TestAlgebra::Laurent, ts.into_iter().map(|(e, c)| (e, F5::new(c)))).unwrap())
    }

    fn cyclic_q() -> impl Strategy<Value = TestAlgebraElement<Q>> {
        prop::collection::vec((0i64..4, -3i64..4), 0..4)
            .prop_map(|ts| TestAlgebraElement::from_terms(TestAlgebra::Cyclic(4), ts.into_iter().map(|(e, c)| (e, Q::from_i64(c)))).unwrap())
    }

    proptest! {
        #[test]
        fn laurent_ring_laws(a in laurent_f5(), b in laurent_f5(), c in laurent_f5()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &TestAlgebraElement::one(TestAlgebra::Laurent), a.clone());
        }

        #[test]
        fn laurent_units_are_monomials(a in laurent_f5()) {
            prop_assert_eq!(a.is_unit(), a.terms().count() == 1);
            if let Ok(inv) = a.inverse() {
                prop_assert!((&a * &inv).is_one());
            }
        }

        #[test]
        fn cyclic_ring_laws(a in cyclic_q(), b in cyclic_q(), c in cyclic_q()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if let Ok(inv) = a.inverse() {
                prop_assert!((&a * &inv).is_one());
            }
        }
    }
}

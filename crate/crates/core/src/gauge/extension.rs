use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::GaugeError;
use crate::graph::Graph;
use crate::lpa::{LpaElement, Monomial};
use crate::scalars::{Field, TestAlgebra, TestAlgebraElement};

/// An element of `V (x) R` for a vector space `V` with basis indexed by `T`:
/// a finite map from basis vectors to nonzero coefficients in `R`.
#[derive(Clone, PartialEq, Eq)]
pub struct Extension<T, K> {
    algebra: TestAlgebra,
    terms: BTreeMap<T, TestAlgebraElement<K>>,
}

/// `L_K(E) (x) R`, indexed by normal monomials.
pub type LpaTensor<K> = Extension<Monomial, K>;

impl<T: fmt::Debug, K: Field> fmt::Debug for Extension<T, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(t, r)| (t, r.to_string())))
            .finish()
    }
}

impl<T: Ord + Clone, K: Field> Extension<T, K> {
    pub fn zero(algebra: TestAlgebra) -> Self {
        Extension {
            algebra,
            terms: BTreeMap::new(),
        }
    }

    /// `sum c_t t (x) 1`.
    pub fn from_scalars<I: IntoIterator<Item = (T, K)>>(algebra: TestAlgebra, terms: I) -> Self {
        let mut out = Self::zero(algebra);
        for (t, c) in terms {
            out.add_term(t, TestAlgebraElement::constant(algebra, c));
        }
        out
    }

    pub fn algebra(&self) -> TestAlgebra {
        self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&T, &TestAlgebraElement<K>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &T) -> TestAlgebraElement<K> {
        self.terms.get(t).cloned().unwrap_or_else(|| TestAlgebraElement::zero(self.algebra))
    }

    /// Adds `t (x) r`.
    pub fn add_term(&mut self, t: T, r: TestAlgebraElement<K>) {
        assert_eq!(r.algebra(), self.algebra, "coefficient from another test algebra");
        if r.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&t) {
            Some(old) => &old + &r,
            None => r,
        };
        if !sum.is_zero() {
            self.terms.insert(t, sum);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, GaugeError> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (t, r) in other.terms() {
            out.add_term(t.clone(), r.clone());
        }
        Ok(out)
    }

    /// `r * self` for `r` in the test algebra.
    pub fn scale(&self, r: &TestAlgebraElement<K>) -> Result<Self, GaugeError> {
        let mut out = Self::zero(self.algebra);
        for (t, c) in self.terms() {
            out.add_term(t.clone(), c.try_mul(r)?);
        }
        Ok(out)
    }

    /// Multiplies the coefficient of each `t` by `f(t)`.
    pub fn scale_each(&self, mut f: impl FnMut(&T) -> Result<TestAlgebraElement<K>, GaugeError>) -> Result<Self, GaugeError> {
        let mut out = Self::zero(self.algebra);
        for (t, c) in self.terms() {
            out.add_term(t.clone(), c.try_mul(&f(t)?)?);
        }
        Ok(out)
    }

    /// Applies an algebra map `R -> S` to every coefficient.
    pub fn push_forward(
        &self,
        target: TestAlgebra,
        mut alpha: impl FnMut(&TestAlgebraElement<K>) -> Result<TestAlgebraElement<K>, GaugeError>,
    ) -> Result<Self, GaugeError> {
        let mut out = Self::zero(target);
        for (t, c) in self.terms() {
            out.add_term(t.clone(), alpha(c)?);
        }
        Ok(out)
    }

    /// The coefficient of `x^n` in every `R`-coordinate, as a vector in `V`.
    pub fn coefficient_of_power(&self, n: i64) -> BTreeMap<T, K> {
        self.terms()
            .map(|(t, r)| (t.clone(), r.coeff(n)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// The exponents occurring in some coordinate.
    pub fn exponents(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.terms.values().flat_map(|r| r.support()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn same_algebra(&self, other: &Self) -> Result<(), GaugeError> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(GaugeError::WrongTestAlgebra {
                expected: self.algebra,
                found: other.algebra,
            })
        }
    }
}

impl<K: Field> Extension<Monomial, K> {
    /// `a (x) 1`.
    pub fn from_lpa(a: &LpaElement<K>, algebra: TestAlgebra) -> Self {
        Self::from_scalars(algebra, a.terms().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// `a (x) r`.
    pub fn from_lpa_times(a: &LpaElement<K>, r: &TestAlgebraElement<K>) -> Self {
        let mut out = Self::zero(r.algebra());
        for (m, c) in a.terms() {
            out.add_term(m.clone(), r.scale(c));
        }
        out
    }

    /// The element of `A` whose coordinates are the `x^n` coefficients.
    pub fn lpa_coefficient(&self, graph: &Arc<Graph>, n: i64) -> LpaElement<K> {
        LpaElement::from_terms(graph, self.coefficient_of_power(n))
    }

    /// Inverse of [`Self::from_lpa`] when the coefficients are constants.
    pub fn to_lpa(&self, graph: &Arc<Graph>) -> Option<LpaElement<K>> {
        if self.terms().any(|(_, r)| r.support().iter().any(|&e| e != 0)) {
            return None;
        }
        Some(self.lpa_coefficient(graph, 0))
    }

    /// The product in the `R`-algebra `A (x) R`.
    pub fn multiply(&self, graph: &Arc<Graph>, other: &Self) -> Result<Self, GaugeError> {
        self.same_algebra(other)?;
        let mut out = Self::zero(self.algebra);
        for (m, r) in self.terms() {
            let a = LpaElement::from_monomial(graph, m.clone(), K::one());
            for (n, s) in other.terms() {
                let b = LpaElement::from_monomial(graph, n.clone(), K::one());
                let rs = r.try_mul(s)?;
                for (p, c) in a.multiply(&b)?.terms() {
                    out.add_term(p.clone(), rs.scale(c));
                }
            }
        }
        Ok(out)
    }
}

use std::sync::Arc;

use super::{IdealError, TwoSidedIdeal};
use crate::graph::Graph;
use crate::lpa::{from_laurent, is_loop_graph, laurent_realize, LpaElement};
use crate::scalars::{Field, TestAlgebra, TestAlgebraElement, TestAlgebraElementJson};

/// An ideal of `L_K(R_1) = K[x, x^-1]`. Every such ideal is principal; the
/// generator is normalized to a polynomial with nonzero constant term and
/// leading coefficient `1` (or to `0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentIdeal<K: Field> {
    graph: Arc<Graph>,
    generator: TestAlgebraElement<K>,
}

/// Dense coefficients `c_0, ..., c_d` of `x^-lo * p`, where `lo` is the lowest
/// exponent of `p`.
fn shifted_coefficients<K: Field>(p: &TestAlgebraElement<K>) -> Vec<K> {
    let support = p.support();
    let (Some(&lo), Some(&hi)) = (support.first(), support.last()) else {
        return Vec::new();
    };
    (lo..=hi).map(|e| p.coeff(e)).collect()
}

/// Remainder of `a` modulo the polynomial `b` (dense, lowest degree first,
/// nonzero leading coefficient).
fn poly_rem<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    let mut r = a.to_vec();
    let lead_inv = b.last().expect("nonzero divisor").inverse().expect("leading coefficient is nonzero");
    while r.len() >= b.len() {
        let top = r.last().expect("nonempty").clone();
        if !top.is_zero() {
            let factor = top * lead_inv.clone();
            let shift = r.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                r[shift + i] = r[shift + i].clone() - factor.clone() * c.clone();
            }
        }
        r.pop();
    }
    while r.last().is_some_and(K::is_zero) {
        r.pop();
    }
    r
}

impl<K: Field> LaurentIdeal<K> {
    /// The ideal generated by `p`, given as a Laurent polynomial.
    pub fn principal(graph: &Arc<Graph>, p: &TestAlgebraElement<K>) -> Result<Self, IdealError> {
        if !is_loop_graph(graph) || p.algebra() != TestAlgebra::Laurent {
            return Err(IdealError::NotLoopGraph);
        }
        let coeffs = shifted_coefficients(p);
        let generator = match coeffs.last() {
            None => TestAlgebraElement::zero(TestAlgebra::Laurent),
            Some(lead) => {
                let inv = lead.inverse().expect("nonzero");
                TestAlgebraElement::from_terms(
                    TestAlgebra::Laurent,
                    coeffs.iter().enumerate().map(|(i, c)| (i as i64, c.clone() * inv.clone())),
                )
                .expect("Laurent accepts every exponent")
            }
        };
        Ok(LaurentIdeal {
            graph: Arc::clone(graph),
            generator,
        })
    }

    /// The ideal generated by an element of `L_K(R_1)`.
    pub fn generated_by(a: &LpaElement<K>) -> Result<Self, IdealError> {
        let p = laurent_realize(a).map_err(|_| IdealError::NotLoopGraph)?;
        Self::principal(a.graph(), &p)
    }

    pub fn generator(&self) -> &TestAlgebraElement<K> {
        &self.generator
    }

    pub fn is_zero(&self) -> bool {
        self.generator.is_zero()
    }

    /// Whether the ideal is all of `K[x, x^-1]`: the generator is a unit.
    pub fn is_whole(&self) -> bool {
        self.generator.is_one()
    }

    /// Divisibility in `K[x, x^-1]`. Since the generator is coprime to `x`,
    /// this is divisibility of the shifted polynomials.
    pub fn contains_laurent(&self, q: &TestAlgebraElement<K>) -> bool {
        if q.is_zero() {
            return true;
        }
        if self.generator.is_zero() {
            return false;
        }
        poly_rem(&shifted_coefficients(q), &shifted_coefficients(&self.generator)).is_empty()
    }

    pub fn to_json(&self) -> TestAlgebraElementJson {
        self.generator.to_json()
    }
}

impl<K: Field> TwoSidedIdeal<K> for LaurentIdeal<K> {
    fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    fn contains(&self, a: &LpaElement<K>) -> bool {
        laurent_realize(a).is_ok_and(|q| self.contains_laurent(&q))
    }

    fn test_set(&self) -> Vec<LpaElement<K>> {
        vec![from_laurent(&self.graph, &self.generator).expect("loop graph")]
    }
}

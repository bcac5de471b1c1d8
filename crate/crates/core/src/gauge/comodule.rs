use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GaugeError, GradingGroup};
use crate::linalg::Matrix;
use crate::scalars::{Field, TestAlgebraElement, TestAlgebraElementJson};

/// The value `rho(x)` of a representation on `K^d` at the universal point,
/// written as a `d x d` matrix over the group algebra `K Lambda`:
/// `sum_lambda p_lambda x^lambda`.
#[derive(Clone, PartialEq, Eq)]
pub struct ComoduleMap<K> {
    group: GradingGroup,
    matrix: Vec<Vec<TestAlgebraElement<K>>>,
}

impl<K: Field> fmt::Debug for ComoduleMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        f.debug_struct("ComoduleMap").field("group", &self.group).field("matrix", &rows).finish()
    }
}

/// Which identity a candidate comodule map breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepresentationDefect {
    /// `sum_lambda p_lambda != 1`: the counit identity fails.
    Counit,
    /// `p_lambda^2 != p_lambda`.
    Idempotency(i64),
    /// `p_mu p_lambda != 0` for `mu != lambda`.
    Orthogonality(i64, i64),
}

impl fmt::Display for RepresentationDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepresentationDefect::Counit => write!(f, "the projections do not sum to the identity"),
            RepresentationDefect::Idempotency(l) => write!(f, "p_{l} is not idempotent"),
            RepresentationDefect::Orthogonality(m, l) => write!(f, "p_{m} p_{l} is nonzero"),
        }
    }
}

/// A complete family of orthogonal idempotents `p_lambda`.
#[derive(Clone, PartialEq, Eq)]
pub struct IdempotentSystem<K> {
    dim: usize,
    projections: BTreeMap<i64, Matrix<K>>,
}

impl<K: Field> fmt::Debug for IdempotentSystem<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.projections.iter()).finish()
    }
}

impl<K: Field> ComoduleMap<K> {
    /// Checks shape and that every entry lives in the group algebra.
    pub fn new(group: GradingGroup, matrix: Vec<Vec<TestAlgebraElement<K>>>) -> Result<Self, GaugeError> {
        let d = matrix.len();
        let algebra = group.representing_algebra();
        for row in &matrix {
            if row.len() != d {
                return Err(GaugeError::DimensionMismatch {
                    expected: d,
                    found: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|x| x.algebra() != algebra) {
                return Err(GaugeError::WrongTestAlgebra {
                    expected: algebra,
                    found: bad.algebra(),
                });
            }
        }
        Ok(ComoduleMap { group, matrix })
    }

    pub fn group(&self) -> GradingGroup {
        self.group
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &TestAlgebraElement<K> {
        &self.matrix[i][j]
    }

    /// Replaces one entry; used to build perturbed maps.
    pub fn with_entry(mut self, i: usize, j: usize, value: TestAlgebraElement<K>) -> Result<Self, GaugeError> {
        let expected = self.group.representing_algebra();
        if value.algebra() != expected {
            return Err(GaugeError::WrongTestAlgebra {
                expected,
                found: value.algebra(),
            });
        }
        self.matrix[i][j] = value;
        Ok(self)
    }

    /// The coefficient matrices `p_lambda`, one per exponent in the support,
    /// without any verification.
    pub fn coefficient_matrices(&self) -> BTreeMap<i64, Matrix<K>> {
        let d = self.dim();
        let mut out: BTreeMap<i64, Matrix<K>> = BTreeMap::new();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                for (e, c) in x.terms() {
                    out.entry(e).or_insert_with(|| Matrix::zeros(d, d)).set(i, j, c.clone());
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> ComoduleJson {
        ComoduleJson {
            group: self.group.to_string(),
            matrix: self.matrix.iter().map(|r| r.iter().map(TestAlgebraElement::to_json).collect()).collect(),
        }
    }

    pub fn from_json(json: &ComoduleJson) -> Result<Self, GaugeError> {
        let group: GradingGroup = json.group.parse().map_err(GaugeError::InvalidGroup)?;
        let algebra = group.representing_algebra();
        let mut matrix = Vec::with_capacity(json.matrix.len());
        for row in &json.matrix {
            let mut r = Vec::with_capacity(row.len());
            for x in row {
                r.push(TestAlgebraElement::from_json(algebra, x)?);
            }
            matrix.push(r);
        }
        Self::new(group, matrix)
    }
}

/// `{"group": "Z", "matrix": [[{"0": "1"}, {}], ...]}`: a dense matrix of
/// sparse exponent-to-coefficient maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleJson {
    pub group: String,
    pub matrix: Vec<Vec<TestAlgebraElementJson>>,
}

/// Extracts `p_lambda` from the comodule map and verifies that they form a
/// complete system of orthogonal idempotents.
///
/// Writing the coaction as `m -> sum_lambda p_lambda(m) (x) lambda`, the counit
/// identity `(1 (x) epsilon) rho = 1` is `sum p_lambda = 1`, and
/// coassociativity `(rho (x) 1) rho = (1 (x) Delta) rho` compares the
/// coefficients of `mu (x) lambda`, giving `p_mu p_lambda = delta p_lambda`.
/// Pairs are checked in increasing order and the first failure is reported.
pub fn comodule_to_idempotents<K: Field>(c: &ComoduleMap<K>) -> Result<IdempotentSystem<K>, GaugeError> {
    let d = c.dim();
    let projections = c.coefficient_matrices();
    let total = projections.values().fold(Matrix::zeros(d, d), |acc, p| acc.add(p));
    if total != Matrix::identity(d) {
        return Err(GaugeError::NotARepresentation(RepresentationDefect::Counit));
    }
    for (&mu, pm) in &projections {
        for (&lambda, pl) in &projections {
            let prod = pm.mul(pl);
            if mu == lambda && prod != *pl {
                return Err(GaugeError::NotARepresentation(RepresentationDefect::Idempotency(lambda)));
            }
            if mu != lambda && !prod.is_zero() {
                return Err(GaugeError::NotARepresentation(RepresentationDefect::Orthogonality(mu, lambda)));
            }
        }
    }
    Ok(IdempotentSystem { dim: d, projections })
}

/// The diagonal comodule map `diag(x^{d_1}, ..., x^{d_k})` of a grading of
/// `K^k` with coordinate `i` in degree `d_i`.
pub fn grading_to_comodule<K: Field>(degrees: &[i64], group: GradingGroup) -> ComoduleMap<K> {
    let algebra = group.representing_algebra();
    let k = degrees.len();
    let matrix = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        TestAlgebraElement::monomial(algebra, K::one(), degrees[i]).expect("any exponent is allowed")
                    } else {
                        TestAlgebraElement::zero(algebra)
                    }
                })
                .collect()
        })
        .collect();
    ComoduleMap { group, matrix }
}

impl<K: Field> IdempotentSystem<K> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn projections(&self) -> &BTreeMap<i64, Matrix<K>> {
        &self.projections
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.projections.keys().copied().collect()
    }

    /// The degree-`lambda` component `p_lambda v` of a vector.
    pub fn component(&self, lambda: i64, v: &[K]) -> Vec<K> {
        match self.projections.get(&lambda) {
            Some(p) => p.mul_vec(v),
            None => vec![K::zero(); self.dim],
        }
    }

    /// For a system of coordinate projections, the degree of each coordinate.
    /// `None` when some basis vector is not homogeneous.
    pub fn degree_partition(&self) -> Option<Vec<i64>> {
        (0..self.dim)
            .map(|i| {
                let mut e = vec![K::zero(); self.dim];
                e[i] = K::one();
                self.projections.iter().find(|(_, p)| p.mul_vec(&e) == e).map(|(&l, _)| l)
            })
            .collect()
    }

    /// `{"degree": [[coefficient, ...], ...]}`.
    pub fn to_json(&self) -> BTreeMap<String, Vec<Vec<String>>> {
        self.projections
            .iter()
            .map(|(l, p)| (l.to_string(), p.to_rows().iter().map(|r| r.iter().map(K::to_string).collect()).collect()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::TestAlgebra;
    use crate::{F2, Q};
    use proptest::prelude::*;

    fn lx<K: Field>(c: i64, e: i64) -> TestAlgebraElement<K> {
        TestAlgebraElement::monomial(TestAlgebra::Laurent, K::from_i64(c), e).unwrap()
    }

    fn diag_q(entries: &[i64]) -> Matrix<Q> {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, Q::from_i64(x));
        }
        m
    }

    #[test]
    fn diagonal_comodule_splits_by_degree() {
        let c = grading_to_comodule::<Q>(&[2, 2, -1], GradingGroup::Integers);
        assert_eq!(c.entry(0, 0), &lx(1, 2));
        let sys = comodule_to_idempotents(&c).unwrap();
        assert_eq!(sys.projections().len(), 2);
        assert_eq!(sys.projections()[&2], diag_q(&[1, 1, 0]));
        assert_eq!(sys.projections()[&-1], diag_q(&[0, 0, 1]));
    }

    #[test]
    fn trivial_representation() {
        let c = grading_to_comodule::<F2>(&[0, 0, 0], GradingGroup::Integers);
        let sys = comodule_to_idempotents(&c).unwrap();
        assert_eq!(sys.projections().len(), 1);
        assert_eq!(sys.projections()[&0], Matrix::identity(3));
    }

    #[test]
    fn cyclic_grading_comodule() {
        let c = grading_to_comodule::<Q>(&[0, 1], GradingGroup::Cyclic(2));
        let x = TestAlgebraElement::<Q>::x(TestAlgebra::Cyclic(2)).unwrap();
        assert_eq!(c.entry(1, 1), &x);
        assert_eq!(comodule_to_idempotents(&c).unwrap().degree_partition(), Some(vec![0, 1]));
    }

    #[test]
    fn perturbations_are_rejected() {
        let valid = grading_to_comodule::<Q>(&[0, 1], GradingGroup::Integers);
        // x - x^2 in the corner keeps the counit identity and p_0 idempotent
        let off = lx::<Q>(1, 1).try_add(&lx(-1, 2)).unwrap();
        let broken = valid.clone().with_entry(0, 1, off).unwrap();
        assert_eq!(
            comodule_to_idempotents(&broken).unwrap_err(),
            GaugeError::NotARepresentation(RepresentationDefect::Orthogonality(0, 1))
        );
        let two_minus_x = lx::<Q>(2, 0).try_add(&lx(-1, 1)).unwrap();
        let broken = valid.clone().with_entry(0, 0, two_minus_x).unwrap();
        assert_eq!(
            comodule_to_idempotents(&broken).unwrap_err(),
            GaugeError::NotARepresentation(RepresentationDefect::Idempotency(0))
        );
        let broken = valid.with_entry(1, 0, lx(1, 3)).unwrap();
        assert_eq!(
            comodule_to_idempotents(&broken).unwrap_err(),
            GaugeError::NotARepresentation(RepresentationDefect::Counit)
        );
    }

    #[test]
    fn json_round_trip() {
        let c = grading_to_comodule::<Q>(&[0, 1, -1], GradingGroup::Integers);
        let text = serde_json::to_string(&c.to_json()).unwrap();
        let back: ComoduleJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ComoduleMap::<Q>::from_json(&back).unwrap(), c);
    }

    proptest! {
        #[test]
        fn grading_round_trip(degrees in prop::collection::vec(-4i64..=4, 1..6), n in 0u64..4) {
            let group = if n == 0 { GradingGroup::Integers } else { GradingGroup::Cyclic(n) };
            let c = grading_to_comodule::<F2>(&degrees, group);
            let sys = comodule_to_idempotents(&c).unwrap();
            let expected: Vec<i64> = degrees.iter().map(|&d| group.reduce(d)).collect();
            prop_assert_eq!(sys.degree_partition(), Some(expected));
            let total = sys.projections().values().fold(Matrix::zeros(degrees.len(), degrees.len()), |a, p| a.add(p));
            prop_assert_eq!(total, Matrix::identity(degrees.len()));
        }
    }
}

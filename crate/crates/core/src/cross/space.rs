use std::collections::BTreeMap;
use std::sync::Arc;

use super::tensor::{pair_display, tensor_action_apply, tensor_extension, TensorElement};
use super::CrossError;
use crate::gauge::GaugeAction;
use crate::graph::Graph;
use crate::lpa::{basis_and_dimension, same_graph, Basis, Monomial};
use crate::scalars::{Field, TestAlgebra, TestAlgebraElement};

/// A subspace of `L_K(E) (x) L_K(F)` spanned by pairs of normal-form
/// monomials: either the degree-matched pairs (the cross product) or all
/// pairs (the unrestricted tensor product). With a bound, only monomials
/// `mu nu*` with `|mu|, |nu| <= bound` are used in each factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossProductSpace {
    left: Arc<Graph>,
    right: Arc<Graph>,
    bound: Option<usize>,
    naive: bool,
    basis: Vec<(Monomial, Monomial)>,
}

fn factor_basis(g: &Arc<Graph>, bound: Option<usize>) -> Result<Basis, CrossError> {
    match bound {
        Some(b) => Ok(Basis::truncated(g, b)),
        None => basis_and_dimension(g).map_err(|_| CrossError::BoundRequired),
    }
}

impl CrossProductSpace {
    pub fn left(&self) -> &Arc<Graph> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Graph> {
        &self.right
    }

    pub fn bound(&self) -> Option<usize> {
        self.bound
    }

    /// Whether this is the unrestricted tensor product.
    pub fn is_naive(&self) -> bool {
        self.naive
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(Monomial, Monomial)] {
        &self.basis
    }

    pub fn basis_element<K: Field>(&self, i: usize) -> TensorElement<K> {
        let (a, b) = &self.basis[i];
        TensorElement::from_monomials(&self.left, &self.right, a.clone(), b.clone(), K::one())
    }

    pub fn display_pair(&self, i: usize) -> String {
        let (a, b) = &self.basis[i];
        pair_display(&self.left, &self.right, a, b)
    }

    /// Dimension of each degree component: `n -> #{(a, b) : deg a = deg b = n}`.
    pub fn degree_dimensions(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (a, b) in &self.basis {
            if a.degree() == b.degree() {
                *out.entry(a.degree()).or_insert(0) += 1;
            }
        }
        out
    }
}

/// The fixed points of the tensor product action of the two gauge actions.
///
/// Every pair of basis monomials is pushed through the action at the
/// universal point `x` of `K[x, x^-1]`. Each pair `a (x) b` is sent to
/// `a (x) b (x) x^d` with `d = deg a - deg b`, so the action is diagonal in
/// this basis and the fixed subspace is spanned by the pairs with `d = 0`.
/// Both facts are checked as the pairs are processed.
///
/// `bound` may be omitted only when both graphs are acyclic.
pub fn fixed_subalgebra<K: Field>(
    left: &Arc<Graph>,
    right: &Arc<Graph>,
    bound: Option<usize>,
) -> Result<CrossProductSpace, CrossError> {
    let (bl, br) = (factor_basis(left, bound)?, factor_basis(right, bound)?);
    let rho = GaugeAction::lpa(left);
    let sigma = GaugeAction::lpa(right);
    let x = TestAlgebraElement::<K>::x(TestAlgebra::Laurent).expect("Laurent has x");
    let mut basis = Vec::new();
    for a in bl.monomials() {
        for b in br.monomials() {
            let t = TensorElement::from_monomials(left, right, a.clone(), b.clone(), K::one());
            let moved = tensor_action_apply(&rho, &sigma, &x, &tensor_extension(&t, TestAlgebra::Laurent))?;
            let d = a.degree() - b.degree();
            let expected = TestAlgebraElement::monomial(TestAlgebra::Laurent, K::one(), d).expect("Laurent");
            assert!(
                moved.terms().count() == 1 && moved.coefficient(&(a.clone(), b.clone())) == expected,
                "the tensor action is not diagonal on {}",
                pair_display(left, right, a, b)
            );
            if d == 0 {
                basis.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(CrossProductSpace {
        left: Arc::clone(left),
        right: Arc::clone(right),
        bound,
        naive: false,
        basis,
    })
}

/// The unrestricted tensor product, for contrast with the cross product.
pub fn naive_tensor_space(
    left: &Arc<Graph>,
    right: &Arc<Graph>,
    bound: Option<usize>,
) -> Result<CrossProductSpace, CrossError> {
    let (bl, br) = (factor_basis(left, bound)?, factor_basis(right, bound)?);
    let basis = bl
        .monomials()
        .iter()
        .flat_map(|a| br.monomials().iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    Ok(CrossProductSpace {
        left: Arc::clone(left),
        right: Arc::clone(right),
        bound,
        naive: true,
        basis,
    })
}

/// The grading of the cross product: the degree-`n` component of `t` is the
/// sum of its terms `a (x) b` with `deg a = deg b = n`.
pub fn cross_grading<K: Field>(
    space: &CrossProductSpace,
    t: &TensorElement<K>,
) -> Result<BTreeMap<i64, TensorElement<K>>, CrossError> {
    if !same_graph(space.left(), t.left()) || !same_graph(space.right(), t.right()) {
        return Err(CrossError::GraphMismatch);
    }
    let mut out: BTreeMap<i64, TensorElement<K>> = BTreeMap::new();
    for ((a, b), c) in t.terms() {
        if a.degree() != b.degree() {
            return Err(CrossError::NotInCrossProduct(pair_display(t.left(), t.right(), a, b)));
        }
        let term = TensorElement::from_monomials(t.left(), t.right(), a.clone(), b.clone(), c.clone());
        let slot = out
            .entry(a.degree())
            .or_insert_with(|| TensorElement::zero(t.left(), t.right()));
        *slot = slot.try_add(&term)?;
    }
    Ok(out)
}

use std::fmt;
use std::sync::Arc;

use super::{IdealError, TwoSidedIdeal};
use crate::graph::Graph;
use crate::linalg::EchelonBasis;
use crate::lpa::{basis_and_dimension, same_graph, Basis, Generator, LpaElement, TermJson};
use crate::scalars::Field;

/// A subspace of a finite-dimensional `L_K(E)`, held in reduced echelon form
/// over the canonical monomial basis. Equal subspaces compare equal.
#[derive(Clone)]
pub struct IdealBasis<K> {
    ambient: Arc<Basis>,
    span: EchelonBasis<K>,
}

impl<K: Field> PartialEq for IdealBasis<K> {
    fn eq(&self, other: &Self) -> bool {
        **self.ambient.graph() == **other.ambient.graph() && self.span == other.span
    }
}

impl<K: Field> Eq for IdealBasis<K> {}

impl<K: Field> fmt::Debug for IdealBasis<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.elements().iter().map(|e| e.to_string())).finish()
    }
}

fn ambient(graph: &Arc<Graph>) -> Result<Arc<Basis>, IdealError> {
    basis_and_dimension(graph)
        .map(Arc::new)
        .map_err(|_| IdealError::InfiniteDimensional)
}

impl<K: Field> IdealBasis<K> {
    pub fn zero(graph: &Arc<Graph>) -> Result<Self, IdealError> {
        let ambient = ambient(graph)?;
        let span = EchelonBasis::new(ambient.dim());
        Ok(IdealBasis { ambient, span })
    }

    /// The whole algebra.
    pub fn whole(graph: &Arc<Graph>) -> Result<Self, IdealError> {
        let mut out = Self::zero(graph)?;
        for i in 0..out.ambient.dim() {
            let mut v = vec![K::zero(); out.ambient.dim()];
            v[i] = K::one();
            out.span.insert(&v);
        }
        Ok(out)
    }

    /// The span of `elements`, with no closure applied. Used to test the
    /// gradedness checks on subspaces that are not ideals.
    pub(crate) fn span_of(graph: &Arc<Graph>, elements: &[LpaElement<K>]) -> Result<Self, IdealError> {
        let mut out = Self::zero(graph)?;
        for a in elements {
            out.insert(a)?;
        }
        Ok(out)
    }

    fn insert(&mut self, a: &LpaElement<K>) -> Result<bool, IdealError> {
        if !same_graph(a.graph(), self.ambient.graph()) {
            return Err(IdealError::GraphMismatch);
        }
        let v = self.ambient.coordinates(a).expect("the basis of an acyclic graph is complete");
        Ok(self.span.insert(&v))
    }

    pub fn graph(&self) -> &Arc<Graph> {
        self.ambient.graph()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn dim(&self) -> usize {
        self.span.len()
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// The echelon basis as algebra elements.
    pub fn elements(&self) -> Vec<LpaElement<K>> {
        self.span.rows().iter().map(|r| self.ambient.element(r)).collect()
    }

    /// Whether `left * b * right` stays inside for every basis element `b`
    /// and all monomials `left`, `right` of the ambient basis.
    pub fn is_two_sided(&self) -> bool {
        let g = self.graph();
        let monomials: Vec<LpaElement<K>> = self
            .ambient
            .monomials()
            .iter()
            .map(|m| LpaElement::from_monomial(g, m.clone(), K::one()))
            .collect();
        self.elements().iter().all(|b| {
            monomials.iter().all(|l| {
                let lb = l * b;
                self.contains(&lb) && monomials.iter().all(|r| self.contains(&(&lb * r)))
            })
        })
    }

    /// Closes the span under multiplication by generators on both sides.
    pub fn close(&self) -> Self {
        let g = Arc::clone(self.graph());
        let gens: Vec<LpaElement<K>> = Generator::all(&g).into_iter().map(|x| LpaElement::generator(&g, x)).collect();
        let mut out = self.clone();
        let mut queue = self.elements();
        while let Some(b) = queue.pop() {
            for x in &gens {
                for p in [x * &b, &b * x] {
                    if out.insert(&p).expect("same graph") {
                        queue.push(p);
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Vec<Vec<TermJson>> {
        self.elements().iter().map(LpaElement::to_json).collect()
    }

    pub fn from_json(graph: &Arc<Graph>, rows: &[Vec<TermJson>]) -> Result<Self, IdealError> {
        let elems: Vec<LpaElement<K>> = rows
            .iter()
            .map(|r| LpaElement::from_json(graph, r))
            .collect::<Result<_, _>>()?;
        ideal_generated_by(graph, &elems)
    }
}

impl<K: Field> TwoSidedIdeal<K> for IdealBasis<K> {
    fn graph(&self) -> &Arc<Graph> {
        self.ambient.graph()
    }

    fn contains(&self, a: &LpaElement<K>) -> bool {
        match self.ambient.coordinates(a) {
            Some(v) => self.span.contains(&v),
            None => false,
        }
    }

    fn test_set(&self) -> Vec<LpaElement<K>> {
        self.elements()
    }
}

/// The smallest two-sided ideal containing `gens`.
pub fn ideal_generated_by<K: Field>(graph: &Arc<Graph>, gens: &[LpaElement<K>]) -> Result<IdealBasis<K>, IdealError> {
    Ok(IdealBasis::span_of(graph, gens)?.close())
}

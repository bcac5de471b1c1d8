use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::element::LpaElement;
use super::monomial::Monomial;
use super::LpaError;
use crate::graph::{all_paths, enumerate_paths, Graph, Path};
use crate::scalars::Field;

/// An ordered list of normal-form monomials with a reverse index, used to move
/// between elements and coordinate vectors.
#[derive(Clone, Debug)]
pub struct Basis {
    graph: Arc<Graph>,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    /// Sorts and deduplicates `monomials`.
    pub fn new(graph: &Arc<Graph>, mut monomials: Vec<Monomial>) -> Self {
        monomials.sort();
        monomials.dedup();
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Basis {
            graph: Arc::clone(graph),
            monomials,
            index,
        }
    }

    /// Normal monomials `mu nu*` with `|mu|, |nu| <= bound`.
    pub fn truncated(graph: &Arc<Graph>, bound: usize) -> Self {
        Self::new(graph, normal_monomials(graph, bound))
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `a`, or `None` if `a` has a term outside the basis.
    pub fn coordinates<K: Field>(&self, a: &LpaElement<K>) -> Option<Vec<K>> {
        let mut v = vec![K::zero(); self.dim()];
        for (m, c) in a.terms() {
            v[self.index_of(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn element<K: Field>(&self, v: &[K]) -> LpaElement<K> {
        assert_eq!(v.len(), self.dim());
        let terms = self
            .monomials
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        LpaElement::from_normal_terms(&self.graph, terms)
    }
}

fn pair_paths(g: &Graph, paths: &[Path]) -> Vec<Monomial> {
    let mut by_range: BTreeMap<usize, Vec<&Path>> = BTreeMap::new();
    for p in paths {
        by_range.entry(p.range(g)).or_default().push(p);
    }
    let mut out = Vec::new();
    for group in by_range.values() {
        for mu in group {
            for nu in group {
                let m = Monomial::new_unchecked((*mu).clone(), (*nu).clone());
                if m.is_normal(g) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Every normal monomial `mu nu*` with `|mu|, |nu| <= bound`, sorted.
pub fn normal_monomials(g: &Graph, bound: usize) -> Vec<Monomial> {
    let mut out = pair_paths(g, &enumerate_paths(g, bound));
    out.sort();
    out
}

/// The monomial basis of `L_K(E)` for acyclic `E`. The dimension does not
/// depend on the field.
pub fn basis_and_dimension(g: &Arc<Graph>) -> Result<Basis, LpaError> {
    let paths = all_paths(g).ok_or(LpaError::InfiniteDimensional)?;
    Ok(Basis::new(g, pair_paths(g, &paths)))
}

/// `sum over sinks w of (number of paths ending at w)^2`, the dimension of
/// `L_K(E)` for acyclic `E` computed without normal forms.
pub fn sink_path_dimension(g: &Graph) -> Option<usize> {
    if !g.is_acyclic() {
        return None;
    }
    // paths ending at each vertex, by dynamic programming over a topological order
    let n = g.vertex_count();
    let mut indegree = vec![0usize; n];
    for e in 0..g.edge_count() {
        indegree[g.range(e)] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    while let Some(v) = stack.pop() {
        order.push(v);
        for &e in g.emitted(v) {
            let w = g.range(e);
            indegree[w] -= 1;
            if indegree[w] == 0 {
                stack.push(w);
            }
        }
    }
    let mut ending = vec![1usize; n];
    for &v in &order {
        for &e in g.emitted(v) {
            ending[g.range(e)] += ending[v];
        }
    }
    Some(g.sinks().into_iter().map(|w| ending[w] * ending[w]).sum())
}

/// Number of basis monomials in each degree.
pub fn degree_dimensions(basis: &Basis) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for m in basis.monomials() {
        *out.entry(m.degree()).or_insert(0) += 1;
    }
    out
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::monomial::{concatenate, normalize, Monomial};
use super::LpaError;
use crate::graph::Graph;
use crate::scalars::Field;

/// Which generator of `L_K(E)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Vertex(usize),
    Edge(usize),
    Ghost(usize),
}

impl Generator {
    pub fn degree(&self) -> i64 {
        match self {
            Generator::Vertex(_) => 0,
            Generator::Edge(_) => 1,
            Generator::Ghost(_) => -1,
        }
    }

    pub fn monomial(&self, g: &Graph) -> Monomial {
        match *self {
            Generator::Vertex(v) => Monomial::vertex(v),
            Generator::Edge(e) => Monomial::edge(g, e),
            Generator::Ghost(e) => Monomial::ghost(g, e),
        }
    }

    pub fn display(&self, g: &Graph) -> String {
        match *self {
            Generator::Vertex(v) => g.vertex_id(v).to_string(),
            Generator::Edge(e) => g.edge_id(e).to_string(),
            Generator::Ghost(e) => format!("{}*", g.edge_id(e)),
        }
    }

    /// Every vertex, edge and ghost edge of `g`.
    pub fn all(g: &Graph) -> Vec<Generator> {
        let mut out: Vec<Generator> = (0..g.vertex_count()).map(Generator::Vertex).collect();
        out.extend((0..g.edge_count()).map(Generator::Edge));
        out.extend((0..g.edge_count()).map(Generator::Ghost));
        out
    }
}

/// An element of `L_K(E)`: a finite combination of normal-form monomials with
/// nonzero coefficients. Equality is equality of canonical forms.
#[derive(Clone, PartialEq, Eq)]
pub struct LpaElement<K> {
    graph: Arc<Graph>,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> fmt::Debug for LpaElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: Field> fmt::Display for LpaElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}", m.display(&self.graph))?;
            } else {
                write!(f, "{}*{}", c, m.display(&self.graph))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn accumulate<T: Ord, K: Field>(terms: &mut BTreeMap<T, K>, key: T, c: K) {
    if c.is_zero() {
        return;
    }
    match terms.remove(&key) {
        Some(old) => {
            let s = old + c;
            if !s.is_zero() {
                terms.insert(key, s);
            }
        }
        None => {
            terms.insert(key, c);
        }
    }
}

impl<K: Field> LpaElement<K> {
    pub fn zero(graph: &Arc<Graph>) -> Self {
        LpaElement {
            graph: Arc::clone(graph),
            terms: BTreeMap::new(),
        }
    }

    /// `c * m`, reduced to normal form.
    pub fn from_monomial(graph: &Arc<Graph>, m: Monomial, c: K) -> Self {
        let mut out = Self::zero(graph);
        out.add_monomial(m, c);
        out
    }

    /// Builds an element from arbitrary (not necessarily normal) monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, K)>>(graph: &Arc<Graph>, terms: I) -> Self {
        let mut out = Self::zero(graph);
        for (m, c) in terms {
            out.add_monomial(m, c);
        }
        out
    }

    fn add_monomial(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        let g = Arc::clone(&self.graph);
        normalize(&g, m, |n, positive| {
            let coeff = if positive { c.clone() } else { -c.clone() };
            accumulate(&mut self.terms, n, coeff);
        });
    }

    pub fn generator(graph: &Arc<Graph>, gen: Generator) -> Self {
        Self::from_monomial(graph, gen.monomial(graph), K::one())
    }

    pub fn vertex(graph: &Arc<Graph>, id: &str) -> Result<Self, LpaError> {
        let v = graph.vertex(id).ok_or_else(|| LpaError::UnknownId(id.into()))?;
        Ok(Self::generator(graph, Generator::Vertex(v)))
    }

    pub fn edge(graph: &Arc<Graph>, id: &str) -> Result<Self, LpaError> {
        let e = graph.edge(id).ok_or_else(|| LpaError::UnknownId(id.into()))?;
        Ok(Self::generator(graph, Generator::Edge(e)))
    }

    pub fn ghost(graph: &Arc<Graph>, id: &str) -> Result<Self, LpaError> {
        let e = graph.edge(id).ok_or_else(|| LpaError::UnknownId(id.into()))?;
        Ok(Self::generator(graph, Generator::Ghost(e)))
    }

    /// The sum of all vertices, the identity of `L_K(E)` for finite `E`.
    pub fn unit(graph: &Arc<Graph>) -> Self {
        Self::from_terms(graph, (0..graph.vertex_count()).map(|v| (Monomial::vertex(v), K::one())))
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<Monomial, K> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The set of degrees carrying a nonzero component.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.terms.keys().map(Monomial::degree).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    fn check_graph(&self, other: &Self) -> Result<(), LpaError> {
        if same_graph(&self.graph, &other.graph) {
            Ok(())
        } else {
            Err(LpaError::GraphMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LpaError> {
        self.check_graph(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            accumulate(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LpaError> {
        self.try_add(&other.scale(&-K::one()))
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero(&self.graph);
        if c.is_zero() {
            return out;
        }
        for (m, x) in self.terms() {
            out.terms.insert(m.clone(), x.clone() * c.clone());
        }
        out
    }

    /// The exact product in normal form.
    pub fn multiply(&self, other: &Self) -> Result<Self, LpaError> {
        self.check_graph(other)?;
        let mut out = Self::zero(&self.graph);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if let Some(m) = concatenate(&self.graph, a, b) {
                    out.add_monomial(m, ca.clone() * cb.clone());
                }
            }
        }
        Ok(out)
    }

    /// The involution `(mu nu*)* = nu mu*`, identity on coefficients.
    pub fn involution(&self) -> Self {
        // the adjoint of a normal monomial is normal
        LpaElement {
            graph: Arc::clone(&self.graph),
            terms: self.terms().map(|(m, c)| (m.adjoint(), c.clone())).collect(),
        }
    }

    /// The canonical `Z`-grading.
    pub fn grade(&self) -> GradedDecomposition<K> {
        let mut components: BTreeMap<i64, LpaElement<K>> = BTreeMap::new();
        for (m, c) in self.terms() {
            components
                .entry(m.degree())
                .or_insert_with(|| Self::zero(&self.graph))
                .terms
                .insert(m.clone(), c.clone());
        }
        GradedDecomposition {
            graph: Arc::clone(&self.graph),
            components,
        }
    }

    /// Applies `f(degree)` as a scalar to every term.
    pub fn scale_by_degree(&self, mut f: impl FnMut(i64) -> K) -> Self {
        let mut out = Self::zero(&self.graph);
        for (m, c) in self.terms() {
            accumulate(&mut out.terms, m.clone(), c.clone() * f(m.degree()));
        }
        out
    }

    pub(crate) fn from_normal_terms(graph: &Arc<Graph>, terms: BTreeMap<Monomial, K>) -> Self {
        debug_assert!(terms.keys().all(|m| m.is_normal(graph)));
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        LpaElement {
            graph: Arc::clone(graph),
            terms,
        }
    }
}

/// `a = sum_n a_n` with `a_n` homogeneous of degree `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedDecomposition<K> {
    graph: Arc<Graph>,
    components: BTreeMap<i64, LpaElement<K>>,
}

impl<K: Field> fmt::Debug for GradedDecomposition<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.components.iter()).finish()
    }
}

impl<K: Field> GradedDecomposition<K> {
    pub fn from_components(graph: &Arc<Graph>, components: BTreeMap<i64, LpaElement<K>>) -> Self {
        GradedDecomposition {
            graph: Arc::clone(graph),
            components: components.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn components(&self) -> &BTreeMap<i64, LpaElement<K>> {
        &self.components
    }

    pub fn component(&self, n: i64) -> LpaElement<K> {
        self.components.get(&n).cloned().unwrap_or_else(|| LpaElement::zero(&self.graph))
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn sum(&self) -> LpaElement<K> {
        self.components
            .values()
            .fold(LpaElement::zero(&self.graph), |acc, c| acc.try_add(c).expect("same graph"))
    }

    /// The induced `Z_n`-grading: component `i` collects the degrees `d` with
    /// `d = i (mod n)`.
    pub fn coarsen(&self, n: u64) -> Result<BTreeMap<u64, LpaElement<K>>, LpaError> {
        if n == 0 {
            return Err(LpaError::InvalidModulus);
        }
        let mut out: BTreeMap<u64, LpaElement<K>> = BTreeMap::new();
        for (d, c) in &self.components {
            let r = d.rem_euclid(n as i64) as u64;
            let slot = out.entry(r).or_insert_with(|| LpaElement::zero(&self.graph));
            *slot = slot.try_add(c)?;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

macro_rules! lpa_binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl<K: Field> $tr for &LpaElement<K> {
            type Output = LpaElement<K>;

            /// Panics when the operands belong to different graphs.
            fn $method(self, rhs: Self) -> LpaElement<K> {
                self.$call(rhs).expect("operands over the same graph")
            }
        }

        impl<K: Field> $tr for LpaElement<K> {
            type Output = LpaElement<K>;

            fn $method(self, rhs: Self) -> LpaElement<K> {
                (&self).$method(&rhs)
            }
        }
    };
}

lpa_binop!(Add, add, try_add);
lpa_binop!(Sub, sub, try_sub);
lpa_binop!(Mul, mul, multiply);

impl<K: Field> Neg for &LpaElement<K> {
    type Output = LpaElement<K>;

    fn neg(self) -> LpaElement<K> {
        self.scale(&-K::one())
    }
}

impl<K: Field> Neg for LpaElement<K> {
    type Output = LpaElement<K>;

    fn neg(self) -> LpaElement<K> {
        -&self
    }
}

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use super::tensor::TensorElement;
use super::CrossError;
use crate::graph::{Graph, ProductGraph};
use crate::linalg::Matrix;
use crate::lpa::rewrite::monomial_word;
use crate::lpa::{basis_and_dimension, Basis, Generator, LpaElement, Monomial};
use crate::scalars::Field;

/// An assignment of a tensor to every generator of `L_K(E x F)`, extended
/// multiplicatively and linearly. Whether the assignment respects the
/// defining relations is checked on first use and cached.
#[derive(Clone, Debug)]
pub struct GeneratorMap<K: Field> {
    product: ProductGraph,
    images: BTreeMap<Generator, TensorElement<K>>,
    relations: OnceLock<Result<(), CrossError>>,
}

impl<K: Field> GeneratorMap<K> {
    /// `(u, v) -> u (x) v`, `(f, g) -> f (x) g`, `(f, g)* -> f* (x) g*`.
    pub fn canonical(product: &ProductGraph) -> Self {
        let (l, r) = (&product.left, &product.right);
        let g = &product.graph;
        let mut images = BTreeMap::new();
        for v in 0..g.vertex_count() {
            let (a, b) = product.vertex_pair(v);
            images.insert(Generator::Vertex(v), TensorElement::from_monomials(l, r, Monomial::vertex(a), Monomial::vertex(b), K::one()));
        }
        for e in 0..g.edge_count() {
            let (a, b) = product.edge_pair(e);
            images.insert(Generator::Edge(e), TensorElement::from_monomials(l, r, Monomial::edge(l, a), Monomial::edge(r, b), K::one()));
            images.insert(Generator::Ghost(e), TensorElement::from_monomials(l, r, Monomial::ghost(l, a), Monomial::ghost(r, b), K::one()));
        }
        GeneratorMap {
            product: product.clone(),
            images,
            relations: OnceLock::new(),
        }
    }

    /// The same map with one generator sent elsewhere.
    pub fn with_image(&self, generator: Generator, image: TensorElement<K>) -> Self {
        let mut images = self.images.clone();
        images.insert(generator, image);
        GeneratorMap {
            product: self.product.clone(),
            images,
            relations: OnceLock::new(),
        }
    }

    pub fn product(&self) -> &ProductGraph {
        &self.product
    }

    pub fn domain(&self) -> &Arc<Graph> {
        &self.product.graph
    }

    pub fn image(&self, generator: Generator) -> &TensorElement<K> {
        &self.images[&generator]
    }

    fn mul(&self, a: &TensorElement<K>, b: &TensorElement<K>) -> TensorElement<K> {
        a.multiply(b).expect("images share the factor graphs")
    }

    fn zero(&self) -> TensorElement<K> {
        TensorElement::zero(&self.product.left, &self.product.right)
    }

    fn find_violation(&self) -> Option<String> {
        let g = self.domain();
        let img = |x: Generator| self.image(x);
        let name = |x: Generator| x.display(g);
        for v in 0..g.vertex_count() {
            for w in 0..g.vertex_count() {
                let (pv, pw) = (img(Generator::Vertex(v)), img(Generator::Vertex(w)));
                let expected = if v == w { pv.clone() } else { self.zero() };
                if self.mul(pv, pw) != expected {
                    return Some(format!("vertex product {} {}", name(Generator::Vertex(v)), name(Generator::Vertex(w))));
                }
            }
        }
        for e in 0..g.edge_count() {
            let (pe, ps) = (img(Generator::Edge(e)), img(Generator::Ghost(e)));
            let src = img(Generator::Vertex(g.source(e)));
            let rng = img(Generator::Vertex(g.range(e)));
            if self.mul(src, pe) != *pe || self.mul(pe, rng) != *pe {
                return Some(format!("source and range of {}", name(Generator::Edge(e))));
            }
            if self.mul(rng, ps) != *ps || self.mul(ps, src) != *ps {
                return Some(format!("source and range of {}", name(Generator::Ghost(e))));
            }
            for f in 0..g.edge_count() {
                let expected = if e == f { rng.clone() } else { self.zero() };
                if self.mul(ps, img(Generator::Edge(f))) != expected {
                    return Some(format!("CK1 for {} {}", name(Generator::Ghost(e)), name(Generator::Edge(f))));
                }
            }
        }
        for v in 0..g.vertex_count() {
            if g.is_sink(v) {
                continue;
            }
            let mut sum = self.zero();
            for &e in g.emitted(v) {
                sum = sum.try_add(&self.mul(img(Generator::Edge(e)), img(Generator::Ghost(e)))).expect("same graphs");
            }
            if sum != *img(Generator::Vertex(v)) {
                return Some(format!("CK2 at {}", name(Generator::Vertex(v))));
            }
        }
        None
    }

    /// Checks that the images satisfy the relations of `L_K(E x F)`, so
    /// that the map is a well-defined algebra homomorphism.
    pub fn check_relations(&self) -> Result<(), CrossError> {
        self.relations
            .get_or_init(|| match self.find_violation() {
                Some(v) => Err(CrossError::RelationViolation(v)),
                None => Ok(()),
            })
            .clone()
    }

    /// The image of an element of `L_K(E x F)`.
    pub fn apply(&self, a: &LpaElement<K>) -> Result<TensorElement<K>, CrossError> {
        self.check_relations()?;
        if **a.graph() != **self.domain() {
            return Err(CrossError::GraphMismatch);
        }
        let mut out = self.zero();
        for (m, c) in a.terms() {
            let word = monomial_word(m);
            let mut t = self.image(word[0]).clone();
            for x in &word[1..] {
                t = self.mul(&t, self.image(*x));
            }
            out = out.try_add(&t.scale(c))?;
        }
        Ok(out)
    }
}

/// `phi(a)` for a generator map `phi`.
pub fn phi_apply<K: Field>(phi: &GeneratorMap<K>, a: &LpaElement<K>) -> Result<TensorElement<K>, CrossError> {
    phi.apply(a)
}

/// Rank of `phi` on the monomials of the domain, computed by exact linear
/// algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCheck {
    /// `None` when the whole (finite) basis of the domain was used.
    pub bound: Option<usize>,
    pub domain_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
}

/// Evidence that `phi` is injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityCertificate {
    /// Every vertex of the domain has a nonzero image.
    pub vertices_nonzero: usize,
    /// Every generator image is homogeneous of the generator's degree, so
    /// `phi` intertwines the gauge actions.
    pub generators_graded: usize,
    pub kernel: KernelCheck,
}

impl InjectivityCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices_nonzero": self.vertices_nonzero,
            "generators_graded": self.generators_graded,
            "kernel": {
                "bound": self.kernel.bound,
                "domain_dim": self.kernel.domain_dim,
                "rank": self.kernel.rank,
                "kernel_dim": self.kernel.kernel_dim,
            },
        })
    }
}

/// The dimension of the kernel of `phi` on the span of the domain monomials
/// (all of them when the domain is acyclic, else those with
/// `|mu|, |nu| <= bound`). Distinct normal monomials are independent in the
/// domain, so a nonzero kernel here is a nonzero kernel of `phi`.
pub fn kernel_check<K: Field>(phi: &GeneratorMap<K>, bound: usize) -> Result<KernelCheck, CrossError> {
    let g = phi.domain();
    let (basis, used_bound) = match basis_and_dimension(g) {
        Ok(b) => (b, None),
        Err(_) => (Basis::truncated(g, bound), Some(bound)),
    };
    let images: Vec<TensorElement<K>> = basis
        .monomials()
        .iter()
        .map(|m| phi.apply(&LpaElement::from_monomial(g, m.clone(), K::one())))
        .collect::<Result<_, _>>()?;
    let mut index: BTreeMap<(Monomial, Monomial), usize> = BTreeMap::new();
    for t in &images {
        for (k, _) in t.terms() {
            let n = index.len();
            index.entry(k.clone()).or_insert(n);
        }
    }
    let rows: Vec<Vec<K>> = images
        .iter()
        .map(|t| {
            let mut row = vec![K::zero(); index.len()];
            for (k, c) in t.terms() {
                row[index[k]] = c.clone();
            }
            row
        })
        .collect();
    let rank = if rows.is_empty() || index.is_empty() {
        0
    } else {
        Matrix::from_rows(rows).rank()
    };
    Ok(KernelCheck {
        bound: used_bound,
        domain_dim: basis.dim(),
        rank,
        kernel_dim: basis.dim() - rank,
    })
}

/// Certifies that `phi: L_K(E x F) -> L_K(E) (x) L_K(F)` is injective by
/// the graded uniqueness argument for the schematic gauge action: it is
/// enough that `phi` is a homomorphism, that no vertex is sent to zero, and
/// that `phi` commutes with the gauge actions, which holds exactly when each
/// generator image is homogeneous of the generator's degree.
///
/// The verdict is cross-checked against [`kernel_check`] at `bound`.
pub fn certify_injective<K: Field>(phi: &GeneratorMap<K>, bound: usize) -> Result<InjectivityCertificate, CrossError> {
    let g = phi.domain();
    for v in 0..g.vertex_count() {
        if phi.image(Generator::Vertex(v)).is_zero() {
            return Err(CrossError::VertexKilled(g.vertex_id(v).to_string()));
        }
    }
    let generators = Generator::all(g);
    for x in &generators {
        let image = phi.image(*x);
        if let Some(((a, b), _)) = image
            .terms()
            .find(|((a, b), _)| a.degree() != x.degree() || b.degree() != x.degree())
        {
            return Err(CrossError::NotGraded {
                generator: x.display(g),
                defect: format!(
                    "image has a term of bidegree ({}, {}), expected ({d}, {d})",
                    a.degree(),
                    b.degree(),
                    d = x.degree()
                ),
            });
        }
    }
    phi.check_relations()?;
    let kernel = kernel_check(phi, bound)?;
    if kernel.kernel_dim != 0 {
        return Err(CrossError::KernelDisagrees(kernel.kernel_dim));
    }
    Ok(InjectivityCertificate {
        vertices_nonzero: g.vertex_count(),
        generators_graded: generators.len(),
        kernel,
    })
}

use std::sync::Arc;

use super::phi::GeneratorMap;
use super::space::{fixed_subalgebra, CrossProductSpace};
use super::tensor::TensorElement;
use super::CrossError;
use crate::graph::Graph;
use crate::lpa::{Generator, LpaElement, Monomial};
use crate::scalars::Field;

/// An element of the target that the recursion could not reach, and why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unreached {
    pub target: String,
    pub reason: String,
}

/// Outcome of the surjectivity check over the basis of a target space.
#[derive(Clone, Debug)]
pub struct SurjectivityReport<K: Field> {
    pub bound: Option<usize>,
    /// Sinks of either factor. When present the recursion is not guaranteed
    /// to succeed and the report is advisory.
    pub sinks: Vec<String>,
    pub targets: usize,
    /// `(target, preimage)` for every reached basis element; each preimage
    /// was checked by applying the map.
    pub preimages: Vec<(String, LpaElement<K>)>,
    pub unreached: Vec<Unreached>,
}

impl<K: Field> SurjectivityReport<K> {
    pub fn is_surjective(&self) -> bool {
        self.unreached.is_empty()
    }

    pub fn is_advisory(&self) -> bool {
        !self.sinks.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "bound": self.bound,
            "targets": self.targets,
            "reached": self.preimages.len(),
            "unreached": self
                .unreached
                .iter()
                .map(|u| serde_json::json!({"target": u.target, "reason": u.reason}))
                .collect::<Vec<_>>(),
            "sinks": self.sinks,
        })
    }
}

struct Recursion<'a, K: Field> {
    phi: &'a GeneratorMap<K>,
    left: &'a Arc<Graph>,
    right: &'a Arc<Graph>,
}

impl<K: Field> Recursion<'_, K> {
    fn domain(&self) -> &Arc<Graph> {
        self.phi.domain()
    }

    fn vertex(&self, u: usize, v: usize) -> LpaElement<K> {
        LpaElement::generator(self.domain(), Generator::Vertex(self.phi.product().vertex_of(u, v)))
    }

    fn edge(&self, f: usize, g: usize) -> LpaElement<K> {
        LpaElement::generator(self.domain(), Generator::Edge(self.phi.product().edge_of(f, g)))
    }

    fn ghost(&self, f: usize, g: usize) -> LpaElement<K> {
        LpaElement::generator(self.domain(), Generator::Ghost(self.phi.product().edge_of(f, g)))
    }

    /// A preimage of `mu tau* (x) u` with `|mu| = |tau|`, where `w` is the
    /// range of `mu` when `mu` is a vertex. Expands `u = sum_i g_i g_i*` in
    /// the second factor and recurses on the tails of `mu` and `tau`.
    fn left_pattern(&self, w: usize, mu: &[usize], tau: &[usize], u: usize) -> Result<LpaElement<K>, String> {
        debug_assert_eq!(mu.len(), tau.len());
        let (Some((&f, mu_rest)), Some((&h, tau_rest))) = (mu.split_first(), tau.split_first()) else {
            return Ok(self.vertex(w, u));
        };
        let out_edges = self.right.emitted(u);
        if out_edges.is_empty() {
            return Err(format!("{} is a sink, so it cannot be expanded", self.right.vertex_id(u)));
        }
        assert!(mu_rest.len() + tau_rest.len() < mu.len() + tau.len(), "recursion measure must decrease");
        let mut sum = LpaElement::zero(self.domain());
        for &g in out_edges {
            let inner = self.left_pattern(self.left.range(f), mu_rest, tau_rest, self.right.range(g))?;
            sum = &sum + &(&(&self.edge(f, g) * &inner) * &self.ghost(h, g));
        }
        Ok(sum)
    }

    /// The mirror image: a preimage of `v (x) sigma delta*` with
    /// `|sigma| = |delta|`, expanding `v` in the first factor.
    fn right_pattern(&self, v: usize, sigma: &[usize], delta: &[usize], w: usize) -> Result<LpaElement<K>, String> {
        debug_assert_eq!(sigma.len(), delta.len());
        let (Some((&g, sigma_rest)), Some((&k, delta_rest))) = (sigma.split_first(), delta.split_first()) else {
            return Ok(self.vertex(v, w));
        };
        let out_edges = self.left.emitted(v);
        if out_edges.is_empty() {
            return Err(format!("{} is a sink, so it cannot be expanded", self.left.vertex_id(v)));
        }
        assert!(sigma_rest.len() + delta_rest.len() < sigma.len() + delta.len(), "recursion measure must decrease");
        let mut sum = LpaElement::zero(self.domain());
        for &f in out_edges {
            let inner = self.right_pattern(self.left.range(f), sigma_rest, delta_rest, self.right.range(g))?;
            sum = &sum + &(&(&self.edge(f, g) * &inner) * &self.ghost(f, k));
        }
        Ok(sum)
    }

    /// `mu tau* (x) sigma delta*` with matching degrees, written as
    /// `(f_1 (x) g_1)...(f_p (x) g_p) * core * (h_q* (x) k_q*)...(h_1* (x) k_1*)`
    /// by peeling edges off the fronts of `mu, sigma` and of `tau, delta`.
    /// The core has a vertex on one side and is handled by one of the two
    /// patterns above.
    fn preimage(&self, a: &Monomial, b: &Monomial) -> Result<LpaElement<K>, String> {
        if a.degree() != b.degree() {
            return Err("the factors have different degrees".to_string());
        }
        let (mu, tau) = (a.mu().edges(), a.nu().edges());
        let (sigma, delta) = (b.mu().edges(), b.nu().edges());
        let front = mu.len().min(sigma.len());
        let back = tau.len().min(delta.len());
        let (mu_r, tau_r) = (&mu[front..], &tau[back..]);
        let (sigma_r, delta_r) = (&sigma[front..], &delta[back..]);
        let core = if sigma_r.is_empty() && delta_r.is_empty() {
            self.left_pattern(a.range(self.left), mu_r, tau_r, b.range(self.right))?
        } else {
            // then mu_r and tau_r are both empty
            self.right_pattern(a.range(self.left), sigma_r, delta_r, b.range(self.right))?
        };
        let mut out = core;
        for i in (0..front).rev() {
            out = &self.edge(mu[i], sigma[i]) * &out;
        }
        for i in (0..back).rev() {
            out = &out * &self.ghost(tau[i], delta[i]);
        }
        Ok(out)
    }
}

/// A preimage of `a (x) b` under `phi`, found by the recursion; `a` and `b`
/// need not be in normal form. The result is checked by applying `phi`.
pub fn preimage<K: Field>(phi: &GeneratorMap<K>, a: &Monomial, b: &Monomial) -> Result<LpaElement<K>, String> {
    let product = phi.product();
    let rec = Recursion {
        phi,
        left: &product.left,
        right: &product.right,
    };
    let pre = rec.preimage(a, b)?;
    let target = TensorElement::from_monomials(&product.left, &product.right, a.clone(), b.clone(), K::one());
    let image = phi.apply(&pre).map_err(|e| e.to_string())?;
    if image != target {
        return Err(format!("the candidate preimage maps to {image}"));
    }
    Ok(pre)
}

/// Runs the recursion on every basis element of `space`.
pub fn verify_surjective_onto<K: Field>(
    phi: &GeneratorMap<K>,
    space: &CrossProductSpace,
) -> Result<SurjectivityReport<K>, CrossError> {
    phi.check_relations()?;
    let product = phi.product();
    let mut sinks: Vec<String> = product.left.sinks().iter().map(|&v| format!("{} (left)", product.left.vertex_id(v))).collect();
    sinks.extend(product.right.sinks().iter().map(|&v| format!("{} (right)", product.right.vertex_id(v))));
    let mut preimages = Vec::new();
    let mut unreached = Vec::new();
    for (i, (a, b)) in space.basis().iter().enumerate() {
        let target = space.display_pair(i);
        match preimage(phi, a, b) {
            Ok(p) => preimages.push((target, p)),
            Err(reason) => unreached.push(Unreached { target, reason }),
        }
    }
    Ok(SurjectivityReport {
        bound: space.bound(),
        sinks,
        targets: space.dim(),
        preimages,
        unreached,
    })
}

/// Whether every basis element of the cross product (with factor lengths at
/// most `bound`, or all of them for acyclic factors) is reached.
pub fn verify_surjective<K: Field>(
    phi: &GeneratorMap<K>,
    bound: Option<usize>,
) -> Result<SurjectivityReport<K>, CrossError> {
    let product = phi.product();
    let space = fixed_subalgebra::<K>(&product.left, &product.right, bound)?;
    verify_surjective_onto(phi, &space)
}

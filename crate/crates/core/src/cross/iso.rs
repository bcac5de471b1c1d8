use std::fmt;
use std::sync::Arc;

use super::phi::{certify_injective, GeneratorMap, InjectivityCertificate};
use super::space::{fixed_subalgebra, naive_tensor_space};
use super::surjective::{verify_surjective_onto, SurjectivityReport};
use super::CrossError;
use crate::graph::{product_graph, Graph};
use crate::lpa::basis_and_dimension;
use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Both algebras are finite-dimensional; `phi` is injective and onto.
    ProvenExactly { dim: usize },
    /// `phi` is injective and reaches every target basis element whose
    /// factors use paths of length at most `bound`.
    ProvenAtBound { bound: usize },
    /// Some check did not go through; the diagnostics say which.
    HypothesisFailed(Vec<String>),
    NotIsomorphic(String),
}

impl IsoVerdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, IsoVerdict::ProvenExactly { .. } | IsoVerdict::ProvenAtBound { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::ProvenExactly { .. } => "proven-exactly",
            IsoVerdict::ProvenAtBound { .. } => "proven-at-bound",
            IsoVerdict::HypothesisFailed(_) => "hypothesis-failed",
            IsoVerdict::NotIsomorphic(_) => "not-isomorphic",
        }
    }
}

impl fmt::Display for IsoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoVerdict::ProvenExactly { dim } => write!(f, "proven exactly in dimension {dim}"),
            IsoVerdict::ProvenAtBound { bound } => write!(f, "proven at bound {bound}"),
            IsoVerdict::HypothesisFailed(ds) => write!(f, "hypothesis failed: {}", ds.join("; ")),
            IsoVerdict::NotIsomorphic(why) => write!(f, "not isomorphic: {why}"),
        }
    }
}

/// Dimensions of the target and of `L_K(E x F)`, when both are finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dimensions {
    pub target: usize,
    pub product_graph: usize,
}

#[derive(Clone, Debug)]
pub struct IsoReport<K: Field> {
    pub verdict: IsoVerdict,
    /// Whether the target was the unrestricted tensor product.
    pub naive: bool,
    pub injective: Result<InjectivityCertificate, CrossError>,
    pub surjective: SurjectivityReport<K>,
    pub dimensions: Option<Dimensions>,
    pub advisory: Option<String>,
}

impl<K: Field> IsoReport<K> {
    pub fn to_json(&self) -> serde_json::Value {
        let injective = match &self.injective {
            Ok(c) => c.to_json(),
            Err(e) => serde_json::json!({ "error": e.to_string() }),
        };
        serde_json::json!({
            "verdict": self.verdict.label(),
            "detail": self.verdict.to_string(),
            "naive": self.naive,
            "injective": injective,
            "surjective": self.surjective.to_json(),
            "dimensions": self.dimensions.map(|d| serde_json::json!({
                "target": d.target,
                "product_graph": d.product_graph,
            })),
            "advisory": self.advisory,
        })
    }
}

/// Compares `L_K(E) (x)_GL1 L_K(F)` (or, with `naive`, the unrestricted
/// tensor product) with `L_K(E x F)` through the canonical map `phi`.
///
/// When both graphs are acyclic everything is finite and the comparison is
/// exact. Otherwise `bound` truncates both the target basis and the domain
/// used for the kernel check.
pub fn verify_iso<K: Field>(
    left: &Arc<Graph>,
    right: &Arc<Graph>,
    bound: usize,
    naive: bool,
) -> Result<IsoReport<K>, CrossError> {
    let product = product_graph(left, right)?;
    let phi = GeneratorMap::<K>::canonical(&product);
    let finite = left.is_acyclic() && right.is_acyclic();
    let space_bound = if finite { None } else { Some(bound) };
    let space = if naive {
        naive_tensor_space(left, right, space_bound)?
    } else {
        fixed_subalgebra::<K>(left, right, space_bound)?
    };
    let injective = certify_injective(&phi, bound);
    let surjective = verify_surjective_onto(&phi, &space)?;
    let dimensions = if finite {
        let domain = basis_and_dimension(&product.graph)?;
        Some(Dimensions {
            target: space.dim(),
            product_graph: domain.dim(),
        })
    } else {
        None
    };
    let mixed = space.basis().iter().filter(|(a, b)| a.degree() != b.degree()).count();

    let verdict = if let Some(d) = dimensions.filter(|d| d.target != d.product_graph) {
        IsoVerdict::NotIsomorphic(format!("dimension {} against {}", d.target, d.product_graph))
    } else if mixed > 0 {
        // phi is graded, so its image is spanned by degree-matched tensors
        IsoVerdict::NotIsomorphic(format!("{mixed} target basis elements have factors of different degrees"))
    } else {
        let mut diagnostics = Vec::new();
        if let Err(e) = &injective {
            diagnostics.push(format!("injectivity: {e}"));
        }
        for u in &surjective.unreached {
            diagnostics.push(format!("{} not reached: {}", u.target, u.reason));
        }
        match (diagnostics.is_empty(), dimensions) {
            (false, _) => IsoVerdict::HypothesisFailed(diagnostics),
            (true, Some(d)) => IsoVerdict::ProvenExactly { dim: d.target },
            (true, None) => IsoVerdict::ProvenAtBound { bound },
        }
    };
    let advisory = surjective.is_advisory().then(|| {
        format!(
            "sinks present ({}): surjectivity was checked element by element and is not guaranteed in general",
            surjective.sinks.join(", ")
        )
    });
    Ok(IsoReport {
        verdict,
        naive,
        injective,
        surjective,
        dimensions,
        advisory,
    })
}

//! Tensor products of Leavitt path algebras under the gauge action.
//!
//! `GL_1` acts on `L_K(E) (x) L_K(F)` by `rho(z) (x) sigma(z^-1)`. Its fixed
//! points, the cross product, are the sums of `a (x) b` with
//! `deg a = deg b`. The canonical map `phi: L_K(E x F) -> L_K(E) (x)_GL1 L_K(F)`
//! is checked to be injective (graded uniqueness) and onto (an explicit
//! preimage for every basis element), which compares the cross product with
//! the algebra of the product graph.

mod iso;
mod phi;
mod space;
mod surjective;
mod tensor;
#[cfg(test)]
mod tests;

use thiserror::Error;

use crate::gauge::GaugeError;
use crate::graph::GraphError;
use crate::lpa::LpaError;

pub use iso::{verify_iso, Dimensions, IsoReport, IsoVerdict};
pub use phi::{certify_injective, kernel_check, phi_apply, GeneratorMap, InjectivityCertificate, KernelCheck};
pub use space::{cross_grading, fixed_subalgebra, naive_tensor_space, CrossProductSpace};
pub use surjective::{preimage, verify_surjective, verify_surjective_onto, SurjectivityReport, Unreached};
pub use tensor::{
    tensor_action_apply, tensor_action_direct, tensor_extension, tensor_from_extension, TensorElement,
    TensorExtension,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossError {
    #[error("{0} has factors of different degrees, so it is not in the cross product")]
    NotInCrossProduct(String),
    #[error("tensors live over different graphs")]
    GraphMismatch,
    #[error("a factor graph has a cycle; a length bound is required")]
    BoundRequired,
    #[error("the generator images violate a relation: {0}")]
    RelationViolation(String),
    #[error("vertex {0} is sent to zero")]
    VertexKilled(String),
    #[error("the image of {generator} is not homogeneous of the right degree: {defect}")]
    NotGraded { generator: String, defect: String },
    #[error("the kernel check found a kernel of dimension {0}")]
    KernelDisagrees(usize),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error(transparent)]
    Lpa(#[from] LpaError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

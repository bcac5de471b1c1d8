//! Leavitt path algebras `L_K(E)` in normal form.
//!
//! Elements are finite combinations of monomials `mu nu*`. The relations are
//! the usual ones: vertices are orthogonal idempotents, `s(e) e = e = e r(e)`,
//! `e* f = delta_{e,f} r(e)`, and `v = sum_{s(e) = v} e e*` at every regular
//! vertex. The last relation is oriented as a rewrite that eliminates
//! `gamma(v) gamma(v)*`, where `gamma(v)` is the first edge `v` emits in the
//! graph's edge order.

mod basis;
mod element;
mod laurent;
mod monomial;
pub mod rewrite;
mod serde_io;

use thiserror::Error;

use crate::graph::GraphError;
use crate::scalars::ScalarError;

pub use basis::{basis_and_dimension, degree_dimensions, normal_monomials, sink_path_dimension, Basis};
pub use element::{GradedDecomposition, Generator, LpaElement};
pub use laurent::{from_laurent, is_loop_graph, laurent_realize};
pub use monomial::Monomial;
pub use serde_io::TermJson;

pub(crate) use element::same_graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpaError {
    #[error("unknown vertex or edge id `{0}`")]
    UnknownId(String),
    #[error("operands live over different graphs")]
    GraphMismatch,
    #[error("the graph has a cycle, so its Leavitt path algebra is infinite-dimensional")]
    InfiniteDimensional,
    #[error("expected the graph with one vertex and one loop")]
    NotLoopGraph,
    #[error("modulus must be at least 1")]
    InvalidModulus,
    #[error("malformed term: {0}")]
    MalformedTerm(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

//! Exact computation with Leavitt path algebras of finite graphs.
//!
//! The crate covers the canonical `Z`-grading and its `Z_n` coarsenings, the
//! classical gauge action of `K^x`, the gauge action as a representation of the
//! group scheme `GL_1` evaluated on commutative test algebras, graded ideals,
//! and the cross product of two Leavitt path algebras together with its
//! comparison against the algebra of the product graph.
//!
//! All arithmetic is exact. Algebraic structures are generic over a
//! [`Field`]; the aliases below name the fields used most often.

pub mod cross;
pub mod gauge;
pub mod graph;
pub mod ideals;
pub mod linalg;
pub mod lpa;
pub mod scalars;

#[cfg(test)]
mod test_support;

pub use graph::{Graph, Path, ProductGraph};
pub use lpa::{LpaElement, Monomial};
pub use scalars::{Field, FieldSpec, Fp, Scalar, TestAlgebra, TestAlgebraElement};

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type F11 = Fp<11>;
pub type F13 = Fp<13>;
/// The rationals, with arbitrary-precision numerator and denominator.
pub type Q = num_rational::BigRational;

//! Exact scalars and the commutative test algebras.

mod field;
mod scalar;
mod test_algebra;

pub use field::{sample_units, Field, Fp};
pub use scalar::{ArithOp, FieldSpec, Scalar, ScalarError, ScalarValue};
pub use test_algebra::{enumerate_units, AlgebraError, TestAlgebra, TestAlgebraElement, TestAlgebraElementJson};

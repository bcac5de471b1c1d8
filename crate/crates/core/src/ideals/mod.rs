//! Two-sided ideals, their gradedness, and invariance under gauge actions.
//!
//! Two regimes are exact: finite-dimensional algebras of acyclic graphs, where
//! an ideal is held as an echelon basis, and the algebra of the single loop,
//! which is `K[x, x^-1]` and where every ideal is principal.

mod finite;
mod laurent;
#[cfg(test)]
mod tests;
mod vandermonde;

use std::sync::Arc;

use thiserror::Error;

use crate::gauge::{classical_apply, GaugeAction};
use crate::graph::Graph;
use crate::lpa::{LpaElement, LpaError};
use crate::scalars::{sample_units, Field};

pub use finite::{ideal_generated_by, IdealBasis};
pub use laurent::LaurentIdeal;
pub use vandermonde::{vandermonde_split, vandermonde_split_window};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("the graph has a cycle, so ideals cannot be held as finite bases")]
    InfiniteDimensional,
    #[error("the unit group of the field is infinite; supply a sampling bound")]
    InfiniteUnitGroup,
    #[error("need {needed} distinct nonzero scalars to separate the degrees, only {available} available")]
    NotEnoughDistinctUnits { needed: usize, available: usize },
    #[error("Laurent ideals live in the algebra of the single loop")]
    NotLoopGraph,
    #[error("generators live over different graphs")]
    GraphMismatch,
    #[error(transparent)]
    Lpa(#[from] LpaError),
}

/// A two-sided ideal `I` of `L_K(E)` together with a finite test set `S`: a
/// subset of `I` such that `I` is graded exactly when every homogeneous
/// component of every element of `S` lies in `I`, and `I` is stable under an
/// automorphism of `L_K(E)` that preserves degrees exactly when the
/// automorphism maps `S` into `I`.
///
/// For an ideal given by a vector-space basis, `S` is that basis; for a
/// principal ideal of `K[x, x^-1]`, `S` is the generator.
pub trait TwoSidedIdeal<K: Field> {
    fn graph(&self) -> &Arc<Graph>;

    fn contains(&self, a: &LpaElement<K>) -> bool;

    fn test_set(&self) -> Vec<LpaElement<K>>;
}

/// Outcome of a gradedness check: `witness` is an element of the test set
/// and a degree whose component escapes the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCheck<K: Field> {
    pub graded: bool,
    pub witness: Option<(LpaElement<K>, i64)>,
}

/// Whether every homogeneous component of every test element stays inside.
pub fn is_graded_ideal<K: Field, I: TwoSidedIdeal<K> + ?Sized>(ideal: &I) -> GradedCheck<K> {
    for b in ideal.test_set() {
        for (d, comp) in b.grade().components() {
            if !ideal.contains(comp) {
                return GradedCheck {
                    graded: false,
                    witness: Some((b, *d)),
                };
            }
        }
    }
    GradedCheck {
        graded: true,
        witness: None,
    }
}

/// `tau(z)(I) in I` for every unit `z` of the field, or for `1, ..., bound`
/// when the field is infinite.
pub fn is_classically_invariant<K: Field, I: TwoSidedIdeal<K> + ?Sized>(
    ideal: &I,
    bound: Option<u64>,
) -> Result<bool, IdealError> {
    let units = match (K::units(), bound) {
        (Some(us), _) => us,
        (None, Some(b)) => sample_units(b),
        (None, None) => return Err(IdealError::InfiniteUnitGroup),
    };
    Ok(ideal.test_set().iter().all(|b| {
        units
            .iter()
            .all(|z| ideal.contains(&classical_apply(z, b).expect("units are nonzero")))
    }))
}

/// `rho_R(z)(I (x) 1) in I (x) R` for every test algebra `R` and unit `z`.
///
/// It suffices to check the universal point `z = x` of `K[x, x^-1]`, which
/// is done here: `rho(x)(b (x) 1) = sum_n b_n (x) x^n` lies in `I (x) R`
/// exactly when each coefficient `b_n` lies in `I`, because the powers of
/// `x` are a basis of `R`.
pub fn is_schematically_invariant<K: Field, I: TwoSidedIdeal<K> + ?Sized>(ideal: &I) -> bool {
    let rho = GaugeAction::lpa(ideal.graph());
    ideal.test_set().iter().all(|b| {
        let image = rho.universal(b);
        image
            .exponents()
            .into_iter()
            .all(|n| ideal.contains(&image.lpa_coefficient(ideal.graph(), n)))
    })
}

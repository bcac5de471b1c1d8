use std::collections::BTreeMap;
use std::sync::Arc;

use super::extension::{Extension, LpaTensor};
use super::{GaugeError, GradingGroup};
use crate::graph::Graph;
use crate::lpa::{LpaElement, Monomial};
use crate::scalars::{sample_units, Field, TestAlgebraElement};

/// What the group acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeSpace {
    /// `L_K(E)` with its canonical grading.
    Lpa(Arc<Graph>),
    /// `K^d` with coordinate `i` homogeneous of degree `degrees[i]`.
    Module { degrees: Vec<i64> },
}

/// A representation of the diagonalizable group scheme of a grading group,
/// backed by a grading. A point `z in R` acts on `V (x) R` by multiplying the
/// coordinate of every degree-`d` basis vector by `z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeAction {
    space: GaugeSpace,
    group: GradingGroup,
}

impl GaugeAction {
    /// The gauge action of `L_K(E)`: the group scheme `GL_1` acting through
    /// the canonical `Z`-grading.
    pub fn lpa(graph: &Arc<Graph>) -> Self {
        GaugeAction {
            space: GaugeSpace::Lpa(Arc::clone(graph)),
            group: GradingGroup::Integers,
        }
    }

    /// The action of `mu_n` through the canonical `Z_n`-grading.
    pub fn coarsened(graph: &Arc<Graph>, n: u64) -> Result<Self, GaugeError> {
        Ok(GaugeAction {
            space: GaugeSpace::Lpa(Arc::clone(graph)),
            group: GradingGroup::cyclic(n)?,
        })
    }

    pub fn module(degrees: Vec<i64>, group: GradingGroup) -> Self {
        let degrees = degrees.into_iter().map(|d| group.reduce(d)).collect();
        GaugeAction {
            space: GaugeSpace::Module { degrees },
            group,
        }
    }

    pub fn space(&self) -> &GaugeSpace {
        &self.space
    }

    pub fn group(&self) -> GradingGroup {
        self.group
    }

    fn graph(&self) -> &Arc<Graph> {
        match &self.space {
            GaugeSpace::Lpa(g) => g,
            GaugeSpace::Module { .. } => panic!("module action has no graph"),
        }
    }

    /// Rejects `z` unless it is an `R`-point of the group scheme: a unit, and
    /// for `Z_n` an `n`-th root of unity.
    pub fn check_point<K: Field>(&self, z: &TestAlgebraElement<K>) -> Result<(), GaugeError> {
        if !z.is_unit() {
            return Err(GaugeError::NotAUnit(z.to_string()));
        }
        if let GradingGroup::Cyclic(n) = self.group {
            if !z.pow(n as i64)?.is_one() {
                return Err(GaugeError::NotInGroup {
                    element: z.to_string(),
                    group: self.group,
                    algebra: z.algebra(),
                });
            }
        }
        Ok(())
    }

    fn twist<T: Ord + Clone, K: Field>(
        &self,
        z: &TestAlgebraElement<K>,
        t: &Extension<T, K>,
        degree: impl Fn(&T) -> i64,
    ) -> Result<Extension<T, K>, GaugeError> {
        self.check_point(z)?;
        if t.algebra() != z.algebra() {
            return Err(GaugeError::WrongTestAlgebra {
                expected: z.algebra(),
                found: t.algebra(),
            });
        }
        let mut powers: BTreeMap<i64, TestAlgebraElement<K>> = BTreeMap::new();
        t.scale_each(|x| {
            let d = self.group.reduce(degree(x));
            if let Some(p) = powers.get(&d) {
                return Ok(p.clone());
            }
            let p = z.pow(d)?;
            powers.insert(d, p.clone());
            Ok(p)
        })
    }

    /// `rho_R(z)` on `L_K(E) (x) R`.
    pub fn apply<K: Field>(&self, z: &TestAlgebraElement<K>, t: &LpaTensor<K>) -> Result<LpaTensor<K>, GaugeError> {
        assert!(matches!(self.space, GaugeSpace::Lpa(_)), "apply on a module action");
        self.twist(z, t, Monomial::degree)
    }

    /// `rho_R(z)` on `K^d (x) R`.
    pub fn apply_module<K: Field>(
        &self,
        z: &TestAlgebraElement<K>,
        v: &Extension<usize, K>,
    ) -> Result<Extension<usize, K>, GaugeError> {
        let GaugeSpace::Module { degrees } = &self.space else {
            panic!("apply_module on an algebra action");
        };
        if let Some((&i, _)) = v.terms().find(|(i, _)| **i >= degrees.len()) {
            return Err(GaugeError::DimensionMismatch {
                expected: degrees.len(),
                found: i + 1,
            });
        }
        self.twist(z, v, |&i| degrees[i])
    }

    /// `rho_R(z)(a (x) 1)`.
    pub fn act<K: Field>(&self, z: &TestAlgebraElement<K>, a: &LpaElement<K>) -> Result<LpaTensor<K>, GaugeError> {
        self.apply(z, &Extension::from_lpa(a, z.algebra()))
    }

    /// The action at the universal point: `R = K Lambda`, `z = x`.
    pub fn universal<K: Field>(&self, a: &LpaElement<K>) -> LpaTensor<K> {
        let x = TestAlgebraElement::x(self.group.representing_algebra()).expect("group algebras have x");
        self.act(&x, a).expect("x is a point of the group")
    }

    /// `rho_R(z)(a (x) 1)` obtained by pushing the universal value forward
    /// along the algebra map `K Lambda -> R` sending `x` to `z`.
    pub fn act_via_universal<K: Field>(&self, z: &TestAlgebraElement<K>, a: &LpaElement<K>) -> Result<LpaTensor<K>, GaugeError> {
        self.check_point(z)?;
        self.universal(a).push_forward(z.algebra(), |p| Ok(p.evaluate_at(z)?))
    }

    /// Every nonzero homogeneous component of `a`, read off the universal value.
    pub fn components<K: Field>(&self, a: &LpaElement<K>) -> BTreeMap<i64, LpaElement<K>> {
        let u = self.universal(a);
        u.exponents()
            .into_iter()
            .map(|n| (n, u.lpa_coefficient(self.graph(), n)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// `A_n` membership read off the universal value: the `x^n` coefficient.
    pub fn recover<K: Field>(&self, a: &LpaElement<K>, n: i64) -> LpaElement<K> {
        self.universal(a).lpa_coefficient(self.graph(), self.group.reduce(n))
    }
}

/// `tau(z)`: scales each degree-`n` term by `z^n`.
pub fn classical_apply<K: Field>(z: &K, a: &LpaElement<K>) -> Result<LpaElement<K>, GaugeError> {
    if z.is_zero() {
        return Err(GaugeError::ZeroScalar);
    }
    Ok(a.scale_by_degree(|d| z.pow_i(d).expect("z is a unit")))
}

/// The degree-`n` component of `a` recovered from the schematic action.
pub fn recover_component<K: Field>(a: &LpaElement<K>, n: i64) -> LpaElement<K> {
    GaugeAction::lpa(a.graph()).recover(a, n)
}

/// The part of `a` in `{x : tau(z) x = z^n x for every z in units}`: the sum
/// of the components whose degree `d` has `z^d = z^n` for all listed `z`.
pub fn classical_eigenspace_with_units<K: Field>(a: &LpaElement<K>, n: i64, units: &[K]) -> LpaElement<K> {
    let keep = |d: i64| {
        units
            .iter()
            .all(|z| z.pow_i(d).expect("unit") == z.pow_i(n).expect("unit"))
    };
    let grade = a.grade();
    grade
        .components()
        .iter()
        .filter(|(d, _)| keep(**d))
        .fold(LpaElement::zero(a.graph()), |acc, (_, c)| &acc + c)
}

/// [`classical_eigenspace_with_units`] over the whole unit group of a finite
/// field, or over `1, ..., bound` in characteristic zero.
pub fn classical_eigenspace<K: Field>(a: &LpaElement<K>, n: i64, bound: Option<u64>) -> Result<LpaElement<K>, GaugeError> {
    let units = match (K::units(), bound) {
        (Some(us), _) => us,
        (None, Some(b)) => sample_units(b),
        (None, None) => return Err(GaugeError::InfiniteUnitGroup),
    };
    Ok(classical_eigenspace_with_units(a, n, &units))
}

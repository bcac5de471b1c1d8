use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::CrossError;
use crate::gauge::{Extension, GaugeAction, GaugeError, GaugeSpace};
use crate::graph::Graph;
use crate::lpa::{same_graph, LpaElement, Monomial};
use crate::scalars::{Field, TestAlgebra, TestAlgebraElement};

/// An element of `L_K(E) (x) L_K(F)` in the basis of pairs of normal-form
/// monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement<K> {
    left: Arc<Graph>,
    right: Arc<Graph>,
    terms: BTreeMap<(Monomial, Monomial), K>,
}

impl<K: Field> fmt::Debug for TensorElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: Field> fmt::Display for TensorElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            write!(f, "{}", pair_display(&self.left, &self.right, a, b))?;
        }
        Ok(())
    }
}

pub(crate) fn pair_display(left: &Graph, right: &Graph, a: &Monomial, b: &Monomial) -> String {
    format!("{} (x) {}", a.display(left), b.display(right))
}

fn add_to<K: Field>(terms: &mut BTreeMap<(Monomial, Monomial), K>, key: (Monomial, Monomial), c: K) {
    if c.is_zero() {
        return;
    }
    let sum = match terms.remove(&key) {
        Some(old) => old + c,
        None => c,
    };
    if !sum.is_zero() {
        terms.insert(key, sum);
    }
}

impl<K: Field> TensorElement<K> {
    pub fn zero(left: &Arc<Graph>, right: &Arc<Graph>) -> Self {
        TensorElement {
            left: Arc::clone(left),
            right: Arc::clone(right),
            terms: BTreeMap::new(),
        }
    }

    /// `a (x) b`, expanded bilinearly.
    pub fn pure(a: &LpaElement<K>, b: &LpaElement<K>) -> Self {
        let mut out = Self::zero(a.graph(), b.graph());
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                add_to(&mut out.terms, (ma.clone(), mb.clone()), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// `c * (a (x) b)` for arbitrary monomials, each reduced to normal form.
    pub fn from_monomials(left: &Arc<Graph>, right: &Arc<Graph>, a: Monomial, b: Monomial, c: K) -> Self {
        Self::pure(&LpaElement::from_monomial(left, a, c), &LpaElement::from_monomial(right, b, K::one()))
    }

    pub fn left(&self) -> &Arc<Graph> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Graph> {
        &self.right
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &Monomial, b: &Monomial) -> K {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(K::zero)
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

    /// Whether both factors of every term have the same degree.
    pub fn is_degree_matched(&self) -> bool {
        self.terms.keys().all(|(a, b)| a.degree() == b.degree())
    }

    fn check_graphs(&self, other: &Self) -> Result<(), CrossError> {
        if same_graph(&self.left, &other.left) && same_graph(&self.right, &other.right) {
            Ok(())
        } else {
            Err(CrossError::GraphMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CrossError> {
        self.check_graphs(other)?;
        let mut out = self.clone();
        for (k, c) in other.terms() {
            add_to(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero(&self.left, &self.right);
        for (k, x) in self.terms() {
            add_to(&mut out.terms, k.clone(), x.clone() * c.clone());
        }
        out
    }

    /// `(a (x) b)(c (x) d) = ac (x) bd`, extended bilinearly.
    pub fn multiply(&self, other: &Self) -> Result<Self, CrossError> {
        self.check_graphs(other)?;
        let mut out = Self::zero(&self.left, &self.right);
        for ((a, b), x) in self.terms() {
            let ea = LpaElement::from_monomial(&self.left, a.clone(), x.clone());
            let eb = LpaElement::from_monomial(&self.right, b.clone(), K::one());
            for ((c, d), y) in other.terms() {
                let ac = ea.multiply(&LpaElement::from_monomial(&self.left, c.clone(), y.clone()))?;
                if ac.is_zero() {
                    continue;
                }
                let bd = eb.multiply(&LpaElement::from_monomial(&self.right, d.clone(), K::one()))?;
                for (k, z) in Self::pure(&ac, &bd).terms {
                    add_to(&mut out.terms, k, z);
                }
            }
        }
        Ok(out)
    }

    /// Serialized as a list of `{left, right, coeff}` entries in term order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .map(|((a, b), c)| {
                    serde_json::json!({
                        "left": a.display(&self.left),
                        "right": b.display(&self.right),
                        "coeff": c.to_string(),
                    })
                })
                .collect(),
        )
    }
}

/// `(A (x) B) (x) R`, keyed by pairs of monomials.
pub type TensorExtension<K> = Extension<(Monomial, Monomial), K>;

/// `t (x) 1` in `(A (x) B) (x) R`.
pub fn tensor_extension<K: Field>(t: &TensorElement<K>, algebra: TestAlgebra) -> TensorExtension<K> {
    Extension::from_scalars(algebra, t.terms().map(|(k, c)| (k.clone(), c.clone())))
}

/// Reads `t (x) 1` back as a tensor, or `None` if some coefficient is not a
/// constant.
pub fn tensor_from_extension<K: Field>(
    left: &Arc<Graph>,
    right: &Arc<Graph>,
    t: &TensorExtension<K>,
) -> Option<TensorElement<K>> {
    let mut out = TensorElement::zero(left, right);
    for (k, r) in t.terms() {
        if r.support().iter().any(|&e| e != 0) {
            return None;
        }
        add_to(&mut out.terms, k.clone(), r.coeff(0));
    }
    Some(out)
}

/// The tensor product action `(rho (x) sigma)_R(z)` on `(A (x) B) (x) R`,
/// computed as the composition
/// `(1 (x) mult) . swap^-1 . (rho_R(z) (x) sigma_R(z^-1)) . swap . (1 (x) delta)`
/// with `delta(r) = r (x) 1` and `swap(a (x) b (x) r (x) r') = a (x) r (x) b (x) r'`.
pub fn tensor_action_apply<K: Field>(
    rho: &GaugeAction,
    sigma: &GaugeAction,
    z: &TestAlgebraElement<K>,
    t: &TensorExtension<K>,
) -> Result<TensorExtension<K>, GaugeError> {
    if !z.is_unit() {
        return Err(GaugeError::NotAUnit(z.to_string()));
    }
    let r = z.algebra();
    if t.algebra() != r {
        return Err(GaugeError::WrongTestAlgebra {
            expected: r,
            found: t.algebra(),
        });
    }
    let z_inv = z.inverse()?;
    let (left, right) = match (rho.space(), sigma.space()) {
        (GaugeSpace::Lpa(l), GaugeSpace::Lpa(r)) => (Arc::clone(l), Arc::clone(r)),
        _ => panic!("tensor action of module actions"),
    };

    // 1 (x) delta: a (x) b (x) r  ->  a (x) b (x) r (x) 1, keyed by the two
    // monomials and the exponents of the two copies of R
    let mut doubled: BTreeMap<(Monomial, Monomial, i64, i64), K> = BTreeMap::new();
    for ((a, b), coeff) in t.terms() {
        for (i, c) in coeff.terms() {
            doubled.insert((a.clone(), b.clone(), i, 0), c.clone());
        }
    }

    // swap: a (x) b (x) r (x) r'  ->  (a (x) r) (x) (b (x) r')
    let swapped: Vec<((Monomial, i64), (Monomial, i64), K)> = doubled
        .into_iter()
        .map(|((a, b, i, j), c)| ((a, i), (b, j), c))
        .collect();

    // rho_R(z) (x) sigma_R(z^-1), applied factorwise
    let mut moved: BTreeMap<(Monomial, i64, Monomial, i64), K> = BTreeMap::new();
    for ((a, i), (b, j), c) in swapped {
        let ar = Extension::from_lpa_times(
            &LpaElement::from_monomial(&left, a, K::one()),
            &TestAlgebraElement::monomial(r, K::one(), i)?,
        );
        let br = Extension::from_lpa_times(
            &LpaElement::from_monomial(&right, b, K::one()),
            &TestAlgebraElement::monomial(r, K::one(), j)?,
        );
        let ar = rho.apply(z, &ar)?;
        let br = sigma.apply(&z_inv, &br)?;
        for (a2, ra) in ar.terms() {
            for (i2, ca) in ra.terms() {
                for (b2, rb) in br.terms() {
                    for (j2, cb) in rb.terms() {
                        let key = (a2.clone(), i2, b2.clone(), j2);
                        let add = c.clone() * ca.clone() * cb.clone();
                        let sum = moved.remove(&key).map_or(add.clone(), |old| old + add);
                        if !sum.is_zero() {
                            moved.insert(key, sum);
                        }
                    }
                }
            }
        }
    }

    // swap^-1, then 1 (x) mult: a (x) b (x) r (x) r'  ->  a (x) b (x) r r'
    let mut out = Extension::zero(r);
    for ((a, i, b, j), c) in moved {
        let ri = TestAlgebraElement::monomial(r, c, i)?;
        let rj = TestAlgebraElement::monomial(r, K::one(), j)?;
        out.add_term((a, b), ri.try_mul(&rj)?);
    }
    Ok(out)
}

/// The same action read off directly: a pure tensor of bidegree `(n, m)`
/// has its `R`-coordinate multiplied by `z^(n - m)`.
pub fn tensor_action_direct<K: Field>(
    z: &TestAlgebraElement<K>,
    t: &TensorExtension<K>,
) -> Result<TensorExtension<K>, GaugeError> {
    if !z.is_unit() {
        return Err(GaugeError::NotAUnit(z.to_string()));
    }
    t.scale_each(|(a, b)| Ok(z.pow(a.degree() - b.degree())?))
}

use std::sync::Arc;

use super::element::LpaElement;
use super::monomial::Monomial;
use super::LpaError;
use crate::graph::{Graph, Path};
use crate::scalars::{Field, TestAlgebra, TestAlgebraElement};

/// One vertex with one loop on it; its Leavitt path algebra is `K[x, x^-1]`.
pub fn is_loop_graph(g: &Graph) -> bool {
    g.vertex_count() == 1 && g.edge_count() == 1
}

/// The isomorphism `L_K(R_1) -> K[x, x^-1]` with `v -> 1`, `e -> x`,
/// `e* -> x^-1`.
pub fn laurent_realize<K: Field>(a: &LpaElement<K>) -> Result<TestAlgebraElement<K>, LpaError> {
    if !is_loop_graph(a.graph()) {
        return Err(LpaError::NotLoopGraph);
    }
    let terms = a.terms().map(|(m, c)| (m.degree(), c.clone()));
    Ok(TestAlgebraElement::from_terms(TestAlgebra::Laurent, terms).expect("Laurent accepts every exponent"))
}

/// Inverse of [`laurent_realize`].
pub fn from_laurent<K: Field>(graph: &Arc<Graph>, p: &TestAlgebraElement<K>) -> Result<LpaElement<K>, LpaError> {
    if !is_loop_graph(graph) || p.algebra() != TestAlgebra::Laurent {
        return Err(LpaError::NotLoopGraph);
    }
    let power = |n: i64| Path::new(graph, 0, vec![0; n.unsigned_abs() as usize]).expect("loop powers compose");
    let terms = p.terms().map(|(n, c)| {
        let m = if n >= 0 {
            Monomial::new_unchecked(power(n), Path::vertex(0))
        } else {
            Monomial::new_unchecked(Path::vertex(0), power(n))
        };
        (m, c.clone())
    });
    Ok(LpaElement::from_terms(graph, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F3, Q};

    #[test]
    fn generator_images() {
        let g = Arc::new(Graph::single_loop());
        let v = LpaElement::<Q>::vertex(&g, "v").unwrap();
        let e = LpaElement::<Q>::edge(&g, "e").unwrap();
        let es = LpaElement::<Q>::ghost(&g, "e").unwrap();
        let x = TestAlgebraElement::<Q>::x(TestAlgebra::Laurent).unwrap();
        let one = TestAlgebraElement::<Q>::one(TestAlgebra::Laurent);
        assert_eq!(laurent_realize(&(&v + &e)).unwrap(), &one + &x);
        assert_eq!(laurent_realize(&(&es * &e)).unwrap(), one);
        assert_eq!(laurent_realize(&(&e * &e)).unwrap(), x.pow(2).unwrap());
        assert_eq!(laurent_realize(&es).unwrap(), x.pow(-1).unwrap());
    }

    #[test]
    fn rejects_other_graphs() {
        let g = Arc::new(Graph::single_edge());
        let a = LpaElement::<F3>::vertex(&g, "u1").unwrap();
        assert_eq!(laurent_realize(&a).unwrap_err(), LpaError::NotLoopGraph);
    }

    #[test]
    fn round_trip_and_multiplicative() {
        let g = Arc::new(Graph::single_loop());
        let p = TestAlgebraElement::<F3>::from_terms(TestAlgebra::Laurent, [(-2, F3::new(1)), (0, F3::new(2)), (3, F3::new(1))]).unwrap();
        let q = TestAlgebraElement::<F3>::from_terms(TestAlgebra::Laurent, [(1, F3::new(1)), (-1, F3::new(1))]).unwrap();
        let a = from_laurent(&g, &p).unwrap();
        let b = from_laurent(&g, &q).unwrap();
        assert_eq!(laurent_realize(&a).unwrap(), p);
        assert_eq!(laurent_realize(&(&a * &b)).unwrap(), &p * &q);
    }
}

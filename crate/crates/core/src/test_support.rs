//! Proptest strategies shared by the unit tests.

use std::sync::Arc;

use proptest::prelude::*;

use crate::graph::{enumerate_paths, Graph};
use crate::lpa::{LpaElement, Monomial};
use crate::scalars::{Field, TestAlgebra, TestAlgebraElement};

pub(crate) fn arb_graph(max_v: usize, max_e: usize) -> impl Strategy<Value = Graph> {
    (1..=max_v).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_e).prop_map(move |es| {
            Graph::new(
                (0..n).map(|i| format!("v{i}")),
                es.into_iter().enumerate().map(|(k, (s, r))| (format!("e{k}"), format!("v{s}"), format!("v{r}"))),
            )
            .unwrap()
        })
    })
}

/// Edges only go from lower to higher vertex index.
pub(crate) fn arb_acyclic_graph(max_v: usize, max_e: usize) -> impl Strategy<Value = Graph> {
    (1..=max_v).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_e).prop_map(move |es| {
            let edges: Vec<(usize, usize)> = es.into_iter().filter(|(s, r)| s < r).collect();
            Graph::new(
                (0..n).map(|i| format!("v{i}")),
                edges.into_iter().enumerate().map(|(k, (s, r))| (format!("e{k}"), format!("v{s}"), format!("v{r}"))),
            )
            .unwrap()
        })
    })
}

/// Small integers and their quotients.
pub(crate) fn arb_scalar<K: Field>() -> impl Strategy<Value = K> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| {
        let den = K::from_i64(d);
        match den.inverse() {
            Some(inv) => K::from_i64(n) * inv,
            None => K::from_i64(n),
        }
    })
}

/// Every monomial `mu nu*` (normal or not) with `|mu|, |nu| <= max_len`.
pub(crate) fn all_monomials(g: &Graph, max_len: usize) -> Vec<Monomial> {
    let paths = enumerate_paths(g, max_len);
    let mut out = Vec::new();
    for mu in &paths {
        for nu in &paths {
            if mu.range(g) == nu.range(g) {
                out.push(Monomial::new_unchecked(mu.clone(), nu.clone()));
            }
        }
    }
    out
}

/// Random elements built from arbitrary monomials with path lengths at most
/// `max_len`, then normalized.
pub(crate) fn arb_element<K: Field>(g: Arc<Graph>, max_len: usize, max_terms: usize) -> impl Strategy<Value = LpaElement<K>> {
    let monomials = all_monomials(&g, max_len);
    let n = monomials.len();
    prop::collection::vec((0..n, arb_scalar::<K>()), 0..=max_terms)
        .prop_map(move |terms| LpaElement::from_terms(&g, terms.into_iter().map(|(i, c)| (monomials[i].clone(), c))))
}

/// A graph with up to three elements over it.
pub(crate) fn arb_graph_with_elements<K: Field>(
    max_v: usize,
    max_e: usize,
    count: usize,
    max_len: usize,
    max_terms: usize,
) -> impl Strategy<Value = (Arc<Graph>, Vec<LpaElement<K>>)> {
    arb_graph(max_v, max_e).prop_flat_map(move |g| {
        let g = Arc::new(g);
        (
            Just(Arc::clone(&g)),
            prop::collection::vec(arb_element::<K>(g, max_len, max_terms), count),
        )
    })
}

/// Random units of a test algebra. Laurent units are the monomials `c x^k`;
/// cyclic units are found by rejection among small random elements.
pub(crate) fn arb_unit<K: Field>(algebra: TestAlgebra) -> BoxedStrategy<TestAlgebraElement<K>> {
    match algebra {
        TestAlgebra::Base => arb_scalar::<K>()
            .prop_filter("nonzero", |c| !c.is_zero())
            .prop_map(move |c| TestAlgebraElement::constant(algebra, c))
            .boxed(),
        TestAlgebra::Laurent => (arb_scalar::<K>().prop_filter("nonzero", |c| !c.is_zero()), -4i64..=4)
            .prop_map(move |(c, k)| TestAlgebraElement::monomial(algebra, c, k).unwrap())
            .boxed(),
        TestAlgebra::Cyclic(n) => prop::collection::vec(arb_scalar::<K>(), n as usize)
            .prop_map(move |cs| TestAlgebraElement::from_terms(algebra, cs.into_iter().enumerate().map(|(i, c)| (i as i64, c))).unwrap())
            .prop_filter("unit", TestAlgebraElement::is_unit)
            .boxed(),
    }
}

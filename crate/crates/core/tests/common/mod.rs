#![allow(dead_code)]

use std::sync::Arc;

use leavitt::lpa::{Generator, LpaElement};
use leavitt::{Field, Graph};
use proptest::prelude::*;

pub fn single_edge() -> Arc<Graph> {
    Arc::new(Graph::single_edge())
}

pub fn single_loop() -> Arc<Graph> {
    Arc::new(Graph::single_loop())
}

pub fn k<K: Field>(n: i64) -> K {
    K::from_i64(n)
}

/// Random sums of products of generators, built only through the public API.
pub fn arb_word_sum<K: Field>(g: Arc<Graph>, max_len: usize, max_terms: usize) -> impl Strategy<Value = LpaElement<K>> {
    let gens = Generator::all(&g);
    let n = gens.len();
    prop::collection::vec((prop::collection::vec(0..n, 1..=max_len), -3i64..=3), 0..=max_terms).prop_map(move |terms| {
        let mut out = LpaElement::zero(&g);
        for (word, c) in terms {
            let mut p = LpaElement::generator(&g, gens[word[0]]);
            for &i in &word[1..] {
                p = &p * &LpaElement::generator(&g, gens[i]);
            }
            out = &out + &p.scale(&K::from_i64(c));
        }
        out
    })
}

//! Reduction of words in the generators, one relation at a time.
//!
//! This is independent of the monomial product in [`LpaElement::multiply`]: a
//! word is rewritten by local rules applied at positions picked by a caller
//! supplied strategy. Every strategy must reach the same normal form, which is
//! how confluence of the rewriting system is tested.

use std::sync::Arc;

use super::element::{Generator, LpaElement};
use super::monomial::Monomial;
use crate::graph::{Graph, Path};
use crate::scalars::Field;

pub type Word = Vec<Generator>;

/// A rewritable pair of adjacent letters: `word` indexes the current list of
/// terms, `position` the left letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Redex {
    pub word: usize,
    pub position: usize,
}

enum Step {
    Keep,
    Zero,
    Replace(Vec<(Word, bool)>),
}

fn rewrite_pair(g: &Graph, a: Generator, b: Generator) -> Step {
    use Generator::*;
    match (a, b) {
        (Vertex(u), Vertex(v)) => {
            if u == v {
                Step::Replace(vec![(vec![Vertex(u)], true)])
            } else {
                Step::Zero
            }
        }
        (Vertex(u), x @ Edge(e)) | (x @ Ghost(e), Vertex(u)) => {
            if g.source(e) == u {
                Step::Replace(vec![(vec![x], true)])
            } else {
                Step::Zero
            }
        }
        (x @ Edge(e), Vertex(u)) | (Vertex(u), x @ Ghost(e)) => {
            if g.range(e) == u {
                Step::Replace(vec![(vec![x], true)])
            } else {
                Step::Zero
            }
        }
        (Edge(e), Edge(f)) if g.range(e) != g.source(f) => Step::Zero,
        // e* f* = (f e)*
        (Ghost(e), Ghost(f)) if g.source(e) != g.range(f) => Step::Zero,
        (Edge(e), Ghost(f)) if g.range(e) != g.range(f) => Step::Zero,
        (Ghost(e), Edge(f)) => {
            if e == f {
                Step::Replace(vec![(vec![Vertex(g.range(e))], true)])
            } else {
                Step::Zero
            }
        }
        (Edge(e), Ghost(f)) if e == f && g.is_special(e) => {
            let v = g.source(e);
            let mut out = vec![(vec![Vertex(v)], true)];
            for &other in g.emitted(v) {
                if other != e {
                    out.push((vec![Edge(other), Ghost(other)], false));
                }
            }
            Step::Replace(out)
        }
        _ => Step::Keep,
    }
}

fn redexes_in(g: &Graph, w: &Word) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| !matches!(rewrite_pair(g, w[i], w[i + 1]), Step::Keep))
        .collect()
}

/// The monomial spelled by an irreducible word.
fn irreducible_monomial(g: &Graph, w: &Word) -> Monomial {
    if let [Generator::Vertex(v)] = w[..] {
        return Monomial::vertex(v);
    }
    let mut mu = Vec::new();
    let mut ghosts = Vec::new();
    for &letter in w {
        match letter {
            Generator::Edge(e) => {
                assert!(ghosts.is_empty(), "edge after ghost in an irreducible word");
                mu.push(e);
            }
            Generator::Ghost(e) => ghosts.push(e),
            Generator::Vertex(_) => panic!("vertex inside an irreducible word of length > 1"),
        }
    }
    ghosts.reverse();
    let path = |edges: Vec<usize>, fallback: usize| {
        if edges.is_empty() {
            Path::vertex(fallback)
        } else {
            Path::new(g, g.source(edges[0]), edges).expect("irreducible words compose")
        }
    };
    // an empty side sits at the range of the other side
    let mu_range = mu.last().map(|&e| g.range(e));
    let nu_range = ghosts.last().map(|&e| g.range(e));
    let mu_path = path(mu, nu_range.unwrap_or(0));
    let nu_path = path(ghosts, mu_range.unwrap_or(0));
    Monomial::new_unchecked(mu_path, nu_path)
}

/// The word spelling a monomial: the edges of `mu` then the ghosts of `nu`
/// in reverse. A vertex monomial is the one-letter word.
pub fn monomial_word(m: &Monomial) -> Word {
    if m.mu().is_vertex() && m.nu().is_vertex() {
        return vec![Generator::Vertex(m.mu().source())];
    }
    let mut w: Word = m.mu().edges().iter().map(|&e| Generator::Edge(e)).collect();
    w.extend(m.nu().edges().iter().rev().map(|&e| Generator::Ghost(e)));
    w
}

/// Rewrites the weighted words until none is reducible. `choose` receives
/// every available redex and returns the index of the one to apply.
pub fn reduce<K: Field>(
    graph: &Arc<Graph>,
    words: Vec<(Word, K)>,
    mut choose: impl FnMut(&[Redex]) -> usize,
) -> LpaElement<K> {
    let g = graph.as_ref();
    let mut live: Vec<(Word, K)> = words.into_iter().filter(|(w, c)| !w.is_empty() && !c.is_zero()).collect();
    let mut done: Vec<(Monomial, K)> = Vec::new();
    loop {
        // retire irreducible words
        let mut i = 0;
        while i < live.len() {
            if redexes_in(g, &live[i].0).is_empty() {
                let (w, c) = live.swap_remove(i);
                done.push((irreducible_monomial(g, &w), c));
            } else {
                i += 1;
            }
        }
        if live.is_empty() {
            break;
        }
        let redexes: Vec<Redex> = live
            .iter()
            .enumerate()
            .flat_map(|(word, (w, _))| redexes_in(g, w).into_iter().map(move |position| Redex { word, position }))
            .collect();
        let Redex { word, position } = redexes[choose(&redexes) % redexes.len()];
        let (w, c) = live.swap_remove(word);
        match rewrite_pair(g, w[position], w[position + 1]) {
            Step::Keep => unreachable!("redexes are reducible"),
            Step::Zero => {}
            Step::Replace(parts) => {
                for (middle, positive) in parts {
                    let mut nw = w[..position].to_vec();
                    nw.extend(middle);
                    nw.extend_from_slice(&w[position + 2..]);
                    live.push((nw, if positive { c.clone() } else { -c.clone() }));
                }
            }
        }
    }
    // irreducible words are already normal
    LpaElement::from_terms(graph, done)
}

/// The product `a b` computed by concatenating words and rewriting.
pub fn multiply_by_rewriting<K: Field>(
    a: &LpaElement<K>,
    b: &LpaElement<K>,
    choose: impl FnMut(&[Redex]) -> usize,
) -> LpaElement<K> {
    let mut words = Vec::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut w = monomial_word(ma);
            w.extend(monomial_word(mb));
            words.push((w, ca.clone() * cb.clone()));
        }
    }
    reduce(a.graph(), words, choose)
}

/// The value of a word in the generators.
pub fn evaluate_word<K: Field>(graph: &Arc<Graph>, w: &[Generator]) -> LpaElement<K> {
    reduce(graph, vec![(w.to_vec(), K::one())], |_| 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, Q};

    #[test]
    fn leftmost_and_rightmost_agree_on_cuntz_pair() {
        // the graph with one vertex and two loops
        let g = Arc::new(Graph::from_parts(&["v"], &[("a", "v", "v"), ("b", "v", "v")]).unwrap());
        let (a, b) = (Generator::Edge(0), Generator::Edge(1));
        let (sa, sb) = (Generator::Ghost(0), Generator::Ghost(1));
        let w = vec![sb, a, sa, b, sb, sa, a, a, sa, sb];
        let left = reduce::<Q>(&g, vec![(w.clone(), Q::from_i64(1))], |_| 0);
        let right = reduce::<Q>(&g, vec![(w, Q::from_i64(1))], |rs| rs.len() - 1);
        assert_eq!(left, right);
    }

    #[test]
    fn special_pair_expands() {
        let g = Arc::new(Graph::from_parts(&["v", "w"], &[("a", "v", "w"), ("b", "v", "w")]).unwrap());
        let aa = evaluate_word::<F2>(&g, &[Generator::Edge(0), Generator::Ghost(0)]);
        let v = LpaElement::<F2>::vertex(&g, "v").unwrap();
        let bb = evaluate_word::<F2>(&g, &[Generator::Edge(1), Generator::Ghost(1)]);
        assert_eq!(aa, &v - &bb);
    }
}

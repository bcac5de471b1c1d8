//! Finite directed multigraphs, their paths, and the product graph `E x F`.
//!
//! Vertices and edges are addressed by their position in the declaration
//! order; string ids are kept for I/O. A path `f_1 ... f_n` requires
//! `r(f_i) = s(f_{i+1})`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("edge {edge:?} refers to undeclared vertex {vertex:?}")]
    MalformedGraph { edge: String, vertex: String },
    #[error("unknown id {0:?}")]
    UnknownId(String),
    #[error("edges {0:?} and {1:?} do not compose")]
    NotComposable(String, String),
    #[error("graph file, line {line}, column {column}: {message}")]
    Parse { message: String, line: usize, column: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub rng: usize,
}

#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    out_edges: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

/// On-disk layout: `{"vertices": [...], "edges": [{"id", "src", "rng"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub id: String,
    pub src: String,
    pub rng: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub row_finite: bool,
    pub sinks: BTreeSet<String>,
    pub regular_vertices: BTreeSet<String>,
    pub acyclic: bool,
}

impl Graph {
    /// Builds a graph from vertex ids and `(edge id, source id, range id)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut edge_list = Vec::new();
        let mut edge_index = HashMap::new();
        let mut out_edges = vec![Vec::new(); vertices.len()];
        for (id, s, r) in edges {
            let lookup = |v: &String| {
                vertex_index.get(v).copied().ok_or_else(|| GraphError::MalformedGraph {
                    edge: id.clone(),
                    vertex: v.clone(),
                })
            };
            let src = lookup(&s)?;
            let rng = lookup(&r)?;
            if edge_index.insert(id.clone(), edge_list.len()).is_some() {
                return Err(GraphError::DuplicateEdge(id));
            }
            out_edges[src].push(edge_list.len());
            edge_list.push(Edge { id, src, rng });
        }
        Ok(Graph {
            vertices,
            edges: edge_list,
            vertex_index,
            edge_index,
            out_edges,
        })
    }

    /// Convenience constructor from string slices.
    pub fn from_parts(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        Graph::new(
            vertices.iter().copied(),
            edges.iter().map(|(e, s, r)| (e.to_string(), s.to_string(), r.to_string())),
        )
    }

    pub fn from_file(file: &GraphFile) -> Result<Self, GraphError> {
        Graph::new(
            file.vertices.iter().cloned(),
            file.edges.iter().map(|e| (e.id.clone(), e.src.clone(), e.rng.clone())),
        )
    }

    pub fn from_json_str(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Parse {
            // serde appends the position, which is reported separately
            message: e.to_string().rsplit_once(" at line ").map_or_else(|| e.to_string(), |(m, _)| m.to_string()),
            line: e.line(),
            column: e.column(),
        })?;
        Graph::from_file(&file)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeFile {
                    id: e.id.clone(),
                    src: self.vertices[e.src].clone(),
                    rng: self.vertices[e.rng].clone(),
                })
                .collect(),
        }
    }

    /// `u1 --f--> u2`.
    pub fn single_edge() -> Self {
        Graph::from_parts(&["u1", "u2"], &[("f", "u1", "u2")]).expect("valid graph")
    }

    /// One vertex `v` with one loop `e`; its Leavitt path algebra is `K[x, x^-1]`.
    pub fn single_loop() -> Self {
        Graph::from_parts(&["v"], &[("e", "v", "v")]).expect("valid graph")
    }

    pub fn single_vertex() -> Self {
        Graph::from_parts(&["v"], &[]).expect("valid graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e].id
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self, e: usize) -> usize {
        self.edges[e].src
    }

    pub fn range(&self, e: usize) -> usize {
        self.edges[e].rng
    }

    /// Edges emitted by `v`, in declaration order.
    pub fn emitted(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_edges[v].is_empty()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.is_sink(v)).collect()
    }

    /// The distinguished edge `gamma(v)` of a regular vertex: the first edge it emits.
    pub fn special_edge(&self, v: usize) -> Option<usize> {
        self.out_edges[v].first().copied()
    }

    pub fn is_special(&self, e: usize) -> bool {
        self.special_edge(self.source(e)) == Some(e)
    }

    pub fn is_acyclic(&self) -> bool {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; self.vertex_count()];
        for start in 0..self.vertex_count() {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state[start] = 1;
            while let Some((v, i)) = stack.pop() {
                if let Some(&e) = self.out_edges[v].get(i) {
                    stack.push((v, i + 1));
                    let w = self.edges[e].rng;
                    match state[w] {
                        1 => return false,
                        0 => {
                            state[w] = 1;
                            stack.push((w, 0));
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                }
            }
        }
        true
    }

    pub fn validate(&self) -> GraphReport {
        let sinks: BTreeSet<String> = self.sinks().into_iter().map(|v| self.vertices[v].clone()).collect();
        let regular_vertices = self.vertices.iter().filter(|v| !sinks.contains(*v)).cloned().collect();
        GraphReport {
            // finitely many edges, so every vertex emits finitely many
            row_finite: true,
            sinks,
            regular_vertices,
            acyclic: self.is_acyclic(),
        }
    }
}

/// A finite path. Length-zero paths are vertices; otherwise `base` is the
/// source of the first edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    base: usize,
    edges: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Path { base: v, edges: Vec::new() }
    }

    pub fn edge(g: &Graph, e: usize) -> Self {
        Path {
            base: g.source(e),
            edges: vec![e],
        }
    }

    /// Checked constructor from a vertex (used only for length zero) and an edge sequence.
    pub fn new(g: &Graph, base: usize, edges: Vec<usize>) -> Result<Self, GraphError> {
        if let Some(&first) = edges.first() {
            for w in edges.windows(2) {
                if g.range(w[0]) != g.source(w[1]) {
                    return Err(GraphError::NotComposable(g.edge_id(w[0]).into(), g.edge_id(w[1]).into()));
                }
            }
            Ok(Path {
                base: g.source(first),
                edges,
            })
        } else {
            Ok(Path::vertex(base))
        }
    }

    pub fn from_ids(g: &Graph, base: &str, edges: &[&str]) -> Result<Self, GraphError> {
        let b = g.vertex(base).ok_or_else(|| GraphError::UnknownId(base.into()))?;
        let es = edges
            .iter()
            .map(|e| g.edge(e).ok_or_else(|| GraphError::UnknownId(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Path::new(g, b, es)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn source(&self) -> usize {
        self.base
    }

    pub fn range(&self, g: &Graph) -> usize {
        self.edges.last().map_or(self.base, |&e| g.range(e))
    }

    pub fn last_edge(&self) -> Option<usize> {
        self.edges.last().copied()
    }

    pub fn first_edge(&self) -> Option<usize> {
        self.edges.first().copied()
    }

    /// `self` followed by `other`; the caller guarantees `r(self) = s(other)`.
    pub fn concat(&self, other: &Path) -> Path {
        if self.is_vertex() {
            return other.clone();
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path { base: self.base, edges }
    }

    /// Drops the last edge.
    pub fn without_last(&self, g: &Graph) -> Path {
        match self.edges.split_last() {
            None => self.clone(),
            Some((&e, [])) => Path::vertex(g.source(e)),
            Some((_, rest)) => Path {
                base: self.base,
                edges: rest.to_vec(),
            },
        }
    }

    /// The path after its first `k` edges.
    pub fn suffix(&self, g: &Graph, k: usize) -> Path {
        if k == 0 {
            return self.clone();
        }
        if k >= self.edges.len() {
            return Path::vertex(self.range(g));
        }
        let rest = self.edges[k..].to_vec();
        Path {
            base: g.source(rest[0]),
            edges: rest,
        }
    }

    /// The first `k` edges.
    pub fn prefix(&self, k: usize) -> Path {
        if k >= self.edges.len() {
            return self.clone();
        }
        Path {
            base: self.base,
            edges: self.edges[..k].to_vec(),
        }
    }

    /// If `self` is a prefix of `other`, the remainder of `other`.
    pub fn strip_prefix_of(&self, g: &Graph, other: &Path) -> Option<Path> {
        if self.base != other.base || self.edges.len() > other.edges.len() {
            return None;
        }
        if other.edges[..self.edges.len()] != self.edges[..] {
            return None;
        }
        Some(other.suffix(g, self.edges.len()))
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.is_vertex() {
            g.vertex_id(self.base).to_string()
        } else {
            self.edges.iter().map(|&e| g.edge_id(e)).collect::<Vec<_>>().join(".")
        }
    }
}

/// All paths of length at most `max_length`, ordered by length and then
/// lexicographically by edge index (vertices by index for length zero).
pub fn enumerate_paths(g: &Graph, max_length: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..g.vertex_count()).map(Path::vertex).collect();
    let mut frontier: Vec<Path> = (0..g.edge_count()).map(|e| Path::edge(g, e)).collect();
    let mut len = 1;
    while len <= max_length && !frontier.is_empty() {
        frontier.sort_by(|a, b| a.edges.cmp(&b.edges));
        out.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for p in &frontier {
            for &e in g.emitted(p.range(g)) {
                let mut edges = p.edges.clone();
                edges.push(e);
                next.push(Path { base: p.base, edges });
            }
        }
        frontier = next;
        len += 1;
    }
    out
}

/// Every path of an acyclic graph, `None` if the graph has a cycle.
pub fn all_paths(g: &Graph) -> Option<Vec<Path>> {
    g.is_acyclic().then(|| enumerate_paths(g, g.vertex_count()))
}

/// `E x F` with the bookkeeping that identifies each product vertex and edge
/// with its pair of factors.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    pub left: Arc<Graph>,
    pub right: Arc<Graph>,
    pub graph: Arc<Graph>,
    vertex_pairs: Vec<(usize, usize)>,
    edge_pairs: Vec<(usize, usize)>,
}

impl ProductGraph {
    pub fn vertex_pair(&self, v: usize) -> (usize, usize) {
        self.vertex_pairs[v]
    }

    pub fn edge_pair(&self, e: usize) -> (usize, usize) {
        self.edge_pairs[e]
    }

    pub fn vertex_of(&self, u: usize, v: usize) -> usize {
        u * self.right.vertex_count() + v
    }

    pub fn edge_of(&self, f: usize, g: usize) -> usize {
        f * self.right.edge_count() + g
    }
}

/// `E x F = (E^0 x F^0, E^1 x F^1)` with `s(f, g) = (s f, s g)` and
/// `r(f, g) = (r f, r g)`. Ids are synthesized as `"(a,b)"`; the only failure
/// mode is an id collision caused by factor ids that themselves contain
/// commas or parentheses.
pub fn product_graph(left: &Arc<Graph>, right: &Arc<Graph>) -> Result<ProductGraph, GraphError> {
    let pair = |a: &str, b: &str| format!("({a},{b})");
    let mut vertex_pairs = Vec::new();
    let mut vertices = Vec::new();
    for u in 0..left.vertex_count() {
        for v in 0..right.vertex_count() {
            vertex_pairs.push((u, v));
            vertices.push(pair(left.vertex_id(u), right.vertex_id(v)));
        }
    }
    let mut edge_pairs = Vec::new();
    let mut edges = Vec::new();
    for f in 0..left.edge_count() {
        for g in 0..right.edge_count() {
            edge_pairs.push((f, g));
            let src = pair(left.vertex_id(left.source(f)), right.vertex_id(right.source(g)));
            let rng = pair(left.vertex_id(left.range(f)), right.vertex_id(right.range(g)));
            edges.push((pair(left.edge_id(f), right.edge_id(g)), src, rng));
        }
    }
    Ok(ProductGraph {
        left: Arc::clone(left),
        right: Arc::clone(right),
        graph: Arc::new(Graph::new(vertices, edges)?),
        vertex_pairs,
        edge_pairs,
    })
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.vertices.join(", "))?;
        for e in &self.edges {
            write!(f, " {}: {} -> {};", e.id, self.vertices[e.src], self.vertices[e.rng])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::arb_graph;
    use proptest::prelude::*;

    fn names(g: &Graph, ps: &[Path]) -> Vec<String> {
        ps.iter().map(|p| p.display(g)).collect()
    }

    #[test]
    fn validate_examples() {
        let e = Graph::single_edge();
        let r = e.validate();
        assert_eq!(r.sinks, BTreeSet::from(["u2".to_string()]));
        assert_eq!(r.regular_vertices, BTreeSet::from(["u1".to_string()]));
        assert!(r.acyclic && r.row_finite);

        let v = Graph::single_vertex().validate();
        assert_eq!(v.sinks.len(), 1);
        assert!(v.acyclic);

        let l = Graph::single_loop().validate();
        assert!(l.sinks.is_empty());
        assert!(!l.acyclic);
    }

    #[test]
    fn malformed_graphs_rejected() {
        assert!(matches!(
            Graph::from_parts(&["a"], &[("e", "a", "b")]),
            Err(GraphError::MalformedGraph { .. })
        ));
        assert!(matches!(Graph::from_parts(&["a", "a"], &[]), Err(GraphError::DuplicateVertex(_))));
        assert!(matches!(
            Graph::from_parts(&["a"], &[("e", "a", "a"), ("e", "a", "a")]),
            Err(GraphError::DuplicateEdge(_))
        ));
    }

    #[test]
    fn json_round_trip_and_unknown_keys() {
        let text = r#"{"vertices": ["u1","u2"], "edges": [{"id":"f","src":"u1","rng":"u2"}]}"#;
        let g = Graph::from_json_str(text).unwrap();
        assert_eq!(g, Graph::single_edge());
        let back = serde_json::to_string(&g.to_file()).unwrap();
        assert_eq!(Graph::from_json_str(&back).unwrap(), g);
        let bad = r#"{"vertices": ["v"], "edges": [], "weights": []}"#;
        assert!(matches!(Graph::from_json_str(bad), Err(GraphError::Parse { .. })));
        let broken = "{\"vertices\": [\"v\"],\n \"edges\": [ }";
        match Graph::from_json_str(broken) {
            Err(GraphError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn product_examples() {
        let e = Arc::new(Graph::single_edge());
        let p = product_graph(&e, &e).unwrap();
        assert_eq!(p.graph.vertex_count(), 4);
        assert_eq!(p.graph.edge_count(), 1);
        let ff = p.graph.edge("(f,f)").unwrap();
        assert_eq!(p.graph.vertex_id(p.graph.source(ff)), "(u1,u1)");
        assert_eq!(p.graph.vertex_id(p.graph.range(ff)), "(u2,u2)");

        let l = Arc::new(Graph::single_loop());
        let ll = product_graph(&l, &l).unwrap();
        assert_eq!((ll.graph.vertex_count(), ll.graph.edge_count()), (1, 1));

        let v = Arc::new(Graph::single_vertex());
        let ev = product_graph(&e, &v).unwrap();
        assert_eq!((ev.graph.vertex_count(), ev.graph.edge_count()), (2, 0));
    }

    #[test]
    fn path_enumeration_examples() {
        let e = Graph::single_edge();
        assert_eq!(names(&e, &enumerate_paths(&e, 2)), ["u1", "u2", "f"]);
        let l = Graph::single_loop();
        assert_eq!(names(&l, &enumerate_paths(&l, 2)), ["v", "e", "e.e"]);
        let p = enumerate_paths(&l, 0);
        assert_eq!(names(&l, &p), ["v"]);
    }

    #[test]
    fn composability_checked() {
        let g = Graph::from_parts(&["a", "b"], &[("e", "a", "b"), ("h", "a", "b")]).unwrap();
        assert!(Path::from_ids(&g, "a", &["e", "h"]).is_err());
        assert!(Path::from_ids(&g, "a", &["x"]).is_err());
    }

    proptest! {
        #[test]
        fn product_sizes(a in arb_graph(4, 5), b in arb_graph(4, 5)) {
            let (a, b) = (Arc::new(a), Arc::new(b));
            let p = product_graph(&a, &b).unwrap();
            prop_assert_eq!(p.graph.vertex_count(), a.vertex_count() * b.vertex_count());
            prop_assert_eq!(p.graph.edge_count(), a.edge_count() * b.edge_count());
            // paths of the product project to paths of both factors
            for path in enumerate_paths(&p.graph, 3) {
                let es = path.edges();
                for w in es.windows(2) {
                    let (f1, g1) = p.edge_pair(w[0]);
                    let (f2, g2) = p.edge_pair(w[1]);
                    prop_assert_eq!(a.range(f1), a.source(f2));
                    prop_assert_eq!(b.range(g1), b.source(g2));
                }
            }
        }

        #[test]
        fn enumeration_is_prefix_closed(g in arb_graph(4, 6)) {
            let paths = enumerate_paths(&g, 3);
            let set: std::collections::HashSet<_> = paths.iter().cloned().collect();
            for p in &paths {
                prop_assert!(set.contains(&p.without_last(&g)));
                prop_assert!(p.len() <= 3);
            }
        }
    }
}

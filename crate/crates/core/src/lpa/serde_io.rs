use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::element::LpaElement;
use super::monomial::Monomial;
use super::LpaError;
use crate::graph::{Graph, Path};
use crate::scalars::Field;

/// One term `coeff * mu nu*` as written in JSON reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub mu: Vec<String>,
    pub mu_base: String,
    pub nu: Vec<String>,
    pub nu_base: String,
    pub coeff: String,
}

fn path_json(g: &Graph, p: &Path) -> (Vec<String>, String) {
    (
        p.edges().iter().map(|&e| g.edge_id(e).to_string()).collect(),
        g.vertex_id(p.source()).to_string(),
    )
}

fn path_from_json(g: &Graph, edges: &[String], base: &str) -> Result<Path, LpaError> {
    let ids: Vec<&str> = edges.iter().map(String::as_str).collect();
    Ok(Path::from_ids(g, base, &ids)?)
}

impl<K: Field> LpaElement<K> {
    /// Terms in canonical order.
    pub fn to_json(&self) -> Vec<TermJson> {
        let g = self.graph();
        self.terms()
            .map(|(m, c)| {
                let (mu, mu_base) = path_json(g, m.mu());
                let (nu, nu_base) = path_json(g, m.nu());
                TermJson {
                    mu,
                    mu_base,
                    nu,
                    nu_base,
                    coeff: c.to_string(),
                }
            })
            .collect()
    }

    /// Accepts terms in any order and normalizes them.
    pub fn from_json(graph: &Arc<Graph>, terms: &[TermJson]) -> Result<Self, LpaError> {
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let mu = path_from_json(graph, &t.mu, &t.mu_base)?;
            let nu = path_from_json(graph, &t.nu, &t.nu_base)?;
            let m = Monomial::new(graph, mu, nu)?;
            parsed.push((m, K::parse(&t.coeff)?));
        }
        Ok(Self::from_terms(graph, parsed))
    }
}

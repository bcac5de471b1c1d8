use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, Context, Result};
use leavitt::lpa::TermJson;
use leavitt::{Field, Graph, LpaElement};
use serde::de::DeserializeOwned;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn graph(path: &Path) -> Result<Arc<Graph>> {
    let text = read(path)?;
    let g = Graph::from_json_str(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Ok(Arc::new(g))
}

/// A JSON file; serde reports the line and column of the first problem.
pub fn json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

pub fn element<K: Field>(graph: &Arc<Graph>, path: &Path) -> Result<LpaElement<K>> {
    let terms: Vec<TermJson> = json(path)?;
    LpaElement::from_json(graph, &terms).map_err(|e| anyhow!("{}: {e}", path.display()))
}

pub fn scalars<K: Field>(texts: &[String]) -> Result<Vec<K>> {
    texts
        .iter()
        .map(|t| K::parse(t).map_err(|e| anyhow!("scalar {t:?}: {e}")))
        .collect()
}

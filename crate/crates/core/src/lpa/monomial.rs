use std::cmp::Ordering;

use crate::graph::{Graph, GraphError, Path};

/// The word `mu nu*` with `r(mu) = r(nu)`.
///
/// A monomial is in normal form unless `mu` and `nu` both end in the same
/// special edge `gamma(v)`; normal-form monomials form a basis of `L_K(E)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    mu: Path,
    nu: Path,
}

impl Monomial {
    /// Checked constructor. Does not require normal form.
    pub fn new(g: &Graph, mu: Path, nu: Path) -> Result<Self, GraphError> {
        if mu.range(g) != nu.range(g) {
            return Err(GraphError::NotComposable(mu.display(g), format!("({})*", nu.display(g))));
        }
        Ok(Monomial { mu, nu })
    }

    pub(crate) fn new_unchecked(mu: Path, nu: Path) -> Self {
        Monomial { mu, nu }
    }

    pub fn vertex(v: usize) -> Self {
        Monomial {
            mu: Path::vertex(v),
            nu: Path::vertex(v),
        }
    }

    pub fn edge(g: &Graph, e: usize) -> Self {
        Monomial {
            mu: Path::edge(g, e),
            nu: Path::vertex(g.range(e)),
        }
    }

    pub fn ghost(g: &Graph, e: usize) -> Self {
        Monomial {
            mu: Path::vertex(g.range(e)),
            nu: Path::edge(g, e),
        }
    }

    pub fn mu(&self) -> &Path {
        &self.mu
    }

    pub fn nu(&self) -> &Path {
        &self.nu
    }

    /// `|mu| - |nu|`.
    pub fn degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    /// `(mu nu*)* = nu mu*`.
    pub fn adjoint(&self) -> Monomial {
        Monomial {
            mu: self.nu.clone(),
            nu: self.mu.clone(),
        }
    }

    pub fn is_normal(&self, g: &Graph) -> bool {
        match (self.mu.last_edge(), self.nu.last_edge()) {
            (Some(a), Some(b)) => !(a == b && g.is_special(a)),
            _ => true,
        }
    }

    /// The common range `r(mu) = r(nu)`.
    pub fn range(&self, g: &Graph) -> usize {
        self.mu.range(g)
    }

    pub fn display(&self, g: &Graph) -> String {
        match (self.mu.is_vertex(), self.nu.is_vertex()) {
            (true, true) => self.mu.display(g),
            (false, true) => self.mu.display(g),
            (true, false) => format!("({})*", self.nu.display(g)),
            (false, false) => format!("{}({})*", self.mu.display(g), self.nu.display(g)),
        }
    }
}

impl Ord for Monomial {
    /// Degree, then `|mu|`, then the edge sequences of `mu` and `nu`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.mu.len().cmp(&other.mu.len()))
            .then_with(|| self.mu.edges().cmp(other.mu.edges()))
            .then(self.mu.source().cmp(&other.mu.source()))
            .then_with(|| self.nu.edges().cmp(other.nu.edges()))
            .then(self.nu.source().cmp(&other.nu.source()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Product `(mu nu*)(sigma delta*)` before normalization: the collapse of
/// `nu* sigma` by path comparison, or `None` when it vanishes.
pub(crate) fn concatenate(g: &Graph, a: &Monomial, b: &Monomial) -> Option<Monomial> {
    if let Some(rest) = a.nu.strip_prefix_of(g, &b.mu) {
        // sigma = nu rest
        return Some(Monomial {
            mu: a.mu.concat(&rest),
            nu: b.nu.clone(),
        });
    }
    if let Some(rest) = b.mu.strip_prefix_of(g, &a.nu) {
        // nu = sigma rest, so nu* sigma = rest*
        return Some(Monomial {
            mu: a.mu.clone(),
            nu: b.nu.concat(&rest),
        });
    }
    None
}

/// Rewrites `alpha gamma (beta gamma)*` with `gamma = gamma(v)` via
/// `gamma gamma* = v - sum_{e != gamma, s(e) = v} e e*` until no such
/// pattern remains. Calls `emit(monomial, positive)` for each resulting term.
pub(crate) fn normalize(g: &Graph, m: Monomial, mut emit: impl FnMut(Monomial, bool)) {
    let mut current = m;
    loop {
        let special = match (current.mu.last_edge(), current.nu.last_edge()) {
            (Some(a), Some(b)) if a == b && g.is_special(a) => a,
            _ => {
                emit(current, true);
                return;
            }
        };
        let alpha = current.mu.without_last(g);
        let beta = current.nu.without_last(g);
        let v = g.source(special);
        for &e in g.emitted(v) {
            if e == special {
                continue;
            }
            let tail = Path::edge(g, e);
            emit(
                Monomial {
                    mu: alpha.concat(&tail),
                    nu: beta.concat(&tail),
                },
                false,
            );
        }
        current = Monomial { mu: alpha, nu: beta };
    }
}

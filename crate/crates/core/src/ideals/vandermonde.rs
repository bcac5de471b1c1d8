use std::collections::BTreeMap;

use super::IdealError;
use crate::gauge::classical_apply;
use crate::linalg::Matrix;
use crate::lpa::{GradedDecomposition, LpaElement};
use crate::scalars::Field;

/// Recovers the homogeneous components of `b` from the values `tau(z)(b)`
/// at the supplied units, using the degree window spanned by `b`.
pub fn vandermonde_split<K: Field>(b: &LpaElement<K>, units: &[K]) -> Result<GradedDecomposition<K>, IdealError> {
    let degrees = b.degrees();
    match (degrees.first(), degrees.last()) {
        (Some(&lo), Some(&hi)) => vandermonde_split_window(b, lo, hi, units),
        _ => Ok(b.grade()),
    }
}

/// Recovers the components of `b` in degrees `lo..=hi`, assuming `b` has no
/// others. With `tau(z_j)(b) = sum_n z_j^n a_n`, each `a_n` is the
/// combination of the `tau(z_j)(b)` given by a row of the inverse of the
/// Vandermonde-type matrix `(z_j^n)`. That matrix is invertible exactly when
/// the `z_j` are distinct and nonzero.
pub fn vandermonde_split_window<K: Field>(
    b: &LpaElement<K>,
    lo: i64,
    hi: i64,
    units: &[K],
) -> Result<GradedDecomposition<K>, IdealError> {
    let needed = (hi - lo + 1).max(0) as usize;
    let mut nodes: Vec<K> = Vec::new();
    for z in units {
        if !z.is_zero() && !nodes.contains(z) {
            nodes.push(z.clone());
        }
    }
    if nodes.len() < needed {
        return Err(IdealError::NotEnoughDistinctUnits {
            needed,
            available: nodes.len(),
        });
    }
    nodes.truncate(needed);

    // rows indexed by node, columns by degree
    let rows: Vec<Vec<K>> = nodes
        .iter()
        .map(|z| (lo..=hi).map(|n| z.pow_i(n).expect("nonzero")).collect())
        .collect();
    let inverse = Matrix::from_rows(rows)
        .inverse()
        .expect("distinct nonzero nodes give an invertible matrix");
    let values: Vec<LpaElement<K>> = nodes
        .iter()
        .map(|z| classical_apply(z, b).expect("nonzero"))
        .collect();

    let mut components = BTreeMap::new();
    for (i, n) in (lo..=hi).enumerate() {
        let mut a_n = LpaElement::zero(b.graph());
        for (j, v) in values.iter().enumerate() {
            a_n = &a_n + &v.scale(inverse.get(i, j));
        }
        components.insert(n, a_n);
    }
    Ok(GradedDecomposition::from_components(b.graph(), components))
}

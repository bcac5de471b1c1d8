use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::graph::{product_graph, Graph};
use crate::lpa::{from_laurent, GradedDecomposition};
use crate::scalars::{TestAlgebra, TestAlgebraElement};
use crate::test_support::{arb_acyclic_graph, arb_element, arb_scalar};
use crate::{F2, F3, F5, F7, Q};

fn e_graph() -> Arc<Graph> {
    Arc::new(Graph::single_edge())
}

fn loop_graph() -> Arc<Graph> {
    Arc::new(Graph::single_loop())
}

fn lp<K: Field>(terms: &[(i64, i64)]) -> TestAlgebraElement<K> {
    TestAlgebraElement::from_terms(TestAlgebra::Laurent, terms.iter().map(|&(e, c)| (e, K::from_i64(c)))).unwrap()
}

#[test]
fn generated_ideals() {
    let g = e_graph();
    let u1 = LpaElement::<Q>::vertex(&g, "u1").unwrap();
    let whole = ideal_generated_by(&g, &[u1]).unwrap();
    assert_eq!(whole.dim(), 4);
    assert!(whole.is_whole());
    assert_eq!(whole, IdealBasis::whole(&g).unwrap());

    let zero = ideal_generated_by::<Q>(&g, &[]).unwrap();
    assert!(zero.is_zero());
    assert!(is_graded_ideal(&zero).graded);

    let pg = product_graph(&g, &g).unwrap();
    let r = LpaElement::<F3>::vertex(&pg.graph, "(u1,u2)").unwrap();
    let block = ideal_generated_by(&pg.graph, &[r]).unwrap();
    assert_eq!(block.dim(), 1);
    assert!(is_graded_ideal(&block).graded);
    assert!(is_schematically_invariant(&block));
}

#[test]
fn cyclic_graph_is_rejected() {
    let g = loop_graph();
    assert_eq!(IdealBasis::<Q>::zero(&g).unwrap_err(), IdealError::InfiniteDimensional);
}

#[test]
fn laurent_examples_over_f2() {
    let g = loop_graph();
    let i = LaurentIdeal::<F2>::principal(&g, &lp(&[(0, 1), (1, 1)])).unwrap();
    let check = is_graded_ideal(&i);
    assert!(!check.graded);
    let (w, d) = check.witness.unwrap();
    assert_eq!(w, from_laurent(&g, &lp(&[(0, 1), (1, 1)])).unwrap());
    assert_eq!(d, 0);
    assert!(is_classically_invariant(&i, None).unwrap());
    assert!(!is_schematically_invariant(&i));
}

#[test]
fn laurent_examples_over_f3() {
    let g = loop_graph();
    let i = LaurentIdeal::<F3>::principal(&g, &lp(&[(0, 1), (2, 1)])).unwrap();
    assert!(is_classically_invariant(&i, None).unwrap());
    assert!(!is_graded_ideal(&i).graded);
    assert!(!is_schematically_invariant(&i));

    let j = LaurentIdeal::<F3>::principal(&g, &lp(&[(0, 1), (1, 1)])).unwrap();
    assert!(!is_classically_invariant(&j, None).unwrap());

    let whole = LaurentIdeal::<F3>::principal(&g, &lp(&[(3, 2)])).unwrap();
    assert!(is_graded_ideal(&whole).graded);
    assert!(is_schematically_invariant(&whole));
}

#[test]
fn classical_invariance_needs_a_bound_over_q() {
    let g = loop_graph();
    let i = LaurentIdeal::<Q>::principal(&g, &lp(&[(0, 1), (1, 1)])).unwrap();
    assert_eq!(is_classically_invariant(&i, None).unwrap_err(), IdealError::InfiniteUnitGroup);
    assert!(!is_classically_invariant(&i, Some(3)).unwrap());
}

#[test]
fn vandermonde_examples() {
    let g = e_graph();
    let f = LpaElement::<Q>::edge(&g, "f").unwrap();
    let fs = LpaElement::<Q>::ghost(&g, "f").unwrap();
    let u1 = LpaElement::<Q>::vertex(&g, "u1").unwrap();
    let b = &(&fs + &u1) + &f;
    let units: Vec<Q> = [1, 2, 3].into_iter().map(Q::from_i64).collect();
    let split = vandermonde_split(&b, &units).unwrap();
    let expected = GradedDecomposition::from_components(&g, BTreeMap::from([(-1, fs), (0, u1), (1, f.clone())]));
    assert_eq!(split, expected);

    assert_eq!(vandermonde_split(&f, &units[..1]).unwrap(), f.grade());

    let b3 = LpaElement::<F3>::from_terms(&g, b.terms().map(|(m, _)| (m.clone(), F3::new(1))));
    assert_eq!(
        vandermonde_split(&b3, &F3::units().unwrap()).unwrap_err(),
        IdealError::NotEnoughDistinctUnits { needed: 3, available: 2 }
    );
    // repeated nodes do not count twice
    let repeated: Vec<Q> = [2, 2, 2].into_iter().map(Q::from_i64).collect();
    assert!(matches!(vandermonde_split(&b, &repeated), Err(IdealError::NotEnoughDistinctUnits { needed: 3, available: 1 })));
}

#[test]
fn ideal_json_round_trip() {
    let g = e_graph();
    let f = LpaElement::<Q>::edge(&g, "f").unwrap();
    let i = ideal_generated_by(&g, &[f]).unwrap();
    let back = IdealBasis::<Q>::from_json(&g, &i.to_json()).unwrap();
    assert_eq!(back, i);
}

/// An acyclic graph and a few random generators over it.
fn arb_acyclic_with_elements<K: Field>(count: usize) -> impl Strategy<Value = (Arc<Graph>, Vec<LpaElement<K>>)> {
    arb_acyclic_graph(5, 5).prop_flat_map(move |g| {
        let g = Arc::new(g);
        (Just(Arc::clone(&g)), prop::collection::vec(arb_element::<K>(g, 2, 3), 0..=count))
    })
}

fn check_ideal_properties<K: Field>(g: &Arc<Graph>, gens: &[LpaElement<K>]) -> Result<(), TestCaseError> {
    let ideal = ideal_generated_by(g, gens).unwrap();
    prop_assert!(ideal.is_two_sided());
    prop_assert_eq!(&ideal.close(), &ideal);
    for a in gens {
        prop_assert!(ideal.contains(a));
    }
    // another generating set of the same ideal gives the identical value
    let again = ideal_generated_by(g, &ideal.elements()).unwrap();
    prop_assert_eq!(&again, &ideal);
    let graded = is_graded_ideal(&ideal).graded;
    prop_assert_eq!(graded, is_schematically_invariant(&ideal));
    if graded {
        prop_assert!(is_classically_invariant(&ideal, Some(4)).unwrap());
    }
    Ok(())
}

fn check_subspace_equivalence<K: Field>(g: &Arc<Graph>, gens: &[LpaElement<K>]) -> Result<(), TestCaseError> {
    // the two checks also agree on subspaces that are not ideals
    let span = IdealBasis::span_of(g, gens).unwrap();
    let check = is_graded_ideal(&span);
    prop_assert_eq!(check.graded, is_schematically_invariant(&span));
    if let Some((w, d)) = check.witness {
        prop_assert!(span.contains(&w));
        prop_assert!(!span.contains(&w.grade().component(d)));
    }
    let homogeneous: Vec<LpaElement<K>> = gens.iter().flat_map(|a| a.grade().components().values().cloned().collect::<Vec<_>>()).collect();
    let graded_span = IdealBasis::span_of(g, &homogeneous).unwrap();
    prop_assert!(is_graded_ideal(&graded_span).graded);
    prop_assert!(is_schematically_invariant(&graded_span));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn finite_ideals_over_q((g, gens) in arb_acyclic_with_elements::<Q>(2)) {
        check_ideal_properties(&g, &gens)?;
    }

    #[test]
    fn finite_ideals_over_f2((g, gens) in arb_acyclic_with_elements::<F2>(2)) {
        check_ideal_properties(&g, &gens)?;
    }

    #[test]
    fn finite_ideals_over_f3((g, gens) in arb_acyclic_with_elements::<F3>(2)) {
        check_ideal_properties(&g, &gens)?;
    }

    #[test]
    fn subspaces_over_q((g, gens) in arb_acyclic_with_elements::<Q>(3)) {
        check_subspace_equivalence(&g, &gens)?;
    }

    #[test]
    fn subspaces_over_f2((g, gens) in arb_acyclic_with_elements::<F2>(3)) {
        check_subspace_equivalence(&g, &gens)?;
    }

    #[test]
    fn laurent_ideals_graded_iff_invariant(
        coeffs in prop::collection::vec(arb_scalar::<F3>(), 0..5),
        shift in -3i64..=3,
    ) {
        let g = loop_graph();
        let p = TestAlgebraElement::from_terms(TestAlgebra::Laurent, coeffs.into_iter().enumerate().map(|(i, c)| (i as i64 + shift, c))).unwrap();
        let i = LaurentIdeal::principal(&g, &p).unwrap();
        let graded = is_graded_ideal(&i).graded;
        prop_assert_eq!(graded, is_schematically_invariant(&i));
        // graded Laurent ideals are zero or everything
        prop_assert_eq!(graded, i.is_zero() || i.is_whole());
    }

    #[test]
    fn over_q_classical_invariance_matches_gradedness(
        coeffs in prop::collection::vec(arb_scalar::<Q>(), 0..5),
        shift in -3i64..=3,
    ) {
        let g = loop_graph();
        let p = TestAlgebraElement::from_terms(TestAlgebra::Laurent, coeffs.into_iter().enumerate().map(|(i, c)| (i as i64 + shift, c))).unwrap();
        let i = LaurentIdeal::principal(&g, &p).unwrap();
        prop_assert_eq!(is_classically_invariant(&i, Some(3)).unwrap(), is_graded_ideal(&i).graded);
    }

    #[test]
    fn laurent_membership_matches_multiples(
        p in prop::collection::vec(arb_scalar::<F5>(), 1..4),
        q in prop::collection::vec(arb_scalar::<F5>(), 1..4),
        shift in -2i64..=2,
    ) {
        let g = loop_graph();
        let dense = |cs: &[F5], s: i64| TestAlgebraElement::from_terms(TestAlgebra::Laurent, cs.iter().enumerate().map(|(i, c)| (i as i64 + s, *c))).unwrap();
        let pp = dense(&p, 0);
        prop_assume!(!pp.is_zero());
        let i = LaurentIdeal::principal(&g, &pp).unwrap();
        let multiple = pp.try_mul(&dense(&q, shift)).unwrap();
        prop_assert!(i.contains_laurent(&multiple));
        prop_assert!(i.contains(&from_laurent(&g, &multiple).unwrap()));
    }

    #[test]
    fn vandermonde_matches_grade_over_q(a in arb_element::<Q>(loop_graph(), 3, 6)) {
        let units = sample_units::<Q>(7);
        prop_assert_eq!(vandermonde_split(&a, &units).unwrap(), a.grade());
    }

    #[test]
    fn vandermonde_matches_grade_over_f7(a in arb_element::<F7>(loop_graph(), 3, 6)) {
        // degrees lie in [-3, 3]; F7 has 6 units, enough for windows of width <= 6
        let degrees = a.degrees();
        let width = degrees.last().zip(degrees.first()).map_or(0, |(h, l)| h - l + 1);
        let result = vandermonde_split(&a, &F7::units().unwrap());
        if width <= 6 {
            prop_assert_eq!(result.unwrap(), a.grade());
        } else {
            let is_not_enough = matches!(result, Err(IdealError::NotEnoughDistinctUnits { .. }));
            prop_assert!(is_not_enough);
        }
    }
}

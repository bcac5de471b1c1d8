use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::gauge::GaugeAction;
use crate::graph::{product_graph, Graph, Path};
use crate::lpa::{basis_and_dimension, degree_dimensions, Generator, LpaElement, Monomial};
use crate::scalars::{Field, TestAlgebra, TestAlgebraElement};
use crate::test_support::{all_monomials, arb_acyclic_graph, arb_graph, arb_scalar, arb_unit};
use crate::{F3, Q};

fn e_graph() -> Arc<Graph> {
    Arc::new(Graph::single_edge())
}

fn loop_graph() -> Arc<Graph> {
    Arc::new(Graph::single_loop())
}

fn mono(g: &Graph, mu: &[&str], base_mu: &str, nu: &[&str], base_nu: &str) -> Monomial {
    Monomial::new(g, Path::from_ids(g, base_mu, mu).unwrap(), Path::from_ids(g, base_nu, nu).unwrap()).unwrap()
}

fn x<K: Field>() -> TestAlgebraElement<K> {
    TestAlgebraElement::x(TestAlgebra::Laurent).unwrap()
}

#[test]
fn tensor_action_examples() {
    let g = e_graph();
    let (rho, sigma) = (GaugeAction::lpa(&g), GaugeAction::lpa(&g));
    let f = Monomial::edge(&g, 0);
    let u1 = Monomial::vertex(0);
    let ff = TensorElement::<Q>::from_monomials(&g, &g, f.clone(), f.clone(), Q::from_i64(1));
    let t = tensor_extension(&ff, TestAlgebra::Laurent);
    assert_eq!(tensor_action_apply(&rho, &sigma, &x(), &t).unwrap(), t);

    let fv = TensorElement::<Q>::from_monomials(&g, &g, f.clone(), u1.clone(), Q::from_i64(1));
    let moved = tensor_action_apply(&rho, &sigma, &x(), &tensor_extension(&fv, TestAlgebra::Laurent)).unwrap();
    assert_eq!(moved.coefficient(&(f, u1)), x());
    assert_eq!(moved.terms().count(), 1);

    let one = TestAlgebraElement::one(TestAlgebra::Laurent);
    assert_eq!(tensor_action_apply(&rho, &sigma, &one, &t).unwrap(), t);

    let not_unit = TestAlgebraElement::<Q>::from_terms(TestAlgebra::Laurent, [(0, Q::from_i64(1)), (1, Q::from_i64(1))]).unwrap();
    assert!(matches!(
        tensor_action_apply(&rho, &sigma, &not_unit, &t),
        Err(crate::gauge::GaugeError::NotAUnit(_))
    ));
}

#[test]
fn cross_product_dimensions() {
    let g = e_graph();
    let cross = fixed_subalgebra::<Q>(&g, &g, None).unwrap();
    assert_eq!(cross.dim(), 6);
    assert_eq!(cross.degree_dimensions(), BTreeMap::from([(-1, 1), (0, 4), (1, 1)]));
    assert_eq!(naive_tensor_space(&g, &g, None).unwrap().dim(), 16);

    let l = loop_graph();
    let truncated = fixed_subalgebra::<F3>(&l, &l, Some(3)).unwrap();
    assert_eq!(truncated.dim(), 7);
    for (a, b) in truncated.basis() {
        assert_eq!(a, b);
    }
    assert_eq!(fixed_subalgebra::<F3>(&l, &l, None).unwrap_err(), CrossError::BoundRequired);
}

#[test]
fn cross_grading_examples() {
    let g = e_graph();
    let space = fixed_subalgebra::<Q>(&g, &g, None).unwrap();
    let f = Monomial::edge(&g, 0);
    let u1 = Monomial::vertex(0);
    let ff = TensorElement::<Q>::from_monomials(&g, &g, f.clone(), f.clone(), Q::from_i64(1));
    assert_eq!(cross_grading(&space, &ff).unwrap(), BTreeMap::from([(1, ff.clone())]));
    let uu = TensorElement::<Q>::from_monomials(&g, &g, u1.clone(), u1.clone(), Q::from_i64(1));
    let sum = uu.try_add(&ff).unwrap();
    assert_eq!(cross_grading(&space, &sum).unwrap(), BTreeMap::from([(0, uu), (1, ff)]));
    assert!(cross_grading(&space, &TensorElement::<Q>::zero(&g, &g)).unwrap().is_empty());
    let fu = TensorElement::<Q>::from_monomials(&g, &g, f, u1, Q::from_i64(1));
    assert!(matches!(cross_grading(&space, &fu), Err(CrossError::NotInCrossProduct(_))));
}

#[test]
fn phi_examples() {
    let g = e_graph();
    let pg = product_graph(&g, &g).unwrap();
    let phi = GeneratorMap::<Q>::canonical(&pg);
    let d = &pg.graph;
    let v = LpaElement::<Q>::vertex(d, "(u1,u1)").unwrap();
    let u1 = Monomial::vertex(0);
    assert_eq!(
        phi_apply(&phi, &v).unwrap(),
        TensorElement::from_monomials(&g, &g, u1.clone(), u1.clone(), Q::from_i64(1))
    );
    let e = LpaElement::<Q>::edge(d, "(f,f)").unwrap();
    let es = LpaElement::<Q>::ghost(d, "(f,f)").unwrap();
    let ffs = mono(&g, &["f"], "u1", &["f"], "u1");
    assert_eq!(
        phi_apply(&phi, &(&e * &es)).unwrap(),
        TensorElement::from_monomials(&g, &g, ffs.clone(), ffs, Q::from_i64(1))
    );
    assert!(phi_apply(&phi, &LpaElement::zero(d)).unwrap().is_zero());
}

#[test]
fn injectivity_examples() {
    let g = e_graph();
    let pg = product_graph(&g, &g).unwrap();
    let phi = GeneratorMap::<Q>::canonical(&pg);
    let cert = certify_injective(&phi, 4).unwrap();
    assert_eq!(cert.kernel, KernelCheck { bound: None, domain_dim: 6, rank: 6, kernel_dim: 0 });

    let killed = phi.with_image(Generator::Vertex(1), TensorElement::zero(&g, &g));
    assert_eq!(certify_injective(&killed, 4).unwrap_err(), CrossError::VertexKilled("(u1,u2)".into()));

    let u = Monomial::vertex(0);
    let flat = phi.with_image(Generator::Edge(0), TensorElement::from_monomials(&g, &g, u.clone(), u, Q::from_i64(1)));
    assert!(matches!(certify_injective(&flat, 4), Err(CrossError::NotGraded { .. })));
    assert!(matches!(flat.check_relations(), Err(CrossError::RelationViolation(_))));
    assert!(matches!(phi_apply(&flat, &LpaElement::zero(&pg.graph)), Err(CrossError::RelationViolation(_))));
}

#[test]
fn surjectivity_examples() {
    let l = loop_graph();
    let pg = product_graph(&l, &l).unwrap();
    let phi = GeneratorMap::<Q>::canonical(&pg);
    let report = verify_surjective(&phi, Some(3)).unwrap();
    assert_eq!(report.targets, 7);
    assert!(report.is_surjective());
    assert!(!report.is_advisory());
    let e = LpaElement::<Q>::generator(&pg.graph, Generator::Edge(0));
    let es = LpaElement::<Q>::generator(&pg.graph, Generator::Ghost(0));
    for (_, pre) in &report.preimages {
        let deg = pre.degrees();
        assert_eq!(deg.len(), 1);
        let n = deg[0];
        let base = if n >= 0 { &e } else { &es };
        let mut power = LpaElement::unit(&pg.graph);
        for _ in 0..n.abs() {
            power = &power * base;
        }
        assert_eq!(pre, &power);
    }

    // e e* (x) v, one step of the recursion
    let ees = mono(&l, &["e"], "v", &["e"], "v");
    let pre = preimage(&phi, &ees, &Monomial::vertex(0)).unwrap();
    assert_eq!(pre, &e * &es);

    let g = e_graph();
    let pg = product_graph(&g, &g).unwrap();
    let phi = GeneratorMap::<Q>::canonical(&pg);
    let report = verify_surjective(&phi, None).unwrap();
    assert!(report.is_advisory());
    assert_eq!(report.targets, 6);
    assert!(report.is_surjective());
}

#[test]
fn sinks_can_block_the_recursion() {
    let two_loops = Arc::new(Graph::from_parts(&["v"], &[("e1", "v", "v"), ("e2", "v", "v")]).unwrap());
    let g = e_graph();
    let pg = product_graph(&two_loops, &g).unwrap();
    let phi = GeneratorMap::<Q>::canonical(&pg);
    let report = verify_surjective(&phi, Some(1)).unwrap();
    assert!(!report.is_surjective());
    let report = verify_iso::<Q>(&two_loops, &g, 1, false).unwrap();
    assert!(matches!(report.verdict, IsoVerdict::HypothesisFailed(_)));
    assert!(report.advisory.is_some());
}

#[test]
fn iso_verdicts() {
    let l = loop_graph();
    let report = verify_iso::<Q>(&l, &l, 5, false).unwrap();
    assert_eq!(report.verdict, IsoVerdict::ProvenAtBound { bound: 5 });
    assert_eq!(report.surjective.targets, 11);

    let g = e_graph();
    let report = verify_iso::<F3>(&g, &g, 4, false).unwrap();
    assert_eq!(report.verdict, IsoVerdict::ProvenExactly { dim: 6 });
    assert!(report.advisory.is_some());
    let json = report.to_json();
    assert_eq!(json["surjective"]["unreached"], serde_json::json!([]));
    assert_eq!(json["dimensions"]["target"], 6);

    let naive = verify_iso::<F3>(&g, &g, 4, true).unwrap();
    assert!(matches!(naive.verdict, IsoVerdict::NotIsomorphic(_)));
    assert_eq!(naive.dimensions, Some(Dimensions { target: 16, product_graph: 6 }));

    let naive_loop = verify_iso::<Q>(&l, &l, 2, true).unwrap();
    assert!(matches!(naive_loop.verdict, IsoVerdict::NotIsomorphic(_)));
}

fn arb_tensor<K: Field>(left: Arc<Graph>, right: Arc<Graph>, max_terms: usize) -> impl Strategy<Value = TensorElement<K>> {
    let ml = all_monomials(&left, 2);
    let mr = all_monomials(&right, 2);
    let (nl, nr) = (ml.len(), mr.len());
    prop::collection::vec((0..nl, 0..nr, arb_scalar::<K>()), 0..=max_terms).prop_map(move |ts| {
        ts.into_iter().fold(TensorElement::zero(&left, &right), |acc, (i, j, c)| {
            acc.try_add(&TensorElement::from_monomials(&left, &right, ml[i].clone(), mr[j].clone(), c))
                .unwrap()
        })
    })
}

fn arb_pair_with_tensor<K: Field>() -> impl Strategy<Value = (Arc<Graph>, Arc<Graph>, TensorElement<K>)> {
    (arb_graph(2, 3), arb_graph(2, 3)).prop_flat_map(|(l, r)| {
        let (l, r) = (Arc::new(l), Arc::new(r));
        (Just(Arc::clone(&l)), Just(Arc::clone(&r)), arb_tensor::<K>(l, r, 4))
    })
}

fn unit_pair<K: Field>() -> impl Strategy<Value = (TestAlgebraElement<K>, TestAlgebraElement<K>)> {
    prop::sample::select(vec![TestAlgebra::Laurent, TestAlgebra::Cyclic(2), TestAlgebra::Cyclic(3)])
        .prop_flat_map(|r| (arb_unit::<K>(r), arb_unit::<K>(r)))
}

/// Adds a loop at every sink.
fn without_sinks(g: Graph) -> Graph {
    let sinks = g.sinks();
    let vertices: Vec<String> = (0..g.vertex_count()).map(|v| g.vertex_id(v).to_string()).collect();
    let mut edges: Vec<(String, String, String)> = g
        .edges()
        .iter()
        .map(|e| (e.id.clone(), vertices[e.src].clone(), vertices[e.rng].clone()))
        .collect();
    for v in sinks {
        edges.push((format!("loop{v}"), vertices[v].clone(), vertices[v].clone()));
    }
    Graph::new(vertices, edges).unwrap()
}

fn check_tensor_law<K: Field>(
    l: &Arc<Graph>,
    r: &Arc<Graph>,
    t: &TensorElement<K>,
    z: &TestAlgebraElement<K>,
    w: &TestAlgebraElement<K>,
) -> Result<(), TestCaseError> {
    let (rho, sigma) = (GaugeAction::lpa(l), GaugeAction::lpa(r));
    let te = tensor_extension(t, z.algebra());
    let zw = z.try_mul(w).unwrap();
    let lhs = tensor_action_apply(&rho, &sigma, &zw, &te).unwrap();
    let inner = tensor_action_apply(&rho, &sigma, w, &te).unwrap();
    let rhs = tensor_action_apply(&rho, &sigma, z, &inner).unwrap();
    prop_assert_eq!(&lhs, &rhs);
    prop_assert_eq!(lhs, tensor_action_direct(&zw, &te).unwrap());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tensor_action_law_q((l, r, t) in arb_pair_with_tensor::<Q>(), (z, w) in unit_pair::<Q>()) {
        check_tensor_law(&l, &r, &t, &z, &w)?;
    }

    #[test]
    fn tensor_action_law_f3((l, r, t) in arb_pair_with_tensor::<F3>(), (z, w) in unit_pair::<F3>()) {
        check_tensor_law(&l, &r, &t, &z, &w)?;
    }

    #[test]
    fn fixed_points_are_degree_matched((l, r, t) in arb_pair_with_tensor::<Q>()) {
        let (rho, sigma) = (GaugeAction::lpa(&l), GaugeAction::lpa(&r));
        let te = tensor_extension(&t, TestAlgebra::Laurent);
        let fixed = tensor_action_apply(&rho, &sigma, &x(), &te).unwrap() == te;
        prop_assert_eq!(fixed, t.is_degree_matched());
    }

    #[test]
    fn cross_dimension_is_sum_of_products(l in arb_acyclic_graph(3, 3), r in arb_acyclic_graph(3, 3)) {
        let (l, r) = (Arc::new(l), Arc::new(r));
        let dl = degree_dimensions(&basis_and_dimension(&l).unwrap());
        let dr = degree_dimensions(&basis_and_dimension(&r).unwrap());
        let expected: usize = dl.iter().map(|(n, a)| a * dr.get(n).copied().unwrap_or(0)).sum();
        let space = fixed_subalgebra::<F3>(&l, &r, None).unwrap();
        prop_assert_eq!(space.dim(), expected);
        // with sinks the dimensions can differ; the verdict must follow them
        let report = verify_iso::<F3>(&l, &r, 3, false).unwrap();
        let dims = report.dimensions.unwrap();
        prop_assert_eq!(dims.target, expected);
        prop_assert_eq!(report.verdict.is_proven(), dims.target == dims.product_graph);
    }

    #[test]
    fn phi_is_multiplicative_and_graded(
        (l, r) in (arb_graph(2, 3), arb_graph(2, 3)),
        seed in prop::collection::vec((0usize..64, arb_scalar::<Q>()), 1..4),
        seed2 in prop::collection::vec((0usize..64, arb_scalar::<Q>()), 1..4),
    ) {
        let (l, r) = (Arc::new(l), Arc::new(r));
        let pg = product_graph(&l, &r).unwrap();
        let phi = GeneratorMap::<Q>::canonical(&pg);
        let ms = all_monomials(&pg.graph, 2);
        prop_assume!(!ms.is_empty());
        let build = |s: &[(usize, Q)]| LpaElement::from_terms(&pg.graph, s.iter().map(|(i, c)| (ms[i % ms.len()].clone(), c.clone())));
        let (a, b) = (build(&seed), build(&seed2));
        let pa = phi_apply(&phi, &a).unwrap();
        let pb = phi_apply(&phi, &b).unwrap();
        prop_assert_eq!(phi_apply(&phi, &(&a * &b)).unwrap(), pa.multiply(&pb).unwrap());
        let space = fixed_subalgebra::<Q>(&l, &r, Some(2)).unwrap();
        let graded = cross_grading(&space, &pa).unwrap();
        let expected: BTreeMap<i64, TensorElement<Q>> = a
            .grade()
            .components()
            .iter()
            .map(|(n, c)| (*n, phi_apply(&phi, c).unwrap()))
            .filter(|(_, t)| !t.is_zero())
            .collect();
        prop_assert_eq!(graded, expected);
    }

    #[test]
    fn injectivity_certificate_agrees_with_kernel((l, r) in (arb_graph(2, 3), arb_graph(2, 3))) {
        let (l, r) = (Arc::new(l), Arc::new(r));
        let pg = product_graph(&l, &r).unwrap();
        let phi = GeneratorMap::<F3>::canonical(&pg);
        let cert = certify_injective(&phi, 2);
        let kernel = kernel_check(&phi, 2).unwrap();
        prop_assert_eq!(cert.is_ok(), kernel.kernel_dim == 0);
        prop_assert!(cert.is_ok());
    }

    #[test]
    fn no_sinks_gives_iso_at_bound((l, r) in (arb_graph(2, 3), arb_graph(2, 2))) {
        let (l, r) = (Arc::new(without_sinks(l)), Arc::new(without_sinks(r)));
        let report = verify_iso::<F3>(&l, &r, 2, false).unwrap();
        prop_assert!(report.advisory.is_none());
        prop_assert!(report.verdict.is_proven(), "{}", report.verdict);
    }
}

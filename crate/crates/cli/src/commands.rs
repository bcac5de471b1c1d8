use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use leavitt::cross::{fixed_subalgebra, naive_tensor_space, verify_iso, IsoVerdict};
use leavitt::gauge::{
    classical_eigenspace, comodule_to_idempotents, grading_to_comodule, recover_component, ComoduleJson, ComoduleMap,
    GaugeError, GradingGroup,
};
use leavitt::graph::product_graph;
use leavitt::ideals::{
    ideal_generated_by, is_classically_invariant, is_graded_ideal, is_schematically_invariant, vandermonde_split,
    IdealError, LaurentIdeal, TwoSidedIdeal,
};
use leavitt::lpa::{basis_and_dimension, degree_dimensions, is_loop_graph, Basis, Generator};
use leavitt::scalars::sample_units;
use leavitt::{Field, Graph, LpaElement};
use serde_json::{json, Value};

use crate::args::Command;
use crate::input;
use crate::report::Report;
use crate::suite;

pub fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::GraphCheck { graph } => graph_check(graph),
        Command::LpaDim { graph, field, bound } => with_field!(field.field, |K| lpa_dim::<K>(graph, *bound)),
        Command::LpaMul { graph, field, lhs, rhs } => with_field!(field.field, |K| lpa_mul::<K>(graph, lhs, rhs)),
        Command::Grade { graph, field, element } => with_field!(field.field, |K| grade::<K>(graph, element)),
        Command::Coarsen {
            graph,
            field,
            element,
            modulus,
        } => with_field!(field.field, |K| coarsen::<K>(graph, element, *modulus)),
        Command::GaugeDemo {
            graph,
            field,
            element,
            bound,
        } => with_field!(field.field, |K| gauge_demo::<K>(graph.as_deref(), element.as_deref(), *bound)),
        Command::IdealCheck {
            graph,
            field,
            elements,
            bound,
        } => with_field!(field.field, |K| ideal_check::<K>(graph, elements, *bound)),
        Command::Vandermonde {
            graph,
            field,
            element,
            units,
        } => with_field!(field.field, |K| vandermonde::<K>(graph, element, units.as_deref())),
        Command::Comodule {
            field,
            comodule,
            degrees,
            group,
        } => with_field!(field.field, |K| comodule_cmd::<K>(comodule.as_deref(), degrees.as_deref(), group)),
        Command::CrossDim {
            pair,
            field,
            bound,
            naive_tensor,
        } => with_field!(field.field, |K| cross_dim::<K>(&pair.left, &pair.right, *bound, *naive_tensor)),
        Command::ProductGraph { pair } => product(&pair.left, &pair.right),
        Command::VerifyIso {
            pair,
            field,
            bound,
            naive_tensor,
        } => with_field!(field.field, |K| iso::<K>(&pair.left, &pair.right, *bound, *naive_tensor)),
        Command::PaperSuite {
            field,
            bound,
            only,
            naive_tensor,
        } => {
            let options = suite::SuiteOptions {
                bound: *bound,
                only: only.clone(),
                naive_tensor: *naive_tensor,
            };
            with_field!(field.field, |K| suite::run::<K>(&options).map(|s| s.report()))
        }
    }
}

fn components_json<K: Field>(components: &BTreeMap<i64, LpaElement<K>>) -> Value {
    components
        .iter()
        .map(|(d, c)| (d.to_string(), json!(c.to_json())))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn graph_check(path: &Path) -> Result<Report> {
    let g = input::graph(path)?;
    let summary = g.validate();
    let mut r = Report::new("graph-check");
    r.line(format!("vertices = {}, edges = {}", g.vertex_count(), g.edge_count()));
    let sinks: Vec<&str> = summary.sinks.iter().map(String::as_str).collect();
    r.line(format!("sinks: {}", if sinks.is_empty() { "none".into() } else { sinks.join(", ") }));
    r.line(format!("acyclic: {}", summary.acyclic));
    r.set("vertices", g.vertex_count())
        .set("edges", g.edge_count())
        .set("report", serde_json::to_value(&summary)?);
    Ok(r)
}

fn lpa_dim<K: Field>(path: &Path, bound: Option<usize>) -> Result<Report> {
    let g = input::graph(path)?;
    let mut r = Report::new("lpa-dim");
    r.set("field", K::spec().to_string());
    let basis = match (basis_and_dimension(&g), bound) {
        (Ok(basis), _) => {
            r.line(format!("dim = {}", basis.dim()));
            r.set("dim", basis.dim()).set("bound", Value::Null);
            basis
        }
        (Err(_), Some(b)) => {
            let basis = Basis::truncated(&g, b);
            r.line("dim = infinite");
            r.line(format!("{} normal monomials with both paths of length <= {b}", basis.dim()));
            r.set("dim", Value::Null).set("bound", b).set("truncated_dim", basis.dim());
            basis
        }
        (Err(_), None) => {
            r.line("dim = infinite (pass --bound to count truncated monomials)");
            r.set("dim", Value::Null).set("bound", Value::Null);
            return Ok(r);
        }
    };
    let by_degree = degree_dimensions(&basis);
    for (d, n) in &by_degree {
        r.line(format!("  degree {d}: {n}"));
    }
    r.set(
        "by_degree",
        by_degree
            .iter()
            .map(|(d, n)| (d.to_string(), json!(n)))
            .collect::<serde_json::Map<_, _>>(),
    );
    Ok(r)
}

fn lpa_mul<K: Field>(graph: &Path, lhs: &Path, rhs: &Path) -> Result<Report> {
    let g = input::graph(graph)?;
    let a = input::element::<K>(&g, lhs)?;
    let b = input::element::<K>(&g, rhs)?;
    let p = a.multiply(&b)?;
    let mut r = Report::new("lpa-mul");
    r.line(format!("({a}) * ({b}) = {p}"));
    r.set("product", json!(p.to_json()));
    Ok(r)
}

fn grade<K: Field>(graph: &Path, element: &Path) -> Result<Report> {
    let g = input::graph(graph)?;
    let a = input::element::<K>(&g, element)?;
    let comps = a.grade();
    let mut r = Report::new("grade");
    for (d, c) in comps.components() {
        r.line(format!("degree {d}: {c}"));
    }
    if comps.is_empty() {
        r.line("zero element");
    }
    r.set("components", components_json(comps.components()));
    Ok(r)
}

fn coarsen<K: Field>(graph: &Path, element: &Path, modulus: u64) -> Result<Report> {
    let g = input::graph(graph)?;
    let a = input::element::<K>(&g, element)?;
    let comps = a.grade().coarsen(modulus)?;
    let mut r = Report::new("coarsen");
    let as_signed: BTreeMap<i64, LpaElement<K>> = comps.into_iter().map(|(d, c)| (d as i64, c)).collect();
    for (d, c) in &as_signed {
        r.line(format!("degree {d} mod {modulus}: {c}"));
    }
    r.set("modulus", modulus).set("components", components_json(&as_signed));
    Ok(r)
}

fn generator_sum<K: Field>(g: &Arc<Graph>) -> LpaElement<K> {
    Generator::all(g)
        .into_iter()
        .fold(LpaElement::zero(g), |acc, x| &acc + &LpaElement::generator(g, x))
}

fn gauge_demo<K: Field>(graph: Option<&Path>, element: Option<&Path>, bound: u64) -> Result<Report> {
    let g = match graph {
        Some(p) => input::graph(p)?,
        None => Arc::new(Graph::single_loop()),
    };
    let a = match element {
        Some(p) => input::element::<K>(&g, p)?,
        None => generator_sum(&g),
    };
    let mut r = Report::new("gauge-demo");
    r.line(format!("element: {a}"));
    let degrees = a.degrees();
    let mut rows = Vec::new();
    let mut recovered_sum = LpaElement::zero(&g);
    for &n in &degrees {
        let classical = classical_eigenspace(&a, n, Some(bound))?;
        let schematic = recover_component(&a, n);
        let exact = schematic == a.grade().component(n);
        recovered_sum = recovered_sum.try_add(&schematic)?;
        r.line(format!("n = {n}: classical eigenspace {classical}; recovered component {schematic}"));
        rows.push(json!({
            "degree": n,
            "classical": classical.to_json(),
            "recovered": schematic.to_json(),
            "recovered_is_component": exact,
            "classical_is_component": classical == a.grade().component(n),
        }));
        r.verified &= exact;
    }
    r.verified &= recovered_sum == a;
    r.line(format!(
        "recovered components {} the element",
        if recovered_sum == a { "sum to" } else { "do not sum to" }
    ));
    r.set("field", K::spec().to_string()).set("degrees", rows);
    Ok(r)
}

fn ideal_report<K: Field, I: TwoSidedIdeal<K>>(r: &mut Report, ideal: &I, bound: u64) -> Result<()> {
    let graded = is_graded_ideal(ideal);
    let classical = is_classically_invariant(ideal, Some(bound))?;
    let schematic = is_schematically_invariant(ideal);
    r.line(format!("graded: {}", graded.graded));
    if let Some((b, d)) = &graded.witness {
        r.line(format!("  degree {d} component of {b} is not in the ideal"));
    }
    let sampled = if K::spec().is_finite() {
        String::new()
    } else {
        format!(" (units 1..={bound})")
    };
    r.line(format!("classically invariant{sampled}: {classical}"));
    r.line(format!("schematically invariant: {schematic}"));
    r.set("graded", graded.graded)
        .set("witness_degree", graded.witness.as_ref().map(|(_, d)| *d))
        .set("classically_invariant", classical)
        .set("schematically_invariant", schematic);
    r.verified = graded.graded;
    Ok(())
}

fn ideal_check<K: Field>(graph: &Path, elements: &[std::path::PathBuf], bound: u64) -> Result<Report> {
    let g = input::graph(graph)?;
    let gens = elements
        .iter()
        .map(|p| input::element::<K>(&g, p))
        .collect::<Result<Vec<_>>>()?;
    let mut r = Report::new("ideal-check");
    r.set("field", K::spec().to_string());
    if g.is_acyclic() {
        let ideal = ideal_generated_by(&g, &gens)?;
        r.line(format!("dim = {} of {}", ideal.dim(), ideal.ambient_dim()));
        r.set("dim", ideal.dim()).set("ambient_dim", ideal.ambient_dim());
        ideal_report(&mut r, &ideal, bound)?;
    } else if is_loop_graph(&g) {
        let [a] = gens.as_slice() else {
            bail!("the loop algebra needs exactly one generator, got {}", gens.len());
        };
        let ideal = LaurentIdeal::generated_by(a)?;
        r.line(format!("generator = {}", ideal.generator()));
        r.set("generator", serde_json::to_value(ideal.to_json())?);
        ideal_report(&mut r, &ideal, bound)?;
    } else {
        return Err(IdealError::InfiniteDimensional.into());
    }
    Ok(r)
}

fn vandermonde<K: Field>(graph: &Path, element: &Path, units: Option<&[String]>) -> Result<Report> {
    let g = input::graph(graph)?;
    let b = input::element::<K>(&g, element)?;
    let degrees = b.degrees();
    let window = match (degrees.first(), degrees.last()) {
        (Some(lo), Some(hi)) => (hi - lo + 1) as u64,
        _ => 0,
    };
    let nodes: Vec<K> = match units {
        Some(texts) => input::scalars(texts)?,
        None => K::units().unwrap_or_else(|| sample_units(window)),
    };
    let mut r = Report::new("vandermonde");
    r.set("field", K::spec().to_string())
        .set("units", nodes.iter().map(K::to_string).collect::<Vec<_>>());
    match vandermonde_split(&b, &nodes) {
        Ok(split) => {
            let exact = split == b.grade();
            for (d, c) in split.components() {
                r.line(format!("degree {d}: {c}"));
            }
            r.line(format!("matches the grading: {exact}"));
            r.set("components", components_json(split.components())).set("matches_grade", exact);
            r.verified = exact;
        }
        Err(e @ IdealError::NotEnoughDistinctUnits { needed, available }) => {
            r.line(e.to_string());
            r.set("needed", needed).set("available", available);
            r.verified = false;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn comodule_cmd<K: Field>(file: Option<&Path>, degrees: Option<&[i64]>, group: &str) -> Result<Report> {
    let c: ComoduleMap<K> = match (file, degrees) {
        (Some(p), _) => {
            let j: ComoduleJson = input::json(p)?;
            ComoduleMap::from_json(&j).map_err(|e| anyhow!("{}: {e}", p.display()))?
        }
        (None, Some(ds)) => {
            let group: GradingGroup = group.parse().map_err(|e: String| anyhow!(e))?;
            grading_to_comodule(ds, group)
        }
        (None, None) => bail!("pass --comodule FILE or --degrees LIST"),
    };
    let mut r = Report::new("comodule");
    r.set("field", K::spec().to_string()).set("group", c.group().to_string());
    match comodule_to_idempotents(&c) {
        Ok(system) => {
            r.line(format!("complete system of {} orthogonal idempotents", system.projections().len()));
            for (l, p) in system.projections() {
                r.line(format!("  p_{l} = {:?}", p.to_rows().iter().map(|row| row.iter().map(K::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()));
            }
            if let Some(part) = system.degree_partition() {
                r.line(format!("coordinate degrees: {part:?}"));
                r.set("coordinate_degrees", part);
            }
            r.set("idempotents", serde_json::to_value(system.to_json())?);
        }
        Err(GaugeError::NotARepresentation(defect)) => {
            r.line(format!("not a representation: {defect}"));
            r.set("defect", defect.to_string());
            r.verified = false;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn cross_dim<K: Field>(left: &Path, right: &Path, bound: Option<usize>, naive: bool) -> Result<Report> {
    let (e, f) = (input::graph(left)?, input::graph(right)?);
    let space = if naive {
        naive_tensor_space(&e, &f, bound)?
    } else {
        fixed_subalgebra::<K>(&e, &f, bound)?
    };
    let mut r = Report::new("cross-dim");
    let what = if naive { "tensor product" } else { "cross product" };
    r.line(format!("{what}: dim = {}", space.dim()));
    let by_degree = space.degree_dimensions();
    for (d, n) in &by_degree {
        r.line(format!("  degree {d}: {n}"));
    }
    r.set("naive", naive)
        .set("dim", space.dim())
        .set("bound", bound)
        .set(
            "by_degree",
            by_degree
                .iter()
                .map(|(d, n)| (d.to_string(), json!(n)))
                .collect::<serde_json::Map<_, _>>(),
        );
    Ok(r)
}

fn product(left: &Path, right: &Path) -> Result<Report> {
    let (e, f) = (input::graph(left)?, input::graph(right)?);
    let p = product_graph(&e, &f)?;
    let file = serde_json::to_value(p.graph.to_file())?;
    let mut r = Report::new("product-graph");
    r.line(serde_json::to_string_pretty(&file)?);
    r.set("graph", file);
    Ok(r)
}

fn iso<K: Field>(left: &Path, right: &Path, bound: usize, naive: bool) -> Result<Report> {
    let (e, f) = (input::graph(left)?, input::graph(right)?);
    let report = verify_iso::<K>(&e, &f, bound, naive)?;
    let mut r = Report::new("verify-iso");
    r.line(format!("verdict: {}", report.verdict));
    if let Some(d) = report.dimensions {
        let rel = if d.target == d.product_graph { "=" } else { "!=" };
        let what = if naive { "tensor product" } else { "cross product" };
        r.line(format!("dimensions: {what} {} {rel} product graph {}", d.target, d.product_graph));
    }
    match &report.injective {
        Ok(c) => r.line(format!(
            "injective: {} vertices nonzero, {} generator images graded, kernel {}",
            c.vertices_nonzero, c.generators_graded, c.kernel.kernel_dim
        )),
        Err(e) => r.line(format!("injective: not certified ({e})")),
    };
    r.line(format!(
        "surjective: {} of {} targets reached",
        report.surjective.preimages.len(),
        report.surjective.targets
    ));
    if let Some(a) = &report.advisory {
        r.line(format!("advisory: {a}"));
    }
    r.verified = matches!(report.verdict, IsoVerdict::ProvenExactly { .. } | IsoVerdict::ProvenAtBound { .. });
    r.set("field", K::spec().to_string()).set("result", report.to_json());
    Ok(r)
}

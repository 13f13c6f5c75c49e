//! Running the full pipeline on one map and rendering the result as text,
//! canonical JSON or a DOT graph.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use jacinf_core::analysis::{
    certify_tree, check_order_relations, minimality_report, non_properness_report, t_self_intersection,
    topological_degree, validate_pole_pairs, AffineImage, AnalysisError, Certificate, NonPropernessReport,
    OrderReport, PolePairViolation, SelfIntersection,
};
use jacinf_core::resolution::{resolve, CenterType, NodeKind, PolyMap, ResolutionTree, ResolveOptions, ROOT};

/// Bumped whenever the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

pub struct Report {
    pub tree: ResolutionTree,
    pub jacobian: String,
    /// `Err` carries the reason, e.g. a non-dominant map.
    pub degree: Result<usize, String>,
    pub intersection: SelfIntersection,
    pub pole_pairs: Vec<PolePairViolation>,
    pub relations: OrderReport,
    pub minimality: Vec<usize>,
    pub certificate: Certificate,
    pub non_properness: NonPropernessReport,
}

impl Report {
    pub fn build(f: &PolyMap, opts: &ResolveOptions, seed: u64) -> Result<Report, AnalysisError> {
        let tree = resolve(f, opts)?;
        let degree = match topological_degree(f, seed) {
            Ok(d) => Ok(d),
            Err(e @ AnalysisError::NotDominant) => Err(e.to_string()),
            Err(e) => return Err(e),
        };
        Ok(Report {
            jacobian: f.jacobian().to_string(),
            degree,
            intersection: t_self_intersection(&tree)?,
            pole_pairs: validate_pole_pairs(&tree),
            relations: check_order_relations(&tree, seed)?,
            minimality: minimality_report(&tree)?,
            certificate: certify_tree(&tree)?,
            non_properness: non_properness_report(&tree, seed)?,
            tree,
        })
    }

    fn name(&self, id: usize) -> &str {
        &self.tree.nodes[id].name
    }
}

fn center_label(tree: &ResolutionTree, c: Option<CenterType>) -> String {
    match c {
        None => "-".into(),
        Some(CenterType::Single(a)) => format!("single({})", tree.nodes[a].name),
        Some(CenterType::Double(a, b)) => format!("double({},{})", tree.nodes[a].name, tree.nodes[b].name),
    }
}

fn opt_str<T: ToString>(v: Option<T>) -> Value {
    v.map_or(Value::Null, |x| Value::String(x.to_string()))
}

fn s<T: ToString>(v: T) -> Value {
    Value::String(v.to_string())
}

fn image_json(image: &AffineImage) -> Value {
    match image {
        AffineImage::Point(x, y) => json!({ "kind": "point", "x": x, "y": y }),
        AffineImage::Curve { implicit, branches } => json!({
            "kind": "curve",
            "implicit": implicit,
            "branches": branches
                .iter()
                .map(|(at, b)| json!({ "at": at, "type": b.to_string() }))
                .collect::<Vec<_>>(),
        }),
    }
}

/// Canonical JSON: keys sorted, every integer a decimal string, rationals
/// as `num/den` inside polynomial strings.
pub fn emit_json(r: &Report) -> String {
    let t = &r.tree;
    let nodes: Vec<Value> = t
        .nodes
        .iter()
        .map(|n| {
            json!({
                "id": s(n.id),
                "name": n.name,
                "kind": match n.kind { NodeKind::RootLine => "root", NodeKind::Exceptional => "exceptional" },
                "p": s(n.pole_order),
                "a": opt_str(n.mult_t),
                "m": opt_str(n.mult_image),
                "s": s(n.self_int),
                "orbit": s(n.orbit_size),
                "stage": s(n.stage),
                "parent": opt_str(n.t_parent),
                "center_type": n.center_type.map_or(Value::Null, |c| s(center_label(t, Some(c)))),
            })
        })
        .collect();
    let edges: Vec<Value> = t.edges.iter().map(|&(a, b)| json!([s(a), s(b)])).collect();
    let log: Vec<Value> = t
        .blowup_log
        .iter()
        .map(|b| {
            json!({
                "stage": s(b.stage),
                "center": b.center,
                "center_type": center_label(t, Some(b.center_type)),
                "node": s(b.node),
                "orbit": s(b.orbit_size),
            })
        })
        .collect();
    let pairs: Vec<Value> = r
        .pole_pairs
        .iter()
        .map(|v| {
            json!({
                "edge": [s(v.edge.0), s(v.edge.1)],
                "pair": [s(v.pair.0), s(v.pair.1)],
                "clause": v.clause.to_string(),
            })
        })
        .collect();
    let relations: Vec<Value> = r
        .relations
        .checks
        .iter()
        .map(|c| json!({ "node": s(c.node), "relation": c.to_string(), "holds": c.holds }))
        .collect();
    let non_proper: Vec<Value> = r
        .non_properness
        .nodes
        .iter()
        .map(|n| {
            json!({
                "node": s(n.node),
                "image": image_json(&n.image),
                "p": s(n.pole_order),
                "m": opt_str(n.mult_image),
                "s": s(n.self_int),
            })
        })
        .collect();
    let mut checks = Map::new();
    checks.insert("degree".into(), r.degree.as_ref().map_or(Value::Null, s));
    if let Err(e) = &r.degree {
        checks.insert("degree_error".into(), s(e));
    }
    checks.insert("t_squared".into(), s(r.intersection.t_squared));
    checks.insert(
        "t_dot_contracted".into(),
        r.intersection.t_dot_contracted.iter().map(|&(n, d)| json!([s(n), s(d)])).collect(),
    );
    checks.insert("pole_pairs".into(), Value::Array(pairs));
    checks.insert(
        "order_relations".into(),
        json!({
            "applicable": r.relations.applicable,
            "all_hold": r.relations.all_hold(),
            "checks": relations,
        }),
    );
    checks.insert("minimality".into(), r.minimality.iter().map(|&n| s(n)).collect());
    let doc = json!({
        "schema_version": s(SCHEMA_VERSION),
        "input": { "p": t.map.p().to_string(), "q": t.map.q().to_string() },
        "jacobian": r.jacobian,
        "nodes": nodes,
        "edges": edges,
        "blowup_log": log,
        "checks": Value::Object(checks),
        "certificate": {
            "verdict": r.certificate.verdict.to_string(),
            "strong": r.certificate.strong,
            "reasons": r.certificate.reasons.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        },
        "non_properness": { "flagged": r.non_properness.flagged, "nodes": non_proper },
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("json values serialize");
    out.push('\n');
    out
}

/// Undirected graph with one vertex per t-curve in id order. The root is
/// drawn as a double box.
pub fn emit_dot(tree: &ResolutionTree) -> String {
    let mut out = String::from("graph resolution {\n  node [shape=ellipse];\n");
    for n in &tree.nodes {
        let mut label = format!("{}\\n(p={}, ", n.name, n.pole_order);
        match (n.mult_t, n.mult_image) {
            (Some(a), _) => write!(label, "a={a}"),
            (None, Some(m)) => write!(label, "m={m}"),
            (None, None) => write!(label, "a=0"),
        }
        .expect("string write");
        write!(label, ", s={}", n.self_int).expect("string write");
        if n.orbit_size > 1 {
            write!(label, ", ×{}", n.orbit_size).expect("string write");
        }
        label.push(')');
        let style = if n.id == ROOT { ", shape=box, peripheries=2" } else { "" };
        writeln!(out, "  n{} [label=\"{label}\"{style}];", n.id).expect("string write");
    }
    for &(a, b) in &tree.edges {
        writeln!(out, "  n{a} -- n{b};").expect("string write");
    }
    out.push_str("}\n");
    out
}

/// Plain-text summary for terminals.
pub fn emit_text(r: &Report) -> String {
    let t = &r.tree;
    let mut o = String::new();
    let mut line = |s: String| {
        o.push_str(&s);
        o.push('\n');
    };
    line(format!("map: {}", t.map));
    line(format!("jacobian: {}", r.jacobian));
    line(match &r.degree {
        Ok(d) => format!("topological degree: {d}"),
        Err(e) => format!("topological degree: undefined ({e})"),
    });
    line("nodes:".into());
    line(format!("  {:>3} {:<6} {:>4} {:>4} {:>4} {:>4} {:>5} {:<6} center", "id", "name", "p", "a", "m", "s", "orbit", "parent"));
    for n in &t.nodes {
        let dash = |v: Option<u32>| v.map_or("-".to_string(), |x| x.to_string());
        line(format!(
            "  {:>3} {:<6} {:>4} {:>4} {:>4} {:>4} {:>5} {:<6} {}",
            n.id,
            n.name,
            n.pole_order,
            dash(n.mult_t),
            dash(n.mult_image),
            n.self_int,
            n.orbit_size,
            n.t_parent.map_or("-", |p| r.name(p)),
            center_label(t, n.center_type),
        ));
    }
    let edges: Vec<String> = t.edges.iter().map(|&(a, b)| format!("{}-{}", r.name(a), r.name(b))).collect();
    line(format!("edges: {}", edges.join(", ")));
    line("blow-ups:".into());
    for b in &t.blowup_log {
        line(format!(
            "  stage {}: {} at {} -> {} (orbit {})",
            b.stage,
            center_label(t, Some(b.center_type)),
            b.center,
            r.name(b.node),
            b.orbit_size
        ));
    }
    line(format!("T.T = {}", r.intersection.t_squared));
    for &(n, d) in &r.intersection.t_dot_contracted {
        line(format!("T.{} = {d}", r.name(n)));
    }
    if r.pole_pairs.is_empty() {
        line("pole pairs: no excluded pair".into());
    }
    for v in &r.pole_pairs {
        line(format!(
            "pole pairs: ({}, {}) on {}-{} excluded by {}",
            v.pair.0,
            v.pair.1,
            r.name(v.edge.0),
            r.name(v.edge.1),
            v.clause
        ));
    }
    if r.relations.applicable {
        let failed: Vec<String> = r
            .relations
            .checks
            .iter()
            .filter(|c| !c.holds)
            .map(|c| format!("{}: {c}", r.name(c.node)))
            .collect();
        line(format!("order relations: {} checked, {} failed", r.relations.checks.len(), failed.len()));
        for f in failed {
            line(format!("  failed {f}"));
        }
    } else {
        line("order relations: not applicable".into());
    }
    let minimal: Vec<&str> = r.minimality.iter().map(|&n| r.name(n)).collect();
    line(format!("contracted (-1)-curves: {}", if minimal.is_empty() { "none".into() } else { minimal.join(", ") }));
    line(format!(
        "certificate: {}{}",
        r.certificate.verdict,
        if r.certificate.strong { " (strong)" } else { "" }
    ));
    for f in &r.certificate.reasons {
        line(format!("  {f}"));
    }
    if r.non_properness.nodes.is_empty() {
        line("non-properness: none".into());
    }
    for n in &r.non_properness.nodes {
        let what = match &n.image {
            AffineImage::Point(x, y) => format!("point ({x}, {y})"),
            AffineImage::Curve { implicit, branches } => {
                let b: Vec<String> = branches.iter().map(|(at, ty)| format!("{ty} at {at}")).collect();
                if b.is_empty() {
                    format!("curve {implicit} = 0")
                } else {
                    format!("curve {implicit} = 0 [{}]", b.join("; "))
                }
            }
        };
        line(format!("non-properness: {} -> {what}", r.name(n.node)));
    }
    if r.non_properness.flagged {
        line("non-properness: flagged for a map with constant nonzero jacobian".into());
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_map;
    use jacinf_core::analysis::DEFAULT_SEED;

    fn report(src: &str) -> Report {
        Report::build(&parse_map(src).unwrap(), &ResolveOptions::default(), DEFAULT_SEED).unwrap()
    }

    #[test]
    fn identity_dot_is_a_single_root() {
        let dot = emit_dot(&report("x; y").tree);
        assert!(dot.contains("n0 [label=\"L\\n(p=6, a=1, s=1)\", shape=box, peripheries=2];"), "{dot}");
        assert!(!dot.contains("--"));
    }

    #[test]
    fn f2_json_fields() {
        let r = report("x + y^2; y");
        let v: Value = serde_json::from_str(&emit_json(&r)).unwrap();
        assert_eq!(v["nodes"][3]["p"], "6");
        assert_eq!(v["nodes"][3]["a"], "1");
        assert_eq!(v["certificate"]["verdict"], "automorphism");
        assert_eq!(v["schema_version"], "1");
        assert_eq!(emit_dot(&r.tree).matches(" -- ").count(), 3);
    }

    #[test]
    fn f3_dot_shape() {
        let dot = emit_dot(&report("x + y^3; y").tree);
        for e in ["n0 -- n2", "n2 -- n3", "n1 -- n3", "n3 -- n4", "n4 -- n5"] {
            assert!(dot.contains(e), "{e} missing from {dot}");
        }
        assert_eq!(dot.matches(" -- ").count(), 5);
    }

    #[test]
    fn verdicts_in_json() {
        let v: Value = serde_json::from_str(&emit_json(&report("x; x y"))).unwrap();
        assert_eq!(v["certificate"]["verdict"], "precondition-failed");
        let v: Value = serde_json::from_str(&emit_json(&report("x; y"))).unwrap();
        assert_eq!(v["certificate"]["verdict"], "automorphism");
    }
}

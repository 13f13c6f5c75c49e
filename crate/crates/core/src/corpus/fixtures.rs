//! Fixed example maps with the facts they are expected to satisfy.

use crate::algebra::{Elem, ExtField, UniPoly};
use crate::analysis::{
    certify_tree, classify_branch, image_curve, topological_degree, AnalysisError, BranchType, Verdict,
};
use crate::resolution::{resolve, ImageKind, ParametrizedImage, PolyMap, ResolutionTree, ResolveOptions};

use super::CorpusError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expectations {
    pub exceptional_nodes: Option<usize>,
    pub edges: Option<Vec<(usize, usize)>>,
    pub last_pole: Option<i64>,
    pub last_mult: Option<u32>,
    pub jacobian: Option<String>,
    pub degree: Option<usize>,
    pub verdict: Option<Verdict>,
    pub strong: Option<bool>,
    /// Implicit equation and branch type at `t = 0` of the image of the
    /// line `y = 0` parametrized by `x = t`.
    pub x_axis_image: Option<(String, BranchType)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub map: PolyMap,
    pub expect: Expectations,
}

/// `(x + y^n, y)`.
pub fn f_n(n: u32) -> PolyMap {
    PolyMap::from_int_terms(&[(1, &[1, 0]), (1, &[0, n])], &[(1, &[0, 1])]).expect("valid map")
}

/// Edges of the resolution graph of `(x + y^n, y)`: the path
/// `L - E2 - ... - En`, the leaf `E1` on `En` and the chain `En - ... - E(2n-1)`.
pub fn f_n_edges(n: usize) -> Vec<(usize, usize)> {
    let mut e = vec![(0, 2), (1, n)];
    e.extend((2..n).map(|i| (i, i + 1)));
    e.extend((n..2 * n - 1).map(|i| (i, i + 1)));
    e.sort_unstable();
    e
}

pub fn known_examples() -> Vec<Fixture> {
    let mut out = Vec::new();
    for n in 2..=5u32 {
        out.push(Fixture {
            name: format!("F{n}"),
            map: f_n(n),
            expect: Expectations {
                exceptional_nodes: Some(2 * n as usize - 1),
                edges: Some(f_n_edges(n as usize)),
                last_pole: Some(6),
                last_mult: Some(1),
                jacobian: Some("1".into()),
                degree: Some(1),
                verdict: Some(Verdict::Automorphism),
                strong: Some(true),
                ..Default::default()
            },
        });
    }
    let cusp = PolyMap::from_int_terms(&[(2, &[3, 0]), (1, &[1, 1])], &[(3, &[2, 0]), (1, &[0, 1])]).expect("valid map");
    out.push(Fixture {
        name: "cusp".into(),
        map: cusp,
        expect: Expectations {
            jacobian: Some("y".into()),
            verdict: Some(Verdict::PreconditionFailed),
            x_axis_image: Some(("y^3 - 27/4*x^2".into(), BranchType::Cusp(2))),
            ..Default::default()
        },
    });
    out.push(Fixture {
        name: "identity".into(),
        map: PolyMap::identity(),
        expect: Expectations {
            exceptional_nodes: Some(0),
            jacobian: Some("1".into()),
            degree: Some(1),
            verdict: Some(Verdict::Automorphism),
            strong: Some(true),
            ..Default::default()
        },
    });
    out.push(Fixture {
        name: "squaring".into(),
        map: PolyMap::from_int_terms(&[(1, &[2, 0]), (-1, &[0, 2])], &[(2, &[1, 1])]).expect("valid map"),
        expect: Expectations {
            exceptional_nodes: Some(0),
            degree: Some(4),
            verdict: Some(Verdict::PreconditionFailed),
            ..Default::default()
        },
    });
    out.push(Fixture {
        name: "x-xy".into(),
        map: PolyMap::from_int_terms(&[(1, &[1, 0])], &[(1, &[1, 1])]).expect("valid map"),
        expect: Expectations {
            jacobian: Some("x".into()),
            verdict: Some(Verdict::PreconditionFailed),
            ..Default::default()
        },
    });
    out
}

/// The map restricted to `y = 0`, as a curve in the parameter `t = x`.
pub fn x_axis_parametrization(f: &PolyMap) -> Result<ParametrizedImage, CorpusError> {
    let field = ExtField::rationals();
    let restrict = |p: &crate::algebra::SparsePoly| p.eval_var(1, &Elem::zero()).to_univariate(0);
    let (a, b) = (restrict(f.p())?, restrict(f.q())?);
    let kind = if a.degree().unwrap_or(0) == 0 && b.degree().unwrap_or(0) == 0 {
        ImageKind::Contracted
    } else {
        ImageKind::AffineCurve
    };
    Ok(ParametrizedImage { kind, field, chart: 0, param: "t".into(), a, b, c: UniPoly::one() })
}

/// Last node in creation order.
fn last_node(tree: &ResolutionTree) -> &crate::resolution::TCurveNode {
    &tree.nodes[crate::analysis::last_node(tree)]
}

/// Checks every stated expectation, returning one message per mismatch.
pub fn check_fixture(fx: &Fixture, opts: &ResolveOptions, seed: u64) -> Result<Vec<String>, CorpusError> {
    let e = &fx.expect;
    let mut fails = Vec::new();
    let mut check = |what: &str, got: String, want: String| {
        if got != want {
            fails.push(format!("{}: {what} is {got}, expected {want}", fx.name));
        }
    };
    let tree = resolve(&fx.map, opts).map_err(AnalysisError::from)?;
    if let Some(n) = e.exceptional_nodes {
        check("exceptional node count", tree.exceptional_count().to_string(), n.to_string());
    }
    if let Some(edges) = &e.edges {
        let got: Vec<_> = tree.edges.iter().copied().collect();
        check("edge set", format!("{got:?}"), format!("{edges:?}"));
    }
    if let Some(p) = e.last_pole {
        check("last pole order", last_node(&tree).pole_order.to_string(), p.to_string());
    }
    if let Some(a) = e.last_mult {
        check("last multiplicity", format!("{:?}", last_node(&tree).mult_t), format!("{:?}", Some(a)));
    }
    if let Some(j) = &e.jacobian {
        check("jacobian", fx.map.jacobian().to_string(), j.clone());
    }
    if let Some(d) = e.degree {
        check("topological degree", topological_degree(&fx.map, seed)?.to_string(), d.to_string());
    }
    let cert = certify_tree(&tree)?;
    if let Some(v) = e.verdict {
        check("verdict", cert.verdict.to_string(), v.to_string());
    }
    if let Some(s) = e.strong {
        check("strong form", cert.strong.to_string(), s.to_string());
    }
    if let Some((implicit, branch)) = &e.x_axis_image {
        let p = x_axis_parametrization(&fx.map)?;
        check("image of y=0", image_curve(&p)?.to_string(), implicit.clone());
        check("branch at t=0", classify_branch(&p, &Elem::zero(), seed)?.to_string(), branch.to_string());
    }
    Ok(fails)
}

/// A resolved `F2` tree with every pole order replaced, for exercising the
/// pole-pair validator on data no resolution produces.
pub fn with_pole_orders(mut tree: ResolutionTree, poles: &[i64]) -> ResolutionTree {
    assert_eq!(tree.nodes.len(), poles.len(), "one pole order per node");
    for (n, &p) in tree.nodes.iter_mut().zip(poles) {
        n.pole_order = p;
    }
    tree
}

/// Synthetic trees with exactly one excluded pair, on the edge `L - E2`
/// of the `F2` graph: `(2, 4)` and `(-4, -4)`.
pub fn synthetic_pair_trees() -> Vec<(&'static str, ResolutionTree)> {
    let base = resolve(&f_n(2), &ResolveOptions::default()).expect("F2 resolves");
    // node order L, E1, E2, E3; parent edges (E2,E1), (L,E2), (E2,E3)
    vec![
        ("pair(2,4)", with_pole_orders(base.clone(), &[2, 4, 4, 6])),
        ("pair(-4,-4)", with_pole_orders(base, &[-4, -6, -4, -6])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_edges() {
        assert_eq!(f_n_edges(2), vec![(0, 2), (1, 2), (2, 3)]);
        assert_eq!(f_n_edges(3), vec![(0, 2), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn fixture_names() {
        let names: Vec<String> = known_examples().into_iter().map(|f| f.name).collect();
        assert_eq!(names, ["F2", "F3", "F4", "F5", "cusp", "identity", "squaring", "x-xy"]);
    }
}

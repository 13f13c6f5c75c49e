//! Automorphism certificates and reports on nodes outside `supp T`.

use std::fmt;

use crate::resolution::{
    resolve, restricted_map, ImageKind, NodeKind, PolyMap, ResolutionTree, ResolveOptions, ROOT,
};

use super::image::{critical_branches, image_curve, BranchType};
use super::{jacobian_is_unit, AnalysisError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Automorphism,
    NotCertified,
    PreconditionFailed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Automorphism => "automorphism",
            Verdict::NotCertified => "not-certified",
            Verdict::PreconditionFailed => "precondition-failed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    JacobianNonconstant(String),
    /// No base points at all; accepted.
    EmptyChain,
    /// The first stage where the chain shape fails.
    ChainBreak { stage: usize, reason: String },
    IrrationalCenter { stage: usize, center: String, orbit_size: u64 },
    LastPoleOrder { node: String, pole_order: i64 },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::JacobianNonconstant(j) => write!(f, "jacobian {j} is not a nonzero constant"),
            Finding::EmptyChain => write!(f, "no base points"),
            Finding::ChainBreak { stage, reason } => write!(f, "chain break at stage {stage}: {reason}"),
            Finding::IrrationalCenter { stage, center, orbit_size } => {
                write!(f, "irrational center {center} of orbit size {orbit_size} at stage {stage}")
            }
            Finding::LastPoleOrder { node, pole_order } => write!(f, "last node {node} has pole order {pole_order}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub reasons: Vec<Finding>,
    /// Last pole order exactly 6.
    pub strong: bool,
}

/// First violation of the chain shape: stages `1..=k`, one center each, of
/// orbit size 1, each after the first lying on the previous node.
pub fn chain_break(tree: &ResolutionTree) -> Option<Finding> {
    let log = &tree.blowup_log;
    let last_stage = log.iter().map(|r| r.stage).max().unwrap_or(0);
    let mut prev = None;
    for stage in 1..=last_stage {
        let at: Vec<_> = log.iter().filter(|r| r.stage == stage).collect();
        let reason = match at.as_slice() {
            [] => Some("no center".to_string()),
            [r] if r.orbit_size != 1 => {
                return Some(Finding::IrrationalCenter { stage, center: r.center.clone(), orbit_size: r.orbit_size })
            }
            [r] => match prev {
                Some(p) if !r.center_type.parents().contains(&p) => {
                    Some(format!("center {} is not on {}", r.center, tree.nodes[p].name))
                }
                _ => {
                    prev = Some(r.node);
                    None
                }
            },
            many => Some(format!("{} centers", many.len())),
        };
        if let Some(reason) = reason {
            return Some(Finding::ChainBreak { stage, reason });
        }
    }
    None
}

/// The node created last, or `L` without blow-ups.
pub fn last_node(tree: &ResolutionTree) -> usize {
    tree.blowup_log.iter().max_by_key(|r| (r.stage, r.node)).map_or(ROOT, |r| r.node)
}

pub fn certify_tree(tree: &ResolutionTree) -> Result<Certificate, AnalysisError> {
    let mut reasons = Vec::new();
    if !jacobian_is_unit(&tree.map)? {
        reasons.push(Finding::JacobianNonconstant(tree.map.jacobian().to_string()));
        return Ok(Certificate { verdict: Verdict::PreconditionFailed, reasons, strong: false });
    }
    if tree.blowup_log.is_empty() {
        reasons.push(Finding::EmptyChain);
    }
    let broken = chain_break(tree);
    let last = &tree.nodes[last_node(tree)];
    let strong = last.pole_order == 6;
    let ok = broken.is_none() && last.pole_order >= 0;
    reasons.extend(broken);
    reasons.push(Finding::LastPoleOrder { node: last.name.clone(), pole_order: last.pole_order });
    let verdict = if ok { Verdict::Automorphism } else { Verdict::NotCertified };
    Ok(Certificate { verdict, reasons, strong: ok && strong })
}

/// Resolves `f` and certifies it. The Jacobian gate runs first so maps
/// failing it are not resolved.
pub fn certify_automorphism(f: &PolyMap, opts: &ResolveOptions) -> Result<Certificate, AnalysisError> {
    if !jacobian_is_unit(f)? {
        return Ok(Certificate {
            verdict: Verdict::PreconditionFailed,
            reasons: vec![Finding::JacobianNonconstant(f.jacobian().to_string())],
            strong: false,
        });
    }
    certify_tree(&resolve(f, opts)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineImage {
    /// Affine coordinates, printed in the node's chart field.
    Point(String, String),
    Curve { implicit: String, branches: Vec<(String, BranchType)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonProperNode {
    pub node: usize,
    pub image: AffineImage,
    pub pole_order: i64,
    pub mult_image: Option<u32>,
    pub self_int: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonPropernessReport {
    pub nodes: Vec<NonProperNode>,
    /// Non-empty report for a map with nonzero constant Jacobian.
    pub flagged: bool,
}

/// Every node outside `supp T`, with its image in the affine plane.
pub fn non_properness_report(tree: &ResolutionTree, seed: u64) -> Result<NonPropernessReport, AnalysisError> {
    let mut nodes = Vec::new();
    for n in tree.nodes.iter().filter(|n| n.mult_t.is_none()) {
        let img = restricted_map(tree, n.id)?;
        let image = match img.kind {
            ImageKind::AffineCurve => AffineImage::Curve {
                implicit: image_curve(&img)?.to_string(),
                branches: critical_branches(&img, seed)?,
            },
            ImageKind::Contracted => {
                let [x, y] = img
                    .affine_point()?
                    .ok_or_else(|| AnalysisError::Internal(format!("{} contracted to infinity", n.name)))?;
                AffineImage::Point(img.field.display(&x).to_string(), img.field.display(&y).to_string())
            }
            ImageKind::LineAtInfinity => {
                return Err(AnalysisError::Internal(format!("{} maps onto the line at infinity", n.name)))
            }
        };
        nodes.push(NonProperNode {
            node: n.id,
            image,
            pole_order: n.pole_order,
            mult_image: n.mult_image,
            self_int: n.self_int,
        });
    }
    let flagged = !nodes.is_empty() && jacobian_is_unit(&tree.map)?;
    Ok(NonPropernessReport { nodes, flagged })
}

/// Exceptional nodes of self-intersection -1 that are contracted.
pub fn minimality_report(tree: &ResolutionTree) -> Result<Vec<usize>, AnalysisError> {
    let mut out = Vec::new();
    for n in &tree.nodes {
        if n.kind == NodeKind::Exceptional
            && n.self_int == -1
            && restricted_map(tree, n.id)?.kind == ImageKind::Contracted
        {
            out.push(n.id);
        }
    }
    Ok(out)
}

//! Checks and certificates computed on a resolution tree.

mod certify;
mod degree;
mod image;
mod intersection;
mod pairs;
mod relations;

use thiserror::Error;

use crate::algebra::{AlgebraError, SparsePoly};
use crate::resolution::{restricted_map, ImageKind, PolyMap, ResolutionError, ResolutionTree};

pub use certify::{
    certify_automorphism, certify_tree, chain_break, last_node, minimality_report, non_properness_report,
    AffineImage, Certificate, Finding, NonProperNode, NonPropernessReport, Verdict,
};
pub use degree::{resultant_in_y, topological_degree};
pub use image::{
    classify_branch, critical_branches, critical_parameters, image_curve, image_multiplicity,
    vanishes_on_parametrization, BranchType,
};
pub use intersection::{t_dot, t_self_intersection, SelfIntersection};
pub use pairs::{validate_pole_pairs, PairClause, PolePairViolation};
pub use relations::{check_order_relations, OrderReport, Relation, RelationCheck, RANDOM_PROBES};

/// Seed for generic linear changes and probe functions unless overridden.
pub const DEFAULT_SEED: u64 = 0x6a61_6369_6e66;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum AnalysisError {
    #[error("map not dominant")]
    NotDominant,
    #[error("node is contracted")]
    NotACurve,
    #[error("point is not on the image")]
    PointNotOnImage,
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

impl AnalysisError {
    /// Whether the failure comes from a truncated chart expansion.
    pub fn is_truncated(&self) -> bool {
        matches!(
            self,
            AnalysisError::Algebra(AlgebraError::Truncated)
                | AnalysisError::Resolution(ResolutionError::Algebra(AlgebraError::Truncated))
        )
    }
}

/// Whether the Jacobian determinant is a nonzero constant.
pub fn jacobian_is_unit(f: &PolyMap) -> Result<bool, AnalysisError> {
    let j: SparsePoly = f.jacobian();
    Ok(j.is_constant() && !j.is_zero())
}

/// Fills `mult_image` for nodes outside `supp T` whose image is an affine
/// curve. Stops at the first failure, leaving later nodes empty.
pub fn annotate_image_multiplicities(tree: &mut ResolutionTree) -> Result<(), AnalysisError> {
    for id in 0..tree.nodes.len() {
        if tree.nodes[id].mult_t.is_some() {
            continue;
        }
        let img = restricted_map(tree, id)?;
        if img.kind != ImageKind::AffineCurve {
            continue;
        }
        let chart = &tree.charts[img.chart];
        let axis = chart.axis_of(id).ok_or_else(|| AnalysisError::Internal("axis lost".into()))?;
        tree.nodes[id].mult_image = Some(image_multiplicity(chart, axis, &image_curve(&img)?)?);
    }
    Ok(())
}

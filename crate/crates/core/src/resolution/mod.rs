//! Extension of a polynomial map to the projective plane and resolution of
//! its indeterminacy at infinity.

mod chart;
mod map;
mod tree;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use chart::{blow_up, charts_at_infinity, find_base_points, uv_vars, BlowUp, Center, ChartMap, Search, ROOT};
pub use map::{jacobian, xy_vars, PolyMap};
pub use tree::{
    multiplicity_in_t, resolve, restrict_chart, restricted_map, BlowupRecord, CenterType, ImageKind, NodeKind,
    ParametrizedImage, ResolutionTree, ResolveOptions, TCurveNode, DEFAULT_MAX_BLOWUPS,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResolutionError {
    #[error("map is constant")]
    ConstantMap,
    #[error("resolution budget exceeded (more than {0} blow-ups)")]
    BudgetExceeded(usize),
    #[error("irrational base point at {0} while restricted to rational centers")]
    IrrationalCenter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("internal error: {0}")]
    Internal(String),
}

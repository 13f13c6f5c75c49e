//! Relations between pole orders and multiplicities for maps with a
//! nonzero constant Jacobian.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Elem, SparsePoly};
use crate::resolution::{restricted_map, ImageKind, ResolutionTree};

use super::degree::small_rational;
use super::image::{image_curve, image_multiplicity};
use super::{jacobian_is_unit, AnalysisError};

/// Random linear probe functions through a contracted image point, on top
/// of the two coordinate functions.
pub const RANDOM_PROBES: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// Onto the line at infinity: `4a = p - 2`.
    OntoInfinity { a: u32 },
    /// Contracted, in `supp T`: `4a >= p - 2`.
    ContractedInT { a: u32 },
    /// Onto an affine curve: `2m = 2 - p`.
    AffineCurve { m: u32 },
    /// Contracted to an affine point: `2 m_f <= 2 - p` for a probe `f`.
    AffinePoint { probe: String, m: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub node: usize,
    pub pole_order: i64,
    pub relation: Relation,
    pub holds: bool,
}

impl fmt::Display for RelationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.pole_order;
        match &self.relation {
            Relation::OntoInfinity { a } => write!(f, "4*{a} = {p}-2"),
            Relation::ContractedInT { a } => write!(f, "4*{a} >= {p}-2"),
            Relation::AffineCurve { m } => write!(f, "2*{m} = 2-({p})"),
            Relation::AffinePoint { probe, m } => write!(f, "2*m[{probe}]={} <= 2-({p})", 2 * m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    /// False when the Jacobian is not a nonzero constant.
    pub applicable: bool,
    pub checks: Vec<RelationCheck>,
}

impl OrderReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub fn check_order_relations(tree: &ResolutionTree, seed: u64) -> Result<OrderReport, AnalysisError> {
    if !jacobian_is_unit(&tree.map)? {
        return Ok(OrderReport { applicable: false, checks: Vec::new() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes: Vec<(Elem, Elem)> = (0..RANDOM_PROBES)
        .map(|_| loop {
            let (a, b) = (small_rational(&mut rng), small_rational(&mut rng));
            if a != num_traits::Zero::zero() && b != num_traits::Zero::zero() {
                break (Elem::Rat(a), Elem::Rat(b));
            }
        })
        .collect();
    let mut checks = Vec::new();
    for n in &tree.nodes {
        let p = n.pole_order;
        let img = restricted_map(tree, n.id)?;
        let mut push = |relation: Relation, holds: bool| {
            checks.push(RelationCheck { node: n.id, pole_order: p, relation, holds })
        };
        match (img.kind, n.mult_t) {
            (ImageKind::LineAtInfinity, Some(a)) => push(Relation::OntoInfinity { a }, 4 * a as i64 == p - 2),
            (ImageKind::Contracted, Some(a)) => push(Relation::ContractedInT { a }, 4 * a as i64 >= p - 2),
            (ImageKind::AffineCurve, None) => {
                let m = match n.mult_image {
                    Some(m) => m,
                    None => {
                        let chart = &tree.charts[img.chart];
                        let axis = chart.axis_of(n.id).expect("restriction chart has the node as axis");
                        image_multiplicity(chart, axis, &image_curve(&img)?)?
                    }
                };
                push(Relation::AffineCurve { m }, 2 * m as i64 == 2 - p);
            }
            (ImageKind::Contracted, None) => {
                let chart = &tree.charts[img.chart];
                let axis = chart.axis_of(n.id).expect("restriction chart has the node as axis");
                let [x0, y0] = img.affine_point()?.ok_or_else(|| AnalysisError::Internal("contracted to infinity outside supp T".into()))?;
                let [a, b, c] = &chart.triple;
                let dx = a.sub(&c.scale(&x0));
                let dy = b.sub(&c.scale(&y0));
                let mut family: Vec<(String, SparsePoly)> = vec![("x-x0".into(), dx.clone()), ("y-y0".into(), dy.clone())];
                for (k, (al, be)) in probes.iter().enumerate() {
                    family.push((format!("l{}", k + 1), dx.scale(al).add(&dy.scale(be))));
                }
                for (name, g) in family {
                    let m = chart.order_in(&g, axis)?.unwrap_or(u32::MAX);
                    push(Relation::AffinePoint { probe: name, m }, 2 * m as i64 <= 2 - p);
                }
            }
            (kind, a) => {
                return Err(AnalysisError::Internal(format!("inconsistent image {kind:?} with multiplicity {a:?}")))
            }
        }
    }
    Ok(OrderReport { applicable: true, checks })
}

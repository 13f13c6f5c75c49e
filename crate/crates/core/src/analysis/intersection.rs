//! Intersection numbers of the divisor `T` on the resolved surface.
//!
//! A node of orbit size `o` stands for `o` conjugate curves, each with
//! self-intersection `s`. An edge between nodes of orbit sizes `o1 | o2`
//! stands for `max(o1, o2)` transverse intersection points.

use crate::resolution::{restricted_map, ImageKind, ResolutionError, ResolutionTree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfIntersection {
    /// `T · T`.
    pub t_squared: i64,
    /// `T · E` for one geometric component of every contracted node in
    /// `supp T`, by node id.
    pub t_dot_contracted: Vec<(usize, i64)>,
}

/// `T · E` for one geometric component of `node`.
pub fn t_dot(tree: &ResolutionTree, node: usize) -> i64 {
    let n = &tree.nodes[node];
    let a = |id: usize| tree.nodes[id].mult_t.unwrap_or(0) as i64;
    let mut total = a(node) * n.self_int;
    for x in tree.neighbors(node) {
        let o = tree.nodes[x].orbit_size.max(n.orbit_size);
        total += a(x) * (o / n.orbit_size) as i64;
    }
    total
}

pub fn t_self_intersection(tree: &ResolutionTree) -> Result<SelfIntersection, ResolutionError> {
    let a = |id: usize| tree.nodes[id].mult_t.unwrap_or(0) as i64;
    let mut t2: i64 = tree.nodes.iter().map(|n| a(n.id) * a(n.id) * n.self_int * n.orbit_size as i64).sum();
    for &(i, j) in &tree.edges {
        let o = tree.nodes[i].orbit_size.max(tree.nodes[j].orbit_size) as i64;
        t2 += 2 * a(i) * a(j) * o;
    }
    let mut dots = Vec::new();
    for n in &tree.nodes {
        if n.mult_t.is_some() && restricted_map(tree, n.id)?.kind == ImageKind::Contracted {
            dots.push((n.id, t_dot(tree, n.id)));
        }
    }
    Ok(SelfIntersection { t_squared: t2, t_dot_contracted: dots })
}

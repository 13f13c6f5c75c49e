//! The resolution engine and the annotated graph of t-curves.

use std::collections::{BTreeSet, VecDeque};

use crate::algebra::{univariate_root_orbits, AlgebraError, Elem, ExtField, UniPoly};

use super::chart::{blow_up, charts_at_infinity, find_base_points, Center, ChartMap, ROOT};
use super::map::PolyMap;
use super::ResolutionError;

pub const DEFAULT_MAX_BLOWUPS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    RootLine,
    Exceptional,
}

/// How a node was created: on one t-curve or at the crossing of two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterType {
    Single(usize),
    Double(usize, usize),
}

impl CenterType {
    pub fn parents(&self) -> Vec<usize> {
        match *self {
            CenterType::Single(a) => vec![a],
            CenterType::Double(a, b) => vec![a, b],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TCurveNode {
    pub id: usize,
    pub name: String,
    pub kind: NodeKind,
    /// Always even.
    pub pole_order: i64,
    /// Multiplicity in `T`; `None` outside its support.
    pub mult_t: Option<u32>,
    /// Multiplicity of the image curve's equation along the node, for
    /// nodes outside `supp T` whose image is an affine curve.
    pub mult_image: Option<u32>,
    pub self_int: i64,
    /// Number of geometric curves represented (degree of the chart field).
    pub orbit_size: u64,
    pub center_type: Option<CenterType>,
    pub t_parent: Option<usize>,
    /// 0 for L; otherwise one more than the stage of the curve carrying the
    /// center.
    pub stage: usize,
    /// Multiplicity of the blown-up base point.
    pub base_multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupRecord {
    pub stage: usize,
    pub center: String,
    pub center_type: CenterType,
    pub node: usize,
    pub orbit_size: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    pub max_blowups: usize,
    /// Reject base points that are not rational instead of adjoining them.
    pub rational_only: bool,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions { max_blowups: DEFAULT_MAX_BLOWUPS, rational_only: false }
    }
}

/// The rooted graph of t-curves together with every chart visited.
#[derive(Clone, Debug)]
pub struct ResolutionTree {
    pub map: PolyMap,
    pub nodes: Vec<TCurveNode>,
    /// Unordered pairs stored as `(min, max)`.
    pub edges: BTreeSet<(usize, usize)>,
    /// Every chart produced, in creation order; `is_final` marks the charts
    /// without base points.
    pub charts: Vec<ChartMap>,
    pub blowup_log: Vec<BlowupRecord>,
}

impl ResolutionTree {
    pub fn node(&self, id: usize) -> &TCurveNode {
        &self.nodes[id]
    }

    pub fn final_charts(&self) -> impl Iterator<Item = &ChartMap> {
        self.charts.iter().filter(|c| c.is_final)
    }

    pub fn exceptional_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// `(t_parent, child)` pairs in child order.
    pub fn parent_edges(&self) -> Vec<(usize, usize)> {
        self.nodes.iter().filter_map(|n| n.t_parent.map(|p| (p, n.id))).collect()
    }

    /// Charts in which `node` is a coordinate axis with a complete
    /// restriction, most precise along the axis first, then final charts.
    pub fn charts_with_axis(&self, node: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .charts
            .iter()
            .enumerate()
            .filter_map(|(k, c)| c.axis_of(node).filter(|&i| c.restriction_known(i)).map(|i| (k, i)))
            .collect();
        out.sort_by_key(|&(k, i)| {
            let c = &self.charts[k];
            (std::cmp::Reverse(c.unknown.along(i).unwrap_or(u32::MAX)), !c.is_final, k)
        });
        out
    }
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

struct Snapshot {
    nodes: Vec<TCurveNode>,
    edges: BTreeSet<(usize, usize)>,
    charts: usize,
    log: usize,
}

struct Engine {
    opts: ResolveOptions,
    /// Total degree at which expansions are cut at each center.
    trunc: Option<u32>,
    nodes: Vec<TCurveNode>,
    edges: BTreeSet<(usize, usize)>,
    charts: Vec<ChartMap>,
    log: Vec<BlowupRecord>,
}

impl Engine {
    fn snapshot(&self) -> Snapshot {
        Snapshot { nodes: self.nodes.clone(), edges: self.edges.clone(), charts: self.charts.len(), log: self.log.len() }
    }

    fn restore(&mut self, s: Snapshot) {
        self.nodes = s.nodes;
        self.edges = s.edges;
        self.charts.truncate(s.charts);
        self.log.truncate(s.log);
    }

    fn process_chart(&mut self, mut chart: ChartMap) -> Result<(), ResolutionError> {
        let centers = find_base_points(&chart)?;
        chart.is_final = centers.is_empty();
        let idx = self.charts.len();
        self.charts.push(chart);
        for c in centers {
            self.process_center(idx, c)?;
        }
        Ok(())
    }

    /// Blows up one orbit. A center that adjoins a new tower level owns
    /// that level: a split of it restores the state from before the center
    /// and replays the center once per factor.
    fn process_center(&mut self, chart_idx: usize, center: Center) -> Result<(), ResolutionError> {
        if center.orbit_size() < 2 {
            return self.blow_up_center(chart_idx, &center);
        }
        let chart = &self.charts[chart_idx];
        if self.opts.rational_only {
            return Err(ResolutionError::IrrationalCenter(center.describe(chart)));
        }
        let level = chart.field.height() + 1;
        let snap = self.snapshot();
        match self.blow_up_center(chart_idx, &center) {
            Err(ResolutionError::Algebra(AlgebraError::Split(ev))) if ev.level == level => {
                self.restore(snap);
                let field = self.charts[chart_idx].field.clone();
                let mut orbits = Vec::new();
                for factor in &ev.factors {
                    orbits.extend(univariate_root_orbits(&field, factor)?);
                }
                orbits.sort_by(|a, b| UniPoly::canonical_cmp(&a.modulus, &b.modulus));
                for o in orbits {
                    self.process_center(chart_idx, Center { axis: center.axis, modulus: o.modulus })?;
                }
                Ok(())
            }
            other => other,
        }
    }

    fn blow_up_center(&mut self, chart_idx: usize, center: &Center) -> Result<(), ResolutionError> {
        let chart = self.charts[chart_idx].clone();
        let id = self.nodes.len();
        if id > self.opts.max_blowups {
            return Err(ResolutionError::BudgetExceeded(self.opts.max_blowups));
        }
        let gen_name = format!("α{}", chart.field.height() + 1);
        let bu = blow_up(&chart, center, id, &gen_name, self.trunc)?;
        let orbit = bu.field.degree();
        let searched = chart
            .searched_curve()
            .ok_or_else(|| ResolutionError::Internal("center off every t-curve".into()))?;
        let stage = self.nodes[searched].stage + 1;
        let center_type = match bu.through[..] {
            [a] => CenterType::Single(a),
            [a, b] => CenterType::Double(a, b),
            _ => return Err(ResolutionError::Internal("center lies on no t-curve".into())),
        };
        let pole_order = bu.through.iter().map(|&x| self.nodes[x].pole_order).sum::<i64>() - 2;
        for &x in &bu.through {
            let ratio = orbit / self.nodes[x].orbit_size;
            self.nodes[x].self_int -= ratio as i64;
        }
        if let CenterType::Double(a, b) = center_type {
            self.edges.remove(&edge(a, b));
        }
        for &x in &bu.through {
            self.edges.insert(edge(x, id));
        }
        self.nodes.push(TCurveNode {
            id,
            name: format!("E{id}"),
            kind: NodeKind::Exceptional,
            pole_order,
            mult_t: None,
            mult_image: None,
            self_int: -1,
            orbit_size: orbit,
            center_type: Some(center_type),
            t_parent: None,
            stage,
            base_multiplicity: bu.multiplicity,
        });
        self.log.push(BlowupRecord { stage, center: center.describe(&chart), center_type, node: id, orbit_size: orbit });
        let [a, b] = bu.charts;
        self.process_chart(a)?;
        self.process_chart(b)
    }
}

/// Truncated attempts before falling back to exact expansions.
const TRUNCATED_ATTEMPTS: u32 = 4;

/// Resolves the indeterminacy of the extension of `f` to the projective
/// plane by iterated point blow-ups at infinity.
///
/// Expansions at each center are cut at a total degree starting from
/// `4d + 8`; whenever a decision depends on a dropped term the whole
/// resolution is rerun with twice the degree, and finally without cuts.
/// The result does not depend on the cut.
pub fn resolve(f: &PolyMap, opts: &ResolveOptions) -> Result<ResolutionTree, ResolutionError> {
    let mut trunc = 4 * f.degree() + 8;
    for _ in 0..TRUNCATED_ATTEMPTS {
        match resolve_truncated(f, opts, Some(trunc)) {
            Err(ResolutionError::Algebra(AlgebraError::Truncated)) => trunc *= 2,
            r => return r,
        }
    }
    resolve_truncated(f, opts, None)
}

fn resolve_truncated(f: &PolyMap, opts: &ResolveOptions, trunc: Option<u32>) -> Result<ResolutionTree, ResolutionError> {
    let mut engine = Engine {
        opts: *opts,
        trunc,
        nodes: vec![TCurveNode {
            id: ROOT,
            name: "L".into(),
            kind: NodeKind::RootLine,
            pole_order: 6,
            mult_t: None,
            mult_image: None,
            self_int: 1,
            orbit_size: 1,
            center_type: None,
            t_parent: None,
            stage: 0,
            base_multiplicity: 0,
        }],
        edges: BTreeSet::new(),
        charts: Vec::new(),
        log: Vec::new(),
    };
    for chart in charts_at_infinity(f)? {
        match engine.process_chart(chart) {
            Err(ResolutionError::Algebra(AlgebraError::Split(_))) => {
                return Err(ResolutionError::Internal("unowned tower split".into()))
            }
            r => r?,
        }
    }
    let mut tree = ResolutionTree {
        map: f.clone(),
        nodes: engine.nodes,
        edges: engine.edges,
        charts: engine.charts,
        blowup_log: engine.log,
    };
    assign_t_parents(&mut tree);
    for id in 0..tree.nodes.len() {
        tree.nodes[id].mult_t = multiplicity_in_t(&tree, id)?;
    }
    if crate::analysis::annotate_image_multiplicities(&mut tree).is_err_and(|e| e.is_truncated()) {
        return Err(AlgebraError::Truncated.into());
    }
    Ok(tree)
}

/// Breadth-first orientation of the graph away from L.
fn assign_t_parents(tree: &mut ResolutionTree) {
    let mut seen = vec![false; tree.nodes.len()];
    let mut queue = VecDeque::from([ROOT]);
    seen[ROOT] = true;
    while let Some(x) = queue.pop_front() {
        let mut nb = tree.neighbors(x);
        nb.sort_unstable();
        for y in nb {
            if !seen[y] {
                seen[y] = true;
                tree.nodes[y].t_parent = Some(x);
                queue.push_back(y);
            }
        }
    }
}

/// Vanishing order of `C` along `node`, checked equal in every chart where
/// `node` is an axis. `None` when the node is outside `supp T`.
pub fn multiplicity_in_t(tree: &ResolutionTree, node: usize) -> Result<Option<u32>, ResolutionError> {
    let mut found: Option<u32> = None;
    for (k, i) in tree.charts_with_axis(node) {
        let chart = &tree.charts[k];
        let ord = match chart.order_in(&chart.triple[2], i) {
            Err(AlgebraError::Truncated) => continue,
            r => r?.ok_or_else(|| ResolutionError::Internal("chart with vanishing C".into()))?,
        };
        match found {
            None => found = Some(ord),
            Some(prev) if prev != ord => {
                return Err(ResolutionError::Internal(format!(
                    "multiplicity of {} differs between charts ({prev} vs {ord})",
                    tree.nodes[node].name
                )))
            }
            _ => {}
        }
    }
    match found {
        None => Err(AlgebraError::Truncated.into()),
        Some(0) => Ok(None),
        Some(a) => Ok(Some(a)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageKind {
    /// The node maps to a single point.
    Contracted,
    /// The node maps onto the line at infinity.
    LineAtInfinity,
    /// The node maps onto a curve meeting the affine plane, `(a/c, b/c)`.
    AffineCurve,
}

/// Restriction `[a(t) : b(t) : c(t)]` of a chart triple to a node's axis,
/// with common factors removed.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametrizedImage {
    pub kind: ImageKind,
    pub field: ExtField,
    pub chart: usize,
    pub param: String,
    pub a: UniPoly,
    pub b: UniPoly,
    pub c: UniPoly,
}

impl ParametrizedImage {
    /// Image point `[a : b : c]` of a contracted node.
    pub fn point(&self) -> Option<[Elem; 3]> {
        (self.kind == ImageKind::Contracted).then(|| [self.a.coeff(0), self.b.coeff(0), self.c.coeff(0)])
    }

    /// Affine image point of a contracted node, when it is not at infinity.
    pub fn affine_point(&self) -> Result<Option<[Elem; 2]>, AlgebraError> {
        match self.point() {
            Some([a, b, c]) if !c.is_zero() => Ok(Some([self.field.div(&a, &c)?, self.field.div(&b, &c)?])),
            _ => Ok(None),
        }
    }
}

/// Restriction of the resolved map to `node`, read in the first chart
/// (final charts preferred) where the node is an axis.
pub fn restricted_map(tree: &ResolutionTree, node: usize) -> Result<ParametrizedImage, ResolutionError> {
    let &(k, i) = tree
        .charts_with_axis(node)
        .first()
        .ok_or_else(|| ResolutionError::Internal(format!("{} is not an axis of any chart", tree.nodes[node].name)))?;
    let chart = &tree.charts[k];
    Ok(restrict_chart(chart, k, i)?)
}

/// Restriction of a chart triple to its axis `coord_i = 0`.
pub fn restrict_chart(chart: &ChartMap, chart_idx: usize, i: usize) -> Result<ParametrizedImage, AlgebraError> {
    let f = &chart.field;
    let j = 1 - i;
    let mut parts: Vec<UniPoly> = Vec::with_capacity(3);
    for p in &chart.triple {
        parts.push(p.eval_var(i, &Elem::zero()).to_univariate(j)?);
    }
    let mut g = UniPoly::zero();
    for p in &parts {
        g = UniPoly::gcd(f, &g, p)?;
    }
    if g.is_zero() {
        return Err(AlgebraError::NotCoprime);
    }
    let parts: Vec<UniPoly> = parts.iter().map(|p| p.div_exact(f, &g)).collect::<Result<_, _>>()?;
    let constant = parts.iter().all(|p| p.degree().unwrap_or(0) == 0);
    let kind = if constant {
        ImageKind::Contracted
    } else if parts[2].is_zero() {
        ImageKind::LineAtInfinity
    } else {
        ImageKind::AffineCurve
    };
    let mut it = parts.into_iter();
    Ok(ParametrizedImage {
        kind,
        field: f.clone(),
        chart: chart_idx,
        param: chart.coords()[j].clone(),
        a: it.next().unwrap(),
        b: it.next().unwrap(),
        c: it.next().unwrap(),
    })
}

//! Affine charts of the blown-up projective plane and the elementary
//! operations on them: the two charts at infinity, base-point search and
//! the blow-up of a point.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{
    poly_gcd_many, univariate_root_orbits, vars, AlgebraError, AlgebraResult, Class, Elem, ExtField, Monomial, Rational,
    SparsePoly, UniPoly, Vars,
};

use super::map::PolyMap;

/// Node id of the strict transform of the line at infinity.
pub const ROOT: usize = 0;

pub fn uv_vars() -> Vars {
    vars(&["u", "v"])
}

/// Which base points a chart is responsible for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Search {
    /// Every point of the axis `coord = 0`.
    Axis(usize),
    /// Only the origin, which lies on axis `v = 0`.
    Origin,
}

/// Exponents whose coefficients a chart does not track: the upper set
/// generated by `gens`. Empty for exact charts. Since the set is an ideal,
/// sums and products of truncated polynomials stay correct outside it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Unknown {
    gens: Vec<[u32; 2]>,
}

impl Unknown {
    pub fn exact() -> Self {
        Unknown::default()
    }

    fn from_gens(mut gens: Vec<[u32; 2]>) -> Self {
        gens.sort_unstable();
        gens.dedup();
        let all = gens.clone();
        gens.retain(|g| !all.iter().any(|h| h != g && h[0] <= g[0] && h[1] <= g[1]));
        Unknown { gens }
    }

    pub fn is_exact(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        self.gens.iter().any(|g| e[0] >= g[0] && e[1] >= g[1])
    }

    /// Coefficients of `coord_i^o` are complete for `o` below this bound.
    pub fn along(&self, i: usize) -> Option<u32> {
        self.gens.iter().map(|g| g[i]).min()
    }

    /// Every unknown monomial has at least this total degree.
    pub fn total(&self) -> Option<u32> {
        self.gens.iter().map(|g| g[0] + g[1]).min()
    }

    /// After translating the coordinate `1 - i`, only powers of `coord_i`
    /// below `along(i)` stay complete.
    fn translated(&self, i: usize) -> Self {
        match self.along(i) {
            None => Unknown::exact(),
            Some(n) => {
                let mut g = [0, 0];
                g[i] = n;
                Unknown { gens: vec![g] }
            }
        }
    }

    fn with_total_degree(&self, p: u32) -> Self {
        let mut gens = self.gens.clone();
        gens.extend((0..=p).map(|m| [p - m, m]));
        Unknown::from_gens(gens)
    }

    /// Upper set containing the image under a monomial map that is
    /// monotone in both exponents.
    fn mapped(&self, f: impl Fn([u32; 2]) -> [u32; 2]) -> Self {
        Unknown::from_gens(self.gens.iter().map(|&g| f(g)).collect())
    }

    fn prune(&self, p: &SparsePoly) -> SparsePoly {
        if self.is_exact() {
            return p.clone();
        }
        SparsePoly::from_terms(
            p.field(),
            p.vars(),
            p.terms().filter(|(m, _)| !self.contains(m.exps())).map(|(m, c)| (m.clone(), c.clone())),
        )
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| format!("u^{}*v^{}", g[0], g[1])).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Local model `[A : B : C]` of the extended map on an affine chart with
/// coordinates `(u, v)`. `axes[i]` is the t-curve `coord_i = 0`, if any.
/// The triple is exact outside `unknown`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartMap {
    pub field: ExtField,
    pub triple: [SparsePoly; 3],
    pub axes: [Option<usize>; 2],
    pub lineage: String,
    pub search: Search,
    pub is_final: bool,
    pub unknown: Unknown,
}

impl ChartMap {
    pub fn coords(&self) -> &Vars {
        self.triple[0].vars()
    }

    /// Axis index carrying `node`.
    pub fn axis_of(&self, node: usize) -> Option<usize> {
        self.axes.iter().position(|a| *a == Some(node))
    }

    /// Whether the restriction to `coord_i = 0` is complete.
    pub fn restriction_known(&self, i: usize) -> bool {
        self.unknown.along(i) != Some(0)
    }

    /// Order of `p` along `coord_i = 0`, where `p` is computed from the
    /// triple by ring operations. Fails when truncation hides it.
    pub fn order_in(&self, p: &SparsePoly, i: usize) -> AlgebraResult<Option<u32>> {
        let o = p.order_in(i)?;
        match (o, self.unknown.along(i)) {
            (Some(o), Some(n)) if o >= n => Err(AlgebraError::Truncated),
            (None, Some(_)) => Err(AlgebraError::Truncated),
            _ => Ok(o),
        }
    }

    fn order_at_origin(&self, p: &SparsePoly) -> AlgebraResult<Option<u32>> {
        let o = p.order_at_origin()?;
        match (o, self.unknown.total()) {
            (Some(o), Some(n)) if o >= n => Ok(None),
            (None, _) => Ok(None),
            (o, _) => Ok(o),
        }
    }

    /// The curve on which this chart searches for base points.
    pub fn searched_curve(&self) -> Option<usize> {
        match self.search {
            Search::Axis(i) => self.axes[i],
            Search::Origin => self.axes[1],
        }
    }
}

impl fmt::Display for ChartMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.triple[0], self.triple[1], self.triple[2])
    }
}

/// A base point (or Galois orbit of base points) on axis `axis`; the free
/// coordinate is a root of `modulus`.
#[derive(Clone, Debug, PartialEq)]
pub struct Center {
    pub axis: usize,
    pub modulus: UniPoly,
}

impl Center {
    pub fn orbit_size(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn describe(&self, chart: &ChartMap) -> String {
        let names = chart.coords();
        let free = &names[1 - self.axis];
        let fixed = &names[self.axis];
        if self.orbit_size() == 1 {
            let root = self.modulus.coeff(0).neg();
            format!("{fixed}=0, {free}={} in chart {}", chart.field.display(&root), chart.lineage)
        } else {
            format!("{fixed}=0, {} = 0 in chart {}", self.modulus.display(&chart.field, free), chart.lineage)
        }
    }
}

fn make_root_chart(f: &PolyMap, map: impl Fn(&Monomial, u32) -> Monomial, lineage: &str, search: Search) -> AlgebraResult<ChartMap> {
    let (q, uv) = (ExtField::rationals(), uv_vars());
    let d = f.degree();
    let lift = |p: &SparsePoly| {
        SparsePoly::from_terms(&q, &uv, p.terms().map(|(m, c)| (map(m, d), c.clone())))
    };
    let c = SparsePoly::from_terms(&q, &uv, [(Monomial::var(2, 1, d), Elem::one())]);
    let mut triple = [lift(f.p()), lift(f.q()), c];
    normalize_triple(&mut triple)?;
    Ok(ChartMap {
        field: q,
        triple,
        axes: [None, Some(ROOT)],
        lineage: lineage.into(),
        search,
        is_final: false,
        unknown: Unknown::exact(),
    })
}

/// Divides a triple by its gcd.
fn collect_rationals<'a>(e: &'a Elem, out: &mut Vec<&'a Rational>) {
    match e {
        Elem::Rat(r) => out.push(r),
        Elem::Alg { coeffs, .. } => coeffs.iter().for_each(|c| collect_rationals(c, out)),
    }
}

/// Rescales a projective triple so that every rational number in its
/// coefficients is an integer and their gcd is 1.
fn make_primitive(triple: &mut [SparsePoly; 3]) {
    let mut all = Vec::new();
    for p in triple.iter() {
        for (_, c) in p.terms() {
            collect_rationals(c, &mut all);
        }
    }
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for r in all.iter().filter(|r| !r.is_zero()) {
        den = den.lcm(r.denom());
        num = num.gcd(r.numer());
    }
    if num.is_zero() || (den.is_one() && num.is_one()) {
        return;
    }
    let factor = Elem::Rat(Rational::new(den, num));
    for p in triple.iter_mut() {
        *p = p.scale(&factor);
    }
}

fn normalize_triple(triple: &mut [SparsePoly; 3]) -> AlgebraResult<()> {
    if let Some(g) = poly_gcd_many(triple.iter().filter(|p| !p.is_zero()))? {
        if !g.is_constant() {
            for p in triple.iter_mut() {
                *p = p.div_exact(&g)?;
            }
        }
    }
    make_primitive(triple);
    Ok(())
}

/// The two charts covering the line at infinity: `x = 1/v, y = u/v` and
/// `x = u/v, y = 1/v`, each carrying `[v^d P, v^d Q, v^d]`.
pub fn charts_at_infinity(f: &PolyMap) -> AlgebraResult<[ChartMap; 2]> {
    let one = make_root_chart(
        f,
        |m, d| Monomial([m.exps()[1], d - m.degree()].into_iter().collect()),
        "1",
        Search::Axis(1),
    )?;
    let two = make_root_chart(
        f,
        |m, d| Monomial([m.exps()[0], d - m.degree()].into_iter().collect()),
        "2",
        Search::Origin,
    )?;
    Ok([one, two])
}

/// Common zeros of the triple on the part of the chart it is responsible
/// for, as root orbits in canonical order.
pub fn find_base_points(chart: &ChartMap) -> AlgebraResult<Vec<Center>> {
    let f = &chart.field;
    match chart.search {
        Search::Origin => {
            if chart.unknown.contains(&[0, 0]) {
                return Err(AlgebraError::Truncated);
            }
            for p in &chart.triple {
                if f.classify(&p.constant_term())? != Class::Zero {
                    return Ok(Vec::new());
                }
            }
            Ok(vec![Center { axis: 1, modulus: UniPoly::t() }])
        }
        Search::Axis(i) => {
            if !chart.restriction_known(i) {
                return Err(AlgebraError::Truncated);
            }
            let j = 1 - i;
            let mut g = UniPoly::zero();
            for p in &chart.triple {
                let r = p.eval_var(i, &Elem::zero()).to_univariate(j)?;
                g = UniPoly::gcd(f, &g, &r)?;
                if g.degree() == Some(0) {
                    return Ok(Vec::new());
                }
            }
            if g.is_zero() {
                return Err(AlgebraError::NotCoprime);
            }
            Ok(univariate_root_orbits(f, &g)?
                .into_iter()
                .map(|o| Center { axis: i, modulus: o.modulus })
                .collect())
        }
    }
}

/// Outcome of blowing up one center.
#[derive(Clone, Debug)]
pub struct BlowUp {
    pub field: ExtField,
    /// t-curves through the center.
    pub through: Vec<usize>,
    /// Multiplicity of the base point: the power of the exceptional
    /// coordinate removed from the triple.
    pub multiplicity: u32,
    pub charts: [ChartMap; 2],
}

/// Blows up `center`, adjoining its orbit modulus when it is not linear.
/// The new curve is `u = 0` in the first chart (`u = s, v = s t`) and
/// `v = 0` in the second (`u = s t, v = t`). With `trunc = Some(p)` the
/// expansion at the center is cut at total degree `p` first.
pub fn blow_up(
    chart: &ChartMap,
    center: &Center,
    new_node: usize,
    gen_name: &str,
    trunc: Option<u32>,
) -> AlgebraResult<BlowUp> {
    let (field, tau) = if center.orbit_size() == 1 {
        (chart.field.clone(), center.modulus.coeff(0).neg())
    } else {
        let field = chart.field.adjoin(gen_name, &center.modulus)?;
        let tau = field.generator(field.height());
        (field, tau)
    };
    let i = center.axis;
    let j = 1 - i;
    let mut axes = chart.axes;
    let mut unknown = chart.unknown.clone();
    let mut triple: Vec<SparsePoly> = chart.triple.iter().map(|p| p.with_field(&field)).collect();
    if field.classify(&tau)? != Class::Zero {
        unknown = unknown.translated(i);
        triple = triple.iter().map(|p| unknown.prune(&p.translate(j, &tau))).collect();
        axes[j] = None;
    }
    if let Some(p) = trunc {
        unknown = unknown.with_total_degree(p);
        triple = triple.iter().map(|q| unknown.prune(q)).collect();
    }
    let local = ChartMap { unknown: unknown.clone(), ..chart.clone() };
    let mut k = u32::MAX;
    for p in &triple {
        if let Some(o) = local.order_at_origin(p)? {
            k = k.min(o);
        }
    }
    if k == u32::MAX {
        return Err(AlgebraError::Truncated);
    }
    debug_assert!(k >= 1, "center is not a base point");
    let unknown_a = unknown.mapped(|g| [(g[0] + g[1]).saturating_sub(k), g[1]]);
    let unknown_b = unknown.mapped(|g| [g[0], (g[0] + g[1]).saturating_sub(k)]);
    let through: Vec<usize> = axes.iter().flatten().copied().collect();

    let chart_a: [SparsePoly; 3] = std::array::from_fn(|n| {
        triple[n]
            .map_monomials(|m| Monomial([m.exps()[0] + m.exps()[1], m.exps()[1]].into_iter().collect()))
            .div_var_power(0, k)
    });
    let chart_b: [SparsePoly; 3] = std::array::from_fn(|n| {
        triple[n]
            .map_monomials(|m| Monomial([m.exps()[0], m.exps()[0] + m.exps()[1]].into_iter().collect()))
            .div_var_power(1, k)
    });
    let mut chart_a = chart_a.map(|p| unknown_a.prune(&p));
    let mut chart_b = chart_b.map(|p| unknown_b.prune(&p));
    make_primitive(&mut chart_a);
    make_primitive(&mut chart_b);
    let a = ChartMap {
        field: field.clone(),
        triple: chart_a,
        axes: [Some(new_node), axes[1]],
        lineage: format!("{}.{}a", chart.lineage, new_node),
        search: Search::Axis(0),
        is_final: false,
        unknown: unknown_a,
    };
    let b = ChartMap {
        field: field.clone(),
        triple: chart_b,
        axes: [axes[0], Some(new_node)],
        lineage: format!("{}.{}b", chart.lineage, new_node),
        search: Search::Origin,
        is_final: false,
        unknown: unknown_b,
    };
    Ok(BlowUp { field, through, multiplicity: k, charts: [a, b] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PolyMap {
        PolyMap::from_int_terms(&[(1, &[1, 0]), (1, &[0, 2])], &[(1, &[0, 1])]).unwrap()
    }

    #[test]
    fn f2_root_chart() {
        let [one, two] = charts_at_infinity(&f2()).unwrap();
        assert_eq!(one.to_string(), "[u^2 + v : u*v : v^2]");
        assert_eq!(two.to_string(), "[u*v + 1 : v : v^2]");
        let centers = find_base_points(&one).unwrap();
        assert_eq!(centers, vec![Center { axis: 1, modulus: UniPoly::t() }]);
        assert!(find_base_points(&two).unwrap().is_empty());
    }

    #[test]
    fn f2_first_blow_up() {
        let [one, _] = charts_at_infinity(&f2()).unwrap();
        let c = &find_base_points(&one).unwrap()[0];
        let b = blow_up(&one, c, 1, "α1", None).unwrap();
        assert_eq!(b.multiplicity, 1);
        // u = s, v = s t  ->  [t + s : s t : s t^2]
        assert_eq!(b.charts[0].to_string(), "[u + v : u*v : u*v^2]");
        // u = s t, v = t  ->  [1 + s^2 t : s t : t]
        assert_eq!(b.charts[1].to_string(), "[u^2*v + 1 : u*v : v]");
        assert_eq!(b.through, vec![ROOT]);
    }

    #[test]
    fn squaring_map_has_no_base_points() {
        let f = PolyMap::from_int_terms(&[(1, &[2, 0]), (-1, &[0, 2])], &[(2, &[1, 1])]).unwrap();
        let [one, two] = charts_at_infinity(&f).unwrap();
        assert_eq!(one.to_string(), "[-u^2 + 1 : 2*u : v^2]");
        assert!(find_base_points(&one).unwrap().is_empty());
        assert!(find_base_points(&two).unwrap().is_empty());
    }
}

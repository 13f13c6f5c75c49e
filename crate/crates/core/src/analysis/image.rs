//! Image curves of non-contracted t-curves and the local branch type of a
//! parametrized curve.

use std::fmt;

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    content_in, resultant, squarefree_part_all, univariate_root_orbits, vars, Class, Elem, ExtField,
    SparsePoly, UniPoly,
};
use crate::resolution::{ChartMap, ImageKind, ParametrizedImage};

use super::degree::small_rational;
use super::AnalysisError;

/// Number of parameter values at which the implicit equation is checked.
const IMAGE_SAMPLES: usize = 3;

/// Local type of one analytic branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BranchType {
    Smooth,
    /// Local model `x^p = y^(p+1)`.
    Cusp(u32),
    /// Coprime order pair `(a, b)`.
    General(u32, u32),
}

impl fmt::Display for BranchType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchType::Smooth => write!(f, "smooth"),
            BranchType::Cusp(p) => write!(f, "cusp({p})"),
            BranchType::General(a, b) => write!(f, "general({a},{b})"),
        }
    }
}

fn xyt() -> crate::algebra::Vars {
    vars(&["x", "y", "t"])
}

/// Parameter values `0, 1, -1, 2, ...` at which `c` is a unit.
fn sample_parameters(field: &ExtField, c: &UniPoly, n: usize) -> Result<Vec<Elem>, AnalysisError> {
    let mut out = Vec::new();
    let mut k: i64 = 0;
    while out.len() < n {
        let t = Elem::from_i64(k);
        if field.classify(&c.eval(field, &t))? == Class::Unit {
            out.push(t);
        }
        k = if k > 0 { -k } else { 1 - k };
    }
    Ok(out)
}

fn image_point(p: &ParametrizedImage, t: &Elem) -> Result<[Elem; 2], AnalysisError> {
    let f = &p.field;
    let c = p.c.eval(f, t);
    Ok([f.div(&p.a.eval(f, t), &c)?, f.div(&p.b.eval(f, t), &c)?])
}

/// Reduced implicit equation in `(x, y)` of the affine image curve.
pub fn image_curve(p: &ParametrizedImage) -> Result<SparsePoly, AnalysisError> {
    if p.kind != ImageKind::AffineCurve {
        return Err(AnalysisError::NotACurve);
    }
    let f = &p.field;
    let v = xyt();
    let lift = |u: &UniPoly| SparsePoly::from_univariate(f, &v, 2, u);
    let x = SparsePoly::var(f, &v, 0);
    let y = SparsePoly::var(f, &v, 1);
    let (a, b, c) = (lift(&p.a), lift(&p.b), lift(&p.c));
    let e1 = x.mul(&c).sub(&a);
    let e2 = y.mul(&c).sub(&b);
    let r = resultant(&e1, &e2, 2)?;
    if r.is_zero() {
        return Err(AnalysisError::NotACurve);
    }
    let mut r = squarefree_part_all(&r)?;
    let samples: Vec<[Elem; 2]> = sample_parameters(f, &p.c, IMAGE_SAMPLES)?
        .iter()
        .map(|t| image_point(p, t))
        .collect::<Result<_, _>>()?;
    let vanishes = |q: &SparsePoly| samples.iter().all(|[sx, sy]| q.eval(&[sx.clone(), sy.clone(), Elem::zero()]).is_zero());
    // Extraneous factors of the resultant depend on one coordinate only.
    for i in [0usize, 1] {
        let cont = content_in(&r, i)?;
        if !cont.is_constant() && !vanishes(&cont) {
            r = r.div_exact(&cont)?;
        }
    }
    if !vanishes(&r) {
        return Err(AnalysisError::Internal("implicit equation misses sampled image points".into()));
    }
    let r = r.monic()?;
    Ok(r.into_vars(&vars(&["x", "y"]))?)
}

/// Vanishing order along axis `axis` of `R(A/C, B/C)` scaled by `C^deg R`.
pub fn image_multiplicity(chart: &ChartMap, axis: usize, implicit: &SparsePoly) -> Result<u32, AnalysisError> {
    let f = &chart.field;
    let uv = chart.coords().clone();
    let d = implicit.total_degree().unwrap_or(0);
    let [a, b, c] = &chart.triple;
    let mut acc = SparsePoly::zero(f, &uv);
    let mut cpow: Vec<SparsePoly> = vec![SparsePoly::from_i64(f, &uv, 1)];
    for _ in 0..d {
        let next = cpow.last().unwrap().mul(c);
        cpow.push(next);
    }
    for (m, coeff) in implicit.terms() {
        let (i, j) = (m.exps()[0], m.exps()[1]);
        let term = a.pow(i).mul(&b.pow(j)).mul(&cpow[(d - i - j) as usize]).scale(coeff);
        acc = acc.add(&term);
    }
    chart.order_in(&acc, axis)?.ok_or_else(|| AnalysisError::Internal("image equation vanishes on the chart".into()))
}

/// Truncated power series over a tower field.
#[derive(Clone, Debug)]
struct Series {
    c: Vec<Elem>,
}

impl Series {
    fn from_poly(f: &ExtField, p: &UniPoly, t0: &Elem, n: usize) -> Series {
        let shifted = p.taylor_shift(f, t0);
        Series { c: (0..n).map(|i| shifted.coeff(i)).collect() }
    }

    fn mul(&self, f: &ExtField, o: &Series) -> Series {
        let n = self.c.len();
        let mut c = vec![Elem::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate().take(n - i) {
                c[i + j] = c[i + j].add(&f.mul(x, y));
            }
        }
        Series { c }
    }

    fn inv(&self, f: &ExtField) -> Result<Series, AnalysisError> {
        let n = self.c.len();
        let i0 = f.inv(&self.c[0])?;
        let mut c = vec![Elem::zero(); n];
        c[0] = i0.clone();
        for k in 1..n {
            let mut s = Elem::zero();
            for j in 1..=k {
                s = s.add(&f.mul(&self.c[j], &c[k - j]));
            }
            c[k] = f.mul(&s, &i0).neg();
        }
        Ok(Series { c })
    }

    fn scale(&self, f: &ExtField, k: &Elem) -> Series {
        Series { c: self.c.iter().map(|x| f.mul(x, k)).collect() }
    }

    fn sub(&self, o: &Series) -> Series {
        Series { c: self.c.iter().zip(&o.c).map(|(a, b)| a.sub(b)).collect() }
    }

    fn add(&self, o: &Series) -> Series {
        Series { c: self.c.iter().zip(&o.c).map(|(a, b)| a.add(b)).collect() }
    }

    fn pow(&self, f: &ExtField, e: u32) -> Series {
        let mut acc = Series { c: vec![Elem::zero(); self.c.len()] };
        acc.c[0] = Elem::one();
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    fn order(&self, f: &ExtField) -> Result<Option<usize>, AnalysisError> {
        for (i, x) in self.c.iter().enumerate() {
            if f.classify(x)? == Class::Unit {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// Branch type at parameter `t0` of the curve `(a/c, b/c)`.
///
/// After a seeded generic linear change of target coordinates the first
/// coordinate has order `a`, the multiplicity. The tangent direction is then
/// eliminated from the second coordinate and powers of the first are
/// subtracted until the order `b` of the remainder is not a multiple of `a`;
/// `(a, b)` is the first characteristic pair.
pub fn classify_branch(p: &ParametrizedImage, t0: &Elem, seed: u64) -> Result<BranchType, AnalysisError> {
    let f = &p.field;
    if p.kind == ImageKind::Contracted {
        return Err(AnalysisError::NotACurve);
    }
    if f.classify(&p.c.eval(f, t0))? != Class::Unit {
        return Err(AnalysisError::PointNotOnImage);
    }
    let deg = [&p.a, &p.b, &p.c].iter().map(|q| q.degree().unwrap_or(0)).max().unwrap_or(0);
    let n = 8 * deg + 16;
    let inv_c = Series::from_poly(f, &p.c, t0, n).inv(f)?;
    let mut xs = Series::from_poly(f, &p.a, t0, n).mul(f, &inv_c);
    let mut ys = Series::from_poly(f, &p.b, t0, n).mul(f, &inv_c);
    xs.c[0] = Elem::zero();
    ys.c[0] = Elem::zero();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (l1, l2) = (Elem::Rat(small_rational(&mut rng)), Elem::Rat(small_rational(&mut rng)));
    let x = xs.add(&ys.scale(f, &l1));
    let y = ys.add(&xs.scale(f, &l2));
    let (x, y, a) = match (x.order(f)?, y.order(f)?) {
        (None, None) => return Err(AnalysisError::NotACurve),
        (Some(ox), Some(oy)) if ox <= oy => (x, y, ox),
        (Some(ox), None) => (x, y, ox),
        (_, Some(oy)) => (y, x, oy),
    };
    if a == 1 {
        return Ok(BranchType::Smooth);
    }
    let xa = x.c[a].clone();
    let ya = y.c[a].clone();
    let mut rem = y.scale(f, &xa).sub(&x.scale(f, &ya));
    let xa_inv = f.inv(&xa)?;
    loop {
        let Some(b) = rem.order(f)? else {
            // the parametrization covers a smooth branch several times
            return Ok(BranchType::Smooth);
        };
        if b % a != 0 {
            let g = (a as u32).gcd(&(b as u32));
            let (a, b) = (a as u32 / g, b as u32 / g);
            return Ok(if a == 1 {
                BranchType::Smooth
            } else if b == a + 1 {
                BranchType::Cusp(a)
            } else {
                BranchType::General(a, b)
            });
        }
        let k = (b / a) as u32;
        let coeff = f.mul(&rem.c[b], &f.pow(&xa_inv, k));
        rem = rem.sub(&x.pow(f, k).scale(f, &coeff));
    }
}

/// Parameter orbits where the parametrization is singular: common roots of
/// the numerators of `(a/c)'` and `(b/c)'`.
pub fn critical_parameters(p: &ParametrizedImage) -> Result<Vec<UniPoly>, AnalysisError> {
    let f = &p.field;
    let da = p.a.derivative().mul(f, &p.c).sub(&p.a.mul(f, &p.c.derivative()));
    let db = p.b.derivative().mul(f, &p.c).sub(&p.b.mul(f, &p.c.derivative()));
    let g = UniPoly::gcd(f, &da, &db)?;
    Ok(univariate_root_orbits(f, &g)?.into_iter().map(|o| o.modulus).collect())
}

/// Branch types at every critical parameter orbit. Irrational orbits are
/// classified over the field extended by one of their roots.
pub fn critical_branches(p: &ParametrizedImage, seed: u64) -> Result<Vec<(String, BranchType)>, AnalysisError> {
    let mut out = Vec::new();
    for modulus in critical_parameters(p)? {
        let label = modulus.display(&p.field, &p.param);
        let t0_and_image = if modulus.degree() == Some(1) {
            (modulus.coeff(0).neg(), p.clone())
        } else {
            let field = p.field.adjoin(&format!("τ{}", p.field.height() + 1), &modulus)?;
            let mut q = p.clone();
            q.field = field.clone();
            (field.generator(field.height()), q)
        };
        let (t0, q) = t0_and_image;
        if q.field.classify(&q.c.eval(&q.field, &t0))? != Class::Unit {
            continue;
        }
        out.push((format!("{label} = 0"), classify_branch(&q, &t0, seed)?));
    }
    Ok(out)
}

/// Checks that `implicit` vanishes identically on the parametrization.
pub fn vanishes_on_parametrization(p: &ParametrizedImage, implicit: &SparsePoly) -> Result<bool, AnalysisError> {
    let f = &p.field;
    let v = vars(&["t"]);
    let lift = |u: &UniPoly| SparsePoly::from_univariate(f, &v, 0, u);
    let d = implicit.total_degree().unwrap_or(0);
    let (a, b, c) = (lift(&p.a), lift(&p.b), lift(&p.c));
    let mut acc = SparsePoly::zero(f, &v);
    for (m, coeff) in implicit.terms() {
        let (i, j) = (m.exps()[0], m.exps()[1]);
        acc = acc.add(&a.pow(i).mul(&b.pow(j)).mul(&c.pow(d - i - j)).scale(coeff));
    }
    Ok(acc.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: &[i64], b: &[i64]) -> ParametrizedImage {
        let lift = |c: &[i64]| UniPoly::from_coeffs(c.iter().map(|&k| Elem::from_i64(k)).collect());
        ParametrizedImage {
            kind: ImageKind::AffineCurve,
            field: ExtField::rationals(),
            chart: 0,
            param: "t".into(),
            a: lift(a),
            b: lift(b),
            c: lift(&[1]),
        }
    }

    fn monic_string(p: &ParametrizedImage) -> String {
        image_curve(p).unwrap().to_string()
    }

    #[test]
    fn implicit_equations() {
        // 27x^2 - 4y^3, made monic in grlex order
        let cusp = curve(&[0, 0, 0, 2], &[0, 0, 3]);
        assert_eq!(monic_string(&cusp), "y^3 - 27/4*x^2");
        assert_eq!(monic_string(&curve(&[0, 1], &[0, 1])), "x - y");
        assert_eq!(monic_string(&curve(&[0, 1], &[0, 0, 1])), "x^2 - y");
        let implicit = image_curve(&cusp).unwrap();
        assert!(vanishes_on_parametrization(&cusp, &implicit).unwrap());
    }

    #[test]
    fn branch_types() {
        let zero = Elem::zero();
        let cusp = curve(&[0, 0, 0, 2], &[0, 0, 3]);
        assert_eq!(classify_branch(&cusp, &zero, 7).unwrap(), BranchType::Cusp(2));
        assert_eq!(classify_branch(&curve(&[0, 1], &[0, 0, 0, 1]), &zero, 7).unwrap(), BranchType::Smooth);
        assert_eq!(
            classify_branch(&curve(&[0, 0, 1], &[0, 0, 0, 0, 0, 1]), &zero, 7).unwrap(),
            BranchType::General(2, 5)
        );
        // a doubly covered smooth branch
        assert_eq!(classify_branch(&curve(&[0, 0, 1], &[0, 0, 1]), &zero, 7).unwrap(), BranchType::Smooth);
        let branches = critical_branches(&cusp, 7).unwrap();
        assert_eq!(branches, vec![("t = 0".to_string(), BranchType::Cusp(2))]);
    }

    #[test]
    fn contracted_is_not_a_curve() {
        let mut p = curve(&[3], &[4]);
        p.kind = ImageKind::Contracted;
        assert_eq!(image_curve(&p), Err(AnalysisError::NotACurve));
    }
}

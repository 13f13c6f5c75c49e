//! Topological degree: the number of points in a generic fiber.
//!
//! After a seeded linear change of source coordinates that makes the
//! `x`-leading coefficient of `P` a nonzero constant and separates the
//! `y`-coordinates of a fiber, `deg squarefree(Res_x(P - a, Q - b))` counts
//! the fiber over `(a, b)`. The resultant is obtained by evaluating at
//! `deg P * deg Q + 1` integer values of `y` and interpolating.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{dense_resultant, rat, ratio, Elem, ExtField, Rational, SparsePoly, UniPoly};
use crate::resolution::{xy_vars, PolyMap};

use super::AnalysisError;

/// Number of target specializations that must agree before the degree is
/// accepted; on disagreement more are drawn and the maximum is kept.
const AGREEING_SPECIALIZATIONS: usize = 2;
const MAX_SPECIALIZATIONS: usize = 6;

pub(crate) fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(-10..=10);
    let d: i64 = rng.gen_range(1..=10);
    ratio(n, d)
}

fn top_form_at(p: &SparsePoly, mu: &Rational) -> Rational {
    let d = p.total_degree().unwrap_or(0);
    let mut acc = Rational::from_integer(0.into());
    for (m, c) in p.terms() {
        if m.degree() == d {
            let e = m.exps()[1] as i32;
            acc += c.as_rational().unwrap() * num_traits::pow::Pow::pow(mu, e as u32);
        }
    }
    acc
}

/// `(x, y) -> (x + λy, y + μx)` applied to both components.
fn linear_change(f: &PolyMap, lambda: &Rational, mu: &Rational) -> [SparsePoly; 2] {
    let (q, v) = (ExtField::rationals(), xy_vars());
    let x = SparsePoly::var(&q, &v, 0);
    let y = SparsePoly::var(&q, &v, 1);
    let images = [x.add(&y.scale_rational(lambda)), y.add(&x.scale_rational(mu))];
    [f.p().compose(&images), f.q().compose(&images)]
}

/// Dense coefficients in `x` of `p(x, y0)`.
fn specialize_y(p: &SparsePoly, y0: &Rational) -> UniPoly {
    p.eval_var(1, &Elem::Rat(y0.clone())).to_univariate(0).expect("only x remains after fixing y")
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let zero = Rational::from_integer(0.into());
    let mut coeffs = vec![zero.clone(); n];
    for k in (0..n).rev() {
        // coeffs = coeffs * (t - xs[k]) + dd[k]
        let mut next = vec![zero.clone(); n];
        for i in 0..n {
            if i + 1 < n {
                next[i + 1] = &next[i + 1] + &coeffs[i];
            }
            next[i] = &next[i] - &coeffs[i] * &xs[k];
        }
        next[0] = &next[0] + &dd[k];
        coeffs = next;
    }
    while coeffs.last().is_some_and(|c| *c == zero) {
        coeffs.pop();
    }
    coeffs
}

/// `Res_x(p, q)` as a polynomial in `y`, by evaluation and interpolation.
/// The `x`-leading coefficient of `p` must be a nonzero constant.
pub fn resultant_in_y(p: &SparsePoly, q: &SparsePoly) -> UniPoly {
    let field = ExtField::rationals();
    let bound = p.total_degree().unwrap_or(0) as usize * q.total_degree().unwrap_or(0) as usize;
    let xs: Vec<Rational> = (0..=bound as i64).map(rat).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|y0| {
            let r = dense_resultant(&field, &specialize_y(p, y0), &specialize_y(q, y0)).unwrap_or_else(|_| Elem::zero());
            r.as_rational().cloned().unwrap_or_default()
        })
        .collect();
    UniPoly::from_coeffs(interpolate(&xs, &ys).into_iter().map(Elem::Rat).collect())
}

fn fiber_count(p: &SparsePoly, q: &SparsePoly, a: &Rational, b: &Rational) -> usize {
    let field = ExtField::rationals();
    let pa = p.sub(&SparsePoly::constant(p.field(), p.vars(), Elem::Rat(a.clone())));
    let qb = q.sub(&SparsePoly::constant(q.field(), q.vars(), Elem::Rat(b.clone())));
    let r = resultant_in_y(&pa, &qb);
    if r.is_zero() {
        return 0;
    }
    r.squarefree_part(&field).ok().and_then(|s| s.degree()).unwrap_or(0)
}

/// Generic fiber cardinality of a dominant map.
pub fn topological_degree(f: &PolyMap, seed: u64) -> Result<usize, AnalysisError> {
    if f.jacobian().is_zero() {
        return Err(AnalysisError::NotDominant);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lambda, mu) = loop {
        let lambda = small_rational(&mut rng);
        let mu = small_rational(&mut rng);
        let det = Rational::from_integer(1.into()) - &lambda * &mu;
        if det != Rational::from_integer(0.into())
            && top_form_at(f.p(), &mu) != Rational::from_integer(0.into())
            && top_form_at(f.q(), &mu) != Rational::from_integer(0.into())
        {
            break (lambda, mu);
        }
    };
    let [p, q] = linear_change(f, &lambda, &mu);
    let mut counts = Vec::new();
    while counts.len() < MAX_SPECIALIZATIONS {
        let a = small_rational(&mut rng);
        let b = small_rational(&mut rng);
        counts.push(fiber_count(&p, &q, &a, &b));
        if counts.len() >= AGREEING_SPECIALIZATIONS && counts.iter().all(|&c| c == counts[0]) {
            break;
        }
    }
    Ok(counts.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_polynomial() {
        let xs: Vec<Rational> = (0..5).map(rat).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| x * x * x - rat(2) * x + rat(7)).collect();
        assert_eq!(interpolate(&xs, &ys), vec![rat(7), rat(-2), rat(0), rat(1)]);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(topological_degree(&PolyMap::identity(), 1).unwrap(), 1);
        let f2 = PolyMap::from_int_terms(&[(1, &[1, 0]), (1, &[0, 2])], &[(1, &[0, 1])]).unwrap();
        assert_eq!(topological_degree(&f2, 1).unwrap(), 1);
        let sq = PolyMap::from_int_terms(&[(1, &[2, 0]), (-1, &[0, 2])], &[(2, &[1, 1])]).unwrap();
        assert_eq!(topological_degree(&sq, 1).unwrap(), 4);
        // (x^2, y): fibers share their y-coordinate
        let fold = PolyMap::from_int_terms(&[(1, &[2, 0])], &[(1, &[0, 1])]).unwrap();
        assert_eq!(topological_degree(&fold, 1).unwrap(), 2);
        let degenerate = PolyMap::from_int_terms(&[(1, &[1, 1])], &[(1, &[2, 2])]).unwrap();
        assert_eq!(topological_degree(&degenerate, 1), Err(AnalysisError::NotDominant));
    }
}

//! Subresultant pseudo-remainder sequences: gcd, resultant, squarefree part.
//!
//! Polynomials are viewed recursively as univariate in their highest
//! occurring variable with coefficients in the remaining ones. Leading
//! coefficients are checked for regularity so that zero divisors in an
//! extension tower surface as splits.

use super::error::{AlgebraError, AlgebraResult};
use super::field::{Class, Elem};
use super::poly::{Monomial, SparsePoly};

fn main_var(a: &SparsePoly, b: &SparsePoly) -> Option<usize> {
    (0..a.nvars()).rev().find(|&i| a.involves(i) || b.involves(i))
}

/// Leading coefficient with respect to `x_i`, as a polynomial free of `x_i`.
pub fn lc_in(p: &SparsePoly, i: usize) -> SparsePoly {
    p.coefficients_in(i).pop().unwrap_or_else(|| SparsePoly::zero(p.field(), p.vars()))
}

/// Degree in `x_i` after checking that the leading coefficient is regular.
fn checked_degree(p: &SparsePoly, i: usize) -> AlgebraResult<u32> {
    match p.degree_in(i) {
        None => Ok(0),
        Some(d) => {
            lc_in(p, i).classify()?;
            Ok(d)
        }
    }
}

fn one_like(p: &SparsePoly) -> SparsePoly {
    SparsePoly::from_i64(p.field(), p.vars(), 1)
}

/// `gcd(c x^e, b) = x^min(e, ord b)` since the variables are prime.
fn monomial_gcd(m: &SparsePoly, b: &SparsePoly) -> AlgebraResult<SparsePoly> {
    m.monic()?;
    let (e, _) = m.leading_term().expect("single term");
    let mut exps = Vec::with_capacity(m.nvars());
    for (i, &ei) in e.exps().iter().enumerate() {
        let ob = if ei == 0 { 0 } else { b.order_in(i)?.unwrap_or(0) };
        exps.push(ei.min(ob));
    }
    let mono = Monomial(exps.into_iter().collect());
    Ok(SparsePoly::from_terms(m.field(), m.vars(), [(mono, Elem::one())]))
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` in `x_i`.
pub fn prem(a: &SparsePoly, b: &SparsePoly, i: usize) -> AlgebraResult<SparsePoly> {
    let db = checked_degree(b, i)?;
    let lb = lc_in(b, i);
    let Some(mut dr) = a.degree_in(i) else {
        return Ok(a.clone());
    };
    if dr < db {
        return Ok(a.clone());
    }
    let mut e = dr - db + 1;
    let mut r = a.clone();
    let n = a.nvars();
    loop {
        let lr = lc_in(&r, i);
        let shifted = b.mul_monomial(&Monomial::var(n, i, dr - db));
        r = r.mul(&lb).sub(&lr.mul(&shifted));
        e -= 1;
        match r.degree_in(i) {
            Some(d) if d >= db && !r.is_zero() => dr = d,
            _ => break,
        }
    }
    Ok(r.mul(&lb.pow(e)))
}

/// Gcd of the coefficients with respect to `x_i` (monic).
pub fn content_in(p: &SparsePoly, i: usize) -> AlgebraResult<SparsePoly> {
    let mut g = SparsePoly::zero(p.field(), p.vars());
    for c in p.coefficients_in(i) {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &c)?;
        if g.is_constant() {
            break;
        }
    }
    Ok(g)
}

/// Monic greatest common divisor; `gcd(0, b) = monic(b)`.
pub fn poly_gcd(a: &SparsePoly, b: &SparsePoly) -> AlgebraResult<SparsePoly> {
    if !a.same_ring(b) {
        return Err(AlgebraError::RingMismatch);
    }
    if a.is_zero() {
        b.classify()?;
        return b.monic();
    }
    if b.is_zero() {
        a.classify()?;
        return a.monic();
    }
    if a.num_terms() == 1 {
        return monomial_gcd(a, b);
    }
    if b.num_terms() == 1 {
        return monomial_gcd(b, a);
    }
    let Some(i) = main_var(a, b) else {
        a.classify()?;
        b.classify()?;
        return Ok(one_like(a));
    };
    let ca = content_in(a, i)?;
    let cb = content_in(b, i)?;
    let d = poly_gcd(&ca, &cb)?;
    let mut pa = a.div_exact(&ca)?;
    let mut pb = b.div_exact(&cb)?;
    let (mut da, mut db) = (checked_degree(&pa, i)?, checked_degree(&pb, i)?);
    if da < db {
        std::mem::swap(&mut pa, &mut pb);
        std::mem::swap(&mut da, &mut db);
    }
    if db == 0 {
        return d.monic();
    }
    let mut g = one_like(a);
    let mut h = one_like(a);
    loop {
        let delta = da - db;
        let r = prem(&pa, &pb, i)?;
        if r.is_zero() {
            let pp = pb.div_exact(&content_in(&pb, i)?)?;
            return d.mul(&pp).monic();
        }
        let dr = checked_degree(&r, i)?;
        if dr == 0 {
            return d.monic();
        }
        pa = pb;
        pb = r.div_exact(&g.mul(&h.pow(delta)))?;
        g = lc_in(&pa, i);
        if delta > 0 {
            h = g.pow(delta).div_exact(&h.pow(delta - 1))?;
        }
        da = db;
        db = dr;
    }
}

/// `Res_{x_i}(a, b)` by the subresultant algorithm.
pub fn resultant(a: &SparsePoly, b: &SparsePoly, i: usize) -> AlgebraResult<SparsePoly> {
    if !a.same_ring(b) {
        return Err(AlgebraError::RingMismatch);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(SparsePoly::zero(a.field(), a.vars()));
    }
    let (mut da, mut db) = (checked_degree(a, i)?, checked_degree(b, i)?);
    if da == 0 && db == 0 {
        return Err(AlgebraError::ResultantUndefined(a.vars()[i].clone()));
    }
    if da == 0 {
        return Ok(a.pow(db));
    }
    if db == 0 {
        return Ok(b.pow(da));
    }
    let (mut pa, mut pb) = (a.clone(), b.clone());
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut pa, &mut pb);
        std::mem::swap(&mut da, &mut db);
        negate = da % 2 == 1 && db % 2 == 1;
    }
    let mut g = one_like(a);
    let mut h = one_like(a);
    loop {
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&pa, &pb, i)?;
        if r.is_zero() {
            return Ok(SparsePoly::zero(a.field(), a.vars()));
        }
        let dr = checked_degree(&r, i)?;
        pa = pb;
        pb = r.div_exact(&g.mul(&h.pow(delta)))?;
        g = lc_in(&pa, i);
        if delta > 0 {
            h = g.pow(delta).div_exact(&h.pow(delta - 1))?;
        }
        da = db;
        db = dr;
        if db == 0 {
            break;
        }
    }
    let res = if da == 1 { pb } else { pb.pow(da).div_exact(&h.pow(da - 1))? };
    Ok(if negate { res.neg() } else { res })
}

/// `a / gcd(a, ∂a/∂x_i)`, monic: the product of the distinct factors of `a`
/// that involve `x_i`.
pub fn squarefree_part(a: &SparsePoly, i: usize) -> AlgebraResult<SparsePoly> {
    if a.is_zero() {
        return Ok(a.clone());
    }
    let g = poly_gcd(a, &a.derivative(i))?;
    a.div_exact(&g)?.monic()
}

/// Squarefree part with respect to every variable: `a / gcd(a, a_x1, ..)`.
pub fn squarefree_part_all(a: &SparsePoly) -> AlgebraResult<SparsePoly> {
    if a.is_zero() {
        return Ok(a.clone());
    }
    let mut g = a.clone();
    for i in 0..a.nvars() {
        g = poly_gcd(&g, &a.derivative(i))?;
    }
    a.div_exact(&g)?.monic()
}

/// True when `p` is a nonzero constant that is regular in every component.
pub fn is_unit_constant(p: &SparsePoly) -> AlgebraResult<bool> {
    if !p.is_constant() || p.is_zero() {
        return Ok(false);
    }
    Ok(p.field().classify(&p.constant_term())? == Class::Unit)
}

/// Gcd of several polynomials.
pub fn poly_gcd_many<'a>(ps: impl IntoIterator<Item = &'a SparsePoly>) -> AlgebraResult<Option<SparsePoly>> {
    let mut ps: Vec<&SparsePoly> = ps.into_iter().collect();
    ps.sort_by_key(|p| p.num_terms());
    let mut acc: Option<SparsePoly> = None;
    for p in ps {
        if acc.as_ref().is_some_and(|g| g.is_constant()) {
            p.classify()?;
            continue;
        }
        acc = Some(match acc {
            None => p.monic()?,
            Some(g) => poly_gcd(&g, p)?,
        });
    }
    Ok(acc)
}

/// Exact univariate resultant over a field by the Euclidean recurrence.
/// Independent of the subresultant routine; used for specialized
/// evaluations and as a cross-check.
pub fn dense_resultant(
    f: &super::field::ExtField,
    a: &super::dense::UniPoly,
    b: &super::dense::UniPoly,
) -> AlgebraResult<Elem> {
    let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
        return Ok(Elem::zero());
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = Elem::one();
    loop {
        if db == 0 {
            return Ok(f.mul(&acc, &f.pow(&b.lc(), da as u32)));
        }
        let r = a.rem(f, &b)?;
        let Some(dr) = r.degree() else {
            return Ok(Elem::zero());
        };
        let mut factor = f.pow(&b.lc(), (da - dr) as u32);
        if da % 2 == 1 && db % 2 == 1 {
            factor = factor.neg();
        }
        acc = f.mul(&acc, &factor);
        a = b;
        b = r;
        da = db;
        db = dr;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::ExtField;
    use crate::algebra::poly::vars;

    fn ring() -> (ExtField, crate::algebra::poly::Vars) {
        (ExtField::rationals(), vars(&["x", "y", "t"]))
    }

    #[test]
    fn gcd_examples() {
        let (q, v) = ring();
        let x = SparsePoly::var(&q, &v, 0);
        let y = SparsePoly::var(&q, &v, 1);
        let a = &x.pow(2) - &y.pow(2);
        assert_eq!(poly_gcd(&a, &(&x - &y)).unwrap(), &x - &y);
        assert!(poly_gcd(&(&x + &y.pow(3)), &y).unwrap().is_constant());
        // v + u^2 and v^2 (x plays u, y plays v)
        let g = poly_gcd(&(&y + &x.pow(2)), &y.pow(2)).unwrap();
        assert_eq!(g, SparsePoly::from_i64(&q, &v, 1));
        assert_eq!(poly_gcd(&SparsePoly::zero(&q, &v), &(&x * &SparsePoly::from_i64(&q, &v, 3))).unwrap(), x);
    }

    #[test]
    fn resultant_examples() {
        let (q, v) = ring();
        let x = SparsePoly::var(&q, &v, 0);
        let y = SparsePoly::var(&q, &v, 1);
        let t = SparsePoly::var(&q, &v, 2);
        let two = SparsePoly::from_i64(&q, &v, 2);
        let three = SparsePoly::from_i64(&q, &v, 3);
        let r = resultant(&(&x - &(&two * &t.pow(3))), &(&y - &(&three * &t.pow(2))), 2).unwrap();
        let target = &(&SparsePoly::from_i64(&q, &v, 27) * &x.pow(2)) - &(&SparsePoly::from_i64(&q, &v, 4) * &y.pow(3));
        assert_eq!(r.monic().unwrap(), target.monic().unwrap());
        let r = resultant(&(&x - &t), &(&y - &t), 2).unwrap();
        assert_eq!(r.monic().unwrap(), (&x - &y).monic().unwrap());
        // Res_x(x^2 - y, x) = -y
        let r = resultant(&(&x.pow(2) - &y), &x, 0).unwrap();
        assert_eq!(r, y.neg());
        assert!(matches!(resultant(&y, &y, 0), Err(AlgebraError::ResultantUndefined(_))));
    }

    #[test]
    fn squarefree_examples() {
        let (q, v) = ring();
        let x = SparsePoly::var(&q, &v, 0);
        let y = SparsePoly::var(&q, &v, 1);
        let one = SparsePoly::from_i64(&q, &v, 1);
        let two = SparsePoly::from_i64(&q, &v, 2);
        let p = &(&x - &one).pow(3) * &(&x + &two);
        assert_eq!(squarefree_part(&p, 0).unwrap(), &(&x - &one) * &(&x + &two));
        let c = &y.pow(2) - &x.pow(3);
        assert_eq!(squarefree_part(&c, 1).unwrap(), c.monic().unwrap());
        assert_eq!(squarefree_part(&x.pow(2), 0).unwrap(), x);
    }
}

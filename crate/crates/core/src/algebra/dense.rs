//! Dense univariate polynomials over an extension tower.
//!
//! Every operation that needs to know whether a leading coefficient is
//! invertible goes through [`ExtField::inv`], so zero divisors surface as
//! splits instead of silently wrong degrees.

use std::cmp::Ordering;

use super::error::{AlgebraError, AlgebraResult};
use super::field::{Class, Elem, ExtField};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Elem::one())
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![Elem::zero(), Elem::one()])
    }

    /// `t - root`.
    pub fn linear(root: &Elem) -> Self {
        Self::from_coeffs(vec![root.neg(), Elem::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Elem {
        self.coeffs.last().cloned().unwrap_or_else(Elem::zero)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(Elem::zero)
    }

    /// True when every coefficient lies in Q.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(Elem::neg).collect() }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, f: &ExtField, c: &Elem) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|x| f.mul(x, c)).collect())
    }

    pub fn shift_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn mul(&self, f: &ExtField, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Elem::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&f.mul(a, b));
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn pow(&self, f: &ExtField, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| scale_int(c, i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, f: &ExtField, x: &Elem) -> Elem {
        let mut acc = Elem::zero();
        for c in self.coeffs.iter().rev() {
            acc = f.mul(&acc, x).add(c);
        }
        acc
    }

    /// `p(t + tau)`.
    pub fn taylor_shift(&self, f: &ExtField, tau: &Elem) -> UniPoly {
        if tau.is_zero() {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                c[j] = c[j].add(&f.mul(tau, &c[j + 1]));
            }
        }
        UniPoly::from_coeffs(c)
    }

    /// `p(c t)`.
    pub fn scale_var(&self, f: &ExtField, c: &Elem) -> UniPoly {
        let mut pw = Elem::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(f.mul(x, &pw));
            pw = f.mul(&pw, c);
        }
        UniPoly::from_coeffs(out)
    }

    pub fn monic(&self, f: &ExtField) -> AlgebraResult<UniPoly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = f.inv(&self.lc())?;
        let mut p = self.scale(f, &inv);
        if let Some(last) = p.coeffs.last_mut() {
            *last = Elem::one();
        }
        Ok(p)
    }

    pub fn divrem(&self, f: &ExtField, d: &UniPoly) -> AlgebraResult<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(AlgebraError::DivisionByZero)?;
        let inv = f.inv(&d.lc())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![Elem::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(&r[k], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k - dd + j] = r[k - dd + j].sub(&f.mul(&c, dj));
            }
            // exact cancellation of the leading term
            r[k] = Elem::zero();
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::from_coeffs(q), UniPoly::from_coeffs(r)))
    }

    pub fn rem(&self, f: &ExtField, d: &UniPoly) -> AlgebraResult<UniPoly> {
        Ok(self.divrem(f, d)?.1)
    }

    pub fn div_exact(&self, f: &ExtField, d: &UniPoly) -> AlgebraResult<UniPoly> {
        let (q, r) = self.divrem(f, d)?;
        if !r.is_zero() {
            return Err(AlgebraError::InexactDivision);
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(f: &ExtField, a: &UniPoly, b: &UniPoly) -> AlgebraResult<UniPoly> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = r0.rem(f, &r1)?;
            r0 = r1;
            r1 = r;
        }
        r0.monic(f)
    }

    /// Returns `(g, s, t)` with `g = s*a + t*b`; `g` is not normalized.
    pub fn ext_gcd(f: &ExtField, a: &UniPoly, b: &UniPoly) -> AlgebraResult<(UniPoly, UniPoly, UniPoly)> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(f, &r1)?;
            let s = s0.sub(&q.mul(f, &s1));
            let t = t0.sub(&q.mul(f, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        Ok((r0, s0, t0))
    }

    /// Yun's squarefree decomposition: returns `(s_i, i)` with
    /// `monic(p) = Π s_i^i`, each `s_i` monic, squarefree and non-constant.
    pub fn squarefree_decomposition(&self, f: &ExtField) -> AlgebraResult<Vec<(UniPoly, u32)>> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let p = self.monic(f)?;
        let dp = p.derivative();
        let a0 = UniPoly::gcd(f, &p, &dp)?;
        let mut b = p.div_exact(f, &a0)?;
        let mut c = dp.div_exact(f, &a0)?;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = UniPoly::gcd(f, &b, &d)?;
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(f, &a)?;
            c = d.div_exact(f, &a)?;
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self, f: &ExtField) -> AlgebraResult<UniPoly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let g = UniPoly::gcd(f, self, &self.derivative())?;
        self.div_exact(f, &g)?.monic(f)
    }

    /// Canonical order on moduli: by degree, then by the negated non-leading
    /// coefficients from the top down (so linear factors sort by their root).
    pub fn canonical_cmp(a: &UniPoly, b: &UniPoly) -> Ordering {
        a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| {
            let ka = a.coeffs.iter().rev().skip(1).map(Elem::neg);
            let kb = b.coeffs.iter().rev().skip(1).map(Elem::neg);
            ka.cmp(kb)
        })
    }

    /// Lowest power of `t` with a nonzero coefficient, checked for zero
    /// divisors. `None` for the zero polynomial.
    pub fn order(&self, f: &ExtField) -> AlgebraResult<Option<usize>> {
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.classify(c)? == Class::Unit {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Embeds coefficients reduced into a refined tower.
    pub fn reduce_into(&self, f: &ExtField) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| f.reduce(c)).collect())
    }

    pub fn display(&self, f: &ExtField, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.display(c).to_string();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (i, c.is_one()) {
                (0, _) => cs,
                (_, true) => mono,
                _ => format!("{cs}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub(crate) fn scale_int(c: &Elem, k: i64) -> Elem {
    match c {
        Elem::Rat(r) => Elem::Rat(r * num_bigint::BigInt::from(k)),
        Elem::Alg { level, coeffs } => Elem::Alg {
            level: *level,
            coeffs: coeffs.iter().map(|x| scale_int(x, k)).collect(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&x| Elem::from_i64(x)).collect())
    }

    #[test]
    fn gcd_and_squarefree() {
        let q = ExtField::rationals();
        // (t-1)^3 (t+2)
        let p = uni(&[-1, 1]).pow(&q, 3).mul(&q, &uni(&[2, 1]));
        let sq = p.squarefree_part(&q).unwrap();
        assert_eq!(sq, uni(&[-1, 1]).mul(&q, &uni(&[2, 1])));
        let dec = p.squarefree_decomposition(&q).unwrap();
        assert_eq!(dec, vec![(uni(&[2, 1]), 1), (uni(&[-1, 1]), 3)]);
    }

    #[test]
    fn taylor_shift_matches_composition() {
        let q = ExtField::rationals();
        let p = uni(&[1, 2, 3, 4]);
        let s = p.taylor_shift(&q, &Elem::from_i64(-2));
        for x in -3..4 {
            let x = Elem::from_i64(x);
            assert_eq!(s.eval(&q, &x), p.eval(&q, &x.add(&Elem::from_i64(-2))));
        }
    }

    #[test]
    fn canonical_order_sorts_linear_by_root() {
        let mut v = vec![uni(&[-2, 1]), uni(&[2, 0, 1]), uni(&[-1, 1])];
        v.sort_by(UniPoly::canonical_cmp);
        assert_eq!(v, vec![uni(&[-1, 1]), uni(&[-2, 1]), uni(&[2, 0, 1])]);
    }
}

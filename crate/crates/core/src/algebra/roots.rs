//! Root orbits of univariate polynomials.
//!
//! A polynomial is split into pairwise coprime squarefree moduli: the root
//! `t = 0`, every rational root (for factors with rational coefficients) and
//! a remaining factor per multiplicity class. Remaining factors are not
//! factored further; they are adjoined as D5 moduli and split lazily.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dense::UniPoly;
use super::error::AlgebraResult;
use super::field::{Class, Elem, ExtField, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOrbit {
    /// Monic squarefree modulus whose roots form the orbit.
    pub modulus: UniPoly,
    pub multiplicity: u32,
}

impl RootOrbit {
    pub fn size(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    /// The root itself when the modulus is linear.
    pub fn linear_root(&self) -> Option<Elem> {
        (self.size() == 1).then(|| self.modulus.coeff(0).neg())
    }
}

/// Squarefree factorization of `p` into canonically ordered root orbits.
/// A nonzero constant yields no orbits.
pub fn univariate_root_orbits(f: &ExtField, p: &UniPoly) -> AlgebraResult<Vec<RootOrbit>> {
    let mut out = Vec::new();
    for (s, mult) in p.squarefree_decomposition(f)? {
        let mut rest = s;
        if f.classify(&rest.coeff(0))? == Class::Zero {
            out.push(RootOrbit { modulus: UniPoly::t(), multiplicity: mult });
            rest = rest.div_exact(f, &UniPoly::t())?;
        }
        if rest.is_rational() {
            for r in rational_roots(&rest) {
                let lin = UniPoly::linear(&Elem::Rat(r));
                rest = rest.div_exact(f, &lin)?;
                out.push(RootOrbit { modulus: lin, multiplicity: mult });
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.push(RootOrbit { modulus: rest.monic(f)?, multiplicity: mult });
        }
    }
    out.sort_by(|a, b| UniPoly::canonical_cmp(&a.modulus, &b.modulus));
    Ok(out)
}

fn to_integer_coeffs(p: &UniPoly) -> Vec<BigInt> {
    let rs: Vec<Rational> = p.coeffs().iter().map(|c| c.as_rational().expect("rational coefficients").clone()).collect();
    let l = rs.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rs.iter().map(|r| (r * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_q(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn rem_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let c = r.last().unwrap() / &lb;
        let k = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = &r[k + j] - &c * bj;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn sturm_sequence(p: &[Rational]) -> Vec<Vec<Rational>> {
    let dp: Vec<Rational> = p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect();
    let mut seq = vec![p.to_vec(), dp];
    while seq.last().unwrap().len() > 1 {
        let n = seq.len();
        let r = rem_q(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[Vec<Rational>], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in seq {
        let v = eval_q(s, x);
        let sg = if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 };
        if sg != 0 {
            if last != 0 && sg != last {
                n += 1;
            }
            last = sg;
        }
    }
    n
}

/// Rational roots of a squarefree polynomial with rational coefficients,
/// ascending. A rational root `r` satisfies `lc * r ∈ Z` for the primitive
/// integer form, so Sturm bisection down to width `1/lc` followed by an
/// exact test of the unique candidate per interval finds them all.
pub fn rational_roots(p: &UniPoly) -> Vec<Rational> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let ints = to_integer_coeffs(p);
    let lc = ints.last().unwrap().abs();
    let q: Vec<Rational> = ints.iter().map(|c| Rational::from_integer(c.clone())).collect();
    let bound = Rational::one()
        + q.iter().take(q.len() - 1).map(|c| c.abs()).fold(Rational::zero(), |m, c| if c > m { c } else { m })
            / Rational::from_integer(lc.clone());
    let seq = sturm_sequence(&q);
    let width = Rational::new(BigInt::one(), lc.clone());
    let mut roots = Vec::new();
    // intervals (lo, hi] with their sign-change counts at the ends
    let lo = -bound.clone();
    let mut stack = vec![(lo.clone(), sign_changes(&seq, &lo), bound.clone(), sign_changes(&seq, &bound))];
    while let Some((lo, vlo, hi, vhi)) = stack.pop() {
        if vlo == vhi {
            continue;
        }
        if &hi - &lo <= width {
            let lcq = Rational::from_integer(lc.clone());
            let mut n = (&lo * &lcq).floor() + Rational::one();
            let top = (&hi * &lcq).floor();
            while n <= top {
                let r = &n / &lcq;
                if eval_q(&q, &r).is_zero() {
                    roots.push(r);
                }
                n += Rational::one();
            }
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        let vmid = sign_changes(&seq, &mid);
        stack.push((lo, vlo, mid.clone(), vmid));
        stack.push((mid, vmid, hi, vhi));
    }
    roots.sort();
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::ratio;

    fn uni(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&x| Elem::from_i64(x)).collect())
    }

    #[test]
    fn u_squared_is_one_orbit_of_multiplicity_two() {
        let q = ExtField::rationals();
        let orbits = univariate_root_orbits(&q, &uni(&[0, 0, 1])).unwrap();
        assert_eq!(orbits, vec![RootOrbit { modulus: uni(&[0, 1]), multiplicity: 2 }]);
    }

    #[test]
    fn irreducible_quadratic_stays_whole() {
        let q = ExtField::rationals();
        let orbits = univariate_root_orbits(&q, &uni(&[2, 0, 1])).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].size(), 2);
    }

    #[test]
    fn linear_roots_in_canonical_order() {
        let q = ExtField::rationals();
        let p = uni(&[-2, 1]).mul(&q, &uni(&[-1, 1]));
        let orbits = univariate_root_orbits(&q, &p).unwrap();
        let moduli: Vec<_> = orbits.iter().map(|o| o.modulus.clone()).collect();
        assert_eq!(moduli, vec![uni(&[-1, 1]), uni(&[-2, 1])]);
        assert!(univariate_root_orbits(&q, &uni(&[7])).unwrap().is_empty());
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (3t - 2)(5t + 7)(t^2 + 1)
        let q = ExtField::rationals();
        let p = uni(&[-2, 3]).mul(&q, &uni(&[7, 5])).mul(&q, &uni(&[1, 0, 1]));
        assert_eq!(rational_roots(&p), vec![ratio(-7, 5), ratio(2, 3)]);
    }
}

//! Sparse multivariate polynomials over an extension tower.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the graded
//! lexicographic order of the declared variable list, so the last entry is
//! the leading term and iteration order is canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use super::dense::{scale_int, UniPoly};
use super::error::{AlgebraError, AlgebraResult};
use super::field::{fmt_rational, Class, Elem, ExtField, Rational};

pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(n);
        m.0[i] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct SparsePoly {
    field: ExtField,
    vars: Vars,
    terms: BTreeMap<Monomial, Elem>,
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms && self.field == other.field
    }
}

impl Eq for SparsePoly {}

impl SparsePoly {
    pub fn zero(field: &ExtField, vars: &Vars) -> Self {
        SparsePoly { field: field.clone(), vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &ExtField, vars: &Vars, c: Elem) -> Self {
        let mut p = Self::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn from_i64(field: &ExtField, vars: &Vars, c: i64) -> Self {
        Self::constant(field, vars, Elem::from_i64(c))
    }

    pub fn var(field: &ExtField, vars: &Vars, i: usize) -> Self {
        let mut p = Self::zero(field, vars);
        p.terms.insert(Monomial::var(vars.len(), i, 1), Elem::one());
        p
    }

    pub fn var_named(field: &ExtField, vars: &Vars, name: &str) -> AlgebraResult<Self> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(field, vars, i))
    }

    pub fn from_terms(field: &ExtField, vars: &Vars, terms: impl IntoIterator<Item = (Monomial, Elem)>) -> Self {
        let mut p = Self::zero(field, vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs with
    /// integer coefficients. Convenient in tests and fixtures.
    pub fn from_int_terms(field: &ExtField, vars: &Vars, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            field,
            vars,
            terms.iter().map(|(c, e)| (Monomial(e.iter().copied().collect()), Elem::from_i64(*c))),
        )
    }

    fn add_term(&mut self, m: Monomial, c: Elem) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.vars.len());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> AlgebraResult<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Elem {
        self.terms.get(&Monomial::one(self.nvars())).cloned().unwrap_or_else(Elem::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.get(m).cloned().unwrap_or_else(Elem::zero)
    }

    /// Total degree; `None` is the sentinel for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Degree in variable `i`; `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Elem)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Elem {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Elem::zero)
    }

    /// True when only variable `i` occurs.
    pub fn is_univariate_in(&self, i: usize) -> bool {
        self.terms.keys().all(|m| m.0.iter().enumerate().all(|(j, &e)| j == i || e == 0))
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn same_ring(&self, other: &SparsePoly) -> bool {
        self.vars == other.vars && self.field == other.field
    }

    fn check_ring(&self, other: &SparsePoly) {
        assert!(self.same_ring(other), "polynomials live in different rings");
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        self.check_ring(other);
        let mut out = SparsePoly::zero(&self.field, &self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Elem) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(&self.field, &self.vars);
        }
        let mut out = SparsePoly::zero(&self.field, &self.vars);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), self.field.mul(x, c));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> SparsePoly {
        self.scale(&Elem::Rat(r.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> SparsePoly {
        SparsePoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> SparsePoly {
        let mut base = self.clone();
        let mut acc = SparsePoly::from_i64(&self.field, &self.vars, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.field, &self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, scale_int(c, e as i64));
        }
        out
    }

    /// Coefficients with respect to variable `i`: `self = Σ out[k] * x_i^k`.
    /// Each coefficient keeps the full variable list but does not involve `x_i`.
    pub fn coefficients_in(&self, i: usize) -> Vec<SparsePoly> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![SparsePoly::zero(&self.field, &self.vars); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = std::mem::replace(&mut m2.0[i], 0) as usize;
            out[e].terms.insert(m2, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(field: &ExtField, vars: &Vars, i: usize, coeffs: &[SparsePoly]) -> SparsePoly {
        let mut out = SparsePoly::zero(field, vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                let mut m2 = m.clone();
                m2.0[i] += k as u32;
                out.add_term(m2, x.clone());
            }
        }
        out
    }

    /// Sets variable `i` to `value`.
    pub fn eval_var(&self, i: usize, value: &Elem) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.field, &self.vars);
        let mut powers: Vec<Elem> = vec![Elem::one()];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            while powers.len() <= e {
                let next = self.field.mul(powers.last().unwrap(), value);
                powers.push(next);
            }
            let mut m2 = m.clone();
            m2.0[i] = 0;
            out.add_term(m2, self.field.mul(c, &powers[e]));
        }
        out
    }

    /// Evaluates at a point (one value per variable).
    pub fn eval(&self, point: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = Elem::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes `images[j]` for variable `j`. All images must share one ring.
    pub fn compose(&self, images: &[SparsePoly]) -> SparsePoly {
        assert_eq!(images.len(), self.nvars());
        let target = &images[0];
        let mut cache: Vec<Vec<SparsePoly>> = images
            .iter()
            .map(|p| vec![SparsePoly::from_i64(&target.field, &target.vars, 1), p.clone()])
            .collect();
        let mut out = SparsePoly::zero(&target.field, &target.vars);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(&target.field, &target.vars, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[j].len() <= e as usize {
                    let next = cache[j].last().unwrap().mul(&images[j]);
                    cache[j].push(next);
                }
                t = t.mul(&cache[j][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// `self(.., x_i + tau, ..)` by Horner's rule in `x_i`.
    pub fn translate(&self, i: usize, tau: &Elem) -> SparsePoly {
        let coeffs = self.coefficients_in(i);
        let xi = Monomial::var(self.nvars(), i, 1);
        let mut acc = SparsePoly::zero(&self.field, &self.vars);
        for c in coeffs.iter().rev() {
            acc = acc.mul_monomial(&xi).add(&acc.scale(tau)).add(c);
        }
        acc
    }

    /// Applies a map on exponent vectors (a monomial substitution).
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.field, &self.vars);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Divides by `x_i^k`; every term must be divisible.
    pub fn div_var_power(&self, i: usize, k: u32) -> SparsePoly {
        self.map_monomials(|m| {
            let mut m2 = m.clone();
            m2.0[i] = m2.0[i].checked_sub(k).expect("term not divisible by variable power");
            m2
        })
    }

    /// Lowest exponent of `x_i` whose coefficient is nonzero, checked for
    /// zero divisors in extension towers. `None` for the zero polynomial.
    pub fn order_in(&self, i: usize) -> AlgebraResult<Option<u32>> {
        let coeffs = self.coefficients_in(i);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            self.field.ensure_regular(c.terms.values())?;
            return Ok(Some(k as u32));
        }
        Ok(None)
    }

    /// Lowest total degree of a nonzero homogeneous part (order at the origin).
    pub fn order_at_origin(&self) -> AlgebraResult<Option<u32>> {
        let mut by_degree: BTreeMap<u32, Vec<&Elem>> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_degree.entry(m.degree()).or_default().push(c);
        }
        match by_degree.into_iter().next() {
            Some((d, cs)) => {
                self.field.ensure_regular(cs)?;
                Ok(Some(d))
            }
            None => Ok(None),
        }
    }

    /// Scales so that the leading coefficient (graded lex) is 1.
    pub fn monic(&self) -> AlgebraResult<SparsePoly> {
        match self.leading_term() {
            None => Ok(self.clone()),
            Some((_, c)) => {
                let inv = self.field.inv(c)?;
                Ok(self.scale(&inv))
            }
        }
    }

    /// Exact division by `d` (multivariate division with remainder zero).
    pub fn div_exact(&self, d: &SparsePoly) -> AlgebraResult<SparsePoly> {
        self.check_ring(d);
        let (lm, lc) = d.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let lm = lm.clone();
        let inv = self.field.inv(lc)?;
        let mut r = self.clone();
        let mut q = SparsePoly::zero(&self.field, &self.vars);
        while let Some((m, c)) = r.leading_term() {
            if !lm.divides(m) {
                return Err(AlgebraError::InexactDivision);
            }
            let qm = m.div(&lm);
            let qc = self.field.mul(c, &inv);
            let mut t = SparsePoly::zero(&self.field, &self.vars);
            t.terms.insert(qm, qc);
            let top = m.clone();
            r = r.sub(&t.mul(d));
            // guard against a leading term that failed to cancel
            if r.terms.contains_key(&top) {
                r.terms.remove(&top);
            }
            q = q.add(&t);
        }
        Ok(q)
    }

    /// Dense univariate view in variable `i`.
    pub fn to_univariate(&self, i: usize) -> AlgebraResult<UniPoly> {
        if !self.is_univariate_in(i) {
            return Err(AlgebraError::NotUnivariate(self.vars[i].clone()));
        }
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut coeffs = vec![Elem::zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.0[i] as usize] = c.clone();
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }

    pub fn from_univariate(field: &ExtField, vars: &Vars, i: usize, p: &UniPoly) -> SparsePoly {
        SparsePoly::from_terms(
            field,
            vars,
            p.coeffs().iter().enumerate().map(|(k, c)| (Monomial::var(vars.len(), i, k as u32), c.clone())),
        )
    }

    /// The same polynomial viewed over an extension of its field.
    pub fn with_field(&self, field: &ExtField) -> SparsePoly {
        assert!(field.extends(&self.field), "target field does not extend the source field");
        SparsePoly { field: field.clone(), vars: self.vars.clone(), terms: self.terms.clone() }
    }

    /// Re-reduces coefficients into a refined tower of the same height.
    pub fn reduce_into(&self, field: &ExtField) -> SparsePoly {
        SparsePoly::from_terms(field, &self.vars, self.terms.iter().map(|(m, c)| (m.clone(), field.reduce(c))))
    }

    /// Renames variables (same count).
    pub fn with_vars(&self, vars: &Vars) -> SparsePoly {
        assert_eq!(vars.len(), self.vars.len());
        SparsePoly { field: self.field.clone(), vars: vars.clone(), terms: self.terms.clone() }
    }

    /// Moves the polynomial into a ring with another variable list; every
    /// variable that occurs must exist in the target list.
    pub fn into_vars(&self, target: &Vars) -> AlgebraResult<SparsePoly> {
        let mut idx = Vec::with_capacity(self.nvars());
        for (j, v) in self.vars.iter().enumerate() {
            match target.iter().position(|t| t == v) {
                Some(k) => idx.push(Some(k)),
                None if self.involves(j) => return Err(AlgebraError::UnknownVariable(v.clone())),
                None => idx.push(None),
            }
        }
        let n = target.len();
        Ok(SparsePoly::from_terms(
            &self.field,
            target,
            self.terms.iter().map(|(m, c)| {
                let mut m2 = Monomial::one(n);
                for (j, &e) in m.0.iter().enumerate() {
                    if let Some(k) = idx[j] {
                        m2.0[k] += e;
                    }
                }
                (m2, c.clone())
            }),
        ))
    }

    /// Classifies the polynomial as zero or regular (nonzero in every
    /// component of the tower).
    pub fn classify(&self) -> AlgebraResult<Class> {
        if self.is_zero() {
            return Ok(Class::Zero);
        }
        self.field.ensure_regular(self.terms.values())?;
        Ok(Class::Unit)
    }

    /// True when all coefficients are rational.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        SparsePoly::add(self, rhs)
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        SparsePoly::sub(self, rhs)
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        SparsePoly::mul(self, rhs)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly::neg(self)
    }
}

impl fmt::Display for SparsePoly {
    /// Terms in descending graded-lex order, e.g. `2*x^3 + x*y - 1/2`.
    /// Over Q the output parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { self.vars[j].clone() } else { format!("{}^{}", self.vars[j], e) })
                .collect();
            let mono = mono.join("*");
            let (neg, coeff) = match c {
                Elem::Rat(r) => (r < &Rational::from_integer(0.into()), fmt_rational(&r.abs_ref())),
                _ => (false, self.field.display(c).to_string()),
            };
            let sign = match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sign}")?;
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}

trait AbsRef {
    fn abs_ref(&self) -> Rational;
}

impl AbsRef for Rational {
    fn abs_ref(&self) -> Rational {
        num_traits::Signed::abs(self)
    }
}

//! Exact scalars: rationals and towers of simple algebraic extensions.
//!
//! A tower `Q ⊂ K1 ⊂ ... ⊂ Kh` is given by monic squarefree moduli
//! `M_l(α_l)` with coefficients in `K_{l-1}`. The moduli are not required to
//! be irreducible, so `K_l` is a product of fields. Arithmetic is reduction
//! modulo the tower; whenever an inversion meets a zero divisor the
//! computation reports a [`SplitEvent`](super::SplitEvent) carrying a
//! factorization of the offending modulus (dynamic evaluation).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense::UniPoly;
use super::error::{AlgebraError, AlgebraResult};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element of some level of an extension tower, in reduced form.
///
/// `Alg { level, coeffs }` stands for `Σ coeffs[i] α_level^i` with every
/// coefficient of strictly lower level, `2 <= coeffs.len() <= deg M_level`
/// and a nonzero last coefficient. Elements that do not involve `α_level`
/// collapse to their constant coefficient, so representations are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(Rational),
    Alg { level: usize, coeffs: Vec<Elem> },
}

impl Elem {
    pub fn zero() -> Self {
        Elem::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Elem::Rat(Rational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Elem::Rat(rat(n))
    }

    pub fn level(&self) -> usize {
        match self {
            Elem::Rat(_) => 0,
            Elem::Alg { level, .. } => *level,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Elem::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Elem::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Elem::Rat(r) => Some(r),
            Elem::Alg { .. } => None,
        }
    }

    fn normalize(level: usize, mut coeffs: Vec<Elem>) -> Elem {
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => Elem::zero(),
            1 => coeffs.pop().unwrap(),
            _ => Elem::Alg { level, coeffs },
        }
    }

    pub fn add(&self, other: &Elem) -> Elem {
        match (self, other) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            _ => {
                let (la, lb) = (self.level(), other.level());
                if la == lb {
                    let (Elem::Alg { coeffs: ca, .. }, Elem::Alg { coeffs: cb, .. }) = (self, other)
                    else {
                        unreachable!()
                    };
                    let n = ca.len().max(cb.len());
                    let zero = Elem::zero();
                    let coeffs = (0..n)
                        .map(|i| ca.get(i).unwrap_or(&zero).add(cb.get(i).unwrap_or(&zero)))
                        .collect();
                    Elem::normalize(la, coeffs)
                } else {
                    let (hi, lo) = if la > lb { (self, other) } else { (other, self) };
                    let Elem::Alg { level, coeffs } = hi else { unreachable!() };
                    let mut coeffs = coeffs.clone();
                    coeffs[0] = coeffs[0].add(lo);
                    Elem::normalize(*level, coeffs)
                }
            }
        }
    }

    pub fn neg(&self) -> Elem {
        match self {
            Elem::Rat(a) => Elem::Rat(-a),
            Elem::Alg { level, coeffs } => Elem::Alg {
                level: *level,
                coeffs: coeffs.iter().map(Elem::neg).collect(),
            },
        }
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.neg())
    }

    fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(r) => write!(f, "{}", fmt_rational(r)),
            Elem::Alg { level, coeffs } => {
                let name = names.get(level - 1).map(String::as_str).unwrap_or("?");
                write!(f, "(")?;
                let mut first = true;
                for (i, c) in coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match i {
                        0 => c.fmt_with(names, f)?,
                        _ => {
                            if !c.is_one() {
                                c.fmt_with(names, f)?;
                                write!(f, "*")?;
                            }
                            write!(f, "{name}")?;
                            if i > 1 {
                                write!(f, "^{i}")?;
                            }
                        }
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(&[], f)
    }
}

/// Displays an element using the generator names of a tower.
pub struct ElemDisplay<'a> {
    elem: &'a Elem,
    names: Vec<String>,
}

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.elem.fmt_with(&self.names, f)
    }
}

/// Classification of an element of a (possibly split) tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Zero,
    Unit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub name: String,
    /// Monic modulus, ascending coefficients, `len = degree + 1`.
    pub modulus: Vec<Elem>,
}

/// A tower of algebraic extensions over Q. The empty tower is Q itself.
#[derive(Clone, Debug)]
pub struct ExtField {
    levels: Arc<Vec<Level>>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.levels, &other.levels) || self.levels == other.levels
    }
}

impl Eq for ExtField {}

impl Default for ExtField {
    fn default() -> Self {
        Self::rationals()
    }
}

impl ExtField {
    pub fn rationals() -> Self {
        ExtField { levels: Arc::new(Vec::new()) }
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn is_rationals(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Degree of the tower over Q: the product of the modulus degrees.
    pub fn degree(&self) -> u64 {
        self.levels.iter().map(|l| (l.modulus.len() - 1) as u64).product()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.levels.iter().map(|l| l.name.clone()).collect()
    }

    /// The generator `α_level` (1-based).
    pub fn generator(&self, level: usize) -> Elem {
        assert!(level >= 1 && level <= self.height(), "no generator at level {level}");
        Elem::Alg { level, coeffs: vec![Elem::zero(), Elem::one()] }
    }

    pub fn display<'a>(&self, elem: &'a Elem) -> ElemDisplay<'a> {
        ElemDisplay { elem, names: self.generator_names() }
    }

    /// True when `self` is `other` with zero or more levels appended.
    pub fn extends(&self, other: &ExtField) -> bool {
        other.height() <= self.height() && self.levels[..other.height()] == other.levels[..]
    }

    /// Adjoins a root of `modulus` (univariate over this tower, squarefree,
    /// degree at least 2). The modulus need not be irreducible.
    pub fn adjoin(&self, name: &str, modulus: &UniPoly) -> AlgebraResult<ExtField> {
        let deg = modulus.degree().unwrap_or(0);
        if modulus.is_zero() || deg < 2 {
            return Err(AlgebraError::ModulusDegree(deg));
        }
        let monic = modulus.monic(self)?;
        let g = UniPoly::gcd(self, &monic, &monic.derivative())?;
        if g.degree() != Some(0) {
            return Err(AlgebraError::NotSquarefree);
        }
        let mut levels = (*self.levels).clone();
        levels.push(Level { name: name.to_string(), modulus: monic.into_coeffs() });
        Ok(ExtField { levels: Arc::new(levels) })
    }

    /// Replaces the modulus at `level` by `modulus` (a factor of the old
    /// one) and reduces every higher modulus accordingly.
    pub fn refine(&self, level: usize, modulus: &UniPoly) -> AlgebraResult<ExtField> {
        let mut levels: Vec<Level> = self.levels[..level].to_vec();
        levels[level - 1].modulus = modulus.monic(self)?.into_coeffs();
        let mut out = ExtField { levels: Arc::new(levels) };
        for lvl in &self.levels[level..] {
            let reduced: Vec<Elem> = lvl.modulus.iter().map(|c| out.reduce(c)).collect();
            let mut levels = (*out.levels).clone();
            levels.push(Level { name: lvl.name.clone(), modulus: reduced });
            out = ExtField { levels: Arc::new(levels) };
        }
        Ok(out)
    }

    /// Reduces an element built over a tower with the same shape but
    /// possibly larger moduli (used after [`ExtField::refine`]).
    pub fn reduce(&self, e: &Elem) -> Elem {
        match e {
            Elem::Rat(_) => e.clone(),
            Elem::Alg { level, coeffs } => {
                let coeffs: Vec<Elem> = coeffs.iter().map(|c| self.reduce(c)).collect();
                let coeffs = self.reduce_top(*level, coeffs);
                Elem::normalize(*level, coeffs)
            }
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            _ if a.is_zero() || b.is_zero() => Elem::zero(),
            _ => {
                let (la, lb) = (a.level(), b.level());
                if la != lb {
                    let (hi, lo) = if la > lb { (a, b) } else { (b, a) };
                    let Elem::Alg { level, coeffs } = hi else { unreachable!() };
                    let coeffs = coeffs.iter().map(|c| self.mul(c, lo)).collect();
                    return Elem::normalize(*level, coeffs);
                }
                let (Elem::Alg { coeffs: ca, .. }, Elem::Alg { coeffs: cb, .. }) = (a, b) else {
                    unreachable!()
                };
                let mut prod = vec![Elem::zero(); ca.len() + cb.len() - 1];
                for (i, x) in ca.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in cb.iter().enumerate() {
                        prod[i + j] = prod[i + j].add(&self.mul(x, y));
                    }
                }
                let prod = self.reduce_top(la, prod);
                Elem::normalize(la, prod)
            }
        }
    }

    fn reduce_top(&self, level: usize, mut coeffs: Vec<Elem>) -> Vec<Elem> {
        let m = &self.levels[level - 1].modulus;
        let n = m.len() - 1;
        if coeffs.len() <= n {
            return coeffs;
        }
        for k in (n..coeffs.len()).rev() {
            let c = std::mem::replace(&mut coeffs[k], Elem::zero());
            if c.is_zero() {
                continue;
            }
            for (j, mj) in m.iter().take(n).enumerate() {
                coeffs[k - n + j] = coeffs[k - n + j].sub(&self.mul(&c, mj));
            }
        }
        coeffs.truncate(n);
        coeffs
    }

    pub fn pow(&self, a: &Elem, mut e: u32) -> Elem {
        let mut base = a.clone();
        let mut acc = Elem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse, or a split of the modulus that makes `a` a
    /// zero divisor.
    pub fn inv(&self, a: &Elem) -> AlgebraResult<Elem> {
        match a {
            Elem::Rat(r) => {
                if r.is_zero() {
                    Err(AlgebraError::DivisionByZero)
                } else {
                    Ok(Elem::Rat(r.recip()))
                }
            }
            Elem::Alg { level, coeffs } => {
                let modulus = UniPoly::from_coeffs(self.levels[level - 1].modulus.clone());
                let x = UniPoly::from_coeffs(coeffs.clone());
                let (g, _, t) = UniPoly::ext_gcd(self, &modulus, &x)?;
                if g.degree() == Some(0) {
                    // g = s*M + t*x with g a nonzero constant of lower level.
                    let ginv = self.inv(&g.coeffs()[0])?;
                    let t = t.scale(self, &ginv);
                    Ok(Elem::normalize(*level, self.reduce_top(*level, t.into_coeffs())))
                } else {
                    let g = g.monic(self)?;
                    let h = modulus.div_exact(self, &g)?.monic(self)?;
                    let mut factors = [g, h];
                    factors.sort_by(UniPoly::canonical_cmp);
                    Err(AlgebraError::split(*level, factors))
                }
            }
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> AlgebraResult<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Zero, unit, or a split when `a` is a zero divisor.
    pub fn classify(&self, a: &Elem) -> AlgebraResult<Class> {
        match a {
            _ if a.is_zero() => Ok(Class::Zero),
            Elem::Rat(_) => Ok(Class::Unit),
            Elem::Alg { .. } => self.inv(a).map(|_| Class::Unit),
        }
    }

    /// Checks that a family of coefficients is either all zero or contains a
    /// unit, i.e. the polynomial they form is nonzero in every component of
    /// the tower or zero in all of them.
    pub fn ensure_regular<'a>(&self, coeffs: impl IntoIterator<Item = &'a Elem>) -> AlgebraResult<()> {
        if self.is_rationals() {
            return Ok(());
        }
        let mut first_err = None;
        for c in coeffs {
            if c.is_zero() {
                continue;
            }
            match self.inv(c) {
                Ok(_) => return Ok(()),
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        match first_err {
            None => Ok(()),
            Some(e) => Err(e),
        }
    }

    pub fn is_unit(&self, a: &Elem) -> AlgebraResult<bool> {
        Ok(self.classify(a)? == Class::Unit)
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn rational_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&x| Elem::from_i64(x)).collect())
    }

    #[test]
    fn invert_rational() {
        let q = ExtField::rationals();
        assert_eq!(q.inv(&Elem::from_i64(2)).unwrap(), Elem::Rat(ratio(1, 2)));
        assert_eq!(q.inv(&Elem::zero()), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn adjoin_sqrt_minus_two() {
        let k = ExtField::rationals().adjoin("α", &uni(&[2, 0, 1])).unwrap();
        assert_eq!(k.degree(), 2);
        let a = k.generator(1);
        assert_eq!(k.mul(&a, &a), Elem::from_i64(-2));
        let inv = k.inv(&a).unwrap();
        // -α/2
        assert_eq!(inv, Elem::Alg { level: 1, coeffs: vec![Elem::zero(), Elem::Rat(ratio(-1, 2))] });
        assert!(k.mul(&a, &inv).is_one());
    }

    #[test]
    fn adjoin_rejects_linear_and_repeated() {
        let q = ExtField::rationals();
        assert_eq!(q.adjoin("a", &uni(&[-5, 1])), Err(AlgebraError::ModulusDegree(1)));
        assert_eq!(q.adjoin("a", &uni(&[1, 2, 1])), Err(AlgebraError::NotSquarefree));
    }

    #[test]
    fn zero_divisor_splits_modulus() {
        let k = ExtField::rationals().adjoin("α", &uni(&[-1, 0, 1])).unwrap();
        let x = k.generator(1).sub(&Elem::one());
        let err = k.inv(&x).unwrap_err();
        let ev = err.as_split().unwrap();
        assert_eq!(ev.level, 1);
        // canonical order lists linear factors by ascending root
        assert_eq!(ev.factors[0], uni(&[1, 1]));
        assert_eq!(ev.factors[1], uni(&[-1, 1]));
        let prod = ev.factors[0].mul(&k, &ev.factors[1]);
        assert_eq!(prod, uni(&[-1, 0, 1]));
    }

    #[test]
    fn two_level_tower() {
        // Q(√2)(√3)
        let k1 = ExtField::rationals().adjoin("a", &uni(&[-2, 0, 1])).unwrap();
        let k2 = k1.adjoin("b", &uni(&[-3, 0, 1])).unwrap();
        let a = k2.generator(1);
        let b = k2.generator(2);
        let ab = k2.mul(&a, &b);
        assert_eq!(k2.mul(&ab, &ab), Elem::from_i64(6));
        let s = a.add(&b);
        let inv = k2.inv(&s).unwrap();
        assert!(k2.mul(&s, &inv).is_one());
    }

    #[test]
    fn refine_keeps_higher_levels_reduced() {
        let k1 = ExtField::rationals().adjoin("a", &uni(&[-1, 0, 1])).unwrap();
        let r = k1.refine(1, &uni(&[-1, 1])).unwrap();
        assert_eq!(r.degree(), 1);
        assert_eq!(r.reduce(&k1.generator(1)), Elem::one());
    }
}

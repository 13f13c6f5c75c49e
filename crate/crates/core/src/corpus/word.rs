//! Words in the tame generators and seeded random automorphisms.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{fmt_rational, rat, Elem, ExtField, Rational, SparsePoly};
use crate::resolution::{xy_vars, PolyMap};

use super::CorpusError;

/// Degree cap for generated maps.
pub const DEGREE_CAP: u32 = 32;
/// Attempts before giving up on the degree cap.
const MAX_RETRIES: u32 = 64;
/// Numerators are drawn from `[-COEFF_BOUND, COEFF_BOUND]`, denominators
/// from `[1, COEFF_BOUND]`.
const COEFF_BOUND: i64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shear {
    /// `(x + c y^k, y)`.
    X,
    /// `(x, y + c x^k)`.
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Factor {
    /// `v -> M v + t`, `det M != 0`.
    Affine { matrix: [[Rational; 2]; 2], translation: [Rational; 2] },
    /// `c != 0`, `k >= 2`.
    Elementary { c: Rational, k: u32, shear: Shear },
}

fn lin(a: &Rational, b: &Rational, t: &Rational) -> SparsePoly {
    let (f, v) = (ExtField::rationals(), xy_vars());
    let x = SparsePoly::var(&f, &v, 0);
    let y = SparsePoly::var(&f, &v, 1);
    x.scale_rational(a).add(&y.scale_rational(b)).add(&SparsePoly::constant(&f, &v, Elem::Rat(t.clone())))
}

impl Factor {
    pub fn determinant(&self) -> Rational {
        match self {
            Factor::Affine { matrix: m, .. } => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
            Factor::Elementary { .. } => rat(1),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Factor::Affine { .. } => 1,
            Factor::Elementary { k, .. } => *k,
        }
    }

    pub fn to_map(&self) -> PolyMap {
        let (f, v) = (ExtField::rationals(), xy_vars());
        let (p, q) = match self {
            Factor::Affine { matrix: m, translation: t } => {
                (lin(&m[0][0], &m[0][1], &t[0]), lin(&m[1][0], &m[1][1], &t[1]))
            }
            Factor::Elementary { c, k, shear } => {
                let x = SparsePoly::var(&f, &v, 0);
                let y = SparsePoly::var(&f, &v, 1);
                match shear {
                    Shear::X => (x.add(&y.pow(*k).scale_rational(c)), y),
                    Shear::Y => {
                        let px = x.pow(*k).scale_rational(c);
                        (x, y.add(&px))
                    }
                }
            }
        };
        PolyMap::new(p, q).expect("generators are nonconstant maps over Q")
    }

    pub fn inverse(&self) -> Factor {
        match self {
            Factor::Affine { matrix: m, translation: t } => {
                let d = self.determinant();
                let inv = [
                    [&m[1][1] / &d, -(&m[0][1] / &d)],
                    [-(&m[1][0] / &d), &m[0][0] / &d],
                ];
                let translation = [
                    -(&inv[0][0] * &t[0] + &inv[0][1] * &t[1]),
                    -(&inv[1][0] * &t[0] + &inv[1][1] * &t[1]),
                ];
                Factor::Affine { matrix: inv, translation }
            }
            Factor::Elementary { c, k, shear } => Factor::Elementary { c: -c, k: *k, shear: *shear },
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Affine { matrix: m, translation: t } => write!(
                f,
                "affine[[{}, {}], [{}, {}]] + ({}, {})",
                fmt_rational(&m[0][0]),
                fmt_rational(&m[0][1]),
                fmt_rational(&m[1][0]),
                fmt_rational(&m[1][1]),
                fmt_rational(&t[0]),
                fmt_rational(&t[1])
            ),
            Factor::Elementary { c, k, shear: Shear::X } => write!(f, "(x + ({})*y^{k}, y)", fmt_rational(c)),
            Factor::Elementary { c, k, shear: Shear::Y } => write!(f, "(x, y + ({})*x^{k})", fmt_rational(c)),
        }
    }
}

/// `factors[0] ∘ factors[1] ∘ ... ∘ factors[n-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeneratorWord {
    pub factors: Vec<Factor>,
}

impl GeneratorWord {
    pub fn to_map(&self) -> PolyMap {
        self.factors.iter().fold(PolyMap::identity(), |acc, g| acc.compose(&g.to_map()))
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord { factors: self.factors.iter().rev().map(Factor::inverse).collect() }
    }

    /// `f` followed on the right by the inverse factors, innermost first,
    /// so each step lowers the degree when `f` is this word's map. Yields
    /// the identity exactly in that case.
    pub fn unwind(&self, f: &PolyMap) -> PolyMap {
        self.factors.iter().rev().fold(f.clone(), |acc, g| acc.compose(&g.inverse().to_map()))
    }

    /// Upper bound on the degree of the composed map.
    pub fn degree_bound(&self) -> u32 {
        self.factors.iter().map(Factor::degree).product()
    }

    pub fn jacobian(&self) -> Rational {
        self.factors.iter().map(Factor::determinant).product()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(Factor::to_string).collect();
        f.write_str(&parts.join(" o "))
    }
}

/// `F ∘ G`.
pub fn compose(f: &PolyMap, g: &PolyMap) -> PolyMap {
    f.compose(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomAutomorphism {
    pub map: PolyMap,
    pub word: GeneratorWord,
    /// Words discarded for exceeding the degree cap.
    pub retries: u32,
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND).into(), rng.gen_range(1..=COEFF_BOUND).into())
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let c = small(rng);
        if c != rat(0) {
            return c;
        }
    }
}

fn random_affine(rng: &mut ChaCha8Rng) -> Factor {
    loop {
        let matrix = [[small(rng), small(rng)], [small(rng), small(rng)]];
        let translation = [small(rng), small(rng)];
        let f = Factor::Affine { matrix, translation };
        if f.determinant() != rat(0) {
            return f;
        }
    }
}

/// A word of `n_factors` generators alternating elementary and affine,
/// starting with an elementary x-shear, and its composition.
pub fn random_automorphism(seed: u64, n_factors: usize, max_exponent: u32) -> Result<RandomAutomorphism, CorpusError> {
    random_automorphism_capped(seed, n_factors, max_exponent, DEGREE_CAP)
}

pub fn random_automorphism_capped(
    seed: u64,
    n_factors: usize,
    max_exponent: u32,
    cap: u32,
) -> Result<RandomAutomorphism, CorpusError> {
    if n_factors == 0 {
        return Err(CorpusError::NoFactors);
    }
    if max_exponent < 2 {
        return Err(CorpusError::ExponentTooSmall(max_exponent));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for retries in 0..MAX_RETRIES {
        let factors: Vec<Factor> = (0..n_factors)
            .map(|i| {
                if i % 2 == 0 {
                    Factor::Elementary { c: nonzero(&mut rng), k: rng.gen_range(2..=max_exponent), shear: Shear::X }
                } else {
                    random_affine(&mut rng)
                }
            })
            .collect();
        let word = GeneratorWord { factors };
        if word.degree_bound() <= cap {
            return Ok(RandomAutomorphism { map: word.to_map(), word, retries });
        }
    }
    Err(CorpusError::DegreeCap { cap, retries: MAX_RETRIES })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_examples() {
        let f2 = PolyMap::from_int_terms(&[(1, &[1, 0]), (1, &[0, 2])], &[(1, &[0, 1])]).unwrap();
        let shift = PolyMap::from_int_terms(&[(1, &[1, 0])], &[(1, &[0, 1]), (1, &[0, 0])]).unwrap();
        assert_eq!(compose(&f2, &shift).to_string(), "y^2 + x + 2*y + 1; y + 1");
        assert_eq!(compose(&f2, &PolyMap::identity()), f2);
        let swap = PolyMap::from_int_terms(&[(1, &[0, 1])], &[(1, &[1, 0])]).unwrap();
        assert_eq!(compose(&f2, &swap).to_string(), "x^2 + y; x");
    }

    #[test]
    fn single_factor_is_an_x_shear() {
        let s = random_automorphism(11, 1, 2).unwrap();
        let [Factor::Elementary { c, k: 2, shear: Shear::X }] = s.word.factors.as_slice() else {
            panic!("unexpected word {}", s.word)
        };
        let expected = Factor::Elementary { c: c.clone(), k: 2, shear: Shear::X }.to_map();
        assert_eq!(s.map, expected);
        assert_eq!(s.map.q().to_string(), "y");
    }

    #[test]
    fn degree_cap_forces_retries() {
        // two elementary factors always exceed degree 3
        assert_eq!(random_automorphism_capped(3, 3, 9, 3), Err(CorpusError::DegreeCap { cap: 3, retries: MAX_RETRIES }));
        let s = random_automorphism_capped(3, 3, 4, 4).unwrap();
        assert!(s.word.degree_bound() <= 4);
        assert_eq!(random_automorphism(0, 0, 3), Err(CorpusError::NoFactors));
    }
}

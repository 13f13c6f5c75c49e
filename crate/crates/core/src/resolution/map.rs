use std::fmt;

use crate::algebra::{vars, ExtField, SparsePoly, Vars};

use super::ResolutionError;

/// The coordinate names of the source plane.
pub fn xy_vars() -> Vars {
    vars(&["x", "y"])
}

/// A polynomial self-map `F = (P, Q)` of the affine plane over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    p: SparsePoly,
    q: SparsePoly,
}

impl PolyMap {
    /// Both components must live in `Q[x, y]`.
    pub fn new(p: SparsePoly, q: SparsePoly) -> Result<Self, ResolutionError> {
        let v = xy_vars();
        let p = p.into_vars(&v)?;
        let q = q.into_vars(&v)?;
        if !p.field().is_rationals() || !q.field().is_rationals() {
            return Err(ResolutionError::Internal("map coefficients must be rational".into()));
        }
        if p.is_constant() && q.is_constant() {
            return Err(ResolutionError::ConstantMap);
        }
        Ok(PolyMap { p, q })
    }

    /// Builds a map from integer term lists `(coeff, [ex, ey])`.
    pub fn from_int_terms(p: &[(i64, &[u32])], q: &[(i64, &[u32])]) -> Result<Self, ResolutionError> {
        let (f, v) = (ExtField::rationals(), xy_vars());
        Self::new(SparsePoly::from_int_terms(&f, &v, p), SparsePoly::from_int_terms(&f, &v, q))
    }

    pub fn identity() -> Self {
        let (f, v) = (ExtField::rationals(), xy_vars());
        PolyMap { p: SparsePoly::var(&f, &v, 0), q: SparsePoly::var(&f, &v, 1) }
    }

    pub fn p(&self) -> &SparsePoly {
        &self.p
    }

    pub fn q(&self) -> &SparsePoly {
        &self.q
    }

    pub fn components(&self) -> [&SparsePoly; 2] {
        [&self.p, &self.q]
    }

    /// `d = max(deg P, deg Q)`; at least 1.
    pub fn degree(&self) -> u32 {
        self.p.total_degree().unwrap_or(0).max(self.q.total_degree().unwrap_or(0))
    }

    pub fn jacobian(&self) -> SparsePoly {
        jacobian(self)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PolyMap) -> PolyMap {
        let images = [other.p.clone(), other.q.clone()];
        PolyMap { p: self.p.compose(&images), q: self.q.compose(&images) }
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}", self.p, self.q)
    }
}

/// `P_x Q_y - P_y Q_x`.
pub fn jacobian(f: &PolyMap) -> SparsePoly {
    f.p.derivative(0).mul(&f.q.derivative(1)).sub(&f.p.derivative(1).mul(&f.q.derivative(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobian_examples() {
        let f2 = PolyMap::from_int_terms(&[(1, &[1, 0]), (1, &[0, 2])], &[(1, &[0, 1])]).unwrap();
        assert_eq!(jacobian(&f2).to_string(), "1");
        let cusp = PolyMap::from_int_terms(&[(2, &[3, 0]), (1, &[1, 1])], &[(3, &[2, 0]), (1, &[0, 1])]).unwrap();
        assert_eq!(jacobian(&cusp).to_string(), "y");
        let xxy = PolyMap::from_int_terms(&[(1, &[1, 0])], &[(1, &[1, 1])]).unwrap();
        assert_eq!(jacobian(&xxy).to_string(), "x");
    }

    #[test]
    fn constant_map_is_rejected() {
        assert!(matches!(
            PolyMap::from_int_terms(&[(1, &[0, 0])], &[(2, &[0, 0])]),
            Err(ResolutionError::ConstantMap)
        ));
    }
}

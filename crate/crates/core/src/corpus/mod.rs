//! Test maps: seeded random automorphisms and fixed examples.

mod fixtures;
mod word;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::analysis::AnalysisError;

pub use fixtures::{
    check_fixture, f_n, f_n_edges, known_examples, synthetic_pair_trees, with_pole_orders, x_axis_parametrization,
    Expectations, Fixture,
};
pub use word::{
    compose, random_automorphism, random_automorphism_capped, Factor, GeneratorWord, RandomAutomorphism, Shear,
    DEGREE_CAP,
};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum CorpusError {
    #[error("a word needs at least one factor")]
    NoFactors,
    #[error("elementary exponent bound {0} is below 2")]
    ExponentTooSmall(u32),
    #[error("no word within degree {cap} after {retries} attempts")]
    DegreeCap { cap: u32, retries: u32 },
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

impl From<AlgebraError> for CorpusError {
    fn from(e: AlgebraError) -> Self {
        CorpusError::Analysis(e.into())
    }
}

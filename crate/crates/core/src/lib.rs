//! Resolution of the indeterminacy at infinity of polynomial self-maps of
//! the affine plane, with the annotated graph of t-curves and checks built
//! on it.

pub mod algebra;
pub mod analysis;
pub mod corpus;
pub mod resolution;

//! Exact computations with graded quivers, superpotentials and Ginzburg
//! dg-algebras of quivers with relations over the rationals.

pub mod dsl;
pub mod error;
pub mod ginzburg;
pub mod homology;
pub mod ideals;
pub mod linalg;
pub mod path_algebra;
pub mod quiver;
pub mod report;

pub use error::{Error, Result};
pub use ginzburg::{
    build_b, build_gamma, build_ginzburg, build_qw, check_d_squared, check_dg_isomorphism,
    DgAlgebra, RelationSequence, SampleOptions, SignedArrowMap, Verdict,
};
pub use linalg::Rational;
pub use path_algebra::{Homogeneity, PathElement, Superpotential};
pub use quiver::{Arrow, GradedQuiver, Path};

//! Exact cohomology engine for finite bigraded differential complexes.

pub mod actions;
pub mod cohomology;
pub mod complexes;
pub mod exactmath;
pub mod models;
pub mod vaisman;

pub use complexes::{Bicomplex, Bidegree, BigradedSpace, GradedOperator, OperatorSum, Shift};
pub use exactmath::{ExactMatrix, GaussianRational, Subspace};

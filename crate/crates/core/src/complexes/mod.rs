//! Bigraded complexes, graded operators, and complexes built from structure
//! equations.

mod bicomplex;
mod grading;
mod operator;
pub mod random;
pub mod structure;

pub use bicomplex::{
    dc_operator, degree_sign, j_convention_report, structural_identities, total_differential, weil_j, weil_j_inverse,
    Bicomplex, Identity, IdentityFailure, JConventionReport, StructuralReport, TotalComplex, ValidationReport,
};
pub use grading::{Bidegree, BigradedSpace, Parity, Shift};
pub use operator::{op_anticommutator, op_commutator, op_compose, op_graded_commutator, GradedOperator, OperatorSum};
pub use structure::{
    conjugate_name, from_structure_equations, DifferentialDecl, ExteriorAlgebra, Generator, GeneratorDecl,
    StructureError, StructureModel, StructureSpec, Term,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("slot {slot} lies outside the grid 0..={n}")]
    OutOfRange { slot: Bidegree, n: usize },
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("slot {0} declared twice")]
    DuplicateSlot(Bidegree),
    #[error("block at {slot} with shift {shift} leaves the grid")]
    BlockOutOfGrid { slot: Bidegree, shift: Shift },
    #[error("block at {slot} has shape {found:?}, expected {expected:?}")]
    BlockShape {
        slot: Bidegree,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("{name} has shift {found}")]
    WrongShift { name: &'static str, found: Shift },
    #[error("complex carries no del")]
    MissingDel,
}

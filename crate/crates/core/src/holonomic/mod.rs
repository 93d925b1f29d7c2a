//! P-recursive sequences, linear differential operators, Frobenius solutions,
//! substitutions and symmetric-product membership.

pub mod catalog;
pub mod frobenius;
pub mod operator;
pub mod recurrence;
pub mod symprod;

pub use frobenius::{frobenius_basis, frobenius_solve, frobenius_solve_local, FrobeniusSolution, LogSolution, Point};
pub use operator::{
    even_reduction, gauge_transform, operator_apply, operator_apply_with, operator_substitute, DiffOperator, LocalOperator,
    Scalar, ThetaForm,
};
pub use recurrence::{recurrence_unroll, PRecurrence};
pub use symprod::{symprod_membership, SymprodCertificate};

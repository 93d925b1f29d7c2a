//! Multiprecision complex arithmetic, quadrature, polynomial roots and ODE continuation.

pub mod continuation;
pub mod hpcomplex;
pub mod quadrature;
pub mod roots;
pub mod special;

pub use hpcomplex::{HPComplex, DEFAULT_PREC};
pub use quadrature::{integrate_endpoint_singular, integrate_vec, Node, QuadResult, QuadratureSpec, Rule};
pub use roots::{poly_roots, poly_roots_hp, poly_roots_rational, sort_by_real};
pub use special::{derivative_under_integral, hyp2f1_eval};

pub use continuation::{max_abs_diff, ode_continue, specialize, Continuation, ContinuationSpec, ContourPath};

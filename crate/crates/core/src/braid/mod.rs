//! Braid group action on 4-tuples of 2×2 matrices over real quadratic fields.

pub mod orbit;
pub mod tuple;

pub use orbit::*;
pub use tuple::*;

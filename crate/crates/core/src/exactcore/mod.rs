//! Exact rational and polynomial arithmetic, truncated series and classical sequences.

pub mod bipoly;
pub mod matrix;
pub mod poly;
pub mod quad;
pub mod ratfunc;
pub mod ring;
pub mod sequences;
pub mod series;

pub use bipoly::BiPoly;
pub use matrix::Matrix;
pub use poly::{IntPoly, Poly, UniPoly};
pub use quad::{Golden, Quad, QuadModulus, Sqrt17, Sqrt2};
pub use ratfunc::{RatFunc, QT};
pub use ring::{parse_rational, rat, ExactSqrt, Field, QAlgebra, Ring};
pub use sequences::{central_binomial, legendre_poly};
pub use series::{series_compose, series_hadamard, series_pow, series_sqrt, Offset, TruncatedSeries};

/// Exact scalar type.
pub type ExactScalar = rug::Rational;

//! Verification kernels for the generating function of twisted squared Legendre
//! polynomials, its decomposition into genus-2 period integrals, and the monodromy
//! and braid-orbit structure of the associated Picard–Fuchs operators.

pub mod braid;
pub mod curves;
pub mod error;
pub mod exactcore;
pub mod genfun;
pub mod holonomic;
pub mod monodromy;
pub mod numerics;

pub use error::{Error, Result};
pub use exactcore::{BiPoly, ExactScalar, Field, Matrix, Poly, QAlgebra, Ring, TruncatedSeries, UniPoly};
pub use numerics::HPComplex;
pub use rug;

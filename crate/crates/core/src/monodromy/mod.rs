//! Integral symplectic monodromy of the rank-4 Picard–Fuchs system, its real
//! multiplication splitting, density certificates and numeric confirmation.

pub mod density;
pub mod lattice;
pub mod numeric;
pub mod splitting;
pub mod symplectic;

pub use density::{density_certificate, eval_word, find_words, target_l, target_u, word_string, DensityCertificate, Letter};
pub use lattice::{antisymmetric4, integer_kernel, is_zero_matrix, saturate};
pub use numeric::{base_loops, loop_clearance, match_numeric_monodromy, numeric_tuple, words_up_to, NumericMonodromyReport};
pub use splitting::{a_matrices, commutant, conj_matrix, splitting_matrix, verify_splitting, QuadraticMatrix2, SplittingReport, Q2};
pub use symplectic::*;

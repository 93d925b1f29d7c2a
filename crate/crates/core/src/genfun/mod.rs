//! Generating functions of squared and cubed Legendre polynomials, the algebraic
//! function `Z`, and exact checks of the identities relating them.

pub mod algebraic;
pub mod decoupling;
pub mod legendre;
pub mod theorems;

pub use algebraic::{
    build_z, check_hadamard_integral, check_parametrization, check_z, parametrization_remainder_at,
    parametrization_spot_check, z_closed_form, AlgebraicZ, HadamardReport, ParametrizationReport, ZReport,
};
pub use decoupling::{check_decoupling, decoupling_w, DecouplingReport};
pub use legendre::{
    build_fp2_twisted, check_cube_theorem, check_f4_identity, check_pde_system, check_pde_system_perturbed,
    check_wan_identity, growth_rate_estimate, inverse_radius, legendre_values, BivariateReport, BivariateTruncation,
    IdentityReport, PdeReport,
};
pub use theorems::{check_l5_remark, check_theorem_th1, IntegralityReport, L5Report};

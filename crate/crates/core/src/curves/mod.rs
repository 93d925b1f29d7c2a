//! The genus-2 family `Y² = H(u, x, v)`: branch data, periods, real multiplication and the `I_±` integrals.

pub mod fibre;
pub mod humbert;
pub mod integrals;
pub mod periods;
pub mod teichmuller;

pub use fibre::{build_fibre, build_fibre_rational, check_smooth, discriminant_closed_form, fibre_sextic, singular_x13, CurveFibre};
pub use humbert::{humbert8_roots, humbert8_sextic, humbert8_test, humbert_sides, sample_family_parameters, sample_sextics, HumbertResult, HumbertWitness};
pub use integrals::{c_pm, i_pm, pf_annihilation, pf_apply, radical_s, t_of_u, IntegralValue, PfReport};
pub use periods::{
    branch_phase, loop_period, period_matrix, segment_integral, tau_relation_search, Cycle, CycleBasis, PeriodMatrix, TauRelation,
};
pub use teichmuller::{check_locus_factorization, check_locus_radicand, locus_integral_jet, teichmuller_locus_check, TeichmullerReport};

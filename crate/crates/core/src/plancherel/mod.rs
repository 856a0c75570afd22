//! Plancherel densities, residual points and formal degrees.

mod context;
mod gamma;
mod mu;
mod ratios;
mod report;
mod residual;

pub use context::GroupContext;
pub use gamma::{
    abs, central_index, formal_degree, gamma_adjoint_two_routes, gamma_direct, gamma_is_real, gamma_levi_relative_check,
    hecke_formal_degree, principal_s_sharp, LeviCheck, LeviSample, SSharp, TwoRoutes,
};
pub use mu::{class_factors, mu_value, omitted_factors, plancherel_prefactor, regularized_mu, LinearFactors, MuOutcome, MuSpec, Prefactor};
pub use ratios::{q_to_one_limit_check, ratio_identities, RatioItem};
pub use report::{to_latex, Record};
pub use residual::{discreteness_check, for_each_grid_point, is_residual, is_residual_levi, levi_residual_points, residual_search, DiscretenessCheck, MAX_SEARCH_RANK, ResidualReport, SearchBounds};

#[cfg(test)]
mod tests;

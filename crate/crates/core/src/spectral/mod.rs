//! Characteristic polynomials, certified spectral radii, the `ρ_{m,k}` and
//! `ρ_m` solvers, and exact threshold tests at `λ* = (3/2)√2`.

mod charpoly;
mod radius;
mod special;
mod threshold;

pub use charpoly::{berkowitz, char_poly, path_poly};
pub use radius::{
    compare_largest_roots, compare_radii, has_radius_two, largest_root_bracket, order_brackets,
    power_iteration_bounds, same_largest_root, same_spectral_radius, spectral_radius, Evidence,
    ExactBracket, RadiusBracket, RadiusOrdering, DEFAULT_TOL,
};
pub use special::{rho_c_mkr_equal, rho_limit, rho_mk, CoveringCheck, SOLVER_HI, SOLVER_LO};
pub use threshold::{
    edge_density_exceeds_threshold, exceeds_hoffman_limit, hoffman_poly, in_hoffman_window,
    is_below_threshold, is_below_threshold_with, poly_below_threshold, Certificate,
    ThresholdVerdict, HOFFMAN_F64, THRESHOLD_F64,
};

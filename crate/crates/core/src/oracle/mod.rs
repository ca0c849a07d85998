//! Independent referees: exact brute-force integration and graded quadrature.

pub mod exact;
pub mod quad;

pub use exact::{exact_log_l, exact_power_l};
pub use quad::{euler_integral_quad, quad_log_l, quad_power_l, QuadConfig};

//! Transference constants, hyperbolic shifts and the claim-checking engine.

mod claims;
mod constants;
mod tau;

pub use claims::{check_claims, ClaimConfig, ClaimId, ClaimReport, Outcome};
pub use constants::{c_d, c_d_bounds, c_d_polynomial, khintchine_pair, mahler_dual_box, t2_root};
pub use tau::{hyperbolic_map, normalize_tau, tau_vertex, TauMode, TauTuple};

//! Certified lower and upper bounds for single matrices and small searches
//! that produce them, plus checkers for explicit inequalities.

mod idempotent;
mod residual;
mod siegel;
mod theorems;
mod trace;
mod trajectory;

pub use idempotent::near_idempotent_search;
pub use residual::{residual_certificate, ResidualCertificate};
pub use siegel::{hypothesis_holds, siegel_combination, siegel_search, verify_combination};
pub use theorems::{check_bg_el, check_boca_new, check_polbd, n0, CheckConfig, TheoremId, TheoremReport, Verdict};
pub use trace::{convex_hull_bound_check, trace_bound, ConvexHullReport};
pub use trajectory::{trajectory_return_search, ReturnCandidate, TrajectoryConfig, TrajectoryResult, WorkingNorm};

//! Exact calculus over log-Laurent expressions `Σ c·z^k·(log z)^m` in one
//! variable and Laurent expressions `Σ c·z^k·ζ^m` in two variables.

mod bivariate;
mod branch;
mod log_laurent;
mod wire;

pub use bivariate::BivariateLaurentExpr;
pub use branch::{BranchCut, DEFAULT_CUT_MARGIN};
pub use log_laurent::{LogLaurentExpr, LogLaurentTerm};
pub use wire::{BivariateTermRecord, TermRecord};

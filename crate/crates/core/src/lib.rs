//! Exact truncated Laurent series over the integers, eta-quotient
//! expansion, dissection operators, and bounded verification of
//! q-series identities and partition congruences.
//!
//! ```
//! use qid::eta::{eta_quotient, EtaQuotient};
//!
//! let cp3 = eta_quotient(&EtaQuotient::from_factors([(3, 6), (6, 6), (1, -2), (2, -2)]), 6);
//! let coeffs: Vec<i64> = cp3.coeffs().iter().map(|c| c.try_into().unwrap()).collect();
//! assert_eq!(coeffs, [1, 2, 7, 8, 23, 24]);
//! ```

pub mod congruence;
pub mod cubic_cf;
pub mod dissection;
pub mod dsl;
pub mod eta;
pub mod report;
pub mod series;

pub use congruence::{CongruenceClaim, Progression};
pub use dissection::{extract, huff, reassemble};
pub use dsl::{eval, parse, parse_expr, run, ClaimFile, Env, RunConfig, SeriesExpr};
pub use eta::{eta_quotient, euler_factor, EtaQuotient};
pub use report::{ClaimReport, Report, Status};
pub use series::{Agreement, LaurentSeries, Mismatch, SeriesError};

//! The claim-file language: a small grammar for eta-quotient expressions,
//! series definitions, identities and congruences.
//!
//! ```text
//! # comments run to end of line
//! series T = f3^6*f6^6/(f1^2*f2^2)
//! identity "odd part": extract(T, 2, 1) == 2*f2^2*f3^8*f6^2/f1^4
//! congruence "8n+3": T[8*n+3] == 0 mod 8
//! internal "parity": T[3*n+1] == T[1*n-1] mod 2
//! ```

pub mod ast;
pub mod eval;
pub mod parser;
pub mod run;

pub use ast::{ClaimFile, Monomial, SeriesExpr, Statement};
pub use eval::{eval, Env, EvalError, CUBIC_CF_NAME};
pub use parser::{parse, parse_expr, ParseError, ParseErrorKind};
pub use run::{run, RunConfig};

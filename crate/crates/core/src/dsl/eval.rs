use std::collections::HashMap;

use thiserror::Error;

use super::ast::{ClaimFile, Monomial, SeriesExpr, Statement};
use crate::congruence::{self, SeriesCache};
use crate::cubic_cf::cubic_cf_series;
use crate::dissection::{extract, huff};
use crate::eta::{eta_quotient, euler_factor};
use crate::series::{LaurentSeries, SeriesError};

/// Built-in name for the normalized cubic continued fraction `x(q)`.
pub const CUBIC_CF_NAME: &str = "XCF";

/// Retries allowed when a subexpression loses more precision than expected.
const MAX_ATTEMPTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown series name `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("could not reach order {requested}; best attempt reached {reached}")]
    PrecisionLoss { requested: i64, reached: i64 },
}

/// True for catalog names and [`CUBIC_CF_NAME`].
pub fn is_builtin_name(name: &str) -> bool {
    name == CUBIC_CF_NAME || congruence::lookup(name).is_some()
}

/// Name resolution for evaluation: file definitions shadow built-ins.
/// Expansions are memoized at the highest order requested so far.
#[derive(Debug, Default)]
pub struct Env {
    defs: HashMap<String, SeriesExpr>,
    cache: SeriesCache,
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    /// An environment holding every `series` definition of `file`.
    pub fn from_file(file: &ClaimFile) -> Self {
        let mut env = Self::new();
        for s in &file.statements {
            if let Statement::Series { name, expr } = s {
                env.define(name.clone(), expr.clone());
            }
        }
        env
    }

    pub fn define(&mut self, name: impl Into<String>, expr: SeriesExpr) {
        self.defs.insert(name.into(), expr);
    }

    /// The named series, trusted exactly to `order`.
    pub fn resolve(&self, name: &str, order: i64) -> Result<LaurentSeries, EvalError> {
        if let Some(s) = self.cache.get(name, order) {
            return Ok(s);
        }
        let s = if let Some(expr) = self.defs.get(name) {
            eval(expr, order, self)?
        } else if name == CUBIC_CF_NAME {
            cubic_cf_series(order).x
        } else if let Some(entry) = congruence::lookup(name) {
            eta_quotient(&entry.spec, order)
        } else {
            return Err(EvalError::UnknownName(name.to_string()));
        };
        self.cache.insert(name, s.clone());
        Ok(s)
    }
}

/// Evaluates `expr` so that the result is trusted exactly below `order`.
///
/// Subexpressions are first evaluated at `order`; if precision is lost on
/// the way up (negative q-powers, extraction, cancelling leading terms)
/// the whole tree is re-evaluated at a higher working order.
pub fn eval(expr: &SeriesExpr, order: i64, env: &Env) -> Result<LaurentSeries, EvalError> {
    let mut working = order;
    let mut reached = i64::MIN;
    for _ in 0..MAX_ATTEMPTS {
        let s = eval_at(expr, working, env)?;
        if s.order() >= order {
            return Ok(s.truncate(order));
        }
        reached = s.order();
        working += order - s.order();
    }
    Err(EvalError::PrecisionLoss {
        requested: order,
        reached,
    })
}

fn eval_monomial(m: &Monomial, working: i64) -> LaurentSeries {
    eta_quotient(&m.eta, working - m.qpow)
        .scale(&m.coeff)
        .shift(m.qpow)
}

fn eval_at(expr: &SeriesExpr, working: i64, env: &Env) -> Result<LaurentSeries, EvalError> {
    use SeriesExpr::*;
    if matches!(expr, Mul(..) | Div(..) | Pow(..) | Neg(_)) {
        if let Some(m) = expr.as_monomial() {
            return Ok(eval_monomial(&m, working));
        }
    }
    Ok(match expr {
        Eta(m) => euler_factor(*m, working),
        QPower(j) => LaurentSeries::monomial(1.into(), *j, working.max(j + 1)),
        Int(c) => LaurentSeries::constant(c.clone(), working),
        Name(n) => env.resolve(n, working)?,
        Neg(a) => eval_at(a, working, env)?.neg(),
        Add(a, b) => eval_at(a, working, env)?.add(&eval_at(b, working, env)?),
        Sub(a, b) => eval_at(a, working, env)?.sub(&eval_at(b, working, env)?),
        Mul(a, b) => eval_at(a, working, env)?.mul(&eval_at(b, working, env)?),
        Div(a, b) => eval_at(a, working, env)?.div(&eval_at(b, working, env)?)?,
        Pow(a, e) => eval_at(a, working, env)?.pow(*e)?,
        Extract {
            expr,
            step,
            residue,
        } => {
            let inner = eval_at(expr, working * *step as i64 + *residue as i64, env)?;
            extract(&inner, *step, *residue as i64)?
        }
        Huff { expr, step } => huff(&eval_at(expr, working, env)?, *step),
        Subst { expr, step } => {
            let k = *step as i64;
            let inner = eval_at(expr, (working + k - 1).div_euclid(k), env)?;
            inner.substitute_qk(*step)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parser::{parse, parse_expr};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn ev(text: &str, order: i64) -> LaurentSeries {
        eval(&parse_expr(text).unwrap(), order, &Env::new()).unwrap()
    }

    fn ints(s: &LaurentSeries) -> Vec<i64> {
        (0..s.order())
            .map(|e| i64::try_from(s.coeff(e)).unwrap())
            .collect()
    }

    #[test]
    fn constants_and_q_powers() {
        assert_eq!(ev("q^0", 7), LaurentSeries::one(7));
        assert_eq!(ev("q^2 - q^2", 7), LaurentSeries::zero(7));
        let s = ev("q^-1 + 3", 4);
        assert_eq!(s.valuation(), -1);
        assert_eq!(s.order(), 4);
    }

    #[test]
    fn cp3_quotient() {
        assert_eq!(
            ints(&ev("f3^6*f6^6/(f1^2*f2^2)", 6)),
            vec![1, 2, 7, 8, 23, 24]
        );
        assert_eq!(ev("CP3", 6), ev("f3^6*f6^6/(f1^2*f2^2)", 6));
    }

    #[test]
    fn odd_extraction_vanishes_against_quotient() {
        let s = ev("extract(CP3,2,1) - 2*f2^2*f3^8*f6^2/f1^4", 200);
        assert!(s.is_zero());
        assert_eq!(s.order(), 200);
    }

    #[test]
    fn laurent_products_reach_requested_order() {
        // q^-3 costs three coefficients; the retry loop must make them up
        let s = ev("q^-3*f3^4*f6^4/(f9^4*f18^4) - (q^-3 - 4 + 2*q^3)", 12);
        assert_eq!(s.order(), 12);
        assert!(s.valuation() >= 0);
        let s = ev("1/(q^-1*f1*f2/(f9*f18))", 10);
        assert_eq!(s.valuation(), 1);
        assert_eq!(s.order(), 10);
    }

    #[test]
    fn general_products_and_powers() {
        let s = ev("(f1 + f2)^2 - f1^2 - 2*f1*f2 - f2^2", 60);
        assert!(s.is_zero());
        let s = ev("subst(P, 2)*f2", 40);
        assert_eq!(s, LaurentSeries::one(40));
        let s = ev("huff(q^-1*f1, 3)", 30);
        assert_eq!(s.valuation() % 3, 0);
    }

    #[test]
    fn cubic_cf_builtin() {
        assert_eq!(ints(&ev("XCF", 4)), vec![1, -1, 0, 2]);
    }

    #[test]
    fn file_definitions_and_shadowing() {
        let file = parse("series CP3 = f1\nseries T = CP3^2").unwrap();
        let env = Env::from_file(&file);
        let t = eval(&SeriesExpr::name("T"), 30, &env).unwrap();
        assert_eq!(t, euler_factor(1, 30).pow(2).unwrap());
        assert_eq!(
            eval(&SeriesExpr::name("NOPE"), 3, &env),
            Err(EvalError::UnknownName("NOPE".into()))
        );
    }

    #[test]
    fn non_unit_division_is_an_error() {
        let r = eval(&parse_expr("f1/(2*f2)").unwrap(), 10, &Env::new());
        assert_eq!(
            r,
            Err(EvalError::Series(SeriesError::LeadingCoefficientNotUnit {
                coeff: BigInt::from(2)
            }))
        );
    }

    proptest! {
        #[test]
        fn evaluation_is_order_monotone(
            text in prop::sample::select(vec![
                "f3^6*f6^6/(f1^2*f2^2)",
                "extract(CP3, 3, 1) - 27*q*CP3",
                "q^-1*f1*f2/(f9*f18) + huff(P, 2)",
                "subst(f1^3 - 2*q, 3)/f2",
                "(f1 + q*f4)^-2",
            ]),
            big in 20i64..90,
            small in 1i64..20,
        ) {
            let e = parse_expr(text).unwrap();
            let env = Env::new();
            let hi = eval(&e, big, &env).unwrap();
            let lo = eval(&e, small, &env).unwrap();
            prop_assert_eq!(hi.truncate(small), lo);
        }
    }
}

//! Arithmetic-progression extraction, the huffing projection, and identity
//! verification.
//!
//! `extract(s, k, r)` relabels: it returns `sum_n a(kn + r) q^n`.
//! `huff(s, k)` does not: it keeps `a(kn) q^(kn)` in place and zeroes the rest.
//! The two are related by `huff(s, k) == substitute_qk(extract(s, k, 0), k)`
//! on power series.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::dsl::ast::SeriesExpr;
use crate::dsl::eval::{eval, Env};
use crate::report::ClaimReport;
use crate::series::{LaurentSeries, SeriesError};

/// The progression `a(kn + r)` of a power series, not yet materialized.
#[derive(Debug, Clone, Copy)]
pub struct DissectionSlice<'a> {
    source: &'a LaurentSeries,
    step: u64,
    residue: u64,
}

impl<'a> DissectionSlice<'a> {
    pub fn new(source: &'a LaurentSeries, step: u64, residue: i64) -> Result<Self, SeriesError> {
        if step == 0 || residue < 0 || residue >= step as i64 {
            return Err(SeriesError::ResidueOutOfRange { step, residue });
        }
        if source.valuation() < 0 {
            return Err(SeriesError::NegativeValuation {
                valuation: source.valuation(),
            });
        }
        Ok(DissectionSlice {
            source,
            step,
            residue: residue as u64,
        })
    }

    /// Order of the materialized slice: the number of `n` with `kn + r < order`.
    pub fn order(&self) -> i64 {
        let (k, r) = (self.step as i64, self.residue as i64);
        (self.source.order() - r + k - 1).div_euclid(k).max(0)
    }

    pub fn materialize(&self) -> LaurentSeries {
        let (k, r) = (self.step as i64, self.residue as i64);
        let coeffs = (0..self.order())
            .map(|n| self.source.coeff(k * n + r).clone())
            .collect();
        LaurentSeries::from_coeffs(0, coeffs)
    }
}

/// `sum_n a(kn + r) q^n` for a power series `s`.
pub fn extract(s: &LaurentSeries, k: u64, r: i64) -> Result<LaurentSeries, SeriesError> {
    Ok(DissectionSlice::new(s, k, r)?.materialize())
}

/// Keeps the terms whose exponent is divisible by `k`, on the original grid.
/// Negative exponents take part, so Laurent inputs are fine.
pub fn huff(s: &LaurentSeries, k: u64) -> LaurentSeries {
    assert!(k >= 1, "huffing step must be positive");
    let k = k as i64;
    let coeffs = s
        .terms()
        .map(|(e, c)| {
            if e.rem_euclid(k) == 0 {
                c.clone()
            } else {
                BigInt::zero()
            }
        })
        .collect();
    if s.is_zero() {
        return s.clone();
    }
    LaurentSeries::from_coeffs(s.valuation(), coeffs)
}

/// `sum_{r<k} q^r * substitute_qk(slices[r], k)`, the inverse of extraction.
pub fn reassemble(slices: &[LaurentSeries]) -> LaurentSeries {
    let k = slices.len() as u64;
    assert!(k >= 1, "need at least one slice");
    let mut acc: Option<LaurentSeries> = None;
    for (r, slice) in slices.iter().enumerate() {
        let term = slice.substitute_qk(k).shift(r as i64);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.expect("nonempty")
}

/// Evaluates both sides to `order` and compares every coefficient below it.
/// Evaluation failures are reported as claim errors.
pub fn verify_identity(
    label: &str,
    lhs: &SeriesExpr,
    rhs: &SeriesExpr,
    order: i64,
    env: &Env,
) -> ClaimReport {
    let start = Instant::now();
    let sides = eval(lhs, order, env).and_then(|l| Ok((l, eval(rhs, order, env)?)));
    let report = match sides {
        Ok((l, r)) => ClaimReport::compare_series(label, &l, &r, order),
        Err(e) => ClaimReport::error(label, crate::report::ClaimKind::Identity, order, e),
    };
    report.with_elapsed(start.elapsed())
}

//! Euler factors `f_m = (q^m; q^m)_inf` and eta-quotients `prod f_m^e`.
//!
//! [`euler_factor`] uses the pentagonal number theorem, so each factor is a
//! sparse series with `O(sqrt(order / m))` nonzero terms. [`eta_quotient`]
//! multiplies and divides by those sparse factors one at a time, which keeps
//! every step at `O(order * sqrt(order))` coefficient operations.
//! [`naive_euler_oracle`] expands the literal product instead and exists to
//! cross-check the fast path.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::series::LaurentSeries;

/// A finite product `prod f_m^e`, kept with merged scales and no zero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EtaQuotient {
    factors: BTreeMap<u64, i64>,
}

impl EtaQuotient {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a quotient from `(scale, exponent)` pairs; repeated scales add up.
    ///
    /// Panics on a zero scale.
    pub fn from_factors<I: IntoIterator<Item = (u64, i64)>>(factors: I) -> Self {
        let mut q = Self::new();
        for (m, e) in factors {
            q.push(m, e);
        }
        q
    }

    pub fn push(&mut self, scale: u64, exponent: i64) {
        assert!(scale >= 1, "eta factor scale must be positive");
        let e = self.factors.entry(scale).or_insert(0);
        *e += exponent;
        if *e == 0 {
            self.factors.remove(&scale);
        }
    }

    /// `(scale, exponent)` pairs in increasing scale.
    pub fn factors(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.factors.iter().map(|(&m, &e)| (m, e))
    }

    pub fn exponent(&self, scale: u64) -> i64 {
        self.factors.get(&scale).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, e) in other.factors() {
            out.push(m, e);
        }
        out
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::from_factors(self.factors().map(|(m, e)| (m, e * k)))
    }

    /// The series `f(q^k)`: every scale multiplied by `k`.
    pub fn dilate(&self, k: u64) -> Self {
        Self::from_factors(self.factors().map(|(m, e)| (m * k, e)))
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn product(f: &mut fmt::Formatter<'_>, parts: &[(u64, i64)]) -> fmt::Result {
            for (i, (m, e)) in parts.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                match e.abs() {
                    1 => write!(f, "f{m}")?,
                    a => write!(f, "f{m}^{a}")?,
                }
            }
            Ok(())
        }
        let num: Vec<_> = self.factors().filter(|&(_, e)| e > 0).collect();
        let den: Vec<_> = self.factors().filter(|&(_, e)| e < 0).collect();
        if num.is_empty() {
            write!(f, "1")?;
        } else {
            product(f, &num)?;
        }
        match den.len() {
            0 => Ok(()),
            1 => {
                write!(f, "/")?;
                product(f, &den)
            }
            _ => {
                write!(f, "/(")?;
                product(f, &den)?;
                write!(f, ")")
            }
        }
    }
}

/// Expansion of `(q^m; q^m)_inf` below `order` via the pentagonal number
/// theorem: `sum_k (-1)^k q^(m k (3k-1)/2)` over all integers `k`.
pub fn euler_factor(m: u64, order: i64) -> LaurentSeries {
    assert!(m >= 1, "eta factor scale must be positive");
    if order <= 0 {
        return LaurentSeries::zero(order);
    }
    let m = m as i64;
    let mut coeffs = vec![BigInt::zero(); order as usize];
    coeffs[0] = BigInt::from(1);
    for k in 1i64.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let lo = m * k * (3 * k - 1) / 2;
        if lo >= order {
            break;
        }
        coeffs[lo as usize] = BigInt::from(sign);
        let hi = m * k * (3 * k + 1) / 2;
        if hi < order {
            coeffs[hi as usize] = BigInt::from(sign);
        }
    }
    LaurentSeries::from_coeffs(0, coeffs)
}

/// The literal product `prod_{n=1}^{ceil(order/m)} (1 - q^(mn))`, one factor
/// at a time, with no pentagonal shortcut.
pub fn naive_euler_oracle(m: u64, order: i64) -> LaurentSeries {
    assert!(m >= 1, "eta factor scale must be positive");
    if order <= 0 {
        return LaurentSeries::zero(order);
    }
    let len = order as usize;
    let m = m as usize;
    let mut poly = vec![BigInt::zero(); len];
    poly[0] = BigInt::from(1);
    for n in 1..=len.div_ceil(m) {
        let shift = m * n;
        for j in (shift..len).rev() {
            let (lo, hi) = poly.split_at_mut(j);
            hi[0] -= &lo[j - shift];
        }
    }
    LaurentSeries::from_coeffs(0, poly)
}

/// Expansion of an eta-quotient below `order`. Every factor has constant term
/// 1, so no working precision beyond `order` is needed.
pub fn eta_quotient(spec: &EtaQuotient, order: i64) -> LaurentSeries {
    if order <= 0 {
        return LaurentSeries::zero(order);
    }
    let mut acc = LaurentSeries::one(order);
    for (m, e) in spec.factors().filter(|&(_, e)| e > 0) {
        let f = euler_factor(m, order);
        for _ in 0..e {
            acc = acc.mul(&f);
        }
    }
    for (m, e) in spec.factors().filter(|&(_, e)| e < 0) {
        let f = euler_factor(m, order);
        for _ in 0..-e {
            acc = acc.div(&f).expect("euler factors have unit constant term");
        }
    }
    acc
}

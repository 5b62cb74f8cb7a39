//! Truncated Laurent series over arbitrary-precision integers.
//!
//! A [`LaurentSeries`] stores the coefficients of `q^valuation ..
//! q^(order-1)`. Every coefficient below `order` is exact; nothing at or
//! above `order` is known. Arithmetic never claims more precision than its
//! operands justify: each result carries the tightest sound order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors raised by series arithmetic and coefficient extraction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series is zero on its tracked range (order {order})")]
    ZeroSeries { order: i64 },
    #[error("leading coefficient {coeff} is not a unit over the integers")]
    LeadingCoefficientNotUnit { coeff: BigInt },
    #[error("requested {requested} coefficients but only {available} are trusted")]
    InsufficientOrder { requested: i64, available: i64 },
    #[error("residue {residue} is out of range for step {step}")]
    ResidueOutOfRange { step: u64, residue: i64 },
    #[error("coefficient extraction needs a power series, got valuation {valuation}")]
    NegativeValuation { valuation: i64 },
}

/// First exponent at which two series disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: i64,
    pub left: BigInt,
    pub right: BigInt,
}

/// Result of [`LaurentSeries::equal_up_to`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Agreement {
    Equal,
    Differs(Mismatch),
}

impl Agreement {
    pub fn is_equal(&self) -> bool {
        matches!(self, Agreement::Equal)
    }

    pub fn mismatch(&self) -> Option<&Mismatch> {
        match self {
            Agreement::Equal => None,
            Agreement::Differs(m) => Some(m),
        }
    }
}

static ZERO: BigInt = BigInt::ZERO;

/// A Laurent series `sum_{e >= valuation} c_e q^e` known exactly for `e < order`.
///
/// Invariants: `valuation + coeffs.len() == order`; `coeffs[0] != 0` unless the
/// series is zero, in which case `coeffs` is empty and `valuation == order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    valuation: i64,
    coeffs: Vec<BigInt>,
    order: i64,
}

impl LaurentSeries {
    /// The zero series, trusted below `order`.
    pub fn zero(order: i64) -> Self {
        LaurentSeries {
            valuation: order,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(BigInt::one(), 0, order)
    }

    pub fn constant(c: impl Into<BigInt>, order: i64) -> Self {
        Self::monomial(c.into(), 0, order)
    }

    /// `c * q^exponent`, trusted below `order`.
    pub fn monomial(c: BigInt, exponent: i64, order: i64) -> Self {
        if c.is_zero() || exponent >= order {
            return Self::zero(order);
        }
        let mut coeffs = vec![BigInt::zero(); (order - exponent) as usize];
        coeffs[0] = c;
        LaurentSeries {
            valuation: exponent,
            coeffs,
            order,
        }
    }

    /// Builds a series whose first coefficient belongs to `q^start`; the
    /// order is `start + coeffs.len()`. Leading zeros are stripped.
    pub fn from_coeffs(start: i64, coeffs: Vec<BigInt>) -> Self {
        let order = start + coeffs.len() as i64;
        let mut s = LaurentSeries {
            valuation: start,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn from_i64s(start: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(start, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i64;
        }
        debug_assert_eq!(self.valuation + self.coeffs.len() as i64, self.order);
    }

    /// Lowest exponent with a nonzero coefficient (equals `order` for zero).
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Exclusive bound on the trusted exponents.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficients of `q^valuation .. q^(order-1)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^exponent`, or `None` when `exponent >= order`.
    pub fn get(&self, exponent: i64) -> Option<&BigInt> {
        if exponent >= self.order {
            None
        } else if exponent < self.valuation {
            Some(&ZERO)
        } else {
            Some(&self.coeffs[(exponent - self.valuation) as usize])
        }
    }

    /// Coefficient of `q^exponent`.
    ///
    /// Panics if `exponent` is not below the trusted order.
    pub fn coeff(&self, exponent: i64) -> &BigInt {
        self.get(exponent).unwrap_or_else(|| {
            panic!(
                "coefficient of q^{exponent} requested beyond trusted order {}",
                self.order
            )
        })
    }

    /// Iterates `(exponent, coefficient)` over the stored range, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    /// Number of nonzero stored coefficients.
    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Forgets everything at or above `order`. A larger `order` is clamped.
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        if order <= self.valuation {
            return Self::zero(order);
        }
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs[..(order - self.valuation) as usize].to_vec(),
            order,
        }
    }

    /// Multiplies by `q^j`.
    pub fn shift(&self, j: i64) -> Self {
        LaurentSeries {
            valuation: self.valuation + j,
            coeffs: self.coeffs.clone(),
            order: self.order + j,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            order: self.order,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let order = self.order.min(other.order);
        let start = self.valuation.min(other.valuation).min(order);
        let mut coeffs = vec![BigInt::zero(); (order - start) as usize];
        for (e, c) in self.terms().take_while(|&(e, _)| e < order) {
            coeffs[(e - start) as usize] += c;
        }
        for (e, c) in other.terms().take_while(|&(e, _)| e < order) {
            if negate_other {
                coeffs[(e - start) as usize] -= c;
            } else {
                coeffs[(e - start) as usize] += c;
            }
        }
        Self::from_coeffs(start, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }

    /// Cauchy product. The result is trusted below
    /// `min(self.order + other.valuation, other.order + self.valuation)`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.valuation).min(other.order + self.valuation);
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let valuation = self.valuation + other.valuation;
        if order <= valuation {
            return Self::zero(order);
        }
        let len = (order - valuation) as usize;
        // iterate the sparser operand in the outer loop; zero terms cost nothing
        let (outer, inner) = if self.nonzero_count() <= other.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = vec![BigInt::zero(); len];
        for (i, a) in outer.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            let span = (len - i).min(inner.coeffs.len());
            for (j, b) in inner.coeffs[..span].iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(valuation, acc)
    }

    fn unit_lead(&self) -> Result<(), SeriesError> {
        match self.coeffs.first() {
            None => Err(SeriesError::ZeroSeries { order: self.order }),
            Some(c) if c.abs().is_one() => Ok(()),
            Some(c) => Err(SeriesError::LeadingCoefficientNotUnit { coeff: c.clone() }),
        }
    }

    /// Multiplicative inverse; requires a leading coefficient of `+1` or `-1`.
    ///
    /// The inverse of `q^v u` is trusted below `order - 2v`.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let one = Self::one(self.order - self.valuation);
        one.div(self)
    }

    /// Exact quotient `self / divisor`, computed by forward substitution
    /// over the nonzero coefficients of `divisor`.
    pub fn div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        divisor.unit_lead()?;
        let dv = divisor.valuation;
        let len_d = divisor.coeffs.len() as i64;
        let len_n = self.order - self.valuation;
        let len = len_d.min(len_n);
        let valuation = self.valuation - dv;
        if len <= 0 || self.is_zero() {
            return Ok(Self::zero(valuation + len.max(0)));
        }
        let len = len as usize;
        let negate = divisor.coeffs[0].is_negative();
        let tail: Vec<(usize, &BigInt)> = divisor.coeffs[1..len.min(divisor.coeffs.len())]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i + 1, c))
            .collect();
        let mut out: Vec<BigInt> = Vec::with_capacity(len);
        for n in 0..len {
            // self.valuation is the start of self.coeffs, so index n is direct
            let mut x = self.coeffs[n].clone();
            for &(i, c) in &tail {
                if i > n {
                    break;
                }
                x -= c * &out[n - i];
            }
            if negate {
                x = -x;
            }
            out.push(x);
        }
        Ok(Self::from_coeffs(valuation, out))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        if e < 0 {
            return self.invert()?.pow(-e);
        }
        if e == 0 {
            if self.is_zero() {
                return Err(SeriesError::ZeroSeries { order: self.order });
            }
            return Ok(Self::one(self.order - self.valuation));
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut k = e as u64;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base);
        }
        Ok(acc.expect("positive exponent"))
    }

    /// The series `s(q^k)`; exponents between multiples of `k` are known zeros.
    pub fn substitute_qk(&self, k: u64) -> Self {
        assert!(k >= 1, "substitution step must be positive");
        if k == 1 {
            return self.clone();
        }
        let k = k as i64;
        let order = self.order * k;
        if self.is_zero() {
            return Self::zero(order);
        }
        let valuation = self.valuation * k;
        let mut coeffs = vec![BigInt::zero(); (order - valuation) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        LaurentSeries {
            valuation,
            coeffs,
            order,
        }
    }

    /// Compares every coefficient of exponent `< n`.
    pub fn equal_up_to(&self, other: &Self, n: i64) -> Result<Agreement, SeriesError> {
        let available = self.order.min(other.order);
        if n > available {
            return Err(SeriesError::InsufficientOrder {
                requested: n,
                available,
            });
        }
        let start = self.valuation.min(other.valuation);
        for e in start..n {
            let (l, r) = (self.coeff(e), other.coeff(e));
            if l != r {
                return Ok(Agreement::Differs(Mismatch {
                    exponent: e,
                    left: l.clone(),
                    right: r.clone(),
                }));
            }
        }
        Ok(Agreement::Equal)
    }

    /// Replaces each coefficient by its least nonnegative residue mod `m`.
    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        assert!(*m >= BigInt::from(2), "modulus must be at least 2");
        let coeffs = self.coeffs.iter().map(|c| c.mod_floor(m)).collect();
        let mut s = LaurentSeries {
            valuation: self.valuation,
            coeffs,
            order: self.order,
        };
        s.normalize();
        s
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({self})")
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match e {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() && e == 1 => write!(f, "q")?,
                _ if mag.is_one() => write!(f, "q^{e}")?,
                1 => write!(f, "{mag}*q")?,
                _ => write!(f, "{mag}*q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&LaurentSeries> for &LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: &LaurentSeries) -> LaurentSeries {
                LaurentSeries::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries::neg(self)
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::congruence::Progression;
use crate::eta::EtaQuotient;

/// Expression tree over eta factors, q-powers and integer constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SeriesExpr {
    /// `f<m>`
    Eta(u64),
    /// `q^j`
    QPower(i64),
    Int(BigInt),
    /// A `series` definition from the same file or a built-in name.
    Name(String),
    Neg(Box<SeriesExpr>),
    Add(Box<SeriesExpr>, Box<SeriesExpr>),
    Sub(Box<SeriesExpr>, Box<SeriesExpr>),
    Mul(Box<SeriesExpr>, Box<SeriesExpr>),
    Div(Box<SeriesExpr>, Box<SeriesExpr>),
    Pow(Box<SeriesExpr>, i64),
    Extract {
        expr: Box<SeriesExpr>,
        step: u64,
        residue: u64,
    },
    Huff {
        expr: Box<SeriesExpr>,
        step: u64,
    },
    Subst {
        expr: Box<SeriesExpr>,
        step: u64,
    },
}

/// `coeff * q^qpow * prod f_m^e`: what a product of atoms collapses to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: BigInt,
    pub qpow: i64,
    pub eta: EtaQuotient,
}

impl Monomial {
    fn one() -> Self {
        Monomial {
            coeff: BigInt::one(),
            qpow: 0,
            eta: EtaQuotient::new(),
        }
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            coeff: self.coeff * other.coeff,
            qpow: self.qpow + other.qpow,
            eta: self.eta.mul(&other.eta),
        }
    }

    /// `None` unless the coefficient is a unit, since the result must stay integral.
    fn power(self, e: i64) -> Option<Monomial> {
        if e < 0 && !self.coeff.abs().is_one() {
            return None;
        }
        // a unit coefficient is its own inverse
        Some(Monomial {
            coeff: num_traits::pow(self.coeff, e.unsigned_abs() as usize),
            qpow: self.qpow * e,
            eta: self.eta.pow(e),
        })
    }
}

impl SeriesExpr {
    pub fn eta(m: u64) -> Self {
        SeriesExpr::Eta(m)
    }

    pub fn q(j: i64) -> Self {
        SeriesExpr::QPower(j)
    }

    pub fn int(c: impl Into<BigInt>) -> Self {
        SeriesExpr::Int(c.into())
    }

    pub fn name(n: impl Into<String>) -> Self {
        SeriesExpr::Name(n.into())
    }

    pub fn pow(self, e: i64) -> Self {
        SeriesExpr::Pow(Box::new(self), e)
    }

    pub fn extract(self, step: u64, residue: u64) -> Self {
        SeriesExpr::Extract {
            expr: Box::new(self),
            step,
            residue,
        }
    }

    pub fn huff(self, step: u64) -> Self {
        SeriesExpr::Huff {
            expr: Box::new(self),
            step,
        }
    }

    pub fn subst(self, step: u64) -> Self {
        SeriesExpr::Subst {
            expr: Box::new(self),
            step,
        }
    }

    /// An eta-quotient as a product of powered factors.
    pub fn from_eta_quotient(spec: &EtaQuotient) -> Self {
        spec.factors()
            .map(|(m, e)| match e {
                1 => SeriesExpr::Eta(m),
                _ => SeriesExpr::Eta(m).pow(e),
            })
            .reduce(|a, b| a * b)
            .unwrap_or_else(|| SeriesExpr::int(1))
    }

    /// Collapses a product/quotient/power of eta factors, q-powers and
    /// integers into a single monomial, if the tree is one.
    pub fn as_monomial(&self) -> Option<Monomial> {
        match self {
            SeriesExpr::Eta(m) => Some(Monomial {
                eta: EtaQuotient::from_factors([(*m, 1)]),
                ..Monomial::one()
            }),
            SeriesExpr::QPower(j) => Some(Monomial {
                qpow: *j,
                ..Monomial::one()
            }),
            SeriesExpr::Int(c) if !c.is_zero() => Some(Monomial {
                coeff: c.clone(),
                ..Monomial::one()
            }),
            SeriesExpr::Neg(a) => {
                let mut m = a.as_monomial()?;
                m.coeff = -m.coeff;
                Some(m)
            }
            SeriesExpr::Mul(a, b) => Some(a.as_monomial()?.times(b.as_monomial()?)),
            SeriesExpr::Div(a, b) => Some(a.as_monomial()?.times(b.as_monomial()?.power(-1)?)),
            SeriesExpr::Pow(a, e) => a.as_monomial()?.power(*e),
            _ => None,
        }
    }

    /// Names referenced anywhere in the tree.
    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            SeriesExpr::Name(n) => out.push(n),
            SeriesExpr::Eta(_) | SeriesExpr::QPower(_) | SeriesExpr::Int(_) => {}
            SeriesExpr::Neg(a) | SeriesExpr::Pow(a, _) => a.collect_names(out),
            SeriesExpr::Add(a, b)
            | SeriesExpr::Sub(a, b)
            | SeriesExpr::Mul(a, b)
            | SeriesExpr::Div(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            SeriesExpr::Extract { expr, .. }
            | SeriesExpr::Huff { expr, .. }
            | SeriesExpr::Subst { expr, .. } => expr.collect_names(out),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            SeriesExpr::Add(..) | SeriesExpr::Sub(..) | SeriesExpr::Neg(_) => 1,
            SeriesExpr::Mul(..) | SeriesExpr::Div(..) => 2,
            SeriesExpr::Pow(..) => 3,
            _ => 4,
        }
    }
}

macro_rules! expr_binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl std::ops::$trait for SeriesExpr {
            type Output = SeriesExpr;
            fn $method(self, rhs: SeriesExpr) -> SeriesExpr {
                SeriesExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

expr_binop!(Add, add, Add);
expr_binop!(Sub, sub, Sub);
expr_binop!(Mul, mul, Mul);
expr_binop!(Div, div, Div);

impl std::ops::Neg for SeriesExpr {
    type Output = SeriesExpr;
    fn neg(self) -> SeriesExpr {
        SeriesExpr::Neg(Box::new(self))
    }
}

struct Wrapped<'a>(&'a SeriesExpr, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for SeriesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesExpr::Eta(m) => write!(f, "f{m}"),
            SeriesExpr::QPower(1) => write!(f, "q"),
            SeriesExpr::QPower(j) => write!(f, "q^{j}"),
            SeriesExpr::Int(c) if c.is_negative() => write!(f, "(-{})", c.abs()),
            SeriesExpr::Int(c) => write!(f, "{c}"),
            SeriesExpr::Name(n) => write!(f, "{n}"),
            SeriesExpr::Neg(a) => write!(f, "-{}", Wrapped(a, a.precedence() <= 1)),
            SeriesExpr::Add(a, b) => write!(f, "{} + {}", a, Wrapped(b, b.precedence() <= 1)),
            SeriesExpr::Sub(a, b) => write!(f, "{} - {}", a, Wrapped(b, b.precedence() <= 1)),
            SeriesExpr::Mul(a, b) => write!(
                f,
                "{}*{}",
                Wrapped(a, a.precedence() <= 1),
                Wrapped(b, b.precedence() <= 2)
            ),
            SeriesExpr::Div(a, b) => write!(
                f,
                "{}/{}",
                Wrapped(a, a.precedence() <= 1),
                Wrapped(b, b.precedence() <= 2)
            ),
            SeriesExpr::Pow(a, e) => {
                let bare = a.precedence() == 4 && !matches!(**a, SeriesExpr::QPower(_));
                write!(f, "{}^{e}", Wrapped(a, !bare))
            }
            SeriesExpr::Extract {
                expr,
                step,
                residue,
            } => write!(f, "extract({expr}, {step}, {residue})"),
            SeriesExpr::Huff { expr, step } => write!(f, "huff({expr}, {step})"),
            SeriesExpr::Subst { expr, step } => write!(f, "subst({expr}, {step})"),
        }
    }
}

/// One line of a claim file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Series {
        name: String,
        expr: SeriesExpr,
    },
    Identity {
        label: String,
        lhs: SeriesExpr,
        rhs: SeriesExpr,
    },
    Congruence {
        label: String,
        series: String,
        progression: Progression,
        modulus: u64,
    },
    Internal {
        label: String,
        series: String,
        left: Progression,
        right: Progression,
        modulus: u64,
    },
}

impl Statement {
    pub fn label(&self) -> Option<&str> {
        match self {
            Statement::Series { .. } => None,
            Statement::Identity { label, .. }
            | Statement::Congruence { label, .. }
            | Statement::Internal { label, .. } => Some(label),
        }
    }
}

fn quoted(label: &str) -> String {
    let mut s = String::with_capacity(label.len() + 2);
    s.push('"');
    for ch in label.chars() {
        if ch == '"' || ch == '\\' {
            s.push('\\');
        }
        s.push(ch);
    }
    s.push('"');
    s
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Series { name, expr } => write!(f, "series {name} = {expr}"),
            Statement::Identity { label, lhs, rhs } => {
                write!(f, "identity {}: {lhs} == {rhs}", quoted(label))
            }
            Statement::Congruence {
                label,
                series,
                progression,
                modulus,
            } => write!(
                f,
                "congruence {}: {series}[{progression}] == 0 mod {modulus}",
                quoted(label)
            ),
            Statement::Internal {
                label,
                series,
                left,
                right,
                modulus,
            } => write!(
                f,
                "internal {}: {series}[{left}] == {series}[{right}] mod {modulus}",
                quoted(label)
            ),
        }
    }
}

/// A parsed claim file; comments are not retained.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClaimFile {
    pub statements: Vec<Statement>,
}

impl ClaimFile {
    /// Renders the file back to claim-file text.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.statements {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

//! Built-in series catalog and bounded verification of congruences.
//!
//! Everything here checks finitely many coefficients: a passing claim means
//! "true for every index below the order", nothing more. To guard against
//! vacuous passes each claim must test at least [`MIN_WITNESSES`] indices.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::dsl::ast::SeriesExpr;
use crate::dsl::eval::{eval, Env, EvalError};
use crate::eta::{eta_quotient, EtaQuotient};
use crate::report::{ClaimKind, ClaimReport, Witness};
use crate::series::{LaurentSeries, SeriesError};

/// Minimum number of tested indices for a congruence claim.
pub const MIN_WITNESSES: u64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("unknown series `{0}`")]
    UnknownSeries(String),
    #[error(
        "only {testable} indices are testable below the order; at least {required} are needed"
    )]
    InsufficientOrder { testable: u64, required: u64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCatalogEntry {
    pub name: String,
    pub spec: EtaQuotient,
    pub description: String,
}

impl SeriesCatalogEntry {
    fn new(name: &str, factors: &[(u64, i64)], description: &str) -> Self {
        SeriesCatalogEntry {
            name: name.to_string(),
            spec: EtaQuotient::from_factors(factors.iter().copied()),
            description: description.to_string(),
        }
    }
}

/// The fixed catalog entries. `CORE<t>` names are also resolved by [`lookup`]
/// for every `t >= 1`; `CORE3` is listed as the representative.
pub fn catalog() -> Vec<SeriesCatalogEntry> {
    vec![
        SeriesCatalogEntry::new("P", &[(1, -1)], "partitions p(n) = 1/f1"),
        SeriesCatalogEntry::new(
            "A_CUBIC",
            &[(1, -1), (2, -1)],
            "cubic partitions a(n) = 1/(f1*f2)",
        ),
        SeriesCatalogEntry::new(
            "CORE3",
            &[(3, 3), (1, -1)],
            "3-core partitions c_3(n) = f3^3/f1",
        ),
        SeriesCatalogEntry::new(
            "C3",
            &[(3, 3), (6, 3), (1, -1), (2, -1)],
            "3-core cubic partitions = f3^3*f6^3/(f1*f2)",
        ),
        SeriesCatalogEntry::new(
            "CP3",
            &[(3, 6), (6, 6), (1, -2), (2, -2)],
            "3-core cubic bipartitions = f3^6*f6^6/(f1^2*f2^2)",
        ),
        SeriesCatalogEntry::new(
            "DQ",
            &[(1, 2), (2, 2), (3, 2), (6, 2)],
            "d(n) = (f1*f2*f3*f6)^2",
        ),
    ]
}

/// Looks up a catalog name, including the `CORE<t>` family (`f_t^t / f1`).
pub fn lookup(name: &str) -> Option<SeriesCatalogEntry> {
    if let Some(e) = catalog().into_iter().find(|e| e.name == name) {
        return Some(e);
    }
    let t: u64 = name
        .strip_prefix("CORE")?
        .parse()
        .ok()
        .filter(|&t| t >= 1)?;
    let t_exp = i64::try_from(t).ok()?;
    Some(SeriesCatalogEntry {
        name: name.to_string(),
        spec: EtaQuotient::from_factors([(t, t_exp), (1, -1)]),
        description: format!("{t}-core partitions c_{t}(n) = f{t}^{t}/f1"),
    })
}

pub fn builtin_series(name: &str, order: i64) -> Result<LaurentSeries, CongruenceError> {
    let entry = lookup(name).ok_or_else(|| CongruenceError::UnknownSeries(name.to_string()))?;
    Ok(eta_quotient(&entry.spec, order))
}

/// Read-mostly memo of named expansions, keyed by name and kept at the
/// highest order seen. Safe for concurrent lookup; inserting a lower-order
/// copy of an existing entry is a no-op.
#[derive(Debug, Default)]
pub struct SeriesCache {
    entries: RwLock<HashMap<String, LaurentSeries>>,
}

impl SeriesCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str, order: i64) -> Option<LaurentSeries> {
        let map = self.entries.read().expect("series cache poisoned");
        map.get(name)
            .filter(|s| s.order() >= order)
            .map(|s| s.truncate(order))
    }

    pub fn insert(&self, name: &str, series: LaurentSeries) {
        let mut map = self.entries.write().expect("series cache poisoned");
        match map.get(name) {
            Some(old) if old.order() >= series.order() => {}
            _ => {
                map.insert(name.to_string(), series);
            }
        }
    }
}

/// The index progression `step * n + offset`, `n = 0, 1, 2, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Progression {
    pub step: u64,
    pub offset: i64,
}

impl Progression {
    pub fn new(step: u64, offset: i64) -> Self {
        assert!(step >= 1, "progression step must be positive");
        Progression { step, offset }
    }

    pub fn index(&self, n: u64) -> i64 {
        self.step as i64 * n as i64 + self.offset
    }

    /// Number of `n >= 0` with `index(n) < order`.
    pub fn count_below(&self, order: i64) -> u64 {
        let span = order - self.offset;
        if span <= 0 {
            0
        } else {
            ((span + self.step as i64 - 1) / self.step as i64) as u64
        }
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset < 0 {
            write!(f, "{}*n-{}", self.step, -self.offset)
        } else {
            write!(f, "{}*n+{}", self.step, self.offset)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CongruenceKind {
    /// `a(An+B) == 0 (mod M)`
    Vanishing,
    /// `a(An+B) == a(Cn+D) (mod M)`, with `a(i) = 0` for `i < 0`.
    Internal(Progression),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceClaim {
    pub label: String,
    pub series: SeriesExpr,
    pub progression: Progression,
    pub modulus: u64,
    pub kind: CongruenceKind,
}

impl CongruenceClaim {
    pub fn vanishing(
        label: impl Into<String>,
        series: SeriesExpr,
        step: u64,
        offset: i64,
        modulus: u64,
    ) -> Self {
        CongruenceClaim {
            label: label.into(),
            series,
            progression: Progression::new(step, offset),
            modulus,
            kind: CongruenceKind::Vanishing,
        }
    }

    pub fn internal(
        label: impl Into<String>,
        series: SeriesExpr,
        left: Progression,
        right: Progression,
        modulus: u64,
    ) -> Self {
        CongruenceClaim {
            label: label.into(),
            series,
            progression: left,
            modulus,
            kind: CongruenceKind::Internal(right),
        }
    }

    fn report_kind(&self) -> ClaimKind {
        match self.kind {
            CongruenceKind::Vanishing => ClaimKind::Congruence,
            CongruenceKind::Internal(_) => ClaimKind::Internal,
        }
    }
}

/// Outcome of a bounded index-by-index check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub checked: u64,
    pub witness: Option<Witness>,
}

impl Check {
    fn into_report(self, label: &str, kind: ClaimKind, order: i64) -> ClaimReport {
        match self.witness {
            None => ClaimReport::pass(label, kind, order, self.checked),
            Some(w) => ClaimReport::fail(label, kind, order, self.checked, w),
        }
    }
}

/// Coefficient `a(i)` of a power series, with `a(i) = 0` for negative `i`.
fn coefficient(series: &LaurentSeries, index: i64) -> BigInt {
    if index < 0 {
        BigInt::zero()
    } else {
        series.coeff(index).clone()
    }
}

fn require_power_series(series: &LaurentSeries) -> Result<(), SeriesError> {
    if series.valuation() < 0 {
        return Err(SeriesError::NegativeValuation {
            valuation: series.valuation(),
        });
    }
    Ok(())
}

fn require_witnesses(testable: u64, required: u64) -> Result<(), CongruenceError> {
    if testable < required {
        return Err(CongruenceError::InsufficientOrder { testable, required });
    }
    Ok(())
}

/// Checks `a(An+B) == 0 (mod M)` for every `n` with `An+B < order`.
pub fn check_vanishing(
    series: &LaurentSeries,
    progression: Progression,
    modulus: &BigInt,
    min_witnesses: u64,
) -> Result<Check, CongruenceError> {
    require_power_series(series)?;
    let testable = progression.count_below(series.order());
    require_witnesses(testable, min_witnesses)?;
    for n in 0..testable {
        let value = coefficient(series, progression.index(n));
        if !value.is_multiple_of(modulus) {
            return Ok(Check {
                checked: n,
                witness: Some(Witness {
                    index: n as i64,
                    lhs: value,
                    rhs: BigInt::zero(),
                }),
            });
        }
    }
    Ok(Check {
        checked: testable,
        witness: None,
    })
}

/// Checks `a(An+B) == a(Cn+D) (mod M)` on the range where both indices are known.
pub fn check_internal(
    series: &LaurentSeries,
    left: Progression,
    right: Progression,
    modulus: &BigInt,
    min_witnesses: u64,
) -> Result<Check, CongruenceError> {
    require_power_series(series)?;
    let testable = left
        .count_below(series.order())
        .min(right.count_below(series.order()));
    require_witnesses(testable, min_witnesses)?;
    for n in 0..testable {
        let l = coefficient(series, left.index(n));
        let r = coefficient(series, right.index(n));
        if !(&l - &r).is_multiple_of(modulus) {
            return Ok(Check {
                checked: n,
                witness: Some(Witness {
                    index: n as i64,
                    lhs: l,
                    rhs: r,
                }),
            });
        }
    }
    Ok(Check {
        checked: testable,
        witness: None,
    })
}

/// Checks a claim against an already expanded series.
pub fn check_claim(
    claim: &CongruenceClaim,
    series: &LaurentSeries,
    min_witnesses: u64,
) -> Result<Check, CongruenceError> {
    let m = BigInt::from(claim.modulus);
    match &claim.kind {
        CongruenceKind::Vanishing => check_vanishing(series, claim.progression, &m, min_witnesses),
        CongruenceKind::Internal(right) => {
            check_internal(series, claim.progression, *right, &m, min_witnesses)
        }
    }
}

/// Expands the claim's series to `order` and checks every testable index.
/// Handles both vanishing and internal claims; failures to evaluate or too
/// small an order come back as error reports.
pub fn verify_congruence(claim: &CongruenceClaim, order: i64, env: &Env) -> ClaimReport {
    let start = Instant::now();
    let kind = claim.report_kind();
    let outcome = eval(&claim.series, order, env)
        .map_err(CongruenceError::from)
        .and_then(|s| check_claim(claim, &s, MIN_WITNESSES));
    let report = match outcome {
        Ok(check) => check.into_report(&claim.label, kind, order),
        Err(e) => ClaimReport::error(&claim.label, kind, order, e),
    };
    report.with_elapsed(start.elapsed())
}

/// Internal congruences share the vanishing path; kept for symmetry with the
/// claim-file keywords.
pub fn verify_internal(claim: &CongruenceClaim, order: i64, env: &Env) -> ClaimReport {
    verify_congruence(claim, order, env)
}

/// A congruence with a known proof, used to tell the scanner's
/// rediscoveries apart from merely observed patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownCongruence {
    pub series: &'static str,
    pub step: u64,
    pub offset: i64,
    pub modulus: u64,
}

pub const KNOWN_CONGRUENCES: &[KnownCongruence] = &[
    KnownCongruence {
        series: "P",
        step: 5,
        offset: 4,
        modulus: 5,
    },
    KnownCongruence {
        series: "P",
        step: 7,
        offset: 5,
        modulus: 7,
    },
    KnownCongruence {
        series: "P",
        step: 11,
        offset: 6,
        modulus: 11,
    },
    KnownCongruence {
        series: "CP3",
        step: 8,
        offset: 3,
        modulus: 8,
    },
    KnownCongruence {
        series: "CP3",
        step: 8,
        offset: 7,
        modulus: 16,
    },
    KnownCongruence {
        series: "CP3",
        step: 24,
        offset: 7,
        modulus: 16,
    },
    KnownCongruence {
        series: "CP3",
        step: 24,
        offset: 13,
        modulus: 4,
    },
    KnownCongruence {
        series: "CP3",
        step: 24,
        offset: 19,
        modulus: 8,
    },
    KnownCongruence {
        series: "CP3",
        step: 24,
        offset: 15,
        modulus: 16,
    },
    KnownCongruence {
        series: "CP3",
        step: 24,
        offset: 21,
        modulus: 16,
    },
    KnownCongruence {
        series: "CP3",
        step: 24,
        offset: 11,
        modulus: 48,
    },
    KnownCongruence {
        series: "CP3",
        step: 24,
        offset: 23,
        modulus: 96,
    },
];

impl KnownCongruence {
    pub fn claim(&self) -> CongruenceClaim {
        CongruenceClaim::vanishing(
            format!(
                "{}({}n+{}) = 0 mod {}",
                self.series, self.step, self.offset, self.modulus
            ),
            SeriesExpr::name(self.series),
            self.step,
            self.offset,
            self.modulus,
        )
    }
}

// ---------------------------------------------------------------------------
// The CP3(3^k n + 3^k - 2) family

/// `(alpha_k, beta_k)` with `CP3(3^k n + 3^k - 2) = alpha_k d(n) + beta_k CP3(n-1)`,
/// from the closed form `alpha_k = 3^(k-1) (9^k - (-1)^k) / 5`, `beta_k = 27^k`.
pub fn closed_form_coefficients(k: u32) -> (BigInt, BigInt) {
    assert!(k >= 1, "family index starts at 1");
    let three = BigInt::from(3);
    let sign = if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let numerator = Pow::pow(&BigInt::from(9), k) - sign;
    let (quot, rem) = numerator.div_rem(&BigInt::from(5));
    assert!(rem.is_zero(), "9^k - (-1)^k is divisible by 5");
    (Pow::pow(&three, k - 1) * quot, Pow::pow(&three, 3 * k))
}

/// The same coefficients obtained by iterating `CP3(3n+1) = 2d(n) + 27CP3(n-1)`
/// and `d(3n+2) = -3d(n)`: `alpha_{k+1} = 2 beta_k - 3 alpha_k`,
/// `beta_{k+1} = 27 beta_k`.
pub fn recursion_coefficients(k: u32) -> (BigInt, BigInt) {
    assert!(k >= 1, "family index starts at 1");
    let (mut alpha, mut beta) = (BigInt::from(2), BigInt::from(27));
    for _ in 1..k {
        alpha = BigInt::from(2) * &beta - BigInt::from(3) * &alpha;
        beta *= 27;
    }
    (alpha, beta)
}

/// Checks `lhs(n) == rhs(n)` for `n < count`.
fn check_relation<L, R>(count: u64, lhs: L, rhs: R) -> Check
where
    L: Fn(u64) -> BigInt,
    R: Fn(u64) -> BigInt,
{
    for n in 0..count {
        let (l, r) = (lhs(n), rhs(n));
        if l != r {
            return Check {
                checked: n,
                witness: Some(Witness {
                    index: n as i64,
                    lhs: l,
                    rhs: r,
                }),
            };
        }
    }
    Check {
        checked: count,
        witness: None,
    }
}

fn relation_report(
    label: String,
    order: i64,
    count: u64,
    check: impl FnOnce() -> Check,
) -> ClaimReport {
    let start = Instant::now();
    let report = if count < MIN_WITNESSES {
        ClaimReport::error(
            label,
            ClaimKind::Relation,
            order,
            CongruenceError::InsufficientOrder {
                testable: count,
                required: MIN_WITNESSES,
            },
        )
    } else {
        check().into_report(&label, ClaimKind::Relation, order)
    };
    report.with_elapsed(start.elapsed())
}

fn power_of_three(k: u32) -> i64 {
    3i64.pow(k)
}

/// Verifies the recursions behind the `CP3(2*3^k n + 3^k - 2) == 0 (mod 2*3^(k-1))`
/// family, and the family itself for `k = 1..=kmax`, on every index below `order`.
pub fn verify_power_of_three_family(kmax: u32, order: i64) -> Vec<ClaimReport> {
    let cp3 = builtin_series("CP3", order).expect("catalog entry");
    let dq = builtin_series("DQ", order).expect("catalog entry");
    let cp = |i: i64| coefficient(&cp3, i);
    let d = |i: i64| coefficient(&dq, i);
    let upto = |p: Progression| p.count_below(order);
    let mut out = Vec::new();

    let p31 = Progression::new(3, 1);
    out.push(relation_report(
        "CP3(3n+1) = 2d(n) + 27CP3(n-1)".into(),
        order,
        upto(p31),
        || {
            check_relation(
                upto(p31),
                |n| cp(p31.index(n)),
                |n| 2 * d(n as i64) + 27 * cp(n as i64 - 1),
            )
        },
    ));

    let p32 = Progression::new(3, 2);
    out.push(relation_report(
        "d(3n+2) = -3d(n)".into(),
        order,
        upto(p32),
        || check_relation(upto(p32), |n| d(p32.index(n)), |n| -3 * d(n as i64)),
    ));

    let p97 = Progression::new(9, 7);
    out.push(relation_report(
        "CP3(9n+7) = 48d(n) + 729CP3(n-1)".into(),
        order,
        upto(p97),
        || {
            check_relation(
                upto(p97),
                |n| cp(p97.index(n)),
                |n| 48 * d(n as i64) + 729 * cp(n as i64 - 1),
            )
        },
    ));

    for k in 1..=kmax {
        let pk = power_of_three(k);
        let (alpha, beta) = closed_form_coefficients(k);

        let agree = recursion_coefficients(k) == (alpha.clone(), beta.clone());
        out.push(if agree {
            ClaimReport::pass(
                format!("k={k}: closed-form coefficients match the recursion"),
                ClaimKind::Relation,
                order,
                1,
            )
        } else {
            let (ra, _) = recursion_coefficients(k);
            ClaimReport::fail(
                format!("k={k}: closed-form coefficients match the recursion"),
                ClaimKind::Relation,
                order,
                0,
                Witness {
                    index: k as i64,
                    lhs: alpha.clone(),
                    rhs: ra,
                },
            )
        });

        let pf = Progression::new(pk as u64, pk - 2);
        out.push(relation_report(
            format!(
                "k={k}: CP3({pk}n+{}) = {alpha}d(n) + {beta}CP3(n-1)",
                pk - 2
            ),
            order,
            upto(pf),
            || {
                check_relation(
                    upto(pf),
                    |n| cp(pf.index(n)),
                    |n| &alpha * d(n as i64) + &beta * cp(n as i64 - 1),
                )
            },
        ));

        let m3 = 3u64.pow(k - 1);
        if m3 >= 2 {
            let claim = CongruenceClaim::vanishing(
                format!("k={k}: CP3({pk}n+{}) = 0 mod {m3}", pk - 2),
                SeriesExpr::name("CP3"),
                pk as u64,
                pk - 2,
                m3,
            );
            out.push(congruence_report(&claim, &cp3, order));
        }

        let claim = CongruenceClaim::vanishing(
            format!("k={k}: CP3({}n+{}) = 0 mod {}", 2 * pk, pk - 2, 2 * m3),
            SeriesExpr::name("CP3"),
            2 * pk as u64,
            pk - 2,
            2 * m3,
        );
        out.push(congruence_report(&claim, &cp3, order));
    }
    out
}

/// Verifies `CP3(3^k n + 3^k - 2) == CP3(n-1) (mod 2)` for `k = 1..=kmax`.
pub fn verify_parity_family(kmax: u32, order: i64) -> Vec<ClaimReport> {
    let cp3 = builtin_series("CP3", order).expect("catalog entry");
    (1..=kmax)
        .map(|k| {
            let pk = power_of_three(k);
            let claim = CongruenceClaim::internal(
                format!("k={k}: CP3({pk}n+{}) = CP3(n-1) mod 2", pk - 2),
                SeriesExpr::name("CP3"),
                Progression::new(pk as u64, pk - 2),
                Progression::new(1, -1),
                2,
            );
            congruence_report(&claim, &cp3, order)
        })
        .collect()
}

fn congruence_report(claim: &CongruenceClaim, series: &LaurentSeries, order: i64) -> ClaimReport {
    let start = Instant::now();
    let kind = claim.report_kind();
    let report = match check_claim(claim, series, MIN_WITNESSES) {
        Ok(check) => check.into_report(&claim.label, kind, order),
        Err(e) => ClaimReport::error(&claim.label, kind, order, e),
    };
    report.with_elapsed(start.elapsed())
}

// ---------------------------------------------------------------------------
// Scanner

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Matches an entry of [`KNOWN_CONGRUENCES`].
    Known,
    /// Holds for every tested index, with no proof on record.
    VerifiedToOrderOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanHit {
    pub step: u64,
    pub offset: u64,
    pub modulus: u64,
    pub checked: u64,
    pub provenance: Provenance,
}

impl fmt::Display for ScanHit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.provenance {
            Provenance::Known => "known",
            Provenance::VerifiedToOrderOnly => "verified to order only",
        };
        write!(
            f,
            "a({}n+{}) = 0 mod {} [{} indices; {tag}]",
            self.step, self.offset, self.modulus, self.checked
        )
    }
}

/// Minimum witnesses per scanned candidate, enforced via `order >= 20 * max_step`.
pub const SCAN_WITNESSES: i64 = 20;

/// Finds every `(A, B, M)` with `A <= max_step`, `0 <= B < A`, `M` in
/// `moduli`, such that `a(An+B) == 0 (mod M)` below the series order.
///
/// For each `(A, B)` only the moduli not dividing another verified modulus
/// are reported. Results are sorted by `(A, B, M)` and marked
/// [`Provenance::VerifiedToOrderOnly`].
pub fn scan_series(
    series: &LaurentSeries,
    max_step: u64,
    moduli: &[u64],
) -> Result<Vec<ScanHit>, CongruenceError> {
    require_power_series(series)?;
    let order = series.order();
    if order < SCAN_WITNESSES * max_step as i64 {
        return Err(CongruenceError::InsufficientOrder {
            testable: (order / max_step.max(1) as i64).max(0) as u64,
            required: SCAN_WITNESSES as u64,
        });
    }
    let mut moduli: Vec<u64> = moduli.iter().copied().filter(|&m| m >= 2).collect();
    moduli.sort_unstable();
    moduli.dedup();
    let big: Vec<BigInt> = moduli.iter().map(|&m| BigInt::from(m)).collect();
    let mut hits = Vec::new();
    for step in 1..=max_step {
        for offset in 0..step {
            let p = Progression::new(step, offset as i64);
            let count = p.count_below(order);
            let values: Vec<&BigInt> = (0..count).map(|n| series.coeff(p.index(n))).collect();
            let verified: Vec<u64> = moduli
                .iter()
                .zip(&big)
                .filter(|(_, m)| values.iter().all(|v| v.is_multiple_of(m)))
                .map(|(&m, _)| m)
                .collect();
            for &m in &verified {
                let subsumed = verified.iter().any(|&other| other != m && other % m == 0);
                if !subsumed {
                    hits.push(ScanHit {
                        step,
                        offset,
                        modulus: m,
                        checked: count,
                        provenance: Provenance::VerifiedToOrderOnly,
                    });
                }
            }
        }
    }
    Ok(hits)
}

/// Scans an expression; when it names a catalog series, hits matching
/// [`KNOWN_CONGRUENCES`] are marked [`Provenance::Known`].
pub fn scan_congruences(
    series: &SeriesExpr,
    max_step: u64,
    moduli: &[u64],
    order: i64,
    env: &Env,
) -> Result<Vec<ScanHit>, CongruenceError> {
    if order < SCAN_WITNESSES * max_step as i64 {
        return Err(CongruenceError::InsufficientOrder {
            testable: (order / max_step.max(1) as i64).max(0) as u64,
            required: SCAN_WITNESSES as u64,
        });
    }
    let expanded = eval(series, order, env)?;
    let mut hits = scan_series(&expanded, max_step, moduli)?;
    if let SeriesExpr::Name(name) = series {
        for hit in &mut hits {
            let known = KNOWN_CONGRUENCES.iter().any(|k| {
                k.series == name
                    && k.step == hit.step
                    && k.offset == hit.offset as i64
                    && k.modulus == hit.modulus
            });
            if known {
                hit.provenance = Provenance::Known;
            }
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn ints(s: &LaurentSeries) -> Vec<i64> {
        (0..s.order())
            .map(|e| i64::try_from(s.coeff(e)).unwrap())
            .collect()
    }

    #[test]
    fn catalog_expansions() {
        assert_eq!(
            ints(&builtin_series("CP3", 6).unwrap()),
            vec![1, 2, 7, 8, 23, 24]
        );
        assert_eq!(ints(&builtin_series("DQ", 3).unwrap()), vec![1, -2, -3]);
        assert_eq!(builtin_series("P", 10).unwrap().coeff(9), &BigInt::from(30));
        assert_eq!(
            builtin_series("NOPE", 5),
            Err(CongruenceError::UnknownSeries("NOPE".into()))
        );
        assert_eq!(
            lookup("CORE5").unwrap().spec,
            EtaQuotient::from_factors([(5, 5), (1, -1)])
        );
        assert_eq!(
            lookup("CORE3").unwrap().spec,
            EtaQuotient::from_factors([(3, 3), (1, -1)])
        );
        assert!(lookup("CORE0").is_none());
        assert!(lookup("COREx").is_none());
        for name in ["P", "A_CUBIC", "CORE3", "C3", "CP3", "DQ"] {
            assert!(lookup(name).is_some(), "{name}");
        }
    }

    #[test]
    fn cache_keeps_highest_order() {
        let cache = SeriesCache::new();
        cache.insert("P", builtin_series("P", 30).unwrap());
        cache.insert("P", builtin_series("P", 10).unwrap());
        assert_eq!(
            cache.get("P", 20).unwrap(),
            builtin_series("P", 20).unwrap()
        );
        assert!(cache.get("P", 31).is_none());
        assert!(cache.get("Q", 1).is_none());
    }

    #[test]
    fn progression_counts() {
        let p = Progression::new(24, 23);
        assert_eq!(p.count_below(2000), 83);
        assert_eq!(Progression::new(3, 1).count_below(1), 0);
        assert_eq!(Progression::new(1, -1).count_below(5), 6);
        assert_eq!(p.to_string(), "24*n+23");
        assert_eq!(Progression::new(1, -1).to_string(), "1*n-1");
    }

    #[test]
    fn ramanujan_congruence() {
        let env = Env::new();
        let claim = CongruenceClaim::vanishing("p5", SeriesExpr::name("P"), 5, 4, 5);
        let r = verify_congruence(&claim, 500, &env);
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.checked, 100);
    }

    #[test]
    fn too_few_witnesses() {
        let env = Env::new();
        let claim = CongruenceClaim::vanishing("p5", SeriesExpr::name("P"), 5, 4, 5);
        let r = verify_congruence(&claim, 45, &env);
        assert_eq!(r.status, Status::Error);
        let s = builtin_series("P", 45).unwrap();
        assert_eq!(
            check_vanishing(&s, Progression::new(5, 4), &5.into(), 10),
            Err(CongruenceError::InsufficientOrder {
                testable: 9,
                required: 10
            })
        );
    }

    #[test]
    fn stronger_modulus_fails_with_witness() {
        let s = builtin_series("CP3", 2000).unwrap();
        let c = check_vanishing(&s, Progression::new(24, 13), &8.into(), 10).unwrap();
        let w = c.witness.unwrap();
        assert_eq!(w.index, 0);
        assert_eq!(c.checked, 0);
        assert_eq!(&w.lhs, s.coeff(13));
        assert!(!w.lhs.is_multiple_of(&BigInt::from(8)));
        assert!(w.lhs.is_multiple_of(&BigInt::from(4)));
    }

    #[test]
    fn internal_uses_zero_below_index_zero() {
        let s = builtin_series("CP3", 200).unwrap();
        let c = check_internal(
            &s,
            Progression::new(3, 1),
            Progression::new(1, -1),
            &2.into(),
            10,
        )
        .unwrap();
        assert!(c.witness.is_none());
        // at n = 0 the claim reads CP3(1) = 2 against CP3(-1) = 0
        assert_eq!(coefficient(&s, 1), BigInt::from(2));
        assert_eq!(coefficient(&s, -1), BigInt::zero());
        let c = check_internal(
            &s,
            Progression::new(3, 1),
            Progression::new(1, -1),
            &4.into(),
            10,
        )
        .unwrap();
        assert_eq!(c.witness.unwrap().index, 0);
    }

    #[test]
    fn closed_form_and_recursion_agree() {
        for k in 1..=10 {
            assert_eq!(
                closed_form_coefficients(k),
                recursion_coefficients(k),
                "k={k}"
            );
        }
        assert_eq!(
            closed_form_coefficients(1),
            (BigInt::from(2), BigInt::from(27))
        );
        assert_eq!(
            closed_form_coefficients(2),
            (BigInt::from(48), BigInt::from(729))
        );
        assert_eq!(closed_form_coefficients(3).0, BigInt::from(1314));
    }

    #[test]
    fn family_small_order() {
        let reports = verify_power_of_three_family(2, 300);
        for r in &reports {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
        // k=1 has no mod-3^0 claim: 3 shared relations + (2 + 1) + (2 + 2)
        assert_eq!(reports.len(), 10);
        let parity = verify_parity_family(3, 500);
        assert!(parity.iter().all(ClaimReport::passed));
    }

    #[test]
    fn scanner_collapses_divisor_moduli() {
        let p = builtin_series("P", 500).unwrap();
        let hits = scan_series(&p, 5, &[5]).unwrap();
        assert!(hits
            .iter()
            .any(|h| (h.step, h.offset, h.modulus) == (5, 4, 5)));
        let s = builtin_series("CP3", 400).unwrap();
        let hits = scan_series(&s, 8, &[2, 4, 8, 16]).unwrap();
        let at = |a, b| {
            hits.iter()
                .filter(|h| h.step == a && h.offset == b)
                .map(|h| h.modulus)
                .collect::<Vec<_>>()
        };
        assert_eq!(at(8, 3), vec![8]);
        assert_eq!(at(8, 7), vec![16]);
        let sorted = hits.windows(2).all(|w| {
            (w[0].step, w[0].offset, w[0].modulus) < (w[1].step, w[1].offset, w[1].modulus)
        });
        assert!(sorted);
        assert!(matches!(
            scan_series(&s, 24, &[2]),
            Err(CongruenceError::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn scanner_marks_known_results() {
        let env = Env::new();
        let hits = scan_congruences(&SeriesExpr::name("P"), 11, &[5, 7, 11], 500, &env).unwrap();
        let known: Vec<_> = hits
            .iter()
            .filter(|h| h.provenance == Provenance::Known)
            .map(|h| (h.step, h.offset, h.modulus))
            .collect();
        assert_eq!(
            known,
            vec![(5, 4, 5), (7, 5, 7), (10, 9, 5), (11, 6, 11)]
                .into_iter()
                .filter(|t| *t != (10, 9, 5))
                .collect::<Vec<_>>()
        );
        // 10n+9 is a subprogression of 5n+4 and is not itself on record
        assert!(hits
            .iter()
            .any(|h| (h.step, h.offset, h.modulus) == (10, 9, 5)
                && h.provenance == Provenance::VerifiedToOrderOnly));
    }
}

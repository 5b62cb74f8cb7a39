//! The cubic continued fraction as a formal power series, and the series
//! identities built on it.
//!
//! `c(q) = q^(1/3) / (1 + (q+q^2)/(1 + (q^2+q^4)/(1 + ...)))`. The fractional
//! power never appears here: everything works with `x(q) = q^(-1/3) c(q)`,
//! an ordinary power series with constant term 1.
//!
//! With `a = q^-1 f1 f2/(f9 f18)`, `b = q^-1 / x(q^3)` and
//! `c = q^-3 f3^4 f6^4/(f9^4 f18^4)` the module checks
//! `a = b - 1 - 2/b`, `c = b^3 - 7 - 8/b^3`, `c = a^3 + 3a^2 + 9a`, and the
//! images of powers of `a` under the 3-huffing projection `H3`.

use std::time::Instant;

use num_bigint::BigInt;
use thiserror::Error;

use crate::dissection::{extract, huff};
use crate::eta::{eta_quotient, EtaQuotient};
use crate::report::{ClaimKind, ClaimReport};
use crate::series::{Agreement, LaurentSeries};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicCf {
    pub x: LaurentSeries,
    pub depth: i64,
}

/// `x(q)` to `order`, truncating the fraction at depth `order + 2`.
pub fn cubic_cf_series(order: i64) -> CubicCf {
    cubic_cf_at_depth(order, order + 2)
}

/// `x(q)` from the fraction cut off after `depth` levels.
///
/// Level `j` has numerator `q^j + q^(2j)`, so the tail below level `j` is
/// only needed to `j` fewer coefficients than level `j` itself. Levels whose
/// required order drops to zero are exactly 1 as far as the result can see.
pub fn cubic_cf_at_depth(order: i64, depth: i64) -> CubicCf {
    assert!(order >= 1, "order must be positive");
    assert!(depth >= 1, "depth must be positive");
    // needed[j] = order to which level j must be known
    let mut needed = vec![0i64; depth as usize + 2];
    needed[1] = order;
    for j in 1..=depth as usize {
        needed[j + 1] = needed[j] - j as i64;
    }
    let mut tail: Option<LaurentSeries> = None;
    for j in (1..=depth).rev() {
        let need = needed[j as usize];
        if need <= 0 {
            continue;
        }
        if need <= j {
            // q^j already lies beyond what this level must know
            tail = Some(LaurentSeries::one(need));
            continue;
        }
        let inner = match &tail {
            Some(t) => t
                .truncate(need - j)
                .invert()
                .expect("levels have constant term 1"),
            None => LaurentSeries::one(need - j),
        };
        let numerator = LaurentSeries::monomial(BigInt::from(1), j, need)
            .add(&LaurentSeries::monomial(BigInt::from(1), 2 * j, need));
        let level = LaurentSeries::one(need).add(&numerator.mul(&inner).truncate(need));
        tail = Some(level.truncate(need));
    }
    let top = tail.expect("level 1 is always evaluated");
    CubicCf {
        x: top.invert().expect("constant term 1"),
        depth,
    }
}

/// Compares depth `order + 2` against `order + 5`.
pub fn verify_depth_stability(order: i64) -> ClaimReport {
    let start = Instant::now();
    let base = cubic_cf_series(order);
    let deeper = cubic_cf_at_depth(order, base.depth + 3);
    ClaimReport::compare_series(
        format!(
            "x(q) depth {} agrees with depth {}",
            base.depth, deeper.depth
        ),
        &base.x,
        &deeper.x,
        order,
    )
    .with_kind(ClaimKind::Relation)
    .with_elapsed(start.elapsed())
}

fn quotient(factors: &[(u64, i64)], order: i64) -> LaurentSeries {
    eta_quotient(&EtaQuotient::from_factors(factors.iter().copied()), order)
}

fn int(c: i64) -> BigInt {
    BigInt::from(c)
}

/// `x(q^3)` to `order`.
fn x_cubed_argument(order: i64) -> LaurentSeries {
    let inner = (order + 2).div_euclid(3).max(1);
    cubic_cf_series(inner).x.substitute_qk(3).truncate(order)
}

fn identity(
    label: &str,
    lhs: &LaurentSeries,
    rhs: &LaurentSeries,
    order: i64,
    start: Instant,
) -> ClaimReport {
    ClaimReport::compare_series(label, lhs, rhs, order).with_elapsed(start.elapsed())
}

/// The two expansions of `f1 f2/(f9 f18)` and `f3^4 f6^4/(f9^4 f18^4)` in
/// terms of `x(q^3)`.
pub fn verify_x_identities(order: i64) -> Vec<ClaimReport> {
    let pad = order + 8;
    let x3 = x_cubed_argument(pad);
    let inv_x3 = x3.invert().expect("constant term 1");

    let start = Instant::now();
    let lhs = quotient(&[(1, 1), (2, 1), (9, -1), (18, -1)], order);
    let rhs = inv_x3
        .sub(&LaurentSeries::monomial(int(1), 1, pad))
        .sub(&x3.shift(2).scale(&int(2)));
    let first = identity(
        "f1*f2/(f9*f18) = 1/x(q^3) - q - 2q^2 x(q^3)",
        &lhs,
        &rhs,
        order,
        start,
    );

    let start = Instant::now();
    let lhs = quotient(&[(3, 4), (6, 4), (9, -4), (18, -4)], order);
    let x3_cubed = x3.pow(3).expect("power series");
    let rhs = inv_x3
        .pow(3)
        .expect("unit")
        .sub(&LaurentSeries::monomial(int(7), 3, pad))
        .sub(&x3_cubed.shift(6).scale(&int(8)));
    let second = identity(
        "f3^4*f6^4/(f9^4*f18^4) = 1/x(q^3)^3 - 7q^3 - 8q^6 x(q^3)^3",
        &lhs,
        &rhs,
        order,
        start,
    );
    vec![first, second]
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicCfError {
    #[error("relation `{relation}` breaks at exponent {exponent}")]
    RelationBroken { relation: String, exponent: i64 },
}

/// The Laurent series `a`, `b`, `c`, each trusted below `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicTriple {
    pub a: LaurentSeries,
    pub b: LaurentSeries,
    pub c: LaurentSeries,
    pub order: i64,
}

/// Extra coefficients carried so that fourth powers and cubes of the
/// valuation `-1` series stay exact to the requested order.
const PAD: i64 = 12;

fn relations(t: &CubicTriple) -> Vec<(&'static str, LaurentSeries, LaurentSeries)> {
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let inv_b = b.invert().expect("leading coefficient 1");
    let b3 = b.pow(3).expect("unit");
    let inv_b3 = inv_b.pow(3).expect("unit");
    let a2 = a.pow(2).expect("unit");
    let a3 = a.pow(3).expect("unit");
    let a4 = a.pow(4).expect("unit");
    let one = LaurentSeries::one(t.order);

    let a_via_b = b.sub(&one).sub(&inv_b.scale(&int(2)));
    let c_via_b = b3
        .sub(&LaurentSeries::constant(7, t.order))
        .sub(&inv_b3.scale(&int(8)));
    let cubic = a3.add(&a2.scale(&int(3))).add(&a.scale(&int(9)));
    let inv_a2 = a2.invert().expect("unit");
    let quartic = a4
        .add(&a3.scale(&int(6)))
        .add(&a2.scale(&int(27)))
        .add(&a.scale(&int(54)))
        .add(&LaurentSeries::constant(81, t.order));
    let inv_a2_via_c = quartic.div(&c.pow(2).expect("unit")).expect("unit");
    vec![
        ("a = b - 1 - 2/b", a.clone(), a_via_b),
        ("c = b^3 - 7 - 8/b^3", c.clone(), c_via_b),
        ("c = a^3 + 3a^2 + 9a", c.clone(), cubic),
        (
            "1/a^2 = (a^4 + 6a^3 + 27a^2 + 54a + 81)/c^2",
            inv_a2,
            inv_a2_via_c,
        ),
    ]
}

fn raw_triple(order: i64) -> CubicTriple {
    let a = quotient(&[(1, 1), (2, 1), (9, -1), (18, -1)], order + 1).shift(-1);
    let x3 = x_cubed_argument(order + 1);
    let b = x3.invert().expect("constant term 1").shift(-1);
    let c = quotient(&[(3, 4), (6, 4), (9, -4), (18, -4)], order + 3).shift(-3);
    CubicTriple { a, b, c, order }
}

/// Builds `a`, `b`, `c` to `order` and checks the four algebraic relations
/// between them; a broken relation means a bug upstream.
pub fn build_cubic_triple(order: i64) -> Result<CubicTriple, CubicCfError> {
    assert!(order >= 1, "order must be positive");
    let padded = raw_triple(order + PAD);
    for (relation, lhs, rhs) in relations(&padded) {
        if let Agreement::Differs(m) = lhs.equal_up_to(&rhs, order).expect("padded enough") {
            return Err(CubicCfError::RelationBroken {
                relation: relation.to_string(),
                exponent: m.exponent,
            });
        }
    }
    Ok(CubicTriple {
        a: padded.a.truncate(order),
        b: padded.b.truncate(order),
        c: padded.c.truncate(order),
        order,
    })
}

/// The four relations between `a`, `b`, `c` as claim reports.
pub fn verify_triple_relations(order: i64) -> Vec<ClaimReport> {
    let padded = raw_triple(order + PAD);
    relations(&padded)
        .into_iter()
        .map(|(label, lhs, rhs)| {
            let start = Instant::now();
            identity(label, &lhs, &rhs, order, start).with_kind(ClaimKind::Relation)
        })
        .collect()
}

/// `H3` applied to `1, a, a^2, a^3, a^4, 1/a^2`, compared with their closed
/// forms in `b` and `c`.
pub fn verify_h3_images(order: i64) -> Vec<ClaimReport> {
    let t = raw_triple(order + PAD);
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let n = t.order;
    let b3 = b.pow(3).expect("unit");
    let inv_b3 = b3.invert().expect("unit");
    let inv_c = c.invert().expect("unit");
    let inv_c2 = inv_c.pow(2).expect("unit");
    let power = |k: i64| a.pow(k).expect("unit");
    let constant = |k: i64| LaurentSeries::constant(k, n);

    let cases: Vec<(&str, LaurentSeries, LaurentSeries)> = vec![
        ("H3(1) = 1", constant(1), constant(1)),
        ("H3(a) = -1", power(1), constant(-1)),
        ("H3(a^2) = -3", power(2), constant(-3)),
        (
            "H3(a^3) = -8/b^3 + 11 + b^3",
            power(3),
            inv_b3.scale(&int(-8)).add(&constant(11)).add(&b3),
        ),
        (
            "H3(a^4) = 32/b^3 + 1 - 4b^3",
            power(4),
            inv_b3
                .scale(&int(32))
                .add(&constant(1))
                .sub(&b3.scale(&int(4))),
        ),
        (
            "H3(1/a^2) = 2/c + 27/c^2",
            power(-2),
            inv_c.scale(&int(2)).add(&inv_c2.scale(&int(27))),
        ),
    ];
    cases
        .into_iter()
        .map(|(label, series, image)| {
            let start = Instant::now();
            identity(label, &huff(&series, 3), &image, order, start)
        })
        .collect()
}

/// Carries the `H3(1/a^2)` image through to the generating function of
/// `CP3(3n+1)`:
/// `H3(q^-1 CP3) = f3^6 f6^6/(q^3 f9^2 f18^2) (2/c + 27/c^2)`, and after
/// relabeling `sum CP3(3n+1) q^n = 2 (f1 f2 f3 f6)^2 + 27 q CP3`.
pub fn verify_huffed_generating_function(order: i64) -> Vec<ClaimReport> {
    let n = order + PAD;
    let t = raw_triple(n);
    let cp3 = quotient(&[(3, 6), (6, 6), (1, -2), (2, -2)], 3 * n + 2);
    let dq = quotient(&[(1, 2), (2, 2), (3, 2), (6, 2)], n);

    let start = Instant::now();
    let lhs = huff(&cp3.shift(-1), 3);
    let prefactor = quotient(&[(3, 6), (6, 6), (9, -2), (18, -2)], n + 3).shift(-3);
    let inv_c = t.c.invert().expect("unit");
    let image = inv_c
        .scale(&int(2))
        .add(&inv_c.pow(2).expect("unit").scale(&int(27)));
    let rhs = prefactor.mul(&image);
    let huffed = identity(
        "H3(q^-1 CP3) = f3^6*f6^6/(q^3*f9^2*f18^2) * (2/c + 27/c^2)",
        &lhs,
        &rhs,
        order,
        start,
    );

    let start = Instant::now();
    let slice = extract(&cp3, 3, 1).expect("power series");
    let closed = dq
        .scale(&int(2))
        .add(&cp3.truncate(n).shift(1).scale(&int(27)));
    let relabeled = identity(
        "extract(CP3, 3, 1) = 2*(f1*f2*f3*f6)^2 + 27*q*CP3",
        &slice,
        &closed,
        order,
        start,
    );

    let start = Instant::now();
    let back = identity(
        "H3(q^-1 CP3) = subst(2*(f1*f2*f3*f6)^2 + 27*q*CP3, 3)",
        &lhs,
        &closed.substitute_qk(3),
        order,
        start,
    );
    vec![huffed, relabeled, back]
}

//! Expands an eta quotient and a few catalog series.
//!
//! cargo run --example expand_eta_quotient -- "f3^6*f6^6/(f1^2*f2^2)" 20

use qid::congruence::catalog;
use qid::dsl::{eval, parse_expr, Env};
use qid::eta::{eta_quotient, EtaQuotient};

fn main() {
    let mut args = std::env::args().skip(1);
    let text = args
        .next()
        .unwrap_or_else(|| "f3^6*f6^6/(f1^2*f2^2)".into());
    let order: i64 = args
        .next()
        .map_or(20, |s| s.parse().expect("order is an integer"));

    let expr = parse_expr(&text).unwrap_or_else(|e| panic!("{e}"));
    let series = eval(&expr, order, &Env::new()).unwrap_or_else(|e| panic!("{e}"));
    println!("{text} = {series}");

    // the same quotient built directly, without the expression language
    let spec = EtaQuotient::from_factors([(3, 6), (6, 6), (1, -2), (2, -2)]);
    println!("{spec} = {}", eta_quotient(&spec, 10));

    for entry in catalog() {
        println!(
            "{:8} {:40} {}",
            entry.name,
            entry.description,
            eta_quotient(&entry.spec, 8)
        );
    }
}

use super::ast::{ClaimFile, SeriesExpr, Statement};
use super::eval::Env;
use crate::congruence::{verify_congruence, CongruenceClaim};
use crate::dissection::verify_identity;
use crate::report::Report;

/// Orders used when running a claim file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub identity_order: i64,
    pub congruence_order: i64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            identity_order: 500,
            congruence_order: 2000,
        }
    }
}

impl RunConfig {
    /// One order for every claim kind.
    pub fn uniform(order: i64) -> Self {
        RunConfig {
            identity_order: order,
            congruence_order: order,
        }
    }
}

/// Runs every claim of `file` in file order. A failing or erroring claim is
/// recorded and the run continues.
pub fn run(file: &ClaimFile, config: &RunConfig) -> Report {
    let env = Env::from_file(file);
    let mut report = Report::new(config.identity_order);
    for statement in &file.statements {
        let entry = match statement {
            Statement::Series { .. } => continue,
            Statement::Identity { label, lhs, rhs } => {
                verify_identity(label, lhs, rhs, config.identity_order, &env)
            }
            Statement::Congruence {
                label,
                series,
                progression,
                modulus,
            } => {
                let claim = CongruenceClaim::vanishing(
                    label.clone(),
                    SeriesExpr::name(series.clone()),
                    progression.step,
                    progression.offset,
                    *modulus,
                );
                verify_congruence(&claim, config.congruence_order, &env)
            }
            Statement::Internal {
                label,
                series,
                left,
                right,
                modulus,
            } => {
                let claim = CongruenceClaim::internal(
                    label.clone(),
                    SeriesExpr::name(series.clone()),
                    *left,
                    *right,
                    *modulus,
                );
                verify_congruence(&claim, config.congruence_order, &env)
            }
        };
        report.claims.push(entry);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parser::parse;
    use crate::report::Status;
    use proptest::prelude::*;

    const SMALL: RunConfig = RunConfig {
        identity_order: 120,
        congruence_order: 300,
    };

    #[test]
    fn empty_file_passes() {
        let r = run(&parse("").unwrap(), &SMALL);
        assert!(r.passed());
        assert!(r.claims.is_empty());
    }

    #[test]
    fn one_sabotaged_sign() {
        let text = "\
series T = f3^6*f6^6/(f1^2*f2^2)
identity \"ok\": f1^2 == f2*f8^5/(f4^2*f16^2) - 2*q*f2*f16^2/f8
identity \"bad\": f1^2 == f2*f8^5/(f4^2*f16^2) + 2*q*f2*f16^2/f8
congruence \"8n+3\": T[8*n+3] == 0 mod 8
internal \"parity\": T[3*n+1] == T[1*n-1] mod 2
";
        let r = run(&parse(text).unwrap(), &SMALL);
        let statuses: Vec<_> = r.claims.iter().map(|c| c.status).collect();
        assert_eq!(
            statuses,
            vec![Status::Pass, Status::Fail, Status::Pass, Status::Pass]
        );
        assert!(!r.passed());
        let labels: Vec<_> = r.claims.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, vec!["ok", "bad", "8n+3", "parity"]);
    }

    #[test]
    fn errors_do_not_abort() {
        let text = "identity \"laurent\": extract(q^-1*f1, 2, 0) == 1\ncongruence \"p\": P[5*n+4] == 0 mod 5";
        let r = run(&parse(text).unwrap(), &SMALL);
        assert_eq!(r.claims[0].status, Status::Error);
        assert_eq!(r.claims[1].status, Status::Pass);
    }

    fn arb_expr() -> impl Strategy<Value = SeriesExpr> {
        let leaf = prop_oneof![
            (1u64..20).prop_map(SeriesExpr::eta),
            (-3i64..4).prop_map(SeriesExpr::q),
            (-9i64..10).prop_map(SeriesExpr::int),
            prop::sample::select(vec!["CP3", "P", "DQ"]).prop_map(SeriesExpr::name),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a / b),
                inner.clone().prop_map(|a| -a),
                (inner.clone(), -4i64..5).prop_map(|(a, e)| a.pow(e)),
                (inner.clone(), 1u64..5, 0u64..5).prop_map(|(a, k, r)| a.extract(k, r % k)),
                (inner.clone(), 1u64..5).prop_map(|(a, k)| a.huff(k)),
                (inner, 1u64..5).prop_map(|(a, k)| a.subst(k)),
            ]
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(lhs in arb_expr(), rhs in arb_expr(), m in 2u64..100) {
            let text = format!(
                "series S = {lhs}\nidentity \"a \\\"b\\\"\": S == {rhs}\ncongruence \"c\": S[6*n+5] == 0 mod {m}\ninternal \"d\": S[3*n+1] == S[1*n-1] mod 2\n"
            );
            let file = parse(&text).unwrap();
            let again = parse(&file.render()).unwrap();
            prop_assert_eq!(file, again);
        }
    }
}

//! Parses and runs a claim file, printing the text report and the JSON form.
//!
//! cargo run --example claim_file -- corpus/cp3.qid

use qid::dsl::{parse, run, RunConfig};

const DEMO: &str = r#"
series T = f3^6*f6^6/(f1^2*f2^2)
identity "odd part": extract(T, 2, 1) == 2*f2^2*f3^8*f6^2/f1^4
identity "odd part, sign flipped": extract(T, 2, 1) == -2*f2^2*f3^8*f6^2/f1^4
congruence "8n+3": T[8*n+3] == 0 mod 8
internal "parity": T[9*n+7] == T[1*n-1] mod 2
"#;

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable claim file"),
        None => DEMO.to_string(),
    };
    let file = parse(&text).unwrap_or_else(|e| panic!("{e}"));
    let report = run(&file, &RunConfig::default());
    println!("{report}\n");
    println!(
        "{}",
        serde_json::to_string_pretty(&report.to_json()).unwrap()
    );
}

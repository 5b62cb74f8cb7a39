//! Searches for congruences a(An+B) == 0 mod M and marks which are on record.

use qid::congruence::scan_congruences;
use qid::dsl::{Env, SeriesExpr};

fn main() {
    let env = Env::new();
    let hits = scan_congruences(
        &SeriesExpr::name("CP3"),
        24,
        &[4, 8, 16, 48, 96],
        2000,
        &env,
    )
    .unwrap();
    for h in &hits {
        println!("{h}");
    }
    let hits = scan_congruences(&SeriesExpr::name("P"), 11, &[5, 7, 11], 1000, &env).unwrap();
    for h in &hits {
        println!("p: {h}");
    }
}

//! Bounded congruence checks, including a deliberately too-strong modulus.

use qid::congruence::{verify_congruence, CongruenceClaim, Progression, KNOWN_CONGRUENCES};
use qid::dsl::{Env, SeriesExpr};

fn main() {
    let env = Env::new();
    for known in KNOWN_CONGRUENCES {
        println!("{}", verify_congruence(&known.claim(), 2000, &env));
    }

    let too_strong =
        CongruenceClaim::vanishing("CP3(24n+13) mod 8", SeriesExpr::name("CP3"), 24, 13, 8);
    println!("{}", verify_congruence(&too_strong, 2000, &env));

    let parity = CongruenceClaim::internal(
        "CP3(3n+1) = CP3(n-1) mod 2",
        SeriesExpr::name("CP3"),
        Progression::new(3, 1),
        Progression::new(1, -1),
        2,
    );
    println!("{}", verify_congruence(&parity, 2000, &env));
}

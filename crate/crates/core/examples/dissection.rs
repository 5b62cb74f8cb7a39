//! 2- and 3-dissections of the CP3 generating function: slices, the huffing
//! projection, and reassembly.

use qid::congruence::builtin_series;
use qid::dissection::{extract, huff, reassemble, verify_identity};
use qid::dsl::{parse_expr, Env};

fn main() {
    let cp3 = builtin_series("CP3", 60).unwrap();
    let odd = extract(&cp3, 2, 1).unwrap();
    println!("CP3(2n+1): {odd}");
    println!("H3(CP3):   {}", huff(&cp3, 3));

    let slices: Vec<_> = (0..3).map(|r| extract(&cp3, 3, r).unwrap()).collect();
    let back = reassemble(&slices);
    println!(
        "reassembled from 3 slices agrees to q^{}: {}",
        back.order(),
        back.equal_up_to(&cp3, back.order()).unwrap().is_equal()
    );

    let env = Env::new();
    let lhs = parse_expr("extract(CP3, 2, 1)").unwrap();
    let rhs = parse_expr("2*f2^2*f3^8*f6^2/f1^4").unwrap();
    println!("{}", verify_identity("CP3(2n+1)", &lhs, &rhs, 500, &env));

    let wrong = parse_expr("2*f2^2*f3^8*f6^2/f1^3").unwrap();
    println!(
        "{}",
        verify_identity("CP3(2n+1), wrong power", &lhs, &wrong, 500, &env)
    );
}

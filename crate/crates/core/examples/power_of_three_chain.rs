//! The CP3(3^k n + 3^k - 2) family: coefficient recursions, the closed form,
//! and the congruences modulo 3^(k-1) and 2*3^(k-1).

use qid::congruence::{
    closed_form_coefficients, recursion_coefficients, verify_parity_family,
    verify_power_of_three_family,
};

fn main() {
    for k in 1..=6 {
        let (alpha, beta) = closed_form_coefficients(k);
        let agree = recursion_coefficients(k) == (alpha.clone(), beta.clone());
        println!("k={k}: CP3(3^k n + 3^k - 2) = {alpha} d(n) + {beta} CP3(n-1)  [recursion agrees: {agree}]");
    }
    for r in verify_power_of_three_family(4, 2000)
        .iter()
        .chain(&verify_parity_family(4, 2000))
    {
        println!("{r}");
    }
}

//! The cubic continued fraction x(q) and the identities built from it.

use qid::cubic_cf::{
    build_cubic_triple, cubic_cf_series, verify_depth_stability, verify_h3_images,
    verify_huffed_generating_function, verify_triple_relations, verify_x_identities,
};

fn main() {
    let x = cubic_cf_series(16);
    println!("x(q) = {} (depth {})", x.x, x.depth);

    let t = build_cubic_triple(8).expect("relations hold");
    println!("a = {}\nb = {}\nc = {}", t.a, t.b, t.c);

    let order = 100;
    let reports = std::iter::once(verify_depth_stability(order))
        .chain(verify_x_identities(order))
        .chain(verify_triple_relations(order))
        .chain(verify_h3_images(order))
        .chain(verify_huffed_generating_function(order));
    for r in reports {
        println!("{r}");
    }
}

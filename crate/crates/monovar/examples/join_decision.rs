//! The combinatorial decision procedure for the join variety F∨E: an
//! identity holds exactly when both sides agree on simple/multiple letters
//! and on the h_1, h_2 and t dividers of every letter.
//!
//! Run with `cargo run --example join_decision`.

use monovar::identities::{claims_check, fve_holds, id_a, id_c, id_e, parse_identity, Identity};

fn report(id: &Identity) {
    println!("{id}");
    let claims = claims_check(id);
    println!("  simple/multiple sets equal: {}", claims.c_sim);
    for (label, layer) in [("h1", &claims.c_h1), ("h2", &claims.c_h2), ("t", &claims.c_t)] {
        for claim in layer {
            println!(
                "  {label}({}) = {} vs {}  {}",
                claim.letter,
                claim.lhs,
                claim.rhs,
                if claim.agrees() { "ok" } else { "DIFFERS" }
            );
        }
    }
    println!("  => {}", if fve_holds(id) { "holds" } else { "fails" });
    println!();
}

fn main() {
    // the two laws holding in the join: swapping under a left context, and
    // erasing a duplicated letter between repetitions
    report(&id_c());
    report(&id_e());

    // plain commutativity fails: the first occurrences see different dividers
    report(&parse_identity("xy == yx").unwrap());

    // the square-stabilizing law holds even though it is unbalanced
    report(&id_a());

    // a pair with equal contents but a diverging last divider
    report(&parse_identity("x t y x == x y t x").unwrap());
}

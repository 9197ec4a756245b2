//! The reduced-word quotient: saturate the generator family, build the
//! quotient monoid over τ-classes, check the defining identities, and probe
//! τ-rigidity of words.
//!
//! Run with `cargo run --example tau_quotient`.

use monovar::identities::{id_a, id_b, id_c, id_d, j_identity, permutations};
use monovar::monoids::{satisfies, saturate_j_generator, tau_quotient};
use monovar::reductions::{tau_term_violation, TauWitnessBudget};
use monovar::words::{render, Word};

fn main() {
    // Reduced forms of all factors of x z y x^k t y^l; exponents above two
    // reduce away, so the set stops growing.
    for (k, l) in [(1, 1), (2, 2), (3, 3)] {
        let (set, stabilized) = saturate_j_generator(k, l);
        println!("saturate({k},{l}): {} reduced words, stabilized {stabilized}", set.len());
    }
    println!();

    let (set, _) = saturate_j_generator(2, 2);
    let m = tau_quotient(&set).unwrap();
    println!("quotient monoid: {} elements (including zero)", m.size());
    println!("validation problems: {:?}", m.validate());
    println!(
        "aperiodic {}, idempotents commute {}",
        m.is_aperiodic(),
        m.idempotents_commute()
    );
    println!();

    // the class of x times itself lands in the reduced representative x^2,
    // and again: reduce(x^3) = x^2
    let x = m.element_index("x").unwrap();
    let xx = m.element_index("x^2").unwrap();
    println!("x · x   = {:?}", m.element_name(m.mul(x, x)));
    println!("x^2 · x = {:?}", m.element_name(m.mul(xx, x)));
    println!();

    // the quotient satisfies the whole defining stock, checked by brute force
    let mut ids = vec![id_a(), id_b(), id_c(), id_d()];
    for n in 1..=2u32 {
        for perm in permutations(n as usize) {
            ids.push(j_identity(n, &perm).unwrap());
        }
    }
    for id in &ids {
        let result = satisfies(&m, id);
        println!("{} {}", if result.holds { "holds" } else { "FAILS" }, id);
    }
    println!();

    // τ-rigidity probe: a word is rigid for the monoid when no identity
    // w == w' with a τ-inequivalent w' holds; the search never claims
    // rigidity, only reports witnesses or exhaustion
    let budget = TauWitnessBudget::default();
    for text in ["x", "xzyxty"] {
        let w = Word::lit(text);
        match tau_term_violation(&w, &m, &budget) {
            Some(witness) => println!("{}: violated by {}", render(&w), render(&witness)),
            None => println!("{}: no violation found within budget", render(&w)),
        }
    }
}

//! Finite factor monoids S(w_1, .., w_k): construction, the multiplication
//! table, structural predicates and brute-force identity checking.
//!
//! Run with `cargo run --example rees_monoids`.

use monovar::identities::{id_a, id_g};
use monovar::monoids::{evaluate, rees_quotient, satisfies, to_json, ElementSubstitution};
use monovar::words::{Letter, Word};

fn main() {
    // Elements are the factors of the generating words plus a zero that
    // absorbs every non-factor product.
    let m = rees_quotient(&[Word::lit("xyx")]).unwrap();
    println!("S(xyx): {} elements: {:?}", m.size(), m.elements);
    println!("validation problems: {:?}", m.validate());
    println!();

    print!("      ");
    for b in 0..m.size() {
        print!("{:>5}", m.element_name(b));
    }
    println!();
    for a in 0..m.size() {
        print!("{:>5} ", m.element_name(a));
        for b in 0..m.size() {
            print!("{:>5}", m.element_name(m.mul(a, b)));
        }
        println!();
    }
    println!();

    // evaluation under an element substitution
    let sub: ElementSubstitution = [
        (Letter::new('x'), m.element_index("x").unwrap()),
        (Letter::new('y'), m.element_index("y").unwrap()),
    ]
    .into_iter()
    .collect();
    for text in ["xyx", "x^2", "1"] {
        let w = Word::lit(text);
        let value = evaluate(&m, &w, &sub).unwrap();
        println!("[{text}] evaluates to {:?}", m.element_name(value));
    }
    println!();

    // universal satisfaction by exhaustive substitution; failures come with
    // the first counterexample in enumeration order
    let refuted = satisfies(&m, &id_a());
    println!("S(xyx) |= {}? {}", id_a(), refuted.holds);
    if let Some(witness) = refuted.witness {
        let show: Vec<String> = witness
            .iter()
            .map(|(l, &e)| format!("{l} -> {}", m.element_name(e)))
            .collect();
        println!("  witness: {}", show.join(", "));
    }
    println!("S(xyx) |= {}? {}", id_g(), satisfies(&m, &id_g()).holds);
    println!();

    // bigger generators stay aperiodic with trivially commuting idempotents
    let big = rees_quotient(&[Word::lit("xzxyty")]).unwrap();
    println!(
        "S(xzxyty): {} elements, aperiodic {}, idempotents {:?}",
        big.size(),
        big.is_aperiodic(),
        big.idempotents()
            .iter()
            .map(|&i| big.element_name(i))
            .collect::<Vec<_>>()
    );
    println!();

    // stable JSON form for caching and interchange
    println!("JSON of S(x):");
    println!("{}", to_json(&rees_quotient(&[Word::lit("x")]).unwrap()));
}

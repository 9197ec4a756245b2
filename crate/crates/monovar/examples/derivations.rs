//! Equational rewriting: matching with possibly-empty images, bounded
//! derivation search, trace files, and the free-object oracle for exact
//! decisions in locally finite varieties.
//!
//! Run with `cargo run --example derivations`.

use monovar::identities::{id_e, preset, Identity};
use monovar::rewrite::{
    derivable, free_object, holds_in_variety, match_pattern, parse_trace, render_trace,
    verify_trace, Derivability, FreeObjectCaps, SearchBudget,
};
use monovar::words::{render, Word};

fn main() {
    // every way to see x^2 inside aabb (empty images allowed)
    let matches = match_pattern(&Word::lit("x^2"), &Word::lit("aabb"), 100);
    println!("matches of x^2 in aabb:");
    for (sub, pos) in &matches.items {
        println!("  at {pos} with {sub}");
    }
    println!();

    // bounded bidirectional search; the cube law follows from the erasure
    // law by substituting empty images
    let budget = SearchBudget::default();
    let basis = [id_e()];
    match derivable(&Word::lit("x^3"), &Word::lit("x^2"), &basis, &budget) {
        Derivability::Derivable(trace) => {
            println!("x^3 -> x^2 over the erasure law, {} step(s):", trace.len());
            let words = trace.words().unwrap();
            println!("  {}", words.iter().map(render).collect::<Vec<_>>().join(" -> "));
            println!();
            println!("as a trace file:");
            let declared = vec![("E".to_string(), id_e().with_label("E"))];
            let relabelled = monovar::rewrite::DerivationTrace {
                start: trace.start.clone(),
                steps: trace
                    .steps
                    .iter()
                    .map(|s| {
                        let mut step = s.clone();
                        step.identity = step.identity.with_label("E");
                        step
                    })
                    .collect(),
                end: trace.end.clone(),
            };
            let text = render_trace(&relabelled, &declared);
            print!("{text}");
            println!();

            // the rendered trace parses and replays
            let parsed = parse_trace(&text).unwrap();
            verify_trace(&parsed.trace, &parsed.declared).unwrap();
            println!("re-verified: ok");
        }
        Derivability::Unknown => println!("budget exhausted"),
    }
    println!();

    // an exhausted budget reports unknown, never a negative
    let verdict = derivable(
        &Word::lit("xy"),
        &Word::lit("yx"),
        &preset("O", 1).unwrap(),
        &SearchBudget {
            max_steps: 2,
            ..SearchBudget::default()
        },
    );
    println!(
        "xy -> yx over the base pair: {}",
        if verdict.is_derivable() { "derived" } else { "unknown" }
    );
    println!();

    // the free object of a basis on finitely many letters decides identities
    // exactly once the class closure stabilizes
    let caps = FreeObjectCaps {
        max_len: 8,
        ..FreeObjectCaps::default()
    };
    let object = free_object(&preset("E", 1).unwrap(), &Word::lit("x").content(), &caps);
    println!(
        "free object of E on one letter: stable {}, {} classes",
        object.stable, object.class_count
    );

    for (id, basis_name) in [
        (Identity::lit("x^2", "x^3"), "E"),
        (Identity::lit("xy", "yx"), "F"),
        (Identity::lit("xyx", "xyx^2"), "F"),
    ] {
        let verdict = holds_in_variety(&id, &preset(basis_name, 1).unwrap(), &caps);
        println!("{basis_name} |= {id}: {verdict}");
    }
}

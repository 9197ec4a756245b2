//! The trace text format: parse a shipped derivation chain, replay it
//! step by step, and show how verification pins every step to its cited
//! identity.
//!
//! Run with `cargo run --example trace_files`.

use monovar::identities::{id_a, id_i};
use monovar::rewrite::{apply_step, parse_trace, verify_trace};
use monovar::words::render;

const CHAIN: &str = include_str!("../data/traces/pad_unbalanced_block.trace");

fn main() {
    println!("trace file:");
    for line in CHAIN.lines() {
        println!("  {line}");
    }
    println!();

    let parsed = parse_trace(CHAIN).unwrap();
    println!("replay:");
    let mut current = parsed.trace.start.clone();
    println!("  {}", render(&current));
    for step in &parsed.trace.steps {
        current = apply_step(&current, step).unwrap();
        println!(
            "  {}   (by {} {} at {})",
            render(&current),
            step.identity.label().unwrap_or("?"),
            step.direction,
            step.position
        );
    }
    assert_eq!(current, parsed.trace.end);
    println!();

    // verification demands every step's identity to be explicitly allowed
    let allowed = vec![id_a(), id_i()];
    println!("with the two cited identities: {:?}", verify_trace(&parsed.trace, &allowed));
    let restricted = vec![id_a()];
    println!("with one withheld:            {:?}", verify_trace(&parsed.trace, &restricted));
}

//! The named identity stock: presets for the varieties K, Q, E, F, O and J,
//! the four identity families, the permutation-indexed J identities, and the
//! dual (letter-reversal) operator.
//!
//! Run with `cargo run --example presets_and_families`.

use monovar::identities::{
    dual_preset, family, j_identity, permutations, preset, resolve_handle, FamilyKind,
};

fn main() {
    for name in ["K", "Q", "E", "F", "O"] {
        println!("preset {name}:");
        for id in preset(name, 2).unwrap() {
            println!("  {:<8} {id}", id.label().unwrap_or(""));
        }
    }
    println!();

    // The J preset is an infinite family truncated at a caller-chosen bound.
    println!("preset J truncated at n = 2:");
    for id in preset("J", 2).unwrap() {
        println!("  {:<10} {id}", id.label().unwrap_or(""));
    }
    println!();

    // J identities are indexed by a permutation acting on the z-letters.
    for n in 1..=2u32 {
        for perm in permutations(n as usize) {
            let id = j_identity(n, &perm).unwrap();
            println!("J({n}; {perm:?}) = {id}");
        }
    }
    println!();

    // The families alpha, beta, gamma, gamma' share an alternating x/y tail.
    for kind in [
        FamilyKind::Alpha,
        FamilyKind::Beta,
        FamilyKind::Gamma,
        FamilyKind::GammaPrime,
    ] {
        for n in 1..=2 {
            let id = family(kind, n).unwrap();
            println!("{:<9} {id}", format!("{kind}_{n}"));
        }
    }
    println!();

    // Handles give script-friendly access to every named identity.
    for handle in ["ID-C", "ID-E", "alpha_2", "gamma'_1", "J(2;2,1)"] {
        println!("{handle:<9} -> {}", resolve_handle(handle).unwrap());
    }
    println!();

    // Reversing every word in a basis presents the dual variety.
    println!("dual of preset O:");
    for id in dual_preset(&preset("O", 1).unwrap()) {
        println!("  {id}");
    }
}

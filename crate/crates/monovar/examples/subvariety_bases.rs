//! The reduction pipeline: repair an identity of the join variety to a
//! well-balanced one, extract the defining family members, and assemble a
//! finite basis for the subvariety it cuts out.
//!
//! Run with `cargo run --example subvariety_bases`.

use monovar::identities::{family, fve_holds, id_a, id_c, parse_identity, FamilyKind};
use monovar::reductions::{phi_basis, subvariety_basis, well_balance};
use monovar::rewrite::{derivable, SearchBudget};
use monovar::identities::preset;

fn main() {
    // balancing: equalize per-letter counts inside each aligned block pair
    for id in [
        id_a(),
        parse_identity("x^2 t1 y^2 t2 x == x^2 t1 x y^2 t2 x").unwrap(),
    ] {
        println!("balance {id}");
        let result = well_balance(&id).unwrap();
        println!("  -> {}   (stabilizer needed: {})", result.identity, result.used_d);
    }
    println!();

    // Φ extraction walks one swap at a time and names the case it took
    for id in [
        id_c(),
        family(FamilyKind::Alpha, 1).unwrap(),
        parse_identity("x y x t1 x t2 y == y x^2 t1 x t2 y").unwrap(),
    ] {
        println!("phi extraction of {id}");
        let phi = phi_basis(&id, 1000).unwrap();
        for step in &phi.log {
            println!(
                "  case {} at block {}, swapped ({}, {}){}{}",
                step.case,
                step.block,
                step.swapped.0,
                step.swapped.1,
                if step.mirrored { ", mirrored" } else { "" },
                step.emitted
                    .map(|m| format!(", emitted {m}"))
                    .unwrap_or_default(),
            );
        }
        println!(
            "  members: [{}]",
            phi.members
                .iter()
                .map(|m| m.handle())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    println!();

    // the full pipeline keeps one member per family (later ones follow)
    let inputs = [
        id_c(),
        family(FamilyKind::Alpha, 1).unwrap(),
        family(FamilyKind::Alpha, 2).unwrap(),
    ];
    println!(
        "inputs: {}",
        inputs.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",  ")
    );
    let basis = subvariety_basis(&inputs, 1000).unwrap();
    println!("finite basis:");
    for id in &basis.identities {
        println!("  {:<8} {id}", id.label().unwrap_or(""));
    }
    println!();

    // the dropped member really follows from the kept one over the base pair
    let alpha2 = family(FamilyKind::Alpha, 2).unwrap();
    let mut reachable_from = preset("O", 1).unwrap();
    reachable_from.push(family(FamilyKind::Alpha, 1).unwrap());
    let verdict = derivable(
        alpha2.lhs(),
        alpha2.rhs(),
        &reachable_from,
        &SearchBudget::default(),
    );
    println!("alpha_2 from alpha_1 over the base pair: {}", verdict.is_derivable());

    // identities outside the join variety are rejected up front
    let bad = parse_identity("xy == yx").unwrap();
    println!();
    println!("fve_holds(xy == yx) = {}", fve_holds(&bad));
    match subvariety_basis(&[bad], 1000) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}

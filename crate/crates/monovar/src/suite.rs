//! The self-check battery: each check builds the relevant objects from
//! scratch, compares against independently computed expectations, and
//! reports one pass/fail line. Run via `monovar accept` or the `acceptance`
//! test target.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::identities::{
    self, claims_check, family, fve_holds, j_identity, permutations, preset, FamilyKind, Identity,
};
use crate::monoids::{rees_quotient, satisfies, saturate_j_generator, tau_quotient};
use crate::reductions::{phi_basis, well_balance, PhiMember};
use crate::rewrite::{
    derivable, free_object, parse_trace, verify_trace, FreeObjectCaps, SearchBudget,
};
use crate::words::{
    decompose, divider_query, is_reduced, letter_stats, occurrences, project, reduce, render,
    reverse, same_type, tau_equiv, Letter, Word,
};

/// Result of one suite check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub number: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn line(&self) -> String {
        format!(
            "{} check {:2} [{}] {} ({:.2?})",
            if self.passed { "PASS" } else { "FAIL" },
            self.number,
            self.name,
            self.detail,
            self.elapsed
        )
    }
}

pub fn check_names() -> Vec<(usize, &'static str)> {
    vec![
        (1, "construction-sizes"),
        (2, "aperiodic-commuting-idempotents"),
        (3, "model-spot-checks"),
        (4, "join-decision-values"),
        (5, "join-oracle-cross-validation"),
        (6, "golden-derivation-chains"),
        (7, "tau-quotient-generator"),
        (8, "balance-and-phi-extraction"),
        (9, "family-monotonicity"),
        (10, "word-machinery-properties"),
    ]
}

/// Runs one check by number.
pub fn run_check(number: usize) -> CheckReport {
    let name = check_names()
        .into_iter()
        .find(|(n, _)| *n == number)
        .map(|(_, name)| name)
        .unwrap_or("unknown");
    let start = Instant::now();
    let outcome = match number {
        1 => construction_sizes(),
        2 => aperiodic_structure(),
        3 => model_spot_checks(),
        4 => join_decision_values(),
        5 => join_oracle_cross_validation(),
        6 => golden_chains(),
        7 => tau_quotient_generator(),
        8 => balance_and_phi(),
        9 => family_monotonicity(),
        10 => word_machinery(),
        _ => Err(format!("no check numbered {number}")),
    };
    let elapsed = start.elapsed();
    match outcome {
        Ok(detail) => CheckReport {
            number,
            name,
            passed: true,
            detail,
            elapsed,
        },
        Err(detail) => CheckReport {
            number,
            name,
            passed: false,
            detail,
            elapsed,
        },
    }
}

pub fn run_all() -> Vec<CheckReport> {
    check_names()
        .into_iter()
        .map(|(n, _)| run_check(n))
        .collect()
}

fn ensure(cond: bool, message: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.to_string())
    }
}

// 1. Element counts of the small Rees quotients, with full table validation.
fn construction_sizes() -> Result<String, String> {
    let m1 = rees_quotient(&[Word::lit("xyx")]).map_err(|e| e.to_string())?;
    ensure(m1.size() == 7, &format!("S(xyx) has {} elements, want 7", m1.size()))?;
    ensure(m1.validate().is_empty(), "S(xyx) fails validation")?;

    let m2 = rees_quotient(&[Word::lit("xzxyty")]).map_err(|e| e.to_string())?;
    ensure(m2.size() == 21, &format!("S(xzxyty) has {} elements, want 21", m2.size()))?;
    ensure(m2.validate().is_empty(), "S(xzxyty) fails validation")?;

    // independent count: factors enumerated by hand-rolled double loop
    let w = Word::lit("xzxyty");
    let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            seen.insert(w.letters()[i..j].to_vec());
        }
    }
    ensure(
        seen.len() + 2 == m2.size(),
        "factor enumeration disagrees with element count",
    )?;
    Ok("S(xyx): 7 elements, S(xzxyty): 21 elements, tables validate".to_string())
}

// 2. The generator monoids are aperiodic with commuting idempotents; the
// structural invariant holds on random Rees quotients.
fn aperiodic_structure() -> Result<String, String> {
    let l_gen = rees_quotient(&[Word::lit("xzxyty")]).map_err(|e| e.to_string())?;
    ensure(l_gen.is_aperiodic(), "S(xzxyty) not aperiodic")?;
    ensure(l_gen.idempotents_commute(), "S(xzxyty) idempotents do not commute")?;

    let m_gen =
        rees_quotient(&[Word::lit("xyzxty"), Word::lit("xtyzxy")]).map_err(|e| e.to_string())?;
    ensure(m_gen.is_aperiodic(), "S(xyzxty, xtyzxy) not aperiodic")?;
    ensure(
        m_gen.idempotents_commute(),
        "S(xyzxty, xtyzxy) idempotents do not commute",
    )?;

    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let alphabet = ['x', 'y', 'z', 't'];
    for round in 0..50 {
        let count = rng.random_range(1..=3);
        let mut generators = Vec::new();
        for _ in 0..count {
            let len = rng.random_range(1..=6);
            let letters: Vec<Letter> = (0..len)
                .map(|_| Letter::new(alphabet[rng.random_range(0..alphabet.len())]))
                .collect();
            generators.push(Word::from_letters(letters));
        }
        let m = rees_quotient(&generators).map_err(|e| e.to_string())?;
        ensure(
            m.validate().is_empty(),
            &format!("round {round}: random S(W) fails validation"),
        )?;
        ensure(m.is_aperiodic(), &format!("round {round}: random S(W) not aperiodic"))?;
        let idempotents = m.idempotents();
        ensure(
            idempotents == vec![m.identity, m.zero.unwrap()],
            &format!("round {round}: idempotents are not exactly identity and zero"),
        )?;
        ensure(
            m.idempotents_commute(),
            &format!("round {round}: idempotents do not commute"),
        )?;
    }
    Ok("both generators and 50 random S(W) are aperiodic with commuting idempotents".to_string())
}

// 3. Satisfaction spot checks on S(xyx) with the pinned witness.
fn model_spot_checks() -> Result<String, String> {
    let m = rees_quotient(&[Word::lit("xyx")]).map_err(|e| e.to_string())?;
    let r = satisfies(&m, &identities::id_a());
    ensure(!r.holds, "S(xyx) unexpectedly satisfies the square-stabilizing law")?;
    let witness = r.witness.ok_or("missing witness")?;
    let x = m.element_index("x").ok_or("no element x")?;
    let y = m.element_index("y").ok_or("no element y")?;
    ensure(
        witness[&Letter::new('x')] == x && witness[&Letter::new('y')] == y,
        &format!("witness is {witness:?}, want x->x, y->y"),
    )?;
    ensure(
        satisfies(&m, &identities::id_g()).holds,
        "S(xyx) must satisfy the cube law",
    )?;
    Ok("S(xyx) refutes ID-A at (x,y) and satisfies ID-G".to_string())
}

// 4. Decision procedure values on the four pinned identities.
fn join_decision_values() -> Result<String, String> {
    ensure(fve_holds(&identities::id_c()), "ID-C must hold")?;
    ensure(fve_holds(&identities::id_e()), "ID-E must hold")?;
    ensure(!fve_holds(&Identity::lit("xy", "yx")), "xy == yx must fail")?;
    ensure(fve_holds(&identities::id_a()), "ID-A must hold")?;
    Ok("ID-C, ID-E, ID-A hold; xy == yx fails".to_string())
}

// 5. The claims-based decision agrees with the free-object oracles of the
// presets F and E: exhaustively on two letters up to length 5, and on a
// 1000-identity random sample over three letters up to length 6.
fn join_oracle_cross_validation() -> Result<String, String> {
    let f_basis = preset("F", 1).map_err(|e| e.to_string())?;
    let e_basis = preset("E", 1).map_err(|e| e.to_string())?;

    let caps2 = FreeObjectCaps {
        max_len: 11,
        ..FreeObjectCaps::default()
    };
    let two = Word::lit("xy").content();
    let f2 = free_object(&f_basis, &two, &caps2);
    let e2 = free_object(&e_basis, &two, &caps2);
    ensure(f2.stable, "free object of F on two letters did not stabilize")?;
    ensure(e2.stable, "free object of E on two letters did not stabilize")?;

    // a relatively free monoid lies in its variety, so every basis identity
    // must hold under all element substitutions; a failure here would mean
    // the bounded closure merged too little to be trusted as an oracle
    for (name, object, basis) in [("F", &f2, &f_basis), ("E", &e2, &e_basis)] {
        let monoid = object.monoid.as_ref().expect("stable");
        for id in basis {
            let r = satisfies(monoid, id);
            if !r.holds {
                return Err(format!(
                    "2-letter free object of {name} refutes its basis identity {id} at {:?}",
                    r.witness
                ));
            }
        }
    }

    let words2 = crate::rewrite::words_up_to(&two, 5);
    let mut checked = 0usize;
    for u in &words2 {
        for v in &words2 {
            let id = Identity::new(u.clone(), v.clone());
            let by_claims = fve_holds(&id);
            let by_oracle = f2.class_of(u) == f2.class_of(v) && e2.class_of(u) == e2.class_of(v);
            if by_claims != by_oracle {
                return Err(format!(
                    "disagreement on {id}: claims say {by_claims}, oracle says {by_oracle}"
                ));
            }
            checked += 1;
        }
    }

    let caps3 = FreeObjectCaps {
        max_len: 9,
        ..FreeObjectCaps::default()
    };
    let three = Word::lit("xyz").content();
    let f3 = free_object(&f_basis, &three, &caps3);
    let e3 = free_object(&e_basis, &three, &caps3);
    let mut detail = format!("2 letters: {checked} identities, 0 disagreements");
    if f3.stable && e3.stable {
        for (name, object, basis) in [("F", &f3, &f_basis), ("E", &e3, &e_basis)] {
            let monoid = object.monoid.as_ref().expect("stable");
            for id in basis {
                let r = satisfies(monoid, id);
                if !r.holds {
                    return Err(format!(
                        "3-letter free object of {name} refutes its basis identity {id}"
                    ));
                }
            }
        }
        let mut rng = StdRng::seed_from_u64(0x5eed_0005);
        let letters: Vec<Letter> = three.iter().copied().collect();
        let random_word = |rng: &mut StdRng| -> Word {
            let len = rng.random_range(0..=6);
            (0..len)
                .map(|_| letters[rng.random_range(0..letters.len())])
                .collect()
        };
        for i in 0..1000 {
            let u = random_word(&mut rng);
            let v = random_word(&mut rng);
            let id = Identity::new(u.clone(), v.clone());
            let by_claims = fve_holds(&id);
            let by_oracle = f3.class_of(&u) == f3.class_of(&v) && e3.class_of(&u) == e3.class_of(&v);
            if by_claims != by_oracle {
                return Err(format!(
                    "sample {i}: disagreement on {id}: claims {by_claims}, oracle {by_oracle}"
                ));
            }
        }
        write!(
            detail,
            "; 3 letters: 1000 samples, 0 disagreements (F: {} classes, E: {} classes)",
            f3.class_count, e3.class_count
        )
        .unwrap();
    } else {
        write!(
            detail,
            "; 3-letter free objects did not stabilize within caps (F stable: {}, E stable: {}), sample skipped",
            f3.stable, e3.stable
        )
        .unwrap();
    }
    Ok(detail)
}

/// The golden derivation chains shipped as data files, with the identities
/// each chain is allowed to use.
pub fn golden_traces() -> Vec<(&'static str, &'static str, Vec<&'static str>)> {
    vec![
        (
            "square_stabilize",
            include_str!("../data/traces/square_stabilize.trace"),
            vec!["H", "ID-G"],
        ),
        (
            "absorb_tail_square",
            include_str!("../data/traces/absorb_tail_square.trace"),
            vec!["H", "ID-A"],
        ),
        (
            "strip_inner_square",
            include_str!("../data/traces/strip_inner_square.trace"),
            vec!["H", "ID-A"],
        ),
        (
            "duplicate_across_block_1",
            include_str!("../data/traces/duplicate_across_block_1.trace"),
            vec!["ID-H", "ID-A"],
        ),
        (
            "duplicate_across_block_2",
            include_str!("../data/traces/duplicate_across_block_2.trace"),
            vec!["ID-E", "ID-H", "ID-A"],
        ),
        (
            "collapse_repeats_tail",
            include_str!("../data/traces/collapse_repeats_tail.trace"),
            vec!["ID-H", "ID-A"],
        ),
        (
            "pad_unbalanced_block",
            include_str!("../data/traces/pad_unbalanced_block.trace"),
            vec!["ID-A", "ID-I"],
        ),
        (
            "tau_witness_bridge",
            include_str!("../data/traces/tau_witness_bridge.trace"),
            vec!["H", "ID-A"],
        ),
    ]
}

// 6. Every golden chain replays with exactly its allowed identities; the
// bridge chain's hypothesis additionally passes the join decision, since its
// shape is exactly what the divider claims permit.
fn golden_chains() -> Result<String, String> {
    let mut count = 0usize;
    for (name, text, allowed_names) in golden_traces() {
        let parsed = parse_trace(text).map_err(|e| format!("{name}: {e}"))?;
        if name == "tau_witness_bridge" {
            for declared in &parsed.declared {
                if !fve_holds(declared) {
                    return Err(format!(
                        "{name}: declared hypothesis {declared} fails the join decision"
                    ));
                }
            }
        }
        let mut allowed: Vec<Identity> = Vec::new();
        for handle in allowed_names {
            let id = parsed
                .declared
                .iter()
                .find(|d| d.label() == Some(handle))
                .cloned()
                .or_else(|| identities::resolve_handle(handle).ok())
                .ok_or_else(|| format!("{name}: unknown allowed handle {handle}"))?;
            allowed.push(id);
        }
        verify_trace(&parsed.trace, &allowed).map_err(|e| format!("{name}: {e}"))?;
        // replaying with any allowed identity removed must fail
        for i in 0..allowed.len() {
            let mut smaller = allowed.clone();
            smaller.remove(i);
            if verify_trace(&parsed.trace, &smaller).is_ok() {
                return Err(format!("{name}: verifies without {}", allowed[i]));
            }
        }
        count += 1;
    }
    Ok(format!("{count} golden chains replay with exactly their cited identities"))
}

// 7. The τ-quotient of the saturated generator set is a valid monoid
// satisfying the J preset up to n = 2.
fn tau_quotient_generator() -> Result<String, String> {
    let (set2, _) = saturate_j_generator(2, 2);
    let (set3, stabilized) = saturate_j_generator(3, 3);
    ensure(stabilized, "saturation did not stabilize at (3,3)")?;
    ensure(set2 == set3, "sets at (2,2) and (3,3) differ")?;
    ensure(set2.iter().all(is_reduced), "saturated set contains unreduced words")?;

    let m = tau_quotient(&set2).map_err(|e| e.to_string())?;
    ensure(m.validate().is_empty(), "tau quotient fails validation")?;

    let mut checked = 0usize;
    for id in [
        identities::id_a(),
        identities::id_b(),
        identities::id_c(),
        identities::id_d(),
    ] {
        let r = satisfies(&m, &id);
        if !r.holds {
            return Err(format!("quotient refutes {id} at {:?}", r.witness));
        }
        checked += 1;
    }
    for n in 1..=2u32 {
        for perm in permutations(n as usize) {
            let id = j_identity(n, &perm).map_err(|e| e.to_string())?;
            let r = satisfies(&m, &id);
            if !r.holds {
                return Err(format!("quotient refutes {id} at {:?}", r.witness));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "quotient on {} classes validates and satisfies all {checked} defining identities",
        m.size()
    ))
}

// 8. Balancing repair and Φ extraction on the pinned instances, with bounded
// interderivability both ways.
fn balance_and_phi() -> Result<String, String> {
    let o_basis = preset("O", 1).map_err(|e| e.to_string())?;
    let budget = SearchBudget::default();

    let balanced = well_balance(&identities::id_a()).map_err(|e| e.to_string())?;
    ensure(!balanced.used_d, "balancing ID-A must not need the stabilizer")?;
    ensure(
        identities::is_well_balanced(&balanced.identity).map_err(|e| e.to_string())?,
        "balancing ID-A output is not well-balanced",
    )?;
    // the repaired identity stays interderivable with the original
    let mut with_input = o_basis.clone();
    with_input.push(identities::id_a());
    for (from, to) in [
        (identities::id_a().lhs().clone(), balanced.identity.lhs().clone()),
        (balanced.identity.lhs().clone(), identities::id_a().lhs().clone()),
    ] {
        if !derivable(&from, &to, &with_input, &budget).is_derivable() {
            return Err(format!("{} -> {} not derivable within budget", render(&from), render(&to)));
        }
    }

    for (id, expected) in [
        (identities::id_c(), PhiMember::C),
        (family(FamilyKind::Alpha, 1).map_err(|e| e.to_string())?, PhiMember::Alpha(1)),
    ] {
        let phi = phi_basis(&id, 64).map_err(|e| e.to_string())?;
        ensure(
            phi.members == vec![expected],
            &format!("phi extraction of {id} gave {:?}", phi.members),
        )?;
        // emitted members are derivable from the input with the base pair,
        // and the input from the members
        let member = expected.to_identity();
        let mut from_input = o_basis.clone();
        from_input.push(id.clone());
        if !derivable(member.lhs(), member.rhs(), &from_input, &budget).is_derivable() {
            return Err(format!("{member} not derivable from the input {id}"));
        }
        let mut from_member = o_basis.clone();
        from_member.push(member.clone());
        if !derivable(id.lhs(), id.rhs(), &from_member, &budget).is_derivable() {
            return Err(format!("{id} not derivable from the member {member}"));
        }
    }
    Ok("balancing and phi extraction match the pinned instances; interderivability verified".to_string())
}

// 9. Later family members follow from the first one over the base pair.
fn family_monotonicity() -> Result<String, String> {
    let o_basis = preset("O", 1).map_err(|e| e.to_string())?;
    let budget = SearchBudget::default();
    for kind in [
        FamilyKind::Alpha,
        FamilyKind::Beta,
        FamilyKind::Gamma,
        FamilyKind::GammaPrime,
    ] {
        let smaller = family(kind, 1).map_err(|e| e.to_string())?;
        let larger = family(kind, 2).map_err(|e| e.to_string())?;
        let mut basis = o_basis.clone();
        basis.push(smaller);
        let verdict = derivable(larger.lhs(), larger.rhs(), &basis, &budget);
        if !verdict.is_derivable() {
            return Err(format!("{larger} not derivable from {kind}_1 with the base pair"));
        }
    }
    Ok("alpha_2, beta_2, gamma_2, gamma'_2 all follow from their first members".to_string())
}

// 10. Randomized word-machinery battery.
fn word_machinery() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(0x5eed_000a);
    let alphabet = ['x', 'y', 'z', 't', 'u'];
    let random_word = |rng: &mut StdRng, max_len: usize| -> Word {
        let len = rng.random_range(0..=max_len);
        (0..len)
            .map(|_| Letter::new(alphabet[rng.random_range(0..alphabet.len())]))
            .collect()
    };

    for round in 0..10_000 {
        let w = random_word(&mut rng, 12);
        let fail = |what: &str| Err(format!("round {round}, word {}: {what}", render(&w)));

        // decomposition reassembles and blocks avoid simple letters
        let d = decompose(&w);
        if d.reassemble() != w {
            return fail("decomposition does not reassemble");
        }
        let stats = letter_stats(&w);
        if d.blocks
            .iter()
            .any(|b| b.iter().any(|l| stats.simple.contains(l)))
        {
            return fail("a block contains a simple letter");
        }

        // divider indices are monotone in the occurrence index
        for &x in &stats.content {
            let mut last = 0usize;
            for i in 1..=stats.occ[&x] {
                let d = divider_query(&w, x, i).map_err(|e| e.to_string())?;
                if d.index < last {
                    return fail("divider index decreased");
                }
                last = d.index;
            }
        }

        // reduction: idempotent, reduced, type- and simple-preserving
        let r = reduce(&w);
        if !is_reduced(&r) || reduce(&r) != r {
            return fail("reduce not idempotent or not reduced");
        }
        if !same_type(&w, &r) || letter_stats(&r).simple != stats.simple {
            return fail("reduce changed the type or the simple letters");
        }

        // τ congruence spot-check
        let p = random_word(&mut rng, 4);
        let q = random_word(&mut rng, 4);
        if !tau_equiv(&p.concat(&w).concat(&q), &p.concat(&r).concat(&q)) {
            return fail("tau not a congruence on sampled context");
        }

        // projection is a homomorphism
        let keep: BTreeSet<Letter> = stats
            .content
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.5))
            .collect();
        let other = random_word(&mut rng, 6);
        let joint = project(&w.concat(&other), &keep);
        if joint != project(&w, &keep).concat(&project(&other, &keep)) {
            return fail("projection is not a homomorphism");
        }

        // reversal is an involution and dualizes decompositions
        if reverse(&reverse(&w)) != w {
            return fail("reversal is not an involution");
        }

        // per-block occurrence counts reassemble the word's counts
        for &x in &stats.multiple {
            let total: usize = d.blocks.iter().map(|b| occurrences(b, x)).sum();
            if total != stats.occ[&x] {
                return fail("block occurrence counts do not add up");
            }
        }
    }

    // claims structure smoke check on a known pair
    let claims = claims_check(&Identity::lit("xzxyxty", "xzyxty"));
    ensure(claims.all_hold(), "claims must hold on the base law")?;

    Ok("10000 random words pass the decomposition, reduction, τ and projection properties".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_cover_all_checks() {
        assert_eq!(check_names().len(), 10);
        let report = run_check(4);
        assert!(report.passed, "{}", report.line());
    }
}

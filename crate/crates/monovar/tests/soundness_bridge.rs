//! Cross-module soundness checks: derivations against monoid models and the
//! free-object oracle, separate derivability of join identities from each
//! preset, and interderivability of the reduction pipeline's inputs and
//! outputs.

use monovar::identities::{
    family, fve_holds, id_d, parse_identity, preset, resolve_handle, FamilyKind, Identity,
};
use monovar::monoids::{
    rees_quotient, satisfies, saturate_j_generator, tau_quotient, FiniteMonoid,
};
use monovar::reductions::well_balance;
use monovar::rewrite::{
    derivable, holds_in_variety, parse_trace, FreeObjectCaps, SearchBudget, VarietyVerdict,
};
use monovar::suite::golden_traces;
use monovar::words::Word;

fn model_family() -> Vec<(&'static str, FiniteMonoid)> {
    let (set, _) = saturate_j_generator(2, 2);
    vec![
        ("S(xyx)", rees_quotient(&[Word::lit("xyx")]).unwrap()),
        ("S(xzxyty)", rees_quotient(&[Word::lit("xzxyty")]).unwrap()),
        ("tau-quotient", tau_quotient(&set).unwrap()),
        (
            "trivial",
            FiniteMonoid::new(vec!["1".into()], 0, None, vec![vec![0]]),
        ),
    ]
}

// Whenever a model satisfies every identity a chain cites, it satisfies the
// chain's endpoints too.
#[test]
fn models_satisfying_a_basis_satisfy_derived_identities() {
    let models = model_family();
    let mut non_vacuous = 0usize;
    for (name, text, allowed_names) in golden_traces() {
        let parsed = parse_trace(text).unwrap();
        let allowed: Vec<Identity> = allowed_names
            .iter()
            .map(|handle| {
                parsed
                    .declared
                    .iter()
                    .find(|d| d.label() == Some(*handle))
                    .cloned()
                    .unwrap_or_else(|| resolve_handle(handle).unwrap())
            })
            .collect();
        let endpoints = Identity::new(parsed.trace.start.clone(), parsed.trace.end.clone());
        for (model_name, m) in &models {
            if allowed.iter().all(|id| satisfies(m, id).holds) {
                non_vacuous += 1;
                assert!(
                    satisfies(m, &endpoints).holds,
                    "{model_name} satisfies the basis of {name} but refutes {endpoints}"
                );
            }
        }
    }
    assert!(non_vacuous >= golden_traces().len(), "trivial model covers every chain");
}

// A found derivation implies the oracle agrees whenever it stabilizes.
#[test]
fn derivations_agree_with_the_free_object_oracle() {
    let caps = FreeObjectCaps {
        max_len: 8,
        ..FreeObjectCaps::default()
    };
    let budget = SearchBudget::default();
    let e_basis = preset("E", 1).unwrap();
    for (u, v) in [("xyx", "xyx^2"), ("x^3", "x^2"), ("xyzxy", "yxzxy")] {
        let (u, v) = (Word::lit(u), Word::lit(v));
        let found = derivable(&u, &v, &e_basis, &budget);
        assert!(found.is_derivable(), "{u} -> {v} over the E preset");
        let verdict = holds_in_variety(&Identity::new(u, v), &e_basis, &caps);
        assert_ne!(verdict, VarietyVerdict::Fails);
    }
}

// Identities passing the join decision are derivable from the F preset and
// from the E preset separately.
#[test]
fn join_identities_derive_from_both_presets() {
    let budget = SearchBudget::default();
    let f_basis = preset("F", 1).unwrap();
    let e_basis = preset("E", 1).unwrap();
    for (u, v) in [("xyzxy", "yxzxy"), ("xzxyxty", "xzyxty"), ("xyx", "xyx^2")] {
        let id = parse_identity(&format!("{u} == {v}")).unwrap();
        assert!(fve_holds(&id));
        let (u, v) = (Word::lit(u), Word::lit(v));
        assert!(
            derivable(&u, &v, &f_basis, &budget).is_derivable(),
            "{u} -> {v} over the F preset"
        );
        assert!(
            derivable(&u, &v, &e_basis, &budget).is_derivable(),
            "{u} -> {v} over the E preset"
        );
    }
}

// A balancing repair that appended a missing power is interderivable with
// its input once the stabilizer identity joins the basis.
#[test]
fn stabilized_repairs_are_interderivable() {
    let id = parse_identity("x^2 t1 y^2 t2 x == x^2 t1 x y^2 t2 x").unwrap();
    let repaired = well_balance(&id).unwrap();
    assert!(repaired.used_d);

    let mut basis = preset("O", 1).unwrap();
    basis.push(id.clone());
    basis.push(id_d());
    let budget = SearchBudget::default();
    for (from, to) in [
        (id.lhs().clone(), repaired.identity.lhs().clone()),
        (repaired.identity.lhs().clone(), id.lhs().clone()),
    ] {
        assert!(
            derivable(&from, &to, &basis, &budget).is_derivable(),
            "{from} -> {to} with the stabilizer adjoined"
        );
    }
}

// The second-family extraction instance is interderivable with its member.
#[test]
fn extracted_second_family_member_is_sound() {
    let instance = parse_identity("x y x t1 x t2 y == y x^2 t1 x t2 y").unwrap();
    let member = family(FamilyKind::Beta, 1).unwrap();
    let budget = SearchBudget::default();

    let mut from_instance = preset("O", 1).unwrap();
    from_instance.push(instance.clone());
    assert!(
        derivable(member.lhs(), member.rhs(), &from_instance, &budget).is_derivable(),
        "member from the instance"
    );

    let mut from_member = preset("O", 1).unwrap();
    from_member.push(member);
    assert!(
        derivable(instance.lhs(), instance.rhs(), &from_member, &budget).is_derivable(),
        "instance from the member"
    );
}

// Swaps the extraction absorbs without emitting a member really do follow
// from the base pair alone.
#[test]
fn absorbed_swaps_follow_from_the_base_pair() {
    let id = parse_identity("xyxy == yx^2y").unwrap();
    let phi = monovar::reductions::phi_basis(&id, 64).unwrap();
    assert!(phi.members.is_empty());
    let basis = preset("O", 1).unwrap();
    let budget = SearchBudget::default();
    assert!(derivable(id.lhs(), id.rhs(), &basis, &budget).is_derivable());
    assert!(derivable(id.rhs(), id.lhs(), &basis, &budget).is_derivable());
}

// A two-step extraction (absorbed swap, then a second-kind tail member) is
// interderivable with its output over the base pair.
#[test]
fn second_kind_extraction_is_sound() {
    let id = parse_identity("x^3 y t1 y == x y x^2 t1 y").unwrap();
    let phi = monovar::reductions::phi_basis(&id, 64).unwrap();
    let member = family(FamilyKind::GammaPrime, 1).unwrap();
    assert_eq!(phi.members.len(), 1);
    assert_eq!(phi.members[0].to_identity(), member);

    let budget = SearchBudget::default();
    let mut from_member = preset("O", 1).unwrap();
    from_member.push(member.clone());
    assert!(
        derivable(id.lhs(), id.rhs(), &from_member, &budget).is_derivable(),
        "instance from its member"
    );
    let mut from_instance = preset("O", 1).unwrap();
    from_instance.push(id.clone());
    assert!(
        derivable(member.lhs(), member.rhs(), &from_instance, &budget).is_derivable(),
        "member from its instance"
    );
}

// On small random well-balanced identities, the extraction's output plus the
// base pair derives the identity back within budget.
#[test]
fn random_small_extractions_are_sound() {
    use monovar::identities::swap_successors;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let mut rng = StdRng::seed_from_u64(0x5eed_0b0b);
    let letters = ['x', 'y', 'z'];
    let budget = SearchBudget::default();
    let mut checked = 0usize;
    while checked < 12 {
        let len = rng.random_range(4..=6);
        let u: Word = (0..len)
            .map(|_| monovar::words::Letter::new(letters[rng.random_range(0..letters.len())]))
            .collect();
        let mut v = u.clone();
        for _ in 0..rng.random_range(1..=2) {
            let successors = swap_successors(&v);
            if successors.is_empty() {
                break;
            }
            let pick = rng.random_range(0..successors.len());
            v = successors[pick].clone();
        }
        if u == v {
            continue;
        }
        let id = Identity::new(u.clone(), v.clone());
        let phi = monovar::reductions::phi_basis(&id, 1000).unwrap();
        let mut basis = preset("O", 1).unwrap();
        basis.extend(phi.members.iter().map(|m| m.to_identity()));
        assert!(
            derivable(&u, &v, &basis, &budget).is_derivable(),
            "{id} not derivable from the base pair plus {:?}",
            phi.members
        );
        checked += 1;
    }
}

// Later family members keep following from earlier ones beyond the first
// index.
#[test]
fn family_monotonicity_extends_to_higher_indices() {
    let budget = SearchBudget::default();
    for kind in [
        FamilyKind::Alpha,
        FamilyKind::Beta,
        FamilyKind::Gamma,
        FamilyKind::GammaPrime,
    ] {
        let smaller = family(kind, 2).unwrap();
        let larger = family(kind, 3).unwrap();
        let mut basis = preset("O", 1).unwrap();
        basis.push(smaller);
        assert!(
            derivable(larger.lhs(), larger.rhs(), &basis, &budget).is_derivable(),
            "{larger} from {kind}_2"
        );
    }
}

// The reduced-word quotient separates laws: it keeps its defining stock but
// refutes commutativity and the base pair's erasure law (via the identity
// substitution on the generator word), so the satisfaction checks in the
// battery are not vacuous.
#[test]
fn tau_quotient_refutes_what_it_should() {
    let (set, _) = saturate_j_generator(2, 2);
    let m = tau_quotient(&set).unwrap();
    assert!(!satisfies(&m, &parse_identity("xy == yx").unwrap()).holds);
    let erasure = resolve_handle("ID-E").unwrap();
    let refuted = satisfies(&m, &erasure);
    assert!(!refuted.holds);
    let witness = refuted.witness.unwrap();
    // the generator word's own letters witness the failure
    for (letter, index) in &witness {
        assert_eq!(m.element_name(*index), letter.to_string());
    }
}

// Reversing both sides of an identity corresponds to passing to the
// opposite monoid: M satisfies a law exactly when the transposed table
// satisfies its dual.
#[test]
fn duals_hold_in_opposite_monoids() {
    let m = rees_quotient(&[Word::lit("xzxyty")]).unwrap();
    let n = m.size();
    let mut transposed = vec![vec![0usize; n]; n];
    #[allow(clippy::needless_range_loop)]
    for a in 0..n {
        for b in 0..n {
            transposed[a][b] = m.mul(b, a);
        }
    }
    let opposite = FiniteMonoid::new(
        (0..n).map(|i| m.element_name(i).to_string()).collect(),
        m.identity,
        m.zero,
        transposed,
    );
    assert!(opposite.validate().is_empty());

    for handle in ["ID-A", "ID-C", "ID-E", "ID-F", "ID-H"] {
        let id = resolve_handle(handle).unwrap();
        assert_eq!(
            satisfies(&m, &id).holds,
            satisfies(&opposite, &id.dual()).holds,
            "{handle} vs its dual"
        );
    }
}

// Everything is immutable data, freely shareable across threads.
#[test]
fn core_types_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Word>();
    assert_send_sync::<Identity>();
    assert_send_sync::<FiniteMonoid>();
    assert_send_sync::<monovar::rewrite::DerivationTrace>();
    assert_send_sync::<monovar::words::Decomposition>();
}

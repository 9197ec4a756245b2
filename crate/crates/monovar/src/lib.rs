//! Equational reasoning for monoid varieties.
//!
//! The crate provides, bottom up:
//!
//! * [`words`] — combinatorics on words: parsing, letter statistics,
//!   projections, factors, divider/block decompositions with their divider
//!   queries, reversal, and the reduced normal form behind the congruence τ.
//! * [`identities`] — identities between words, the named presets (`K`, `Q`,
//!   `E`, `F`, `O`, `J`), the identity families, structural predicates
//!   (well-balanced, invertible) and the combinatorial decision procedure
//!   for the join variety F∨E.
//! * [`monoids`] — finite monoids as multiplication tables: Rees quotients
//!   `S(W)` of the free monoid, quotients by a word congruence (τ shipped),
//!   structural predicates (aperiodicity, commuting idempotents) and
//!   brute-force identity satisfaction.
//! * [`rewrite`] — substitutions, one-step identity application, checked
//!   derivation traces with a text format, bounded bidirectional derivation
//!   search, and a relatively free monoid oracle.
//! * [`reductions`] — balancing repair of join-variety identities, Φ-subset
//!   basis extraction, finite bases for subvarieties of the base variety,
//!   and bounded τ-rigidity counterexample search.
//! * [`suite`] — the self-check suite battery used by `monovar accept` and
//!   the acceptance tests.
//!
//! Every value is immutable; all operations are pure functions, freely
//! shareable across threads.
//!
//! The `monovar` binary exposes the same operations as subcommands; each
//! major capability also has a runnable example under `examples/`.

pub mod identities;
pub mod monoids;
pub mod reductions;
pub mod rewrite;
pub mod suite;
pub mod words;

pub use identities::{fve_holds, Identity};
pub use monoids::{rees_quotient, tau_quotient, FiniteMonoid};
pub use rewrite::{derivable, verify_trace, DerivationTrace, SearchBudget};
pub use words::{parse_word, reduce, Letter, ParseMode, Word};

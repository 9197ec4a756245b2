//! Command-line surface over the library: word analysis, the join-variety
//! decision, monoid construction and checking, derivation search, trace
//! verification, free objects, the reduction algorithms and the self-check
//! battery.
//!
//! Exit codes: 0 on success / property holds, 1 when a checked property is
//! false, 2 when a bounded search is exhausted (unknown), 3 on usage or
//! parse errors.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use monovar::identities::{
    claims_check, fve_holds, parse_identity, parse_identity_file, preset, resolve_handle, Claims,
    DividerClaim, Identity,
};
use monovar::monoids::{
    from_json, rees_quotient, satisfies, saturate_j_generator, tau_quotient, to_json,
    ElementSubstitution, FiniteMonoid,
};
use monovar::reductions::{
    phi_basis, subvariety_basis, tau_term_violation, well_balance, PhiError, SubvarietyError,
    TauWitnessBudget,
};
use monovar::rewrite::{
    derivable, free_object, holds_in_variety, parse_trace, render_trace, verify_trace,
    Derivability, DerivationTrace, FreeObjectCaps, SearchBudget, VarietyVerdict,
};
use monovar::words::{
    decompose, divider_query, last_divider, letter_stats, parse_word, parse_word_auto, reduce,
    render, reverse, DividerRef, Letter, ParseMode, Word,
};

const CACHE_ENV: &str = "MONOVAR_CACHE_DIR";

#[derive(Parser)]
#[command(name = "monovar", version, about = "equational reasoning for monoid varieties")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WordMode {
    Auto,
    Compact,
    Tokens,
}

#[derive(Subcommand)]
enum Command {
    /// Letter statistics, decomposition, divider queries and normal form of a word.
    Analyze {
        /// The word, e.g. "xzxyty" or "z1 x z1^2".
        word: String,
        #[arg(long, value_enum, default_value_t = WordMode::Auto)]
        mode: WordMode,
    },
    /// Decide whether identities hold in the join variety.
    Fve(IdentityInputs),
    /// Build the factor monoid S(w1, .., wk).
    Rees {
        /// Generating words.
        #[arg(required = true)]
        words: Vec<String>,
        /// Write the monoid table as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the reduced-word quotient monoid from the saturated generator set.
    TauRees {
        /// Saturation bounds "k,l".
        #[arg(long, default_value = "2,2")]
        saturate: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check identities against a finite monoid by exhaustive substitution.
    Check {
        /// Monoid: "S(w1,w2,..)", "Stau(saturate:k,l)", or a JSON file path.
        #[arg(long)]
        monoid: String,
        #[command(flatten)]
        identities: IdentityInputs,
    },
    /// Search for a derivation of one word from another over a basis.
    Derive {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the found trace in the trace text format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a derivation trace file.
    VerifyTrace {
        file: PathBuf,
        /// Restrict the allowed identities (handles or file-declared names).
        /// Defaults to the file's declarations plus the steps' identities.
        #[arg(long, value_delimiter = ',')]
        allow: Vec<String>,
    },
    /// Compute the relatively free monoid of a basis on a letter set.
    FreeObject {
        #[command(flatten)]
        basis: BasisArgs,
        /// Letters, e.g. "xy" or "x,y,z1".
        #[arg(long)]
        letters: String,
        #[arg(long, default_value_t = 9)]
        max_len: usize,
        #[arg(long, default_value_t = 20_000)]
        max_classes: usize,
        /// Also decide one identity in the variety.
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repair an identity of the join variety to a well-balanced one.
    Balance {
        #[arg(long)]
        id: String,
    },
    /// Extract the defining family members from a well-balanced identity.
    PhiBasis {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
    },
    /// Assemble a finite basis for the subvariety cut out by identities.
    SubvarietyBasis(IdentityInputs),
    /// Search for a word the monoid equates with a non-τ-equivalent one.
    TauWitness {
        #[arg(long)]
        word: String,
        #[arg(long)]
        monoid: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = 1)]
        extra_letters: usize,
    },
    /// List preset bases and identity handles, or expand one preset.
    Presets {
        name: Option<String>,
        /// Bound for the J preset's identity families.
        #[arg(long, default_value_t = 2)]
        j_bound: u32,
    },
    /// Run the self-check battery.
    Accept {
        /// Run a single numbered check.
        #[arg(long)]
        check: Option<usize>,
    },
}

#[derive(Args)]
struct IdentityInputs {
    /// Inline identity "u == v" (repeatable).
    #[arg(long = "id")]
    ids: Vec<String>,
    /// Symbolic handle such as ID-C, alpha_2, "J(2;2,1)" (repeatable).
    #[arg(long = "handle")]
    handles: Vec<String>,
    /// File with one identity per line.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct BasisArgs {
    /// Preset name (K, Q, E, F, O, J) or comma-separated handles.
    #[arg(long)]
    basis: Option<String>,
    /// File with one identity per line.
    #[arg(long)]
    basis_file: Option<PathBuf>,
    /// Bound for the J preset's identity families.
    #[arg(long, default_value_t = 2)]
    j_bound: u32,
}

#[derive(Args)]
struct BudgetArgs {
    /// Cap on intermediate word length (default: max endpoint length + 4).
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long, default_value_t = 10)]
    max_steps: usize,
    #[arg(long, default_value_t = 200_000)]
    max_states: usize,
    #[arg(long, default_value_t = 2)]
    free_image_len: usize,
}

impl BudgetArgs {
    fn to_budget(&self) -> SearchBudget {
        SearchBudget {
            max_word_len: self.max_len,
            max_steps: self.max_steps,
            max_states: self.max_states,
            free_image_len: self.free_image_len,
            ..SearchBudget::default()
        }
    }
}

/// Application-level failure: message plus exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn parse_word_mode(text: &str, mode: WordMode) -> Result<Word, Failure> {
    let parsed = match mode {
        WordMode::Auto => parse_word_auto(text),
        WordMode::Compact => parse_word(text, ParseMode::Compact),
        WordMode::Tokens => parse_word(text, ParseMode::Tokens),
    };
    parsed.map_err(|e| Failure::usage(format!("bad word {text:?}: {e}")))
}

impl IdentityInputs {
    fn collect(&self) -> Result<Vec<Identity>, Failure> {
        let mut out = Vec::new();
        for text in &self.ids {
            out.push(parse_identity(text).map_err(|e| Failure::usage(e.to_string()))?);
        }
        for handle in &self.handles {
            out.push(resolve_handle(handle).map_err(|e| Failure::usage(e.to_string()))?);
        }
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            out.extend(parse_identity_file(&text).map_err(|e| Failure::usage(e.to_string()))?);
        }
        if out.is_empty() {
            return Err(Failure::usage("no identities given (--id/--handle/--file)"));
        }
        Ok(out)
    }
}

impl BasisArgs {
    fn collect(&self) -> Result<Vec<Identity>, Failure> {
        if let Some(path) = &self.basis_file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            return parse_identity_file(&text).map_err(|e| Failure::usage(e.to_string()));
        }
        let Some(listing) = &self.basis else {
            return Err(Failure::usage("no basis given (--basis/--basis-file)"));
        };
        if let Ok(ids) = preset(listing, self.j_bound) {
            return Ok(ids);
        }
        let mut out = Vec::new();
        for part in listing.split(',') {
            let part = part.trim();
            let id = resolve_handle(part)
                .ok()
                .or_else(|| parse_identity(part).ok())
                .ok_or_else(|| Failure::usage(format!("unknown basis element {part:?}")))?;
            out.push(id);
        }
        Ok(out)
    }

    fn describe(&self) -> String {
        self.basis
            .clone()
            .or_else(|| self.basis_file.as_ref().map(|p| p.display().to_string()))
            .unwrap_or_default()
    }
}

/// Builds or loads a monoid from its constructor string, caching built
/// tables under `MONOVAR_CACHE_DIR` when that is set.
fn resolve_monoid(constructor: &str) -> Result<FiniteMonoid, Failure> {
    let cache_path = std::env::var_os(CACHE_ENV).map(|dir| {
        let sanitized: String = constructor
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        PathBuf::from(dir).join(format!("{sanitized}.json"))
    });
    if let Some(path) = &cache_path {
        if path.exists() {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            return from_json(&text).map_err(|e| Failure::usage(e.to_string()));
        }
    }

    let monoid = if let Some(body) = constructor.strip_prefix("S(").and_then(|s| s.strip_suffix(')')) {
        let words: Result<Vec<Word>, Failure> = body
            .split(',')
            .map(|w| parse_word_mode(w.trim(), WordMode::Auto))
            .collect();
        rees_quotient(&words?).map_err(|e| Failure::usage(e.to_string()))?
    } else if let Some(body) = constructor.strip_prefix("Stau(").and_then(|s| s.strip_suffix(')')) {
        let bounds = body
            .strip_prefix("saturate:")
            .ok_or_else(|| Failure::usage("expected Stau(saturate:k,l)"))?;
        let (k, l) = parse_pair(bounds)?;
        let (set, _) = saturate_j_generator(k, l);
        tau_quotient(&set).map_err(|e| Failure::usage(e.to_string()))?
    } else {
        let text = std::fs::read_to_string(constructor)
            .map_err(|e| Failure::usage(format!("{constructor}: {e}")))?;
        from_json(&text).map_err(|e| Failure::usage(e.to_string()))?
    };

    if let Some(path) = &cache_path {
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        std::fs::write(path, to_json(&monoid))
            .map_err(|e| Failure::usage(format!("writing cache: {e}")))?;
    }
    Ok(monoid)
}

fn parse_pair(text: &str) -> Result<(u32, u32), Failure> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| Failure::usage(format!("expected \"k,l\", got {text:?}")))?;
    let k = a
        .trim()
        .parse()
        .map_err(|e| Failure::usage(format!("bad bound: {e}")))?;
    let l = b
        .trim()
        .parse()
        .map_err(|e| Failure::usage(format!("bad bound: {e}")))?;
    Ok((k, l))
}

fn divider_json(d: &DividerRef) -> Value {
    match d.name {
        Some(l) => json!(l.to_string()),
        None => Value::Null,
    }
}

fn claims_json(claims: &Claims) -> Value {
    let layer = |items: &[DividerClaim]| -> Value {
        Value::Array(
            items
                .iter()
                .map(|c| {
                    json!({
                        "letter": c.letter.to_string(),
                        "lhs": divider_json(&c.lhs),
                        "rhs": divider_json(&c.rhs),
                        "agrees": c.agrees(),
                    })
                })
                .collect(),
        )
    };
    json!({
        "sim": claims.c_sim,
        "h1": layer(&claims.c_h1),
        "h2": layer(&claims.c_h2),
        "t": layer(&claims.c_t),
    })
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("json")),
        Format::Text => println!("{}", text()),
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Analyze { word, mode } => cmd_analyze(cli.format, word, *mode),
        Command::Fve(inputs) => cmd_fve(cli.format, inputs),
        Command::Rees { words, out } => cmd_rees(cli.format, words, out.as_deref()),
        Command::TauRees { saturate, out } => cmd_tau_rees(cli.format, saturate, out.as_deref()),
        Command::Check { monoid, identities } => cmd_check(cli.format, monoid, identities),
        Command::Derive {
            from,
            to,
            basis,
            budget,
            out,
        } => cmd_derive(cli.format, from, to, basis, budget, out.as_deref()),
        Command::VerifyTrace { file, allow } => cmd_verify_trace(cli.format, file, allow),
        Command::FreeObject {
            basis,
            letters,
            max_len,
            max_classes,
            id,
            out,
        } => cmd_free_object(
            cli.format,
            basis,
            letters,
            *max_len,
            *max_classes,
            id.as_deref(),
            out.as_deref(),
        ),
        Command::Balance { id } => cmd_balance(cli.format, id),
        Command::PhiBasis { id, max_steps } => cmd_phi_basis(cli.format, id, *max_steps),
        Command::SubvarietyBasis(inputs) => cmd_subvariety(cli.format, inputs),
        Command::TauWitness {
            word,
            monoid,
            max_len,
            extra_letters,
        } => cmd_tau_witness(cli.format, word, monoid, *max_len, *extra_letters),
        Command::Presets { name, j_bound } => cmd_presets(cli.format, name.as_deref(), *j_bound),
        Command::Accept { check } => cmd_accept(cli.format, *check),
    }
}

fn cmd_analyze(format: Format, word: &str, mode: WordMode) -> Result<u8, Failure> {
    let w = parse_word_mode(word, mode)?;
    let stats = letter_stats(&w);
    let d = decompose(&w);
    let mut queries = Vec::new();
    for &x in &stats.content {
        let h1 = divider_query(&w, x, 1).expect("x in content");
        let h2 = (stats.occ[&x] >= 2).then(|| divider_query(&w, x, 2).expect("occ >= 2"));
        let t = last_divider(&w, x).expect("x in content");
        queries.push((x, h1, h2, t));
    }
    let reduced = reduce(&w);

    let value = json!({
        "word": render(&w),
        "length": w.len(),
        "content": stats.content.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "simple": stats.simple.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "multiple": stats.multiple.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "occurrences": stats.occ.iter().map(|(l, n)| (l.to_string(), *n)).collect::<std::collections::BTreeMap<String, usize>>(),
        "dividers": d.dividers.iter().map(divider_json).collect::<Vec<_>>(),
        "blocks": d.blocks.iter().map(render).collect::<Vec<_>>(),
        "queries": queries.iter().map(|(x, h1, h2, t)| json!({
            "letter": x.to_string(),
            "h1": divider_json(h1),
            "h2": h2.as_ref().map(divider_json).unwrap_or(Value::Null),
            "t": divider_json(t),
        })).collect::<Vec<_>>(),
        "reduced": render(&reduced),
        "is_reduced": reduced == w,
        "reverse": render(&reverse(&w)),
    });
    emit(format, &value, || {
        let set = |letters: &BTreeSet<Letter>| {
            letters
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = String::new();
        out.push_str(&format!("word       {}\n", render(&w)));
        out.push_str(&format!("length     {}\n", w.len()));
        out.push_str(&format!("simple     {{{}}}\n", set(&stats.simple)));
        out.push_str(&format!("multiple   {{{}}}\n", set(&stats.multiple)));
        out.push_str("decomposition  ");
        for (divider, block) in d.dividers.iter().zip(&d.blocks) {
            out.push_str(&format!("[{divider}] {}  ", render(block)));
        }
        out.push('\n');
        for (x, h1, h2, t) in &queries {
            out.push_str(&format!(
                "letter {x}:  h1 = {h1}, h2 = {}, t = {t}\n",
                h2.map(|d| d.to_string()).unwrap_or_else(|| "-".to_string())
            ));
        }
        out.push_str(&format!("reduced    {}\n", render(&reduced)));
        out.push_str(&format!("reverse    {}", render(&reverse(&w))));
        out
    });
    Ok(0)
}

fn cmd_fve(format: Format, inputs: &IdentityInputs) -> Result<u8, Failure> {
    let ids = inputs.collect()?;
    let mut results = Vec::new();
    let mut all_hold = true;
    for id in &ids {
        let holds = fve_holds(id);
        all_hold &= holds;
        results.push((id, holds, claims_check(id)));
    }
    let value = json!({
        "results": results.iter().map(|(id, holds, claims)| json!({
            "identity": id.to_string(),
            "holds": holds,
            "trivial": id.is_trivial(),
            "claims": claims_json(claims),
        })).collect::<Vec<_>>(),
        "all_hold": all_hold,
    });
    emit(format, &value, || {
        results
            .iter()
            .map(|(id, holds, claims)| {
                let verdict = if *holds { "holds" } else { "fails" };
                let mut line = format!("{verdict}  {id}");
                if !holds {
                    if !claims.c_sim {
                        line.push_str("  (simple/multiple sets differ)");
                    } else if let Some(c) = claims
                        .c_h1
                        .iter()
                        .chain(&claims.c_h2)
                        .chain(&claims.c_t)
                        .find(|c| !c.agrees())
                    {
                        line.push_str(&format!(
                            "  (letter {} sees divider {} vs {})",
                            c.letter, c.lhs, c.rhs
                        ));
                    }
                }
                line
            })
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(if all_hold { 0 } else { 1 })
}

fn monoid_summary(m: &FiniteMonoid, constructor: &str) -> Value {
    json!({
        "constructor": constructor,
        "elements": m.size(),
        "identity": m.element_name(m.identity),
        "zero": m.zero.map(|z| m.element_name(z)),
        "aperiodic": m.is_aperiodic(),
        "idempotents": m.idempotents().iter().map(|&i| m.element_name(i)).collect::<Vec<_>>(),
        "idempotents_commute": m.idempotents_commute(),
        "valid": m.validate().is_empty(),
    })
}

fn write_monoid(m: &FiniteMonoid, out: Option<&std::path::Path>) -> Result<(), Failure> {
    if let Some(path) = out {
        std::fs::write(path, to_json(m))
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn summary_text(value: &Value) -> String {
    let show = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    [
        ("constructor", "constructor"),
        ("elements", "elements"),
        ("identity", "identity"),
        ("zero", "zero"),
        ("aperiodic", "aperiodic"),
        ("idempotents_commute", "idempotents commute"),
        ("valid", "table valid"),
    ]
    .iter()
    .map(|(key, label)| format!("{label:<20} {}", show(&value[key])))
    .collect::<Vec<_>>()
    .join("\n")
}

fn cmd_rees(format: Format, words: &[String], out: Option<&std::path::Path>) -> Result<u8, Failure> {
    let parsed: Result<Vec<Word>, Failure> = words
        .iter()
        .map(|w| parse_word_mode(w, WordMode::Auto))
        .collect();
    let parsed = parsed?;
    let m = rees_quotient(&parsed).map_err(|e| Failure::usage(e.to_string()))?;
    let constructor = format!(
        "S({})",
        parsed.iter().map(render).collect::<Vec<_>>().join(",")
    );
    write_monoid(&m, out)?;
    let value = monoid_summary(&m, &constructor);
    emit(format, &value, || summary_text(&value));
    Ok(0)
}

fn cmd_tau_rees(
    format: Format,
    saturate: &str,
    out: Option<&std::path::Path>,
) -> Result<u8, Failure> {
    let (k, l) = parse_pair(saturate)?;
    let (set, stabilized) = saturate_j_generator(k, l);
    let m = tau_quotient(&set).map_err(|e| Failure::usage(e.to_string()))?;
    let constructor = format!("Stau(saturate:{k},{l})");
    write_monoid(&m, out)?;
    let mut value = monoid_summary(&m, &constructor);
    value["saturation_stabilized"] = json!(stabilized);
    emit(format, &value, || {
        format!(
            "{}\nsaturation stabilized  {stabilized}",
            summary_text(&value)
        )
    });
    Ok(0)
}

fn cmd_check(format: Format, monoid: &str, inputs: &IdentityInputs) -> Result<u8, Failure> {
    let m = resolve_monoid(monoid)?;
    let ids = inputs.collect()?;
    let mut all_hold = true;
    let mut results = Vec::new();
    for id in &ids {
        let r = satisfies(&m, id);
        all_hold &= r.holds;
        results.push((id, r));
    }
    let value = json!({
        "monoid": monoid,
        "elements": m.size(),
        "results": results.iter().map(|(id, r)| json!({
            "identity": id.to_string(),
            "holds": r.holds,
            "witness": r.witness.as_ref().map(|w| substitution_json(&m, w)),
        })).collect::<Vec<_>>(),
        "all_hold": all_hold,
    });
    emit(format, &value, || {
        results
            .iter()
            .map(|(id, r)| {
                if r.holds {
                    format!("holds  {id}")
                } else {
                    format!(
                        "fails  {id}  (witness {})",
                        substitution_text(&m, r.witness.as_ref().expect("witness on failure"))
                    )
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(if all_hold { 0 } else { 1 })
}

fn substitution_json(m: &FiniteMonoid, sub: &ElementSubstitution) -> Value {
    Value::Object(
        sub.iter()
            .map(|(l, &e)| (l.to_string(), json!(m.element_name(e))))
            .collect(),
    )
}

fn substitution_text(m: &FiniteMonoid, sub: &ElementSubstitution) -> String {
    sub.iter()
        .map(|(l, &e)| format!("{l}->{}", m.element_name(e)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_derive(
    format: Format,
    from: &str,
    to: &str,
    basis: &BasisArgs,
    budget: &BudgetArgs,
    out: Option<&std::path::Path>,
) -> Result<u8, Failure> {
    let u = parse_word_mode(from, WordMode::Auto)?;
    let v = parse_word_mode(to, WordMode::Auto)?;
    let ids = basis.collect()?;
    match derivable(&u, &v, &ids, &budget.to_budget()) {
        Derivability::Derivable(trace) => {
            let words = trace.words().map_err(|e| Failure::usage(e.to_string()))?;
            let (relabelled, declared) = relabel_for_export(&trace, &ids);
            let text = render_trace(&relabelled, &declared);
            if let Some(path) = out {
                std::fs::write(path, &text)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            }
            let value = json!({
                "from": render(&u),
                "to": render(&v),
                "status": "derived",
                "steps": trace.len(),
                "words": words.iter().map(render).collect::<Vec<_>>(),
                "trace": text,
            });
            emit(format, &value, || {
                format!(
                    "derived in {} steps\n  {}",
                    trace.len(),
                    words.iter().map(render).collect::<Vec<_>>().join("\n  -> ")
                )
            });
            Ok(0)
        }
        Derivability::Unknown => {
            let value = json!({
                "from": render(&u),
                "to": render(&v),
                "status": "unknown",
            });
            emit(format, &value, || {
                "unknown: search budget exhausted without a derivation".to_string()
            });
            Ok(2)
        }
    }
}

/// Names every step identity after its basis entry so the exported trace
/// text refers to declared identities.
fn relabel_for_export(
    trace: &DerivationTrace,
    basis: &[Identity],
) -> (DerivationTrace, Vec<(String, Identity)>) {
    let declared: Vec<(String, Identity)> = basis
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let name = id.label().map(str::to_string).unwrap_or_else(|| format!("B{i}"));
            (name.clone(), id.clone().with_label(&name))
        })
        .collect();
    let steps = trace
        .steps
        .iter()
        .map(|s| {
            let mut step = s.clone();
            if let Some((name, _)) = declared.iter().find(|(_, id)| *id == step.identity) {
                step.identity = step.identity.with_label(name);
            }
            step
        })
        .collect();
    (
        DerivationTrace {
            start: trace.start.clone(),
            steps,
            end: trace.end.clone(),
        },
        declared,
    )
}

fn cmd_verify_trace(
    format: Format,
    file: &std::path::Path,
    allow: &[String],
) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
    let parsed = parse_trace(&text).map_err(|e| Failure::usage(e.to_string()))?;
    let allowed: Vec<Identity> = if allow.is_empty() {
        let mut ids = parsed.declared.clone();
        for step in &parsed.trace.steps {
            if !ids.contains(&step.identity) {
                ids.push(step.identity.clone());
            }
        }
        ids
    } else {
        let mut ids = Vec::new();
        for name in allow {
            let id = parsed
                .declared
                .iter()
                .find(|d| d.label() == Some(name.as_str()))
                .cloned()
                .or_else(|| resolve_handle(name).ok())
                .ok_or_else(|| Failure::usage(format!("unknown allowed identity {name:?}")))?;
            ids.push(id);
        }
        ids
    };
    let outcome = verify_trace(&parsed.trace, &allowed);
    let value = json!({
        "file": file.display().to_string(),
        "start": render(&parsed.trace.start),
        "end": render(&parsed.trace.end),
        "steps": parsed.trace.len(),
        "valid": outcome.is_ok(),
        "error": outcome.as_ref().err().map(|e| e.to_string()),
    });
    emit(format, &value, || match &outcome {
        Ok(()) => format!(
            "valid: {} -> {} in {} steps",
            render(&parsed.trace.start),
            render(&parsed.trace.end),
            parsed.trace.len()
        ),
        Err(e) => format!("invalid: {e}"),
    });
    Ok(if outcome.is_ok() { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_free_object(
    format: Format,
    basis: &BasisArgs,
    letters: &str,
    max_len: usize,
    max_classes: usize,
    id: Option<&str>,
    out: Option<&std::path::Path>,
) -> Result<u8, Failure> {
    let ids = basis.collect()?;
    let letter_set: BTreeSet<Letter> = if letters.contains([',', ' ']) {
        letters
            .split([',', ' '])
            .filter(|s| !s.is_empty())
            .map(|s| Letter::parse(s.trim()))
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::usage(e.to_string()))?
    } else {
        parse_word_mode(letters, WordMode::Auto)?.content()
    };
    let caps = FreeObjectCaps {
        max_len,
        max_classes,
        ..FreeObjectCaps::default()
    };
    let object = free_object(&ids, &letter_set, &caps);
    let verdict = id
        .map(|text| -> Result<(String, VarietyVerdict), Failure> {
            let id = parse_identity(text).map_err(|e| Failure::usage(e.to_string()))?;
            let verdict = if !object.stable {
                VarietyVerdict::Unknown
            } else if id.content().is_subset(&letter_set) {
                match (object.class_of(id.lhs()), object.class_of(id.rhs())) {
                    (Some(a), Some(b)) if a == b => VarietyVerdict::Holds,
                    (Some(_), Some(_)) => VarietyVerdict::Fails,
                    _ => VarietyVerdict::Unknown,
                }
            } else {
                holds_in_variety(&id, &ids, &caps)
            };
            Ok((id.to_string(), verdict))
        })
        .transpose()?;
    if let Some(m) = &object.monoid {
        write_monoid(m, out)?;
    }
    let value = json!({
        "basis": basis.describe(),
        "letters": letter_set.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "stable": object.stable,
        "classes": object.class_count,
        "identity_verdict": verdict
            .as_ref()
            .map(|(id, v)| json!({"identity": id, "verdict": v.to_string()})),
    });
    emit(format, &value, || {
        let mut line = format!(
            "free object on {{{}}}: {} ({} classes)",
            letter_set
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            if object.stable {
                "stable"
            } else {
                "did not stabilize"
            },
            object.class_count
        );
        if let Some((id, v)) = &verdict {
            line.push_str(&format!("\n{id}: {v}"));
        }
        line
    });
    match &verdict {
        Some((_, VarietyVerdict::Fails)) => Ok(1),
        Some((_, VarietyVerdict::Unknown)) => Ok(2),
        Some((_, VarietyVerdict::Holds)) => Ok(0),
        None => Ok(if object.stable { 0 } else { 2 }),
    }
}

fn cmd_balance(format: Format, id: &str) -> Result<u8, Failure> {
    let id = parse_identity(id).map_err(|e| Failure::usage(e.to_string()))?;
    match well_balance(&id) {
        Ok(result) => {
            let value = json!({
                "identity": id.to_string(),
                "balanced": result.identity.to_string(),
                "used_d": result.used_d,
                "trivial": result.identity.is_trivial(),
            });
            emit(format, &value, || {
                format!(
                    "balanced: {}\nstabilizer needed: {}",
                    result.identity, result.used_d
                )
            });
            Ok(0)
        }
        Err(e) => {
            let value = json!({
                "identity": id.to_string(),
                "error": e.to_string(),
            });
            emit(format, &value, || format!("cannot balance: {e}"));
            Ok(1)
        }
    }
}

fn cmd_phi_basis(format: Format, id: &str, max_steps: usize) -> Result<u8, Failure> {
    let id = parse_identity(id).map_err(|e| Failure::usage(e.to_string()))?;
    match phi_basis(&id, max_steps) {
        Ok(result) => {
            let value = json!({
                "identity": id.to_string(),
                "members": result.members.iter().map(|m| m.handle()).collect::<Vec<_>>(),
                "identities": result
                    .members
                    .iter()
                    .map(|m| m.to_identity().to_string())
                    .collect::<Vec<_>>(),
                "log": result.log.iter().map(|l| json!({
                    "case": l.case,
                    "mirrored": l.mirrored,
                    "block": l.block,
                    "swapped": [l.swapped.0.to_string(), l.swapped.1.to_string()],
                    "emitted": l.emitted.map(|m| m.handle()),
                })).collect::<Vec<_>>(),
            });
            emit(format, &value, || {
                let members = if result.members.is_empty() {
                    "(none: the identity already follows from the base pair)".to_string()
                } else {
                    result
                        .members
                        .iter()
                        .map(|m| format!("{m}  ({})", m.to_identity()))
                        .collect::<Vec<_>>()
                        .join("\n  ")
                };
                let log = result
                    .log
                    .iter()
                    .map(|l| {
                        format!(
                            "case {}  block {}  swap ({}, {}){}{}",
                            l.case,
                            l.block,
                            l.swapped.0,
                            l.swapped.1,
                            if l.mirrored { "  mirrored" } else { "" },
                            l.emitted.map(|m| format!("  -> {m}")).unwrap_or_default()
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n  ");
                format!("members:\n  {members}\nsteps:\n  {log}")
            });
            Ok(0)
        }
        Err(PhiError::Budget { partial }) => {
            let value = json!({
                "identity": id.to_string(),
                "status": "unknown",
                "partial": partial.iter().map(|m| m.handle()).collect::<Vec<_>>(),
            });
            emit(format, &value, || {
                format!(
                    "unknown: budget exhausted, partial members [{}]",
                    partial
                        .iter()
                        .map(|m| m.handle())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            });
            Ok(2)
        }
        Err(e) => {
            let value = json!({"identity": id.to_string(), "error": e.to_string()});
            emit(format, &value, || format!("error: {e}"));
            Ok(1)
        }
    }
}

fn cmd_subvariety(format: Format, inputs: &IdentityInputs) -> Result<u8, Failure> {
    let ids = inputs.collect()?;
    match subvariety_basis(&ids, 10_000) {
        Ok(result) => {
            let value = json!({
                "inputs": ids.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
                "used_d": result.used_d,
                "members": result.members.iter().map(|m| m.handle()).collect::<Vec<_>>(),
                "basis": result.identities.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
            });
            emit(format, &value, || {
                result
                    .identities
                    .iter()
                    .map(|i| format!("{:<10} {i}", i.label().unwrap_or("")))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(0)
        }
        Err(SubvarietyError::Phi(PhiError::Budget { partial })) => {
            let value = json!({
                "status": "unknown",
                "partial": partial.iter().map(|m| m.handle()).collect::<Vec<_>>(),
            });
            emit(format, &value, || "unknown: budget exhausted".to_string());
            Ok(2)
        }
        Err(e) => {
            let value = json!({"error": e.to_string()});
            emit(format, &value, || format!("error: {e}"));
            Ok(1)
        }
    }
}

fn cmd_tau_witness(
    format: Format,
    word: &str,
    monoid: &str,
    max_len: usize,
    extra_letters: usize,
) -> Result<u8, Failure> {
    let w = parse_word_mode(word, WordMode::Auto)?;
    let m = resolve_monoid(monoid)?;
    let alphabet_size = w.content().len() + extra_letters;
    let candidates = (alphabet_size as u64).saturating_pow(max_len as u32);
    if candidates > 20_000_000 {
        return Err(Failure::usage(format!(
            "budget enumerates about {candidates} candidate words; lower --max-len or --extra-letters"
        )));
    }
    let budget = TauWitnessBudget {
        max_len,
        extra_letters,
    };
    let witness = tau_term_violation(&w, &m, &budget);
    let value = json!({
        "word": render(&w),
        "monoid": monoid,
        "max_len": max_len,
        "witness": witness.as_ref().map(render),
    });
    emit(format, &value, || match &witness {
        Some(v) => format!(
            "witness: {} == {} holds in the monoid but the words are not τ-equivalent",
            render(&w),
            render(v)
        ),
        None => "none found within budget".to_string(),
    });
    Ok(if witness.is_some() { 0 } else { 2 })
}

fn cmd_presets(format: Format, name: Option<&str>, j_bound: u32) -> Result<u8, Failure> {
    let names = ["K", "Q", "E", "F", "O", "J"];
    match name {
        Some(name) => {
            let ids = preset(name, j_bound)
                .or_else(|_| resolve_handle(name).map(|id| vec![id]))
                .map_err(|e| Failure::usage(e.to_string()))?;
            let value = json!({
                "name": name,
                "identities": ids.iter().map(|i| json!({
                    "label": i.label(),
                    "identity": i.to_string(),
                })).collect::<Vec<_>>(),
            });
            emit(format, &value, || {
                ids.iter()
                    .map(|i| format!("{:<10} {i}", i.label().unwrap_or("")))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(0)
        }
        None => {
            let value = json!({
                "presets": names,
                "handles": monovar::identities::builtin_handles(),
                "families": ["alpha_n", "beta_n", "gamma_n", "gamma'_n", "J(n;p1,..,pn)"],
            });
            emit(format, &value, || {
                format!(
                    "presets:  {}\nhandles:  {}\nfamilies: alpha_n, beta_n, gamma_n, gamma'_n, J(n;p1,..,pn)",
                    names.join(", "),
                    monovar::identities::builtin_handles().join(", ")
                )
            });
            Ok(0)
        }
    }
}

fn cmd_accept(format: Format, check: Option<usize>) -> Result<u8, Failure> {
    let reports = match check {
        Some(n) => vec![monovar::suite::run_check(n)],
        None => monovar::suite::run_all(),
    };
    let all_passed = reports.iter().all(|r| r.passed);
    let value = json!({
        "reports": reports.iter().map(|r| json!({
            "number": r.number,
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
            "elapsed_ms": r.elapsed.as_millis() as u64,
        })).collect::<Vec<_>>(),
        "all_passed": all_passed,
    });
    emit(format, &value, || {
        reports
            .iter()
            .map(|r| r.line())
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(if all_passed { 0 } else { 1 })
}

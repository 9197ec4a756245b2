//! Word combinatorics: parsing, letter statistics, the divider/block
//! decomposition with its queries, reversal and the reduced normal form.
//!
//! Run with `cargo run --example word_analysis`.

use monovar::words::{
    decompose, divider_query, factors, last_divider, letter_stats, parse_word, project, reduce,
    render, reverse, same_type, tau_equiv, ParseMode, Word,
};

fn main() {
    // Two parse modes: compact (one char per letter, ^k for repetition) and
    // tokens (whitespace-separated names, allowing indexed letters like z1).
    let w = parse_word("xzxyty", ParseMode::Compact).unwrap();
    let indexed = parse_word("z1 x z1^2", ParseMode::Tokens).unwrap();
    println!("compact  {}", render(&w));
    println!("tokens   {}", render(&indexed));
    println!();

    let stats = letter_stats(&w);
    println!("content  {:?}", stats.content);
    println!("simple   {:?}   (letters occurring exactly once)", stats.simple);
    println!("multiple {:?}   (letters occurring at least twice)", stats.multiple);
    println!();

    // The decomposition interleaves dividers (the simple letters, after a
    // leading sentinel) with blocks over multiple letters.
    let d = decompose(&w);
    print!("decomposition of {}:  ", render(&w));
    for (divider, block) in d.dividers.iter().zip(&d.blocks) {
        print!("[{divider}] {}  ", render(block));
    }
    println!("\n");

    // h_i(w, x) is the right-most divider before the i-th occurrence of x;
    // t(w, x) the one before the last occurrence.
    for x in stats.content.iter().copied() {
        let h1 = divider_query(&w, x, 1).unwrap();
        let t = last_divider(&w, x).unwrap();
        match divider_query(&w, x, 2) {
            Ok(h2) => println!("{x}:  h1 = {h1}, h2 = {h2}, t = {t}"),
            Err(_) => println!("{x}:  h1 = {h1}, t = {t}"),
        }
    }
    println!();

    // Projections keep a subset of letters; factors are contiguous.
    let keep = Word::lit("xy").content();
    println!("project({}, {{x, y}}) = {}", render(&w), render(&project(&w, &keep)));
    println!("factors(xyx) = {:?}", factors(&Word::lit("xyx")));
    println!("reverse({}) = {}", render(&w), render(&reverse(&w)));
    println!();

    // The reduced form rewrites every maximal power to a single letter,
    // except a letter's first power, which keeps the "repeated immediately"
    // bit as a square.
    for text in ["x^3", "xzyx^3ty^2", "xzyxty"] {
        let word = Word::lit(text);
        println!("reduce({}) = {}", render(&word), render(&reduce(&word)));
    }
    println!();

    // τ identifies words with equal reduced forms; same_type compares power
    // patterns ignoring exponents (except first-power adjacency).
    println!("tau_equiv(x^3, x^2) = {}", tau_equiv(&Word::lit("x^3"), &Word::lit("x^2")));
    println!("tau_equiv(x^2, x)   = {}", tau_equiv(&Word::lit("x^2"), &Word::lit("x")));
    println!(
        "same_type(xy^4xz^3x^5y, xy^3x^4z^2x^2y^2) = {}",
        same_type(&Word::lit("xy^4xz^3x^5y"), &Word::lit("xy^3x^4z^2x^2y^2"))
    );
}

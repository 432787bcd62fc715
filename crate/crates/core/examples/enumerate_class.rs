//! Bounded enumeration of the class, level by level, with the invariant
//! check applied to every emitted link.
//!
//! Run with `cargo run --example enumerate_class -- [depth] [max_pq]`.

use knotflow::wada::{check_invariants, enumerate, Caps, Enumerator};

pub fn main() {
    let mut args = std::env::args().skip(1);
    let depth = args.next().and_then(|a| a.parse().ok()).unwrap_or(2);
    let max_pq = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    run(depth, max_pq);
}

pub fn run(depth: usize, max_pq: i64) {
    let caps = Caps::new(max_pq, Some(4));

    let e = enumerate(depth, &caps);
    for (d, level) in e.levels.iter().enumerate() {
        println!("depth {d}: {} links", level.len());
    }
    let failing = e
        .terms()
        .filter(|t| !check_invariants(t.link()).all_pass())
        .count();
    println!("{} links, {failing} failing the invariants", e.len());

    let most_knotted = e
        .terms()
        .max_by_key(|t| t.link().len() - t.link().unknot_count())
        .expect("enumeration is never empty");
    println!(
        "most knotted components: {most_knotted}\n  {}",
        most_knotted.link()
    );

    println!("\nfirst links of the stream:");
    for (t, link) in Enumerator::new(depth, caps).take(5) {
        println!("  {link}  <=  {t}");
    }
}

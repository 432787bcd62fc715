//! Building indexed links with Wada's moves, reading off their components,
//! and printing membership certificates.
//!
//! Run with `cargo run --example wada_moves`.

use knotflow::wada::{check_invariants, derivation, split_components, LinkTerm, MorseIndex};

fn show(label: &str, t: &LinkTerm) {
    println!("{label}: {t}");
    println!("  link  {}", t.link());
    let comps: Vec<String> = t
        .link()
        .components()
        .iter()
        .map(|c| format!("{c}:{}", c.origin))
        .collect();
    println!("  comps {}", comps.join(" "));
}

pub fn main() {
    let hopf = LinkTerm::hopf();
    show("O", &hopf);

    let split = LinkTerm::move_i(&hopf, &hopf);
    show("I", &split);
    println!("  split parts {:?}", split_components(&split).parts);

    let twisted = LinkTerm::move_vi(&hopf, 0, 3).unwrap();
    show("VI", &twisted);

    let cabled = LinkTerm::move_v(&twisted, 2, 3, 2, MorseIndex::Zero, MorseIndex::Two).unwrap();
    show("V", &cabled);

    let summed = LinkTerm::move_iv(&cabled, 4, &twisted, 2, MorseIndex::Zero).unwrap();
    show("IV", &summed);
    println!("\n{}", check_invariants(summed.link()));

    println!("\ncertificate: {}", derivation(&summed).summary());
    print!("{}", derivation(&twisted).detailed());

    // the same link, written as text
    let parsed = LinkTerm::parse("(VI (hopf) #0 3)").unwrap();
    assert_eq!(parsed, twisted);

    for bad in [
        "(V (hopf) #1 2 3 0 0)",
        "(VI (hopf) #0 4)",
        "(III (hopf) #1 (hopf) #1)",
    ] {
        match LinkTerm::parse(bad) {
            Ok(t) => println!("unexpectedly valid: {t}"),
            Err(e) => println!("rejected {bad}\n  {e}"),
        }
    }
}

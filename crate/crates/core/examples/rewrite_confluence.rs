//! The canonical form as the fixed point of a rewrite system: different
//! redex-selection strategies reach the same normal form.
//!
//! Run with `cargo run --example rewrite_confluence`.

use knotflow::knot::{self, rewrite, KnotExpr};

fn trace(k: &KnotExpr, mut choose: impl FnMut(&[rewrite::Redex]) -> usize) -> KnotExpr {
    let mut current = k.clone();
    loop {
        let rs = rewrite::redexes(&current);
        if rs.is_empty() {
            return current;
        }
        let r = &rs[choose(&rs)];
        current = rewrite::rewrite_at(current, r);
        println!("  {:<14} at {:?} => {current}", r.rule.to_string(), r.path);
    }
}

pub fn main() {
    let k =
        KnotExpr::parse("(sum (cab -5 2 U) (sum U (cab 1 4 (cab 3 -2 U))) (cab 0 1 (cab 2 3 U)))")
            .unwrap();
    println!("input: {k}");
    println!("redexes: {}", rewrite::redexes(&k).len());

    println!("\nfirst redex each time:");
    let first = trace(&k, |_| 0);
    println!("\nlast redex each time:");
    let last = trace(&k, |rs| rs.len() - 1);

    let direct = knot::canonicalize(&k).unwrap();
    println!("\nnormal forms: {first} | {last} | canonicalize: {direct}");
    assert_eq!(first, direct);
    assert_eq!(last, direct);
}

//! Canonical forms, equality, primality and genus for zero-entropy knots.
//!
//! Run with `cargo run --example knot_algebra`.

use knotflow::knot::{self, KnotExpr};

pub fn main() {
    let inputs = [
        "(cab 1 5 (cab 2 3 U))",
        "(sum U (cab 3 2 U))",
        "(cab -2 -3 U)",
        "(cab 2 1 U)",
        "(sum (cab 2 5 U) (sum (cab 2 3 U) U))",
        "(cab 2 7 (cab 2 3 U))",
    ];
    for s in inputs {
        let k = KnotExpr::parse(s).expect("example input parses");
        let c = knot::canonicalize(&k).expect("example input is well formed");
        println!(
            "{s:<42} -> {c:<30} genus {} prime {}",
            knot::genus(&c).unwrap(),
            knot::is_prime(&c).unwrap()
        );
    }

    let trefoil = KnotExpr::torus(2, 3);
    let cinquefoil = KnotExpr::torus(2, 5);
    let granny = knot::connected_sum(&trefoil, &trefoil).unwrap();
    println!(
        "\ntrefoil # trefoil = {granny}, unknot? {}",
        knot::is_unknot(&granny).unwrap()
    );

    let composite = knot::connected_sum(&cinquefoil, &granny).unwrap();
    let factors = knot::prime_factors(&composite).unwrap();
    let listed: Vec<String> = factors.iter().map(ToString::to_string).collect();
    println!("{composite} factors as [{}]", listed.join(", "));
    println!("rebuilt: {}", knot::sum_of(&factors).unwrap());

    let cabled = knot::cable(2, 5, &granny).unwrap();
    println!("{cabled} is prime: {}", knot::is_prime(&cabled).unwrap());

    match knot::cable(2, 4, &trefoil) {
        Ok(k) => println!("unexpected: {k}"),
        Err(e) => println!("cable(2, 4, trefoil): {e}"),
    }
    println!(
        "equal: {}",
        knot::equals(&KnotExpr::parse("(cab 1 9 (cab 3 2 U))").unwrap(), &trefoil).unwrap()
    );
}

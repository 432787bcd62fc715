//! Round-handle decompositions from stratified critical sets: the pair of
//! (2,2n+1) torus knots bounding Möbius bands, and a hand-made set with an
//! annulus.
//!
//! Run with `cargo run --example seifert_rhd -- [n]`.

use knotflow::knot::KnotExpr;
use knotflow::rhd::{
    build_rhd, cores_link, seifert_example, Circle, ExteriorTorus, StratifiedSet, TwoStratum,
};
use knotflow::wada::check_invariants;

pub fn main() {
    run(std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(1));
}

pub fn run(n: u32) {
    let set = seifert_example(n).unwrap();
    println!("{set}");
    print!("{}", set.validate().unwrap());

    let plan = build_rhd(&set).unwrap();
    println!("{plan}");
    let cores = cores_link(&plan).unwrap();
    println!("cores: {cores}");
    println!("{}", check_invariants(&cores));

    // two unknotted circles joined by an annulus, plus a trefoil bounding a band
    // whose core is itself a trefoil
    let trefoil = KnotExpr::torus(2, 3);
    let custom = StratifiedSet::new(
        vec![
            Circle {
                knot: KnotExpr::Unknot,
            },
            Circle {
                knot: KnotExpr::Unknot,
            },
            Circle {
                knot: KnotExpr::cable_of(2, 5, trefoil.clone()),
            },
        ],
        vec![
            TwoStratum::Annulus { ends: [0, 1] },
            TwoStratum::Mobius {
                end: 2,
                boundary_cable_q: 5,
                core: None,
            },
        ],
        vec![ExteriorTorus {
            core_knot: KnotExpr::Unknot,
            adjacent: vec![],
        }],
    );
    let plan = build_rhd(&custom).unwrap();
    println!("\n{plan}");
    println!("cores: {}", cores_link(&plan).unwrap());

    let mut with_torus = custom.clone();
    with_torus.two_strata.push(TwoStratum::Torus);
    println!(
        "\nwith a critical torus: {}",
        build_rhd(&with_torus).unwrap_err()
    );
}

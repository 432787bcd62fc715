#![allow(dead_code)]

pub mod alexander;
pub mod schema;

use knotflow::knot;
use knotflow::rhd::{Circle, ExteriorTorus, StratifiedSet, TwoStratum};
use knotflow::KnotExpr;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coprime_pair<R: Rng>(rng: &mut R, max: i64) -> (i64, i64) {
    loop {
        let p = rng.gen_range(-max..=max);
        let q = rng.gen_range(-max..=max);
        if knot::gcd(p, q) == 1 {
            return (p, q);
        }
    }
}

/// A well-formed, generally non-canonical tree of depth at most `depth` with
/// cable parameters in `[-max, max]`. Trivial cables, nested sums and unknot
/// factors all occur.
pub fn random_knot<R: Rng>(rng: &mut R, depth: usize, max: i64) -> KnotExpr {
    if depth == 0 || rng.gen_bool(0.2) {
        return KnotExpr::Unknot;
    }
    if rng.gen_bool(0.6) {
        let (p, q) = coprime_pair(rng, max);
        KnotExpr::cable_of(p, q, random_knot(rng, depth - 1, max))
    } else {
        let n = rng.gen_range(2..=3);
        KnotExpr::Sum((0..n).map(|_| random_knot(rng, depth - 1, max)).collect())
    }
}

pub fn random_canonical_knot<R: Rng>(rng: &mut R, depth: usize, max: i64) -> KnotExpr {
    knot::canonicalize(&random_knot(rng, depth, max)).unwrap()
}

/// Proptest strategy for well-formed raw trees.
pub fn knot_strategy(depth: u32, max: i64) -> impl Strategy<Value = KnotExpr> {
    let leaf = Just(KnotExpr::Unknot);
    leaf.prop_recursive(depth, 64, 3, move |inner| {
        prop_oneof![
            ((-max..=max), (-max..=max), inner.clone())
                .prop_filter("coprime", |(p, q, _)| knot::gcd(*p, *q) == 1)
                .prop_map(|(p, q, k)| KnotExpr::cable_of(p, q, k)),
            prop::collection::vec(inner, 2..4).prop_map(KnotExpr::Sum),
        ]
    })
}

/// A valid, torus-free stratification whose every piece is adjacent to some
/// exterior torus. Pieces are either a ring of circles of one knot type
/// joined by annuli, or a single circle bounding one or more Möbius bands.
pub fn random_stratification<R: Rng>(rng: &mut R) -> StratifiedSet {
    let mut circles = Vec::new();
    let mut strata = Vec::new();
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let start = circles.len();
        if rng.gen_bool(0.5) {
            let core = random_canonical_knot(rng, 2, 5);
            // an unknotted (2,±1)-cable boundary does not determine its core
            let low = if core == KnotExpr::Unknot { 1 } else { 0 };
            let q = 2 * rng.gen_range(low..4) + 1;
            let boundary = knot::cable(2, q, &core).unwrap();
            circles.push(Circle { knot: boundary });
            for _ in 0..rng.gen_range(1..=2) {
                strata.push(TwoStratum::Mobius {
                    end: start,
                    boundary_cable_q: if rng.gen_bool(0.5) { q } else { -q },
                    core: rng.gen_bool(0.5).then(|| core.clone()),
                });
            }
        } else {
            let k = random_knot(rng, 2, 5);
            let n = rng.gen_range(1..=3);
            for _ in 0..n {
                circles.push(Circle { knot: k.clone() });
            }
            for i in 0..n {
                strata.push(TwoStratum::Annulus {
                    ends: [start + i, start + (i + 1) % n],
                });
            }
        }
        pieces.push((start..circles.len()).collect());
    }
    strata.shuffle(rng);
    let exteriors = rng.gen_range(1..=3);
    let mut tori: Vec<ExteriorTorus> = (0..exteriors)
        .map(|_| ExteriorTorus {
            core_knot: random_knot(rng, 2, 5),
            adjacent: vec![],
        })
        .collect();
    if rng.gen_bool(0.7) {
        for piece in &pieces {
            let t = rng.gen_range(0..exteriors);
            let c = piece[rng.gen_range(0..piece.len())];
            tori[t].adjacent.push(c);
        }
        // an exterior with no adjacency would mean "all"; give it one
        for t in tori.iter_mut().filter(|t| t.adjacent.is_empty()) {
            t.adjacent.push(rng.gen_range(0..circles.len()));
        }
    }
    StratifiedSet::new(circles, strata, tori)
}

//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::alexander::{self, AlexanderOracle};
use common::{random_canonical_knot, random_knot, random_stratification, rng};
use knotflow::knot::{self, rewrite, KnotExpr};
use knotflow::rhd::{build_rhd, cores_link, mobius_core_knot, seifert_example, TwoStratum};
use knotflow::wada::{check_invariants, enumerate, Caps, MorseIndex};
use rand::Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn unknot_pair_and_index_presence() -> (Verdict, Verdict) {
    let start = Instant::now();
    let e = enumerate(3, &Caps::new(5, Some(4)));
    let elapsed = start.elapsed();
    let total = e.len();
    let reports: Vec<_> = e.terms().map(|t| check_invariants(t.link())).collect();
    let pairs = reports.iter().filter(|r| r.unknot_pair()).count();
    let present = reports.iter().filter(|r| r.index_presence()).count();
    let in_time = elapsed < Duration::from_secs(60);
    (
        Verdict {
            pass: pairs == total && total > 0 && !e.truncated && in_time,
            detail: format!(
                "{pairs}/{total} links have >= 2 unknotted components (depth 3, p,q <= 5, branch 4; {} < 60 s)",
                secs(elapsed)
            ),
        },
        Verdict {
            pass: present == total && total > 0,
            detail: format!("{present}/{total} links have index-0 and index-2 components"),
        },
    )
}

fn canonicalization() -> Verdict {
    let start = Instant::now();
    let mut r = rng(1001);
    let n = 10_000;
    let mut agree = 0;
    for _ in 0..n {
        let raw = random_knot(&mut r, 6, 9);
        let c = knot::canonicalize(&raw).unwrap();
        let mut pick = rng(r.gen());
        let by_rules =
            rewrite::normalize_with(&raw, |redexes| pick.gen_range(0..redexes.len())).unwrap();
        if knot::canonicalize(&c).unwrap() == c && by_rules == c {
            agree += 1;
        }
    }
    let elapsed = start.elapsed();
    Verdict {
        pass: agree == n && elapsed < Duration::from_secs(10),
        detail: format!(
            "{agree}/{n} trees idempotent and confluent under random rule order (depth <= 6, |p|,|q| <= 9; {} < 10 s)",
            secs(elapsed)
        ),
    }
}

fn torus_genus() -> Verdict {
    let mut oracle = AlexanderOracle::default();
    let (mut checked, mut matched) = (0, 0);
    for p in 2..=7usize {
        for q in p..=7usize {
            if knot::gcd(p as i64, q as i64) != 1 {
                continue;
            }
            checked += 1;
            let t = KnotExpr::torus(p as i64, q as i64);
            let formula = knot::genus(&t).unwrap();
            let word = alexander::torus_braid(p, q);
            if formula == oracle.genus(&t) && formula == alexander::braid_seifert_genus(p, &word) {
                matched += 1;
            }
        }
    }
    Verdict {
        pass: matched == checked,
        detail: format!("{matched}/{checked} torus knots T(p,q), 2 <= p <= q <= 7, match the Alexander-degree and Seifert oracles"),
    }
}

fn factorization() -> Verdict {
    let mut r = rng(1002);
    let n = 10_000;
    let (mut rebuilt, mut cables, mut prime_cables) = (0, 0, 0);
    for _ in 0..n {
        let c = random_canonical_knot(&mut r, 6, 9);
        let factors = knot::prime_factors(&c).unwrap();
        if knot::sum_of(&factors).unwrap() == c {
            rebuilt += 1;
        }
        for f in factors.iter().chain(std::iter::once(&c)) {
            if matches!(f, KnotExpr::Cable { .. }) {
                cables += 1;
                prime_cables += usize::from(knot::is_prime(f).unwrap());
            }
        }
    }
    Verdict {
        pass: rebuilt == n && prime_cables == cables,
        detail: format!("{rebuilt}/{n} knots rebuilt from their factors; {prime_cables}/{cables} cable nodes prime"),
    }
}

fn mobius_cores() -> Verdict {
    let mut ok = 0;
    for n in 1..=10u32 {
        let s = seifert_example(n).unwrap();
        let t = KnotExpr::torus(2, 2 * n as i64 + 1);
        let boundaries_ok = s.one_strata.len() == 2 && s.one_strata.iter().all(|c| c.knot == t);
        let cores_ok = s
            .one_strata
            .iter()
            .all(|c| mobius_core_knot(&c.knot) == Ok(KnotExpr::Unknot));
        let plan_ok = build_rhd(&s).is_ok_and(|p| {
            p.handles
                .iter()
                .filter(|h| h.index == MorseIndex::One)
                .all(|h| h.core_knot == KnotExpr::Unknot)
        });
        ok += usize::from(boundaries_ok && cores_ok && plan_ok && s.validate().is_ok());
    }
    Verdict {
        pass: ok == 10,
        detail: format!(
            "{ok}/10 examples n = 1..10 have boundaries T(2,2n+1) with unknotted band cores"
        ),
    }
}

fn rhd_structure() -> Verdict {
    let mut r = rng(1003);
    let n = 100;
    let mut ok = 0;
    for _ in 0..n {
        let s = random_stratification(&mut r);
        let Ok(plan) = build_rhd(&s) else { continue };
        let bands = s
            .two_strata
            .iter()
            .filter(|t| !matches!(t, TwoStratum::Torus))
            .count();
        let counts = plan.handle_counts() == [s.one_strata.len(), bands, s.exterior_tori.len()];
        let ordered = plan.handles.windows(2).all(|w| w[0].index <= w[1].index)
            && plan
                .handles
                .iter()
                .enumerate()
                .all(|(i, h)| h.attachments.iter().all(|&a| a < i));
        let histogram =
            cores_link(&plan).is_ok_and(|l| l.index_histogram() == plan.handle_counts());
        ok += usize::from(counts && ordered && histogram && plan.validate().is_ok());
    }
    Verdict {
        pass: ok == n,
        detail: format!("{ok}/{n} random torus-free stratifications give ordered plans with matching counts and core histograms"),
    }
}

fn determinism() -> Verdict {
    let args = [
        "knotflow",
        "enumerate",
        "--depth",
        "3",
        "--max-pq",
        "5",
        "--max-branch",
        "4",
    ];
    let a = knotflow::cli::run(args);
    let b = knotflow::cli::run(args);
    Verdict {
        pass: a.code == 0 && a.stdout == b.stdout && !a.stdout.is_empty(),
        detail: format!(
            "two enumerate runs, {} bytes each, byte-identical: {}",
            a.stdout.len(),
            a.stdout == b.stdout
        ),
    }
}

fn main() {
    let (pair, presence) = unknot_pair_and_index_presence();
    let results = [
        ("unknot pair", pair),
        ("index presence", presence),
        ("canonicalization", canonicalization()),
        ("torus genus oracle", torus_genus()),
        ("prime factorization", factorization()),
        ("Möbius core extraction", mobius_cores()),
        ("RHD structure", rhd_structure()),
        ("determinism", determinism()),
    ];
    let mut failed = 0;
    for (name, v) in &results {
        println!(
            "{} {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    println!(
        "acceptance: {}/{} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

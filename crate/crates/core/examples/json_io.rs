//! JSON documents: indexed links, stratified sets and round-handle plans,
//! each tagged with a versioned schema name.
//!
//! Run with `cargo run --example json_io`.

use knotflow::rhd::{build_rhd, seifert_example, RhdPlan, StratifiedSet};
use knotflow::wada::{IndexedLink, LinkTerm};

pub fn main() {
    let term = LinkTerm::parse("(I (VI (hopf) #0 3) (hopf))").unwrap();
    let json = term.link().to_json();
    println!("{json}");
    assert_eq!(&IndexedLink::from_json(&json).unwrap(), term.link());

    let set = seifert_example(1).unwrap();
    let set_json = set.to_json();
    println!("{set_json}");
    assert_eq!(StratifiedSet::from_json(&set_json).unwrap(), set);

    let plan = build_rhd(&set).unwrap();
    let plan_json = plan.to_json();
    assert_eq!(RhdPlan::from_json(&plan_json).unwrap(), plan);
    println!(
        "plan: {} bytes, {} handles",
        plan_json.len(),
        plan.handles.len()
    );

    let wrong = set_json.replace("stratified-set/v1", "stratified-set/v0");
    println!(
        "old schema: {}",
        StratifiedSet::from_json(&wrong).unwrap_err()
    );
}

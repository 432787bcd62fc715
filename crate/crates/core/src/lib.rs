//! Zero-entropy knot algebra, Wada's indexed-link grammar and round-handle
//! decompositions built from stratified critical sets.
//!
//! Knots are written as s-expressions: `U`, `(cab p q K)`, `(sum K1 K2 ...)`.
//! Link terms use `(hopf)`, `(I t1 t2)`, `(II t1 t2 #n)`, `(III t1 #n t2 #m)`,
//! `(IV t1 #n t2 #m idx)`, `(V t #n p q idx idx)` and `(VI t #n q)`.

pub mod cli;
pub mod knot;
pub mod rhd;
pub mod sexpr;
pub mod wada;

pub use knot::{KnotError, KnotExpr};
pub use rhd::{build_rhd, cores_link, seifert_example, RhdError, RhdPlan, StratifiedSet};
pub use wada::{
    check_invariants, enumerate, Caps, IndexedComponent, IndexedLink, LinkTerm, MorseIndex,
};

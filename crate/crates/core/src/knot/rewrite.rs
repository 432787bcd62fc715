//! Single-step rewrite rules for knot trees.
//!
//! [`canonicalize`](super::canonicalize) computes the normal form in one
//! bottom-up pass. This module exposes the same normal form as a rewrite
//! system so that any redex-selection strategy can be run to a fixed point
//! and compared against it.

use std::fmt;

use super::{KnotError, KnotExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `(cab ±1 q K) -> K`
    Longitude,
    /// `(cab 0 ±1 K) -> U`
    Meridian,
    /// `(cab p q K) -> (cab |p| |q| K)`
    Mirror,
    /// `(cab p q U) -> U` when `min(|p|, |q|) <= 1`
    TrivialTorus,
    /// `(cab p q U) -> (cab q p U)` when `p > q >= 0`
    TorusSwap,
    /// Splice the nested sum at this factor position.
    Flatten(usize),
    /// Drop the unknot at this factor position.
    DropUnit(usize),
    /// `(sum K) -> K`
    Singleton,
    /// Swap the out-of-order factors at positions `i` and `i + 1`.
    Swap(usize),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Longitude => f.write_str("longitude"),
            Rule::Meridian => f.write_str("meridian"),
            Rule::Mirror => f.write_str("mirror"),
            Rule::TrivialTorus => f.write_str("trivial-torus"),
            Rule::TorusSwap => f.write_str("torus-swap"),
            Rule::Flatten(i) => write!(f, "flatten@{i}"),
            Rule::DropUnit(i) => write!(f, "drop-unit@{i}"),
            Rule::Singleton => f.write_str("singleton"),
            Rule::Swap(i) => write!(f, "swap@{i}"),
        }
    }
}

/// A rule together with the path (child indices from the root) it applies at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub path: Vec<usize>,
    pub rule: Rule,
}

fn node_rules(k: &KnotExpr, out: &mut Vec<Rule>) {
    match k {
        KnotExpr::Unknot => {}
        KnotExpr::Cable { p, q, companion } => {
            if p.abs() == 1 {
                out.push(Rule::Longitude);
            }
            if *p == 0 && q.abs() == 1 {
                out.push(Rule::Meridian);
            }
            if *p < 0 || *q < 0 {
                out.push(Rule::Mirror);
            }
            if **companion == KnotExpr::Unknot {
                if p.abs().min(q.abs()) <= 1 {
                    out.push(Rule::TrivialTorus);
                }
                if p > q && *q >= 0 {
                    out.push(Rule::TorusSwap);
                }
            }
        }
        KnotExpr::Sum(factors) => {
            for (i, f) in factors.iter().enumerate() {
                match f {
                    KnotExpr::Sum(_) => out.push(Rule::Flatten(i)),
                    KnotExpr::Unknot if factors.len() >= 2 => out.push(Rule::DropUnit(i)),
                    _ => {}
                }
            }
            if factors.len() == 1 {
                out.push(Rule::Singleton);
            }
            for i in 0..factors.len().saturating_sub(1) {
                if factors[i] > factors[i + 1] {
                    out.push(Rule::Swap(i));
                }
            }
        }
    }
}

/// Every applicable rewrite, in pre-order.
pub fn redexes(k: &KnotExpr) -> Vec<Redex> {
    fn walk(k: &KnotExpr, path: &mut Vec<usize>, out: &mut Vec<Redex>) {
        let mut rules = Vec::new();
        node_rules(k, &mut rules);
        out.extend(rules.into_iter().map(|rule| Redex {
            path: path.clone(),
            rule,
        }));
        match k {
            KnotExpr::Unknot => {}
            KnotExpr::Cable { companion, .. } => {
                path.push(0);
                walk(companion, path, out);
                path.pop();
            }
            KnotExpr::Sum(factors) => {
                for (i, f) in factors.iter().enumerate() {
                    path.push(i);
                    walk(f, path, out);
                    path.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(k, &mut Vec::new(), &mut out);
    out
}

fn apply_rule(k: KnotExpr, rule: Rule) -> KnotExpr {
    match (k, rule) {
        (KnotExpr::Cable { companion, .. }, Rule::Longitude) => *companion,
        (KnotExpr::Cable { .. }, Rule::Meridian | Rule::TrivialTorus) => KnotExpr::Unknot,
        (KnotExpr::Cable { p, q, companion }, Rule::Mirror) => KnotExpr::Cable {
            p: p.abs(),
            q: q.abs(),
            companion,
        },
        (KnotExpr::Cable { p, q, companion }, Rule::TorusSwap) => KnotExpr::Cable {
            p: q,
            q: p,
            companion,
        },
        (KnotExpr::Sum(mut factors), Rule::Flatten(i)) => {
            let KnotExpr::Sum(inner) = factors.remove(i) else {
                panic!("flatten redex on a non-sum factor");
            };
            factors.splice(i..i, inner);
            KnotExpr::Sum(factors)
        }
        (KnotExpr::Sum(mut factors), Rule::DropUnit(i)) => {
            factors.remove(i);
            KnotExpr::Sum(factors)
        }
        (KnotExpr::Sum(mut factors), Rule::Singleton) => factors.pop().expect("singleton sum"),
        (KnotExpr::Sum(mut factors), Rule::Swap(i)) => {
            factors.swap(i, i + 1);
            KnotExpr::Sum(factors)
        }
        (node, rule) => panic!("rule {rule} does not apply to {node}"),
    }
}

/// Applies one redex. Panics if the redex does not match `k`.
pub fn rewrite_at(k: KnotExpr, redex: &Redex) -> KnotExpr {
    fn go(k: KnotExpr, path: &[usize], rule: Rule) -> KnotExpr {
        let Some((&first, rest)) = path.split_first() else {
            return apply_rule(k, rule);
        };
        match k {
            KnotExpr::Cable { p, q, companion } => KnotExpr::Cable {
                p,
                q,
                companion: Box::new(go(*companion, rest, rule)),
            },
            KnotExpr::Sum(mut factors) => {
                let child = std::mem::replace(&mut factors[first], KnotExpr::Unknot);
                factors[first] = go(child, rest, rule);
                KnotExpr::Sum(factors)
            }
            KnotExpr::Unknot => panic!("redex path descends into the unknot"),
        }
    }
    go(k, &redex.path, redex.rule)
}

/// Rewrites to a fixed point. `choose` picks which of the current redexes
/// fires next and must return an index into the slice it is given.
pub fn normalize_with<F>(k: &KnotExpr, mut choose: F) -> Result<KnotExpr, KnotError>
where
    F: FnMut(&[Redex]) -> usize,
{
    k.validate()?;
    let mut current = k.clone();
    loop {
        let rs = redexes(&current);
        if rs.is_empty() {
            return Ok(current);
        }
        let pick = choose(&rs);
        current = rewrite_at(current, &rs[pick]);
    }
}

/// Leftmost-outermost strategy.
pub fn normalize(k: &KnotExpr) -> Result<KnotExpr, KnotError> {
    normalize_with(k, |_| 0)
}

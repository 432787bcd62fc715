//! Breadth-first enumeration of a finite fragment of the class.
//!
//! Level `d` holds the terms of derivation depth `d`: a unary move (V, VI)
//! applied to a level `d-1` term, or a binary move (I-IV) combining a level
//! `d-1` term with any retained term of depth `< d`. Links are deduplicated
//! by [`LinkKey`] across all levels; the first derivation found is kept.
//!
//! With a branching cap `b`, each parent keeps at most `b` fresh links per
//! axiom, taking candidates in generation order. Parents are expanded in
//! parallel and each level is then sorted by key and deduplicated, so the
//! output does not depend on thread scheduling.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;

use super::term::{LinkTerm, Move, Selector};
use super::{IndexedLink, LinkKey, MorseIndex};
use crate::knot::gcd;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Smallest move V longitudinal parameter; 2 keeps cables essential.
    pub min_p: i64,
    pub max_p: i64,
    /// Largest `q` for moves V and VI.
    pub max_q: i64,
    /// Fresh links kept per parent and axiom; `None` keeps all.
    pub max_branch: Option<usize>,
    /// Stop after this many links in total.
    pub max_terms: Option<usize>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            min_p: 2,
            max_p: 3,
            max_q: 3,
            max_branch: Some(4),
            max_terms: None,
        }
    }
}

impl Caps {
    /// `p, q <= max_pq` with the given branching cap.
    pub fn new(max_pq: i64, max_branch: Option<usize>) -> Caps {
        Caps {
            max_p: max_pq,
            max_q: max_pq,
            max_branch,
            ..Caps::default()
        }
    }
}

/// Distinct choices of a component satisfying `keep`. Components with the
/// same knot, index and split part give identical results, so only the first
/// of each is offered.
fn selectors(link: &IndexedLink, keep: impl Fn(MorseIndex) -> bool) -> Vec<Selector> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for (i, c) in link.components().iter().enumerate() {
        if !keep(c.index) {
            continue;
        }
        let sig = (&c.knot, c.index, link.part_of(i));
        if !seen.contains(&sig) {
            seen.push(sig);
            out.push(Selector(i));
        }
    }
    out
}

fn extremal(i: MorseIndex) -> bool {
    i.is_extremal()
}

/// All moves of one axiom that use `t` at the current depth, in a fixed order.
fn candidates<'a>(
    axiom: usize,
    t: &'a LinkTerm,
    pool: &'a [LinkTerm],
    caps: &'a Caps,
) -> Box<dyn Iterator<Item = Move> + 'a> {
    match axiom {
        0 => Box::new(pool.iter().map(move |s| Move::I {
            l1: t.clone(),
            l2: s.clone(),
        })),
        1 => Box::new(pool.iter().flat_map(move |s| {
            let left = selectors(s.link(), extremal)
                .into_iter()
                .map(move |k2| Move::II {
                    l1: t.clone(),
                    l2: s.clone(),
                    k2,
                });
            let right = selectors(t.link(), extremal)
                .into_iter()
                .map(move |k2| Move::II {
                    l1: s.clone(),
                    l2: t.clone(),
                    k2,
                });
            left.chain(right)
        })),
        2 => Box::new(pool.iter().flat_map(move |s| {
            let zero = |i: MorseIndex| i == MorseIndex::Zero;
            let two = |i: MorseIndex| i == MorseIndex::Two;
            let mut out = Vec::new();
            for k1 in selectors(t.link(), zero) {
                for k2 in selectors(s.link(), two) {
                    out.push(Move::III {
                        l1: t.clone(),
                        k1,
                        l2: s.clone(),
                        k2,
                    });
                }
            }
            for k1 in selectors(s.link(), zero) {
                for k2 in selectors(t.link(), two) {
                    out.push(Move::III {
                        l1: s.clone(),
                        k1,
                        l2: t.clone(),
                        k2,
                    });
                }
            }
            out
        })),
        3 => Box::new(pool.iter().flat_map(move |s| {
            let mut out = Vec::new();
            for k1 in selectors(t.link(), extremal) {
                for k2 in selectors(s.link(), extremal) {
                    let i1 = t.link().components()[k1.0].index;
                    let i2 = s.link().components()[k2.0].index;
                    let merged = if i1 == i2 { vec![i1] } else { vec![i1, i2] };
                    for m in merged {
                        out.push(Move::IV {
                            l1: t.clone(),
                            k1,
                            l2: s.clone(),
                            k2,
                            merged: m,
                        });
                    }
                }
            }
            out
        })),
        4 => {
            let mut out = Vec::new();
            for k in selectors(t.link(), extremal) {
                let i = t.link().components()[k.0].index;
                let o = i.opposite();
                for p in caps.min_p.max(0)..=caps.max_p {
                    for q in 1..=caps.max_q {
                        if gcd(p, q) != 1 {
                            continue;
                        }
                        for (k1_index, k3_index) in [(i, i), (i, o), (o, i)] {
                            out.push(Move::V {
                                l: t.clone(),
                                k,
                                p,
                                q,
                                k1_index,
                                k3_index,
                            });
                        }
                    }
                }
            }
            Box::new(out.into_iter())
        }
        _ => {
            let mut out = Vec::new();
            for k in selectors(t.link(), extremal) {
                for q in (1..=caps.max_q).filter(|q| q % 2 == 1) {
                    out.push(Move::VI { l: t.clone(), k, q });
                }
            }
            Box::new(out.into_iter())
        }
    }
}

fn expand(
    t: &LinkTerm,
    pool: &[LinkTerm],
    seen: &HashSet<LinkKey>,
    caps: &Caps,
) -> Vec<(LinkKey, LinkTerm)> {
    let mut out = Vec::new();
    let mut local: HashSet<LinkKey> = HashSet::new();
    for axiom in 0..6 {
        let mut kept = 0;
        for mv in candidates(axiom, t, pool, caps) {
            if caps.max_branch.is_some_and(|b| kept >= b) {
                break;
            }
            let child =
                LinkTerm::apply(mv).expect("enumerated moves satisfy their side conditions");
            let key = child.link().key();
            if seen.contains(&key) || !local.insert(key.clone()) {
                continue;
            }
            kept += 1;
            out.push((key, child));
        }
    }
    out
}

/// Lazy, deterministic stream of `(term, link)` pairs, level by level.
pub struct Enumerator {
    caps: Caps,
    max_depth: usize,
    next_depth: usize,
    seen: HashSet<LinkKey>,
    pool: Vec<LinkTerm>,
    frontier: Vec<LinkTerm>,
    pending: VecDeque<LinkTerm>,
    emitted: usize,
    truncated: bool,
}

impl Enumerator {
    pub fn new(max_depth: usize, caps: Caps) -> Enumerator {
        Enumerator {
            caps,
            max_depth,
            next_depth: 0,
            seen: HashSet::new(),
            pool: Vec::new(),
            frontier: Vec::new(),
            pending: VecDeque::new(),
            emitted: 0,
            truncated: false,
        }
    }

    /// Whether `max_terms` cut the stream short.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn next_level(&mut self) -> Vec<LinkTerm> {
        if self.next_depth == 0 {
            return vec![LinkTerm::hopf()];
        }
        let pool = &self.pool;
        let seen = &self.seen;
        let caps = &self.caps;
        let mut level: Vec<(LinkKey, LinkTerm)> = self
            .frontier
            .par_iter()
            .map(|t| expand(t, pool, seen, caps))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        // stable: among equal keys the earliest parent's term survives
        level.sort_by(|a, b| a.0.cmp(&b.0));
        level.dedup_by(|b, a| a.0 == b.0);
        level.into_iter().map(|(_, t)| t).collect()
    }
}

impl Iterator for Enumerator {
    type Item = (LinkTerm, IndexedLink);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(t) = self.pending.pop_front() {
                if self.caps.max_terms.is_some_and(|m| self.emitted >= m) {
                    self.truncated = true;
                    self.pending.clear();
                    return None;
                }
                self.emitted += 1;
                let link = t.link().clone();
                return Some((t, link));
            }
            if self.next_depth > self.max_depth || self.truncated {
                return None;
            }
            let level = self.next_level();
            self.next_depth += 1;
            for t in &level {
                self.seen.insert(t.link().key());
            }
            self.pool.extend(level.iter().cloned());
            self.frontier = level.clone();
            if level.is_empty() {
                self.next_depth = self.max_depth + 1;
            }
            self.pending.extend(level);
        }
    }
}

/// Materialized enumeration, one vector per depth.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub levels: Vec<Vec<LinkTerm>>,
    pub truncated: bool,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn terms(&self) -> impl Iterator<Item = &LinkTerm> {
        self.levels.iter().flatten()
    }

    /// One line per link: `depth <TAB> canonical link <TAB> derivation term`,
    /// in emission order (by depth, then by link).
    pub fn snapshot(&self) -> String {
        let mut out = String::new();
        for (d, level) in self.levels.iter().enumerate() {
            for t in level {
                out.push_str(&format!("{d}\t{}\t{t}\n", t.link()));
            }
        }
        if self.truncated {
            out.push_str("# truncated\n");
        }
        out
    }
}

pub fn enumerate(depth: usize, caps: &Caps) -> Enumeration {
    let mut e = Enumerator::new(depth, caps.clone());
    let mut levels: Vec<Vec<LinkTerm>> = vec![Vec::new(); depth + 1];
    for (t, _) in e.by_ref() {
        levels[t.depth()].push(t);
    }
    while levels.len() > 1 && levels.last().is_some_and(Vec::is_empty) {
        levels.pop();
    }
    Enumeration {
        levels,
        truncated: e.truncated(),
    }
}

//! Derivation terms over Wada's moves O-VI.
//!
//! # Text syntax
//!
//! ```text
//! term := "(hopf)"
//!       | "(I"   term term ")"
//!       | "(II"  term term sel ")"
//!       | "(III" term sel term sel ")"
//!       | "(IV"  term sel term sel idx ")"
//!       | "(V"   term sel INT INT idx idx ")"
//!       | "(VI"  term sel INT ")"
//! sel  := "#" N     ; 0-based position in the sorted component list
//! idx  := "0" | "1" | "2"
//! ```
//!
//! Selectors refer to the operand printed immediately before them. Moves are
//! validated while the term is built, so every [`LinkTerm`] value is a member
//! of the class.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{IndexedComponent, IndexedLink, MorseIndex};
use crate::knot::{self, gcd, KnotExpr};
use crate::sexpr::{self, Location, ParseError, Sexp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    O,
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::O => "O",
            Axiom::I => "I",
            Axiom::II => "II",
            Axiom::III => "III",
            Axiom::IV => "IV",
            Axiom::V => "V",
            Axiom::VI => "VI",
        })
    }
}

/// Position of a component in an operand's sorted component list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Selector(pub usize);

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Side conditions of the moves. Each maps to exactly one axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    SelectorInRange,
    RemovedIndexExtremal,
    FirstIndexZero,
    SecondIndexTwo,
    SummandsExtremal,
    MergedIndexShared,
    ReplacedIndexExtremal,
    CableCoprime,
    NewIndicesExtremal,
    OneIndexKept,
    CabledIndexExtremal,
    OddTwist,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::SelectorInRange => "selector must address a component of its operand",
            Condition::RemovedIndexExtremal => "K2 must be indexed by 0 or 2",
            Condition::FirstIndexZero => "K1 must have index 0",
            Condition::SecondIndexTwo => "K2 must have index 2",
            Condition::SummandsExtremal => "K1 and K2 must each have index 0 or 2",
            Condition::MergedIndexShared => "K1 # K2 must share the index of either K1 or K2",
            Condition::ReplacedIndexExtremal => "K must be indexed by 0 or 2",
            Condition::CableCoprime => "p and q must be coprime for the cables to be knots",
            Condition::NewIndicesExtremal => "the indices of K1 and K3 must be either 0 or 2",
            Condition::OneIndexKept => "at least one of them must be equal to the index of K",
            Condition::CabledIndexExtremal => "K must be indexed by 0 or 2",
            Condition::OddTwist => "q must be odd for the (2,q)-cable to be a knot",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("axiom {axiom}: {condition} ({detail})")]
pub struct MoveError {
    pub axiom: Axiom,
    pub condition: Condition,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{error} at {location}: `{snippet}`")]
    Move {
        error: MoveError,
        location: Location,
        snippet: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lint {
    pub axiom: Axiom,
    pub message: String,
}

impl fmt::Display for Lint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "warning: axiom {}: {}", self.axiom, self.message)
    }
}

/// One move application; operands are complete terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Hopf,
    I {
        l1: LinkTerm,
        l2: LinkTerm,
    },
    II {
        l1: LinkTerm,
        l2: LinkTerm,
        k2: Selector,
    },
    III {
        l1: LinkTerm,
        k1: Selector,
        l2: LinkTerm,
        k2: Selector,
    },
    IV {
        l1: LinkTerm,
        k1: Selector,
        l2: LinkTerm,
        k2: Selector,
        merged: MorseIndex,
    },
    V {
        l: LinkTerm,
        k: Selector,
        p: i64,
        q: i64,
        k1_index: MorseIndex,
        k3_index: MorseIndex,
    },
    VI {
        l: LinkTerm,
        k: Selector,
        q: i64,
    },
}

impl Move {
    pub fn axiom(&self) -> Axiom {
        match self {
            Move::Hopf => Axiom::O,
            Move::I { .. } => Axiom::I,
            Move::II { .. } => Axiom::II,
            Move::III { .. } => Axiom::III,
            Move::IV { .. } => Axiom::IV,
            Move::V { .. } => Axiom::V,
            Move::VI { .. } => Axiom::VI,
        }
    }

    pub fn operands(&self) -> Vec<&LinkTerm> {
        match self {
            Move::Hopf => vec![],
            Move::I { l1, l2 }
            | Move::II { l1, l2, .. }
            | Move::III { l1, l2, .. }
            | Move::IV { l1, l2, .. } => vec![l1, l2],
            Move::V { l, .. } | Move::VI { l, .. } => vec![l],
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Node {
    mv: Move,
    link: IndexedLink,
    depth: usize,
}

/// A validated derivation. Cloning is cheap; subterms are shared.
#[derive(Clone, Debug)]
pub struct LinkTerm(Arc<Node>);

impl PartialEq for LinkTerm {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for LinkTerm {}

fn unknot(index: MorseIndex, origin: &str) -> IndexedComponent {
    IndexedComponent::new(KnotExpr::Unknot, index, origin)
}

fn fail(axiom: Axiom, condition: Condition, detail: impl Into<String>) -> MoveError {
    MoveError {
        axiom,
        condition,
        detail: detail.into(),
    }
}

fn pick<'a>(
    axiom: Axiom,
    term: &'a LinkTerm,
    sel: Selector,
    name: &str,
) -> Result<&'a IndexedComponent, MoveError> {
    term.link().get(sel).ok_or_else(|| {
        fail(
            axiom,
            Condition::SelectorInRange,
            format!(
                "{name} = {sel}, operand has {} components",
                term.link().len()
            ),
        )
    })
}

/// Labelled components of `term` without position `skip`, with part labels shifted.
fn rest(term: &LinkTerm, skip: Option<usize>, shift: usize) -> Vec<(IndexedComponent, usize)> {
    term.link()
        .labelled()
        .enumerate()
        .filter(|(i, _)| Some(*i) != skip)
        .map(|(_, (c, p))| (c, p + shift))
        .collect()
}

fn build(mv: &Move) -> Result<IndexedLink, MoveError> {
    let ax = mv.axiom();
    let link = match mv {
        Move::Hopf => IndexedLink::assemble(vec![
            (unknot(MorseIndex::Zero, "hopf"), 0),
            (unknot(MorseIndex::Two, "hopf"), 0),
        ]),
        Move::I { l1, l2 } => {
            let shift = l1.link().part_count();
            let u = shift + l2.link().part_count();
            let mut items = rest(l1, None, 0);
            items.extend(rest(l2, None, shift));
            items.push((unknot(MorseIndex::One, "u"), u));
            IndexedLink::assemble(items)
        }
        Move::II { l1, l2, k2 } => {
            let c2 = pick(ax, l2, *k2, "K2")?;
            if !c2.index.is_extremal() {
                return Err(fail(
                    ax,
                    Condition::RemovedIndexExtremal,
                    format!("K2 = {c2}"),
                ));
            }
            let shift = l1.link().part_count();
            let u = shift + l2.link().part_count();
            let mut items = rest(l1, None, 0);
            items.extend(rest(l2, Some(k2.0), shift));
            items.push((unknot(MorseIndex::One, "u"), u));
            IndexedLink::assemble(items)
        }
        Move::III { l1, k1, l2, k2 } => {
            let c1 = pick(ax, l1, *k1, "K1")?;
            let c2 = pick(ax, l2, *k2, "K2")?;
            if c1.index != MorseIndex::Zero {
                return Err(fail(ax, Condition::FirstIndexZero, format!("K1 = {c1}")));
            }
            if c2.index != MorseIndex::Two {
                return Err(fail(ax, Condition::SecondIndexTwo, format!("K2 = {c2}")));
            }
            let shift = l1.link().part_count();
            let u = shift + l2.link().part_count();
            let mut items = rest(l1, Some(k1.0), 0);
            items.extend(rest(l2, Some(k2.0), shift));
            items.push((unknot(MorseIndex::One, "u"), u));
            IndexedLink::assemble(items)
        }
        Move::IV {
            l1,
            k1,
            l2,
            k2,
            merged,
        } => {
            let c1 = pick(ax, l1, *k1, "K1")?;
            let c2 = pick(ax, l2, *k2, "K2")?;
            if !c1.index.is_extremal() || !c2.index.is_extremal() {
                return Err(fail(
                    ax,
                    Condition::SummandsExtremal,
                    format!("K1 = {c1}, K2 = {c2}"),
                ));
            }
            if *merged != c1.index && *merged != c2.index {
                return Err(fail(
                    ax,
                    Condition::MergedIndexShared,
                    format!("K1 = {c1}, K2 = {c2}, merged index {merged}"),
                ));
            }
            let shift = l1.link().part_count();
            let joined = l1.link().part_of(k1.0);
            let absorbed = l2.link().part_of(k2.0) + shift;
            let sum = knot::connected_sum(&c1.knot, &c2.knot).expect("components are canonical");
            let mut items = rest(l1, Some(k1.0), 0);
            items.extend(
                rest(l2, Some(k2.0), shift)
                    .into_iter()
                    .map(|(c, p)| (c, if p == absorbed { joined } else { p })),
            );
            items.push((IndexedComponent::new(sum, *merged, "sum"), joined));
            items.push((unknot(MorseIndex::One, "meridian"), joined));
            IndexedLink::assemble(items)
        }
        Move::V {
            l,
            k,
            p,
            q,
            k1_index,
            k3_index,
        } => {
            let c = pick(ax, l, *k, "K")?;
            if !c.index.is_extremal() {
                return Err(fail(
                    ax,
                    Condition::ReplacedIndexExtremal,
                    format!("K = {c}"),
                ));
            }
            if gcd(*p, *q) != 1 {
                return Err(fail(
                    ax,
                    Condition::CableCoprime,
                    format!("p = {p}, q = {q}"),
                ));
            }
            if !k1_index.is_extremal() || !k3_index.is_extremal() {
                return Err(fail(
                    ax,
                    Condition::NewIndicesExtremal,
                    format!("K1 index {k1_index}, K3 index {k3_index}"),
                ));
            }
            if *k1_index != c.index && *k3_index != c.index {
                return Err(fail(
                    ax,
                    Condition::OneIndexKept,
                    format!("K = {c}, K1 index {k1_index}, K3 index {k3_index}"),
                ));
            }
            let part = l.link().part_of(k.0);
            let cabled = knot::cable(*p, *q, &c.knot).expect("coprime cable of a canonical knot");
            let mut items = rest(l, Some(k.0), 0);
            items.push((
                IndexedComponent::new(c.knot.clone(), *k1_index, "core"),
                part,
            ));
            items.push((
                IndexedComponent::new(cabled.clone(), MorseIndex::One, "cable-K2"),
                part,
            ));
            items.push((IndexedComponent::new(cabled, *k3_index, "cable-K3"), part));
            IndexedLink::assemble(items)
        }
        Move::VI { l, k, q } => {
            let c = pick(ax, l, *k, "K")?;
            if !c.index.is_extremal() {
                return Err(fail(ax, Condition::CabledIndexExtremal, format!("K = {c}")));
            }
            if q % 2 == 0 {
                return Err(fail(ax, Condition::OddTwist, format!("q = {q}")));
            }
            let part = l.link().part_of(k.0);
            let cabled = knot::cable(2, *q, &c.knot).expect("odd q is coprime to 2");
            let mut items: Vec<(IndexedComponent, usize)> = l.link().labelled().collect();
            items[k.0].0.index = MorseIndex::One;
            items.push((IndexedComponent::new(cabled, c.index, "cable-2q"), part));
            IndexedLink::assemble(items)
        }
    };
    Ok(link)
}

impl LinkTerm {
    /// Validates the move's side conditions and computes the resulting link.
    pub fn apply(mv: Move) -> Result<LinkTerm, MoveError> {
        let link = build(&mv)?;
        let depth = mv
            .operands()
            .iter()
            .map(|t| t.depth() + 1)
            .max()
            .unwrap_or(0);
        Ok(LinkTerm(Arc::new(Node { mv, link, depth })))
    }

    pub fn hopf() -> LinkTerm {
        LinkTerm::apply(Move::Hopf).expect("the Hopf link is unconditional")
    }

    pub fn move_i(l1: &LinkTerm, l2: &LinkTerm) -> LinkTerm {
        LinkTerm::apply(Move::I {
            l1: l1.clone(),
            l2: l2.clone(),
        })
        .expect("split sum has no side conditions")
    }

    pub fn move_ii(l1: &LinkTerm, l2: &LinkTerm, k2: usize) -> Result<LinkTerm, MoveError> {
        LinkTerm::apply(Move::II {
            l1: l1.clone(),
            l2: l2.clone(),
            k2: Selector(k2),
        })
    }

    pub fn move_iii(
        l1: &LinkTerm,
        k1: usize,
        l2: &LinkTerm,
        k2: usize,
    ) -> Result<LinkTerm, MoveError> {
        LinkTerm::apply(Move::III {
            l1: l1.clone(),
            k1: Selector(k1),
            l2: l2.clone(),
            k2: Selector(k2),
        })
    }

    pub fn move_iv(
        l1: &LinkTerm,
        k1: usize,
        l2: &LinkTerm,
        k2: usize,
        merged: MorseIndex,
    ) -> Result<LinkTerm, MoveError> {
        LinkTerm::apply(Move::IV {
            l1: l1.clone(),
            k1: Selector(k1),
            l2: l2.clone(),
            k2: Selector(k2),
            merged,
        })
    }

    pub fn move_v(
        l: &LinkTerm,
        k: usize,
        p: i64,
        q: i64,
        k1_index: MorseIndex,
        k3_index: MorseIndex,
    ) -> Result<LinkTerm, MoveError> {
        LinkTerm::apply(Move::V {
            l: l.clone(),
            k: Selector(k),
            p,
            q,
            k1_index,
            k3_index,
        })
    }

    pub fn move_vi(l: &LinkTerm, k: usize, q: i64) -> Result<LinkTerm, MoveError> {
        LinkTerm::apply(Move::VI {
            l: l.clone(),
            k: Selector(k),
            q,
        })
    }

    pub fn get_move(&self) -> &Move {
        &self.0.mv
    }

    pub fn link(&self) -> &IndexedLink {
        &self.0.link
    }

    /// Number of move applications on the longest path to a Hopf leaf.
    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// Non-fatal remarks, e.g. a move V cable with `|p| <= 1` that collapses
    /// onto the core's knot type.
    pub fn lints(&self) -> Vec<Lint> {
        let mut out = Vec::new();
        self.collect_lints(&mut out);
        out
    }

    fn collect_lints(&self, out: &mut Vec<Lint>) {
        for t in self.get_move().operands() {
            t.collect_lints(out);
        }
        if let Move::V { p, q, .. } = self.get_move() {
            if p.abs() <= 1 {
                out.push(Lint {
                    axiom: Axiom::V,
                    message: format!(
                        "({p},{q})-cable is isotopic to the core's knot type or the unknot"
                    ),
                });
            }
        }
    }

    pub fn parse(source: &str) -> Result<LinkTerm, TermError> {
        let sexp = sexpr::parse(source)?;
        LinkTerm::from_sexp(source, &sexp)
    }

    pub fn from_sexp(source: &str, sexp: &Sexp) -> Result<LinkTerm, TermError> {
        let err = |msg: &str| TermError::Parse(ParseError::at(source, sexp.span, msg));
        let items = sexp
            .as_list()
            .ok_or_else(|| err("expected a move form such as `(hopf)` or `(VI t #0 3)`"))?;
        let head = sexp.head().ok_or_else(|| err("expected a move name"))?;
        let arity = |n: usize, shape: &str| {
            if items.len() == n + 1 {
                Ok(())
            } else {
                Err(err(&format!("`{head}` expects {shape}")))
            }
        };
        let term = |i: usize| LinkTerm::from_sexp(source, &items[i]);
        let sel = |i: usize| parse_selector(source, &items[i]);
        let int = |i: usize, what: &str| {
            sexpr::int_atom(source, &items[i], what).map_err(TermError::from)
        };
        let idx = |i: usize| parse_index(source, &items[i]);
        let mv = match head {
            "hopf" => {
                arity(0, "no arguments")?;
                Move::Hopf
            }
            "I" => {
                arity(2, "two terms")?;
                Move::I {
                    l1: term(1)?,
                    l2: term(2)?,
                }
            }
            "II" => {
                arity(3, "term term selector")?;
                Move::II {
                    l1: term(1)?,
                    l2: term(2)?,
                    k2: sel(3)?,
                }
            }
            "III" => {
                arity(4, "term selector term selector")?;
                Move::III {
                    l1: term(1)?,
                    k1: sel(2)?,
                    l2: term(3)?,
                    k2: sel(4)?,
                }
            }
            "IV" => {
                arity(5, "term selector term selector index")?;
                Move::IV {
                    l1: term(1)?,
                    k1: sel(2)?,
                    l2: term(3)?,
                    k2: sel(4)?,
                    merged: idx(5)?,
                }
            }
            "V" => {
                arity(6, "term selector p q index index")?;
                Move::V {
                    l: term(1)?,
                    k: sel(2)?,
                    p: int(3, "p")?,
                    q: int(4, "q")?,
                    k1_index: idx(5)?,
                    k3_index: idx(6)?,
                }
            }
            "VI" => {
                arity(3, "term selector q")?;
                Move::VI {
                    l: term(1)?,
                    k: sel(2)?,
                    q: int(3, "q")?,
                }
            }
            _ => return Err(err("unknown move (expected hopf, I, II, III, IV, V or VI)")),
        };
        LinkTerm::apply(mv).map_err(|error| {
            let pe = ParseError::at(source, sexp.span, "");
            TermError::Move {
                error,
                location: pe.location,
                snippet: pe.snippet,
            }
        })
    }
}

fn parse_selector(source: &str, sexp: &Sexp) -> Result<Selector, TermError> {
    sexp.as_atom()
        .and_then(|a| a.strip_prefix('#'))
        .and_then(|n| n.parse::<usize>().ok())
        .map(Selector)
        .ok_or_else(|| ParseError::at(source, sexp.span, "expected a selector `#n`").into())
}

fn parse_index(source: &str, sexp: &Sexp) -> Result<MorseIndex, TermError> {
    sexp.as_atom()
        .and_then(|a| a.parse::<i64>().ok())
        .and_then(MorseIndex::from_value)
        .ok_or_else(|| ParseError::at(source, sexp.span, "expected a Morse index 0, 1 or 2").into())
}

impl fmt::Display for LinkTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get_move() {
            Move::Hopf => f.write_str("(hopf)"),
            Move::I { l1, l2 } => write!(f, "(I {l1} {l2})"),
            Move::II { l1, l2, k2 } => write!(f, "(II {l1} {l2} {k2})"),
            Move::III { l1, k1, l2, k2 } => write!(f, "(III {l1} {k1} {l2} {k2})"),
            Move::IV {
                l1,
                k1,
                l2,
                k2,
                merged,
            } => write!(f, "(IV {l1} {k1} {l2} {k2} {merged})"),
            Move::V {
                l,
                k,
                p,
                q,
                k1_index,
                k3_index,
            } => write!(f, "(V {l} {k} {p} {q} {k1_index} {k3_index})"),
            Move::VI { l, k, q } => write!(f, "(VI {l} {k} {q})"),
        }
    }
}

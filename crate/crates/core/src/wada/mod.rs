//! Indexed links generated by Wada's moves.
//!
//! A link in the class is represented by the derivation that builds it
//! ([`LinkTerm`]); its components, Morse indices and split structure are
//! computed by folding the moves over the derivation.

mod certificate;
mod enumerate;
mod term;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knot::KnotExpr;

pub use certificate::{derivation, Certificate, Step, StepParams};
pub use enumerate::{enumerate, Caps, Enumeration, Enumerator};
pub use term::{Axiom, Condition, LinkTerm, Lint, Move, MoveError, Selector, TermError};

/// Morse index of a periodic orbit (equivalently, of a round handle).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum MorseIndex {
    Zero,
    One,
    Two,
}

impl MorseIndex {
    pub fn value(self) -> u8 {
        match self {
            MorseIndex::Zero => 0,
            MorseIndex::One => 1,
            MorseIndex::Two => 2,
        }
    }

    pub fn from_value(v: i64) -> Option<MorseIndex> {
        match v {
            0 => Some(MorseIndex::Zero),
            1 => Some(MorseIndex::One),
            2 => Some(MorseIndex::Two),
            _ => None,
        }
    }

    /// Index 0 or 2: the orbit types Wada's moves may act on.
    pub fn is_extremal(self) -> bool {
        self != MorseIndex::One
    }

    /// Swaps 0 and 2; fixes 1.
    pub fn opposite(self) -> MorseIndex {
        match self {
            MorseIndex::Zero => MorseIndex::Two,
            MorseIndex::One => MorseIndex::One,
            MorseIndex::Two => MorseIndex::Zero,
        }
    }
}

impl From<MorseIndex> for u8 {
    fn from(i: MorseIndex) -> u8 {
        i.value()
    }
}

impl TryFrom<u8> for MorseIndex {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        MorseIndex::from_value(v as i64)
            .ok_or_else(|| format!("Morse index must be 0, 1 or 2, got {v}"))
    }
}

impl fmt::Display for MorseIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexedComponent {
    pub knot: KnotExpr,
    pub index: MorseIndex,
    pub origin: String,
}

impl IndexedComponent {
    pub fn new(knot: KnotExpr, index: MorseIndex, origin: impl Into<String>) -> Self {
        IndexedComponent {
            knot,
            index,
            origin: origin.into(),
        }
    }
}

impl fmt::Display for IndexedComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.knot, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("an indexed link needs at least one component")]
    Empty,
    #[error("component {position} has non-canonical knot `{knot}`")]
    NotCanonical { position: usize, knot: String },
    #[error("split parts must partition the components exactly once: {0}")]
    BadPartition(String),
    #[error("unexpected schema `{0}`, expected `{INDEXED_LINK_SCHEMA}`")]
    Schema(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

pub const INDEXED_LINK_SCHEMA: &str = "knotflow/indexed-link/v1";

fn link_schema() -> String {
    INDEXED_LINK_SCHEMA.to_string()
}

/// Serialized form of an [`IndexedLink`].
#[derive(Serialize, Deserialize)]
struct LinkRecord {
    #[serde(default = "link_schema")]
    schema: String,
    components: Vec<IndexedComponent>,
    split_parts: Vec<Vec<usize>>,
}

impl From<IndexedLink> for LinkRecord {
    fn from(link: IndexedLink) -> Self {
        LinkRecord {
            schema: link_schema(),
            split_parts: link.split_parts(),
            components: link.components,
        }
    }
}

impl TryFrom<LinkRecord> for IndexedLink {
    type Error = LinkError;

    fn try_from(r: LinkRecord) -> Result<Self, LinkError> {
        if r.schema != INDEXED_LINK_SCHEMA {
            return Err(LinkError::Schema(r.schema));
        }
        IndexedLink::new(r.components, &r.split_parts)
    }
}

/// Deduplication key: sorted parts, each a sorted multiset of `(knot, index)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkKey(pub Vec<Vec<(KnotExpr, MorseIndex)>>);

impl fmt::Display for LinkKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(link")?;
        for part in &self.0 {
            f.write_str(" (part")?;
            for (k, i) in part {
                write!(f, " ({k} {i})")?;
            }
            f.write_str(")")?;
        }
        f.write_str(")")
    }
}

/// Multiset of indexed components with the split partition the derivation
/// certifies. Components are kept sorted by `(knot, index, origin)`; equal
/// components keep their insertion order. Positions in this order are what
/// [`Selector`]s address.
///
/// Different parts are separated by an embedded sphere. Components in the
/// same part are not known to be separable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "LinkRecord", try_from = "LinkRecord")]
pub struct IndexedLink {
    components: Vec<IndexedComponent>,
    part_of: Vec<usize>,
}

impl IndexedLink {
    /// Builds a link from explicit parts (lists of positions into `components`).
    /// `components` are re-sorted; `parts` refer to the order given.
    pub fn new(components: Vec<IndexedComponent>, parts: &[Vec<usize>]) -> Result<Self, LinkError> {
        if components.is_empty() {
            return Err(LinkError::Empty);
        }
        if let Some(position) = components.iter().position(|c| !c.knot.is_canonical()) {
            return Err(LinkError::NotCanonical {
                position,
                knot: components[position].knot.to_string(),
            });
        }
        let mut label = vec![usize::MAX; components.len()];
        for (p, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(LinkError::BadPartition(format!("part {p} is empty")));
            }
            for &i in part {
                match label.get_mut(i) {
                    Some(l) if *l == usize::MAX => *l = p,
                    Some(_) => {
                        return Err(LinkError::BadPartition(format!(
                            "component {i} listed twice"
                        )))
                    }
                    None => {
                        return Err(LinkError::BadPartition(format!(
                            "component {i} does not exist"
                        )))
                    }
                }
            }
        }
        if let Some(i) = label.iter().position(|&l| l == usize::MAX) {
            return Err(LinkError::BadPartition(format!(
                "component {i} is in no part"
            )));
        }
        Ok(Self::assemble(components.into_iter().zip(label).collect()))
    }

    /// All components in one part.
    pub fn connected(components: Vec<IndexedComponent>) -> Result<Self, LinkError> {
        let all: Vec<usize> = (0..components.len()).collect();
        IndexedLink::new(components, &[all])
    }

    /// Stable-sorts labelled components and renumbers part labels by first
    /// appearance.
    pub(crate) fn assemble(mut items: Vec<(IndexedComponent, usize)>) -> Self {
        items.sort_by(|a, b| a.0.cmp(&b.0));
        let mut relabel: Vec<(usize, usize)> = Vec::new();
        let mut components = Vec::with_capacity(items.len());
        let mut part_of = Vec::with_capacity(items.len());
        for (c, label) in items {
            let fresh = relabel.len();
            let id = match relabel.iter().find(|(old, _)| *old == label) {
                Some(&(_, new)) => new,
                None => {
                    relabel.push((label, fresh));
                    fresh
                }
            };
            components.push(c);
            part_of.push(id);
        }
        IndexedLink {
            components,
            part_of,
        }
    }

    /// Components paired with their part labels, for building derived links.
    pub(crate) fn labelled(&self) -> impl Iterator<Item = (IndexedComponent, usize)> + '_ {
        self.components
            .iter()
            .cloned()
            .zip(self.part_of.iter().copied())
    }

    pub fn components(&self) -> &[IndexedComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn get(&self, selector: Selector) -> Option<&IndexedComponent> {
        self.components.get(selector.0)
    }

    pub fn part_of(&self, position: usize) -> usize {
        self.part_of[position]
    }

    pub fn part_count(&self) -> usize {
        self.part_of.iter().max().map_or(0, |m| m + 1)
    }

    /// Split parts as lists of component positions, ordered by first member.
    pub fn split_parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.part_count()];
        for (i, &p) in self.part_of.iter().enumerate() {
            parts[p].push(i);
        }
        parts
    }

    pub fn key(&self) -> LinkKey {
        let mut parts: Vec<Vec<(KnotExpr, MorseIndex)>> = self
            .split_parts()
            .into_iter()
            .map(|part| {
                part.into_iter()
                    .map(|i| (self.components[i].knot.clone(), self.components[i].index))
                    .collect()
            })
            .collect();
        // components are sorted by knot then index, so each part already is
        parts.sort();
        LinkKey(parts)
    }

    pub fn unknot_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.knot == KnotExpr::Unknot)
            .count()
    }

    pub fn index_count(&self, index: MorseIndex) -> usize {
        self.components.iter().filter(|c| c.index == index).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("links serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, LinkError> {
        serde_json::from_str(text).map_err(|e| LinkError::Json(e.to_string()))
    }

    /// Histogram of Morse indices `[#0, #1, #2]`.
    pub fn index_histogram(&self) -> [usize; 3] {
        let mut h = [0; 3];
        for c in &self.components {
            h[c.index.value() as usize] += 1;
        }
        h
    }
}

impl fmt::Display for IndexedLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.key().fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub components: usize,
    pub unknots: usize,
    pub index_zero: usize,
    pub index_two: usize,
    /// Positions whose knot fails the canonical zero-entropy form check.
    pub outside_class: Vec<usize>,
}

impl InvariantReport {
    pub fn unknot_pair(&self) -> bool {
        self.unknots >= 2
    }

    pub fn index_presence(&self) -> bool {
        self.index_zero >= 1 && self.index_two >= 1
    }

    pub fn zero_entropy(&self) -> bool {
        self.outside_class.is_empty()
    }

    pub fn all_pass(&self) -> bool {
        self.unknot_pair() && self.index_presence() && self.zero_entropy()
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
        writeln!(
            f,
            "unknot pair: {} ({} unknotted of {})",
            verdict(self.unknot_pair()),
            self.unknots,
            self.components
        )?;
        writeln!(
            f,
            "index 0 and 2 present: {} ({} of index 0, {} of index 2)",
            verdict(self.index_presence()),
            self.index_zero,
            self.index_two
        )?;
        write!(
            f,
            "zero-entropy components: {}",
            verdict(self.zero_entropy())
        )
    }
}

/// Checks the properties every link in the class has: at least two unknotted
/// components, components of index 0 and of index 2, and only zero-entropy
/// knot types.
pub fn check_invariants(link: &IndexedLink) -> InvariantReport {
    let outside_class = link
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.knot.validate().is_err() || !c.knot.is_canonical())
        .map(|(i, _)| i)
        .collect();
    InvariantReport {
        components: link.len(),
        unknots: link.unknot_count(),
        index_zero: link.index_count(MorseIndex::Zero),
        index_two: link.index_count(MorseIndex::Two),
        outside_class,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPartition {
    pub parts: Vec<Vec<usize>>,
}

impl SplitPartition {
    /// Whether the derivation certifies a sphere separating some of the
    /// designated components from the others.
    pub fn separates(&self, designated: &[usize]) -> bool {
        let hit: BTreeSet<usize> = designated
            .iter()
            .filter_map(|c| self.parts.iter().position(|p| p.contains(c)))
            .collect();
        hit.len() > 1
    }
}

pub fn split_components(term: &LinkTerm) -> SplitPartition {
    SplitPartition {
        parts: term.link().split_parts(),
    }
}

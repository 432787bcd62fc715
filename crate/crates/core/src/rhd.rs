//! Round handles, stratified critical sets, and the round-handle
//! decomposition obtained by thickening a critical set.
//!
//! A critical set is described combinatorially: critical circles
//! (1-strata), annuli and Möbius bands glued to them (2-strata), and
//! caller-declared solid tori filling the exterior. Thickening gives one
//! 0-handle per circle, one orientable 1-handle per annulus, one
//! nonorientable 1-handle per Möbius band and one 2-handle per exterior
//! torus. The indexed cores of the handles form an [`IndexedLink`].
//!
//! Attachments record incidence only, not gluing maps.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knot::{self, KnotError, KnotExpr};
use crate::wada::{IndexedComponent, IndexedLink, MorseIndex};

pub const STRATIFIED_SET_SCHEMA: &str = "knotflow/stratified-set/v1";
pub const RHD_PLAN_SCHEMA: &str = "knotflow/rhd-plan/v1";

fn stratified_schema() -> String {
    STRATIFIED_SET_SCHEMA.to_string()
}

fn plan_schema() -> String {
    RHD_PLAN_SCHEMA.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RhdError {
    #[error("{stratum} refers to missing 1-stratum #{circle}")]
    DanglingCircle { stratum: String, circle: usize },
    #[error("1-stratum #{circle} has no incident 2-strata (K = 0 prongs); an isolated critical circle has nothing to thicken")]
    IsolatedCircle { circle: usize },
    #[error("Möbius band #{stratum}: boundary cable parameter q = {q} must be odd")]
    EvenMobiusTwist { stratum: usize, q: i64 },
    #[error("Möbius band #{stratum}: 1-stratum #{circle} is `{found}` but the (2,q)-cable of the core is `{expected}`")]
    MobiusMismatch {
        stratum: usize,
        circle: usize,
        expected: String,
        found: String,
    },
    #[error("annulus #{stratum}: boundary circles #{a} `{knot_a}` and #{b} `{knot_b}` have different knot types")]
    AnnulusMismatch {
        stratum: usize,
        a: usize,
        b: usize,
        knot_a: String,
        knot_b: String,
    },
    #[error("not a Möbius boundary in this model: `{0}` is not a (2,q)-cable with q odd")]
    NotMobiusBoundary(String),
    #[error("unsupported: critical torus (2-stratum #{stratum}) has no round-handle thickening")]
    CriticalTorus { stratum: usize },
    #[error("no exterior solid tori declared; the thickened critical set has unfilled boundary")]
    NoExterior,
    #[error("1-stratum #{circle} lies in a piece of the critical set that no exterior torus is adjacent to")]
    UnclosedBoundary { circle: usize },
    #[error("handle #{handle}: {reason}")]
    BadHandle { handle: usize, reason: String },
    #[error("example parameter n must be at least 1")]
    BadExampleParameter,
    #[error("invalid knot: {0}")]
    Knot(#[from] KnotError),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unexpected schema `{found}`, expected `{expected}`")]
    Schema {
        found: String,
        expected: &'static str,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circle {
    pub knot: KnotExpr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TwoStratum {
    Annulus {
        ends: [usize; 2],
    },
    Mobius {
        end: usize,
        boundary_cable_q: i64,
        /// Knot type of the band's core; derived from the boundary when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        core: Option<KnotExpr>,
    },
    Torus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExteriorTorus {
    pub core_knot: KnotExpr,
    /// 1-strata whose neighbourhood boundary this torus fills; empty means all.
    #[serde(default)]
    pub adjacent: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratifiedSet {
    #[serde(default = "stratified_schema")]
    pub schema: String,
    pub one_strata: Vec<Circle>,
    pub two_strata: Vec<TwoStratum>,
    #[serde(default)]
    pub exterior_tori: Vec<ExteriorTorus>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratificationReport {
    /// Incident 2-strata ends per 1-stratum.
    pub prongs: Vec<usize>,
    pub annuli: usize,
    pub mobius_bands: usize,
    pub tori: usize,
    /// Core knot of each 2-stratum (`None` for tori).
    pub band_cores: Vec<Option<KnotExpr>>,
    pub lints: Vec<String>,
}

impl fmt::Display for StratificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid stratification")?;
        for (i, p) in self.prongs.iter().enumerate() {
            writeln!(f, "1-stratum #{i}: K = {p}")?;
        }
        writeln!(
            f,
            "2-strata: {} orientable (annulus), {} nonorientable (Möbius), {} tori",
            self.annuli, self.mobius_bands, self.tori
        )?;
        for l in &self.lints {
            writeln!(f, "lint: {l}")?;
        }
        Ok(())
    }
}

/// Core of a Möbius band whose boundary has knot type `boundary`: the band's
/// boundary is the `(2,q)`-cable of its core, `q` odd.
pub fn mobius_core_knot(boundary: &KnotExpr) -> Result<KnotExpr, RhdError> {
    match knot::canonicalize(boundary)? {
        KnotExpr::Cable { p: 2, q, companion } if q % 2 != 0 => Ok(*companion),
        other => Err(RhdError::NotMobiusBoundary(other.to_string())),
    }
}

impl StratifiedSet {
    pub fn new(
        one_strata: Vec<Circle>,
        two_strata: Vec<TwoStratum>,
        exterior_tori: Vec<ExteriorTorus>,
    ) -> Self {
        StratifiedSet {
            schema: stratified_schema(),
            one_strata,
            two_strata,
            exterior_tori,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, RhdError> {
        let s: StratifiedSet =
            serde_json::from_str(text).map_err(|e| RhdError::Json(e.to_string()))?;
        if s.schema != STRATIFIED_SET_SCHEMA {
            return Err(RhdError::Schema {
                found: s.schema,
                expected: STRATIFIED_SET_SCHEMA,
            });
        }
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stratified sets serialize")
    }

    fn circle(&self, stratum: &str, i: usize) -> Result<KnotExpr, RhdError> {
        let c = self
            .one_strata
            .get(i)
            .ok_or_else(|| RhdError::DanglingCircle {
                stratum: stratum.to_string(),
                circle: i,
            })?;
        Ok(knot::canonicalize(&c.knot)?)
    }

    /// Checks references, prong counts, annulus and Möbius consistency.
    pub fn validate(&self) -> Result<StratificationReport, RhdError> {
        let mut prongs = vec![0usize; self.one_strata.len()];
        let mut band_cores = Vec::with_capacity(self.two_strata.len());
        let (mut annuli, mut mobius_bands, mut tori) = (0, 0, 0);
        for c in &self.one_strata {
            knot::canonicalize(&c.knot)?;
        }
        for (j, s) in self.two_strata.iter().enumerate() {
            match s {
                TwoStratum::Annulus { ends: [a, b] } => {
                    let name = format!("annulus #{j}");
                    let (ka, kb) = (self.circle(&name, *a)?, self.circle(&name, *b)?);
                    if ka != kb {
                        return Err(RhdError::AnnulusMismatch {
                            stratum: j,
                            a: *a,
                            b: *b,
                            knot_a: ka.to_string(),
                            knot_b: kb.to_string(),
                        });
                    }
                    prongs[*a] += 1;
                    prongs[*b] += 1;
                    annuli += 1;
                    band_cores.push(Some(ka));
                }
                TwoStratum::Mobius {
                    end,
                    boundary_cable_q,
                    core,
                } => {
                    let boundary = self.circle(&format!("Möbius band #{j}"), *end)?;
                    if boundary_cable_q % 2 == 0 {
                        return Err(RhdError::EvenMobiusTwist {
                            stratum: j,
                            q: *boundary_cable_q,
                        });
                    }
                    let core = match core {
                        Some(core) => knot::canonicalize(core)?,
                        None => mobius_core_knot(&boundary)?,
                    };
                    let expected = knot::cable(2, *boundary_cable_q, &core)?;
                    if expected != boundary {
                        return Err(RhdError::MobiusMismatch {
                            stratum: j,
                            circle: *end,
                            expected: expected.to_string(),
                            found: boundary.to_string(),
                        });
                    }
                    prongs[*end] += 1;
                    mobius_bands += 1;
                    band_cores.push(Some(core));
                }
                TwoStratum::Torus => {
                    tori += 1;
                    band_cores.push(None);
                }
            }
        }
        if let Some(circle) = prongs.iter().position(|&k| k == 0) {
            return Err(RhdError::IsolatedCircle { circle });
        }
        for (k, e) in self.exterior_tori.iter().enumerate() {
            knot::canonicalize(&e.core_knot)?;
            if let Some(&circle) = e.adjacent.iter().find(|&&c| c >= self.one_strata.len()) {
                return Err(RhdError::DanglingCircle {
                    stratum: format!("exterior torus #{k}"),
                    circle,
                });
            }
        }
        let lints = prongs
            .iter()
            .enumerate()
            .filter(|(_, &k)| k == 2)
            .map(|(i, _)| {
                format!("1-stratum #{i} has 2 prongs: manifold point, merge into a 2-stratum")
            })
            .collect();
        Ok(StratificationReport {
            prongs,
            annuli,
            mobius_bands,
            tori,
            band_cores,
            lints,
        })
    }

    /// Connected pieces of the critical set, as a circle -> piece labelling.
    fn pieces(&self) -> Vec<usize> {
        let n = self.one_strata.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for s in &self.two_strata {
            if let TwoStratum::Annulus { ends: [a, b] } = s {
                let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        (0..n).map(|i| find(&mut parent, i)).collect()
    }

    fn write_text(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(stratified")?;
        for (i, c) in self.one_strata.iter().enumerate() {
            writeln!(f, "  (circle #{i} {})", c.knot)?;
        }
        for (j, s) in self.two_strata.iter().enumerate() {
            match s {
                TwoStratum::Annulus { ends: [a, b] } => {
                    writeln!(f, "  (annulus #{j} (ends #{a} #{b}))")?
                }
                TwoStratum::Mobius {
                    end,
                    boundary_cable_q,
                    core,
                } => {
                    write!(f, "  (mobius #{j} (end #{end}) (q {boundary_cable_q})")?;
                    if let Some(core) = core {
                        write!(f, " (core {core})")?;
                    }
                    writeln!(f, ")")?;
                }
                TwoStratum::Torus => writeln!(f, "  (torus #{j})")?,
            }
        }
        for (k, e) in self.exterior_tori.iter().enumerate() {
            write!(f, "  (exterior #{k} (core {})", e.core_knot)?;
            if !e.adjacent.is_empty() {
                let adj: Vec<String> = e.adjacent.iter().map(|c| format!("#{c}")).collect();
                write!(f, " (adjacent {})", adj.join(" "))?;
            }
            writeln!(f, ")")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for StratifiedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitSet {
    /// Index 0.
    Empty,
    /// Index 1, orientable: two annuli, each wrapping once.
    TwoAnnuli,
    /// Index 1, nonorientable: one annulus wrapping twice.
    DoubleWrapAnnulus,
    /// Index 2.
    FullTorus,
}

impl fmt::Display for ExitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExitSet::Empty => "empty",
            ExitSet::TwoAnnuli => "two-annuli",
            ExitSet::DoubleWrapAnnulus => "double-wrap-annulus",
            ExitSet::FullTorus => "full-torus",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundHandle {
    pub index: MorseIndex,
    pub exit: ExitSet,
    pub core_knot: KnotExpr,
    /// Earlier handles, one entry per exit annulus for index 1.
    pub attachments: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", content = "id", rename_all = "snake_case")]
pub enum Provenance {
    Circle(usize),
    Annulus(usize),
    Mobius(usize),
    Exterior(usize),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Circle(i) => write!(f, "circle#{i}"),
            Provenance::Annulus(i) => write!(f, "annulus#{i}"),
            Provenance::Mobius(i) => write!(f, "mobius#{i}"),
            Provenance::Exterior(i) => write!(f, "exterior#{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhdPlan {
    #[serde(default = "plan_schema")]
    pub schema: String,
    pub handles: Vec<RoundHandle>,
    pub provenance: Vec<Provenance>,
}

impl RhdPlan {
    pub fn from_json(text: &str) -> Result<Self, RhdError> {
        let p: RhdPlan = serde_json::from_str(text).map_err(|e| RhdError::Json(e.to_string()))?;
        if p.schema != RHD_PLAN_SCHEMA {
            return Err(RhdError::Schema {
                found: p.schema,
                expected: RHD_PLAN_SCHEMA,
            });
        }
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plans serialize")
    }

    /// Number of handles of index 0, 1 and 2.
    pub fn handle_counts(&self) -> [usize; 3] {
        let mut h = [0; 3];
        for handle in &self.handles {
            h[handle.index.value() as usize] += 1;
        }
        h
    }

    /// Index ordering, backward attachments and exit sets consistent with indices.
    pub fn validate(&self) -> Result<(), RhdError> {
        let bad = |handle: usize, reason: String| Err(RhdError::BadHandle { handle, reason });
        if self.provenance.len() != self.handles.len() {
            return bad(
                self.handles.len(),
                format!(
                    "{} provenance records for {} handles",
                    self.provenance.len(),
                    self.handles.len()
                ),
            );
        }
        for (i, h) in self.handles.iter().enumerate() {
            h.core_knot.validate()?;
            if i > 0 && self.handles[i - 1].index > h.index {
                return bad(
                    i,
                    "handles must be attached in nondecreasing index order".into(),
                );
            }
            if let Some(&a) = h.attachments.iter().find(|&&a| a >= i) {
                return bad(i, format!("attachment #{a} is not an earlier handle"));
            }
            let exit_ok = match (h.index, h.exit) {
                (MorseIndex::Zero, ExitSet::Empty) => h.attachments.is_empty(),
                (MorseIndex::One, ExitSet::TwoAnnuli) => h.attachments.len() == 2,
                (MorseIndex::One, ExitSet::DoubleWrapAnnulus) => h.attachments.len() == 1,
                (MorseIndex::Two, ExitSet::FullTorus) => true,
                _ => false,
            };
            if !exit_ok {
                return bad(
                    i,
                    format!(
                        "index {} handle with exit set {} and {} attachments",
                        h.index,
                        h.exit,
                        h.attachments.len()
                    ),
                );
            }
        }
        Ok(())
    }
}

impl fmt::Display for RhdPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(rhd")?;
        for (i, (h, p)) in self.handles.iter().zip(&self.provenance).enumerate() {
            let att: Vec<String> = h.attachments.iter().map(|a| format!("#{a}")).collect();
            writeln!(
                f,
                "  (handle #{i} (index {}) (exit {}) (core {}) (attach{}{}) (from {p}))",
                h.index,
                h.exit,
                h.core_knot,
                if att.is_empty() { "" } else { " " },
                att.join(" ")
            )?;
        }
        write!(f, ")")
    }
}

/// Thickens a valid, torus-free stratified set into an ordered round-handle
/// decomposition.
pub fn build_rhd(s: &StratifiedSet) -> Result<RhdPlan, RhdError> {
    let report = s.validate()?;
    if let Some(stratum) = s
        .two_strata
        .iter()
        .position(|t| matches!(t, TwoStratum::Torus))
    {
        return Err(RhdError::CriticalTorus { stratum });
    }
    if s.exterior_tori.is_empty() {
        return Err(RhdError::NoExterior);
    }
    if s.exterior_tori.iter().all(|e| !e.adjacent.is_empty()) {
        let pieces = s.pieces();
        let covered: Vec<usize> = s
            .exterior_tori
            .iter()
            .flat_map(|e| e.adjacent.iter().map(|&c| pieces[c]))
            .collect();
        if let Some(circle) = (0..pieces.len()).find(|&c| !covered.contains(&pieces[c])) {
            return Err(RhdError::UnclosedBoundary { circle });
        }
    }

    let mut handles = Vec::new();
    let mut provenance = Vec::new();
    for (i, c) in s.one_strata.iter().enumerate() {
        handles.push(RoundHandle {
            index: MorseIndex::Zero,
            exit: ExitSet::Empty,
            core_knot: knot::canonicalize(&c.knot)?,
            attachments: vec![],
        });
        provenance.push(Provenance::Circle(i));
    }
    // 0-handle ids coincide with circle ids
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); s.one_strata.len()];
    for (j, t) in s.two_strata.iter().enumerate() {
        let id = handles.len();
        let core_knot = report.band_cores[j].clone().expect("tori were rejected");
        let (exit, attachments, prov) = match t {
            TwoStratum::Annulus { ends } => {
                (ExitSet::TwoAnnuli, ends.to_vec(), Provenance::Annulus(j))
            }
            TwoStratum::Mobius { end, .. } => (
                ExitSet::DoubleWrapAnnulus,
                vec![*end],
                Provenance::Mobius(j),
            ),
            TwoStratum::Torus => unreachable!(),
        };
        for &c in &attachments {
            if !incident[c].contains(&id) {
                incident[c].push(id);
            }
        }
        handles.push(RoundHandle {
            index: MorseIndex::One,
            exit,
            core_knot,
            attachments,
        });
        provenance.push(prov);
    }
    let lower = handles.len();
    for (k, e) in s.exterior_tori.iter().enumerate() {
        let attachments = if e.adjacent.is_empty() {
            (0..lower).collect()
        } else {
            let mut a: Vec<usize> = e
                .adjacent
                .iter()
                .flat_map(|&c| std::iter::once(c).chain(incident[c].iter().copied()))
                .collect();
            a.sort_unstable();
            a.dedup();
            a
        };
        handles.push(RoundHandle {
            index: MorseIndex::Two,
            exit: ExitSet::FullTorus,
            core_knot: knot::canonicalize(&e.core_knot)?,
            attachments,
        });
        provenance.push(Provenance::Exterior(k));
    }
    let plan = RhdPlan {
        schema: plan_schema(),
        handles,
        provenance,
    };
    plan.validate()?;
    Ok(plan)
}

/// The indexed link formed by the handle cores, one component per handle.
pub fn cores_link(plan: &RhdPlan) -> Result<IndexedLink, RhdError> {
    plan.validate()?;
    let components = plan
        .handles
        .iter()
        .zip(&plan.provenance)
        .map(|(h, p)| {
            Ok(IndexedComponent::new(
                knot::canonicalize(&h.core_knot)?,
                h.index,
                p.to_string(),
            ))
        })
        .collect::<Result<Vec<_>, RhdError>>()?;
    Ok(IndexedLink::connected(components).expect("plans have canonical, nonempty cores"))
}

/// Two `(2, 2n+1)` torus knots, each the boundary of a Möbius band with
/// unknotted core; the cores form a Hopf link and each piece is filled by an
/// unknotted exterior solid torus.
pub fn seifert_example(n: u32) -> Result<StratifiedSet, RhdError> {
    if n == 0 {
        return Err(RhdError::BadExampleParameter);
    }
    let q = 2 * n as i64 + 1;
    let boundary = KnotExpr::torus(2, q);
    Ok(StratifiedSet::new(
        vec![
            Circle {
                knot: boundary.clone(),
            },
            Circle { knot: boundary },
        ],
        (0..2)
            .map(|end| TwoStratum::Mobius {
                end,
                boundary_cable_q: q,
                core: Some(KnotExpr::Unknot),
            })
            .collect(),
        (0..2)
            .map(|c| ExteriorTorus {
                core_knot: KnotExpr::Unknot,
                adjacent: vec![c],
            })
            .collect(),
    ))
}

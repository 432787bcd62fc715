use std::fmt;

use super::term::{Axiom, LinkTerm, Move, MoveError, Selector};
use super::{IndexedLink, MorseIndex};

/// Move parameters with operands replaced by references to earlier steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepParams {
    Hopf,
    I {
        l1: usize,
        l2: usize,
    },
    II {
        l1: usize,
        l2: usize,
        k2: Selector,
    },
    III {
        l1: usize,
        k1: Selector,
        l2: usize,
        k2: Selector,
    },
    IV {
        l1: usize,
        k1: Selector,
        l2: usize,
        k2: Selector,
        merged: MorseIndex,
    },
    V {
        l: usize,
        k: Selector,
        p: i64,
        q: i64,
        k1_index: MorseIndex,
        k3_index: MorseIndex,
    },
    VI {
        l: usize,
        k: Selector,
        q: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub axiom: Axiom,
    pub params: StepParams,
    /// Human-readable arguments, e.g. `q=3, K=(U,0)`.
    pub summary: String,
    /// Side conditions verified at this step.
    pub conditions: Vec<String>,
    pub link: IndexedLink,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summary.is_empty() {
            write!(f, "{}", self.axiom)
        } else {
            write!(f, "{}({})", self.axiom, self.summary)
        }
    }
}

/// Post-order list of the moves in a derivation; the last step is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub steps: Vec<Step>,
}

impl Certificate {
    /// The steps joined on one line, e.g. `O; VI(q=3, K=(U,0))`.
    pub fn summary(&self) -> String {
        self.steps
            .iter()
            .map(Step::to_string)
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Numbered steps with their inputs, checked conditions and resulting link.
    pub fn detailed(&self) -> String {
        let mut out = String::new();
        for (n, s) in self.steps.iter().enumerate() {
            let inputs = inputs(&s.params);
            out.push_str(&format!("{}. {}", n + 1, s));
            if !inputs.is_empty() {
                let refs: Vec<String> = inputs.iter().map(|i| (i + 1).to_string()).collect();
                out.push_str(&format!(" from {}", refs.join(", ")));
            }
            out.push('\n');
            for c in &s.conditions {
                out.push_str(&format!("   checked: {c}\n"));
            }
            out.push_str(&format!("   yields: {}\n", s.link));
        }
        out
    }

    /// Rebuilds the term by re-applying every step.
    pub fn replay(&self) -> Result<LinkTerm, MoveError> {
        let mut built: Vec<LinkTerm> = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            let t = |i: usize| built[i].clone();
            let mv = match s.params {
                StepParams::Hopf => Move::Hopf,
                StepParams::I { l1, l2 } => Move::I {
                    l1: t(l1),
                    l2: t(l2),
                },
                StepParams::II { l1, l2, k2 } => Move::II {
                    l1: t(l1),
                    l2: t(l2),
                    k2,
                },
                StepParams::III { l1, k1, l2, k2 } => Move::III {
                    l1: t(l1),
                    k1,
                    l2: t(l2),
                    k2,
                },
                StepParams::IV {
                    l1,
                    k1,
                    l2,
                    k2,
                    merged,
                } => Move::IV {
                    l1: t(l1),
                    k1,
                    l2: t(l2),
                    k2,
                    merged,
                },
                StepParams::V {
                    l,
                    k,
                    p,
                    q,
                    k1_index,
                    k3_index,
                } => Move::V {
                    l: t(l),
                    k,
                    p,
                    q,
                    k1_index,
                    k3_index,
                },
                StepParams::VI { l, k, q } => Move::VI { l: t(l), k, q },
            };
            built.push(LinkTerm::apply(mv)?);
        }
        Ok(built.pop().expect("certificate has at least one step"))
    }
}

fn inputs(p: &StepParams) -> Vec<usize> {
    match *p {
        StepParams::Hopf => vec![],
        StepParams::I { l1, l2 }
        | StepParams::II { l1, l2, .. }
        | StepParams::III { l1, l2, .. }
        | StepParams::IV { l1, l2, .. } => vec![l1, l2],
        StepParams::V { l, .. } | StepParams::VI { l, .. } => vec![l],
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Proof of membership: every move of the derivation with the side
/// conditions it satisfied.
pub fn derivation(term: &LinkTerm) -> Certificate {
    let mut steps = Vec::new();
    push_steps(term, &mut steps);
    Certificate { steps }
}

fn push_steps(term: &LinkTerm, steps: &mut Vec<Step>) -> usize {
    let at = |t: &LinkTerm, s: Selector| t.link().get(s).expect("validated selector").to_string();
    let (params, summary, conditions) = match term.get_move() {
        Move::Hopf => (StepParams::Hopf, String::new(), vec![]),
        Move::I { l1, l2 } => {
            let (a, b) = (push_steps(l1, steps), push_steps(l2, steps));
            (StepParams::I { l1: a, l2: b }, String::new(), vec![])
        }
        Move::II { l1, l2, k2 } => {
            let (a, b) = (push_steps(l1, steps), push_steps(l2, steps));
            (
                StepParams::II {
                    l1: a,
                    l2: b,
                    k2: *k2,
                },
                format!("K2={}", at(l2, *k2)),
                vec!["K2 indexed by 0 or 2".to_string()],
            )
        }
        Move::III { l1, k1, l2, k2 } => {
            let (a, b) = (push_steps(l1, steps), push_steps(l2, steps));
            (
                StepParams::III {
                    l1: a,
                    k1: *k1,
                    l2: b,
                    k2: *k2,
                },
                format!("K1={}, K2={}", at(l1, *k1), at(l2, *k2)),
                vec!["K1 has index 0".to_string(), "K2 has index 2".to_string()],
            )
        }
        Move::IV {
            l1,
            k1,
            l2,
            k2,
            merged,
        } => {
            let (a, b) = (push_steps(l1, steps), push_steps(l2, steps));
            (
                StepParams::IV {
                    l1: a,
                    k1: *k1,
                    l2: b,
                    k2: *k2,
                    merged: *merged,
                },
                format!("K1={}, K2={}, index={merged}", at(l1, *k1), at(l2, *k2)),
                vec![
                    "K1, K2 each have index 0 or 2".to_string(),
                    format!("K1 # K2 index {merged} is shared with K1 or K2"),
                ],
            )
        }
        Move::V {
            l,
            k,
            p,
            q,
            k1_index,
            k3_index,
        } => {
            let a = push_steps(l, steps);
            (
                StepParams::V {
                    l: a,
                    k: *k,
                    p: *p,
                    q: *q,
                    k1_index: *k1_index,
                    k3_index: *k3_index,
                },
                format!(
                    "p={p}, q={q}, K={}, K1 index={k1_index}, K3 index={k3_index}",
                    at(l, *k)
                ),
                vec![
                    "K indexed by 0 or 2".to_string(),
                    format!("gcd({p},{q}) = 1"),
                    "K1, K3 indexed by 0 or 2".to_string(),
                    "K1 or K3 keeps the index of K".to_string(),
                ],
            )
        }
        Move::VI { l, k, q } => {
            let a = push_steps(l, steps);
            (
                StepParams::VI { l: a, k: *k, q: *q },
                format!("q={q}, K={}", at(l, *k)),
                vec!["K indexed by 0 or 2".to_string(), format!("q = {q} is odd")],
            )
        }
    };
    steps.push(Step {
        axiom: term.get_move().axiom(),
        params,
        summary,
        conditions,
        link: term.link().clone(),
    });
    steps.len() - 1
}

//! Command-line front end.
//!
//! [`run`] takes the argument list and returns the exit status together with
//! everything that would be written to stdout and stderr, so the whole
//! interface can be exercised without spawning processes.
//!
//! Exit status is 0 on success, 1 when an input parses but fails validation
//! and 2 on a parse error or bad usage.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::knot::{self, KnotExpr};
use crate::rhd::{self, RhdError, RhdPlan, StratifiedSet, RHD_PLAN_SCHEMA, STRATIFIED_SET_SCHEMA};
use crate::sexpr::{self, ParseError, Sexp};
use crate::wada::{self, Caps, IndexedLink, LinkError, LinkTerm, TermError, INDEXED_LINK_SCHEMA};

#[derive(Parser, Debug)]
#[command(
    name = "knotflow",
    version,
    about = "Zero-entropy knots, Wada's indexed links and round-handle decompositions"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Output {
    /// Emit JSON instead of s-expression text.
    #[arg(long)]
    json: bool,
    /// Write the result to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Bounds {
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Upper bound on the cable parameters p and q.
    #[arg(long = "max-pq", default_value_t = 3)]
    max_pq: i64,
    /// Fresh links kept per parent and axiom; 0 keeps all.
    #[arg(long = "max-branch", default_value_t = 4)]
    max_branch: usize,
}

impl Bounds {
    fn caps(&self) -> Caps {
        Caps::new(
            self.max_pq,
            (self.max_branch > 0).then_some(self.max_branch),
        )
    }
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Print the canonical form of a knot.
    Canon {
        knot: String,
        #[command(flatten)]
        out: Output,
    },
    /// Print the genus of a knot.
    Genus {
        knot: String,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether two knots are equal.
    Eq {
        a: String,
        b: String,
        #[command(flatten)]
        out: Output,
    },
    /// Check a knot, a link term, or a JSON document.
    Validate {
        input: String,
        #[command(flatten)]
        out: Output,
    },
    /// List the indexed components of a link term.
    Components {
        term: String,
        #[command(flatten)]
        out: Output,
    },
    /// Print the membership certificate of a link term.
    Derive {
        term: String,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate the class up to a derivation depth.
    Enumerate {
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        out: Output,
    },
    /// Build a round-handle decomposition from a stratified set (JSON).
    RhdBuild {
        input: String,
        #[command(flatten)]
        out: Output,
    },
    /// Core link of a plan, or of the plan built from a stratified set.
    RhdCores {
        input: String,
        #[command(flatten)]
        out: Output,
    },
    /// The pair of (2,2n+1) torus knots bounding Möbius bands.
    ExampleSeifert {
        #[arg(default_value_t = 1)]
        n: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Check the invariants of one term, or of every enumerated term.
    Invariants {
        term: Option<String>,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        out: Output,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Parse(String),
    Invalid(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<TermError> for Failure {
    fn from(e: TermError) -> Self {
        match e {
            TermError::Parse(p) => Failure::Parse(p.to_string()),
            e @ TermError::Move { .. } => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<RhdError> for Failure {
    fn from(e: RhdError) -> Self {
        match e {
            RhdError::Json(_) => Failure::Parse(e.to_string()),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<LinkError> for Failure {
    fn from(e: LinkError) -> Self {
        match e {
            LinkError::Json(_) => Failure::Parse(e.to_string()),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

struct Session {
    stdout: String,
    stderr: String,
    failed: bool,
}

impl Session {
    fn lint(&mut self, msg: impl std::fmt::Display) {
        let _ = writeln!(self.stderr, "{msg}");
    }
}

/// Runs one command line (`args[0]` is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut session = Session {
        stdout: String::new(),
        stderr: String::new(),
        failed: false,
    };
    let out = output_of(&cli.verb);
    let result = dispatch(cli.verb, &mut session);
    let code = match result {
        Ok(text) => {
            let mut text = text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &text) {
                        session.lint(format!("error: cannot write {}: {e}", path.display()));
                        return Outcome {
                            code: 1,
                            stdout: session.stdout,
                            stderr: session.stderr,
                        };
                    }
                }
                None => session.stdout.push_str(&text),
            }
            i32::from(session.failed)
        }
        Err(Failure::Parse(msg)) => {
            session.lint(format!("parse error: {msg}"));
            2
        }
        Err(Failure::Invalid(msg)) => {
            session.lint(format!("invalid: {msg}"));
            1
        }
    };
    Outcome {
        code,
        stdout: session.stdout,
        stderr: session.stderr,
    }
}

fn output_of(verb: &Verb) -> Option<PathBuf> {
    match verb {
        Verb::Canon { out, .. }
        | Verb::Genus { out, .. }
        | Verb::Eq { out, .. }
        | Verb::Validate { out, .. }
        | Verb::Components { out, .. }
        | Verb::Derive { out, .. }
        | Verb::Enumerate { out, .. }
        | Verb::RhdBuild { out, .. }
        | Verb::RhdCores { out, .. }
        | Verb::ExampleSeifert { out, .. }
        | Verb::Invariants { out, .. } => out.out.clone(),
    }
}

/// An argument naming an existing file is replaced by the file's contents.
fn read_input(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if !arg.trim_start().starts_with(['(', '{', '[']) && path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("cannot read {arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

/// Parses and validates a knot; a malformed node is reported at its own
/// position in the source.
fn read_knot(arg: &str) -> Result<KnotExpr, Failure> {
    let source = read_input(arg)?;
    let sexp = sexpr::parse(&source)?;
    let k = KnotExpr::from_sexp(&source, &sexp)?;
    if let Err(e) = k.validate() {
        let at = innermost_invalid(&source, &sexp)
            .map(|p| format!(" at {}: `{}`", p.location, p.snippet))
            .unwrap_or_default();
        return Err(Failure::Invalid(format!("{e}{at}")));
    }
    Ok(k)
}

fn innermost_invalid(source: &str, sexp: &Sexp) -> Option<ParseError> {
    for child in sexp.as_list().unwrap_or_default() {
        if let Some(found) = innermost_invalid(source, child) {
            return Some(found);
        }
    }
    match KnotExpr::from_sexp(source, sexp) {
        Ok(k) if k.validate().is_err() => Some(ParseError::at(source, sexp.span, "")),
        _ => None,
    }
}

fn read_term(arg: &str, session: &mut Session) -> Result<LinkTerm, Failure> {
    let source = read_input(arg)?;
    let t = LinkTerm::parse(&source)?;
    for l in t.lints() {
        session.lint(l);
    }
    Ok(t)
}

fn knot_error(e: knot::KnotError) -> Failure {
    Failure::Invalid(e.to_string())
}

fn dispatch(verb: Verb, s: &mut Session) -> Result<String, Failure> {
    match verb {
        Verb::Canon { knot, out } => {
            let k = knot::canonicalize(&read_knot(&knot)?).map_err(knot_error)?;
            Ok(if out.json {
                pretty(
                    &json!({ "knot": k.to_string(), "prime": knot::is_prime(&k).map_err(knot_error)? }),
                )
            } else {
                k.to_string()
            })
        }
        Verb::Genus { knot, out } => {
            let k = read_knot(&knot)?;
            let g = knot::genus(&k).map_err(knot_error)?;
            Ok(if out.json {
                pretty(
                    &json!({ "knot": knot::canonicalize(&k).map_err(knot_error)?.to_string(), "genus": g }),
                )
            } else {
                g.to_string()
            })
        }
        Verb::Eq { a, b, out } => {
            let (a, b) = (read_knot(&a)?, read_knot(&b)?);
            let equal = knot::equals(&a, &b).map_err(knot_error)?;
            Ok(if out.json {
                pretty(&json!({ "equal": equal }))
            } else {
                equal.to_string()
            })
        }
        Verb::Validate { input, out } => validate(&input, out.json, s),
        Verb::Components { term, out } => {
            let t = read_term(&term, s)?;
            Ok(if out.json {
                t.link().to_json()
            } else {
                describe_link(t.link())
            })
        }
        Verb::Derive { term, out } => {
            let t = read_term(&term, s)?;
            let cert = wada::derivation(&t);
            Ok(if out.json {
                let steps: Vec<Value> = cert
                    .steps
                    .iter()
                    .map(|st| {
                        json!({
                            "axiom": st.axiom.to_string(),
                            "arguments": st.summary,
                            "conditions": st.conditions,
                            "link": st.link.key().to_string(),
                        })
                    })
                    .collect();
                pretty(&json!({ "summary": cert.summary(), "steps": steps }))
            } else {
                format!("{}\n{}", cert.summary(), cert.detailed())
            })
        }
        Verb::Enumerate { bounds, out } => {
            let e = wada::enumerate(bounds.depth, &bounds.caps());
            if e.truncated {
                s.lint("warning: enumeration truncated by the term cap");
            }
            Ok(if out.json {
                let items: Vec<Value> = e
                    .terms()
                    .map(|t| {
                        json!({
                            "depth": t.depth(),
                            "term": t.to_string(),
                            "link": serde_json::to_value(t.link()).expect("links serialize"),
                        })
                    })
                    .collect();
                pretty(&json!({ "truncated": e.truncated, "links": items }))
            } else {
                e.snapshot()
            })
        }
        Verb::RhdBuild { input, out } => {
            let set = StratifiedSet::from_json(&read_input(&input)?)?;
            for l in set.validate()?.lints {
                s.lint(format!("lint: {l}"));
            }
            let plan = rhd::build_rhd(&set)?;
            Ok(if out.json {
                plan.to_json()
            } else {
                plan.to_string()
            })
        }
        Verb::RhdCores { input, out } => {
            let text = read_input(&input)?;
            let plan = match schema_of(&text)?.as_str() {
                RHD_PLAN_SCHEMA => RhdPlan::from_json(&text)?,
                _ => rhd::build_rhd(&StratifiedSet::from_json(&text)?)?,
            };
            let link = rhd::cores_link(&plan)?;
            Ok(if out.json {
                link.to_json()
            } else {
                describe_link(&link)
            })
        }
        Verb::ExampleSeifert { n, out } => {
            let set = rhd::seifert_example(n)?;
            Ok(if out.json {
                set.to_json()
            } else {
                set.to_string()
            })
        }
        Verb::Invariants { term, bounds, out } => match term {
            Some(term) => {
                let t = read_term(&term, s)?;
                let r = wada::check_invariants(t.link());
                s.failed = !r.all_pass();
                Ok(if out.json {
                    pretty(&serde_json::to_value(&r).expect("reports serialize"))
                } else {
                    r.to_string()
                })
            }
            None => {
                let e = wada::enumerate(bounds.depth, &bounds.caps());
                let failures: Vec<(&LinkTerm, wada::InvariantReport)> = e
                    .terms()
                    .map(|t| (t, wada::check_invariants(t.link())))
                    .filter(|(_, r)| !r.all_pass())
                    .collect();
                s.failed = !failures.is_empty();
                if out.json {
                    let bad: Vec<Value> = failures
                        .iter()
                        .map(|(t, r)| json!({ "term": t.to_string(), "report": r }))
                        .collect();
                    return Ok(pretty(&json!({
                        "terms": e.len(),
                        "truncated": e.truncated,
                        "failures": bad,
                    })));
                }
                let mut text = if failures.is_empty() {
                    format!(
                        "all terms pass: unknots ≥ 2; index 0 and 2 present\n{} terms checked (depth {}, p,q ≤ {})",
                        e.len(),
                        bounds.depth,
                        bounds.max_pq
                    )
                } else {
                    format!("{} of {} terms FAIL", failures.len(), e.len())
                };
                for (t, r) in &failures {
                    let _ = write!(text, "\n{t}\n{r}");
                }
                Ok(text)
            }
        },
    }
}

fn schema_of(text: &str) -> Result<String, Failure> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Failure::Parse(format!("invalid JSON: {e}")))?;
    Ok(v.get("schema")
        .and_then(Value::as_str)
        .unwrap_or_default()
        .to_string())
}

fn describe_link(link: &IndexedLink) -> String {
    let mut text = link.to_string();
    for (i, c) in link.components().iter().enumerate() {
        let _ = write!(text, "\n#{i} {c} {} part {}", c.origin, link.part_of(i));
    }
    text
}

const TERM_HEADS: [&str; 7] = ["hopf", "I", "II", "III", "IV", "V", "VI"];

fn validate(input: &str, as_json: bool, s: &mut Session) -> Result<String, Failure> {
    let source = read_input(input)?;
    if source.trim_start().starts_with('{') {
        return match schema_of(&source)?.as_str() {
            STRATIFIED_SET_SCHEMA => {
                let report = StratifiedSet::from_json(&source)?.validate()?;
                for l in &report.lints {
                    s.lint(format!("lint: {l}"));
                }
                Ok(if as_json {
                    pretty(&serde_json::to_value(&report).expect("reports serialize"))
                } else {
                    report.to_string()
                })
            }
            RHD_PLAN_SCHEMA => {
                let plan = RhdPlan::from_json(&source)?;
                let [h0, h1, h2] = plan.handle_counts();
                Ok(format!("valid round-handle decomposition: {h0} of index 0, {h1} of index 1, {h2} of index 2"))
            }
            INDEXED_LINK_SCHEMA => {
                let link = IndexedLink::from_json(&source)?;
                Ok(format!("valid indexed link\n{link}"))
            }
            other => Err(Failure::Parse(format!("unknown document schema `{other}`"))),
        };
    }
    let sexp = sexpr::parse(&source)?;
    let is_term = sexp.head().is_some_and(|h| TERM_HEADS.contains(&h));
    if is_term {
        let t = read_term(&source, s)?;
        Ok(if as_json {
            pretty(&json!({
                "valid": true,
                "derivation": wada::derivation(&t).summary(),
                "link": serde_json::to_value(t.link()).expect("links serialize"),
            }))
        } else {
            format!("valid\n{}", t.link())
        })
    } else {
        let k = read_knot(&source)?;
        let c = knot::canonicalize(&k).map_err(knot_error)?;
        Ok(if as_json {
            pretty(&json!({ "valid": true, "canonical": c.to_string() }))
        } else {
            format!("valid\n{c}")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Outcome {
        run(std::iter::once("knotflow").chain(args.iter().copied()))
    }

    #[test]
    fn canon_example() {
        let o = cli(&["canon", "(cab 1 5 (cab 2 3 U))"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "(cab 2 3 U)\n"));
    }

    #[test]
    fn axiom_v_violation_exits_one() {
        let o = cli(&["validate", "(V (hopf) #1 2 3 0 0)"]);
        assert_eq!(o.code, 1);
        assert!(o
            .stderr
            .contains("at least one of them must be equal to the index of K"));
    }

    #[test]
    fn parse_errors_exit_two() {
        assert_eq!(cli(&["canon", "(cab 2 3"]).code, 2);
        assert_eq!(cli(&["frobnicate"]).code, 2);
        assert_eq!(cli(&["canon", "U", "--bogus"]).code, 2);
    }

    #[test]
    fn malformed_knot_is_located() {
        let o = cli(&["canon", "(sum (cab 2 3 U) (cab 2 4 U))"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("at 1:18"), "{}", o.stderr);
    }
}

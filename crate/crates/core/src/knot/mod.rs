//! Zero-entropy knots: the closure of the unknot under cabling and connected sum.
//!
//! Knots are treated up to unoriented isotopy *and* reflection, so cable
//! parameters are normalized to `(|p|, |q|)`. A `(p, q)`-cable wraps `p`
//! times along the companion (Seifert framing) and `q` times around it.
//!
//! # Text syntax
//!
//! ```text
//! knot := "U"
//!       | "(" "cab" INT INT knot ")"
//!       | "(" "sum" knot knot+ ")"
//! ```
//!
//! Whitespace separates tokens and `;` starts a line comment. The printer
//! emits exactly this grammar, so `parse(print(k)) == k` for any tree.
//!
//! # Canonical form
//!
//! A tree is canonical when
//! - every cable has `p >= 2` and `q >= 1`,
//! - a cable of the unknot (a torus knot) has `2 <= p < q`,
//! - no sum contains a sum or an unknot, and sum factors are sorted by [`Ord`].
//!
//! The total order compares the prefix-free encoding returned by
//! [`KnotExpr::encode`] lexicographically.

pub mod rewrite;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::sexpr::{self, ParseError, Sexp};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    Unknot,
    Cable {
        p: i64,
        q: i64,
        companion: Box<KnotExpr>,
    },
    Sum(Vec<KnotExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("cable parameters ({p}, {q}) are not coprime in `{subterm}`")]
    NotCoprime { p: i64, q: i64, subterm: String },
    #[error("connected sum needs at least two factors, found {count} in `{subterm}`")]
    ShortSum { count: usize, subterm: String },
    #[error("expected a knot in canonical form, got `{subterm}`")]
    NotCanonical { subterm: String },
}

pub fn gcd(a: i64, b: i64) -> u64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl KnotExpr {
    pub fn cable_of(p: i64, q: i64, companion: KnotExpr) -> KnotExpr {
        KnotExpr::Cable {
            p,
            q,
            companion: Box::new(companion),
        }
    }

    /// Torus knot `T(p, q)` as a raw (not necessarily canonical) cable of the unknot.
    pub fn torus(p: i64, q: i64) -> KnotExpr {
        KnotExpr::cable_of(p, q, KnotExpr::Unknot)
    }

    /// Checks the gcd condition on every cable and the arity of every sum.
    pub fn validate(&self) -> Result<(), KnotError> {
        match self {
            KnotExpr::Unknot => Ok(()),
            KnotExpr::Cable { p, q, companion } => {
                if gcd(*p, *q) != 1 {
                    return Err(KnotError::NotCoprime {
                        p: *p,
                        q: *q,
                        subterm: self.to_string(),
                    });
                }
                companion.validate()
            }
            KnotExpr::Sum(factors) => {
                if factors.len() < 2 {
                    return Err(KnotError::ShortSum {
                        count: factors.len(),
                        subterm: self.to_string(),
                    });
                }
                factors.iter().try_for_each(KnotExpr::validate)
            }
        }
    }

    /// Structural check of the canonical-form conditions listed in the module docs.
    pub fn is_canonical(&self) -> bool {
        match self {
            KnotExpr::Unknot => true,
            KnotExpr::Cable { p, q, companion } => {
                let base = *p >= 2 && *q >= 1 && gcd(*p, *q) == 1 && companion.is_canonical();
                match **companion {
                    KnotExpr::Unknot => base && q > p,
                    _ => base,
                }
            }
            KnotExpr::Sum(factors) => {
                factors.len() >= 2
                    && factors
                        .iter()
                        .all(|f| matches!(f, KnotExpr::Cable { .. }) && f.is_canonical())
                    && factors.windows(2).all(|w| w[0] <= w[1])
            }
        }
    }

    /// Prefix-free integer encoding: `U -> [0]`, `(cab p q K) -> [1, p, q, K..]`,
    /// `(sum K1 .. Kn) -> [2, n, K1.., .., Kn..]`.
    pub fn encode(&self) -> Vec<i64> {
        let mut out = Vec::new();
        self.encode_into(&mut out);
        out
    }

    fn encode_into(&self, out: &mut Vec<i64>) {
        match self {
            KnotExpr::Unknot => out.push(0),
            KnotExpr::Cable { p, q, companion } => {
                out.extend([1, *p, *q]);
                companion.encode_into(out);
            }
            KnotExpr::Sum(factors) => {
                out.extend([2, factors.len() as i64]);
                factors.iter().for_each(|f| f.encode_into(out));
            }
        }
    }

    fn tag(&self) -> u8 {
        match self {
            KnotExpr::Unknot => 0,
            KnotExpr::Cable { .. } => 1,
            KnotExpr::Sum(_) => 2,
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            KnotExpr::Unknot => 1,
            KnotExpr::Cable { companion, .. } => 1 + companion.size(),
            KnotExpr::Sum(factors) => 1 + factors.iter().map(KnotExpr::size).sum::<usize>(),
        }
    }

    pub fn parse(source: &str) -> Result<KnotExpr, ParseError> {
        let sexp = sexpr::parse(source)?;
        KnotExpr::from_sexp(source, &sexp)
    }

    pub fn from_sexp(source: &str, sexp: &Sexp) -> Result<KnotExpr, ParseError> {
        if let Some(atom) = sexp.as_atom() {
            return match atom {
                "U" => Ok(KnotExpr::Unknot),
                _ => Err(ParseError::at(
                    source,
                    sexp.span,
                    "unknown knot atom (expected `U`)",
                )),
            };
        }
        let items = sexp.as_list().unwrap_or_default();
        match sexp.head() {
            Some("cab") => {
                if items.len() != 4 {
                    return Err(ParseError::at(
                        source,
                        sexp.span,
                        "`cab` takes exactly three arguments: p q knot",
                    ));
                }
                let p = sexpr::int_atom(source, &items[1], "cable parameter p")?;
                let q = sexpr::int_atom(source, &items[2], "cable parameter q")?;
                let companion = KnotExpr::from_sexp(source, &items[3])?;
                Ok(KnotExpr::cable_of(p, q, companion))
            }
            Some("sum") => items[1..]
                .iter()
                .map(|f| KnotExpr::from_sexp(source, f))
                .collect::<Result<Vec<_>, _>>()
                .map(KnotExpr::Sum),
            _ => Err(ParseError::at(
                source,
                sexp.span,
                "expected `U`, `(cab p q K)` or `(sum K1 K2 ...)`",
            )),
        }
    }
}

impl Ord for KnotExpr {
    fn cmp(&self, other: &Self) -> Ordering {
        // Same result as comparing `encode()` outputs, without allocating.
        match (self, other) {
            (
                KnotExpr::Cable { p, q, companion },
                KnotExpr::Cable {
                    p: p2,
                    q: q2,
                    companion: c2,
                },
            ) => p.cmp(p2).then(q.cmp(q2)).then_with(|| companion.cmp(c2)),
            (KnotExpr::Sum(a), KnotExpr::Sum(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            _ => self.tag().cmp(&other.tag()),
        }
    }
}

impl PartialOrd for KnotExpr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => f.write_str("U"),
            KnotExpr::Cable { p, q, companion } => write!(f, "(cab {p} {q} {companion})"),
            KnotExpr::Sum(factors) => {
                f.write_str("(sum")?;
                for k in factors {
                    write!(f, " {k}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for KnotExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        KnotExpr::parse(s)
    }
}

impl serde::Serialize for KnotExpr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for KnotExpr {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        KnotExpr::parse(&s).map_err(serde::de::Error::custom)
    }
}

fn canon(k: &KnotExpr) -> KnotExpr {
    match k {
        KnotExpr::Unknot => KnotExpr::Unknot,
        KnotExpr::Cable { p, q, companion } => {
            let companion = canon(companion);
            let (p, q) = (p.abs(), q.abs());
            match (p, companion) {
                (0, _) => KnotExpr::Unknot,
                (1, companion) => companion,
                (_, KnotExpr::Unknot) if q <= 1 => KnotExpr::Unknot,
                (_, KnotExpr::Unknot) => KnotExpr::torus(p.min(q), p.max(q)),
                (_, companion) => KnotExpr::cable_of(p, q, companion),
            }
        }
        KnotExpr::Sum(factors) => {
            let mut flat = Vec::with_capacity(factors.len());
            for f in factors {
                match canon(f) {
                    KnotExpr::Unknot => {}
                    KnotExpr::Sum(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            from_prime_list(flat)
        }
    }
}

fn from_prime_list(mut primes: Vec<KnotExpr>) -> KnotExpr {
    match primes.len() {
        0 => KnotExpr::Unknot,
        1 => primes.pop().unwrap(),
        _ => {
            primes.sort();
            KnotExpr::Sum(primes)
        }
    }
}

/// Unique canonical representative of the knot class of `k`.
pub fn canonicalize(k: &KnotExpr) -> Result<KnotExpr, KnotError> {
    k.validate()?;
    Ok(canon(k))
}

pub fn is_unknot(k: &KnotExpr) -> Result<bool, KnotError> {
    Ok(canonicalize(k)? == KnotExpr::Unknot)
}

pub fn connected_sum(a: &KnotExpr, b: &KnotExpr) -> Result<KnotExpr, KnotError> {
    a.validate()?;
    b.validate()?;
    Ok(canon(&KnotExpr::Sum(vec![a.clone(), b.clone()])))
}

pub fn cable(p: i64, q: i64, k: &KnotExpr) -> Result<KnotExpr, KnotError> {
    canonicalize(&KnotExpr::cable_of(p, q, k.clone()))
}

/// True for cables, false for the unknot and for sums.
///
/// The argument must already be canonical.
pub fn is_prime(k: &KnotExpr) -> Result<bool, KnotError> {
    k.validate()?;
    if !k.is_canonical() {
        return Err(KnotError::NotCanonical {
            subterm: k.to_string(),
        });
    }
    Ok(matches!(k, KnotExpr::Cable { .. }))
}

/// Prime decomposition: empty for the unknot, the factors of a sum, or the
/// knot itself when it is a cable.
pub fn prime_factors(k: &KnotExpr) -> Result<Vec<KnotExpr>, KnotError> {
    Ok(match canonicalize(k)? {
        KnotExpr::Unknot => Vec::new(),
        KnotExpr::Sum(factors) => factors,
        cable => vec![cable],
    })
}

/// Connected sum of a list of knots; the inverse of [`prime_factors`].
pub fn sum_of(factors: &[KnotExpr]) -> Result<KnotExpr, KnotError> {
    factors
        .iter()
        .try_fold(KnotExpr::Unknot, |acc, f| connected_sum(&acc, f))
}

/// Seifert genus, via `g(C(p,q,K)) = p g(K) + (p-1)(q-1)/2` and additivity.
pub fn genus(k: &KnotExpr) -> Result<u64, KnotError> {
    fn go(k: &KnotExpr) -> u64 {
        match k {
            KnotExpr::Unknot => 0,
            KnotExpr::Sum(factors) => factors.iter().map(go).sum(),
            KnotExpr::Cable { p, q, companion } => {
                let (p, q) = (p.unsigned_abs(), q.unsigned_abs());
                p * go(companion) + (p - 1) * (q - 1) / 2
            }
        }
    }
    Ok(go(&canonicalize(k)?))
}

pub fn equals(a: &KnotExpr, b: &KnotExpr) -> Result<bool, KnotError> {
    Ok(canonicalize(a)? == canonicalize(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> KnotExpr {
        KnotExpr::parse(s).unwrap()
    }

    fn trefoil() -> KnotExpr {
        KnotExpr::torus(2, 3)
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(
            canonicalize(&k("(cab 1 5 (cab 2 3 U))")).unwrap(),
            trefoil()
        );
        assert_eq!(canonicalize(&k("(sum U (cab 2 3 U))")).unwrap(), trefoil());
        assert_eq!(canonicalize(&k("(cab 3 2 U)")).unwrap(), trefoil());
        assert_eq!(canonicalize(&k("(cab 2 1 U)")).unwrap(), KnotExpr::Unknot);
        assert_eq!(
            canonicalize(&k("(cab 0 -1 (cab 2 3 U))")).unwrap(),
            KnotExpr::Unknot
        );
        assert_eq!(canonicalize(&k("(cab -2 -3 U)")).unwrap(), trefoil());
        assert_eq!(
            canonicalize(&k("(cab -1 4 (cab 3 2 U))")).unwrap(),
            trefoil()
        );
        assert_eq!(
            canonicalize(&k("(sum (sum (cab 2 5 U) U) (cab 3 2 U))")).unwrap(),
            k("(sum (cab 2 3 U) (cab 2 5 U))")
        );
        assert_eq!(canonicalize(&k("(sum U U U)")).unwrap(), KnotExpr::Unknot);
    }

    #[test]
    fn cable_of_nontrivial_companion_keeps_q_one() {
        let c = canonicalize(&k("(cab 2 1 (cab 2 3 U))")).unwrap();
        assert_eq!(c, k("(cab 2 1 (cab 2 3 U))"));
        assert!(c.is_canonical());
        assert_eq!(genus(&c).unwrap(), 2);
    }

    #[test]
    fn validation_names_subterm() {
        let err = canonicalize(&k("(sum U (cab 2 4 U))")).unwrap_err();
        assert_eq!(
            err,
            KnotError::NotCoprime {
                p: 2,
                q: 4,
                subterm: "(cab 2 4 U)".into()
            }
        );
        let err = canonicalize(&k("(cab 2 3 (sum U))")).unwrap_err();
        assert!(matches!(err, KnotError::ShortSum { count: 1, .. }));
        assert!(err.to_string().contains("(sum U)"));
        assert!(canonicalize(&k("(cab 0 0 U)")).is_err());
        assert!(cable(2, 4, &KnotExpr::Unknot).is_err());
    }

    #[test]
    fn unknot_detection() {
        assert!(is_unknot(&KnotExpr::Unknot).unwrap());
        for n in 1..6 {
            assert!(!is_unknot(&KnotExpr::torus(2, 2 * n + 1)).unwrap());
        }
        assert!(!is_unknot(&k("(sum (cab 2 3 U) (cab 2 3 U))")).unwrap());
    }

    #[test]
    fn sums_and_cables() {
        let t = trefoil();
        assert_eq!(
            connected_sum(&KnotExpr::Unknot, &k("(cab 3 2 U)")).unwrap(),
            t
        );
        assert_eq!(
            connected_sum(&t, &t).unwrap(),
            KnotExpr::Sum(vec![t.clone(), t.clone()])
        );
        assert_eq!(cable(2, 3, &KnotExpr::Unknot).unwrap(), t);
        assert_eq!(cable(1, 7, &k("(cab 3 2 U)")).unwrap(), t);
    }

    #[test]
    fn primality() {
        assert!(is_prime(&trefoil()).unwrap());
        assert!(is_prime(&k("(cab 2 5 (sum (cab 2 3 U) (cab 2 3 U)))")).unwrap());
        assert!(!is_prime(&k("(sum (cab 2 3 U) (cab 2 5 U))")).unwrap());
        assert!(!is_prime(&KnotExpr::Unknot).unwrap());
        assert!(matches!(
            is_prime(&k("(cab 3 2 U)")),
            Err(KnotError::NotCanonical { .. })
        ));
        assert!(is_prime(&k("(sum (cab 2 5 U) (cab 2 3 U))")).is_err());
    }

    #[test]
    fn factors() {
        assert!(prime_factors(&KnotExpr::Unknot).unwrap().is_empty());
        let s = k("(sum (cab 2 3 U) (cab 2 5 U))");
        assert_eq!(
            prime_factors(&s).unwrap(),
            vec![trefoil(), KnotExpr::torus(2, 5)]
        );
        assert_eq!(sum_of(&prime_factors(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus(&trefoil()).unwrap(), 1);
        assert_eq!(genus(&k("(cab 2 7 (cab 2 3 U))")).unwrap(), 5);
        assert_eq!(genus(&k("(sum (cab 2 3 U) (cab 2 5 U))")).unwrap(), 3);
        assert_eq!(genus(&KnotExpr::Unknot).unwrap(), 0);
    }

    #[test]
    fn equality() {
        assert!(equals(&k("(cab 1 9 (cab 2 3 U))"), &trefoil()).unwrap());
        let (a, b) = (trefoil(), KnotExpr::torus(2, 5));
        assert!(equals(
            &KnotExpr::Sum(vec![a.clone(), b.clone()]),
            &KnotExpr::Sum(vec![b.clone(), a.clone()])
        )
        .unwrap());
        assert!(!equals(&a, &b).unwrap());
    }

    #[test]
    fn order_matches_encoding() {
        let samples = [
            "U",
            "(cab 2 3 U)",
            "(cab 2 5 U)",
            "(cab 3 4 U)",
            "(cab 2 1 (cab 2 3 U))",
            "(cab 2 3 (cab 2 3 U))",
            "(sum (cab 2 3 U) (cab 2 3 U))",
            "(sum (cab 2 3 U) (cab 2 5 U))",
            "(sum (cab 2 3 U) (cab 2 3 U) (cab 2 3 U))",
        ];
        for a in samples {
            for b in samples {
                let (ka, kb) = (k(a), k(b));
                assert_eq!(ka.cmp(&kb), ka.encode().cmp(&kb.encode()), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert!(KnotExpr::parse("(cab 2 U)").is_err());
        assert!(KnotExpr::parse("(cab x 3 U)").is_err());
        assert!(KnotExpr::parse("V").is_err());
        assert!(KnotExpr::parse("(foo)").is_err());
        // short sums parse; validation rejects them
        assert_eq!(
            KnotExpr::parse("(sum U)").unwrap(),
            KnotExpr::Sum(vec![KnotExpr::Unknot])
        );
    }
}

//! Independent genus oracle: Alexander polynomials computed from braid words
//! through the unreduced Burau representation.
//!
//! For a braid `b` on `n` strands with closure a knot, the `(n-1)`-minor of
//! `I - Burau(b)` equals `t^k * Alexander(t)`. Torus knots `T(p,q)` are the
//! closures of `(s_1 ... s_{p-1})^q`, cables use the satellite formula
//! `A_{C(p,q,K)}(t) = A_K(t^p) * A_{T(p,q)}(t)` and connected sums multiply.
//! Every knot in the zero-entropy class is fibered, so genus = span / 2.
//!
//! This module walks raw (non-canonical) trees and never calls the library's
//! canonicalization or genus code.

use std::collections::HashMap;

use knotflow::KnotExpr;

/// Dense integer polynomial, `coeffs[i]` is the coefficient of `t^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<i128>);

impl Poly {
    pub fn constant(c: i128) -> Poly {
        Poly(vec![c]).trim()
    }

    pub fn monomial(c: i128, deg: usize) -> Poly {
        let mut v = vec![0; deg + 1];
        v[deg] = c;
        Poly(v).trim()
    }

    fn trim(mut self) -> Poly {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
            .collect();
        Poly(v).trim()
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(vec![]);
        }
        let mut v = vec![0i128; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly(v).trim()
    }

    /// Exact division; panics if `divisor` does not divide `self` in Z[t].
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dl = divisor.0.len();
        let lead = *divisor.0.last().unwrap();
        if rem.len() < dl {
            assert!(self.is_zero(), "inexact polynomial division");
            return Poly(vec![]);
        }
        let mut quot = vec![0i128; rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dl - 1];
            assert!(top % lead == 0, "inexact polynomial division");
            let c = top / lead;
            quot[k] = c;
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
        Poly(quot).trim()
    }

    /// `p(t) -> p(t^k)`.
    pub fn substitute_power(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; (self.0.len() - 1) * k + 1];
        for (i, c) in self.0.iter().enumerate() {
            v[i * k] = *c;
        }
        Poly(v).trim()
    }

    /// Difference between the highest and lowest nonzero degree.
    pub fn span(&self) -> usize {
        let lo = self
            .0
            .iter()
            .position(|&c| c != 0)
            .expect("zero polynomial has no span");
        self.0.len() - 1 - lo
    }

    /// Removes the `t^k` factor and fixes the sign so the lowest coefficient is positive.
    pub fn normalized(&self) -> Poly {
        let lo = self
            .0
            .iter()
            .position(|&c| c != 0)
            .expect("zero polynomial");
        let mut v = self.0[lo..].to_vec();
        if v[0] < 0 {
            v.iter_mut().for_each(|c| *c = -*c);
        }
        Poly(v)
    }
}

/// Fraction-free (Bareiss) determinant over Z[t].
pub fn determinant(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(1);
    }
    let mut sign = 1i128;
    let mut prev = Poly::constant(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Poly(vec![]),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        d.neg()
    } else {
        d
    }
}

/// Unreduced Burau matrix of a positive braid word on `n` strands
/// (generators are 0-based: `i` means `s_{i+1}`).
pub fn burau(n: usize, word: &[usize]) -> Vec<Vec<Poly>> {
    let one = Poly::constant(1);
    let zero = Poly(vec![]);
    let mut m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { one.clone() } else { zero.clone() })
                .collect()
        })
        .collect();
    for &g in word {
        // right-multiply by the generator: columns g and g+1 change
        for row in m.iter_mut() {
            let a = row[g].clone();
            let b = row[g + 1].clone();
            // [a b] * [[1-t, t], [1, 0]] = [a(1-t) + b, a t]
            row[g] = a.mul(&Poly(vec![1, -1])).add(&b);
            row[g + 1] = a.mul(&Poly::monomial(1, 1));
        }
    }
    m
}

/// Alexander polynomial of the closure of a positive braid that closes to a knot.
pub fn braid_alexander(n: usize, word: &[usize]) -> Poly {
    if n == 1 {
        return Poly::constant(1);
    }
    let b = burau(n, word);
    let minor: Vec<Vec<Poly>> = (0..n - 1)
        .map(|i| {
            (0..n - 1)
                .map(|j| {
                    let id = if i == j {
                        Poly::constant(1)
                    } else {
                        Poly(vec![])
                    };
                    id.sub(&b[i][j])
                })
                .collect()
        })
        .collect();
    determinant(minor).normalized()
}

pub fn torus_braid(p: usize, q: usize) -> Vec<usize> {
    (0..q).flat_map(|_| 0..p - 1).collect()
}

/// Closed form `(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))`, used only to audit the Burau route.
pub fn torus_alexander_closed_form(p: usize, q: usize) -> Poly {
    let tk_minus_1 = |k: usize| Poly::monomial(1, k).sub(&Poly::constant(1));
    tk_minus_1(p * q)
        .mul(&tk_minus_1(1))
        .div_exact(&tk_minus_1(p).mul(&tk_minus_1(q)))
        .normalized()
}

/// Braid-based Alexander polynomial of any well-formed zero-entropy tree.
#[derive(Default)]
pub struct AlexanderOracle {
    torus: HashMap<(usize, usize), Poly>,
}

impl AlexanderOracle {
    pub fn torus(&mut self, p: usize, q: usize) -> Poly {
        if p <= 1 || q <= 1 {
            return Poly::constant(1);
        }
        self.torus
            .entry((p, q))
            .or_insert_with(|| braid_alexander(p, &torus_braid(p, q)))
            .clone()
    }

    pub fn alexander(&mut self, k: &KnotExpr) -> Poly {
        match k {
            KnotExpr::Unknot => Poly::constant(1),
            KnotExpr::Sum(factors) => factors
                .iter()
                .fold(Poly::constant(1), |acc, f| acc.mul(&self.alexander(f))),
            KnotExpr::Cable { p, q, companion } => {
                let (p, q) = (p.unsigned_abs() as usize, q.unsigned_abs() as usize);
                if p == 0 {
                    // (0, 1): meridian
                    return Poly::constant(1);
                }
                let inner = self.alexander(companion).substitute_power(p);
                inner.mul(&self.torus(p, q)).normalized()
            }
        }
    }

    pub fn genus(&mut self, k: &KnotExpr) -> u64 {
        let span = self.alexander(k).span();
        assert!(span.is_multiple_of(2), "odd Alexander span {span}");
        (span / 2) as u64
    }
}

/// Seifert's algorithm on a positive braid closure: `n` disks, one band per
/// crossing, Euler characteristic `n - c`, one boundary component.
pub fn braid_seifert_genus(n: usize, word: &[usize]) -> u64 {
    let c = word.len();
    ((c + 1 - n) / 2) as u64
}

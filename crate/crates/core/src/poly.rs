//! Small exact polynomial types used by the classifiers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::config::{Expr, FnRegistry};

/// Dense univariate polynomial, `coeffs[i]` is the coefficient of `x^i`.
/// Trailing zeros are trimmed on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<i64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `c * x^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i64 {
        self.coeffs.first().copied().unwrap_or(0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Horner evaluation in `i128`, `None` on overflow.
    pub fn eval_i128(&self, x: i128) -> Option<i128> {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x)?.checked_add(c as i128)?;
        }
        Some(acc)
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact value as a `BigInt`, taking the fast path when it fits.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        match x.to_i128().and_then(|v| self.eval_i128(v)) {
            Some(v) => BigInt::from(v),
            None => self.eval_big(x),
        }
    }

    pub fn to_expr(&self, var: &str) -> Expr {
        let mut out: Option<Expr> = None;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = match k {
                0 => Expr::constant(c),
                1 => Expr::mul(Expr::constant(c), Expr::var(var)),
                _ => Expr::mul(Expr::constant(c), Expr::pow(Expr::var(var), Expr::constant(k as i64))),
            };
            out = Some(match out {
                None => term,
                Some(acc) => Expr::add(acc, term),
            });
        }
        out.unwrap_or_else(|| Expr::constant(0))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            write!(f, "{sign}")?;
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "x")?,
                (1, m) => write!(f, "{m}x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, m) => write!(f, "{m}x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial over named variables, exponents listed in
/// `vars` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub vars: Vec<String>,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    fn constant(vars: &[String], c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars.len()], c);
        }
        MPoly { vars: vars.to_vec(), terms }
    }

    fn variable(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        MPoly { vars: vars.to_vec(), terms: BTreeMap::from([(e, BigInt::one())]) }
    }

    fn add(mut self, other: &MPoly, sign: i32) -> Self {
        for (e, c) in &other.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            if sign > 0 {
                *entry += c;
            } else {
                *entry -= c;
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    fn mul(&self, other: &MPoly) -> Self {
        let mut out = MPoly::constant(&self.vars, BigInt::zero());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *out.terms.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Expands an expression without function symbols and with constant
    /// exponents. `None` otherwise.
    pub fn expand(e: &Expr, vars: &[String]) -> Option<MPoly> {
        Some(match e {
            Expr::Const(c) => MPoly::constant(vars, c.clone()),
            Expr::Var(v) => MPoly::variable(vars, vars.iter().position(|w| w == v)?),
            Expr::Add(a, b) => MPoly::expand(a, vars)?.add(&MPoly::expand(b, vars)?, 1),
            Expr::Sub(a, b) => MPoly::expand(a, vars)?.add(&MPoly::expand(b, vars)?, -1),
            Expr::Mul(a, b) => MPoly::expand(a, vars)?.mul(&MPoly::expand(b, vars)?),
            Expr::Pow(a, b) => {
                let k = b.eval(&Default::default(), &FnRegistry::new()).ok()?;
                if k.is_negative() || k > BigInt::from(64) {
                    return None;
                }
                let base = MPoly::expand(a, vars)?;
                let mut acc = MPoly::constant(vars, BigInt::one());
                for _ in 0..k.to_u32()? {
                    acc = acc.mul(&base);
                }
                acc
            }
            Expr::Apply(..) => return None,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Variables with a nonzero exponent in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    /// If no term mixes variables, the univariate part in variable `i`
    /// (constant term excluded). `None` if a coefficient exceeds `i64`.
    pub fn univariate_part(&self, i: usize) -> Option<Poly> {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if e[i] > 0 && e.iter().enumerate().all(|(j, &k)| j == i || k == 0) {
                let k = e[i] as usize;
                if coeffs.len() <= k {
                    coeffs.resize(k + 1, 0);
                }
                coeffs[k] = c.to_i64()?;
            }
        }
        Some(Poly::new(coeffs))
    }

    pub fn is_separable(&self) -> bool {
        self.terms.keys().all(|e| e.iter().filter(|&&k| k > 0).count() <= 1)
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&vec![0; self.vars.len()]).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }
}

/// Polynomial in `x` and `y`, `coeffs[i][j]` multiplying `x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly2 {
    pub coeffs: Vec<Vec<i64>>,
}

impl Poly2 {
    pub fn new(coeffs: Vec<Vec<i64>>) -> Self {
        Poly2 { coeffs }
    }

    pub fn from_terms(terms: &[(u32, u32, i64)]) -> Self {
        let dx = terms.iter().map(|t| t.0).max().unwrap_or(0) as usize;
        let dy = terms.iter().map(|t| t.1).max().unwrap_or(0) as usize;
        let mut coeffs = vec![vec![0; dy + 1]; dx + 1];
        for &(i, j, c) in terms {
            coeffs[i as usize][j as usize] += c;
        }
        Poly2 { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|&c| c == 0)
    }

    /// Divides by `y - x`, treating `self` as a polynomial in `y` over
    /// `Z[x]`. Returns the quotient's coefficients (`q[j]` is a polynomial
    /// in `x` multiplying `y^j`) and the remainder, which equals `P(x, x)`.
    pub fn divide_by_y_minus_x(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let dy = self.coeffs.iter().map(|r| r.len()).max().unwrap_or(0);
        let dx = self.coeffs.len();
        // a[j] = coefficient of y^j as a polynomial in x
        let a: Vec<Vec<BigInt>> = (0..dy)
            .map(|j| {
                (0..dx)
                    .map(|i| BigInt::from(self.coeffs[i].get(j).copied().unwrap_or(0)))
                    .collect()
            })
            .collect();
        if a.is_empty() {
            return (Vec::new(), Vec::new());
        }
        let shift = |p: &Vec<BigInt>| {
            let mut out = vec![BigInt::zero()];
            out.extend(p.iter().cloned());
            out
        };
        let add = |p: &Vec<BigInt>, q: &Vec<BigInt>| {
            let n = p.len().max(q.len());
            (0..n)
                .map(|i| p.get(i).cloned().unwrap_or_default() + q.get(i).cloned().unwrap_or_default())
                .collect::<Vec<BigInt>>()
        };
        // synthetic division by the root y = x
        let mut q = vec![Vec::new(); dy - 1];
        let mut carry: Vec<BigInt> = Vec::new();
        for j in (0..dy).rev() {
            let cur = add(&a[j], &shift(&carry));
            if j == 0 {
                let mut rem = cur;
                while rem.last().is_some_and(|c| c.is_zero()) {
                    rem.pop();
                }
                return (q, rem);
            }
            let mut trimmed = cur.clone();
            while trimmed.last().is_some_and(|c| c.is_zero()) {
                trimmed.pop();
            }
            q[j - 1] = trimmed;
            carry = cur;
        }
        unreachable!()
    }

    pub fn divisible_by_x_minus_y(&self) -> bool {
        self.divide_by_y_minus_x().1.is_empty()
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, row) in self.coeffs.iter().enumerate().rev() {
            for (j, &c) in row.iter().enumerate().rev() {
                if c == 0 {
                    continue;
                }
                let sign = if c < 0 { "-" } else if first { "" } else { "+" };
                let mag = c.unsigned_abs();
                write!(f, "{sign}")?;
                let mono = match (i, j) {
                    (0, 0) => String::new(),
                    _ => {
                        let p = |v: &str, k: usize| match k {
                            0 => String::new(),
                            1 => v.to_string(),
                            k => format!("{v}^{k}"),
                        };
                        let (a, b) = (p("x", i), p("y", j));
                        if a.is_empty() || b.is_empty() {
                            format!("{a}{b}")
                        } else {
                            format!("{a}*{b}")
                        }
                    }
                };
                if mono.is_empty() {
                    write!(f, "{mag}")?;
                } else if mag == 1 {
                    write!(f, "{mono}")?;
                } else {
                    write!(f, "{mag}*{mono}")?;
                }
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

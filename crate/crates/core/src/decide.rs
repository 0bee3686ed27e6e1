//! Syntactic classifiers for partition regularity and Ramsey partition
//! regularity of equations.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{AtomKind, Formula, ParseError};
use crate::poly::{MPoly, Poly, Poly2};
use crate::registry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    PR,
    NotPR,
    RamseyPR,
    NotRamseyPR,
    OpenInPaper,
}

impl Status {
    pub fn is_positive(self) -> bool {
        matches!(self, Status::PR | Status::RamseyPR)
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Status::NotPR | Status::NotRamseyPR)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::PR => "PR",
            Status::NotPR => "NotPR",
            Status::RamseyPR => "RamseyPR",
            Status::NotRamseyPR => "NotRamseyPR",
            Status::OpenInPaper => "OpenInPaper",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub reason: String,
    /// Registry slug of the result applied.
    pub citation: String,
}

impl Verdict {
    fn new(status: Status, citation: &str, reason: impl Into<String>) -> Self {
        debug_assert!(registry::lookup(citation).is_some(), "{citation}");
        Verdict { status, reason: reason.into(), citation: citation.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("malformed polynomial: {0}")]
    MalformedPolynomial(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported equation shape: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub fn rado_three(a: u64, b: u64, c: u64) -> Verdict {
    let pr = a == c || b == c || a + b == c;
    let status = if pr { Status::PR } else { Status::NotPR };
    let why = if a == c {
        "a=c"
    } else if b == c {
        "b=c"
    } else if a + b == c {
        "a+b=c"
    } else {
        "none of a=c, b=c, a+b=c"
    };
    Verdict::new(status, "rado-three-variable", format!("{a}x+{b}y={c}z: {why}"))
}

pub fn rado_columns(coeffs: &[i64]) -> Result<Verdict, DecideError> {
    if coeffs.is_empty() || coeffs.contains(&0) {
        return Err(DecideError::Precondition("coefficients must be nonzero and nonempty".into()));
    }
    if coeffs.len() > 24 {
        return Err(DecideError::Precondition("at most 24 coefficients".into()));
    }
    let n = coeffs.len();
    let hit = (1u32..1 << n).find(|mask| {
        (0..n).filter(|i| mask >> i & 1 == 1).map(|i| coeffs[i] as i128).sum::<i128>() == 0
    });
    Ok(match hit {
        Some(mask) => {
            let subset: Vec<String> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| coeffs[i].to_string())
                .collect();
            Verdict::new(Status::PR, "rado-columns", format!("zero-sum subset {{{}}}", subset.join(",")))
        }
        None => Verdict::new(Status::NotPR, "rado-columns", "no nonempty zero-sum subset"),
    })
}

/// `a x^n + P(y) = Q(z)`, Ramsey PR in `(x,y),z`.
pub fn classify_axn(a: u64, n: u32, p: &Poly, q: &Poly) -> Result<Verdict, DecideError> {
    if a == 0 || n == 0 {
        return Err(DecideError::Precondition("a and n must be positive".into()));
    }
    if p.is_zero() || q.is_zero() {
        return Err(DecideError::MalformedPolynomial("P and Q must be nonzero".into()));
    }
    if p.constant_term() != 0 || q.constant_term() != 0 {
        return Err(DecideError::MalformedPolynomial("P and Q must have zero constant term".into()));
    }
    let a = a as i64;
    let linear = |c: i64| Poly::new(vec![0, c]);
    let sum = n == 1 && *p == linear(a) && *q == linear(a);
    let diff = n == 1 && *p == linear(-a) && *q == linear(-a);
    let desc = format!("{a}x^{n}+({p})(y)=({q})(z)");
    Ok(if sum {
        Verdict::new(Status::RamseyPR, "polynomial-classification", format!("{desc} is {a}(x+y-z)"))
    } else if diff {
        Verdict::new(Status::RamseyPR, "polynomial-classification", format!("{desc} is {a}(x-y+z)"))
    } else {
        Verdict::new(
            Status::NotRamseyPR,
            "polynomial-classification",
            format!("{desc} is not a multiple of x+y-z or x-y+z"),
        )
    })
}

/// `a x^k1 + b y^k2 = c z^k3`, Ramsey PR in `(x,y)|z`.
pub fn classify_moreira(a: u64, b: u64, c: u64, k1: u32, k2: u32, k3: u32) -> Result<Verdict, DecideError> {
    if [a, b, c].contains(&0) || [k1, k2, k3].contains(&0) {
        return Err(DecideError::Precondition("all parameters must be positive".into()));
    }
    let status = if k3 == 1 { Status::RamseyPR } else { Status::NotRamseyPR };
    Ok(Verdict::new(status, "moreira-triples", format!("k3={k3}")))
}

pub fn classify_two_var(p: &Poly2) -> Result<Verdict, DecideError> {
    if p.is_zero() {
        return Err(DecideError::Precondition("P must be nonzero".into()));
    }
    let divisible = p.divisible_by_x_minus_y();
    let note = if divisible { "x-y divides P" } else { "x-y does not divide P" };
    Ok(Verdict::new(Status::NotRamseyPR, "two-variable", format!("P={p}; {note}")))
}

/// Whether `n a + m b ~ k a^r b^s` admits a Ramsey pair `(a,b)`.
pub fn classify_gensumprod(n: i64, m: i64, k: u64, r: i64, s: i64) -> Result<Verdict, DecideError> {
    if n + m == 0 {
        return Err(DecideError::Precondition("n+m must be nonzero".into()));
    }
    if k == 0 {
        return Err(DecideError::Precondition("k must be positive".into()));
    }
    let k = k as i64;
    let eq = format!("{n}a+{m}b ~ {k}a^{r}b^{s}");
    Ok(match (r, s) {
        (1, 1) => {
            let ok = (n == 0 && m > 0) || (m == 0 && n > 0);
            let status = if ok { Status::RamseyPR } else { Status::NotRamseyPR };
            Verdict::new(status, "generalized-sum-product", eq)
        }
        (-1, 1) => Verdict::new(Status::OpenInPaper, "generalized-sum-product-open", eq),
        (0, 1) | (1, 0) => {
            // (1,0) is (0,1) with the roles of n and m exchanged
            let (same, other) = if (r, s) == (0, 1) { (m, n) } else { (n, m) };
            let ok = same == k && other.abs() == k;
            let status = if ok { Status::RamseyPR } else { Status::NotRamseyPR };
            Verdict::new(status, "generalized-sum-product-shapes", eq)
        }
        _ => Verdict::new(Status::NotRamseyPR, "generalized-sum-product-shapes", eq),
    })
}

/// Which question an equation is asked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Question {
    /// Plain partition regularity.
    Pr,
    /// Ramsey PR in `(x,y),z` with the first two variables as the pair.
    Ramsey,
    /// Ramsey PR in `(x,y)|z`.
    RamseySeparate,
}

impl std::str::FromStr for Question {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "pr" => Ok(Question::Pr),
            "ramsey" => Ok(Question::Ramsey),
            "ramsey-separate" | "ramsey_separate" => Ok(Question::RamseySeparate),
            _ => Err(format!("expected pr, ramsey or ramsey-separate, got `{s}`")),
        }
    }
}

/// Classifies a single equation written in the configuration grammar, with
/// variables taken in order of first appearance.
pub fn decide_equation(src: &str, question: Question) -> Result<Verdict, DecideError> {
    let formula = crate::config::parse_formula(src)?;
    let atom = match formula {
        Formula::Atom(a) if a.kind == AtomKind::Eq => a,
        _ => return Err(DecideError::Unsupported("expected a single equation".into())),
    };
    let vars = atom.vars();
    let diff = crate::config::Expr::sub(atom.lhs.clone(), atom.rhs.clone());
    let poly = MPoly::expand(&diff, &vars)
        .ok_or_else(|| DecideError::Unsupported("not a polynomial equation".into()))?;
    if poly.is_zero() {
        return Err(DecideError::Unsupported("equation is an identity".into()));
    }
    match question {
        Question::Pr => {
            if poly.total_degree() != 1 || !poly.constant_term().is_zero() {
                return Err(DecideError::Unsupported(
                    "partition regularity is decided only for homogeneous linear equations".into(),
                ));
            }
            let coeffs: Option<Vec<i64>> = (0..vars.len())
                .map(|i| {
                    let mut e = vec![0; vars.len()];
                    e[i] = 1;
                    poly.terms.get(&e).and_then(|c| c.to_i64())
                })
                .collect();
            let coeffs = coeffs.ok_or_else(|| DecideError::Unsupported("coefficient out of range".into()))?;
            let mut v = rado_columns(&coeffs)?;
            v.reason = format!("{}: {}", coeffs_to_string(&coeffs), v.reason);
            Ok(v)
        }
        Question::Ramsey | Question::RamseySeparate if vars.len() == 2 => {
            let mut terms = Vec::new();
            for (e, c) in &poly.terms {
                let c = c.to_i64().ok_or_else(|| DecideError::Unsupported("coefficient out of range".into()))?;
                terms.push((e[0], e[1], c));
            }
            classify_two_var(&Poly2::from_terms(&terms))
        }
        Question::Ramsey | Question::RamseySeparate => {
            if vars.len() != 3 || !poly.is_separable() || !poly.constant_term().is_zero() {
                return Err(DecideError::Unsupported(
                    "expected a x^n + P(y) = Q(z) in three variables without mixed terms".into(),
                ));
            }
            let part = |i| {
                poly.univariate_part(i)
                    .ok_or_else(|| DecideError::Unsupported("coefficient out of range".into()))
            };
            let (px, py, pz) = (part(0)?, part(1)?, part(2)?);
            // normalize so the x part is a single positive monomial
            let sign = if px.leading() < 0 { -1 } else { 1 };
            let (px, py, pz) = (px.scale(sign), py.scale(sign), pz.scale(sign));
            let nx = px.coeffs().iter().filter(|&&c| c != 0).count();
            if nx != 1 {
                return Err(DecideError::Unsupported("x must appear in a single monomial".into()));
            }
            let n = px.degree().expect("nonzero") as u32;
            let a = px.leading() as u64;
            if question == Question::Ramsey {
                return classify_axn(a, n, &py, &pz.scale(-1));
            }
            let single = |p: &Poly| {
                (p.coeffs().iter().filter(|&&c| c != 0).count() == 1).then(|| (p.leading(), p.degree().unwrap() as u32))
            };
            match (single(&py), single(&pz)) {
                (Some((b, k2)), Some((c, k3))) if b > 0 && c < 0 => {
                    classify_moreira(a, b as u64, c.unsigned_abs(), n, k2, k3)
                }
                _ => Err(DecideError::Unsupported("expected a x^k1 + b y^k2 = c z^k3 with a,b,c > 0".into())),
            }
        }
    }
}

fn coeffs_to_string(c: &[i64]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

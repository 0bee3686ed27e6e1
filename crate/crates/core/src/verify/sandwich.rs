//! Two-sided bound `Q(s - n) <= P(b) <= Q(s + n)` with `s` the floor of
//! `c^(1/d) b`, `c` the ratio of leading coefficients.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::decide::DecideError;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub degree: usize,
    pub beta_lo: u64,
    pub beta_hi: u64,
    pub n_max: u64,
    /// Least `n` in `[1..n_max]` for which the bound holds on the range.
    pub least_n: Option<u64>,
    /// `(n, first failing beta)` for every candidate up to `least_n`.
    pub first_failures: Vec<(u64, Option<u64>)>,
}

/// `floor((lc_p b^d / lc_q)^(1/d))`
pub fn scaled_root(p: &Poly, q: &Poly, beta: u64) -> BigInt {
    let d = p.degree().unwrap_or(0) as u32;
    let num = BigInt::from(p.leading()) * BigInt::from(beta).pow(d);
    let t = num / BigInt::from(q.leading());
    t.nth_root(d)
}

fn holds(p: &Poly, q: &Poly, beta: u64, n: u64) -> bool {
    let s = scaled_root(p, q, beta);
    let pb = p.eval(&BigInt::from(beta));
    let n = BigInt::from(n);
    q.eval(&(&s - &n)) <= pb && pb <= q.eval(&(&s + &n))
}

pub fn sandwich_bound_check(
    p: &Poly,
    q: &Poly,
    beta_lo: u64,
    beta_hi: u64,
    n_max: u64,
) -> Result<SandwichReport, DecideError> {
    let (dp, dq) = (p.degree(), q.degree());
    if dp != dq || dp.is_none_or(|d| d < 2) {
        return Err(DecideError::Precondition("P and Q need the same degree, at least 2".into()));
    }
    if p.leading() <= 0 || q.leading() <= 0 {
        return Err(DecideError::Precondition("leading coefficients must be positive".into()));
    }
    if beta_lo == 0 || beta_lo > beta_hi {
        return Err(DecideError::Precondition("beta range must be a nonempty range of positive integers".into()));
    }
    let mut first_failures = Vec::new();
    let mut least_n = None;
    for n in 1..=n_max {
        let fail = (beta_lo..=beta_hi).find(|&b| !holds(p, q, b, n));
        first_failures.push((n, fail));
        if fail.is_none() {
            least_n = Some(n);
            break;
        }
    }
    Ok(SandwichReport { degree: dp.unwrap_or(0), beta_lo, beta_hi, n_max, least_n, first_failures })
}

//! Digit-level number theory on positive integers.
//!
//! `vp`, `smodp` and `lm` are the finite-image statistics used to build
//! obstruction colorings: the position of the least significant nonzero digit
//! in base `p`, that digit, and the position of the most significant digit.
//! Everything here is exact; there is no floating point anywhere.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("base {0} is not prime")]
    NotPrime(u64),
    #[error("base {0} must be at least 2")]
    BaseTooSmall(u64),
    #[error("argument must be a positive integer, got 0")]
    Zero,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn check_prime(p: u64) -> Result<(), DomainError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(DomainError::NotPrime(p))
    }
}

fn check_positive(x: &BigUint) -> Result<(), DomainError> {
    if x.is_zero() {
        Err(DomainError::Zero)
    } else {
        Ok(())
    }
}

/// Largest `e` with `p^e | x`.
pub fn vp(p: u64, x: &BigUint) -> Result<u64, DomainError> {
    check_prime(p)?;
    check_positive(x)?;
    Ok(strip_factor(p, x).0)
}

/// `(x / p^vp(x)) mod p`, always in `[1, p-1]`.
pub fn smodp(p: u64, x: &BigUint) -> Result<u64, DomainError> {
    check_prime(p)?;
    check_positive(x)?;
    let (_, rest) = strip_factor(p, x);
    Ok(rest)
}

/// Returns (valuation, unit part mod p). Caller guarantees x > 0.
fn strip_factor(p: u64, x: &BigUint) -> (u64, u64) {
    if let Some(mut small) = x.to_u64() {
        let mut e = 0;
        while small % p == 0 {
            small /= p;
            e += 1;
        }
        return (e, small % p);
    }
    if p == 2 {
        let tz = x.trailing_zeros().expect("nonzero");
        return (tz, 1);
    }
    let big_p = BigUint::from(p);
    let mut cur = x.clone();
    let mut e = 0;
    loop {
        let (q, r) = cur.div_rem(&big_p);
        if !r.is_zero() {
            return (e, r.to_u64().expect("digit fits"));
        }
        cur = q;
        e += 1;
    }
}

/// `floor(log_m x)`, the unique `e` with `m^e <= x < m^(e+1)`.
pub fn lm(m: u64, x: &BigUint) -> Result<u64, DomainError> {
    if m < 2 {
        return Err(DomainError::BaseTooSmall(m));
    }
    check_positive(x)?;
    Ok(floor_log(m, x))
}

fn floor_log(m: u64, x: &BigUint) -> u64 {
    if let Some(small) = x.to_u64() {
        return small.ilog(m) as u64;
    }
    if m.is_power_of_two() {
        let k = m.trailing_zeros() as u64;
        return (x.bits() - 1) / k;
    }
    // Estimate from the bit length, then correct with exact comparisons.
    let bits = x.bits() as f64;
    let mut e = ((bits - 1.0) / (m as f64).log2()).floor().max(0.0) as u64;
    let big_m = BigUint::from(m);
    let mut pow = big_m.pow(e as u32);
    while &pow > x {
        pow /= &big_m;
        e -= 1;
    }
    loop {
        let next = &pow * &big_m;
        if &next > x {
            return e;
        }
        pow = next;
        e += 1;
    }
}

/// `k`-fold composition of `lm(m, ·)`.
///
/// Returns `None` as soon as an application produces 0, since the next
/// application (or any consumer expecting a positive scale) is undefined.
pub fn lm_iter(m: u64, k: u32, x: &BigUint) -> Result<Option<u64>, DomainError> {
    if m < 2 {
        return Err(DomainError::BaseTooSmall(m));
    }
    if x.is_zero() {
        return Ok(None);
    }
    let mut cur = floor_log(m, x);
    if cur == 0 {
        return Ok(None);
    }
    for _ in 1..k {
        cur = cur.ilog(m) as u64;
        if cur == 0 {
            return Ok(None);
        }
    }
    Ok(Some(cur))
}

/// Base-`base` expansion of a positive integer with its digit statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitProfile {
    pub base: u64,
    pub value: BigUint,
    /// Trailing zero count; only for prime bases.
    pub v: Option<u64>,
    /// First nonzero digit; only for prime bases.
    pub smod: Option<u64>,
    /// Position of the leading digit.
    pub l: u64,
    /// Least significant first, no leading zeros.
    pub digits: Vec<u64>,
}

pub fn digit_profile(base: u64, x: &BigUint) -> Result<DigitProfile, DomainError> {
    if base < 2 {
        return Err(DomainError::BaseTooSmall(base));
    }
    check_positive(x)?;
    let digits: Vec<u64> = if base <= 256 {
        x.to_radix_le(base as u32).into_iter().map(u64::from).collect()
    } else {
        let big_base = BigUint::from(base);
        let mut out = Vec::new();
        let mut cur = x.clone();
        while !cur.is_zero() {
            let (q, r) = cur.div_rem(&big_base);
            out.push(r.to_u64().expect("digit fits"));
            cur = q;
        }
        out
    };
    let first_nonzero = digits.iter().position(|&d| d != 0).expect("x > 0");
    let prime = is_prime(base);
    Ok(DigitProfile {
        base,
        value: x.clone(),
        v: prime.then_some(first_nonzero as u64),
        smod: prime.then(|| digits[first_nonzero]),
        l: digits.len() as u64 - 1,
        digits,
    })
}

impl DigitProfile {
    /// Reassembles the value from the digit list.
    pub fn reconstruct(&self) -> BigUint {
        let base = BigUint::from(self.base);
        let mut acc = BigUint::zero();
        let mut pw = BigUint::one();
        for &d in &self.digits {
            acc += &pw * d;
            pw *= &base;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(vp(2, &b(8)).unwrap(), 3);
        assert_eq!(vp(3, &b(12)).unwrap(), 1);
        assert_eq!(vp(5, &b(7)).unwrap(), 0);
    }

    #[test]
    fn smod_examples() {
        assert_eq!(smodp(3, &b(12)).unwrap(), 1);
        assert_eq!(smodp(2, &b(7)).unwrap(), 1);
        assert_eq!(smodp(5, &b(50)).unwrap(), 2);
    }

    #[test]
    fn domain_errors() {
        assert_eq!(vp(4, &b(8)), Err(DomainError::NotPrime(4)));
        assert_eq!(vp(2, &b(0)), Err(DomainError::Zero));
        assert_eq!(smodp(9, &b(3)), Err(DomainError::NotPrime(9)));
        assert_eq!(lm(1, &b(3)), Err(DomainError::BaseTooSmall(1)));
        assert_eq!(lm(2, &b(0)), Err(DomainError::Zero));
        assert!(digit_profile(3, &b(0)).is_err());
    }

    #[test]
    fn log_examples() {
        assert_eq!(lm(2, &b(12)).unwrap(), 3);
        assert_eq!(lm(10, &b(1)).unwrap(), 0);
        assert_eq!(lm(2, &(BigUint::one() << 40)).unwrap(), 40);
        // non power-of-two base on a big value
        let big = BigUint::from(3u32).pow(200);
        assert_eq!(lm(3, &big).unwrap(), 200);
        assert_eq!(lm(3, &(&big - 1u32)).unwrap(), 199);
        assert_eq!(lm(10, &BigUint::from(10u32).pow(50)).unwrap(), 50);
    }

    #[test]
    fn iterated_log_examples() {
        assert_eq!(lm_iter(2, 2, &b(256)).unwrap(), Some(3));
        assert_eq!(lm_iter(2, 3, &b(4)).unwrap(), None);
        let tower = BigUint::one() << 1024u32;
        assert_eq!(lm_iter(2, 2, &tower).unwrap(), Some(10));
        assert_eq!(lm_iter(2, 3, &tower).unwrap(), Some(3));
    }

    #[test]
    fn profile_examples() {
        let p = digit_profile(2, &b(12)).unwrap();
        assert_eq!(p.digits, vec![0, 0, 1, 1]);
        assert_eq!((p.v, p.smod, p.l), (Some(2), Some(1), 3));
        let p = digit_profile(3, &b(10)).unwrap();
        assert_eq!(p.digits, vec![1, 0, 1]);
        assert_eq!((p.v, p.smod, p.l), (Some(0), Some(1), 2));
        let p = digit_profile(7, &b(343)).unwrap();
        assert_eq!(p.digits, vec![0, 0, 0, 1]);
        assert_eq!((p.v, p.smod, p.l), (Some(3), Some(1), 3));
        let p = digit_profile(10, &b(1200)).unwrap();
        assert_eq!((p.v, p.smod, p.l), (None, None, 3));
    }

    #[test]
    fn profile_matches_repeated_division() {
        for base in 2..=11u64 {
            for x in 1..=100_000u64 {
                let p = digit_profile(base, &b(x)).unwrap();
                let mut digits = Vec::new();
                let mut cur = x;
                while cur > 0 {
                    digits.push(cur % base);
                    cur /= base;
                }
                assert_eq!(p.digits, digits, "base {base} x {x}");
                assert_eq!(p.l as usize, digits.len() - 1);
                if is_prime(base) {
                    let v = digits.iter().position(|&d| d != 0).unwrap();
                    assert_eq!(p.v, Some(v as u64));
                    assert_eq!(p.smod, Some(digits[v]));
                }
            }
        }
    }
}

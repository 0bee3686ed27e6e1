use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use proptest::prelude::*;
use rpr_core::padic::{digit_profile, is_prime, lm, lm_iter, smodp, vp, DomainError};

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 31, 101];

fn big(x: u128) -> BigUint {
    BigUint::from(x)
}

fn positive() -> impl Strategy<Value = BigUint> {
    prop_oneof![
        (1u64..1000).prop_map(BigUint::from),
        (1u128..).prop_map(BigUint::from),
        (1u128.., 1u128..).prop_map(|(a, b)| BigUint::from(a) * BigUint::from(b)),
    ]
}

fn prime() -> impl Strategy<Value = u64> {
    proptest::sample::select(PRIMES.to_vec())
}

/// Remainders by hand, least significant first.
fn divide_out(base: u64, mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while x > 0 {
        out.push(x % base);
        x /= base;
    }
    out
}

proptest! {
    #[test]
    fn vp_is_additive(p in prime(), x in positive(), y in positive()) {
        prop_assert_eq!(vp(p, &(&x * &y)).unwrap(), vp(p, &x).unwrap() + vp(p, &y).unwrap());
    }

    #[test]
    fn vp_counts_the_constructed_power(p in prime(), k in 0u32..60, u in 1u64..1_000_000) {
        let u = if u % p == 0 { u + 1 } else { u };
        let x = BigUint::from(p).pow(k) * u;
        prop_assert_eq!(vp(p, &x).unwrap(), k as u64);
        prop_assert_eq!(smodp(p, &x).unwrap(), u % p);
    }

    #[test]
    fn smod_is_multiplicative(p in prime(), x in positive(), y in positive()) {
        let s = smodp(p, &(&x * &y)).unwrap();
        prop_assert!(s >= 1 && s < p);
        prop_assert_eq!(s, smodp(p, &x).unwrap() * smodp(p, &y).unwrap() % p);
    }

    #[test]
    fn lm_brackets_the_value(m in 2u64..40, x in positive()) {
        let e = lm(m, &x).unwrap() as u32;
        let mb = BigUint::from(m);
        prop_assert!(mb.pow(e) <= x);
        prop_assert!(x < mb.pow(e + 1));
    }

    #[test]
    fn lm_of_products_and_sums(m in 2u64..20, x in positive(), y in positive()) {
        let (lx, ly) = (lm(m, &x).unwrap(), lm(m, &y).unwrap());
        let eps = lm(m, &(&x * &y)).unwrap() - lx - ly;
        prop_assert!(eps <= 1);
        let (small, large) = if x <= y { (&x, &y) } else { (&y, &x) };
        let eps = lm(m, &(small + large)).unwrap() - lm(m, large).unwrap();
        prop_assert!(eps <= 1);
    }

    #[test]
    fn lm_iter_composes(m in 2u64..10, k in 1u32..4, x in positive()) {
        let mut cur = Some(x.clone());
        for _ in 0..k {
            cur = cur.map(|c| BigUint::from(lm(m, &c).unwrap())).filter(|c| c >= &BigUint::one());
        }
        let want = cur.map(|c| c.to_u64().unwrap());
        let got = lm_iter(m, k, &x).unwrap();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn valuation_of_combinations(
        p in prime(),
        n in -6i64..=6,
        m in -6i64..=6,
        c in 1u64..1000,
        va in 0u32..8,
        dv in 0u32..4,
        ua in 0u64..1000,
        ub in 0u64..1000,
    ) {
        prop_assume!(n != 0 && m != 0 && n + m != 0 && p > n.unsigned_abs() + m.unsigned_abs());
        let c = c % (p - 1) + 1;
        let pb = BigInt::from(p);
        let a = pb.pow(va) * (BigInt::from(c) + &pb * ua);
        let b = pb.pow(va + dv) * (BigInt::from(c) + &pb * ub);
        let comb = &a * n + &b * m;
        prop_assume!(comb.is_positive());
        let au = a.to_biguint().unwrap();
        prop_assert_eq!(vp(p, comb.magnitude()).unwrap(), vp(p, &au).unwrap());
    }

    #[test]
    fn profile_round_trips(base in 2u64..300, x in positive()) {
        let d = digit_profile(base, &x).unwrap();
        prop_assert_eq!(d.reconstruct(), x.clone());
        prop_assert!(*d.digits.last().unwrap() != 0);
        prop_assert_eq!(d.l, lm(base, &x).unwrap());
        if is_prime(base) {
            prop_assert_eq!(d.v, Some(vp(base, &x).unwrap()));
            prop_assert_eq!(d.smod, Some(smodp(base, &x).unwrap()));
        } else {
            prop_assert_eq!(d.v, None);
        }
    }
}

#[test]
fn profile_matches_division_exhaustively() {
    for base in 2..=11u64 {
        for x in 1..=100_000u64 {
            let d = digit_profile(base, &BigUint::from(x)).unwrap();
            assert_eq!(d.digits, divide_out(base, x), "base {base}, x {x}");
        }
    }
}

#[test]
fn domain_errors_are_hard() {
    assert!(matches!(vp(4, &big(8)), Err(DomainError::NotPrime(4))));
    assert!(vp(2, &big(0)).is_err());
    assert!(smodp(9, &big(10)).is_err());
    assert!(lm(1, &big(10)).is_err());
    assert!(digit_profile(2, &big(0)).is_err());
}

#[test]
fn profile_of_twelve() {
    let d = digit_profile(2, &big(12)).unwrap();
    assert_eq!((d.digits.clone(), d.v, d.smod, d.l), (vec![0, 0, 1, 1], Some(2), Some(1), 3));
}

#[test]
fn iterated_log_of_huge_power() {
    let x = BigUint::from(2u8).pow(1024);
    assert_eq!(lm_iter(2, 1, &x).unwrap(), Some(1024));
    assert_eq!(lm_iter(2, 2, &x).unwrap(), Some(10));
    assert_eq!(lm_iter(2, 3, &x).unwrap(), Some(3));
}

//! Search for a finite-image invariant that never agrees on `f(a, b)` and
//! `g(a, b)` over a sample of pairs with `b` much larger than `a`.

use indexmap::IndexMap;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{par_map, SearchError};
use crate::coloring::InvariantDescriptor;
use crate::config::{Expr, FnRegistry};

/// Which pairs `lo <= a < b <= hi` are sampled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum Regime {
    All,
    /// `b >= a^k`
    Power { k: u32 },
    /// `b >= 2^a`
    Exp2,
    /// `b >= k a`
    Linear { k: u64 },
}

/// `all`, `power:K`, `exp2` or `linear:K`.
impl std::str::FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected all, power:K, exp2 or linear:K, got `{s}`");
        let (head, k) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        match (head, k) {
            ("all", "") => Ok(Regime::All),
            ("exp2", "") => Ok(Regime::Exp2),
            ("power", k) => k.parse().map(|k| Regime::Power { k }).map_err(|_| bad()),
            ("linear", k) => k.parse().map(|k| Regime::Linear { k }).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub lo: u64,
    pub hi: u64,
    #[serde(flatten)]
    pub regime: Regime,
}

impl SampleSpec {
    pub fn new(lo: u64, hi: u64, regime: Regime) -> Self {
        SampleSpec { lo, hi, regime }
    }

    fn admits(&self, a: u64, b: u64) -> bool {
        match self.regime {
            Regime::All => true,
            Regime::Power { k } => (b as u128) >= (a as u128).saturating_pow(k),
            Regime::Exp2 => a < 64 && b >= 1u64 << a,
            Regime::Linear { k } => (b as u128) >= k as u128 * a as u128,
        }
    }

    /// Sampled pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for a in self.lo.max(1)..=self.hi {
            for b in a + 1..=self.hi {
                if self.admits(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorTally {
    pub descriptor: InvariantDescriptor,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorReport {
    /// First descriptor in family order with no failures.
    pub separator: Option<InvariantDescriptor>,
    pub samples: u64,
    pub tallies: Vec<DescriptorTally>,
    /// Fewest failures, earliest in family order on ties.
    pub best: Option<InvariantDescriptor>,
    /// Sampled pairs on which `best` fails.
    pub best_failures: Vec<(u64, u64)>,
}

/// Single digit statistics first, then `(smod_p, v_p mod m, l_p mod m)`
/// for small primes `p` and moduli `m`, ordered by `p` then `m`.
pub fn default_family() -> Vec<InvariantDescriptor> {
    use InvariantDescriptor::*;
    let mut fam = vec![
        ResMod { m: 2 },
        Smod { p: 3 },
        VpMod { p: 2, m: 2 },
        LmMod { base: 2, m: 2 },
        Smod { p: 5 },
        LmIterMod { base: 2, k: 2, m: 2 },
    ];
    for p in [3u64, 5, 7] {
        for m in 2..=6u64 {
            fam.push(Tuple { items: vec![Smod { p }, VpMod { p, m }, LmMod { base: p, m }] });
        }
    }
    fam
}

/// A pair fails for a descriptor when either side is not positive, either
/// image is undefined, or the images agree.
pub fn separator_search(
    f: &Expr,
    g: &Expr,
    funcs: &FnRegistry,
    family: &[InvariantDescriptor],
    samples: &SampleSpec,
    workers: usize,
) -> Result<SeparatorReport, SearchError> {
    for e in [f, g] {
        if let Some(v) = e.vars().into_iter().find(|v| v != "x" && v != "y") {
            return Err(SearchError::Precondition(format!("expressions may only use x and y, found `{v}`")));
        }
    }
    for d in family {
        d.validate()?;
    }
    let pairs = samples.pairs();
    let mut values = Vec::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        let asg: IndexMap<String, u64> = [("x".to_string(), a), ("y".to_string(), b)].into_iter().collect();
        let fv = f.eval(&asg, funcs)?.to_biguint().filter(|v| *v > BigUint::ZERO);
        let gv = g.eval(&asg, funcs)?.to_biguint().filter(|v| *v > BigUint::ZERO);
        values.push(fv.zip(gv));
    }
    let fails = |d: &InvariantDescriptor, v: &Option<(BigUint, BigUint)>| match v {
        None => true,
        Some((fv, gv)) => match (d.eval(fv), d.eval(gv)) {
            (Some(p), Some(q)) => p == q,
            _ => true,
        },
    };
    let counts = par_map(workers, family.iter().collect(), |d| values.iter().filter(|v| fails(d, v)).count() as u64);
    let tallies: Vec<DescriptorTally> =
        family.iter().zip(&counts).map(|(d, &n)| DescriptorTally { descriptor: d.clone(), failures: n }).collect();
    let separator = tallies.iter().find(|t| t.failures == 0).map(|t| t.descriptor.clone());
    let best = tallies.iter().min_by_key(|t| t.failures).map(|t| t.descriptor.clone());
    let best_failures = match &best {
        Some(d) => pairs.iter().zip(&values).filter(|(_, v)| fails(d, v)).map(|(p, _)| *p).collect(),
        None => Vec::new(),
    };
    Ok(SeparatorReport { separator, samples: pairs.len() as u64, tallies, best, best_failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_expr;

    #[test]
    fn identical_expressions_never_separate() {
        let f = parse_expr("x+y").unwrap();
        let rep = separator_search(&f, &f, &FnRegistry::new(), &default_family(), &SampleSpec::new(1, 30, Regime::All), 1).unwrap();
        assert!(rep.separator.is_none());
        assert!(rep.tallies.iter().all(|t| t.failures == rep.samples));
    }

    #[test]
    fn parity_separates_shift() {
        let f = parse_expr("x+y").unwrap();
        let g = parse_expr("x+y+1").unwrap();
        let rep = separator_search(&f, &g, &FnRegistry::new(), &default_family(), &SampleSpec::new(1, 20, Regime::All), 1).unwrap();
        assert_eq!(rep.separator, Some(InvariantDescriptor::ResMod { m: 2 }));
        assert!(rep.best_failures.is_empty());
    }

    #[test]
    fn regimes() {
        assert!(SampleSpec::new(1, 20, Regime::Power { k: 2 }).pairs().iter().all(|&(a, b)| b >= a * a));
        assert_eq!(SampleSpec::new(1, 8, Regime::Exp2).pairs().first(), Some(&(1, 2)));
        assert_eq!(SampleSpec::new(1, 3, Regime::All).pairs(), vec![(1, 2), (1, 3), (2, 3)]);
    }
}

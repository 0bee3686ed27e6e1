//! Finite colorings of `[1..N]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::padic;

/// Upper limit on the number of colors a descriptor or product may produce.
pub const MAX_COLORS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("{n} is outside the domain [1..{bound}]")]
    OutOfDomain { n: u64, bound: u64 },
    #[error("invalid coloring: {0}")]
    Invalid(String),
    #[error("cannot parse coloring spec `{spec}`: {msg}")]
    Spec { spec: String, msg: String },
}

/// Finite-image function of a positive integer built from digit statistics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantDescriptor {
    /// `v_p(n) mod m`
    VpMod { p: u64, m: u64 },
    /// `smod_p(n)`, indexed from 0.
    Smod { p: u64 },
    /// `l_base(n) mod m`
    LmMod { base: u64, m: u64 },
    /// `k`-fold iterated `l_base(n) mod m`. Where the iterate is undefined
    /// the coloring uses index 0; `eval` reports it as undefined.
    LmIterMod { base: u64, k: u32, m: u64 },
    /// `n mod m`
    ResMod { m: u64 },
    /// Lexicographic combination, first component most significant.
    Tuple { items: Vec<InvariantDescriptor> },
    /// Index of the inner descriptor reduced mod `m`.
    PostMod { inner: Box<InvariantDescriptor>, m: u64 },
}

impl InvariantDescriptor {
    pub fn validate(&self) -> Result<(), ColoringError> {
        let bad = |msg: String| Err(ColoringError::InvalidDescriptor(msg));
        match self {
            InvariantDescriptor::VpMod { p, m } => {
                if !padic::is_prime(*p) {
                    return bad(format!("vp base {p} is not prime"));
                }
                if *m == 0 {
                    return bad("modulus must be positive".into());
                }
            }
            InvariantDescriptor::Smod { p } => {
                if !padic::is_prime(*p) {
                    return bad(format!("smod base {p} is not prime"));
                }
            }
            InvariantDescriptor::LmMod { base, m } | InvariantDescriptor::LmIterMod { base, m, .. } => {
                if *base < 2 {
                    return bad(format!("log base {base} must be at least 2"));
                }
                if *m == 0 {
                    return bad("modulus must be positive".into());
                }
                if let InvariantDescriptor::LmIterMod { k: 0, .. } = self {
                    return bad("iteration count must be positive".into());
                }
            }
            InvariantDescriptor::ResMod { m } => {
                if *m == 0 {
                    return bad("modulus must be positive".into());
                }
            }
            InvariantDescriptor::Tuple { items } => {
                if items.is_empty() {
                    return bad("empty tuple".into());
                }
                items.iter().try_for_each(|d| d.validate())?;
            }
            InvariantDescriptor::PostMod { inner, m } => {
                inner.validate()?;
                if *m == 0 {
                    return bad("modulus must be positive".into());
                }
            }
        }
        if self.image_size_checked().is_none_or(|s| s > MAX_COLORS) {
            return bad(format!("image size exceeds {MAX_COLORS}"));
        }
        Ok(())
    }

    fn image_size_checked(&self) -> Option<u64> {
        Some(match self {
            InvariantDescriptor::VpMod { m, .. }
            | InvariantDescriptor::LmMod { m, .. }
            | InvariantDescriptor::LmIterMod { m, .. }
            | InvariantDescriptor::ResMod { m } => *m,
            InvariantDescriptor::Smod { p } => p - 1,
            InvariantDescriptor::Tuple { items } => {
                let mut acc: u64 = 1;
                for d in items {
                    acc = acc.checked_mul(d.image_size_checked()?)?;
                }
                acc
            }
            InvariantDescriptor::PostMod { inner, m } => inner.image_size_checked()?.min(*m),
        })
    }

    /// Number of distinct indices the descriptor can produce.
    pub fn image_size(&self) -> u64 {
        self.image_size_checked().expect("validated descriptor")
    }

    /// Canonical index of the image of `x`, or `None` where an iterated
    /// logarithm is undefined.
    pub fn eval(&self, x: &BigUint) -> Option<u64> {
        self.index(x, false)
    }

    /// Like `eval` but total: undefined iterated logarithms map to 0.
    pub fn color_index(&self, x: &BigUint) -> u64 {
        self.index(x, true).expect("total when folding")
    }

    fn index(&self, x: &BigUint, fold: bool) -> Option<u64> {
        // x >= 1 and parameters are validated, so the padic calls cannot fail
        Some(match self {
            InvariantDescriptor::VpMod { p, m } => padic::vp(*p, x).ok()? % m,
            InvariantDescriptor::Smod { p } => padic::smodp(*p, x).ok()? - 1,
            InvariantDescriptor::LmMod { base, m } => padic::lm(*base, x).ok()? % m,
            InvariantDescriptor::LmIterMod { base, k, m } => match padic::lm_iter(*base, *k, x).ok()? {
                Some(v) => v % m,
                None if fold => 0,
                None => return None,
            },
            InvariantDescriptor::ResMod { m } => (x % m).to_u64().expect("below modulus"),
            InvariantDescriptor::Tuple { items } => {
                let mut acc = 0u64;
                for d in items {
                    acc = acc * d.image_size() + d.index(x, fold)?;
                }
                acc
            }
            InvariantDescriptor::PostMod { inner, m } => inner.index(x, fold)? % m,
        })
    }
}

impl fmt::Display for InvariantDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantDescriptor::VpMod { p, m } => write!(f, "vp({p},{m})"),
            InvariantDescriptor::Smod { p } => write!(f, "smod({p})"),
            InvariantDescriptor::LmMod { base, m } => write!(f, "lm({base},{m})"),
            InvariantDescriptor::LmIterMod { base, k, m } => write!(f, "lmiter({base},{k},{m})"),
            InvariantDescriptor::ResMod { m } => write!(f, "res({m})"),
            InvariantDescriptor::Tuple { items } => {
                write!(f, "tuple(")?;
                for (i, d) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{d}")?;
                }
                write!(f, ")")
            }
            InvariantDescriptor::PostMod { inner, m } => write!(f, "postmod({inner},{m})"),
        }
    }
}

impl FromStr for InvariantDescriptor {
    type Err = ColoringError;

    /// Parses the `Display` form, e.g. `tuple(vp(2,2),lm(2,2))`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let d = parse_descriptor(&compact, &mut pos).map_err(|msg| ColoringError::Spec {
            spec: s.to_string(),
            msg,
        })?;
        if pos != compact.len() {
            return Err(ColoringError::Spec { spec: s.to_string(), msg: format!("trailing input at {pos}") });
        }
        d.validate()?;
        Ok(d)
    }
}

fn parse_descriptor(s: &str, pos: &mut usize) -> Result<InvariantDescriptor, String> {
    let rest = &s[*pos..];
    let open = rest.find('(').ok_or("expected `(`")?;
    let head = &rest[..open];
    *pos += open + 1;
    let number = |s: &str, pos: &mut usize| -> Result<u64, String> {
        let rest = &s[*pos..];
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let v = rest[..end].parse::<u64>().map_err(|_| format!("expected number at {pos}"))?;
        *pos += end;
        Ok(v)
    };
    let expect = |s: &str, pos: &mut usize, c: char| -> Result<(), String> {
        if s[*pos..].starts_with(c) {
            *pos += 1;
            Ok(())
        } else {
            Err(format!("expected `{c}` at {pos}"))
        }
    };
    let d = match head {
        "vp" => {
            let p = number(s, pos)?;
            expect(s, pos, ',')?;
            InvariantDescriptor::VpMod { p, m: number(s, pos)? }
        }
        "smod" => InvariantDescriptor::Smod { p: number(s, pos)? },
        "lm" => {
            let base = number(s, pos)?;
            expect(s, pos, ',')?;
            InvariantDescriptor::LmMod { base, m: number(s, pos)? }
        }
        "lmiter" => {
            let base = number(s, pos)?;
            expect(s, pos, ',')?;
            let k = number(s, pos)?;
            expect(s, pos, ',')?;
            let k = u32::try_from(k).map_err(|_| "iteration count too large".to_string())?;
            InvariantDescriptor::LmIterMod { base, k, m: number(s, pos)? }
        }
        "res" => InvariantDescriptor::ResMod { m: number(s, pos)? },
        "tuple" => {
            let mut items = vec![parse_descriptor(s, pos)?];
            while s[*pos..].starts_with(',') {
                *pos += 1;
                items.push(parse_descriptor(s, pos)?);
            }
            InvariantDescriptor::Tuple { items }
        }
        "postmod" => {
            let inner = Box::new(parse_descriptor(s, pos)?);
            expect(s, pos, ',')?;
            InvariantDescriptor::PostMod { inner, m: number(s, pos)? }
        }
        other => return Err(format!("unknown primitive `{other}`")),
    };
    expect(s, pos, ')')?;
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backing {
    Explicit(Vec<u32>),
    FromInvariant(InvariantDescriptor),
    Product(Vec<Coloring>),
    SeededRandom { seed: u64 },
}

/// Total map `[1..N] -> [0, r)`. Immutable; the table is computed once at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "wire::Coloring", try_from = "wire::Coloring")]
pub struct Coloring {
    bound: u64,
    colors: u32,
    backing: Backing,
    table: Vec<u32>,
}

impl Coloring {
    pub fn explicit(table: Vec<u32>, colors: Option<u32>) -> Result<Self, ColoringError> {
        let max_seen = table.iter().max().map_or(0, |m| m + 1);
        let colors = colors.unwrap_or(max_seen.max(1));
        if colors == 0 || max_seen > colors {
            return Err(ColoringError::Invalid(format!("table uses {max_seen} colors but declares {colors}")));
        }
        Ok(Coloring { bound: table.len() as u64, colors, backing: Backing::Explicit(table.clone()), table })
    }

    pub fn from_invariant(d: InvariantDescriptor, bound: u64) -> Result<Self, ColoringError> {
        d.validate()?;
        let table = (1..=bound).map(|n| d.color_index(&BigUint::from(n)) as u32).collect();
        Ok(Coloring { bound, colors: d.image_size() as u32, backing: Backing::FromInvariant(d), table })
    }

    pub fn product(factors: Vec<Coloring>) -> Result<Self, ColoringError> {
        let bound = factors.first().ok_or_else(|| ColoringError::Invalid("empty product".into()))?.bound;
        if factors.iter().any(|f| f.bound != bound) {
            return Err(ColoringError::Invalid("product factors must share a bound".into()));
        }
        let colors = factors.iter().try_fold(1u64, |acc, f| acc.checked_mul(f.colors as u64));
        let colors = match colors {
            Some(c) if c <= MAX_COLORS => c as u32,
            _ => return Err(ColoringError::Invalid(format!("product exceeds {MAX_COLORS} colors"))),
        };
        let table = (0..bound as usize)
            .map(|i| factors.iter().fold(0u32, |acc, f| acc * f.colors + f.table[i]))
            .collect();
        Ok(Coloring { bound, colors, backing: Backing::Product(factors), table })
    }

    /// SplitMix64 seeded with `seed`; one 64-bit draw per `n` in increasing
    /// order, mapped to a color by `(draw * r) >> 64`.
    pub fn random(seed: u64, colors: u32, bound: u64) -> Result<Self, ColoringError> {
        if colors == 0 {
            return Err(ColoringError::Invalid("at least one color is required".into()));
        }
        let mut rng = SplitMix64::seed_from_u64(seed);
        let table = (0..bound)
            .map(|_| ((rng.next_u64() as u128 * colors as u128) >> 64) as u32)
            .collect();
        Ok(Coloring { bound, colors, backing: Backing::SeededRandom { seed }, table })
    }

    /// Odd numbers get color 0, even numbers color 1.
    pub fn parity(bound: u64) -> Self {
        Coloring::explicit((1..=bound).map(|n| ((n + 1) % 2) as u32).collect(), Some(2)).expect("valid")
    }

    pub fn mono(bound: u64) -> Self {
        Coloring::explicit(vec![0; bound as usize], Some(1)).expect("valid")
    }

    /// Parses a named coloring:
    /// `parity`, `mono`, `random:SEED:R`, `table:c1,c2,...`, `inv:DESCRIPTOR`,
    /// or a JSON object in the serialized form.
    pub fn from_spec(spec: &str, bound: u64) -> Result<Self, ColoringError> {
        let err = |msg: &str| ColoringError::Spec { spec: spec.to_string(), msg: msg.to_string() };
        let spec_t = spec.trim();
        if spec_t.starts_with('{') {
            let c: Coloring = serde_json::from_str(spec_t).map_err(|e| err(&e.to_string()))?;
            if c.bound < bound {
                return Err(err(&format!("coloring covers [1..{}] but the bound is {bound}", c.bound)));
            }
            return Ok(c.restrict(bound));
        }
        let (head, rest) = spec_t.split_once(':').unwrap_or((spec_t, ""));
        match head {
            "parity" => Ok(Coloring::parity(bound)),
            "mono" => Ok(Coloring::mono(bound)),
            "random" => {
                let (seed, r) = rest.split_once(':').ok_or_else(|| err("expected random:SEED:COLORS"))?;
                let seed = seed.parse().map_err(|_| err("bad seed"))?;
                let r = r.parse().map_err(|_| err("bad color count"))?;
                Coloring::random(seed, r, bound)
            }
            "table" => {
                let table: Result<Vec<u32>, _> = rest.split(',').map(|t| t.trim().parse::<u32>()).collect();
                let table = table.map_err(|_| err("bad table entry"))?;
                if (table.len() as u64) < bound {
                    return Err(err(&format!("table has {} entries but the bound is {bound}", table.len())));
                }
                Ok(Coloring::explicit(table, None)?.restrict(bound))
            }
            "inv" => Coloring::from_invariant(rest.parse()?, bound),
            _ => Err(err("unknown coloring kind")),
        }
    }

    /// The same coloring on `[1..bound]`, `bound <= self.bound()`.
    pub fn restrict(&self, bound: u64) -> Self {
        assert!(bound <= self.bound);
        if bound == self.bound {
            return self.clone();
        }
        let table = self.table[..bound as usize].to_vec();
        let backing = match &self.backing {
            Backing::Explicit(_) => Backing::Explicit(table.clone()),
            Backing::Product(fs) => Backing::Product(fs.iter().map(|f| f.restrict(bound)).collect()),
            other => other.clone(),
        };
        Coloring { bound, colors: self.colors, backing, table }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn num_colors(&self) -> u32 {
        self.colors
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    pub fn color_of(&self, n: u64) -> Result<u32, ColoringError> {
        if n == 0 || n > self.bound {
            return Err(ColoringError::OutOfDomain { n, bound: self.bound });
        }
        Ok(self.table[n as usize - 1])
    }

    /// Colors of `1..=N`, index `n-1`.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Members of each color class, ascending.
    pub fn classes(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new(); self.colors as usize];
        for (i, &c) in self.table.iter().enumerate() {
            out[c as usize].push(i as u64 + 1);
        }
        out
    }
}

mod wire {
    use serde::{Deserialize, Serialize};

    use super::{Backing, ColoringError, InvariantDescriptor};

    #[derive(Serialize, Deserialize)]
    #[serde(tag = "kind", rename_all = "snake_case")]
    pub enum Backing2 {
        /// Run-length encoded table: `[color, run]` pairs.
        Explicit { runs: Vec<[u64; 2]> },
        Invariant { descriptor: InvariantDescriptor },
        Product { factors: Vec<Coloring> },
        Random { seed: u64 },
    }

    #[derive(Serialize, Deserialize)]
    pub struct Coloring {
        pub bound: u64,
        pub colors: u32,
        pub backing: Backing2,
    }

    impl From<super::Coloring> for Coloring {
        fn from(c: super::Coloring) -> Self {
            let backing = match c.backing {
                Backing::Explicit(t) => {
                    let mut runs: Vec<[u64; 2]> = Vec::new();
                    for &x in &t {
                        match runs.last_mut() {
                            Some(r) if r[0] == x as u64 => r[1] += 1,
                            _ => runs.push([x as u64, 1]),
                        }
                    }
                    Backing2::Explicit { runs }
                }
                Backing::FromInvariant(d) => Backing2::Invariant { descriptor: d },
                Backing::Product(fs) => Backing2::Product { factors: fs.into_iter().map(Into::into).collect() },
                Backing::SeededRandom { seed } => Backing2::Random { seed },
            };
            Coloring { bound: c.bound, colors: c.colors, backing }
        }
    }

    impl TryFrom<Coloring> for super::Coloring {
        type Error = ColoringError;

        fn try_from(w: Coloring) -> Result<Self, Self::Error> {
            let c = match w.backing {
                Backing2::Explicit { runs } => {
                    let mut table = Vec::new();
                    for [color, len] in runs {
                        let color = u32::try_from(color).map_err(|_| ColoringError::Invalid("color too large".into()))?;
                        table.extend(std::iter::repeat_n(color, len as usize));
                    }
                    super::Coloring::explicit(table, Some(w.colors))?
                }
                Backing2::Invariant { descriptor } => super::Coloring::from_invariant(descriptor, w.bound)?,
                Backing2::Product { factors } => super::Coloring::product(
                    factors.into_iter().map(super::Coloring::try_from).collect::<Result<_, _>>()?,
                )?,
                Backing2::Random { seed } => super::Coloring::random(seed, w.colors, w.bound)?,
            };
            if c.bound != w.bound || c.colors != w.colors {
                return Err(ColoringError::Invalid("declared bound or colors disagree with the backing".into()));
            }
            Ok(c)
        }
    }
}

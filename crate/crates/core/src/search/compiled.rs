//! Configurations lowered to index-addressed form for the search loops.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::config::{big_pow, AtomKind, Configuration, EvalError, Expr, FnSpec};

#[derive(Debug, Clone)]
pub(crate) enum CExpr {
    Const(BigInt, Option<i128>),
    Var(usize),
    Add(Box<CExpr>, Box<CExpr>),
    Sub(Box<CExpr>, Box<CExpr>),
    Mul(Box<CExpr>, Box<CExpr>),
    Pow(Box<CExpr>, Box<CExpr>),
    Apply(String, FnSpec, Box<CExpr>),
}

impl CExpr {
    fn lower(e: &Expr, c: &Configuration) -> CExpr {
        let b = |x: &Expr| Box::new(CExpr::lower(x, c));
        match e {
            Expr::Const(k) => CExpr::Const(k.clone(), k.to_i128()),
            Expr::Var(v) => CExpr::Var(c.var_index(v).expect("validated")),
            Expr::Add(x, y) => CExpr::Add(b(x), b(y)),
            Expr::Sub(x, y) => CExpr::Sub(b(x), b(y)),
            Expr::Mul(x, y) => CExpr::Mul(b(x), b(y)),
            Expr::Pow(x, y) => CExpr::Pow(b(x), b(y)),
            Expr::Apply(name, x) => {
                CExpr::Apply(name.clone(), c.functions.get(name).expect("validated").clone(), b(x))
            }
        }
    }

    fn mask(&self) -> u64 {
        match self {
            CExpr::Const(..) => 0,
            CExpr::Var(i) => 1 << i,
            CExpr::Add(a, b) | CExpr::Sub(a, b) | CExpr::Mul(a, b) | CExpr::Pow(a, b) => a.mask() | b.mask(),
            CExpr::Apply(_, _, a) => a.mask(),
        }
    }

    /// `Ok(None)` when an intermediate leaves `i128`.
    pub(crate) fn eval_small(&self, vals: &[u64]) -> Result<Option<i128>, EvalError> {
        Ok(match self {
            CExpr::Const(_, small) => *small,
            CExpr::Var(i) => Some(vals[*i] as i128),
            CExpr::Add(a, b) => match (a.eval_small(vals)?, b.eval_small(vals)?) {
                (Some(x), Some(y)) => x.checked_add(y),
                _ => None,
            },
            CExpr::Sub(a, b) => match (a.eval_small(vals)?, b.eval_small(vals)?) {
                (Some(x), Some(y)) => x.checked_sub(y),
                _ => None,
            },
            CExpr::Mul(a, b) => match (a.eval_small(vals)?, b.eval_small(vals)?) {
                (Some(x), Some(y)) => x.checked_mul(y),
                _ => None,
            },
            CExpr::Pow(a, b) => {
                let base = a.eval_small(vals)?;
                let exp = b.eval_small(vals)?;
                match (base, exp) {
                    (_, Some(e)) if e < 0 => return Err(EvalError::NegativeExponent),
                    (Some(0), Some(e)) => Some(i128::from(e == 0)),
                    (Some(1), Some(_)) => Some(1),
                    (Some(-1), Some(e)) => Some(if e % 2 == 0 { 1 } else { -1 }),
                    (Some(x), Some(e)) if e <= 127 => x.checked_pow(e as u32),
                    _ => None,
                }
            }
            CExpr::Apply(name, spec, a) => match a.eval_small(vals)? {
                Some(x) => {
                    if let FnSpec::Exp { base } = spec {
                        if x > 127 && *base > 1 {
                            return Ok(None);
                        }
                    }
                    spec.apply(name, &BigInt::from(x))?.to_i128()
                }
                None => None,
            },
        })
    }

    pub(crate) fn eval_big(&self, vals: &[u64]) -> Result<BigInt, EvalError> {
        Ok(match self {
            CExpr::Const(k, _) => k.clone(),
            CExpr::Var(i) => BigInt::from(vals[*i]),
            CExpr::Add(a, b) => a.eval_big(vals)? + b.eval_big(vals)?,
            CExpr::Sub(a, b) => a.eval_big(vals)? - b.eval_big(vals)?,
            CExpr::Mul(a, b) => a.eval_big(vals)? * b.eval_big(vals)?,
            CExpr::Pow(a, b) => big_pow(&a.eval_big(vals)?, &b.eval_big(vals)?)?,
            CExpr::Apply(name, spec, a) => spec.apply(name, &a.eval_big(vals)?)?,
        })
    }
}

/// `lhs - rhs` (or the atom's truth) at a full or partial assignment.
#[derive(Debug, Clone)]
pub(crate) struct CAtom {
    pub kind: AtomKind,
    pub lhs: CExpr,
    pub rhs: CExpr,
    pub mask: u64,
    /// Per variable: true when `lhs - rhs` is polynomial of degree <= 1 in it.
    pub linear_in: Vec<bool>,
}

pub(crate) enum Diff {
    Small(i128),
    Big(BigInt),
}

impl Diff {
    pub(crate) fn is_zero(&self) -> bool {
        match self {
            Diff::Small(x) => *x == 0,
            Diff::Big(x) => x.is_zero(),
        }
    }

    pub(crate) fn to_big(&self) -> BigInt {
        match self {
            Diff::Small(x) => BigInt::from(*x),
            Diff::Big(x) => x.clone(),
        }
    }
}

impl CAtom {
    pub(crate) fn diff(&self, vals: &[u64]) -> Result<Diff, EvalError> {
        if let (Some(l), Some(r)) = (self.lhs.eval_small(vals)?, self.rhs.eval_small(vals)?) {
            if let Some(d) = l.checked_sub(r) {
                return Ok(Diff::Small(d));
            }
        }
        Ok(Diff::Big(self.lhs.eval_big(vals)? - self.rhs.eval_big(vals)?))
    }

    pub(crate) fn holds(&self, vals: &[u64]) -> Result<bool, EvalError> {
        let d = self.diff(vals)?;
        Ok(match (self.kind, d) {
            (AtomKind::Eq, d) => d.is_zero(),
            (AtomKind::Neq, d) => !d.is_zero(),
            (AtomKind::Lt, Diff::Small(x)) => x < 0,
            (AtomKind::Lt, Diff::Big(x)) => x < BigInt::zero(),
        })
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub nvars: usize,
    pub block_of: Vec<usize>,
    pub nblocks: usize,
    /// Disjunctive normal form.
    pub conjs: Vec<Vec<CAtom>>,
}

impl Compiled {
    pub(crate) fn new(c: &Configuration) -> Compiled {
        assert!(c.vars.len() <= 64, "at most 64 variables");
        let conjs = c
            .formula
            .dnf()
            .into_iter()
            .map(|conj| {
                conj.into_iter()
                    .map(|a| {
                        let lhs = CExpr::lower(&a.lhs, c);
                        let rhs = CExpr::lower(&a.rhs, c);
                        let diff = Expr::sub(a.lhs.clone(), a.rhs.clone());
                        let linear_in = c
                            .vars
                            .iter()
                            .map(|v| matches!(diff.degree_in(v), Some(d) if d <= 1))
                            .collect();
                        CAtom { kind: a.kind, mask: lhs.mask() | rhs.mask(), lhs, rhs, linear_in }
                    })
                    .collect()
            })
            .collect();
        Compiled { nvars: c.vars.len(), block_of: c.block_of(), nblocks: c.blocks.len(), conjs }
    }
}

use std::fmt;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is not assigned")]
    Unbound(String),
    #[error("negative exponent in power")]
    NegativeExponent,
    #[error("exponent too large to evaluate exactly")]
    ExponentTooLarge,
    #[error("unknown function symbol `{0}`")]
    UnknownFunction(String),
    #[error("function `{name}` is undefined at {arg}")]
    FunctionDomain { name: String, arg: BigInt },
}

/// A total unary map registered under a function symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FnSpec {
    /// `n -> base^n`, defined for `n >= 0`.
    Exp { base: u64 },
    /// `n -> sum coeffs[i] * n^i`.
    Poly { coeffs: Vec<i64> },
}

impl FnSpec {
    pub fn apply(&self, name: &str, arg: &BigInt) -> Result<BigInt, EvalError> {
        match self {
            FnSpec::Exp { base } => {
                if arg.is_negative() {
                    return Err(EvalError::FunctionDomain {
                        name: name.to_string(),
                        arg: arg.clone(),
                    });
                }
                let e = arg.to_u32().ok_or(EvalError::ExponentTooLarge)?;
                Ok(BigInt::from(*base).pow(e))
            }
            FnSpec::Poly { coeffs } => {
                let mut acc = BigInt::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * arg + BigInt::from(*c);
                }
                Ok(acc)
            }
        }
    }
}

impl fmt::Display for FnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnSpec::Exp { base } => write!(f, "exp({base})"),
            FnSpec::Poly { coeffs } => {
                write!(f, "poly(")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

pub type FnRegistry = IndexMap<String, FnSpec>;

/// Integer arithmetic expression tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expr {
    Const(BigInt),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Apply(String, Box<Expr>),
}

impl Expr {
    pub fn constant(c: i64) -> Self {
        Expr::Const(BigInt::from(c))
    }

    pub fn var(name: &str) -> Self {
        Expr::Var(name.to_string())
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Self {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, b: Expr) -> Self {
        Expr::Pow(Box::new(a), Box::new(b))
    }

    pub fn apply(name: &str, a: Expr) -> Self {
        Expr::Apply(name.to_string(), Box::new(a))
    }

    /// Exact evaluation; `lookup` resolves variables.
    pub fn eval_with<F>(&self, lookup: &F, funcs: &FnRegistry) -> Result<BigInt, EvalError>
    where
        F: Fn(&str) -> Option<BigInt>,
    {
        Ok(match self {
            Expr::Const(c) => c.clone(),
            Expr::Var(v) => lookup(v).ok_or_else(|| EvalError::Unbound(v.clone()))?,
            Expr::Add(a, b) => a.eval_with(lookup, funcs)? + b.eval_with(lookup, funcs)?,
            Expr::Sub(a, b) => a.eval_with(lookup, funcs)? - b.eval_with(lookup, funcs)?,
            Expr::Mul(a, b) => a.eval_with(lookup, funcs)? * b.eval_with(lookup, funcs)?,
            Expr::Pow(a, b) => {
                let base = a.eval_with(lookup, funcs)?;
                let exp = b.eval_with(lookup, funcs)?;
                big_pow(&base, &exp)?
            }
            Expr::Apply(name, a) => {
                let spec = funcs
                    .get(name)
                    .ok_or_else(|| EvalError::UnknownFunction(name.clone()))?;
                spec.apply(name, &a.eval_with(lookup, funcs)?)?
            }
        })
    }

    pub fn eval(
        &self,
        assignment: &IndexMap<String, u64>,
        funcs: &FnRegistry,
    ) -> Result<BigInt, EvalError> {
        self.eval_with(&|v: &str| assignment.get(v).map(|&x| BigInt::from(x)), funcs)
    }

    /// Variables in first-occurrence order.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Pow(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Apply(_, a) => a.collect_vars(out),
        }
    }

    pub fn functions(&self, out: &mut Vec<String>) {
        match self {
            Expr::Const(_) | Expr::Var(_) => {}
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Pow(a, b) => {
                a.functions(out);
                b.functions(out);
            }
            Expr::Apply(f, a) => {
                if !out.contains(f) {
                    out.push(f.clone());
                }
                a.functions(out);
            }
        }
    }

    pub fn mentions(&self, var: &str) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(v) => v == var,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Pow(a, b) => {
                a.mentions(var) || b.mentions(var)
            }
            Expr::Apply(_, a) => a.mentions(var),
        }
    }

    /// Polynomial degree in `var`, treating other variables as constants.
    /// `None` when `var` occurs in an exponent or under a function symbol.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        match self {
            Expr::Const(_) => Some(0),
            Expr::Var(v) => Some(u32::from(v == var)),
            Expr::Add(a, b) | Expr::Sub(a, b) => Some(a.degree_in(var)?.max(b.degree_in(var)?)),
            Expr::Mul(a, b) => Some(a.degree_in(var)? + b.degree_in(var)?),
            Expr::Pow(a, b) => {
                if b.mentions(var) {
                    return None;
                }
                let d = a.degree_in(var)?;
                if d == 0 {
                    return Some(0);
                }
                match b.as_ref_const() {
                    Some(k) => k.to_u32().map(|k| d * k),
                    None => None,
                }
            }
            Expr::Apply(_, a) => {
                if a.mentions(var) {
                    None
                } else {
                    Some(0)
                }
            }
        }
    }

    fn as_ref_const(&self) -> Option<&BigInt> {
        match self {
            Expr::Const(c) => Some(c),
            _ => None,
        }
    }
}

pub(crate) fn big_pow(base: &BigInt, exp: &BigInt) -> Result<BigInt, EvalError> {
    if exp.is_negative() {
        return Err(EvalError::NegativeExponent);
    }
    if base.is_zero() {
        return Ok(if exp.is_zero() { BigInt::one() } else { BigInt::zero() });
    }
    if base.is_one() {
        return Ok(BigInt::one());
    }
    if *base == BigInt::from(-1) {
        return Ok(if (exp % 2u32).is_zero() { BigInt::one() } else { base.clone() });
    }
    let e = exp.to_u32().ok_or(EvalError::ExponentTooLarge)?;
    Ok(base.pow(e))
}

// Printing. Precedence: 1 = additive, 2 = multiplicative, 3 = power, 4 = atom.
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Const(c) if c.is_negative() => 1,
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Pow(..) => 3,
        _ => 4,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "(")?;
        write_expr(f, e)?;
        write!(f, ")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Const(c) => write!(f, "{c}"),
        Expr::Var(v) => write!(f, "{v}"),
        Expr::Add(a, b) => {
            write_at(f, a, 1)?;
            write!(f, "+")?;
            write_at_right_additive(f, b)
        }
        Expr::Sub(a, b) => {
            write_at(f, a, 1)?;
            write!(f, "-")?;
            write_at_right_additive(f, b)
        }
        Expr::Mul(a, b) => {
            write_mul_operand(f, a)?;
            write!(f, "*")?;
            write_at(f, b, 3)
        }
        Expr::Pow(a, b) => {
            write_at(f, a, 4)?;
            write!(f, "^")?;
            write_exponent(f, b)
        }
        Expr::Apply(name, a) => {
            write!(f, "{name}(")?;
            write_expr(f, a)?;
            write!(f, ")")
        }
    }
}

// A negative literal reads back as one token after `+`, `-`, `*`, `^`.
fn write_at_right_additive(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Const(_) => write_expr(f, e),
        _ => write_at(f, e, 2),
    }
}

fn write_mul_operand(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Const(_) => write_expr(f, e),
        _ => write_at(f, e, 2),
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Const(_) => write_expr(f, e),
        _ => write_at(f, e, 3),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, u64)]) -> IndexMap<String, u64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn eval_examples() {
        let funcs = FnRegistry::new();
        let sum = Expr::add(Expr::var("x"), Expr::var("y"));
        assert_eq!(sum.eval(&env(&[("x", 3), ("y", 4)]), &funcs).unwrap(), 7.into());
        let p = Expr::pow(Expr::var("x"), Expr::var("y"));
        assert_eq!(
            p.eval(&env(&[("x", 2), ("y", 10)]), &funcs).unwrap(),
            1024.into()
        );
        let e = Expr::sub(
            Expr::add(Expr::pow(Expr::var("x"), Expr::constant(2)), Expr::var("y")),
            Expr::var("z"),
        );
        assert_eq!(
            e.eval(&env(&[("x", 3), ("y", 1), ("z", 10)]), &funcs).unwrap(),
            0.into()
        );
    }

    #[test]
    fn eval_errors() {
        let funcs = FnRegistry::new();
        let p = Expr::pow(Expr::var("x"), Expr::sub(Expr::constant(0), Expr::var("y")));
        assert_eq!(
            p.eval(&env(&[("x", 2), ("y", 1)]), &funcs),
            Err(EvalError::NegativeExponent)
        );
        let g = Expr::apply("g", Expr::var("x"));
        assert_eq!(
            g.eval(&env(&[("x", 2)]), &funcs),
            Err(EvalError::UnknownFunction("g".into()))
        );
        assert_eq!(
            Expr::var("q").eval(&env(&[]), &funcs),
            Err(EvalError::Unbound("q".into()))
        );
    }

    #[test]
    fn function_symbols() {
        let mut funcs = FnRegistry::new();
        funcs.insert("f".into(), FnSpec::Exp { base: 2 });
        funcs.insert("g".into(), FnSpec::Poly { coeffs: vec![1, 0, 3] });
        let e = Expr::add(Expr::apply("g", Expr::var("x")), Expr::apply("f", Expr::var("y")));
        // g(2) = 1 + 12, f(5) = 32
        assert_eq!(e.eval(&env(&[("x", 2), ("y", 5)]), &funcs).unwrap(), 45.into());
    }

    #[test]
    fn degrees() {
        let e = Expr::add(
            Expr::mul(Expr::var("x"), Expr::var("y")),
            Expr::pow(Expr::var("z"), Expr::constant(3)),
        );
        assert_eq!(e.degree_in("x"), Some(1));
        assert_eq!(e.degree_in("z"), Some(3));
        assert_eq!(e.degree_in("w"), Some(0));
        let ex = Expr::pow(Expr::var("x"), Expr::var("y"));
        assert_eq!(ex.degree_in("y"), None);
        assert_eq!(ex.degree_in("x"), None);
        assert_eq!(Expr::apply("f", Expr::var("y")).degree_in("y"), None);
    }
}

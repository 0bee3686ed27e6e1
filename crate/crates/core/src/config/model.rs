use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::{EvalError, Expr, FnRegistry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtomKind {
    Eq,
    Neq,
    Lt,
}

impl AtomKind {
    pub fn symbol(self) -> &'static str {
        match self {
            AtomKind::Eq => "=",
            AtomKind::Neq => "!=",
            AtomKind::Lt => "<",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub kind: AtomKind,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Atom {
    pub fn new(kind: AtomKind, lhs: Expr, rhs: Expr) -> Self {
        Atom { kind, lhs, rhs }
    }

    pub fn eq(lhs: Expr, rhs: Expr) -> Self {
        Atom::new(AtomKind::Eq, lhs, rhs)
    }

    pub fn eval_with<F>(&self, lookup: &F, funcs: &FnRegistry) -> Result<bool, EvalError>
    where
        F: Fn(&str) -> Option<num_bigint::BigInt>,
    {
        let l = self.lhs.eval_with(lookup, funcs)?;
        let r = self.rhs.eval_with(lookup, funcs)?;
        Ok(match self.kind {
            AtomKind::Eq => l == r,
            AtomKind::Neq => l != r,
            AtomKind::Lt => l < r,
        })
    }

    pub fn vars(&self) -> Vec<String> {
        let mut v = self.lhs.vars();
        for x in self.rhs.vars() {
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.lhs, self.kind.symbol(), self.rhs)
    }
}

/// Positive boolean combination of atoms. There is no negation; `Neq` is
/// primitive instead.
///
/// Canonical form (what the parser produces, and what printing round-trips):
/// `And`/`Or` nodes have at least two children.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    Atom(Atom),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn eval_with<F>(&self, lookup: &F, funcs: &FnRegistry) -> Result<bool, EvalError>
    where
        F: Fn(&str) -> Option<num_bigint::BigInt>,
    {
        match self {
            Formula::Atom(a) => a.eval_with(lookup, funcs),
            Formula::And(items) => {
                for it in items {
                    if !it.eval_with(lookup, funcs)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Or(items) => {
                for it in items {
                    if it.eval_with(lookup, funcs)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Formula::Atom(a) => out.push(a),
            Formula::And(items) | Formula::Or(items) => {
                items.iter().for_each(|i| i.collect_atoms(out))
            }
        }
    }

    /// Disjunctive normal form: a list of conjunctions of atoms.
    pub fn dnf(&self) -> Vec<Vec<Atom>> {
        match self {
            Formula::Atom(a) => vec![vec![a.clone()]],
            Formula::Or(items) => items.iter().flat_map(|i| i.dnf()).collect(),
            Formula::And(items) => {
                let mut acc: Vec<Vec<Atom>> = vec![Vec::new()];
                for it in items {
                    let part = it.dnf();
                    let mut next = Vec::with_capacity(acc.len() * part.len());
                    for left in &acc {
                        for right in &part {
                            let mut c = left.clone();
                            c.extend(right.iter().cloned());
                            next.push(c);
                        }
                    }
                    acc = next;
                }
                acc
            }
        }
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, formula: &Formula, inside: Option<bool>) -> fmt::Result {
    // `inside` is Some(true) under an And, Some(false) under an Or.
    match formula {
        Formula::Atom(a) => write!(f, "{a}"),
        Formula::And(items) => {
            let paren = inside == Some(true);
            if paren {
                write!(f, "(")?;
            }
            for (i, it) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, " & ")?;
                }
                write_formula(f, it, Some(true))?;
            }
            if paren {
                write!(f, ")")?;
            }
            Ok(())
        }
        Formula::Or(items) => {
            let paren = inside.is_some();
            if paren {
                write!(f, "(")?;
            }
            for (i, it) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, " | ")?;
                }
                write_formula(f, it, Some(false))?;
            }
            if paren {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("configuration has no variables")]
    NoVariables,
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("blocks do not partition the variables: {0}")]
    NotAPartition(String),
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("ramsey pair ({0},{1}) must lie in the first block")]
    RamseyOutsideFirstBlock(String, String),
    #[error("ramsey pair ({0},{1}) must be two distinct variables with the first declared earlier")]
    RamseyOrder(String, String),
    #[error("formula mentions undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("formula uses unregistered function `{0}`")]
    UnregisteredFunction(String),
}

/// Formula over named variables, a block partition, and optionally a
/// designated ordered Ramsey pair living in the first block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vars: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ramsey: Option<(String, String)>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub functions: FnRegistry,
    pub formula: Formula,
}

impl Configuration {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.vars.is_empty() {
            return Err(ConfigError::NoVariables);
        }
        for (i, v) in self.vars.iter().enumerate() {
            if self.vars[..i].contains(v) {
                return Err(ConfigError::DuplicateVariable(v.clone()));
            }
        }
        let mut seen: Vec<&String> = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(ConfigError::EmptyBlock(i));
            }
            for v in b {
                if !self.vars.contains(v) {
                    return Err(ConfigError::NotAPartition(format!("`{v}` is not a variable")));
                }
                if seen.contains(&v) {
                    return Err(ConfigError::NotAPartition(format!("`{v}` is in two blocks")));
                }
                seen.push(v);
            }
        }
        if let Some(missing) = self.vars.iter().find(|v| !seen.contains(v)) {
            return Err(ConfigError::NotAPartition(format!("`{missing}` is in no block")));
        }
        if let Some((x, y)) = &self.ramsey {
            let pos = |v: &String| self.vars.iter().position(|w| w == v);
            match (pos(x), pos(y)) {
                (Some(i), Some(j)) if i < j => {}
                _ => return Err(ConfigError::RamseyOrder(x.clone(), y.clone())),
            }
            let first = &self.blocks[0];
            if !first.contains(x) || !first.contains(y) {
                return Err(ConfigError::RamseyOutsideFirstBlock(x.clone(), y.clone()));
            }
        }
        let mut fns = Vec::new();
        for atom in self.formula.atoms() {
            for v in atom.vars() {
                if !self.vars.contains(&v) {
                    return Err(ConfigError::UndeclaredVariable(v));
                }
            }
            atom.lhs.functions(&mut fns);
            atom.rhs.functions(&mut fns);
        }
        if let Some(f) = fns.iter().find(|f| !self.functions.contains_key(*f)) {
            return Err(ConfigError::UnregisteredFunction(f.clone()));
        }
        Ok(())
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Block index of every variable, in `vars` order.
    pub fn block_of(&self) -> Vec<usize> {
        self.vars
            .iter()
            .map(|v| {
                self.blocks
                    .iter()
                    .position(|b| b.contains(v))
                    .expect("validated partition")
            })
            .collect()
    }

    /// True iff the formula holds under exact integer semantics; colors are
    /// not inspected.
    pub fn holds(&self, w: &Witness) -> Result<bool, EvalError> {
        self.holds_assignment(&w.assignment)
    }

    pub fn holds_assignment(&self, a: &IndexMap<String, u64>) -> Result<bool, EvalError> {
        self.formula.eval_with(
            &|v: &str| a.get(v).map(|&x| num_bigint::BigInt::from(x)),
            &self.functions,
        )
    }
}

/// Satisfying assignment with the color of each block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub assignment: IndexMap<String, u64>,
    pub block_colors: Vec<u32>,
}

impl Witness {
    pub fn value(&self, var: &str) -> Option<u64> {
        self.assignment.get(var).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn holds_examples() {
        let c = parse_config(
            "config { vars x y z t; blocks (x y) (z t); ramsey (x,y); formula x+y=z & x*y=t & x!=y }",
        )
        .unwrap();
        let w = |vals: [u64; 4]| Witness {
            assignment: c.vars.iter().cloned().zip(vals).collect(),
            block_colors: vec![0, 0],
        };
        assert!(c.holds(&w([2, 3, 5, 6])).unwrap());
        assert!(!c.holds(&w([2, 2, 4, 4])).unwrap());

        let ap = parse_config(
            "config { vars x y z; blocks (x y z); ramsey (x,y); formula x+y=2*z | x+z=2*y | y+z=2*x }",
        )
        .unwrap();
        let w = Witness {
            assignment: [("x", 3u64), ("y", 7), ("z", 5)]
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
            block_colors: vec![0],
        };
        assert!(ap.holds(&w).unwrap());
    }

    #[test]
    fn validation_rejects_malformations() {
        let bad = [
            ("config { vars x y z; blocks (x y); formula x+y=z }", "no block"),
            ("config { vars x y z; blocks (x y z) (z); formula x+y=z }", "two blocks"),
            ("config { vars x y z; blocks (x z) (y); ramsey (x,y); formula x+y=z }", "first block"),
            ("config { vars x y z; blocks (x y z); ramsey (y,x); formula x+y=z }", "distinct"),
            ("config { vars x y; blocks (x y); formula x+y=w }", "undeclared"),
            ("config { vars x y; blocks (x y); formula f(x)=y }", "unregistered"),
            ("config { vars x x; blocks (x); formula x=x }", "twice"),
        ];
        for (text, needle) in bad {
            let err = parse_config(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text}: {err}");
        }
        // the ramsey pair may share the first block with other variables or not
        parse_config("config { vars x y z; blocks (x y) (z); ramsey (x,y); formula x+y=z }").unwrap();
    }

    #[test]
    fn dnf_distributes() {
        let c = parse_config(
            "config { vars x y z; blocks (x y z); formula x+y=z & (x<y | x=y) }",
        )
        .unwrap();
        let d = c.formula.dnf();
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|conj| conj.len() == 2));
    }
}

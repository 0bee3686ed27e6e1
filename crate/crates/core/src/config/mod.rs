//! Expressions, formulas and block-structured configurations.

mod catalog;
mod expr;
mod model;
mod parse;

pub use catalog::{builtin_catalog, catalog_entry};
pub(crate) use expr::big_pow;
pub use expr::{EvalError, Expr, FnRegistry, FnSpec};
pub use model::{Atom, AtomKind, ConfigError, Configuration, Formula, Witness};
pub use parse::{parse_config, parse_expr, parse_formula, ParseError};

/// Resolves a catalog name, or failing that parses `src` as grammar text.
pub fn resolve_config(src: &str) -> Result<Configuration, ParseError> {
    match catalog_entry(src.trim()) {
        Some(c) => Ok(c),
        None => parse_config(src),
    }
}

//! Textual configuration grammar.
//!
//! ```text
//! config   := "config" [name] "{" item* "}"
//! item     := "vars" ident* ";"
//!           | "blocks" ("(" ident* ")")* ";"
//!           | "ramsey" "(" ident "," ident ")" ";"
//!           | "fn" ident "=" ("exp(" int ")" | "poly(" int ("," int)* ")") ";"
//!           | "formula" or [";"]
//! or       := and ("|" and)*
//! and      := prim ("&" prim)*
//! prim     := atom | "(" or ")"
//! atom     := expr ("=" | "!=" | "<") expr
//! expr     := term (("+" | "-") term)*
//! term     := unary ("*" unary | <number immediately followed by ident or "(">)*
//! unary    := "-" unary | power
//! power    := primary ["^" unary]
//! primary  := int | ident | ident "(" expr ")" | "(" expr ")"
//! ```
//!
//! `#` starts a comment running to the end of the line. A config name may
//! contain `-` between identifier characters.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use super::expr::{Expr, FnRegistry, FnSpec};
use super::model::{Atom, AtomKind, ConfigError, Configuration, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg} (see docs/grammar.md)")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Invalid(#[from] ConfigError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Comma,
    Eq,
    Neq,
    Lt,
    Amp,
    Bar,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Num(n) => write!(f, "number `{n}`"),
            Tok::End => write!(f, "end of input"),
            other => {
                let s = match other {
                    Tok::Plus => "+",
                    Tok::Minus => "-",
                    Tok::Star => "*",
                    Tok::Caret => "^",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::Semi => ";",
                    Tok::Comma => ",",
                    Tok::Eq => "=",
                    Tok::Neq => "!=",
                    Tok::Lt => "<",
                    Tok::Amp => "&",
                    Tok::Bar => "|",
                    _ => unreachable!(),
                };
                write!(f, "`{s}`")
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
    /// Byte offset just past the token, used to detect adjacency.
    end: usize,
    start: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let (tcol, tline) = (col, line);
        let tok = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Num(src[start..i].parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(src[start..i].to_string())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ';' => Tok::Semi,
                ',' => Tok::Comma,
                '=' => Tok::Eq,
                '<' => Tok::Lt,
                '&' => Tok::Amp,
                '|' => Tok::Bar,
                '!' if bytes.get(i) == Some(&b'=') => {
                    i += 1;
                    Tok::Neq
                }
                _ => {
                    return Err(ParseError::Syntax {
                        line: tline,
                        col: tcol,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        col += i - start;
        out.push(Spanned { tok, line: tline, col: tcol, end: i, start });
    }
    out.push(Spanned { tok: Tok::End, line, col, end: i, start: i });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(src: &str) -> PResult<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let s = &self.toks[self.pos];
        Err(ParseError::Syntax { line: s.line, col: s.col, msg: msg.into() })
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            let found = self.peek().clone();
            self.err(format!("expected {t}, found {found}"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.err(format!("expected identifier, found {other}")),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            other => {
                let other = other.clone();
                self.err(format!("expected `{kw}`, found {other}"))
            }
        }
    }

    fn int(&mut self) -> PResult<BigInt> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            other => self.err(format!("expected integer, found {other}")),
        }
    }

    fn small_int<T: TryFrom<BigInt>>(&mut self) -> PResult<T> {
        let n = self.int()?;
        match T::try_from(n.clone()) {
            Ok(v) => Ok(v),
            Err(_) => self.err(format!("integer {n} out of range")),
        }
    }

    // ---- expressions ----

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::mul(lhs, self.unary()?);
                }
                Tok::Ident(_) | Tok::LParen if self.prev_was_adjacent_number() => {
                    lhs = Expr::mul(lhs, self.power()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn prev_was_adjacent_number(&self) -> bool {
        if self.pos == 0 {
            return false;
        }
        let prev = &self.toks[self.pos - 1];
        matches!(prev.tok, Tok::Num(_)) && prev.end == self.toks[self.pos].start
    }

    fn unary(&mut self) -> PResult<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let inner = self.unary()?;
            return Ok(match inner {
                Expr::Const(c) if !c.is_negative() => Expr::Const(-c),
                other => Expr::mul(Expr::constant(-1), other),
            });
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.primary()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp = self.unary()?;
            return Ok(Expr::pow(base, exp));
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Expr::Const(n))
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Apply(name, Box::new(arg)))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => self.err(format!("expected expression, found {other}")),
        }
    }

    // ---- formulas ----

    fn atom(&mut self) -> PResult<Atom> {
        let lhs = self.expr()?;
        let kind = match self.peek() {
            Tok::Eq => AtomKind::Eq,
            Tok::Neq => AtomKind::Neq,
            Tok::Lt => AtomKind::Lt,
            other => {
                let other = other.clone();
                return self.err(format!("expected `=`, `!=` or `<`, found {other}"));
            }
        };
        self.bump();
        let rhs = self.expr()?;
        Ok(Atom::new(kind, lhs, rhs))
    }

    fn or(&mut self) -> PResult<Formula> {
        let mut items = vec![self.and()?];
        while *self.peek() == Tok::Bar {
            self.bump();
            items.push(self.and()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Formula::Or(items) })
    }

    fn and(&mut self) -> PResult<Formula> {
        let mut items = vec![self.prim()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            items.push(self.prim()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Formula::And(items) })
    }

    fn prim(&mut self) -> PResult<Formula> {
        if *self.peek() != Tok::LParen {
            return Ok(Formula::Atom(self.atom()?));
        }
        let save = self.pos;
        let atom_err = match self.atom() {
            Ok(a) => return Ok(Formula::Atom(a)),
            Err(e) => (e, self.pos),
        };
        self.pos = save;
        self.bump();
        let grouped = self.or().and_then(|f| {
            self.expect(Tok::RParen)?;
            Ok(f)
        });
        match grouped {
            Ok(f) => Ok(f),
            Err(e) => {
                // report whichever attempt got further
                if self.pos >= atom_err.1 {
                    Err(e)
                } else {
                    Err(atom_err.0)
                }
            }
        }
    }

    // ---- configurations ----

    fn config(&mut self) -> PResult<Configuration> {
        self.keyword("config")?;
        let name = self.config_name();
        self.expect(Tok::LBrace)?;
        let mut vars = None;
        let mut blocks = None;
        let mut ramsey = None;
        let mut functions = FnRegistry::new();
        let mut formula = None;
        while *self.peek() != Tok::RBrace {
            let kw = self.ident()?;
            match kw.as_str() {
                "vars" => {
                    let mut v = Vec::new();
                    while let Tok::Ident(_) = self.peek() {
                        v.push(self.ident()?);
                    }
                    self.expect(Tok::Semi)?;
                    vars = Some(v);
                }
                "blocks" => {
                    let mut bs = Vec::new();
                    while *self.peek() == Tok::LParen {
                        self.bump();
                        let mut b = Vec::new();
                        while let Tok::Ident(_) = self.peek() {
                            b.push(self.ident()?);
                        }
                        self.expect(Tok::RParen)?;
                        bs.push(b);
                    }
                    self.expect(Tok::Semi)?;
                    blocks = Some(bs);
                }
                "ramsey" => {
                    self.expect(Tok::LParen)?;
                    let x = self.ident()?;
                    self.expect(Tok::Comma)?;
                    let y = self.ident()?;
                    self.expect(Tok::RParen)?;
                    self.expect(Tok::Semi)?;
                    ramsey = Some((x, y));
                }
                "fn" => {
                    let fname = self.ident()?;
                    self.expect(Tok::Eq)?;
                    let spec = self.fn_spec()?;
                    self.expect(Tok::Semi)?;
                    functions.insert(fname, spec);
                }
                "formula" => {
                    formula = Some(self.or()?);
                    if *self.peek() == Tok::Semi {
                        self.bump();
                    }
                }
                other => return self.err(format!("unknown section `{other}`")),
            }
        }
        self.expect(Tok::RBrace)?;
        self.expect(Tok::End)?;
        let vars = match vars {
            Some(v) => v,
            None => return self.err("missing `vars` section"),
        };
        let formula = match formula {
            Some(f) => f,
            None => return self.err("missing `formula` section"),
        };
        let blocks = blocks.unwrap_or_else(|| vec![vars.clone()]);
        let c = Configuration { name, vars, blocks, ramsey, functions, formula };
        c.validate()?;
        Ok(c)
    }

    /// A run of adjacent identifier, number and `-` tokens, e.g. `3ap-distinct`.
    fn config_name(&mut self) -> Option<String> {
        if !matches!(self.peek(), Tok::Ident(_) | Tok::Num(_)) {
            return None;
        }
        let mut name = String::new();
        loop {
            match self.peek() {
                Tok::Ident(s) => name.push_str(s),
                Tok::Num(n) => name.push_str(&n.to_string()),
                Tok::Minus => name.push('-'),
                _ => break,
            }
            self.bump();
            let adjacent = self.toks[self.pos - 1].end == self.toks[self.pos].start;
            if !adjacent {
                break;
            }
        }
        Some(name)
    }

    fn fn_spec(&mut self) -> PResult<FnSpec> {
        let kind = self.ident()?;
        self.expect(Tok::LParen)?;
        let spec = match kind.as_str() {
            "exp" => FnSpec::Exp { base: self.small_int()? },
            "poly" => {
                let mut coeffs = vec![self.small_int()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    coeffs.push(self.small_int()?);
                }
                FnSpec::Poly { coeffs }
            }
            other => return self.err(format!("unknown function kind `{other}`")),
        };
        self.expect(Tok::RParen)?;
        Ok(spec)
    }
}

pub fn parse_config(src: &str) -> Result<Configuration, ParseError> {
    Parser::new(src)?.config()
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.expect(Tok::End)?;
    Ok(e)
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.or()?;
    p.expect(Tok::End)?;
    Ok(f)
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config ")?;
        if let Some(n) = &self.name {
            write!(f, "{n} ")?;
        }
        write!(f, "{{ vars {}; blocks", self.vars.join(" "))?;
        for b in &self.blocks {
            write!(f, " ({})", b.join(" "))?;
        }
        write!(f, ";")?;
        if let Some((x, y)) = &self.ramsey {
            write!(f, " ramsey ({x},{y});")?;
        }
        for (name, spec) in &self.functions {
            write!(f, " fn {name} = {spec};")?;
        }
        write!(f, " formula {}; }}", self.formula)
    }
}

//! Polynomial expression grammar.
//!
//! ```text
//! expr     := sign? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := var | rational | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! Whitespace is insignificant. Multiplication must be written explicitly, so
//! `xy` is a single identifier rather than `x*y`. A leading sign is accepted at
//! the start of an expression (including inside parentheses).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("non-integer exponent at position {pos}")]
    NonIntegerExponent { pos: usize },
    #[error("exponent too large at position {pos}")]
    ExponentTooLarge { pos: usize },
    #[error("division by zero in rational literal at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("duplicate variable `{0}` in declaration")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
}

/// Syntax tree of a polynomial expression over declared variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Var(usize),
    Rational(Rational),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    /// Expands into canonical form by exact arithmetic.
    pub fn expand(&self, vars: &[String]) -> Polynomial {
        match self {
            PolyExpr::Var(i) => Polynomial::variable(vars.to_vec(), *i),
            PolyExpr::Rational(c) => Polynomial::constant(vars.to_vec(), c.clone()),
            PolyExpr::Neg(e) => -&e.expand(vars),
            PolyExpr::Add(a, b) => &a.expand(vars) + &b.expand(vars),
            PolyExpr::Sub(a, b) => &a.expand(vars) - &b.expand(vars),
            PolyExpr::Mul(a, b) => &a.expand(vars) * &b.expand(vars),
            PolyExpr::Pow(a, k) => a.expand(vars).pow(*k),
        }
    }

    /// Renders back to grammar text, parenthesizing every compound node.
    pub fn unparse(&self, vars: &[String]) -> String {
        Unparse { expr: self, vars }.to_string()
    }
}

struct Unparse<'a> {
    expr: &'a PolyExpr,
    vars: &'a [String],
}

impl<'a> fmt::Display for Unparse<'a> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |e: &'a PolyExpr| Unparse {
            expr: e,
            vars: self.vars,
        };
        match self.expr {
            PolyExpr::Var(i) => write!(f, "{}", self.vars[*i]),
            PolyExpr::Rational(c) => {
                if c < &Rational::zero() {
                    write!(f, "(-{})", -c)
                } else {
                    write!(f, "{c}")
                }
            }
            PolyExpr::Neg(e) => write!(f, "(-{})", sub(e)),
            PolyExpr::Add(a, b) => write!(f, "({} + {})", sub(a), sub(b)),
            PolyExpr::Sub(a, b) => write!(f, "({} - {})", sub(a), sub(b)),
            PolyExpr::Mul(a, b) => write!(f, "{}*{}", sub(a), sub(b)),
            PolyExpr::Pow(a, k) => match **a {
                PolyExpr::Var(_) => write!(f, "{}^{}", sub(a), k),
                _ => write!(f, "({})^{}", sub(a), k),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            if i < chars.len() && chars[i].1 == '.' {
                return Err(ParseError::Syntax {
                    pos: chars[i].0,
                    message: "decimal literals are not supported; write p/q".into(),
                });
            }
            out.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((
                pos,
                Tok::Ident(chars[start..i].iter().map(|&(_, c)| c).collect()),
            ));
        } else {
            return Err(ParseError::Syntax {
                pos,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            message: format!("expected {expected}, found {}", describe(self.peek())),
        }
    }

    fn expr(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = match self.peek() {
            Tok::Minus => {
                self.bump();
                PolyExpr::Neg(Box::new(self.term()?))
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<PolyExpr, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(k) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    return Err(ParseError::NonIntegerExponent { pos });
                }
                let k = u32::try_from(&k).map_err(|_| ParseError::ExponentTooLarge { pos })?;
                Ok(PolyExpr::Pow(Box::new(base), k))
            }
            Tok::Minus => Err(ParseError::NegativeExponent { pos }),
            _ => Err(self.unexpected("a nonnegative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<PolyExpr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(PolyExpr::Var(i)),
                    None => Err(ParseError::UnknownVariable { pos, name }),
                }
            }
            Tok::Int(num) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    match self.peek().clone() {
                        Tok::Int(den) if den.is_zero() => {
                            Err(ParseError::ZeroDenominator { pos: dpos })
                        }
                        Tok::Int(den) => {
                            self.bump();
                            Ok(PolyExpr::Rational(Rational::new(num, den)))
                        }
                        _ => Err(self.unexpected("an unsigned integer denominator")),
                    }
                } else {
                    Ok(PolyExpr::Rational(Rational::from_integer(num)))
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.unexpected("a variable, number or `(`")),
        }
    }
}

/// Parses `text` over the declared variable list.
pub fn parse_expr(text: &str, vars: &[String]) -> Result<PolyExpr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        vars,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

/// Parses and expands in one step.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<Polynomial, ParseError> {
    Ok(parse_expr(text, vars)?.expand(vars))
}

/// Variable names in order of first appearance in `text`.
pub fn infer_variables(text: &str) -> Result<Vec<String>, ParseError> {
    let mut vars: Vec<String> = Vec::new();
    for (_, t) in tokenize(text)? {
        if let Tok::Ident(name) = t {
            if !vars.contains(&name) {
                vars.push(name);
            }
        }
    }
    Ok(vars)
}

/// Validates a comma-separated variable declaration such as `x,y,z`.
pub fn parse_variable_list(decl: &str) -> Result<Vec<String>, ParseError> {
    let mut vars: Vec<String> = Vec::new();
    for raw in decl.split(',') {
        let name = raw.trim();
        let mut chars = name.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
            && chars.all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(ParseError::InvalidVariable(name.to_string()));
        }
        if vars.iter().any(|v| v == name) {
            return Err(ParseError::DuplicateVariable(name.to_string()));
        }
        vars.push(name.to_string());
    }
    Ok(vars)
}

/// Parses a rational literal such as `5/6`, `-2` or `3`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let bad = || ParseError::Syntax {
        pos: 0,
        message: format!("invalid rational `{text}`"),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ParseError::ZeroDenominator {
            pos: t.find('/').unwrap_or(0) + 1,
        });
    }
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

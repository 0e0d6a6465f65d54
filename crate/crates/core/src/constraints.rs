//! Propositional integrity constraints and admissible-domain enumeration.
//!
//! Grammar (loosest binding first):
//!
//! ```text
//! iff     := implies ( "<->" implies )*        left-associative
//! implies := or ( "->" implies )?              right-associative
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "!" unary | atom
//! atom    := ident | "true" | "false" | "(" iff ")"
//! ident   := [A-Za-z][A-Za-z0-9_]*
//! ```

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::agenda::{Agenda, Domain};
use crate::error::{Error, Result};
use crate::judgment::Judgment;

/// Default bound on the number of issues enumerated exhaustively.
pub const DEFAULT_ENUM_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Var(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(label: impl Into<String>) -> Self {
        Formula::Var(label.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Variable labels in first-occurrence order, without repeats.
    pub fn variables(&self) -> Vec<&str> {
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a str>) {
            match f {
                Formula::True | Formula::False => {}
                Formula::Var(v) => {
                    if !out.contains(&v.as_str()) {
                        out.push(v);
                    }
                }
                Formula::Not(a) => walk(a, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Replaces variable labels by agenda positions.
    pub(crate) fn compile(&self, agenda: &Agenda) -> Result<Compiled> {
        Ok(match self {
            Formula::True => Compiled::Const(true),
            Formula::False => Compiled::Const(false),
            Formula::Var(v) => Compiled::Var(agenda.index_of(v).ok_or_else(|| Error::UnknownVariable(v.clone()))?),
            Formula::Not(a) => Compiled::Not(Box::new(a.compile(agenda)?)),
            Formula::And(a, b) => Compiled::And(Box::new(a.compile(agenda)?), Box::new(b.compile(agenda)?)),
            Formula::Or(a, b) => Compiled::Or(Box::new(a.compile(agenda)?), Box::new(b.compile(agenda)?)),
            Formula::Implies(a, b) => Compiled::Or(
                Box::new(Compiled::Not(Box::new(a.compile(agenda)?))),
                Box::new(b.compile(agenda)?),
            ),
            Formula::Iff(a, b) => Compiled::Iff(Box::new(a.compile(agenda)?), Box::new(b.compile(agenda)?)),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(..) => 5,
            Formula::True | Formula::False | Formula::Var(_) => 6,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    Const(bool),
    Var(usize),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Iff(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    pub(crate) fn eval(&self, j: &Judgment) -> bool {
        match self {
            Compiled::Const(b) => *b,
            Compiled::Var(k) => j.get(*k),
            Compiled::Not(a) => !a.eval(j),
            Compiled::And(a, b) => a.eval(j) && b.eval(j),
            Compiled::Or(a, b) => a.eval(j) || b.eval(j),
            Compiled::Iff(a, b) => a.eval(j) == b.eval(j),
        }
    }
}

/// Truth value of `f` under the assignment issue `k` ↦ bit `k` of `j`.
pub fn evaluate(f: &Formula, j: &Judgment, agenda: &Agenda) -> Result<bool> {
    if j.len() != agenda.len() {
        return Err(Error::DimensionMismatch {
            expected: agenda.len(),
            actual: j.len(),
        });
    }
    Ok(f.compile(agenda)?.eval(j))
}

/// All judgments satisfying the agenda's constraint, ascending.
pub fn enumerate_domain(agenda: &Agenda, cap: usize) -> Result<Domain> {
    let m = agenda.len();
    if m > cap {
        return Err(Error::CapacityExceeded { m, cap });
    }
    let Some(constraint) = agenda.constraint() else {
        return Domain::free(m, cap);
    };
    let compiled = constraint.compile(agenda)?;
    let members: Vec<Judgment> = (0..1u64 << m)
        .into_par_iter()
        .map(|bits| Judgment::from_index(m, bits).expect("bits below 2^m"))
        .filter(|j| compiled.eval(j))
        .collect();
    if members.is_empty() {
        return Err(Error::InconsistentConstraint);
    }
    Domain::from_sorted(members)
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        end: text.len(),
    };
    let f = parser.iff()?;
    match parser.peek() {
        None => Ok(f),
        Some((tok, at)) => Err(Error::Syntax {
            position: at,
            message: format!("unexpected {}", tok.describe()),
        }),
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("identifier {s:?}"),
            Token::True => "'true'".into(),
            Token::False => "'false'".into(),
            Token::Not => "'!'".into(),
            Token::And => "'&'".into(),
            Token::Or => "'|'".into(),
            Token::Implies => "'->'".into(),
            Token::Iff => "'<->'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Token::Iff
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Token::True,
                    "false" => Token::False,
                    ident => Token::Ident(ident.to_owned()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(Token, usize)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(&Token, usize)> {
        self.tokens.get(self.pos).map(|(t, at)| (t, *at))
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek().map(|(t, _)| t) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implies()?;
        while self.eat(&Token::Iff) {
            lhs = Formula::iff(lhs, self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(&Token::Implies) {
            return Ok(Formula::implies(lhs, self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat(&Token::Or) {
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::And) {
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Token::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let Some((tok, at)) = self.peek() else {
            return Err(Error::Syntax {
                position: self.end,
                message: "unexpected end of input".into(),
            });
        };
        let tok = tok.clone();
        self.pos += 1;
        match tok {
            Token::Ident(v) => Ok(Formula::Var(v)),
            Token::True => Ok(Formula::True),
            Token::False => Ok(Formula::False),
            Token::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Token::RParen) {
                    let position = self.peek().map_or(self.end, |(_, at)| at);
                    return Err(Error::Syntax {
                        position,
                        message: "expected ')'".into(),
                    });
                }
                Ok(inner)
            }
            other => Err(Error::Syntax {
                position: at,
                message: format!("unexpected {}", other.describe()),
            }),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, c: &Formula, paren: bool) -> fmt::Result {
            if paren {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }
        let p = self.precedence();
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Var(v) => f.write_str(v),
            Formula::Not(a) => {
                f.write_str("!")?;
                child(f, a, a.precedence() < p)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                let op = match self {
                    Formula::And(..) => " & ",
                    Formula::Or(..) => " | ",
                    _ => " <-> ",
                };
                child(f, a, a.precedence() < p)?;
                f.write_str(op)?;
                child(f, b, b.precedence() <= p)
            }
            Formula::Implies(a, b) => {
                child(f, a, a.precedence() <= p)?;
                f.write_str(" -> ")?;
                child(f, b, b.precedence() < p)
            }
        }
    }
}

//! Concrete syntax.
//!
//! ```text
//! implication := disjunction [ ("->" | "<->") implication ]
//! disjunction := conjunction { "|" conjunction }
//! conjunction := temporal { "&" temporal }
//! temporal    := unary [ ("U" | "W" | "S" | "T" | "B") temporal ]
//! unary       := ("!" | "X" | "F" | "G" | "Y" | "Z") unary | atom
//! atom        := "true" | "false" | identifier | "(" implication ")"
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Alphabet, Formula};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Unary(char),
    Binary(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '-' if text[i..].starts_with("->") => {
                i += 1;
                Tok::Implies
            }
            '<' if text[i..].starts_with("<->") => {
                i += 2;
                Tok::Iff
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "X" | "F" | "G" | "Y" | "Z" => Tok::Unary(c),
                    "U" | "W" | "S" | "T" | "B" => Tok::Binary(c),
                    id => Tok::Ident(id.to_string()),
                }
            }
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    message: format!("unexpected character `{}`", text[start..].chars().next().unwrap()),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a, D> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    declared: &'a D,
}

impl<D: Fn(&str) -> bool> Parser<'_, D> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            message: message.into(),
        })
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        match self.peek() {
            Tok::Implies => {
                self.bump();
                Ok(Formula::implies(lhs, self.implication()?))
            }
            Tok::Iff => {
                self.bump();
                Ok(Formula::iff(lhs, self.implication()?))
            }
            _ => Ok(lhs),
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.temporal()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.temporal()?);
        }
        Ok(lhs)
    }

    fn temporal(&mut self) -> Result<Formula> {
        let lhs = self.unary()?;
        let Tok::Binary(op) = *self.peek() else {
            return Ok(lhs);
        };
        self.bump();
        let rhs = self.temporal()?;
        Ok(match op {
            'U' => Formula::until(lhs, rhs),
            'W' => Formula::weak_until(lhs, rhs),
            'S' => Formula::since(lhs, rhs),
            'T' => Formula::weak_since(lhs, rhs),
            _ => Formula::before(lhs, rhs),
        })
    }

    fn unary(&mut self) -> Result<Formula> {
        match *self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Unary(op) => {
                self.bump();
                let arg = self.unary()?;
                Ok(match op {
                    'X' => Formula::next(arg),
                    'F' => Formula::finally(arg),
                    'G' => Formula::globally(arg),
                    'Y' => Formula::strong_prev(arg),
                    _ => Formula::weak_prev(arg),
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let at = self.offset();
        match self.bump() {
            Tok::True => Ok(Formula::True),
            Tok::False => Ok(Formula::False),
            Tok::Ident(name) => {
                if (self.declared)(&name) {
                    Ok(Formula::Var(name))
                } else {
                    Err(Error::UndeclaredVariable(name))
                }
            }
            Tok::LParen => {
                let inner = self.implication()?;
                if *self.peek() != Tok::RParen {
                    return self.error("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax {
                pos: at,
                message: "unexpected end of input".into(),
            }),
            t => Err(Error::Syntax {
                pos: at,
                message: format!("unexpected token {t:?}"),
            }),
        }
    }
}

/// Parses `text`, requiring every variable to be declared in `declared`.
pub fn parse(text: &str, declared: &Alphabet) -> Result<Formula> {
    parse_with(text, |name| declared.contains(name))
}

/// Parses `text`, checking variables with `is_declared`.
pub fn parse_with(text: &str, is_declared: impl Fn(&str) -> bool) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        declared: &is_declared,
    };
    let f = p.implication()?;
    if *p.peek() != Tok::End {
        return p.error("trailing input");
    }
    Ok(f)
}

//! Text syntax shared by free words, amalgam words and presentations.
//!
//! ```text
//! word := term ("*" term)*
//! term := atom ("^" signed-int)?
//! atom := ident | "1" | "(" word ")"
//! ```
//!
//! Identifiers are resolved by the caller, which maps each one to a run of
//! `(generator, exponent)` letters.

use crate::error::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Ident { name: String, line: usize, column: usize },
    Identity,
    Group(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub atom: Atom,
    pub exponent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

/// A cursor over UTF-8 text that tracks line and column (both 1-based).
pub struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line: 1, column: 1, _src: src }
    }

    pub fn position(&self) -> (usize, usize) {
        (self.line, self.column)
    }

    pub fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError { line: self.line, column: self.column, message: message.into() }
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    /// Skips whitespace and `#` comments running to end of line.
    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    pub fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    /// Consumes the literal keyword `kw` (after whitespace).
    pub fn keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        self.skip_ws();
        let end = self.pos + kw.chars().count();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(kw.chars()) {
            for _ in 0..kw.chars().count() {
                self.bump();
            }
            Ok(())
        } else {
            Err(self.error(format!("expected '{kw}'")))
        }
    }

    pub fn ident(&mut self) -> Result<(String, usize, usize), SyntaxError> {
        self.skip_ws();
        let (line, column) = self.position();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.error("expected identifier")),
        }
        let mut name = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                name.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Ok((name, line, column))
    }

    fn signed_int(&mut self) -> Result<i64, SyntaxError> {
        self.skip_ws();
        let mut negative = false;
        if self.peek() == Some('-') {
            negative = true;
            self.bump();
        } else if self.peek() == Some('+') {
            self.bump();
        }
        let mut digits = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(self.error("expected integer exponent"));
        }
        let value: i64 = digits.parse().map_err(|_| self.error("exponent out of range"))?;
        Ok(if negative { -value } else { value })
    }

    pub fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut terms = vec![self.term()?];
        while self.eat('*') {
            terms.push(self.term()?);
        }
        Ok(Expr { terms })
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        self.skip_ws();
        let atom = match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect(')')?;
                Atom::Group(inner)
            }
            Some('1') => {
                self.bump();
                Atom::Identity
            }
            _ => {
                let (name, line, column) = self.ident()?;
                Atom::Ident { name, line, column }
            }
        };
        let exponent = if self.eat('^') { self.signed_int()? } else { 1 };
        Ok(Term { atom, exponent })
    }
}

/// Parses a complete word; trailing input is an error.
pub fn parse_expr(text: &str) -> Result<Expr, SyntaxError> {
    let mut cur = Cursor::new(text);
    let expr = cur.expr()?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(expr)
}

impl Expr {
    /// Flattens into signed unit letters `(generator, ±1)`.
    ///
    /// `resolve` maps an identifier to its run of `(generator, exponent)` pairs.
    pub fn flatten<F>(&self, resolve: &mut F) -> Result<Vec<(usize, i8)>, SyntaxError>
    where
        F: FnMut(&str, usize, usize) -> Result<Vec<(usize, i64)>, SyntaxError>,
    {
        let mut out = Vec::new();
        for term in &self.terms {
            let base: Vec<(usize, i8)> = match &term.atom {
                Atom::Identity => Vec::new(),
                Atom::Group(inner) => inner.flatten(resolve)?,
                Atom::Ident { name, line, column } => {
                    let mut letters = Vec::new();
                    for (g, e) in resolve(name, *line, *column)? {
                        let s = if e < 0 { -1 } else { 1 };
                        for _ in 0..e.unsigned_abs() {
                            letters.push((g, s));
                        }
                    }
                    letters
                }
            };
            if term.exponent >= 0 {
                for _ in 0..term.exponent {
                    out.extend_from_slice(&base);
                }
            } else {
                let inv: Vec<(usize, i8)> = base.iter().rev().map(|&(g, s)| (g, -s)).collect();
                for _ in 0..term.exponent.unsigned_abs() {
                    out.extend_from_slice(&inv);
                }
            }
        }
        Ok(out)
    }
}

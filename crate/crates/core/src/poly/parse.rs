//! Reader for the germ input language.
//!
//! ```text
//! // Briançon–Speder family
//! ring t,x,y,z;
//! axis t;
//! ideal I = z^5 + t*y^6*z + x*y^7 + x^15;
//! option locus=local;
//! ```
//!
//! Statements end with `;`, `//` starts a comment. Polynomials use `+ - * ^`,
//! parentheses and integer or rational (`a/b`) literals; juxtaposition is an
//! error.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::ideal::Ideal;
use super::polynomial::Polynomial;
use super::ring::{Locus, RingContext};
use super::Coeff;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ParsedInput {
    pub ideal: Ideal,
    pub name: String,
    pub options: BTreeMap<String, String>,
}

impl ParsedInput {
    pub fn ring(&self) -> &Arc<RingContext> {
        self.ideal.ring()
    }
}

#[derive(Clone, Debug, PartialEq)]
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
    Comma,
    Semi,
    Eq,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<(Vec<Token>, (usize, usize))> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                column: c0,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            _ => return Err(syntax(l0, c0, format!("unexpected character `{c}`"))),
        };
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
        i += 1;
        col += 1;
    }
    Ok((out, (line, col)))
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("expected a name")),
        }
    }

    fn ident_list(&mut self) -> Result<Vec<(String, (usize, usize))>> {
        let mut names = Vec::new();
        loop {
            let at = self.here();
            names.push((self.ident()?, at));
            if self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
            } else {
                return Ok(names);
            }
        }
    }

    fn expr(&mut self, ring: &Arc<RingContext>) -> Result<Polynomial> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term(ring)?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term(ring)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term(ring)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self, ring: &Arc<RingContext>) -> Result<Polynomial> {
        let mut acc = self.factor(ring)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor(ring)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = match self.next() {
                        Some(Tok::Int(d)) => d,
                        _ => {
                            self.pos -= 1;
                            return Err(self.error("only integer denominators are allowed"));
                        }
                    };
                    if d.is_zero() {
                        self.pos -= 1;
                        return Err(self.error("division by zero"));
                    }
                    acc = acc.scale(&Coeff::new(1.into(), d));
                }
                Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                    return Err(self.error("implicit multiplication is not allowed; use `*`"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self, ring: &Arc<RingContext>) -> Result<Polynomial> {
        let base = match self.next() {
            Some(Tok::Int(n)) => Polynomial::constant(ring, Coeff::from_integer(n)),
            Some(Tok::Ident(name)) => match ring.index_of(&name) {
                Some(i) => Polynomial::var(ring, i),
                None => return Err(Error::UnknownVariable(name)),
            },
            Some(Tok::LParen) => {
                let e = self.expr(ring)?;
                self.expect(Tok::RParen, "`)`")?;
                e
            }
            _ => {
                self.pos -= 1;
                return Err(self.error("expected a number, a variable or `(`"));
            }
        };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Int(e)) => {
                    let e: u32 = u32::try_from(&e).map_err(|_| {
                        self.pos -= 1;
                        self.error("exponent too large")
                    })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.error("expected a non-negative integer exponent"));
                }
            }
        }
        Ok(base)
    }
}

/// Parse a complete input file.
pub fn parse_input(text: &str) -> Result<ParsedInput> {
    let (toks, end) = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end };
    let mut ring: Option<Arc<RingContext>> = None;
    let mut axis: Option<Vec<String>> = None;
    let mut ideal_src: Option<(String, usize)> = None;
    let mut options = BTreeMap::new();

    // The ideal needs the final locus, so generators are parsed in a second pass.
    while p.peek().is_some() {
        let at = p.here();
        let kw = p.ident()?;
        match kw.as_str() {
            "ring" => {
                if ring.is_some() {
                    return Err(syntax(at.0, at.1, "ring declared twice"));
                }
                let names = p.ident_list()?;
                let plain: Vec<&str> = names.iter().map(|(n, _)| n.as_str()).collect();
                for (n, (l, c)) in &names {
                    if plain.iter().filter(|m| *m == n).count() > 1 {
                        return Err(syntax(*l, *c, format!("variable `{n}` declared twice")));
                    }
                }
                ring = Some(RingContext::new(&plain, Locus::Local)?);
                p.expect(Tok::Semi, "`;`")?;
            }
            "axis" => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| syntax(at.0, at.1, "`axis` before `ring`"))?;
                let names = p.ident_list()?;
                for (n, _) in &names {
                    if r.index_of(n).is_none() {
                        return Err(Error::UnknownVariable(n.clone()));
                    }
                }
                axis.get_or_insert_with(Vec::new).extend(names.into_iter().map(|(n, _)| n));
                p.expect(Tok::Semi, "`;`")?;
            }
            "ideal" => {
                if ring.is_none() {
                    return Err(syntax(at.0, at.1, "`ideal` before `ring`"));
                }
                if ideal_src.is_some() {
                    return Err(syntax(at.0, at.1, "only one ideal per input"));
                }
                let name = p.ident()?;
                p.expect(Tok::Eq, "`=`")?;
                ideal_src = Some((name, p.pos));
                while !matches!(p.peek(), Some(Tok::Semi) | None) {
                    p.pos += 1;
                }
                p.expect(Tok::Semi, "`;`")?;
            }
            "option" => {
                let key = p.ident()?;
                p.expect(Tok::Eq, "`=`")?;
                let vat = p.here();
                let value = match p.next() {
                    Some(Tok::Ident(s)) => s,
                    Some(Tok::Int(n)) => n.to_string(),
                    _ => return Err(syntax(vat.0, vat.1, "expected an option value")),
                };
                if key == "locus" && Locus::parse(&value).is_none() {
                    return Err(syntax(vat.0, vat.1, format!("unknown locus `{value}`")));
                }
                options.insert(key, value);
                p.expect(Tok::Semi, "`;`")?;
            }
            other => {
                return Err(syntax(
                    at.0,
                    at.1,
                    format!("unknown statement `{other}`; expected ring, axis, ideal or option"),
                ))
            }
        }
    }

    let mut ring = ring.ok_or_else(|| syntax(end.0, end.1, "missing `ring` declaration"))?;
    if let Some(locus) = options.get("locus") {
        ring = ring.with_locus(Locus::parse(locus).expect("validated"));
    }
    if let Some(axis) = axis {
        ring = ring.with_axis(&axis)?;
    }
    let (name, start) = ideal_src.ok_or_else(|| syntax(end.0, end.1, "missing `ideal` declaration"))?;
    p.pos = start;
    let mut gens = Vec::new();
    loop {
        let g = p.expr(&ring)?;
        if g.is_zero() {
            return Err(Error::ZeroGenerator { index: gens.len() + 1 });
        }
        gens.push(g);
        match p.peek() {
            Some(Tok::Comma) => p.pos += 1,
            Some(Tok::Semi) => break,
            _ => return Err(p.error("expected `,` or `;`")),
        }
    }
    let ideal = Ideal::new(&ring, gens)?;
    Ok(ParsedInput { ideal, name, options })
}

/// Parse a single polynomial in the given ring.
pub fn parse_polynomial(ring: &Arc<RingContext>, text: &str) -> Result<Polynomial> {
    let (toks, end) = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end };
    let f = p.expr(ring)?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

/// Parse a rational number such as `-3/4`.
pub fn parse_rational(text: &str) -> Result<Coeff> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Input(format!("`{text}` is not a rational number")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Input(format!("`{text}` is not a rational number")))?;
    if d.is_zero() {
        return Err(Error::Input(format!("`{text}` has a zero denominator")));
    }
    Ok(Coeff::new(n, d))
}

/// Convenience for building ideals in code and tests: `ideal_in(&["x","y"], &["x^2", "y^3"])`.
pub fn ideal_in(vars: &[&str], locus: Locus, gens: &[&str]) -> Result<Ideal> {
    let ring = RingContext::new(vars, locus)?;
    let gens = gens
        .iter()
        .map(|g| parse_polynomial(&ring, g))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&ring, gens)
}

//! Tokenizer and polynomial expression parser shared with the presentation-file format.
//!
//! Expressions use `+ - * / ^` and parentheses over identifiers and integers. `pi` is the
//! uniformiser; `a/b` with constant `b` gives rationals, and division by `pi^k` is accepted
//! when it is exact. Identifiers may carry trailing primes (`u'`, `u''`).

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::poly::{Poly, Ring, PI};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Colon,
    Semi,
    Comma,
    Arrow,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", punct(other)),
        }
    }
}

fn punct(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::Star => "*",
        Tok::Slash => "/",
        Tok::Caret => "^",
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBrace => "{",
        Tok::RBrace => "}",
        Tok::LBracket => "[",
        Tok::RBracket => "]",
        Tok::Colon => ":",
        Tok::Semi => ";",
        Tok::Comma => ",",
        Tok::Arrow => "->",
        _ => "?",
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits text into tokens. `#` starts a comment running to the end of the line.
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
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
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: tl,
                column: tc,
            });
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: tl,
                column: tc,
            });
            continue;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            col += 2;
            out.push(Token {
                tok: Tok::Arrow,
                line: tl,
                column: tc,
            });
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ':' => Tok::Colon,
                ';' => Tok::Semi,
                ',' => Tok::Comma,
                other => return Err(syntax(tl, tc, format!("unexpected character `{other}`"))),
            }
        };
        out.push(Token {
            tok,
            line: tl,
            column: tc,
        });
        i += 1;
        col += 1;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Recursive-descent expression parser over a token slice.
pub struct ExprParser<'a> {
    tokens: &'a [Token],
    pub pos: usize,
    ring: Arc<Ring>,
    /// Pairs (x, y) meaning `x^-k` is read as `y^k`.
    inverses: Vec<(usize, usize)>,
}

impl<'a> ExprParser<'a> {
    pub fn new(tokens: &'a [Token], pos: usize, ring: &Arc<Ring>) -> Self {
        Self {
            tokens,
            pos,
            ring: ring.clone(),
            inverses: Vec::new(),
        }
    }

    pub fn with_inverses(mut self, inverses: Vec<(usize, usize)>) -> Self {
        self.inverses = inverses;
        self
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: impl Into<String>) -> Error {
        let t = self.peek();
        syntax(t.line, t.column, msg)
    }

    pub fn parse_expr(&mut self) -> Result<Poly> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Poly> {
        let mut acc = self.parse_unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    let f = self.parse_unary()?;
                    acc = &acc * &f;
                }
                Tok::Slash => {
                    let at = self.peek().clone();
                    self.bump();
                    let mut d = self.parse_unary()?;
                    if let Some((num, den)) = self.invert_monomial(&d) {
                        acc = &acc * &num;
                        d = den;
                    }
                    acc = divide(&acc, &d)
                        .map_err(|m| syntax(at.line, at.column, m))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Splits a monomial divisor into the inverses of its invertible variables and the rest.
    fn invert_monomial(&self, d: &Poly) -> Option<(Poly, Poly)> {
        if d.len() != 1 || self.inverses.is_empty() {
            return None;
        }
        let (e, c) = &d.terms()[0];
        let mut num = Poly::one(&self.ring);
        let mut rest = e.clone();
        for &(x, y) in &self.inverses {
            if e[x] > 0 {
                num = &num * &Poly::var_index(&self.ring, y).pow(e[x]);
                rest[x] = 0;
            }
        }
        Some((num, Poly::from_terms(&self.ring, vec![(rest, c.clone())])))
    }

    fn parse_unary(&mut self) -> Result<Poly> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            let p = self.parse_unary()?;
            return Ok(-&p);
        }
        if self.peek().tok == Tok::Plus {
            self.bump();
            return self.parse_unary();
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Poly> {
        let (base, var) = self.parse_atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let t = self.bump();
        let k = match &t.tok {
            Tok::Int(n) => n
                .to_u32()
                .ok_or_else(|| syntax(t.line, t.column, "exponent too large"))?,
            other => {
                return Err(syntax(
                    t.line,
                    t.column,
                    format!("expected exponent, found {}", other.describe()),
                ))
            }
        };
        if !negative {
            return Ok(base.pow(k));
        }
        let inv = var.and_then(|v| self.inverses.iter().find(|(x, _)| *x == v).map(|p| p.1));
        match inv {
            Some(j) => Ok(Poly::var_index(&self.ring, j).pow(k)),
            None => Err(syntax(t.line, t.column, "negative exponents are not allowed here")),
        }
    }

    fn parse_atom(&mut self) -> Result<(Poly, Option<usize>)> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(n) => Ok((
                Poly::constant(&self.ring, BigRational::from_integer(n.clone())),
                None,
            )),
            Tok::Ident(name) => {
                let i = if name == PI {
                    self.ring.pi_index()
                } else {
                    self.ring.index_of(name).ok_or_else(|| {
                        syntax(t.line, t.column, format!("unknown variable `{name}`"))
                    })?
                };
                Ok((Poly::var_index(&self.ring, i), Some(i)))
            }
            Tok::LParen => {
                let e = self.parse_expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.err_here(format!(
                        "expected `)`, found {}",
                        self.peek().tok.describe()
                    )));
                }
                self.bump();
                Ok((e, None))
            }
            other => Err(syntax(
                t.line,
                t.column,
                format!("expected an expression, found {}", other.describe()),
            )),
        }
    }
}

fn divide(num: &Poly, den: &Poly) -> std::result::Result<Poly, String> {
    if den.len() != 1 {
        return Err(format!("cannot divide by `{den}`"));
    }
    let (e, c) = &den.terms()[0];
    let pi = den.ring().pi_index();
    if e.iter().enumerate().any(|(i, &x)| i != pi && x > 0) {
        return Err(format!("cannot divide by `{den}`"));
    }
    if c.is_zero() {
        return Err("division by zero".into());
    }
    let q = num
        .divide_scalar_pi(e[pi])
        .map_err(|_| format!("`{num}` is not divisible by `{den}`"))?;
    Ok(q.scale(&c.recip()))
}

/// Parses a complete polynomial expression in `ring`.
pub fn parse_poly(ring: &Arc<Ring>, text: &str) -> Result<Poly> {
    let tokens = tokenize(text)?;
    let mut p = ExprParser::new(&tokens, 0, ring);
    let out = p.parse_expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.err_here(format!("unexpected {}", p.peek().tok.describe())));
    }
    Ok(out)
}

/// Parses an expression in which `x^-k` and `1/x^k` are read as `y^k` for each pair (x, y).
pub fn parse_poly_with_inverses(
    ring: &Arc<Ring>,
    text: &str,
    inverses: &[(&str, &str)],
) -> Result<Poly> {
    let mut pairs = Vec::new();
    for (x, y) in inverses {
        let i = ring.index_of(x).ok_or_else(|| Error::UnknownVariable(x.to_string()))?;
        let j = ring.index_of(y).ok_or_else(|| Error::UnknownVariable(y.to_string()))?;
        pairs.push((i, j));
    }
    let tokens = tokenize(text)?;
    let mut p = ExprParser::new(&tokens, 0, ring).with_inverses(pairs);
    let out = p.parse_expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.err_here(format!("unexpected {}", p.peek().tok.describe())));
    }
    Ok(out)
}

/// Parses a comma-separated list of expressions.
pub fn parse_poly_list(ring: &Arc<Ring>, text: &str) -> Result<Vec<Poly>> {
    let tokens = tokenize(text)?;
    let mut p = ExprParser::new(&tokens, 0, ring);
    let mut out = Vec::new();
    if p.peek().tok == Tok::Eof {
        return Ok(out);
    }
    loop {
        out.push(p.parse_expr()?);
        match p.peek().tok {
            Tok::Comma => {
                p.bump();
            }
            Tok::Eof => return Ok(out),
            _ => return Err(p.err_here(format!("unexpected {}", p.peek().tok.describe()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn parses_rationals_powers_and_pi() {
        let r = Ring::grevlex(["x", "y"]).unwrap();
        let p = parse_poly(&r, "x + y + pi^2*x*y - 3/2").unwrap();
        assert_eq!(p.to_string(), "pi^2*x*y + x + y - 3/2");
        let q = parse_poly(&r, "(x - 1)^2 / 2").unwrap();
        assert_eq!(q.leading_coefficient(), Some(&rat(1, 2)));
    }

    #[test]
    fn exact_division_by_pi_is_allowed() {
        let r = Ring::grevlex(["u"]).unwrap();
        assert_eq!(parse_poly(&r, "(pi*u - pi)/pi").unwrap().to_string(), "u - 1");
        assert!(parse_poly(&r, "(u - 1)/pi").is_err());
    }

    #[test]
    fn errors_carry_locations() {
        let r = Ring::grevlex(["u"]).unwrap();
        match parse_poly(&r, "u +\n  q") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn primed_identifiers() {
        let r = Ring::grevlex(["u'", "u''"]).unwrap();
        assert_eq!(parse_poly(&r, "u' * u''").unwrap().to_string(), "u'*u''");
    }
}

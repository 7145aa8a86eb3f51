//! The presentation file format: `group`, `morphism`, `rep` and `connection` blocks.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::dgal::{parse_ring, render, Connection, LineBase, XPoly};
use crate::error::{Error, Result};
use crate::groebner::Limits;
use crate::hopf::{copies_ring, Base, GroupMorphism, HopfPresentation};
use crate::reps::RepMatrix;
use crate::ring::text::{syntax, tokenize, ExprParser, Tok, Token};
use crate::ring::{Poly, Ring, PI};

#[derive(Debug, Clone, Default)]
pub struct PresentationFile {
    pub groups: Vec<Arc<HopfPresentation>>,
    pub morphisms: Vec<(String, GroupMorphism)>,
    pub reps: Vec<(String, RepMatrix)>,
    pub connections: Vec<(String, Connection)>,
}

struct Entry {
    key: String,
    line: usize,
    column: usize,
    /// Token range of the value, the `;` excluded.
    start: usize,
    end: usize,
}

struct Block {
    kind: String,
    name: String,
    line: usize,
    column: usize,
    entries: Vec<Entry>,
}

fn err_at(t: &Token, msg: impl Into<String>) -> Error {
    syntax(t.line, t.column, msg)
}

fn expect(tokens: &[Token], pos: &mut usize, want: &Tok) -> Result<()> {
    let t = &tokens[*pos];
    if &t.tok == want {
        *pos += 1;
        Ok(())
    } else {
        Err(err_at(t, format!("expected {}, found {}", want.describe(), t.tok.describe())))
    }
}

fn ident(tokens: &[Token], pos: &mut usize) -> Result<String> {
    let t = &tokens[*pos];
    match &t.tok {
        Tok::Ident(s) => {
            *pos += 1;
            Ok(s.clone())
        }
        other => Err(err_at(t, format!("expected a name, found {}", other.describe()))),
    }
}

fn blocks(tokens: &[Token]) -> Result<Vec<Block>> {
    let mut out = Vec::new();
    let mut pos = 0;
    while tokens[pos].tok != Tok::Eof {
        let head = tokens[pos].clone();
        let kind = ident(tokens, &mut pos)?;
        if !["group", "morphism", "rep", "connection"].contains(&kind.as_str()) {
            return Err(err_at(&head, format!("unknown block `{kind}`")));
        }
        let name = ident(tokens, &mut pos)?;
        expect(tokens, &mut pos, &Tok::LBrace)?;
        let mut entries: Vec<Entry> = Vec::new();
        while tokens[pos].tok != Tok::RBrace {
            let kt = tokens[pos].clone();
            let key = ident(tokens, &mut pos)?;
            if entries.iter().any(|e| e.key == key) {
                return Err(err_at(&kt, format!("duplicate key `{key}`")));
            }
            expect(tokens, &mut pos, &Tok::Colon)?;
            let start = pos;
            let mut depth = 0i32;
            loop {
                match tokens[pos].tok {
                    Tok::Semi if depth == 0 => break,
                    Tok::LBracket | Tok::LParen => depth += 1,
                    Tok::RBracket | Tok::RParen => depth -= 1,
                    Tok::Eof | Tok::RBrace | Tok::LBrace => {
                        return Err(err_at(&tokens[pos], format!("expected `;` to end `{key}`")))
                    }
                    _ => {}
                }
                pos += 1;
            }
            entries.push(Entry {
                key,
                line: kt.line,
                column: kt.column,
                start,
                end: pos,
            });
            pos += 1;
        }
        pos += 1;
        out.push(Block {
            kind,
            name,
            line: head.line,
            column: head.column,
            entries,
        });
    }
    Ok(out)
}

impl Block {
    fn check_keys(&self, allowed: &[&str], required: &[&str]) -> Result<()> {
        for e in &self.entries {
            if !allowed.contains(&e.key.as_str()) {
                return Err(syntax(e.line, e.column, format!("unknown key `{}` in {} {}", e.key, self.kind, self.name)));
            }
        }
        for r in required {
            if self.get(r).is_none() {
                return Err(syntax(self.line, self.column, format!("{} {} has no `{r}`", self.kind, self.name)));
            }
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }
}

/// The value's tokens glued back together, for names such as `affine-line` or `R_2`.
fn word(tokens: &[Token], e: &Entry) -> String {
    tokens[e.start..e.end]
        .iter()
        .map(|t| match &t.tok {
            Tok::Ident(s) => s.clone(),
            Tok::Int(n) => n.to_string(),
            Tok::Minus => "-".into(),
            other => other.describe(),
        })
        .collect()
}

fn single_name(tokens: &[Token], e: &Entry) -> Result<String> {
    let mut pos = e.start;
    let name = ident(tokens, &mut pos)?;
    if pos != e.end {
        return Err(err_at(&tokens[pos], "expected a single name"));
    }
    Ok(name)
}

fn names(tokens: &[Token], e: &Entry) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut pos = e.start;
    while pos < e.end {
        let t = tokens[pos].clone();
        let n = ident(tokens, &mut pos)?;
        if n == PI || n.contains('\'') {
            return Err(err_at(&t, format!("`{n}` cannot be a variable")));
        }
        out.push(n);
        if pos < e.end {
            expect(tokens, &mut pos, &Tok::Comma)?;
        }
    }
    Ok(out)
}

fn expr(tokens: &[Token], pos: &mut usize, ring: &Arc<Ring>, inverses: &[(usize, usize)]) -> Result<Poly> {
    let mut p = ExprParser::new(tokens, *pos, ring).with_inverses(inverses.to_vec());
    let out = p.parse_expr()?;
    *pos = p.pos;
    Ok(out)
}

fn exprs(tokens: &[Token], e: &Entry, ring: &Arc<Ring>) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    let mut pos = e.start;
    while pos < e.end {
        out.push(expr(tokens, &mut pos, ring, &[])?);
        if pos < e.end {
            expect(tokens, &mut pos, &Tok::Comma)?;
        }
    }
    Ok(out)
}

/// `x -> expr, ...` with one image for each name in `order`.
fn images(tokens: &[Token], e: &Entry, order: &[String], ring: &Arc<Ring>) -> Result<Vec<Poly>> {
    let mut got: Vec<Option<Poly>> = vec![None; order.len()];
    let mut pos = e.start;
    while pos < e.end {
        let t = tokens[pos].clone();
        let v = ident(tokens, &mut pos)?;
        let i = order
            .iter()
            .position(|x| *x == v)
            .ok_or_else(|| err_at(&t, format!("`{v}` is not a generator here")))?;
        if got[i].is_some() {
            return Err(err_at(&t, format!("`{v}` has two images")));
        }
        expect(tokens, &mut pos, &Tok::Arrow)?;
        got[i] = Some(expr(tokens, &mut pos, ring, &[])?);
        if pos < e.end {
            expect(tokens, &mut pos, &Tok::Comma)?;
        }
    }
    got.into_iter()
        .zip(order)
        .map(|(p, v)| p.ok_or_else(|| syntax(e.line, e.column, format!("`{}` has no image for `{v}`", e.key))))
        .collect()
}

fn matrix<T>(tokens: &[Token], e: &Entry, mut cell: impl FnMut(&mut usize) -> Result<T>) -> Result<Vec<Vec<T>>> {
    let mut pos = e.start;
    let mut rows = Vec::new();
    expect(tokens, &mut pos, &Tok::LBracket)?;
    loop {
        expect(tokens, &mut pos, &Tok::LBracket)?;
        let mut row = Vec::new();
        loop {
            row.push(cell(&mut pos)?);
            if tokens[pos].tok == Tok::Comma {
                pos += 1;
            } else {
                break;
            }
        }
        expect(tokens, &mut pos, &Tok::RBracket)?;
        rows.push(row);
        if tokens[pos].tok == Tok::Comma {
            pos += 1;
        } else {
            break;
        }
    }
    expect(tokens, &mut pos, &Tok::RBracket)?;
    if pos != e.end {
        return Err(err_at(&tokens[pos], "unexpected text after the matrix"));
    }
    Ok(rows)
}

fn parse_base(text: &str, e: &Entry) -> Result<Base> {
    match text {
        "dvr" | "R" => Ok(Base::Dvr),
        "k" => Ok(Base::Truncated(0)),
        _ => text
            .strip_prefix("R_")
            .and_then(|n| n.parse().ok())
            .map(Base::Truncated)
            .ok_or_else(|| syntax(e.line, e.column, format!("unknown base `{text}`"))),
    }
}

fn group(tokens: &[Token], b: &Block) -> Result<HopfPresentation> {
    b.check_keys(&["base", "vars", "relations", "comul", "counit", "antipode"], &["vars"])?;
    let vars = names(tokens, b.get("vars").expect("required"))?;
    let base = match b.get("base") {
        Some(e) => parse_base(&word(tokens, e), e)?,
        None => Base::Dvr,
    };
    let ring = Ring::grevlex(vars.iter().map(|s| s.as_str()))?;
    let rels = match b.get("relations") {
        Some(e) => exprs(tokens, e, &ring)?,
        None => Vec::new(),
    };
    let map = |key: &str, target: &Arc<Ring>| -> Result<Vec<Poly>> {
        match b.get(key) {
            Some(e) => images(tokens, e, &vars, target),
            None if vars.is_empty() => Ok(Vec::new()),
            None => Err(syntax(b.line, b.column, format!("group {} has no `{key}`", b.name))),
        }
    };
    let doubled = copies_ring(ring.vars(), 2)?;
    HopfPresentation::new(
        &b.name,
        &ring,
        rels,
        map("comul", &doubled)?,
        map("counit", &Ring::base())?,
        map("antipode", &ring)?,
        base,
    )
}

impl PresentationFile {
    pub fn parse(text: &str, lim: &Limits) -> Result<Self> {
        let tokens = tokenize(text)?;
        let blocks = blocks(&tokens)?;
        let mut seen = HashSet::new();
        for b in &blocks {
            if !seen.insert(b.name.clone()) {
                return Err(syntax(b.line, b.column, format!("`{}` is defined twice", b.name)));
            }
        }
        let mut file = PresentationFile::default();
        for b in blocks.iter().filter(|b| b.kind == "group") {
            file.groups.push(Arc::new(group(&tokens, b)?));
        }
        for b in &blocks {
            match b.kind.as_str() {
                "morphism" => {
                    b.check_keys(&["source", "target", "pullback"], &["source", "target", "pullback"])?;
                    let src = file.group(&single_name(&tokens, b.get("source").unwrap())?)?.clone();
                    let tgt = file.group(&single_name(&tokens, b.get("target").unwrap())?)?.clone();
                    let imgs = images(&tokens, b.get("pullback").unwrap(), tgt.vars(), src.ring())?;
                    file.morphisms.push((b.name.clone(), GroupMorphism::new(&src, &tgt, imgs)?));
                }
                "rep" => {
                    b.check_keys(&["group", "matrix", "det_inverse"], &["group", "matrix"])?;
                    let g = file.group(&single_name(&tokens, b.get("group").unwrap())?)?.clone();
                    let entries = matrix(&tokens, b.get("matrix").unwrap(), |pos| expr(&tokens, pos, g.ring(), &[]))?;
                    let rep = match b.get("det_inverse") {
                        Some(e) => {
                            let mut pos = e.start;
                            let inv = expr(&tokens, &mut pos, g.ring(), &[])?;
                            if pos != e.end {
                                return Err(err_at(&tokens[pos], "expected a single expression"));
                            }
                            RepMatrix::new(&g, entries, inv)?
                        }
                        None => RepMatrix::with_inverse(&g, entries, lim)?,
                    };
                    file.reps.push((b.name.clone(), rep));
                }
                "connection" => {
                    b.check_keys(&["base", "matrix"], &["base", "matrix"])?;
                    let be = b.get("base").unwrap();
                    let base: LineBase = word(&tokens, be)
                        .parse()
                        .map_err(|e: Error| syntax(be.line, be.column, e.to_string()))?;
                    let ring = parse_ring();
                    let inv = [(ring.index_of("x").unwrap(), ring.index_of("x_inv").unwrap())];
                    let m = matrix(&tokens, b.get("matrix").unwrap(), |pos| {
                        expr(&tokens, pos, ring, &inv).map(|p| XPoly::from_parsed(&p))
                    })?;
                    file.connections.push((b.name.clone(), Connection::new(base, m)?));
                }
                _ => {}
            }
        }
        Ok(file)
    }

    pub fn group(&self, name: &str) -> Result<&Arc<HopfPresentation>> {
        self.groups
            .iter()
            .find(|g| g.name() == name)
            .ok_or_else(|| Error::UndefinedName(name.to_string()))
    }

    fn named<'a, T>(items: &'a [(String, T)], name: &str) -> Result<&'a T> {
        items
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
            .ok_or_else(|| Error::UndefinedName(name.to_string()))
    }

    pub fn morphism(&self, name: &str) -> Result<&GroupMorphism> {
        Self::named(&self.morphisms, name)
    }

    pub fn rep(&self, name: &str) -> Result<&RepMatrix> {
        Self::named(&self.reps, name)
    }

    pub fn connection(&self, name: &str) -> Result<&Connection> {
        Self::named(&self.connections, name)
    }
}

pub fn morphism_block(name: &str, m: &GroupMorphism) -> String {
    format!(
        "morphism {name} {{\n  source: {};\n  target: {};\n  pullback: {};\n}}",
        m.source().name(),
        m.target().name(),
        m.describe()
    )
}

pub fn rep_block(name: &str, r: &RepMatrix) -> String {
    format!(
        "rep {name} {{\n  group: {};\n  matrix: {r};\n  det_inverse: {};\n}}",
        r.group().name(),
        r.det_inverse()
    )
}

pub fn connection_block(name: &str, c: &Connection) -> String {
    format!(
        "connection {name} {{\n  base: {};\n  matrix: {};\n}}",
        c.base(),
        render(c.matrix())
    )
}

impl fmt::Display for PresentationFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.groups.iter().map(|g| g.to_string()).collect();
        parts.extend(self.morphisms.iter().map(|(n, m)| morphism_block(n, m)));
        parts.extend(self.reps.iter().map(|(n, r)| rep_block(n, r)));
        parts.extend(self.connections.iter().map(|(n, c)| connection_block(n, c)));
        writeln!(f, "{}", parts.join("\n\n"))
    }
}

//! Job files and the command runner behind the `superquiver` binary.
//!
//! A job file holds one quiver with its super-dimensions and parities,
//! named polynomials, and a list of commands:
//!
//! ```text
//! # Kronecker quiver
//! vertex a sdim 2|0 parity 0
//! vertex b sdim 2|0 parity 0
//! edge e1 a -> b
//! edge e2 a -> b
//! poly detE1 = det(e1)
//! check weight a=-1 b=+1 poly detE1
//! oracle degree e1=1 e2=1 compare maxlen 2
//! ```

use std::fmt;
use std::path::PathBuf;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::lie::{check_gl_invariant, check_weight, Verdict, Weight};
use crate::oracle::{
    component_reports, hom_dim_doubled, hom_ext_dims, ComponentReport, ConcreteSuperRep,
    OracleOptions, ReportVerdict, DEFAULT_CAP,
};
use crate::quiver::{
    classify_vertex, enumerate_closed_paths, kirchhoff_ok, normalize_at, ringel_form, MultiDegree,
    Parity, ParityVector, Path, Quiver, SuperDim, SuperDimVector,
};
use crate::ring::text::{format_fraction, format_polynomial, parse_polynomial};
use crate::ring::{EvenFraction, Polynomial, Rational};
use crate::semi::{
    detlike_semi_invariant, linearize_and_restitute_check, polarize, strace_invariant, DetBlock,
    DetLikeSpec,
};
use crate::space::RepSpace;
use crate::supermatrix::{SuperFormat, SuperMatrix};

/// A parse error with a 1-based location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for Diagnostic {}

type Parsed<T> = std::result::Result<T, Diagnostic>;

#[derive(Debug, Clone, PartialEq)]
pub enum PolyDef {
    Text(Polynomial),
    Str(Path),
    Det(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Degrees {
    Exact(MultiDegree),
    UpTo(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub enum BerTarget {
    Edge(usize),
    Literal { dim: SuperDim, rows: Vec<Vec<Rational>> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Paths { max_len: usize },
    Ringel,
    Classify,
    Normalize { vertex: usize },
    Straces { max_len: usize },
    DetLike { spec: DetLikeSpec },
    Polarize { poly: String, refinement: Option<Vec<u32>> },
    CheckInvariant { poly: String },
    CheckWeight { weight: Weight, poly: String },
    Oracle { degrees: Degrees, compare: Option<usize> },
    HomExt { a: String, b: String },
    Berezinian { target: BerTarget },
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobFile {
    pub space: RepSpace,
    pub polys: Vec<(String, PolyDef)>,
    pub commands: Vec<Command>,
}

const SPECIAL: &str = "()[]=:;,*+";

/// Cursor over one line.
struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Cursor { src, pos: 0, line }
    }

    fn diag_at(&self, pos: usize, msg: impl Into<String>) -> Diagnostic {
        Diagnostic {
            line: self.line,
            col: self.src[..pos].chars().count() + 1,
            message: msg.into(),
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Parsed<T> {
        Err(self.diag_at(self.pos, msg))
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Parsed<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    /// A run of characters that are neither whitespace nor punctuation;
    /// returns the word and its start.
    fn word(&mut self) -> Parsed<(&'a str, usize)> {
        self.skip_ws();
        let start = self.pos;
        let len: usize = self.src[start..]
            .chars()
            .take_while(|c| !c.is_whitespace() && !SPECIAL.contains(*c))
            .map(char::len_utf8)
            .sum();
        if len == 0 {
            return self.err("expected a word");
        }
        self.pos += len;
        Ok((&self.src[start..self.pos], start))
    }

    fn keyword(&mut self, kw: &str) -> Parsed<()> {
        let save = self.pos;
        match self.word() {
            Ok((w, _)) if w == kw => Ok(()),
            _ => {
                self.pos = save;
                self.skip_ws();
                self.err(format!("expected `{kw}`"))
            }
        }
    }

    fn try_keyword(&mut self, kw: &str) -> bool {
        let save = self.pos;
        match self.word() {
            Ok((w, _)) if w == kw => true,
            _ => {
                self.pos = save;
                false
            }
        }
    }

    fn number<T: std::str::FromStr>(&mut self) -> Parsed<T> {
        let (w, at) = self.word()?;
        w.parse()
            .map_err(|_| self.diag_at(at, format!("expected a nonnegative integer, got `{w}`")))
    }

    fn signed(&mut self) -> Parsed<i64> {
        self.skip_ws();
        let at = self.pos;
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let v: i64 = self.number().map_err(|_| self.diag_at(at, "expected an integer"))?;
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Parsed<Rational> {
        self.skip_ws();
        let at = self.pos;
        let neg = self.eat('-');
        let (w, _) = self.word()?;
        let parse = |t: &str| t.parse::<num_bigint::BigInt>().ok();
        let q = match w.split_once('/') {
            Some((n, d)) => match (parse(n), parse(d)) {
                (Some(n), Some(d)) if !d.is_zero() => Rational::new(n, d),
                _ => return Err(self.diag_at(at, format!("bad rational `{w}`"))),
            },
            None => match parse(w) {
                Some(n) => Rational::from_integer(n),
                None => return Err(self.diag_at(at, format!("bad rational `{w}`"))),
            },
        };
        Ok(if neg { -q } else { q })
    }

    fn rest(&mut self) -> (&'a str, usize) {
        self.skip_ws();
        let at = self.pos;
        self.pos = self.src.len();
        (&self.src[at..], at)
    }

    fn finish(&mut self) -> Parsed<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(s, _)| s)
}

struct QuiverBlock {
    vertices: Vec<(String, SuperDim, Parity)>,
    edges: Vec<(String, String, String)>,
}

impl QuiverBlock {
    fn build(self) -> std::result::Result<RepSpace, Error> {
        let alpha = SuperDimVector(self.vertices.iter().map(|v| v.1).collect());
        let parity = ParityVector(self.vertices.iter().map(|v| v.2).collect());
        let q = Quiver::new(self.vertices.into_iter().map(|v| v.0), self.edges)?;
        RepSpace::new(q, alpha, parity)
    }
}

/// Parses a job file.
pub fn parse_job(text: &str) -> Parsed<JobFile> {
    let mut block = QuiverBlock {
        vertices: Vec::new(),
        edges: Vec::new(),
    };
    let mut space: Option<RepSpace> = None;
    let mut polys: Vec<(String, PolyDef)> = Vec::new();
    let mut commands = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        last_line = i + 1;
        let mut cur = Cursor::new(strip_comment(raw), i + 1);
        if cur.at_end() {
            continue;
        }
        let save = cur.pos;
        let (head, at) = cur.word()?;
        match head {
            "vertex" | "edge" => {
                if space.is_some() {
                    return Err(cur.diag_at(at, "quiver lines must precede polynomials and commands"));
                }
                if head == "vertex" {
                    parse_vertex(&mut cur, &mut block)?;
                } else {
                    parse_edge(&mut cur, &mut block)?;
                }
            }
            _ => {
                if space.is_none() {
                    let b = std::mem::replace(
                        &mut block,
                        QuiverBlock {
                            vertices: Vec::new(),
                            edges: Vec::new(),
                        },
                    );
                    space = Some(b.build().map_err(|e| cur.diag_at(save, e.to_string()))?);
                }
                let sp = space.as_ref().unwrap();
                if head == "poly" {
                    let (name, def) = parse_poly(&mut cur, sp, &polys)?;
                    polys.push((name, def));
                } else {
                    cur.pos = save;
                    commands.push(parse_command(&mut cur, sp, &polys)?);
                }
            }
        }
        cur.finish()?;
    }
    let space = match space {
        Some(s) => s,
        None => block.build().map_err(|e| Diagnostic {
            line: last_line.max(1),
            col: 1,
            message: e.to_string(),
        })?,
    };
    Ok(JobFile {
        space,
        polys,
        commands,
    })
}

fn parse_vertex(cur: &mut Cursor, block: &mut QuiverBlock) -> Parsed<()> {
    let (id, at) = cur.word()?;
    if block.vertices.iter().any(|v| v.0 == id) {
        return Err(cur.diag_at(at, format!("duplicate vertex `{id}`")));
    }
    cur.keyword("sdim")?;
    let (d, dat) = cur.word()?;
    let dim: SuperDim = d.parse().map_err(|e: Error| cur.diag_at(dat, e.to_string()))?;
    let mut parity = Parity::Even;
    if cur.try_keyword("parity") {
        cur.skip_ws();
        let pat = cur.pos;
        let bit: u8 = cur.number().map_err(|_| cur.diag_at(pat, "parity must be 0 or 1"))?;
        parity = Parity::from_bit(bit).ok_or_else(|| cur.diag_at(pat, "parity must be 0 or 1"))?;
    }
    block.vertices.push((id.to_string(), dim, parity));
    Ok(())
}

fn parse_edge(cur: &mut Cursor, block: &mut QuiverBlock) -> Parsed<()> {
    let (id, at) = cur.word()?;
    if block.edges.iter().any(|e| e.0 == id) {
        return Err(cur.diag_at(at, format!("duplicate edge `{id}`")));
    }
    let endpoint = |cur: &mut Cursor| -> Parsed<String> {
        let (v, vat) = cur.word()?;
        if !block.vertices.iter().any(|x| x.0 == v) {
            return Err(cur.diag_at(vat, format!("unknown vertex `{v}`")));
        }
        Ok(v.to_string())
    };
    let tail = endpoint(cur)?;
    cur.keyword("->")?;
    let head = endpoint(cur)?;
    block.edges.push((id.to_string(), tail, head));
    Ok(())
}

fn edge_ref(cur: &mut Cursor, q: &Quiver) -> Parsed<usize> {
    let (w, at) = cur.word()?;
    q.edge_by_id(w).map_err(|_| cur.diag_at(at, format!("unknown edge `{w}`")))
}

fn vertex_ref(cur: &mut Cursor, q: &Quiver) -> Parsed<usize> {
    let (w, at) = cur.word()?;
    q.vertex(w).map_err(|_| cur.diag_at(at, format!("unknown vertex `{w}`")))
}

/// `( e1 e2 … )`
fn path_ref(cur: &mut Cursor, q: &Quiver) -> Parsed<Path> {
    cur.skip_ws();
    let at = cur.pos;
    cur.expect('(')?;
    let mut edges = Vec::new();
    while !cur.eat(')') {
        if cur.at_end() {
            return cur.err("unclosed `(`");
        }
        edges.push(edge_ref(cur, q)?);
    }
    if edges.is_empty() {
        return Err(cur.diag_at(at, "empty path"));
    }
    Path::new(q, edges).map_err(|e| cur.diag_at(at, e.to_string()))
}

fn poly_ref(cur: &mut Cursor, polys: &[(String, PolyDef)]) -> Parsed<String> {
    let (w, at) = cur.word()?;
    if polys.iter().any(|(n, _)| n == w) {
        Ok(w.to_string())
    } else {
        Err(cur.diag_at(at, format!("unknown polynomial `{w}`")))
    }
}

fn parse_poly(cur: &mut Cursor, space: &RepSpace, polys: &[(String, PolyDef)]) -> Parsed<(String, PolyDef)> {
    let (name, at) = cur.word()?;
    if polys.iter().any(|(n, _)| n == name) {
        return Err(cur.diag_at(at, format!("duplicate polynomial `{name}`")));
    }
    cur.expect('=')?;
    let q = space.quiver();
    let save = cur.pos;
    if cur.try_keyword("str") && cur.peek() == Some('(') {
        let p = path_ref(cur, q)?;
        if !p.is_closed() {
            return Err(cur.diag_at(save, "supertrace needs a closed path"));
        }
        return Ok((name.to_string(), PolyDef::Str(p)));
    }
    cur.pos = save;
    if cur.try_keyword("det") && cur.peek() == Some('(') {
        cur.expect('(')?;
        let e = edge_ref(cur, q)?;
        cur.expect(')')?;
        return Ok((name.to_string(), PolyDef::Det(e)));
    }
    cur.pos = save;
    let (text, at) = cur.rest();
    let p = parse_polynomial(text, space).map_err(|e| shift_diag(cur, at, e))?;
    Ok((name.to_string(), PolyDef::Text(p)))
}

/// Moves a `column N: …` message from the polynomial parser to line
/// coordinates.
fn shift_diag(cur: &Cursor, at: usize, e: Error) -> Diagnostic {
    let msg = e.to_string();
    let inner = msg.split_once("column ").and_then(|(_, rest)| {
        let (n, m) = rest.split_once(": ")?;
        Some((n.parse::<usize>().ok()?, m.to_string()))
    });
    let start_col = cur.src[..at].chars().count() + 1;
    match inner {
        Some((n, m)) => Diagnostic {
            line: cur.line,
            col: start_col + n - 1,
            message: m,
        },
        None => Diagnostic {
            line: cur.line,
            col: start_col,
            message: msg,
        },
    }
}

fn parse_command(cur: &mut Cursor, space: &RepSpace, polys: &[(String, PolyDef)]) -> Parsed<Command> {
    let q = space.quiver();
    let (head, at) = cur.word()?;
    let cmd = match head {
        "paths" => {
            cur.keyword("maxlen")?;
            Command::Paths { max_len: cur.number()? }
        }
        "ringel" => Command::Ringel,
        "classify" => Command::Classify,
        "normalize" => Command::Normalize {
            vertex: vertex_ref(cur, q)?,
        },
        "straces" => {
            cur.keyword("maxlen")?;
            Command::Straces { max_len: cur.number()? }
        }
        "detlike" => Command::DetLike {
            spec: parse_detlike(cur, q)?,
        },
        "polarize" => {
            let poly = poly_ref(cur, polys)?;
            let refinement = if cur.try_keyword("s") {
                let mut s = Vec::new();
                while !cur.at_end() {
                    s.push(cur.number()?);
                }
                Some(s)
            } else {
                None
            };
            Command::Polarize { poly, refinement }
        }
        "check" => {
            let (kind, kat) = cur.word()?;
            match kind {
                "invariant" => Command::CheckInvariant {
                    poly: poly_ref(cur, polys)?,
                },
                "weight" => {
                    let mut w = Weight::zero(q);
                    while !cur.try_keyword("poly") {
                        if cur.at_end() {
                            return cur.err("expected `poly <name>`");
                        }
                        let a = vertex_ref(cur, q)?;
                        cur.expect('=')?;
                        w.0[a] = cur.signed()?;
                    }
                    Command::CheckWeight {
                        weight: w,
                        poly: poly_ref(cur, polys)?,
                    }
                }
                _ => return Err(cur.diag_at(kat, "expected `invariant` or `weight`")),
            }
        }
        "oracle" => {
            let (mode, mat) = cur.word()?;
            let degrees = match mode {
                "degree" => {
                    let mut n = MultiDegree::zero(q.num_edges());
                    let save = cur.pos;
                    if !(matches!(cur.word(), Ok(("0", _))) && cur.peek() != Some('=')) {
                        cur.pos = save;
                        let mut any = false;
                        loop {
                            let save = cur.pos;
                            if cur.at_end() || cur.try_keyword("compare") {
                                cur.pos = save;
                                break;
                            }
                            let e = edge_ref(cur, q)?;
                            cur.expect('=')?;
                            n.0[e] = cur.number()?;
                            any = true;
                        }
                        if !any {
                            return cur.err("expected `<edge>=<k>` entries or `0`");
                        }
                    }
                    Degrees::Exact(n)
                }
                "upto" => Degrees::UpTo(cur.number()?),
                _ => return Err(cur.diag_at(mat, "expected `degree` or `upto`")),
            };
            let compare = if cur.try_keyword("compare") {
                cur.keyword("maxlen")?;
                Some(cur.number()?)
            } else {
                None
            };
            Command::Oracle { degrees, compare }
        }
        "homext" => {
            let (a, _) = cur.word()?;
            let (b, _) = cur.word()?;
            Command::HomExt {
                a: a.to_string(),
                b: b.to_string(),
            }
        }
        "berezinian" => {
            let (w, wat) = cur.word()?;
            let target = if w.contains('|') {
                let dim: SuperDim = w.parse().map_err(|e: Error| cur.diag_at(wat, e.to_string()))?;
                let rows = parse_matrix(cur)?;
                let n = dim.total() as usize;
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(cur.diag_at(wat, format!("matrix must be {n}×{n}")));
                }
                BerTarget::Literal { dim, rows }
            } else {
                let e = q
                    .edge_by_id(w)
                    .map_err(|_| cur.diag_at(wat, format!("unknown edge `{w}`")))?;
                BerTarget::Edge(e)
            };
            Command::Berezinian { target }
        }
        _ => return Err(cur.diag_at(at, format!("unknown command `{head}`"))),
    };
    Ok(cmd)
}

/// `[ r11 r12 ; r21 r22 ]`
fn parse_matrix(cur: &mut Cursor) -> Parsed<Vec<Vec<Rational>>> {
    cur.expect('[')?;
    let mut rows = vec![Vec::new()];
    loop {
        match cur.peek() {
            Some(']') => {
                cur.pos += 1;
                break;
            }
            Some(';') => {
                cur.pos += 1;
                rows.push(Vec::new());
            }
            None => return cur.err("unclosed `[`"),
            _ => {
                let x = cur.rational()?;
                rows.last_mut().unwrap().push(x);
            }
        }
    }
    if rows.len() == 1 && rows[0].is_empty() {
        rows.clear();
    }
    Ok(rows)
}

/// `sinks b:1 … sources a:1 … block b[1] a[1] = (e1) + 2 * (e2) …`
fn parse_detlike(cur: &mut Cursor, q: &Quiver) -> Parsed<DetLikeSpec> {
    let list = |cur: &mut Cursor, stop: &str| -> Parsed<Vec<(usize, u32)>> {
        let mut out = Vec::new();
        loop {
            let save = cur.pos;
            if cur.at_end() || cur.try_keyword(stop) {
                cur.pos = save;
                return Ok(out);
            }
            let v = vertex_ref(cur, q)?;
            cur.expect(':')?;
            out.push((v, cur.number()?));
        }
    };
    cur.keyword("sinks")?;
    let sinks = list(cur, "sources")?;
    cur.keyword("sources")?;
    let sources = list(cur, "block")?;
    let mut blocks = Vec::new();
    while cur.try_keyword("block") {
        let slot = |cur: &mut Cursor, within: &[(usize, u32)], what: &str| -> Parsed<(usize, u32)> {
            let (w, at) = cur.word()?;
            let idx = within
                .iter()
                .position(|&(v, _)| q.vertex_id(v) == w)
                .ok_or_else(|| cur.diag_at(at, format!("`{w}` is not a listed {what}")))?;
            cur.expect('[')?;
            let copy = cur.number()?;
            cur.expect(']')?;
            Ok((idx, copy))
        };
        let sink = slot(cur, &sinks, "sink")?;
        let source = slot(cur, &sources, "source")?;
        cur.expect('=')?;
        let mut terms = Vec::new();
        let mut neg = cur.eat('-');
        loop {
            let coef = if cur.peek() == Some('(') {
                Rational::one()
            } else {
                let c = cur.rational()?;
                cur.expect('*')?;
                c
            };
            let coef = if neg { -coef } else { coef };
            terms.push((Polynomial::constant(coef), path_ref(cur, q)?));
            if cur.eat('+') {
                neg = false;
            } else if cur.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        blocks.push(DetBlock { sink, source, terms });
    }
    Ok(DetLikeSpec {
        sinks,
        sources,
        blocks,
    })
}

/// A concrete super-representation file: `sdim <vertex> <p|q>` lines and
/// `map <edge> = [ … ; … ]` lines. Unlisted vertices have dimension `0|0`
/// and unlisted maps are zero.
pub fn parse_rep(text: &str, q: &Quiver) -> Parsed<ConcreteSuperRep> {
    let mut alpha = SuperDimVector::zero(q);
    let mut maps: Vec<Option<(usize, Vec<Vec<Rational>>)>> = vec![None; q.num_edges()];
    for (i, raw) in text.lines().enumerate() {
        let mut cur = Cursor::new(strip_comment(raw), i + 1);
        if cur.at_end() {
            continue;
        }
        let (head, at) = cur.word()?;
        match head {
            "sdim" => {
                let a = vertex_ref(&mut cur, q)?;
                let (d, dat) = cur.word()?;
                alpha.0[a] = d.parse().map_err(|e: Error| cur.diag_at(dat, e.to_string()))?;
            }
            "map" => {
                let e = edge_ref(&mut cur, q)?;
                cur.expect('=')?;
                maps[e] = Some((i + 1, parse_matrix(&mut cur)?));
            }
            _ => return Err(cur.diag_at(at, format!("expected `sdim` or `map`, got `{head}`"))),
        }
        cur.finish()?;
    }
    let mut full = Vec::with_capacity(q.num_edges());
    for (e, m) in maps.into_iter().enumerate() {
        let edge = q.edge(e);
        let (r, c) = (alpha.at(edge.head).total() as usize, alpha.at(edge.tail).total() as usize);
        match m {
            None => full.push(vec![vec![Rational::zero(); c]; r]),
            Some((line, rows)) => {
                let rows = if r == 0 { Vec::new() } else { rows };
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(Diagnostic {
                        line,
                        col: 1,
                        message: format!("map of `{}` must be {r}×{c}", edge.id),
                    });
                }
                full.push(rows);
            }
        }
    }
    ConcreteSuperRep::new(q, alpha, full).map_err(|e| Diagnostic {
        line: 1,
        col: 1,
        message: e.to_string(),
    })
}

fn fmt_rational(c: &Rational) -> String {
    c.to_string()
}

fn fmt_path(p: &Path, q: &Quiver) -> String {
    p.display(q).to_string()
}

impl JobFile {
    fn poly(&self, name: &str) -> &PolyDef {
        &self.polys.iter().find(|(n, _)| n == name).expect("resolved at parse time").1
    }

    fn command_text(&self, c: &Command) -> String {
        let q = self.space.quiver();
        match c {
            Command::Paths { max_len } => format!("paths maxlen {max_len}"),
            Command::Ringel => "ringel".into(),
            Command::Classify => "classify".into(),
            Command::Normalize { vertex } => format!("normalize {}", q.vertex_id(*vertex)),
            Command::Straces { max_len } => format!("straces maxlen {max_len}"),
            Command::DetLike { spec } => {
                let list = |l: &[(usize, u32)]| {
                    l.iter()
                        .map(|&(v, m)| format!(" {}:{m}", q.vertex_id(v)))
                        .collect::<String>()
                };
                let mut s = format!("detlike sinks{} sources{}", list(&spec.sinks), list(&spec.sources));
                for b in &spec.blocks {
                    s += &format!(
                        " block {}[{}] {}[{}] =",
                        q.vertex_id(spec.sinks[b.sink.0].0),
                        b.sink.1,
                        q.vertex_id(spec.sources[b.source.0].0),
                        b.source.1
                    );
                    for (i, (coef, p)) in b.terms.iter().enumerate() {
                        let c = coef.constant_term();
                        let sign = match (i, c.is_negative()) {
                            (0, false) => " ",
                            (0, true) => " -",
                            (_, false) => " + ",
                            (_, true) => " - ",
                        };
                        let mag = c.abs();
                        let mag = if mag.is_one() { String::new() } else { format!("{} * ", fmt_rational(&mag)) };
                        s += &format!("{sign}{mag}{}", fmt_path(p, q));
                    }
                }
                s
            }
            Command::Polarize { poly, refinement } => match refinement {
                None => format!("polarize {poly}"),
                Some(s) => format!(
                    "polarize {poly} s{}",
                    s.iter().map(|k| format!(" {k}")).collect::<String>()
                ),
            },
            Command::CheckInvariant { poly } => format!("check invariant {poly}"),
            Command::CheckWeight { weight, poly } => {
                format!("check weight {} poly {poly}", weight.display(q))
            }
            Command::Oracle { degrees, compare } => {
                let mut s = match degrees {
                    Degrees::Exact(n) if n.is_zero() => "oracle degree 0".to_string(),
                    Degrees::Exact(n) => format!(
                        "oracle degree{}",
                        n.0.iter()
                            .enumerate()
                            .filter(|(_, &k)| k > 0)
                            .map(|(e, k)| format!(" {}={k}", q.edge(e).id))
                            .collect::<String>()
                    ),
                    Degrees::UpTo(k) => format!("oracle upto {k}"),
                };
                if let Some(k) = compare {
                    s += &format!(" compare maxlen {k}");
                }
                s
            }
            Command::HomExt { a, b } => format!("homext {a} {b}"),
            Command::Berezinian { target } => match target {
                BerTarget::Edge(e) => format!("berezinian {}", q.edge(*e).id),
                BerTarget::Literal { dim, rows } => format!(
                    "berezinian {dim} [{}]",
                    rows.iter()
                        .map(|r| r.iter().map(fmt_rational).collect::<Vec<_>>().join(" "))
                        .collect::<Vec<_>>()
                        .join("; ")
                ),
            },
        }
    }
}

/// Canonical text form; parsing it yields an identical job.
impl fmt::Display for JobFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.space.quiver();
        for (a, v) in q.vertices().iter().enumerate() {
            writeln!(
                f,
                "vertex {v} sdim {} parity {}",
                self.space.sdim(a),
                self.space.parity().at(a)
            )?;
        }
        for e in q.edges() {
            writeln!(f, "edge {} {} -> {}", e.id, q.vertex_id(e.tail), q.vertex_id(e.head))?;
        }
        for (name, def) in &self.polys {
            let body = match def {
                PolyDef::Text(p) => format_polynomial(p, &self.space),
                PolyDef::Str(p) => format!("str{}", fmt_path(p, q)),
                PolyDef::Det(e) => format!("det({})", q.edge(*e).id),
            };
            writeln!(f, "poly {name} = {body}")?;
        }
        for c in &self.commands {
            writeln!(f, "{}", self.command_text(c))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub strict: bool,
    pub cap: usize,
    /// Directory against which representation files are resolved.
    pub base_dir: PathBuf,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            strict: false,
            cap: DEFAULT_CAP,
            base_dir: PathBuf::from("."),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOutcome {
    pub lines: Vec<String>,
    pub reports: Vec<ComponentReport>,
    pub failed: bool,
    pub capped: bool,
    pub usage_error: bool,
}

impl RunOutcome {
    /// 0 all PASS, 1 any FAIL, 2 usage error, 3 cap hit under `--strict`.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.usage_error {
            2
        } else if self.failed {
            1
        } else if strict && self.capped {
            3
        } else {
            0
        }
    }

    fn say(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn verdict(&mut self, label: &str, ok: bool) {
        self.failed |= !ok;
        self.say(format!("{label}: {}", if ok { "PASS" } else { "FAIL" }));
    }

    fn error(&mut self, e: impl fmt::Display) {
        self.failed = true;
        self.say(format!("error: {e}"));
    }

    pub fn csv(&self) -> String {
        let mut s = String::from(ComponentReport::CSV_HEADER);
        s.push('\n');
        for r in &self.reports {
            s += &r.csv_row();
            s.push('\n');
        }
        s
    }
}

fn eval_poly(job: &JobFile, name: &str) -> crate::Result<Polynomial> {
    match job.poly(name) {
        PolyDef::Text(p) => Ok(p.clone()),
        PolyDef::Str(p) => strace_invariant(&job.space, p),
        PolyDef::Det(e) => job.space.generic_matrix(*e)?.determinant(),
    }
}

/// Executes the commands in order.
pub fn run(job: &JobFile, opts: &RunOptions) -> RunOutcome {
    let mut out = RunOutcome::default();
    for c in &job.commands {
        out.say(format!("> {}", job.command_text(c)));
        if let Err(e) = run_one(job, c, opts, &mut out) {
            out.error(e);
        }
    }
    out
}

fn run_one(job: &JobFile, c: &Command, opts: &RunOptions, out: &mut RunOutcome) -> crate::Result<()> {
    let space = &job.space;
    let q = space.quiver();
    match c {
        Command::Paths { max_len } => {
            for p in enumerate_closed_paths(q, *max_len) {
                out.say(fmt_path(&p, q));
            }
        }
        Command::Ringel => {
            let f = ringel_form(q, space.alpha(), space.alpha())?;
            out.say(format!("<alpha,alpha> = {f}"));
        }
        Command::Classify => {
            for a in 0..q.num_vertices() {
                let class = classify_vertex(q, space.alpha(), a)?;
                let k = if kirchhoff_ok(q, a)? { "yes" } else { "no" };
                out.say(format!("{}: {class} kirchhoff={k}", q.vertex_id(a)));
            }
        }
        Command::Normalize { vertex } => {
            let n = normalize_at(q, space.alpha(), space.parity(), *vertex)?;
            let nspace = RepSpace::new(n.quiver.clone(), n.alpha.clone(), n.parity.clone())?;
            let shown = JobFile {
                space: nspace,
                polys: Vec::new(),
                commands: Vec::new(),
            };
            for line in shown.to_string().lines() {
                out.say(line);
            }
        }
        Command::Straces { max_len } => {
            for p in enumerate_closed_paths(q, *max_len) {
                let f = strace_invariant(space, &p)?;
                out.say(format!("str{} = {}", fmt_path(&p, q), format_polynomial(&f, space)));
            }
        }
        Command::DetLike { spec } => {
            let d = detlike_semi_invariant(space, spec)?;
            out.say(format!("weight {}", d.weight.display(q)));
            if d.det.is_zero() {
                out.say("determinant vanishes");
                return Ok(());
            }
            for (n, f) in &d.components {
                out.say(format!("component {n} = {}", format_polynomial(f, space)));
            }
            let v = check_weight(space, &d.det, &d.weight)?;
            out.verdict("weight check", v.passed());
        }
        Command::Polarize { poly, refinement } => {
            let f = eval_poly(job, poly)?;
            match refinement {
                Some(s) => {
                    let (ps, p) = polarize(space, &f, s)?;
                    out.say(format_polynomial(&p, &ps));
                }
                None => {
                    let all: Vec<usize> = (0..q.num_edges()).collect();
                    let (ok, factor) = linearize_and_restitute_check(space, &f, &all)?;
                    out.say(format!("restitution factor {factor}"));
                    out.verdict("restitution identity", ok);
                }
            }
        }
        Command::CheckInvariant { poly } => {
            let f = eval_poly(job, poly)?;
            match check_gl_invariant(space, &f) {
                Verdict::Fail { .. } => {
                    let v = check_gl_invariant(space, &f);
                    out.failed = true;
                    out.say(v.render(space));
                }
                _ => out.say("INVARIANT OK"),
            }
        }
        Command::CheckWeight { weight, poly } => {
            let f = eval_poly(job, poly)?;
            let v = check_weight(space, &f, weight)?;
            if v.passed() {
                out.say("WEIGHT OK");
            } else {
                out.failed = true;
                out.say(v.render(space));
            }
        }
        Command::Oracle { degrees, compare } => {
            let list = match degrees {
                Degrees::Exact(n) => vec![n.clone()],
                Degrees::UpTo(k) => MultiDegree::all_up_to(q.num_edges(), *k),
            };
            let o = OracleOptions {
                cap: opts.cap,
                compare_max_len: *compare,
            };
            for r in component_reports(space, &list, &o)? {
                match r.verdict {
                    ReportVerdict::Fail => out.failed = true,
                    ReportVerdict::Inconclusive => out.capped = true,
                    ReportVerdict::Pass => {}
                }
                out.say(r.to_string());
                out.reports.push(r);
            }
        }
        Command::HomExt { a, b } => {
            let load = |name: &str| -> std::result::Result<ConcreteSuperRep, String> {
                let path = opts.base_dir.join(name);
                let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                parse_rep(&text, q).map_err(|d| format!("{}:{d}", path.display()))
            };
            let (v, w) = match (load(a), load(b)) {
                (Ok(v), Ok(w)) => (v, w),
                (Err(e), _) | (_, Err(e)) => {
                    out.usage_error = true;
                    out.say(format!("error: {e}"));
                    return Ok(());
                }
            };
            let form = ringel_form(q, &v.alpha, &w.alpha)?;
            let (hom, ext) = hom_ext_dims(q, &v, &w)?;
            let (hom2, euler) = hom_dim_doubled(q, &v, &w)?;
            out.say(format!("hom = {hom}, ext = {ext}, <sdim V, sdim W> = {form}"));
            out.verdict("doubled quiver cross-check", hom2 == hom && euler == form);
        }
        Command::Berezinian { target } => match target {
            BerTarget::Edge(e) => {
                let (format, parity) = space.edge_format(*e);
                if !format.is_square() || parity.is_odd() {
                    return Err(Error::Format(format!(
                        "X({}) is not an even square supermatrix",
                        q.edge(*e).id
                    )));
                }
                let x = space.generic_matrix(*e)?.map(|p| Ok(EvenFraction::from(p.clone())))?;
                out.say(format!("Ber = {}", format_fraction(&x.berezinian()?, space)));
            }
            BerTarget::Literal { dim, rows } => {
                let m = SuperMatrix::new(SuperFormat::square(*dim), Parity::Even, rows.clone())?;
                out.say(format!("Ber = {}", m.berezinian()?));
            }
        },
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const KRONECKER: &str = "\
# Kronecker quiver
vertex a sdim 2|0 parity 0
vertex b sdim 2|0
edge e1 a -> b
edge e2 a -> b
poly detE1 = det(e1)
check weight a=-1 b=+1 poly detE1
oracle degree e1=1 e2=1 compare maxlen 2
detlike sinks b:1 sources a:1 block b[1] a[1] = (e1) + (e2)
";

    const LOOP: &str = "\
vertex v sdim 1|1
edge e v -> v
poly s2 = str(e e)
poly f = x[e,1,1]^2 + 2 * x[e,1,2] * x[e,2,1] - x[e,2,2]^2
straces maxlen 3
oracle degree e=2 compare maxlen 2
check invariant s2
polarize f
polarize f s 1 1
berezinian e
berezinian 1|1 [2 0; 0 4]
ringel
classify
paths maxlen 2
";

    #[test]
    fn parses_kronecker() {
        let job = parse_job(KRONECKER).unwrap();
        assert_eq!(job.space.quiver().num_vertices(), 2);
        assert_eq!(job.space.quiver().num_edges(), 2);
        assert_eq!(job.commands.len(), 3);
    }

    #[test]
    fn round_trip() {
        for src in [KRONECKER, LOOP] {
            let job = parse_job(src).unwrap();
            let printed = job.to_string();
            let again = parse_job(&printed).unwrap();
            assert_eq!(again, job);
            assert_eq!(again.to_string(), printed);
        }
    }

    #[test]
    fn diagnostics_carry_locations() {
        let d = parse_job("vertex a sdim 1|0\nedge e a -> c\n").unwrap_err();
        assert_eq!((d.line, d.col), (2, 13));
        assert!(d.message.contains("unknown vertex"));
        let d = parse_job("vertex a sdim 1|1 parity 2\n").unwrap_err();
        assert_eq!((d.line, d.col), (1, 26));
        let d = parse_job("vertex v sdim 1|1\nedge e v -> v\npoly f = x[e,1,1] + x[f,1,1]\n").unwrap_err();
        assert_eq!((d.line, d.col), (3, 23));
        let d = parse_job("vertex v sdim 1|1\nedge e v -> v\ncheck invariant g\n").unwrap_err();
        assert_eq!((d.line, d.col), (3, 17));
        let d = parse_job("vertex v sdim 1|1\nfrobnicate\n").unwrap_err();
        assert_eq!(d.line, 2);
    }

    #[test]
    fn runs_kronecker() {
        let job = parse_job(KRONECKER).unwrap();
        let out = run(&job, &RunOptions::default());
        assert!(out.lines.contains(&"WEIGHT OK".to_string()), "{:?}", out.lines);
        assert!(out.lines.iter().any(|l| l.starts_with("n=(1,1)") && l.ends_with("PASS")));
        assert_eq!(out.exit_code(false), 0);
    }

    #[test]
    fn runs_loop() {
        let job = parse_job(LOOP).unwrap();
        let out = run(&job, &RunOptions::default());
        let straces = out.lines.iter().filter(|l| l.starts_with("str(")).count();
        assert_eq!(straces, 3);
        assert!(out.lines.contains(&"n=(2) basis=8 ssi=2 si=2 span=2 PASS".to_string()), "{:?}", out.lines);
        assert!(out.lines.contains(&"INVARIANT OK".to_string()));
        assert!(out.lines.contains(&"2 * x[e.1,1,1] * x[e.2,1,1] + 2 * x[e.1,1,2] * x[e.2,2,1] - 2 * x[e.1,2,1] * x[e.2,1,2] - 2 * x[e.1,2,2] * x[e.2,2,2]".to_string()), "{:?}", out.lines);
        assert!(out.lines.contains(&"restitution identity: PASS".to_string()));
        assert!(out.lines.contains(&"Ber = (x[e,1,1] * x[e,2,2] - x[e,1,2] * x[e,2,1]) / (x[e,2,2])^2".to_string()));
        assert!(out.lines.contains(&"Ber = 1/2".to_string()));
        assert!(out.lines.contains(&"<alpha,alpha> = -2".to_string()));
        assert!(out.lines.contains(&"v: inner ordinary in=1 out=1 kirchhoff=yes".to_string()));
        assert_eq!(out.exit_code(false), 0, "{:?}", out.lines);
        assert!(out.csv().starts_with(ComponentReport::CSV_HEADER));
    }

    #[test]
    fn failing_check_sets_exit_code() {
        let src = "vertex v sdim 1|1\nedge e v -> v\npoly f = x[e,1,1]\ncheck invariant f\n";
        let out = run(&parse_job(src).unwrap(), &RunOptions::default());
        assert_eq!(out.exit_code(false), 1);
    }

    #[test]
    fn cap_under_strict() {
        let src = "vertex v sdim 2|1\nedge e v -> v\noracle degree e=3\n";
        let job = parse_job(src).unwrap();
        let opts = RunOptions {
            cap: 5,
            ..RunOptions::default()
        };
        let out = run(&job, &opts);
        assert_eq!(out.exit_code(false), 0);
        assert_eq!(out.exit_code(true), 3);
    }

    #[test]
    fn rep_files() {
        let q = crate::quiver::examples::kronecker();
        let r = parse_rep("sdim a 1|0\nsdim b 1|0\nmap e1 = [1]\nmap e2 = [1]\n", &q).unwrap();
        assert_eq!(hom_ext_dims(&q, &r, &r).unwrap(), (1, 1));
        let d = parse_rep("sdim a 1|0\nsdim b 1|0\nmap e1 = [1 2]\n", &q).unwrap_err();
        assert_eq!(d.line, 3);
    }
}

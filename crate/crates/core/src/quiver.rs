//! Quivers, super-dimension vectors, parity vectors and the combinatorial
//! surgery used by the invariant constructions (doubling, polarization,
//! sink/source normalizing).

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A ℤ₂ degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Option<Parity> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^(self * other)` as a boolean "negate" flag.
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver. Vertex and edge indices follow declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(edge id, tail id, head id)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Quiver>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(Error::EmptyQuiver);
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut quiver = Quiver {
            vertices,
            edges: Vec::new(),
            vertex_index,
            edge_index: HashMap::new(),
        };
        for (id, tail, head) in edges {
            let tail = quiver.vertex(&tail)?;
            let head = quiver.vertex(&head)?;
            quiver.push_edge(id, tail, head)?;
        }
        Ok(quiver)
    }

    /// Convenience constructor for string literals.
    pub fn from_parts(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Quiver> {
        Quiver::new(
            vertices.iter().copied(),
            edges
                .iter()
                .map(|(e, t, h)| (e.to_string(), t.to_string(), h.to_string())),
        )
    }

    fn push_edge(&mut self, id: String, tail: usize, head: usize) -> Result<usize> {
        if self.edge_index.contains_key(&id) {
            return Err(Error::DuplicateId(id));
        }
        let idx = self.edges.len();
        self.edge_index.insert(id.clone(), idx);
        self.edges.push(Edge { id, tail, head });
        Ok(idx)
    }

    fn push_vertex(&mut self, id: String) -> Result<usize> {
        if self.vertex_index.contains_key(&id) {
            return Err(Error::DuplicateId(id));
        }
        let idx = self.vertices.len();
        self.vertex_index.insert(id.clone(), idx);
        self.vertices.push(id);
        Ok(idx)
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_id(&self, a: usize) -> &str {
        &self.vertices[a]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn in_edges(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.head == a)
            .map(|(i, _)| i)
    }

    pub fn out_edges(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.tail == a)
            .map(|(i, _)| i)
    }

    pub fn in_degree(&self, a: usize) -> usize {
        self.in_edges(a).count()
    }

    pub fn out_degree(&self, a: usize) -> usize {
        self.out_edges(a).count()
    }

    fn check_vertex(&self, a: usize) -> Result<()> {
        if a < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{a}")))
        }
    }

    /// Unused identifier derived from `base` (appends `'` until free).
    fn fresh_id(&self, base: &str, taken: impl Fn(&str) -> bool) -> String {
        let mut id = base.to_string();
        while taken(&id) {
            id.push('\'');
        }
        id
    }
}

/// Renders the quiver block of the line-oriented text format (without
/// dimension data): one `edge <id> <tail> -> <head>` line per edge.
impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for e in &self.edges {
            writeln!(
                f,
                "edge {} {} -> {}",
                e.id, self.vertices[e.tail], self.vertices[e.head]
            )?;
        }
        Ok(())
    }
}

/// Super-dimension `even|odd` of a single superspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SuperDim {
    pub even: u32,
    pub odd: u32,
}

impl SuperDim {
    pub const fn new(even: u32, odd: u32) -> SuperDim {
        SuperDim { even, odd }
    }

    pub fn total(self) -> u32 {
        self.even + self.odd
    }

    pub fn part(self, p: Parity) -> u32 {
        match p {
            Parity::Even => self.even,
            Parity::Odd => self.odd,
        }
    }

    pub fn is_extremal(self) -> bool {
        self.even == 0 || self.odd == 0
    }

    /// Parity of the `i`-th basis vector (0-based): the first `even` are even.
    pub fn index_parity(self, i: usize) -> Parity {
        if i < self.even as usize {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn shifted(self, b: Parity) -> SuperDim {
        match b {
            Parity::Even => self,
            Parity::Odd => SuperDim::new(self.odd, self.even),
        }
    }
}

impl fmt::Display for SuperDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

impl FromStr for SuperDim {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuperDim> {
        let (p, q) = s
            .split_once('|')
            .ok_or_else(|| Error::Invalid(format!("expected `p|q`, got `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Invalid(format!("bad dimension `{t}`")))
        };
        Ok(SuperDim::new(parse(p)?, parse(q)?))
    }
}

/// Per-vertex super-dimensions, indexed by vertex declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperDimVector(pub Vec<SuperDim>);

impl SuperDimVector {
    pub fn new(dims: Vec<SuperDim>) -> SuperDimVector {
        SuperDimVector(dims)
    }

    pub fn uniform(q: &Quiver, d: SuperDim) -> SuperDimVector {
        SuperDimVector(vec![d; q.num_vertices()])
    }

    pub fn zero(q: &Quiver) -> SuperDimVector {
        SuperDimVector::uniform(q, SuperDim::default())
    }

    pub fn check(&self, q: &Quiver) -> Result<()> {
        if self.0.len() == q.num_vertices() {
            Ok(())
        } else {
            Err(Error::WrongQuiver {
                expected: q.num_vertices(),
                got: self.0.len(),
            })
        }
    }

    pub fn at(&self, a: usize) -> SuperDim {
        self.0[a]
    }
}

impl Add for &SuperDimVector {
    type Output = SuperDimVector;

    fn add(self, rhs: &SuperDimVector) -> SuperDimVector {
        SuperDimVector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| SuperDim::new(a.even + b.even, a.odd + b.odd))
                .collect(),
        )
    }
}

/// Per-vertex parity twist `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityVector(pub Vec<Parity>);

impl ParityVector {
    pub fn zero(q: &Quiver) -> ParityVector {
        ParityVector(vec![Parity::Even; q.num_vertices()])
    }

    pub fn from_bits(bits: &[u8]) -> Result<ParityVector> {
        bits.iter()
            .map(|&b| {
                Parity::from_bit(b).ok_or_else(|| Error::Invalid(format!("parity bit {b}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(ParityVector)
    }

    /// All `2^n` parity vectors for a quiver with `n` vertices.
    pub fn all(q: &Quiver) -> Vec<ParityVector> {
        let n = q.num_vertices();
        (0u64..1 << n)
            .map(|mask| {
                ParityVector(
                    (0..n)
                        .map(|i| {
                            if mask >> i & 1 == 1 {
                                Parity::Odd
                            } else {
                                Parity::Even
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn check(&self, q: &Quiver) -> Result<()> {
        if self.0.len() == q.num_vertices() {
            Ok(())
        } else {
            Err(Error::WrongQuiver {
                expected: q.num_vertices(),
                got: self.0.len(),
            })
        }
    }

    pub fn at(&self, a: usize) -> Parity {
        self.0[a]
    }
}

/// Dense per-edge degree vector `n ∈ ℕ^{Q₁}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(num_edges: usize) -> MultiDegree {
        MultiDegree(vec![0; num_edges])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    pub fn le(&self, other: &MultiDegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        if !other.le(self) {
            return None;
        }
        Some(MultiDegree(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Every degree vector with `total ≤ max_total`, excluding zero, in
    /// graded-lexicographic order.
    pub fn all_up_to(num_edges: usize, max_total: u32) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        for total in 1..=max_total {
            let mut cur = vec![0u32; num_edges];
            compositions(&mut cur, 0, total, &mut out);
        }
        out
    }
}

fn compositions(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<MultiDegree>) {
    if pos + 1 >= cur.len() {
        if let Some(n) = cur.len().checked_sub(1) {
            cur[n] = left;
            out.push(MultiDegree(cur.clone()));
            cur[n] = 0;
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        compositions(cur, pos + 1, left - k, out);
    }
    cur[pos] = 0;
}

impl Add for &MultiDegree {
    type Output = MultiDegree;

    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// Edge sequence `e₁,…,e_k` with `h(e_{i+1}) = t(e_i)`. The path runs from
/// `t(e_k)` to `h(e₁)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    edges: Vec<usize>,
    closed: bool,
}

impl Path {
    pub fn new(q: &Quiver, edges: Vec<usize>) -> Result<Path> {
        let names = || edges.iter().map(|&e| q.edge(e).id.clone()).collect();
        if edges.is_empty() || edges.iter().any(|&e| e >= q.num_edges()) {
            return Err(Error::NotAPath(Vec::new()));
        }
        for w in edges.windows(2) {
            if q.edge(w[1]).head != q.edge(w[0]).tail {
                return Err(Error::NotAPath(names()));
            }
        }
        let closed = q.edge(edges[0]).head == q.edge(*edges.last().unwrap()).tail;
        Ok(Path { edges, closed })
    }

    pub fn from_ids(q: &Quiver, ids: &[&str]) -> Result<Path> {
        let edges = ids
            .iter()
            .map(|id| q.edge_by_id(id))
            .collect::<Result<Vec<_>>>()?;
        Path::new(q, edges)
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Terminal vertex `h(e₁)`.
    pub fn head(&self, q: &Quiver) -> usize {
        q.edge(self.edges[0]).head
    }

    /// Initial vertex `t(e_k)`.
    pub fn tail(&self, q: &Quiver) -> usize {
        q.edge(*self.edges.last().unwrap()).tail
    }

    pub fn multidegree(&self, num_edges: usize) -> MultiDegree {
        let mut n = MultiDegree::zero(num_edges);
        for &e in &self.edges {
            n.0[e] += 1;
        }
        n
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> impl fmt::Display + 'a {
        DisplayPath(self, q)
    }
}

struct DisplayPath<'a>(&'a Path, &'a Quiver);

impl fmt::Display for DisplayPath<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &e) in self.0.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.1.edge(e).id)?;
        }
        write!(f, ")")
    }
}

/// Closed paths of length `1..=max_len`, one per rotation class (the
/// lexicographically smallest rotation of the edge-index sequence), ordered
/// by length and then lexicographically.
pub fn enumerate_closed_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(max_len);
    for len in 1..=max_len {
        for e in 0..q.num_edges() {
            stack.clear();
            stack.push(e);
            extend_paths(q, len, &mut stack, &mut out);
        }
    }
    out
}

fn extend_paths(q: &Quiver, len: usize, stack: &mut Vec<usize>, out: &mut Vec<Path>) {
    if stack.len() == len {
        let first = q.edge(stack[0]).head;
        let last = q.edge(*stack.last().unwrap()).tail;
        if first == last && is_min_rotation(stack) {
            out.push(Path {
                edges: stack.clone(),
                closed: true,
            });
        }
        return;
    }
    let need_head = q.edge(*stack.last().unwrap()).tail;
    for e in 0..q.num_edges() {
        // rotations starting with a smaller edge index are enumerated elsewhere
        if e < stack[0] {
            continue;
        }
        if q.edge(e).head == need_head {
            stack.push(e);
            extend_paths(q, len, stack, out);
            stack.pop();
        }
    }
}

/// Paths from `from` to `to` of length `1..=max_len`, ordered by length and
/// then lexicographically in the edge-index sequence.
pub fn enumerate_paths_between(q: &Quiver, from: usize, to: usize, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut stack = Vec::with_capacity(len);
        walk_back(q, from, to, len, &mut stack, &mut out);
    }
    out
}

fn walk_back(q: &Quiver, from: usize, at: usize, len: usize, stack: &mut Vec<usize>, out: &mut Vec<Path>) {
    if stack.len() == len {
        if at == from {
            out.push(Path {
                closed: q.edge(stack[0]).head == from,
                edges: stack.clone(),
            });
        }
        return;
    }
    for e in 0..q.num_edges() {
        if q.edge(e).head == at {
            stack.push(e);
            walk_back(q, from, q.edge(e).tail, len, stack, out);
            stack.pop();
        }
    }
}

fn is_min_rotation(seq: &[usize]) -> bool {
    let n = seq.len();
    (1..n).all(|r| {
        let rotated = seq[r..].iter().chain(&seq[..r]);
        seq.iter().cmp(rotated) != std::cmp::Ordering::Greater
    })
}

/// `⟨α,β⟩ = Σ_a (α₀β₀ + α₁β₁) − Σ_e d_α(t(e))·d_β(h(e))`.
pub fn ringel_form(q: &Quiver, alpha: &SuperDimVector, beta: &SuperDimVector) -> Result<i64> {
    alpha.check(q)?;
    beta.check(q)?;
    let vertex: i64 = alpha
        .0
        .iter()
        .zip(&beta.0)
        .map(|(a, b)| (a.even * b.even + a.odd * b.odd) as i64)
        .sum();
    let edge: i64 = q
        .edges()
        .iter()
        .map(|e| alpha.at(e.tail).total() as i64 * beta.at(e.head).total() as i64)
        .sum();
    Ok(vertex - edge)
}

/// Classical Euler form of an ordinary quiver.
pub fn euler_form(q: &Quiver, d1: &[u32], d2: &[u32]) -> i64 {
    let vertex: i64 = d1.iter().zip(d2).map(|(a, b)| (a * b) as i64).sum();
    let edge: i64 = q
        .edges()
        .iter()
        .map(|e| d1[e.tail] as i64 * d2[e.head] as i64)
        .sum();
    vertex - edge
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexClass {
    pub source: bool,
    pub sink: bool,
    pub extremal: bool,
    pub in_degree: usize,
    pub out_degree: usize,
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match (self.source, self.sink) {
            (true, true) => "isolated",
            (true, false) => "source",
            (false, true) => "sink",
            (false, false) => "inner",
        };
        let ext = if self.extremal { "extremal" } else { "ordinary" };
        write!(
            f,
            "{kind} {ext} in={} out={}",
            self.in_degree, self.out_degree
        )
    }
}

pub fn classify_vertex(q: &Quiver, alpha: &SuperDimVector, a: usize) -> Result<VertexClass> {
    alpha.check(q)?;
    q.check_vertex(a)?;
    let in_degree = q.in_degree(a);
    let out_degree = q.out_degree(a);
    Ok(VertexClass {
        source: in_degree == 0,
        sink: out_degree == 0,
        extremal: alpha.at(a).is_extremal(),
        in_degree,
        out_degree,
    })
}

/// Kirchhoff rule `in(a) = out(a)`.
pub fn kirchhoff_ok(q: &Quiver, a: usize) -> Result<bool> {
    q.check_vertex(a)?;
    Ok(q.in_degree(a) == q.out_degree(a))
}

/// Edge-doubled quiver: every `e` becomes `e_0` (even) and `e_1` (odd) with
/// the same endpoints. Returns the quiver and the parity label per new edge.
pub fn double_edges(q: &Quiver) -> (Quiver, Vec<Parity>) {
    let mut out = Quiver::new(q.vertices().iter().cloned(), std::iter::empty())
        .expect("vertex set already validated");
    let mut labels = Vec::with_capacity(2 * q.num_edges());
    for e in q.edges() {
        for p in [Parity::Even, Parity::Odd] {
            let id = out.fresh_id(&format!("{}_{}", e.id, p.bit()), |s| {
                q.edge_index.contains_key(s) || out.edge_index.contains_key(s)
            });
            out.push_edge(id, e.tail, e.head).expect("fresh id");
            labels.push(p);
        }
    }
    (out, labels)
}

/// Edge-and-vertex-doubled quiver `Q̃` with the ordinary dimension vector
/// `a_i ↦ α(a)_i`. Vertex `a_i` has index `2a + i`; edge `e_ij` (from
/// `t(e)_i` to `h(e)_j`) has index `4e + 2i + j`.
pub fn double_all(q: &Quiver, alpha: &SuperDimVector) -> Result<(Quiver, Vec<u32>)> {
    alpha.check(q)?;
    let mut vertices = Vec::with_capacity(2 * q.num_vertices());
    let mut dims = Vec::with_capacity(2 * q.num_vertices());
    for (a, v) in q.vertices().iter().enumerate() {
        for i in 0..2u8 {
            vertices.push(format!("{v}_{i}"));
            dims.push(alpha.at(a).part(Parity::from_bit(i).unwrap()));
        }
    }
    let mut edges = Vec::with_capacity(4 * q.num_edges());
    for e in q.edges() {
        for i in 0..2 {
            for j in 0..2 {
                edges.push((
                    format!("{}_{i}{j}", e.id),
                    vertices[2 * e.tail + i].clone(),
                    vertices[2 * e.head + j].clone(),
                ));
            }
        }
    }
    Ok((Quiver::new(vertices.clone(), edges)?, dims))
}

/// The `n`-polarized quiver together with, for every new edge, the pair
/// `(original edge, copy number starting at 1)`.
pub fn polarize_quiver(q: &Quiver, n: &MultiDegree) -> Result<(Quiver, Vec<(usize, u32)>)> {
    if n.0.len() != q.num_edges() {
        return Err(Error::MultiDegree(format!(
            "expected {} entries, got {}",
            q.num_edges(),
            n.0.len()
        )));
    }
    let mut out = Quiver::new(q.vertices().iter().cloned(), std::iter::empty())?;
    let mut origin = Vec::new();
    for (ei, e) in q.edges().iter().enumerate() {
        for copy in 1..=n.0[ei] {
            out.push_edge(format!("{}.{copy}", e.id), e.tail, e.head)?;
            origin.push((ei, copy));
        }
    }
    Ok((out, origin))
}

/// Result of sink/source normalizing at a vertex.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub quiver: Quiver,
    pub alpha: SuperDimVector,
    pub parity: ParityVector,
    /// Index of the new vertex `a′`.
    pub new_vertex: usize,
    /// Index of the new edge `e(a): a′ → a`.
    pub new_edge: usize,
}

/// Sink/source normalizing at `a`: every edge ending at `a` is re-targeted
/// to a fresh vertex `a′` and a new edge `e(a): a′ → a` is appended. Original
/// edges keep their indices.
pub fn normalize_at(
    q: &Quiver,
    alpha: &SuperDimVector,
    b: &ParityVector,
    a: usize,
) -> Result<Normalized> {
    alpha.check(q)?;
    b.check(q)?;
    let class = classify_vertex(q, alpha, a)?;
    if class.source || class.sink {
        return Err(Error::SourceOrSink(q.vertex_id(a).to_string()));
    }
    let mut out = Quiver::new(q.vertices().iter().cloned(), std::iter::empty())?;
    let prime = out.fresh_id(&format!("{}'", q.vertex_id(a)), |s| {
        q.vertex_index.contains_key(s)
    });
    let new_vertex = out.push_vertex(prime)?;
    for e in q.edges() {
        let head = if e.head == a { new_vertex } else { e.head };
        out.push_edge(e.id.clone(), e.tail, head)?;
    }
    let edge_id = out.fresh_id(&format!("norm_{}", q.vertex_id(a)), |s| {
        q.edge_index.contains_key(s)
    });
    let new_edge = out.push_edge(edge_id, new_vertex, a)?;
    let mut alpha = alpha.clone();
    alpha.0.push(alpha.at(a));
    let mut parity = b.clone();
    parity.0.push(b.at(a));
    Ok(Normalized {
        quiver: out,
        alpha,
        parity,
        new_vertex,
        new_edge,
    })
}

/// `(Π^b α)(a)_i = α(a)_{i + b(a)}`.
pub fn parity_shift(alpha: &SuperDimVector, b: &ParityVector) -> Result<SuperDimVector> {
    if alpha.0.len() != b.0.len() {
        return Err(Error::WrongQuiver {
            expected: alpha.0.len(),
            got: b.0.len(),
        });
    }
    Ok(SuperDimVector(
        alpha
            .0
            .iter()
            .zip(&b.0)
            .map(|(d, &p)| d.shifted(p))
            .collect(),
    ))
}

/// Standard test quivers.
pub mod examples {
    use super::Quiver;

    pub fn loop_quiver() -> Quiver {
        Quiver::from_parts(&["a"], &[("e", "a", "a")]).unwrap()
    }

    pub fn kronecker() -> Quiver {
        Quiver::from_parts(&["a", "b"], &[("e1", "a", "b"), ("e2", "a", "b")]).unwrap()
    }

    pub fn two_cycle() -> Quiver {
        Quiver::from_parts(&["a", "b"], &[("e1", "a", "b"), ("e2", "b", "a")]).unwrap()
    }

    pub fn three_cycle() -> Quiver {
        Quiver::from_parts(
            &["a", "b", "c"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")],
        )
        .unwrap()
    }

    /// `A₃`: `a → b → c`.
    pub fn a3() -> Quiver {
        Quiver::from_parts(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c")]).unwrap()
    }

    pub fn single_vertex() -> Quiver {
        Quiver::from_parts(&["a"], &[]).unwrap()
    }
}

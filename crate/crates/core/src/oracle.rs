//! Brute-force ground truth: exact dimensions of semi-invariant and
//! invariant spaces on multigraded components, the span of the generating
//! semi-invariants, and Hom/Ext dimensions of concrete super-representations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::{Derivation, LieBasisElement, LieElement};
use crate::linalg::{primitive, Echelon};
use crate::quiver::{
    double_all, enumerate_closed_paths, enumerate_paths_between, euler_form, ringel_form,
    MultiDegree, Parity, Quiver, SuperDimVector,
};
use crate::ring::{rational, Monomial, Polynomial, Rational, Var};
use crate::semi::{detlike_class, strace_invariant, DetBlock, DetLikeSpec};
use crate::space::RepSpace;
use crate::supermatrix::determinant;

/// Default limit on the number of monomials in a component and on the number
/// of generator products tried.
pub const DEFAULT_CAP: usize = 200_000;

/// The canonical monomials of one multidegree.
#[derive(Debug, Clone)]
pub struct ComponentBasis {
    pub multidegree: MultiDegree,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl ComponentBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a polynomial lying in the component.
    pub fn coordinates(&self, f: &Polynomial) -> Result<Vec<(usize, Rational)>> {
        f.terms()
            .map(|(m, c)| {
                self.index_of(m)
                    .map(|i| (i, c.clone()))
                    .ok_or_else(|| Error::MultiDegree(format!("monomial outside {}", self.multidegree)))
            })
            .collect()
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn edge_var_counts(space: &RepSpace, e: usize) -> (u128, u128) {
    let vars = space.edge_vars(e);
    let odd = vars.iter().filter(|v| v.is_odd()).count() as u128;
    (vars.len() as u128 - odd, odd)
}

/// `Π_e Σ_j C(odd_e, j)·C(even_e + n_e − j − 1, n_e − j)`.
pub fn component_size(space: &RepSpace, n: &MultiDegree) -> Result<u128> {
    check_degree(space, n)?;
    let mut total = 1u128;
    for (e, &ne) in n.0.iter().enumerate() {
        let (even, odd) = edge_var_counts(space, e);
        let ne = ne as u128;
        let sym: u128 = (0..=ne.min(odd))
            .map(|j| {
                let rest = ne - j;
                let multisets = if rest == 0 {
                    1
                } else if even == 0 {
                    0
                } else {
                    binomial(even + rest - 1, rest)
                };
                binomial(odd, j) * multisets
            })
            .sum();
        total = total.saturating_mul(sym);
    }
    Ok(total)
}

fn check_degree(space: &RepSpace, n: &MultiDegree) -> Result<()> {
    if n.0.len() != space.num_edges() {
        return Err(Error::MultiDegree(format!(
            "expected {} entries, got {}",
            space.num_edges(),
            n.0.len()
        )));
    }
    Ok(())
}

fn check_cap(size: u128, cap: usize) -> Result<()> {
    if size > cap as u128 {
        return Err(Error::ResourceCap {
            size: size.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    Ok(())
}

/// Sorted factor lists of degree `ne` in the variables of one edge.
fn edge_monomials(space: &RepSpace, e: usize, ne: u32) -> Vec<Vec<(Var, u32)>> {
    let vars = space.edge_vars(e);
    let (odd, even): (Vec<Var>, Vec<Var>) = vars.into_iter().partition(|v| v.is_odd());
    let ne = ne as usize;
    let mut out = Vec::new();
    for j in 0..=ne.min(odd.len()) {
        for odd_part in odd.iter().copied().combinations(j) {
            let evens: Vec<Vec<Var>> = if ne - j == 0 {
                vec![Vec::new()]
            } else {
                even.iter().copied().combinations_with_replacement(ne - j).collect()
            };
            for even_part in evens {
                let mut factors: BTreeMap<Var, u32> = odd_part.iter().map(|&v| (v, 1)).collect();
                for v in even_part {
                    *factors.entry(v).or_default() += 1;
                }
                out.push(factors.into_iter().collect());
            }
        }
    }
    out
}

/// All canonical monomials of multidegree `n`, in the canonical monomial
/// order.
pub fn component_basis(space: &RepSpace, n: &MultiDegree) -> Result<ComponentBasis> {
    check_degree(space, n)?;
    let mut partial: Vec<Vec<(Var, u32)>> = vec![Vec::new()];
    for (e, &ne) in n.0.iter().enumerate() {
        if ne == 0 {
            continue;
        }
        let here = edge_monomials(space, e, ne);
        partial = partial
            .iter()
            .flat_map(|p| {
                here.iter().map(move |h| {
                    let mut f = p.clone();
                    f.extend(h.iter().copied());
                    f
                })
            })
            .collect();
    }
    let mut monomials: Vec<Monomial> = partial.into_iter().map(Monomial::from_sorted).collect();
    monomials.sort();
    let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    Ok(ComponentBasis {
        multidegree: n.clone(),
        monomials,
        index,
    })
}

/// Which group's invariants a kernel computation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    /// `SL(α)`: semi-invariants of every weight.
    Special,
    /// `GL(α)`: invariants.
    General,
}

/// Eigenvalue of `E_kk@a` on a monomial: factors with head `a` and row `k`
/// minus factors with tail `a` and column `k`.
fn diagonal_eigenvalues(space: &RepSpace, m: &Monomial) -> Vec<Vec<i64>> {
    let q = space.quiver();
    let mut out: Vec<Vec<i64>> = (0..q.num_vertices()).map(|a| vec![0; space.dim(a)]).collect();
    for &(v, k) in m.factors() {
        let edge = q.edge(v.edge as usize);
        out[edge.head][v.row as usize] += k as i64;
        out[edge.tail][v.col as usize] -= k as i64;
    }
    out
}

fn passes_diagonal(space: &RepSpace, m: &Monomial, group: Group) -> bool {
    let lambda = diagonal_eigenvalues(space, m);
    match group {
        Group::General => lambda.iter().flatten().all(|&x| x == 0),
        Group::Special => lambda.iter().enumerate().all(|(a, row)| {
            let d = space.sdim(a);
            let sign = |k: usize| if d.index_parity(k) == Parity::Even { 1 } else { -1 };
            row.iter()
                .enumerate()
                .map(|(k, &x)| x * sign(k))
                .all_equal()
        }),
    }
}

fn off_diagonal(space: &RepSpace) -> Vec<Derivation> {
    let mut out = Vec::new();
    for a in 0..space.quiver().num_vertices() {
        let d = space.dim(a);
        for k in 0..d {
            for l in 0..d {
                if k != l {
                    let e = LieElement::basis(LieBasisElement::new(a, k, l));
                    out.push(Derivation::new(space, e));
                }
            }
        }
    }
    out
}

/// Dimension of the kernel of the Lie algebra action on component `n`.
///
/// Diagonal generators act diagonally on monomials, so the kernel lies in
/// the span of the monomials they annihilate; on that span it is the common
/// kernel of the off-diagonal generators.
pub fn kernel_dim(space: &RepSpace, n: &MultiDegree, group: Group, cap: usize) -> Result<usize> {
    check_cap(component_size(space, n)?, cap)?;
    let basis = component_basis(space, n)?;
    let candidates: Vec<&Monomial> = basis
        .monomials
        .iter()
        .filter(|m| passes_diagonal(space, m, group))
        .collect();
    if candidates.is_empty() {
        return Ok(0);
    }
    let gens = off_diagonal(space);
    let stride = basis.len();
    let columns: Vec<Result<Vec<(usize, Rational)>>> = candidates
        .par_iter()
        .map(|m| {
            let f = Polynomial::term((*m).clone(), Rational::one());
            let mut col = Vec::new();
            for (g, d) in gens.iter().enumerate() {
                for (i, c) in basis.coordinates(&d.apply(&f))? {
                    col.push((g * stride + i, c));
                }
            }
            Ok(col)
        })
        .collect();
    let mut ech = Echelon::new();
    for col in columns {
        ech.insert(primitive(&col?));
    }
    Ok(candidates.len() - ech.rank())
}

pub fn semi_invariant_dim(space: &RepSpace, n: &MultiDegree, cap: usize) -> Result<usize> {
    kernel_dim(space, n, Group::Special, cap)
}

pub fn invariant_dim(space: &RepSpace, n: &MultiDegree, cap: usize) -> Result<usize> {
    kernel_dim(space, n, Group::General, cap)
}

/// Det-like specs over the extremal sinks and sources, with multiplicities
/// at most 2, size at most `max_size`, and one fresh scalar parameter per
/// path of length `≤ max_len` in every block. Paths whose degree does not
/// fit under `bound` are left out.
pub fn symbolic_detlike_specs(
    space: &RepSpace,
    max_len: usize,
    max_size: usize,
    bound: Option<&MultiDegree>,
) -> Vec<DetLikeSpec> {
    let q = space.quiver();
    let mut out = Vec::new();
    for class in [Parity::Even, Parity::Odd] {
        let pick = |source: bool| -> Vec<usize> {
            (0..q.num_vertices())
                .filter(|&a| q.in_degree(a) + q.out_degree(a) > 0)
                .filter(|&a| if source { q.in_degree(a) == 0 } else { q.out_degree(a) == 0 })
                .filter(|&a| detlike_class(space, a) == Some(class))
                .collect()
        };
        let (sinks, sources) = (pick(false), pick(true));
        for a_set in sinks.iter().copied().powerset().filter(|s| !s.is_empty()) {
            for c_set in sources.iter().copied().powerset().filter(|s| !s.is_empty()) {
                let qs = multiplicities(a_set.len());
                let rs = multiplicities(c_set.len());
                for qv in &qs {
                    for rv in &rs {
                        let sinks: Vec<(usize, u32)> = a_set.iter().copied().zip(qv.iter().copied()).collect();
                        let sources: Vec<(usize, u32)> = c_set.iter().copied().zip(rv.iter().copied()).collect();
                        let rows: usize = sinks.iter().map(|&(a, m)| space.dim(a) * m as usize).sum();
                        let cols: usize = sources.iter().map(|&(c, m)| space.dim(c) * m as usize).sum();
                        if rows != cols || rows > max_size {
                            continue;
                        }
                        if let Some(spec) = symbolic_spec(space, sinks, sources, max_len, bound) {
                            out.push(spec);
                        }
                    }
                }
            }
        }
    }
    out
}

fn multiplicities(k: usize) -> Vec<Vec<u32>> {
    (0..k).map(|_| [1u32, 2]).multi_cartesian_product().collect()
}

fn symbolic_spec(
    space: &RepSpace,
    sinks: Vec<(usize, u32)>,
    sources: Vec<(usize, u32)>,
    max_len: usize,
    bound: Option<&MultiDegree>,
) -> Option<DetLikeSpec> {
    let q = space.quiver();
    let mut blocks = Vec::new();
    let mut param = 0;
    let mut sink_reached = vec![false; sinks.len()];
    for (i, &(a, qa)) in sinks.iter().enumerate() {
        for (j, &(c, rc)) in sources.iter().enumerate() {
            let paths: Vec<_> = enumerate_paths_between(q, c, a, max_len)
                .into_iter()
                .filter(|p| bound.is_none_or(|n| p.multidegree(q.num_edges()).le(n)))
                .collect();
            if paths.is_empty() {
                continue;
            }
            sink_reached[i] = true;
            for ci in 1..=qa {
                for cj in 1..=rc {
                    let terms = paths
                        .iter()
                        .map(|p| {
                            param += 1;
                            (Polynomial::var(Var::param(param - 1)), p.clone())
                        })
                        .collect();
                    blocks.push(DetBlock {
                        sink: (i, ci),
                        source: (j, cj),
                        terms,
                    });
                }
            }
        }
    }
    sink_reached.iter().all(|&r| r).then_some(DetLikeSpec {
        sinks,
        sources,
        blocks,
    })
}

/// Generating atoms whose degree fits under `n`: supertraces of closed paths
/// up to `max_len`, and the multihomogeneous pieces of the parameter
/// coefficients of symbolic det-like determinants. Reduced to a basis in
/// each multidegree.
pub fn generator_atoms(space: &RepSpace, n: &MultiDegree, max_len: usize) -> Result<Vec<(MultiDegree, Polynomial)>> {
    let q = space.quiver();
    let mut raw: BTreeMap<MultiDegree, Vec<Polynomial>> = BTreeMap::new();
    for p in enumerate_closed_paths(q, max_len) {
        let d = p.multidegree(q.num_edges());
        if !d.le(n) {
            continue;
        }
        let f = strace_invariant(space, &p)?;
        if !f.is_zero() {
            raw.entry(d).or_default().push(f);
        }
    }
    for spec in symbolic_detlike_specs(space, max_len, n.total() as usize, Some(n)) {
        let det = determinant(&spec.matrix(space)?)?;
        for (_, coef) in det.param_coefficients() {
            for (d, f) in coef.components(q.num_edges()) {
                if !d.is_zero() && d.le(n) {
                    raw.entry(d).or_default().push(f);
                }
            }
        }
    }
    let mut out = Vec::new();
    for (d, fs) in raw {
        let mut seen: HashMap<Monomial, usize> = HashMap::new();
        let mut ech = Echelon::new();
        for f in fs {
            let coords: Vec<(usize, Rational)> = f
                .terms()
                .map(|(m, c)| {
                    let next = seen.len();
                    (*seen.entry(m.clone()).or_insert(next), c.clone())
                })
                .collect();
            if ech.insert(primitive(&coords)) {
                out.push((d.clone(), f));
            }
        }
    }
    Ok(out)
}

/// Rank of all products of generating atoms landing in multidegree `n`.
pub fn generator_span_dim(space: &RepSpace, n: &MultiDegree, max_len: usize, cap: usize) -> Result<usize> {
    check_cap(component_size(space, n)?, cap)?;
    if n.is_zero() {
        return Ok(1);
    }
    let basis = component_basis(space, n)?;
    let atoms = generator_atoms(space, n, max_len)?;
    let mut ech = Echelon::new();
    let mut tried = 0usize;
    let mut stack = Vec::new();
    products(&atoms, 0, n, Polynomial::one(), &mut stack, &mut |f| {
        tried += 1;
        if tried > cap {
            return Err(Error::ResourceCap { size: tried, cap });
        }
        if !f.is_zero() {
            ech.insert(primitive(&basis.coordinates(f)?));
        }
        Ok(ech.rank() < basis.len())
    })?;
    Ok(ech.rank())
}

/// Visits products of atoms (as multisets, nondecreasing index) whose
/// degrees sum to `rem`. The visitor returns whether to continue.
fn products<F>(
    atoms: &[(MultiDegree, Polynomial)],
    start: usize,
    rem: &MultiDegree,
    acc: Polynomial,
    stack: &mut Vec<usize>,
    visit: &mut F,
) -> Result<bool>
where
    F: FnMut(&Polynomial) -> Result<bool>,
{
    if rem.is_zero() {
        return visit(&acc);
    }
    for i in start..atoms.len() {
        let Some(next) = rem.checked_sub(&atoms[i].0) else { continue };
        stack.push(i);
        let go = products(atoms, i, &next, &acc * &atoms[i].1, stack, visit)?;
        stack.pop();
        if !go {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportVerdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for ReportVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportVerdict::Pass => "PASS",
            ReportVerdict::Fail => "FAIL",
            ReportVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Per-component results; `None` where a cap was hit or the span was not
/// requested.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentReport {
    pub multidegree: MultiDegree,
    pub basis_size: u128,
    pub ssi_dim: Option<usize>,
    pub si_dim: Option<usize>,
    pub span_dim: Option<usize>,
    pub verdict: ReportVerdict,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    pub cap: usize,
    /// Compare against the generator span with this path length bound.
    pub compare_max_len: Option<usize>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            cap: DEFAULT_CAP,
            compare_max_len: None,
        }
    }
}

fn capped<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::ResourceCap { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn component_report(space: &RepSpace, n: &MultiDegree, opts: &OracleOptions) -> Result<ComponentReport> {
    let basis_size = component_size(space, n)?;
    let ssi_dim = capped(semi_invariant_dim(space, n, opts.cap))?;
    let si_dim = capped(invariant_dim(space, n, opts.cap))?;
    let span_dim = match opts.compare_max_len {
        Some(k) => capped(generator_span_dim(space, n, k, opts.cap))?,
        None => None,
    };
    let capped_out = ssi_dim.is_none() || si_dim.is_none() || (opts.compare_max_len.is_some() && span_dim.is_none());
    let verdict = if capped_out {
        ReportVerdict::Inconclusive
    } else {
        let ssi = ssi_dim.unwrap();
        let ok = si_dim.unwrap() <= ssi && span_dim.is_none_or(|s| s == ssi);
        if ok {
            ReportVerdict::Pass
        } else {
            ReportVerdict::Fail
        }
    };
    Ok(ComponentReport {
        multidegree: n.clone(),
        basis_size,
        ssi_dim,
        si_dim,
        span_dim,
        verdict,
    })
}

/// Reports for independent components, computed in parallel and returned in
/// input order.
pub fn component_reports(space: &RepSpace, degrees: &[MultiDegree], opts: &OracleOptions) -> Result<Vec<ComponentReport>> {
    degrees.par_iter().map(|n| component_report(space, n, opts)).collect()
}

fn opt(x: Option<usize>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

impl ComponentReport {
    pub const CSV_HEADER: &'static str = "multidegree,basis_size,ssi_dim,si_dim,span_dim,verdict";

    pub fn csv_row(&self) -> String {
        format!(
            "\"{}\",{},{},{},{},{}",
            self.multidegree,
            self.basis_size,
            opt(self.ssi_dim),
            opt(self.si_dim),
            opt(self.span_dim),
            self.verdict
        )
    }
}

impl fmt::Display for ComponentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} basis={} ssi={} si={} span={} {}",
            self.multidegree,
            self.basis_size,
            opt(self.ssi_dim),
            opt(self.si_dim),
            opt(self.span_dim),
            self.verdict
        )
    }
}

/// A super-representation with concrete rational maps; `maps[e]` is an
/// ungraded `d(h(e)) × d(t(e))` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcreteSuperRep {
    pub alpha: SuperDimVector,
    pub maps: Vec<Vec<Vec<Rational>>>,
}

impl ConcreteSuperRep {
    pub fn new(q: &Quiver, alpha: SuperDimVector, maps: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        alpha.check(q)?;
        if maps.len() != q.num_edges() {
            return Err(Error::WrongQuiver {
                expected: q.num_edges(),
                got: maps.len(),
            });
        }
        for (e, m) in maps.iter().enumerate() {
            let edge = q.edge(e);
            let (r, c) = (alpha.at(edge.head).total() as usize, alpha.at(edge.tail).total() as usize);
            if m.len() != r || m.iter().any(|row| row.len() != c) {
                return Err(Error::Format(format!("map of edge `{}` must be {r}×{c}", edge.id)));
            }
        }
        Ok(ConcreteSuperRep { alpha, maps })
    }

    pub fn zero(q: &Quiver, alpha: SuperDimVector) -> Result<Self> {
        let maps = q
            .edges()
            .iter()
            .map(|e| {
                vec![vec![Rational::zero(); alpha.at(e.tail).total() as usize]; alpha.at(e.head).total() as usize]
            })
            .collect();
        ConcreteSuperRep::new(q, alpha, maps)
    }

    /// Entries uniform in `-2..=2`.
    pub fn random<R: Rng>(q: &Quiver, alpha: SuperDimVector, rng: &mut R) -> Result<Self> {
        let maps = q
            .edges()
            .iter()
            .map(|e| {
                (0..alpha.at(e.head).total())
                    .map(|_| (0..alpha.at(e.tail).total()).map(|_| rational(rng.gen_range(-2..=2))).collect())
                    .collect()
            })
            .collect();
        ConcreteSuperRep::new(q, alpha, maps)
    }

    fn dims(&self) -> Vec<usize> {
        self.alpha.0.iter().map(|d| d.total() as usize).collect()
    }
}

/// Dimension of `{φ : W(e)φ(t(e)) = φ(h(e))V(e)}` where `φ(a)` ranges over
/// `dw(a) × dv(a)` matrices whose entry `(i,j)` is allowed by `free`.
fn hom_system<F>(
    q: &Quiver,
    dv: &[usize],
    dw: &[usize],
    v: &[Vec<Vec<Rational>>],
    w: &[Vec<Vec<Rational>>],
    free: F,
) -> usize
where
    F: Fn(usize, usize, usize) -> bool,
{
    let mut unknown: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for a in 0..q.num_vertices() {
        for i in 0..dw[a] {
            for j in 0..dv[a] {
                if free(a, i, j) {
                    let next = unknown.len();
                    unknown.insert((a, i, j), next);
                }
            }
        }
    }
    let mut ech = Echelon::new();
    for (e, edge) in q.edges().iter().enumerate() {
        let (t, h) = (edge.tail, edge.head);
        for i in 0..dw[h] {
            for j in 0..dv[t] {
                let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                for k in 0..dw[t] {
                    if let Some(&u) = unknown.get(&(t, k, j)) {
                        *row.entry(u).or_insert_with(Rational::zero) += &w[e][i][k];
                    }
                }
                for k in 0..dv[h] {
                    if let Some(&u) = unknown.get(&(h, i, k)) {
                        *row.entry(u).or_insert_with(Rational::zero) -= &v[e][k][j];
                    }
                }
                let row: Vec<(usize, Rational)> = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                ech.insert(primitive(&row));
            }
        }
    }
    unknown.len() - ech.rank()
}

/// Parity-preserving homomorphisms `V → W`.
pub fn hom_dim(q: &Quiver, v: &ConcreteSuperRep, w: &ConcreteSuperRep) -> Result<usize> {
    v.alpha.check(q)?;
    w.alpha.check(q)?;
    let free = |a: usize, i: usize, j: usize| w.alpha.at(a).index_parity(i) == v.alpha.at(a).index_parity(j);
    Ok(hom_system(q, &v.dims(), &w.dims(), &v.maps, &w.maps, free))
}

/// `(hom, ext)` with `ext = hom − ⟨sdim V, sdim W⟩`.
pub fn hom_ext_dims(q: &Quiver, v: &ConcreteSuperRep, w: &ConcreteSuperRep) -> Result<(usize, usize)> {
    let hom = hom_dim(q, v, w)?;
    let form = ringel_form(q, &v.alpha, &w.alpha)?;
    let ext = hom as i64 - form;
    if ext < 0 {
        return Err(Error::NegativeExt(ext));
    }
    Ok((hom, ext as usize))
}

/// The ordinary representation of the doubled quiver: vertex `a_i` carries
/// the parity-`i` part, edge `e_ij` the block of `V(e)` from the
/// parity-`i` part at the tail to the parity-`j` part at the head.
pub fn doubled_rep(q: &Quiver, v: &ConcreteSuperRep) -> Result<(Quiver, Vec<usize>, Vec<Vec<Vec<Rational>>>)> {
    let (qt, dims) = double_all(q, &v.alpha)?;
    let range = |a: usize, p: usize| {
        let d = v.alpha.at(a);
        if p == 0 {
            0..d.even as usize
        } else {
            d.even as usize..d.total() as usize
        }
    };
    let mut maps = Vec::with_capacity(4 * q.num_edges());
    for (e, edge) in q.edges().iter().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let block = range(edge.head, j)
                    .map(|r| range(edge.tail, i).map(|c| v.maps[e][r][c].clone()).collect())
                    .collect();
                maps.push(block);
            }
        }
    }
    Ok((qt, dims.into_iter().map(|d| d as usize).collect(), maps))
}

/// Hom dimension computed on the doubled quiver with an unrestricted
/// solver, together with its Euler form, which equals the super form.
pub fn hom_dim_doubled(q: &Quiver, v: &ConcreteSuperRep, w: &ConcreteSuperRep) -> Result<(usize, i64)> {
    let (qt, dv, mv) = doubled_rep(q, v)?;
    let (_, dw, mw) = doubled_rep(q, w)?;
    let hom = hom_system(&qt, &dv, &dw, &mv, &mw, |_, _, _| true);
    let d1: Vec<u32> = dv.iter().map(|&d| d as u32).collect();
    let d2: Vec<u32> = dw.iter().map(|&d| d as u32).collect();
    Ok((hom, euler_form(&qt, &d1, &d2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::examples::{a3, kronecker, loop_quiver, single_vertex, two_cycle};
    use crate::quiver::{ParityVector, SuperDim};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sdv(d: &[(u32, u32)]) -> SuperDimVector {
        SuperDimVector(d.iter().map(|&(p, q)| SuperDim::new(p, q)).collect())
    }

    fn space(q: Quiver, d: &[(u32, u32)]) -> RepSpace {
        RepSpace::unshifted(q, sdv(d)).unwrap()
    }

    fn deg(n: &[u32]) -> MultiDegree {
        MultiDegree(n.to_vec())
    }

    #[test]
    fn basis_sizes() {
        let s = space(loop_quiver(), &[(1, 0)]);
        assert_eq!(component_basis(&s, &deg(&[2])).unwrap().len(), 1);
        let s = space(loop_quiver(), &[(1, 1)]);
        let b = component_basis(&s, &deg(&[1])).unwrap();
        assert_eq!(b.len(), 4);
        let s = space(loop_quiver(), &[(0, 2)]);
        assert_eq!(component_basis(&s, &deg(&[2])).unwrap().len(), 10);
        let s = space(loop_quiver(), &[(1, 1)]);
        assert_eq!(component_basis(&s, &deg(&[0])).unwrap().len(), 1);
    }

    /// Odd variables alone cannot exceed their count.
    #[test]
    fn odd_capacity() {
        let q = kronecker();
        let alpha = sdv(&[(1, 0), (0, 1)]);
        let s = RepSpace::new(q, alpha, ParityVector::zero(&kronecker())).unwrap();
        assert_eq!(component_size(&s, &deg(&[1, 1])).unwrap(), 1);
        assert_eq!(component_size(&s, &deg(&[2, 0])).unwrap(), 0);
        assert!(component_basis(&s, &deg(&[2, 0])).unwrap().is_empty());
    }

    #[test]
    fn kernel_examples() {
        let k = space(kronecker(), &[(1, 1), (1, 1)]);
        assert_eq!(semi_invariant_dim(&k, &deg(&[1, 1]), DEFAULT_CAP).unwrap(), 0);
        assert_eq!(semi_invariant_dim(&k, &deg(&[0, 0]), DEFAULT_CAP).unwrap(), 1);
        let k2 = space(kronecker(), &[(2, 0), (2, 0)]);
        assert_eq!(semi_invariant_dim(&k2, &deg(&[1, 1]), DEFAULT_CAP).unwrap(), 1);
        assert_eq!(invariant_dim(&k2, &deg(&[1, 1]), DEFAULT_CAP).unwrap(), 0);
        let l = space(loop_quiver(), &[(1, 1)]);
        assert_eq!(invariant_dim(&l, &deg(&[1]), DEFAULT_CAP).unwrap(), 1);
        assert_eq!(invariant_dim(&l, &deg(&[0]), DEFAULT_CAP).unwrap(), 1);
    }

    #[test]
    fn span_examples() {
        let l = space(loop_quiver(), &[(1, 1)]);
        assert_eq!(generator_span_dim(&l, &deg(&[2]), 2, DEFAULT_CAP).unwrap(), 2);
        assert_eq!(semi_invariant_dim(&l, &deg(&[2]), DEFAULT_CAP).unwrap(), 2);
        let k = space(kronecker(), &[(1, 1), (1, 1)]);
        assert_eq!(generator_span_dim(&k, &deg(&[1, 1]), 2, DEFAULT_CAP).unwrap(), 0);
        let k2 = space(kronecker(), &[(2, 0), (2, 0)]);
        assert_eq!(generator_span_dim(&k2, &deg(&[1, 1]), 2, DEFAULT_CAP).unwrap(), 1);
        assert_eq!(generator_span_dim(&k2, &deg(&[2, 0]), 2, DEFAULT_CAP).unwrap(), 1);
    }

    #[test]
    fn cap_is_reported() {
        let l = space(loop_quiver(), &[(2, 1)]);
        let r = semi_invariant_dim(&l, &deg(&[3]), 10);
        assert!(matches!(r, Err(Error::ResourceCap { cap: 10, .. })));
        let opts = OracleOptions {
            cap: 10,
            compare_max_len: Some(3),
        };
        let rep = component_report(&l, &deg(&[3]), &opts).unwrap();
        assert_eq!(rep.verdict, ReportVerdict::Inconclusive);
        assert!(rep.csv_row().ends_with("INCONCLUSIVE"));
    }

    #[test]
    fn report_passes_on_loop() {
        let l = space(loop_quiver(), &[(1, 1)]);
        let opts = OracleOptions {
            cap: DEFAULT_CAP,
            compare_max_len: Some(2),
        };
        let rep = component_report(&l, &deg(&[2]), &opts).unwrap();
        assert_eq!(rep.verdict, ReportVerdict::Pass);
        assert_eq!(rep.csv_row(), "\"(2)\",8,2,2,2,PASS");
    }

    #[test]
    fn two_cycle_degree_two() {
        let s = space(two_cycle(), &[(1, 1), (1, 1)]);
        let n = deg(&[1, 1]);
        let ssi = semi_invariant_dim(&s, &n, DEFAULT_CAP).unwrap();
        assert_eq!(generator_span_dim(&s, &n, 2, DEFAULT_CAP).unwrap(), ssi);
    }

    #[test]
    fn hom_ext_examples() {
        let q = single_vertex();
        let v = ConcreteSuperRep::zero(&q, sdv(&[(1, 0)])).unwrap();
        assert_eq!(hom_ext_dims(&q, &v, &v).unwrap(), (1, 0));

        let q = kronecker();
        let one = vec![vec![rational(1)]];
        let v = ConcreteSuperRep::new(&q, sdv(&[(1, 0), (1, 0)]), vec![one.clone(), one]).unwrap();
        assert_eq!(hom_ext_dims(&q, &v, &v).unwrap(), (1, 1));

        let q = loop_quiver();
        let v = ConcreteSuperRep::zero(&q, sdv(&[(1, 1)])).unwrap();
        assert_eq!(hom_ext_dims(&q, &v, &v).unwrap(), (2, 4));
    }

    #[test]
    fn doubled_count_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (q, alpha) in [
            (kronecker(), sdv(&[(1, 1), (2, 1)])),
            (loop_quiver(), sdv(&[(2, 1)])),
            (a3(), sdv(&[(1, 1), (0, 2), (1, 0)])),
        ] {
            let v = ConcreteSuperRep::random(&q, alpha.clone(), &mut rng).unwrap();
            let w = ConcreteSuperRep::random(&q, alpha.clone(), &mut rng).unwrap();
            let (hom, form) = hom_dim_doubled(&q, &v, &w).unwrap();
            assert_eq!(hom, hom_dim(&q, &v, &w).unwrap());
            assert_eq!(form, ringel_form(&q, &v.alpha, &w.alpha).unwrap());
        }
    }
}

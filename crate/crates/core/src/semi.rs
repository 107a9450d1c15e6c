//! Generating semi-invariants: supertraces of closed paths and
//! determinant-like semi-invariants; polarization and the normalization
//! substitution.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lie::Weight;
use crate::quiver::{polarize_quiver, MultiDegree, Normalized, Parity, Path};
use crate::ring::{Monomial, Polynomial, Rational, Var};
use crate::space::RepSpace;
use crate::supermatrix::determinant;

/// `str(X(p))` for a closed path `p`.
pub fn strace_invariant(space: &RepSpace, p: &Path) -> Result<Polynomial> {
    if !p.is_closed() {
        return Err(Error::OpenPath);
    }
    space.path_product(p)?.supertrace()
}

/// One block of a det-like matrix: rows of copy `sink.1` of sink number
/// `sink.0`, columns of copy `source.1` of source number `source.0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetBlock {
    pub sink: (usize, u32),
    pub source: (usize, u32),
    pub terms: Vec<(Polynomial, Path)>,
}

/// Sinks `a_i` with multiplicities `q_i`, sources `c_j` with multiplicities
/// `r_j`, and the nonzero blocks. Coefficients are even central scalars:
/// rationals or parameter polynomials.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DetLikeSpec {
    pub sinks: Vec<(usize, u32)>,
    pub sources: Vec<(usize, u32)>,
    pub blocks: Vec<DetBlock>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetLike {
    pub det: Polynomial,
    pub components: Vec<(MultiDegree, Polynomial)>,
    pub weight: Weight,
}

/// The parity of every index at `a` after the shift, if `V(a)` is nonzero
/// and extremal. Det-like specs need one common class so that all entries
/// of the block matrix are even.
pub fn detlike_class(space: &RepSpace, a: usize) -> Option<Parity> {
    let shifted = space.sdim(a).shifted(space.parity().at(a));
    match (shifted.even, shifted.odd) {
        (0, 0) => None,
        (_, 0) => Some(Parity::Even),
        (0, _) => Some(Parity::Odd),
        _ => None,
    }
}

/// `+1` when `V(a)` is purely even, `−1` when purely odd; `Ber` restricts
/// to `det` or `det⁻¹` accordingly.
fn ber_sign(space: &RepSpace, a: usize) -> i64 {
    if space.sdim(a).odd == 0 {
        1
    } else {
        -1
    }
}

impl DetLikeSpec {
    /// Total size `t = Σ d(a_i) q_i`.
    pub fn size(&self, space: &RepSpace) -> usize {
        self.sinks
            .iter()
            .map(|&(a, q)| space.dim(a) * q as usize)
            .sum()
    }

    pub fn validate(&self, space: &RepSpace) -> Result<()> {
        let q = space.quiver();
        if self.sinks.is_empty() || self.sources.is_empty() {
            return Err(Error::DetLike("needs at least one sink and one source".into()));
        }
        let mut class = None;
        let ends = self.sinks.iter().map(|&(a, m)| (a, m, true));
        for (a, m, sink) in ends.chain(self.sources.iter().map(|&(c, m)| (c, m, false))) {
            let id = q.vertex_id(a);
            if sink && q.out_degree(a) != 0 {
                return Err(Error::DetLike(format!("`{id}` is not a sink")));
            }
            if !sink && q.in_degree(a) != 0 {
                return Err(Error::DetLike(format!("`{id}` is not a source")));
            }
            if m == 0 {
                return Err(Error::DetLike(format!("`{id}` needs positive multiplicity")));
            }
            let Some(c) = detlike_class(space, a) else {
                return Err(Error::DetLike(format!("`{id}` is not a nonzero extremal vertex")));
            };
            if *class.get_or_insert(c) != c {
                return Err(Error::DetLike(format!("`{id}` has the opposite shifted parity")));
            }
        }
        let t_rows = self.size(space);
        let t_cols: usize = self
            .sources
            .iter()
            .map(|&(c, r)| space.dim(c) * r as usize)
            .sum();
        if t_rows != t_cols {
            return Err(Error::DetLike(format!("unbalanced: {t_rows} rows, {t_cols} columns")));
        }
        for b in &self.blocks {
            let (i, ci) = b.sink;
            let (j, cj) = b.source;
            if i >= self.sinks.len() || j >= self.sources.len() {
                return Err(Error::DetLike("block refers to an unlisted vertex".into()));
            }
            if ci == 0 || ci > self.sinks[i].1 || cj == 0 || cj > self.sources[j].1 {
                return Err(Error::DetLike("block copy out of range".into()));
            }
            let (a, c) = (self.sinks[i].0, self.sources[j].0);
            for (coef, p) in &b.terms {
                if p.head(q) != a || p.tail(q) != c {
                    return Err(Error::DetLike(format!(
                        "path {} does not run from `{}` to `{}`",
                        p.display(q),
                        q.vertex_id(c),
                        q.vertex_id(a)
                    )));
                }
                if coef.has_odd_vars() || coef.vars().iter().any(|v| !v.is_param()) {
                    return Err(Error::DetLike("block coefficients must be scalars".into()));
                }
            }
        }
        Ok(())
    }

    /// `+q_i` at each sink and `−r_j` at each source, with the sign reversed
    /// at purely odd vertices.
    pub fn weight(&self, space: &RepSpace) -> Weight {
        let mut w = Weight::zero(space.quiver());
        for &(a, m) in &self.sinks {
            w.0[a] += ber_sign(space, a) * m as i64;
        }
        for &(c, m) in &self.sources {
            w.0[c] -= ber_sign(space, c) * m as i64;
        }
        w
    }

    /// The `t × t` matrix of polynomials.
    pub fn matrix(&self, space: &RepSpace) -> Result<Vec<Vec<Polynomial>>> {
        self.validate(space)?;
        let offsets = |list: &[(usize, u32)]| {
            let mut out = BTreeMap::new();
            let mut at = 0;
            for (i, &(v, m)) in list.iter().enumerate() {
                for copy in 1..=m {
                    out.insert((i, copy), at);
                    at += space.dim(v);
                }
            }
            out
        };
        let rows = offsets(&self.sinks);
        let cols = offsets(&self.sources);
        let t = self.size(space);
        let mut m = vec![vec![Polynomial::zero(); t]; t];
        for b in &self.blocks {
            let (r0, c0) = (rows[&b.sink], cols[&b.source]);
            for (coef, p) in &b.terms {
                let x = space.path_product(p)?;
                for i in 0..x.nrows() {
                    for j in 0..x.ncols() {
                        let add = coef * x.get(i, j);
                        m[r0 + i][c0 + j] = &m[r0 + i][c0 + j] + &add;
                    }
                }
            }
        }
        Ok(m)
    }
}

/// Determinant of the det-like matrix with its multihomogeneous components
/// in the quiver variables (lexicographic in the multidegree).
pub fn detlike_semi_invariant(space: &RepSpace, spec: &DetLikeSpec) -> Result<DetLike> {
    let m = spec.matrix(space)?;
    let det = determinant(&m)?;
    let components = det.components(space.num_edges()).into_iter().collect();
    Ok(DetLike {
        det,
        components,
        weight: spec.weight(space),
    })
}

/// The space of the `n`-polarized quiver, with the origin of each new edge.
pub fn polarized_space(space: &RepSpace, n: &MultiDegree) -> Result<(RepSpace, Vec<(usize, u32)>)> {
    let (q, origin) = polarize_quiver(space.quiver(), n)?;
    let s = RepSpace::new(q, space.alpha().clone(), space.parity().clone())?;
    Ok((s, origin))
}

/// Coefficient of `Π t(e_i)^{s(e_i)}` in `f(X(e) ↦ Σ_i t(e_i) X(e_i))`; the
/// result lives on the polarized space.
pub fn polarize(space: &RepSpace, f: &Polynomial, s: &[u32]) -> Result<(RepSpace, Polynomial)> {
    let n = f
        .multidegree(space.num_edges())
        .ok_or_else(|| Error::MultiDegree("polynomial is not multihomogeneous".into()))?;
    let (pspace, origin) = polarized_space(space, &n)?;
    if s.len() != origin.len() {
        return Err(Error::MultiDegree(format!(
            "refinement has {} entries, polarized quiver has {} edges",
            s.len(),
            origin.len()
        )));
    }
    let mut sums = vec![0u32; space.num_edges()];
    for (k, &(e, _)) in origin.iter().enumerate() {
        sums[e] += s[k];
    }
    if sums != n.0 {
        return Err(Error::MultiDegree("refinement does not sum to the degree".into()));
    }
    let copies: Vec<Vec<usize>> = (0..space.num_edges())
        .map(|e| (0..origin.len()).filter(|&k| origin[k].0 == e).collect())
        .collect();
    let substituted = f.substitute(|v| {
        let mut img = Polynomial::zero();
        for &k in &copies[v.edge as usize] {
            let x = Var::new(k, v.row as usize, v.col as usize, v.parity);
            img = &img + &Polynomial::product_of(Rational::one(), &[Var::param(k), x]);
        }
        Some(img)
    });
    let key: Vec<(Var, u32)> = s
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| (Var::param(i), k))
        .collect();
    let key = Monomial::from_vars(
        &key.iter()
            .flat_map(|&(v, k)| std::iter::repeat_n(v, k as usize))
            .collect::<Vec<_>>(),
    )
    .map(|(m, _)| m)
    .unwrap_or_default();
    let out = substituted
        .param_coefficients()
        .remove(&key)
        .unwrap_or_default();
    Ok((pspace, out))
}

/// Sends every copy `e_i` back to `e`.
pub fn restitute(pspace_origin: &[(usize, u32)], f: &Polynomial) -> Polynomial {
    f.substitute(|v| {
        let (e, _) = pspace_origin[v.edge as usize];
        Some(Polynomial::var(Var::new(e, v.row as usize, v.col as usize, v.parity)))
    })
}

/// Identity `(⋆)`: polarize fully along `T`, restitute, compare with
/// `(Π_{e∈T} n_e!)·f`. Returns the verdict and the factor.
pub fn linearize_and_restitute_check(
    space: &RepSpace,
    f: &Polynomial,
    t: &[usize],
) -> Result<(bool, Rational)> {
    let n = f
        .multidegree(space.num_edges())
        .ok_or_else(|| Error::MultiDegree("polynomial is not multihomogeneous".into()))?;
    let mut s = Vec::new();
    let mut factor = Rational::one();
    for e in 0..space.num_edges() {
        let ne = n.0[e];
        if t.contains(&e) {
            s.extend(std::iter::repeat_n(1, ne as usize));
            for k in 2..=ne {
                factor *= Rational::from_integer(k.into());
            }
        } else {
            for i in 0..ne {
                s.push(if i == 0 { ne } else { 0 });
            }
        }
    }
    let (_, origin) = polarized_space(space, &n)?;
    let (_, p) = polarize(space, f, &s)?;
    let back = restitute(&origin, &p);
    Ok((back == f.scale(&factor), factor))
}

/// Substitutes the identity for `X(e(a))` and drops the new vertex; the
/// remaining variables keep their indices.
pub fn reduce_normalized(norm: &Normalized, f: &Polynomial) -> Result<Polynomial> {
    let e_a = norm.new_edge;
    let edge = norm.quiver.edge(e_a);
    if norm.alpha.at(edge.head) != norm.alpha.at(edge.tail) {
        return Err(Error::Format("normalizing edge is not square".into()));
    }
    let out = f.substitute(|v| {
        (v.edge as usize == e_a).then(|| {
            if v.row == v.col {
                debug_assert_eq!(v.parity, Parity::Even);
                Polynomial::one()
            } else {
                Polynomial::zero()
            }
        })
    });
    Ok(out)
}

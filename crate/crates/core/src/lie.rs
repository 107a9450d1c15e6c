//! The infinitesimal action of `gl(α) = ⊕_a gl(α(a))` on the coordinate
//! ring, invariance and weight checks, and finite group-point tests.
//!
//! The generator `E_kl` at vertex `a` acts as the derivative of the
//! substitution `X(e) ↦ g(h(e)) X(e) g(t(e))⁻¹` at `g = 1 + εE_kl`:
//!
//! `D x_ij(e) = [h(e)=a] δ_ik x_lj(e) − [t(e)=a] (−1)^{|E|·|x_ik(e)|} δ_lj x_ik(e)`
//!
//! extended to products as a superderivation.

use std::collections::HashMap;
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::quiver::{Parity, Quiver, SuperDim};
use crate::ring::text::format_polynomial;
use crate::ring::{rational, GrassmannAlgebra, GrassmannElement, Polynomial, Rational, SuperRing, Var};
use crate::space::RepSpace;
use crate::supermatrix::{SuperFormat, SuperMatrix};

/// Elementary matrix `E_kl` (0-based) at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieBasisElement {
    pub vertex: usize,
    pub k: usize,
    pub l: usize,
}

impl LieBasisElement {
    pub fn new(vertex: usize, k: usize, l: usize) -> Self {
        LieBasisElement { vertex, k, l }
    }

    /// `blockpar(k) + blockpar(l)` in the unshifted format.
    pub fn parity(&self, space: &RepSpace) -> Parity {
        let d = space.sdim(self.vertex);
        d.index_parity(self.k) + d.index_parity(self.l)
    }

    /// `str(E_kl)`.
    pub fn supertrace(&self, space: &RepSpace) -> i64 {
        if self.k != self.l {
            0
        } else {
            block_sign(space.sdim(self.vertex), self.k)
        }
    }

    pub fn label(&self, q: &Quiver) -> String {
        format!("E[{},{}]@{}", self.k + 1, self.l + 1, q.vertex_id(self.vertex))
    }
}

fn block_sign(d: SuperDim, k: usize) -> i64 {
    match d.index_parity(k) {
        Parity::Even => 1,
        Parity::Odd => -1,
    }
}

/// Homogeneous integer combination of elementary matrices at one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    pub vertex: usize,
    pub terms: Vec<(usize, usize, i64)>,
}

impl LieElement {
    pub fn basis(e: LieBasisElement) -> Self {
        LieElement {
            vertex: e.vertex,
            terms: vec![(e.k, e.l, 1)],
        }
    }

    pub fn parity(&self, space: &RepSpace) -> Parity {
        let (k, l, _) = self.terms[0];
        LieBasisElement::new(self.vertex, k, l).parity(space)
    }

    pub fn supertrace(&self, space: &RepSpace) -> i64 {
        self.terms
            .iter()
            .map(|&(k, l, c)| c * LieBasisElement::new(self.vertex, k, l).supertrace(space))
            .sum()
    }

    pub fn label(&self, q: &Quiver) -> String {
        if let [(k, l, 1)] = self.terms[..] {
            return LieBasisElement::new(self.vertex, k, l).label(q);
        }
        let body: Vec<String> = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, &(k, l, c))| {
                let sign = match (i, c < 0) {
                    (0, false) => "",
                    (0, true) => "-",
                    (_, false) => "+",
                    (_, true) => "-",
                };
                let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
                format!("{sign}{mag}E[{},{}]", k + 1, l + 1)
            })
            .collect();
        format!("({})@{}", body.concat(), q.vertex_id(self.vertex))
    }
}

/// Images of all variables under the derivation of `gen`; variables with
/// zero image are omitted.
pub fn action_images(space: &RepSpace, gen: &LieElement) -> HashMap<Var, Polynomial> {
    let q = space.quiver();
    let a = gen.vertex;
    let pi = gen.parity(space);
    let mut out: HashMap<Var, Polynomial> = HashMap::new();
    let mut add = |v: Var, p: Polynomial| {
        let slot = out.entry(v).or_default();
        *slot = &*slot + &p;
    };
    for (e, edge) in q.edges().iter().enumerate() {
        let (rows, cols) = (space.dim(edge.head), space.dim(edge.tail));
        for &(k, l, c) in &gen.terms {
            let c = rational(c);
            if edge.head == a {
                for j in 0..cols {
                    let img = Polynomial::var(space.var(e, l, j)).scale(&c);
                    add(space.var(e, k, j), img);
                }
            }
            if edge.tail == a {
                for i in 0..rows {
                    let src = space.var(e, i, k);
                    let sign = if pi.is_odd() && src.is_odd() { c.clone() } else { -c.clone() };
                    add(space.var(e, i, l), Polynomial::var(src).scale(&sign));
                }
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// A Lie element acting as a superderivation.
#[derive(Debug, Clone)]
pub struct Derivation {
    pub element: LieElement,
    pub parity: Parity,
    images: HashMap<Var, Polynomial>,
}

impl Derivation {
    pub fn new(space: &RepSpace, element: LieElement) -> Self {
        let images = action_images(space, &element);
        let parity = element.parity(space);
        Derivation {
            element,
            parity,
            images,
        }
    }

    pub fn images(&self) -> &HashMap<Var, Polynomial> {
        &self.images
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        f.apply_derivation(self.parity, |v| self.images.get(v).cloned())
    }
}

/// All `E_kl` at every vertex.
pub fn gl_basis(space: &RepSpace) -> Vec<LieElement> {
    let mut out = Vec::new();
    for a in 0..space.quiver().num_vertices() {
        let d = space.dim(a);
        for k in 0..d {
            for l in 0..d {
                out.push(LieElement::basis(LieBasisElement::new(a, k, l)));
            }
        }
    }
    out
}

/// Basis of the supertrace-zero subalgebra: off-diagonal `E_kl` and
/// `E_kk − ε E_{k+1,k+1}` with `ε = str(E_kk)·str(E_{k+1,k+1})`.
pub fn sl_basis(space: &RepSpace) -> Vec<LieElement> {
    let mut out = Vec::new();
    for a in 0..space.quiver().num_vertices() {
        let d = space.dim(a);
        let sd = space.sdim(a);
        for k in 0..d {
            for l in 0..d {
                if k != l {
                    out.push(LieElement::basis(LieBasisElement::new(a, k, l)));
                }
            }
        }
        for k in 0..d.saturating_sub(1) {
            let eps = block_sign(sd, k) * block_sign(sd, k + 1);
            out.push(LieElement {
                vertex: a,
                terms: vec![(k, k, 1), (k + 1, k + 1, -eps)],
            });
        }
    }
    out
}

/// Exponents of `Ber_{α(a)}` per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(q: &Quiver) -> Self {
        Weight(vec![0; q.num_vertices()])
    }

    pub fn at(&self, a: usize) -> i64 {
        self.0[a]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> impl fmt::Display + 'a {
        DisplayWeight(self, q)
    }
}

struct DisplayWeight<'a>(&'a Weight, &'a Quiver);

impl fmt::Display for DisplayWeight<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, c) in self.0 .0.iter().enumerate() {
            if a > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}={c:+}", self.1.vertex_id(a))?;
        }
        Ok(())
    }
}

/// Outcome of an invariance or weight check.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Invariant,
    Weight(Weight),
    Fail { generator: String, residual: Polynomial },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Fail { .. })
    }

    pub fn render(&self, space: &RepSpace) -> String {
        match self {
            Verdict::Invariant => "INVARIANT".into(),
            Verdict::Weight(w) => format!("WEIGHT {}", w.display(space.quiver())),
            Verdict::Fail {
                generator,
                residual,
            } => format!(
                "FAIL gen={generator} residual={}",
                format_polynomial(residual, space)
            ),
        }
    }
}

/// Checks `D f = w(a)·str(D)·f` for every given generator; stops at the
/// first failure.
fn check_against(space: &RepSpace, f: &Polynomial, w: &Weight, gens: &[LieElement]) -> Verdict {
    for g in gens {
        let d = Derivation::new(space, g.clone());
        let lhs = d.apply(f);
        let c = w.at(g.vertex) * g.supertrace(space);
        let residual = &lhs - &f.scale(&rational(c));
        if !residual.is_zero() {
            return Verdict::Fail {
                generator: g.label(space.quiver()),
                residual,
            };
        }
    }
    if w.is_zero() {
        Verdict::Invariant
    } else {
        Verdict::Weight(w.clone())
    }
}

/// Annihilation by every element of the sl basis.
pub fn check_sl_invariant(space: &RepSpace, f: &Polynomial) -> Verdict {
    check_against(space, f, &Weight::zero(space.quiver()), &sl_basis(space))
}

pub fn is_sl_invariant(space: &RepSpace, f: &Polynomial) -> bool {
    check_sl_invariant(space, f).passed()
}

/// Annihilation by all of `gl(α)`.
pub fn check_gl_invariant(space: &RepSpace, f: &Polynomial) -> Verdict {
    check_against(space, f, &Weight::zero(space.quiver()), &gl_basis(space))
}

pub fn check_weight(space: &RepSpace, f: &Polynomial, w: &Weight) -> Result<Verdict> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if w.0.len() != space.quiver().num_vertices() {
        return Err(Error::WrongQuiver {
            expected: space.quiver().num_vertices(),
            got: w.0.len(),
        });
    }
    Ok(check_against(space, f, w, &gl_basis(space)))
}

/// Reads off the weight from the diagonal generators: `D_{E_kk@a} f` must
/// equal `str(E_kk)·c_a·f` for one integer `c_a` per vertex.
pub fn weight_of(space: &RepSpace, f: &Polynomial) -> Result<Option<Weight>> {
    let (lead, lead_c) = f.terms().next().ok_or(Error::ZeroPolynomial)?;
    let mut w = Vec::new();
    for a in 0..space.quiver().num_vertices() {
        let mut c_a: Option<Rational> = None;
        for k in 0..space.dim(a) {
            let d = Derivation::new(space, LieElement::basis(LieBasisElement::new(a, k, k)));
            let df = d.apply(f);
            let ratio = df.coefficient(lead) / lead_c;
            if df != f.scale(&ratio) {
                return Ok(None);
            }
            let c = ratio * rational(block_sign(space.sdim(a), k));
            match &c_a {
                None => c_a = Some(c),
                Some(prev) if *prev == c => {}
                Some(_) => return Ok(None),
            }
        }
        let c = c_a.unwrap_or_else(<Rational as Zero>::zero);
        if !c.is_integer() {
            return Ok(None);
        }
        w.push(c.to_integer().to_i64().ok_or_else(|| Error::Invalid("weight overflow".into()))?);
    }
    Ok(Some(Weight(w)))
}

/// Commutator `[E₁, E₂] = E₁E₂ − (−1)^{|E₁||E₂|} E₂E₁` of elementary
/// matrices at one vertex.
pub fn bracket(space: &RepSpace, x: LieBasisElement, y: LieBasisElement) -> LieElement {
    let sign = if x.parity(space).is_odd() && y.parity(space).is_odd() { 1 } else { -1 };
    let mut terms = Vec::new();
    if x.l == y.k {
        terms.push((x.k, y.l, 1));
    }
    if y.l == x.k {
        terms.push((y.k, x.l, sign));
    }
    LieElement {
        vertex: x.vertex,
        terms,
    }
}

/// Grassmann point of the group `GL(α)` together with a point of the
/// representation space.
#[derive(Debug, Clone)]
pub struct GroupPoint {
    pub g: Vec<SuperMatrix<GrassmannElement>>,
    pub x: HashMap<Var, GrassmannElement>,
}

impl GroupPoint {
    /// Random invertible `g(a)` (even blocks with small integer bodies,
    /// nilpotent odd blocks) and random point `x`.
    pub fn random<R: Rng>(space: &RepSpace, alg: &GrassmannAlgebra, rng: &mut R) -> Self {
        let g = (0..space.quiver().num_vertices())
            .map(|a| random_group_element(space.sdim(a), alg, rng))
            .collect();
        let x = space
            .vars()
            .into_iter()
            .map(|v| (v, alg.random(rng, v.parity, true)))
            .collect();
        GroupPoint { g, x }
    }
}

pub fn random_group_element<R: Rng>(
    d: SuperDim,
    alg: &GrassmannAlgebra,
    rng: &mut R,
) -> SuperMatrix<GrassmannElement> {
    loop {
        let m = SuperMatrix::from_fn(SuperFormat::square(d), Parity::Even, |i, j| {
            alg.random(rng, d.index_parity(i) + d.index_parity(j), true)
        })
        .expect("homogeneous by construction");
        if m.inverse().is_ok() && m.berezinian().is_ok() {
            return m;
        }
    }
}

/// Checks `f(g·x) = Π_a Ber(g(a))^{w(a)} f(x)` with
/// `(g·x)(e) = g(h(e)) x(e) g(t(e))⁻¹`.
pub fn group_point_test(
    space: &RepSpace,
    f: &Polynomial,
    w: &Weight,
    point: &GroupPoint,
) -> Result<bool> {
    let q = space.quiver();
    let inverses = point
        .g
        .iter()
        .map(SuperMatrix::inverse)
        .collect::<Result<Vec<_>>>()?;
    let mut moved: HashMap<Var, GrassmannElement> = HashMap::new();
    for (e, edge) in q.edges().iter().enumerate() {
        let (format, parity) = space.edge_format(e);
        let xe = SuperMatrix::from_fn(format, parity, |i, j| point.x[&space.var(e, i, j)].clone())?;
        let ge = point.g[edge.head].mul(&xe)?.mul(&inverses[edge.tail])?;
        for i in 0..ge.nrows() {
            for j in 0..ge.ncols() {
                moved.insert(space.var(e, i, j), ge.get(i, j).clone());
            }
        }
    }
    let lhs: GrassmannElement = f.evaluate(|v| moved.get(v).cloned())?;
    let fx: GrassmannElement = f.evaluate(|v| point.x.get(v).cloned())?;
    let mut factor = GrassmannElement::one();
    for (a, g) in point.g.iter().enumerate() {
        let ber = g.berezinian()?;
        let c = w.at(a);
        let base = if c < 0 {
            ber.try_inverse()
                .ok_or_else(|| Error::NotInvertible("Berezinian".into()))?
        } else {
            ber
        };
        for _ in 0..c.abs() {
            factor = factor.times(&base);
        }
    }
    Ok(lhs == factor.times(&fx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::examples::{kronecker, loop_quiver, single_vertex};
    use crate::quiver::{Path, SuperDimVector};
    use crate::ring::text::parse_polynomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn kron20() -> RepSpace {
        let q = kronecker();
        RepSpace::unshifted(q.clone(), SuperDimVector::uniform(&q, SuperDim::new(2, 0))).unwrap()
    }

    fn det_e1(s: &RepSpace) -> Polynomial {
        s.generic_matrix(0).unwrap().determinant().unwrap()
    }

    #[test]
    fn row_scaling_at_head() {
        let s = kron20();
        let b = s.quiver().vertex("b").unwrap();
        let imgs = action_images(&s, &LieElement::basis(LieBasisElement::new(b, 0, 0)));
        for j in 0..2 {
            assert_eq!(imgs[&s.var(0, 0, j)], Polynomial::var(s.var(0, 0, j)));
            assert!(!imgs.contains_key(&s.var(0, 1, j)));
        }
    }

    #[test]
    fn loop_diagonal_cancels() {
        let q = loop_quiver();
        let s = RepSpace::unshifted(q.clone(), SuperDimVector::uniform(&q, SuperDim::new(1, 1))).unwrap();
        let imgs = action_images(&s, &LieElement::basis(LieBasisElement::new(0, 0, 0)));
        assert!(!imgs.contains_key(&s.var(0, 0, 0)));
    }

    #[test]
    fn isolated_vertex_acts_trivially() {
        let q = single_vertex();
        let s = RepSpace::unshifted(q.clone(), SuperDimVector::uniform(&q, SuperDim::new(1, 1))).unwrap();
        for g in gl_basis(&s) {
            assert!(action_images(&s, &g).is_empty());
        }
    }

    #[test]
    fn sl_basis_size() {
        let q = kronecker();
        let s = RepSpace::unshifted(q, SuperDimVector(vec![SuperDim::new(2, 1), SuperDim::new(1, 2)])).unwrap();
        let basis = sl_basis(&s);
        assert_eq!(basis.len(), 16);
        assert!(basis.iter().all(|g| g.supertrace(&s) == 0));
    }

    #[test]
    fn determinant_weight() {
        let s = kron20();
        let f = det_e1(&s);
        assert_eq!(weight_of(&s, &f).unwrap(), Some(Weight(vec![-1, 1])));
        assert!(check_weight(&s, &f, &Weight(vec![-1, 1])).unwrap().passed());
        assert!(!check_weight(&s, &f, &Weight(vec![0, 0])).unwrap().passed());
        let bad = &Polynomial::var(s.var(0, 0, 0)) + &Polynomial::one();
        assert_eq!(weight_of(&s, &bad).unwrap(), None);
    }

    #[test]
    fn single_entry_not_invariant() {
        let s = kron20();
        let f = Polynomial::var(s.var(0, 0, 0));
        let v = check_sl_invariant(&s, &f);
        assert!(!v.passed());
        assert!(v.render(&s).starts_with("FAIL gen=E["));
        assert!(is_sl_invariant(&s, &Polynomial::constant(rational(3))));
    }

    #[test]
    fn strace_invariant_loop() {
        let q = loop_quiver();
        let s = RepSpace::unshifted(q.clone(), SuperDimVector::uniform(&q, SuperDim::new(2, 1))).unwrap();
        for len in 1..=3 {
            let p = Path::new(&q, vec![0; len]).unwrap();
            let f = s.path_product(&p).unwrap().supertrace().unwrap();
            assert_eq!(check_gl_invariant(&s, &f), Verdict::Invariant);
        }
    }

    #[test]
    fn bracket_is_reversed_commutator() {
        let q = loop_quiver();
        let s = RepSpace::unshifted(q.clone(), SuperDimVector::uniform(&q, SuperDim::new(2, 1))).unwrap();
        let f = parse_polynomial("x[e,1,2] * x[e,2,1] + x[e,1,3] * x[e,3,1] + x[e,1,1]^2", &s).unwrap();
        let e = |k, l| LieBasisElement::new(0, k, l);
        for (x, y) in [(e(0, 1), e(1, 0)), (e(0, 1), e(1, 1)), (e(0, 2), e(2, 0)), (e(0, 2), e(2, 1))] {
            let dx = Derivation::new(&s, LieElement::basis(x));
            let dy = Derivation::new(&s, LieElement::basis(y));
            let sign = if dx.parity.is_odd() && dy.parity.is_odd() { -1 } else { 1 };
            let comm = &dy.apply(&dx.apply(&f)) + &dx.apply(&dy.apply(&f)).scale(&rational(-sign));
            let db = Derivation::new(&s, bracket(&s, x, y));
            assert_eq!(comm, db.apply(&f));
        }
    }

    #[test]
    fn group_points_scale_determinant() {
        let s = kron20();
        let f = det_e1(&s);
        let alg = GrassmannAlgebra::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut point = GroupPoint::random(&s, &alg, &mut rng);
        let one = GrassmannElement::scalar(rational(1));
        let zero = GrassmannElement::zero();
        let diag = |c: i64| {
            SuperMatrix::new(
                SuperFormat::square(SuperDim::new(2, 0)),
                Parity::Even,
                vec![vec![GrassmannElement::scalar(rational(c)), zero.clone()], vec![zero.clone(), one.clone()]],
            )
            .unwrap()
        };
        point.g = vec![diag(1), diag(2)];
        assert!(group_point_test(&s, &f, &Weight(vec![-1, 1]), &point).unwrap());
        assert!(!group_point_test(&s, &f, &Weight(vec![0, 0]), &point).unwrap());
        for _ in 0..5 {
            let point = GroupPoint::random(&s, &alg, &mut rng);
            assert!(group_point_test(&s, &f, &Weight(vec![-1, 1]), &point).unwrap());
        }
    }

    #[test]
    fn group_points_fix_supertraces() {
        let q = loop_quiver();
        let s = RepSpace::unshifted(q.clone(), SuperDimVector::uniform(&q, SuperDim::new(1, 1))).unwrap();
        let alg = GrassmannAlgebra::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for len in 1..=3 {
            let p = Path::new(&q, vec![0; len]).unwrap();
            let f = s.path_product(&p).unwrap().supertrace().unwrap();
            for _ in 0..3 {
                let point = GroupPoint::random(&s, &alg, &mut rng);
                assert!(group_point_test(&s, &f, &Weight::zero(&q), &point).unwrap());
            }
        }
    }
}

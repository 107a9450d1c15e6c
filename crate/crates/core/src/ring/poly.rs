use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Rational, Var};
use crate::error::{Error, Result};
use crate::quiver::{MultiDegree, Parity};

/// Canonical monomial: factors sorted by variable order, odd variables with
/// exponent exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from factors that are already sorted and valid.
    pub(crate) fn from_sorted(factors: Vec<(Var, u32)>) -> Monomial {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|(v, k)| *k > 0 && (!v.is_odd() || *k == 1)));
        Monomial(factors)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, k)| k).sum()
    }

    pub fn parity(&self) -> Parity {
        if self.0.iter().filter(|(v, _)| v.is_odd()).count() % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    /// Per-edge degree; parameters are ignored.
    pub fn multidegree(&self, num_edges: usize) -> MultiDegree {
        let mut n = MultiDegree::zero(num_edges);
        for (v, k) in &self.0 {
            if !v.is_param() {
                n.0[v.edge as usize] += k;
            }
        }
        n
    }

    /// Product `self · other`. Returns `None` when an odd variable repeats,
    /// otherwise the canonical monomial and whether the Koszul sign is `-1`.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut negate = false;
        let mut odd_a_left = a.iter().filter(|(v, _)| v.is_odd()).count();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    if a[i].0.is_odd() {
                        odd_a_left -= 1;
                    }
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    // b[j] moves left past every odd factor of `self` still pending
                    if b[j].0.is_odd() && odd_a_left % 2 == 1 {
                        negate = !negate;
                    }
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    if a[i].0.is_odd() {
                        return None;
                    }
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((Monomial(out), negate))
    }

    /// The ordered product `v₁·v₂⋯v_l` brought to canonical form.
    pub fn from_vars(vars: &[Var]) -> Option<(Monomial, bool)> {
        let mut acc = Monomial::one();
        let mut negate = false;
        for v in vars {
            let (m, s) = acc.mul(&Monomial::var(*v))?;
            acc = m;
            negate ^= s;
        }
        Some((acc, negate))
    }

    /// Splits off the parameter factors: `(params, rest)`. Parameters are
    /// even and central, so no sign arises.
    pub fn split_params(&self) -> (Monomial, Monomial) {
        let (p, r): (Vec<_>, Vec<_>) = self.0.iter().partition(|(v, _)| v.is_param());
        (Monomial(p), Monomial(r))
    }

    fn split_parity(&self) -> (Vec<(Var, u32)>, Vec<(Var, u32)>) {
        self.0.iter().partition(|(v, _)| v.is_odd())
    }
}

/// Graded lexicographic comparison of purely even factor lists.
fn grlex(a: &[(Var, u32)], b: &[(Var, u32)]) -> Ordering {
    let da: u32 = a.iter().map(|x| x.1).sum();
    let db: u32 = b.iter().map(|x| x.1).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            if x.0 != y.0 {
                // the side holding the smaller variable has the larger exponent there
                return if x.0 < y.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            if x.1 != y.1 {
                return x.1.cmp(&y.1);
            }
        }
        a.len().cmp(&b.len())
    })
}

/// Element of the supercommutative polynomial ring with rational
/// coefficients. No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Polynomial {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// `c · v₁ ⋯ v_l` for factors in the given (arbitrary) order.
    pub fn product_of(c: Rational, vars: &[Var]) -> Polynomial {
        match Monomial::from_vars(vars) {
            Some((m, neg)) => Polynomial::term(m, if neg { -c } else { c }),
            None => Polynomial::zero(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Multiplication that first checks that no variable slot occurs with
    /// two different parities.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        let mine: HashMap<(u32, u32, u32), Parity> = self
            .vars()
            .into_iter()
            .map(|v| ((v.edge, v.row, v.col), v.parity))
            .collect();
        for v in other.vars() {
            if let Some(p) = mine.get(&(v.edge, v.row, v.col)) {
                if *p != v.parity {
                    return Err(Error::IncompatibleContext(format!(
                        "variable ({}, {}, {}) has both parities",
                        v.edge, v.row, v.col
                    )));
                }
            }
        }
        Ok(self * other)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| *v))
            .collect()
    }

    pub fn has_odd_vars(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.factors().iter().any(|(v, _)| v.is_odd()))
    }

    /// `None` when terms of both parities occur.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// Multidegree of a multihomogeneous polynomial (`None` otherwise or for
    /// zero).
    pub fn multidegree(&self, num_edges: usize) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(|m| m.multidegree(num_edges));
        let first = it.next()?;
        it.all(|n| n == first).then_some(first)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Multihomogeneous components keyed (and therefore sorted) by
    /// multidegree.
    pub fn components(&self, num_edges: usize) -> BTreeMap<MultiDegree, Polynomial> {
        let mut out: BTreeMap<MultiDegree, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.multidegree(num_edges))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Coefficients with respect to the parameter variables: maps each
    /// parameter monomial to the polynomial multiplying it.
    pub fn param_coefficients(&self) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (p, rest) = m.split_params();
            out.entry(p).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Ring homomorphism sending each variable to `image(v)` (variables with
    /// `None` are kept). Images must have the parity of their variable.
    pub fn substitute<F>(&self, image: F) -> Polynomial
    where
        F: Fn(&Var) -> Option<Polynomial>,
    {
        let mut cache: HashMap<Var, Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            for (v, k) in m.factors() {
                let img = cache
                    .entry(*v)
                    .or_insert_with(|| image(v).unwrap_or_else(|| Polynomial::var(*v)));
                for _ in 0..*k {
                    acc = &acc * img;
                }
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Evaluates in any ring, multiplying factors in canonical order.
    pub fn evaluate<R, F>(&self, value: F) -> Result<R>
    where
        R: super::SuperRing,
        F: Fn(&Var) -> Option<R>,
    {
        let mut cache: HashMap<Var, R> = HashMap::new();
        let mut out = R::zero();
        for (m, c) in &self.terms {
            let mut acc = R::from_rational(c.clone());
            for (v, k) in m.factors() {
                if !cache.contains_key(v) {
                    let x = value(v).ok_or_else(|| {
                        Error::Invalid(format!("no value for variable {v:?}"))
                    })?;
                    cache.insert(*v, x);
                }
                let x = &cache[v];
                for _ in 0..*k {
                    acc = acc.times(x);
                }
            }
            out = out.plus(&acc);
        }
        Ok(out)
    }

    /// Applies the superderivation determined by `image` on generators: on a
    /// monomial `v₁⋯v_l` it returns
    /// `Σ_i (−1)^{|D|(|v₁|+…+|v_{i−1}|)} v₁⋯D(v_i)⋯v_l`.
    pub fn apply_derivation<F>(&self, d_parity: Parity, image: F) -> Polynomial
    where
        F: Fn(&Var) -> Option<Polynomial>,
    {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let factors = m.factors();
            let mut prefix_odd = false;
            for (idx, (v, k)) in factors.iter().enumerate() {
                if let Some(img) = image(v) {
                    if !img.is_zero() {
                        let prefix = Monomial(factors[..idx].to_vec());
                        let mut rest = Vec::with_capacity(factors.len() - idx);
                        if *k > 1 {
                            rest.push((*v, k - 1));
                        }
                        rest.extend_from_slice(&factors[idx + 1..]);
                        let rest = Monomial(rest);
                        let mut coef = c * Rational::from_integer((*k).into());
                        if d_parity.is_odd() && prefix_odd {
                            coef = -coef;
                        }
                        for (im, ic) in img.terms() {
                            let Some((m1, s1)) = prefix.mul(im) else { continue };
                            let Some((m2, s2)) = m1.mul(&rest) else { continue };
                            let x = &coef * ic;
                            out.add_term(m2, if s1 ^ s2 { -x } else { x });
                        }
                    }
                }
                if v.is_odd() {
                    prefix_odd = !prefix_odd;
                }
            }
        }
        out
    }

    /// Exact quotient by a polynomial in even variables, if it exists.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() || d.has_odd_vars() {
            return None;
        }
        let key = |m: &Monomial| m.split_parity();
        let cmp = |a: &(Vec<(Var, u32)>, Vec<(Var, u32)>), b: &(Vec<(Var, u32)>, Vec<(Var, u32)>)| {
            a.0.cmp(&b.0).then_with(|| grlex(&a.1, &b.1))
        };
        let (lead_d, lead_dc) = d
            .terms
            .iter()
            .max_by(|x, y| grlex(x.0.factors(), y.0.factors()))
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while !rem.is_zero() {
            let (lm, lc) = rem
                .terms
                .iter()
                .max_by(|x, y| cmp(&key(x.0), &key(y.0)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .unwrap();
            let (odd, even) = key(&lm);
            let even_q = divide_even(&even, lead_d.factors())?;
            let mut factors: Vec<(Var, u32)> = odd.into_iter().chain(even_q).collect();
            factors.sort();
            let qm = Monomial(factors);
            let qc = lc / &lead_dc;
            let t = Polynomial::term(qm.clone(), qc.clone());
            rem = &rem - &(&t * d);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

fn divide_even(num: &[(Var, u32)], den: &[(Var, u32)]) -> Option<Vec<(Var, u32)>> {
    let mut out: Vec<(Var, u32)> = num.to_vec();
    for (v, k) in den {
        let slot = out.iter_mut().find(|(w, _)| w == v)?;
        if slot.1 < *k {
            return None;
        }
        slot.1 -= k;
    }
    out.retain(|(_, k)| *k > 0);
    Some(out)
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                if let Some((m, neg)) = m1.mul(m2) {
                    let c = c1 * c2;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl super::SuperRing for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn from_rational(q: Rational) -> Self {
        Polynomial::constant(q)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn parity(&self) -> Option<Parity> {
        Polynomial::parity(self)
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.is_constant() && !self.is_zero() {
            Some(Polynomial::constant(self.constant_term().recip()))
        } else {
            None
        }
    }
    fn try_div_exact(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }
}

/// Applies the superderivation whose values on generators are `images`.
/// Every image must be homogeneous of parity `|v| + d_parity`.
pub fn derivation_apply(
    images: &HashMap<Var, Polynomial>,
    d_parity: Parity,
    f: &Polynomial,
) -> Result<Polynomial> {
    for (v, img) in images {
        if img.is_zero() {
            continue;
        }
        if img.parity() != Some(v.parity + d_parity) {
            return Err(Error::Parity(format!(
                "image of {v:?} is not of parity {}",
                v.parity + d_parity
            )));
        }
    }
    for v in f.vars() {
        if !images.contains_key(&v) {
            return Err(Error::Invalid(format!("no image for variable {v:?}")));
        }
    }
    Ok(f.apply_derivation(d_parity, |v| images.get(v).cloned()))
}

impl Polynomial {
    /// Largest absolute numerator/denominator size, useful for diagnostics.
    pub fn max_coefficient_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().abs().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rational, ratio};

    fn even(i: usize) -> Var {
        Var::new(0, i, 0, Parity::Even)
    }
    fn odd(i: usize) -> Var {
        Var::new(1, i, 0, Parity::Odd)
    }
    fn p(v: Var) -> Polynomial {
        Polynomial::var(v)
    }

    #[test]
    fn odd_anticommute_and_square_zero() {
        let (u, v) = (p(odd(0)), p(odd(1)));
        assert_eq!(&u * &v, -&(&v * &u));
        assert!((&u * &u).is_zero());
        assert!(!(&u * &v).is_zero());
    }

    #[test]
    fn difference_of_squares_with_nilpotent() {
        let x = p(even(0));
        let u = p(odd(0));
        let lhs = &(&x + &u) * &(&x - &u);
        assert_eq!(lhs, &x * &x);
    }

    #[test]
    fn product_of_reorders_with_sign() {
        let a = Polynomial::product_of(rational(1), &[odd(1), odd(0)]);
        let b = Polynomial::product_of(rational(-1), &[odd(0), odd(1)]);
        assert_eq!(a, b);
        let c = Polynomial::product_of(rational(3), &[odd(2), even(0), odd(1), odd(0)]);
        // (u2 x u1 u0) → x·u0·u1·u2 needs 3 transpositions of odd factors
        let m = Monomial::from_vars(&[even(0), odd(0), odd(1), odd(2)]).unwrap().0;
        assert_eq!(c.coefficient(&m), rational(-3));
    }

    #[test]
    fn derivation_even_leibniz() {
        let x = even(0);
        let f = p(x).pow(2);
        let d = f.apply_derivation(Parity::Even, |v| (*v == x).then(Polynomial::one));
        assert_eq!(d, p(x).scale(&rational(2)));
    }

    #[test]
    fn derivation_odd_sign() {
        let (u, v, x) = (odd(0), odd(1), even(0));
        let images: HashMap<Var, Polynomial> = [
            (u, p(x)),
            (v, Polynomial::zero()),
            (x, Polynomial::zero()),
        ]
        .into_iter()
        .collect();
        let uv = &p(u) * &p(v);
        let d = derivation_apply(&images, Parity::Odd, &uv).unwrap();
        assert_eq!(d, &p(x) * &p(v));
        let vu = &p(v) * &p(u);
        let d = derivation_apply(&images, Parity::Odd, &vu).unwrap();
        assert_eq!(d, -&(&p(x) * &p(v)));
    }

    #[test]
    fn derivation_rejects_bad_parity() {
        let (u, x) = (odd(0), even(0));
        let images: HashMap<Var, Polynomial> = [(u, p(u)), (x, Polynomial::zero())]
            .into_iter()
            .collect();
        assert!(matches!(
            derivation_apply(&images, Parity::Odd, &p(u)),
            Err(Error::Parity(_))
        ));
    }

    #[test]
    fn exact_division() {
        let (x, y, u) = (even(0), even(1), odd(0));
        let d = &p(x) + &p(y);
        let a = &(&p(x) * &p(u)) + &Polynomial::constant(ratio(1, 2));
        let prod = &a * &d;
        assert_eq!(prod.div_exact(&d), Some(a));
        assert_eq!(p(x).div_exact(&d), None);
        assert_eq!(p(x).div_exact(&p(u)), None);
    }

    #[test]
    fn checked_mul_detects_parity_clash() {
        let a = p(Var::new(0, 0, 0, Parity::Even));
        let b = p(Var::new(0, 0, 0, Parity::Odd));
        assert!(a.checked_mul(&b).is_err());
        assert!(a.checked_mul(&a).is_ok());
    }

    #[test]
    fn components_split_by_edge_degree() {
        let x0 = Var::new(0, 0, 0, Parity::Even);
        let x1 = Var::new(1, 0, 0, Parity::Even);
        let f = &(&p(x0) * &p(x0)) + &(&p(x0) * &p(x1));
        let comps = f.components(2);
        assert_eq!(comps.len(), 2);
        assert_eq!(f.multidegree(2), None);
        assert_eq!(
            comps.keys().cloned().collect::<Vec<_>>(),
            vec![MultiDegree(vec![1, 1]), MultiDegree(vec![2, 0])]
        );
    }
}

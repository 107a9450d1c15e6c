use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;

use super::Rational;
use crate::error::{Error, Result};
use crate::quiver::Parity;

pub const DEFAULT_GRASSMANN_CAP: usize = 8;

/// Element of the exterior algebra `Λ_k = ℚ⟨θ₁,…,θ_k⟩`, stored as a map from
/// generator subsets (bit masks, bit `i` for `θ_{i+1}`) to coefficients of
/// the ordered products `θ_S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GrassmannElement {
    terms: BTreeMap<u32, Rational>,
}

/// Sign of `θ_S · θ_T` relative to `θ_{S∪T}`: parity of the number of pairs
/// `(i ∈ S, j ∈ T)` with `i > j`.
fn merge_sign(s: u32, t: u32) -> bool {
    let mut inversions = 0u32;
    let mut rest = t;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (s >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

impl GrassmannElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: Rational) -> Self {
        let mut g = Self::zero();
        g.add_term(0, c);
        g
    }

    /// Coefficient `c` on `θ_S`.
    pub fn monomial(mask: u32, c: Rational) -> Self {
        let mut g = Self::zero();
        g.add_term(mask, c);
        g
    }

    fn add_term(&mut self, mask: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn coefficient(&self, mask: u32) -> Rational {
        self.terms.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Constant term.
    pub fn body(&self) -> Rational {
        self.coefficient(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| {
            if m.count_ones() % 2 == 1 {
                Parity::Odd
            } else {
                Parity::Even
            }
        });
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    /// Inverse of an element with nonzero body: `b⁻¹ Σ_j (−n/b)^j` where the
    /// nilpotent part `n` satisfies `n^{k+1} = 0`.
    pub fn inverse(&self) -> Option<Self> {
        let body = self.body();
        if body.is_zero() {
            return None;
        }
        let binv = body.recip();
        let mut nil = self.clone();
        nil.terms.remove(&0);
        let step = -&nil.scale(&binv);
        let mut out = Self::scalar(Rational::one());
        let mut power = Self::scalar(Rational::one());
        loop {
            power = &power * &step;
            if power.is_zero() {
                break;
            }
            out = &out + &power;
        }
        Some(out.scale(&binv))
    }
}

impl<'a> Add<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, rhs: &GrassmannElement) -> GrassmannElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: &GrassmannElement) -> GrassmannElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: &GrassmannElement) -> GrassmannElement {
        let mut out = GrassmannElement::zero();
        for (s, a) in &self.terms {
            for (t, b) in &rhs.terms {
                if s & t != 0 {
                    continue;
                }
                let c = a * b;
                out.add_term(s | t, if merge_sign(*s, *t) { -c } else { c });
            }
        }
        out
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale(&-Rational::one())
    }
}

impl super::SuperRing for GrassmannElement {
    fn zero() -> Self {
        GrassmannElement::zero()
    }
    fn one() -> Self {
        GrassmannElement::scalar(<Rational as One>::one())
    }
    fn from_rational(q: Rational) -> Self {
        GrassmannElement::scalar(q)
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
        GrassmannElement::parity(self)
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse()
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for bit in 0..32 {
                if m >> bit & 1 == 1 {
                    write!(f, "*θ{}", bit + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// A fixed exterior algebra `Λ_k`, used to build test points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrassmannAlgebra {
    k: usize,
}

impl GrassmannAlgebra {
    pub fn new(k: usize) -> Result<Self> {
        Self::with_cap(k, DEFAULT_GRASSMANN_CAP)
    }

    pub fn with_cap(k: usize, cap: usize) -> Result<Self> {
        if k > cap.min(31) {
            return Err(Error::ResourceCap { size: k, cap });
        }
        Ok(GrassmannAlgebra { k })
    }

    pub fn generators(&self) -> usize {
        self.k
    }

    /// `θ_i` for `1 ≤ i ≤ k`.
    pub fn theta(&self, i: usize) -> GrassmannElement {
        assert!(i >= 1 && i <= self.k, "generator index out of range");
        GrassmannElement::monomial(1 << (i - 1), Rational::one())
    }

    /// Random element of the given parity with small integer coefficients;
    /// each basis product is present with probability one half.
    pub fn random<R: Rng>(&self, rng: &mut R, parity: Parity, with_body: bool) -> GrassmannElement {
        let mut g = GrassmannElement::zero();
        for mask in 0u32..(1 << self.k) {
            let p = if mask.count_ones() % 2 == 1 {
                Parity::Odd
            } else {
                Parity::Even
            };
            if p != parity || (mask == 0 && !with_body) {
                continue;
            }
            if mask == 0 || rng.gen_bool(0.5) {
                let c: i64 = rng.gen_range(-2..=2);
                g.add_term(mask, Rational::from_integer(c.into()));
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational;

    #[test]
    fn anticommuting_generators() {
        let alg = GrassmannAlgebra::new(2).unwrap();
        let (t1, t2) = (alg.theta(1), alg.theta(2));
        let a = &t1 * &t2;
        assert_eq!(a.coefficient(0b11), rational(1));
        assert_eq!(&t2 * &t1, -&a);
        assert!((&t1 * &t1).is_zero());
    }

    #[test]
    fn square_of_one_plus_nilpotent() {
        let alg = GrassmannAlgebra::new(2).unwrap();
        let x = &GrassmannElement::scalar(rational(1)) + &(&alg.theta(1) * &alg.theta(2));
        let sq = &x * &x;
        assert_eq!(sq.body(), rational(1));
        assert_eq!(sq.coefficient(0b11), rational(2));
    }

    #[test]
    fn inverse_of_invertible_even() {
        let alg = GrassmannAlgebra::new(4).unwrap();
        let mut rng = rand::thread_rng();
        for _ in 0..20 {
            let mut x = alg.random(&mut rng, Parity::Even, true);
            if x.body().is_zero() {
                x = &x + &GrassmannElement::scalar(rational(3));
            }
            let inv = x.inverse().unwrap();
            assert_eq!(&x * &inv, GrassmannElement::scalar(rational(1)));
            assert_eq!(&inv * &x, GrassmannElement::scalar(rational(1)));
        }
        assert!(alg.theta(1).inverse().is_none());
    }

    #[test]
    fn cap_enforced() {
        assert!(GrassmannAlgebra::new(9).is_err());
        assert!(GrassmannAlgebra::with_cap(9, 10).is_ok());
    }
}

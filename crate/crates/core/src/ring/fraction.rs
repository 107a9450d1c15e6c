use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::quiver::Parity;

/// `numerator / Π dᵢ^{kᵢ}` where every `dᵢ` is a nonzero polynomial in even
/// variables only. Denominator factors are kept as a formal product; only
/// factors that divide the numerator exactly are cancelled.
#[derive(Debug, Clone)]
pub struct EvenFraction {
    numerator: Polynomial,
    denominator: BTreeMap<Polynomial, u32>,
}

impl EvenFraction {
    pub fn from_polynomial(p: Polynomial) -> Self {
        EvenFraction {
            numerator: p,
            denominator: BTreeMap::new(),
        }
    }

    /// `numerator / d^power`.
    pub fn new(numerator: Polynomial, d: Polynomial, power: u32) -> Result<Self> {
        check_denominator(&d)?;
        let mut denominator = BTreeMap::new();
        if power > 0 && d != Polynomial::one() {
            denominator.insert(d, power);
        }
        Ok(EvenFraction {
            numerator,
            denominator,
        }
        .cancel())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Polynomial, u32)> {
        self.denominator.iter().map(|(d, k)| (d, *k))
    }

    pub fn denominator(&self) -> Polynomial {
        self.denominator
            .iter()
            .fold(Polynomial::one(), |acc, (d, k)| &acc * &d.pow(*k))
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_empty()
    }

    /// Fraction arithmetic for `+`, `−`, `×`.
    pub fn combine(&self, other: &Self, op: FractionOp) -> Self {
        match op {
            FractionOp::Add => self.add_signed(other, false),
            FractionOp::Sub => self.add_signed(other, true),
            FractionOp::Mul => {
                let mut denominator = self.denominator.clone();
                for (d, k) in &other.denominator {
                    *denominator.entry(d.clone()).or_insert(0) += k;
                }
                EvenFraction {
                    numerator: &self.numerator * &other.numerator,
                    denominator,
                }
                .cancel()
            }
        }
    }

    fn add_signed(&self, other: &Self, subtract: bool) -> Self {
        let mut common = self.denominator.clone();
        for (d, k) in &other.denominator {
            let slot = common.entry(d.clone()).or_insert(0);
            *slot = (*slot).max(*k);
        }
        let lift = |f: &EvenFraction| {
            common.iter().fold(f.numerator.clone(), |acc, (d, k)| {
                let have = f.denominator.get(d).copied().unwrap_or(0);
                &acc * &d.pow(k - have)
            })
        };
        let a = lift(self);
        let b = lift(other);
        EvenFraction {
            numerator: if subtract { &a - &b } else { &a + &b },
            denominator: common,
        }
        .cancel()
    }

    /// Divides by an even-variable polynomial.
    pub fn divide_by(&self, d: &Polynomial) -> Result<Self> {
        check_denominator(d)?;
        let mut denominator = self.denominator.clone();
        if !d.is_constant() {
            *denominator.entry(d.clone()).or_insert(0) += 1;
        }
        let numerator = if d.is_constant() {
            self.numerator.scale(&d.constant_term().recip())
        } else {
            self.numerator.clone()
        };
        Ok(EvenFraction {
            numerator,
            denominator,
        }
        .cancel())
    }

    fn cancel(mut self) -> Self {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return self;
        }
        let factors: Vec<Polynomial> = self.denominator.keys().cloned().collect();
        for d in factors {
            while let Some(k) = self.denominator.get(&d).copied() {
                match self.numerator.div_exact(&d) {
                    Some(q) => {
                        self.numerator = q;
                        if k == 1 {
                            self.denominator.remove(&d);
                        } else {
                            self.denominator.insert(d.clone(), k - 1);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }
}

fn check_denominator(d: &Polynomial) -> Result<()> {
    if d.is_zero() {
        return Err(Error::NotInvertible("zero denominator".into()));
    }
    if d.has_odd_vars() {
        return Err(Error::NotInvertible(
            "denominator contains odd variables".into(),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FractionOp {
    Add,
    Sub,
    Mul,
}

/// Cross-multiplied equality over the common denominator.
impl PartialEq for EvenFraction {
    fn eq(&self, other: &Self) -> bool {
        let diff = self.add_signed(other, true);
        diff.numerator.is_zero()
    }
}

impl From<Polynomial> for EvenFraction {
    fn from(p: Polynomial) -> Self {
        EvenFraction::from_polynomial(p)
    }
}

impl super::SuperRing for EvenFraction {
    fn zero() -> Self {
        Polynomial::zero().into()
    }
    fn one() -> Self {
        Polynomial::one().into()
    }
    fn from_rational(q: Rational) -> Self {
        Polynomial::constant(q).into()
    }
    fn plus(&self, other: &Self) -> Self {
        self.combine(other, FractionOp::Add)
    }
    fn minus(&self, other: &Self) -> Self {
        self.combine(other, FractionOp::Sub)
    }
    fn times(&self, other: &Self) -> Self {
        self.combine(other, FractionOp::Mul)
    }
    fn negated(&self) -> Self {
        EvenFraction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
    fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
    fn parity(&self) -> Option<Parity> {
        self.numerator.parity()
    }
    /// Only fractions whose numerator lies in the even-variable subring
    /// (an integral domain) are inverted.
    fn try_inverse(&self) -> Option<Self> {
        if self.numerator.is_zero() || self.numerator.has_odd_vars() {
            return None;
        }
        let mut out = EvenFraction::from_polynomial(self.denominator());
        if self.numerator.is_constant() {
            out.numerator = out.numerator.scale(&self.numerator.constant_term().recip());
        } else {
            out.denominator.insert(self.numerator.clone(), 1);
        }
        Some(out.cancel())
    }
}

impl fmt::Display for EvenFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} terms)", self.numerator.num_terms())?;
        if !self.denominator.is_empty() {
            write!(f, " / {} factors", self.denominator.len())?;
        }
        Ok(())
    }
}

impl EvenFraction {
    pub fn is_one(&self) -> bool {
        self.denominator.is_empty() && self.numerator == Polynomial::constant(Rational::one())
    }
}

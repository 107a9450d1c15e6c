//! Exact supercommutative polynomial arithmetic over ℚ.
//!
//! Variables carry their own parity; odd variables square to zero and
//! anticommute. Every monomial is stored in canonical form: factors sorted by
//! the global variable order `(edge, row, col)`, with the Koszul sign of the
//! sorting folded into the coefficient.

mod fraction;
mod grassmann;
mod poly;
pub mod text;

use std::fmt::Debug;

pub use fraction::EvenFraction;
pub use grassmann::{GrassmannAlgebra, GrassmannElement, DEFAULT_GRASSMANN_CAP};
pub use poly::{derivation_apply, Monomial, Polynomial};

pub use crate::quiver::Parity;

pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Edge index reserved for auxiliary even central parameters.
pub const PARAM_EDGE: u32 = u32::MAX;

/// A generator of the coordinate ring: entry `(row, col)` (0-based) of the
/// generic matrix of `edge`, or an auxiliary parameter when
/// `edge == PARAM_EDGE`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub edge: u32,
    pub row: u32,
    pub col: u32,
    pub parity: Parity,
}

impl Var {
    pub fn new(edge: usize, row: usize, col: usize, parity: Parity) -> Var {
        Var {
            edge: edge as u32,
            row: row as u32,
            col: col as u32,
            parity,
        }
    }

    /// Even central parameter number `k`.
    pub fn param(k: usize) -> Var {
        Var {
            edge: PARAM_EDGE,
            row: k as u32,
            col: 0,
            parity: Parity::Even,
        }
    }

    pub fn is_param(&self) -> bool {
        self.edge == PARAM_EDGE
    }

    pub fn is_odd(&self) -> bool {
        self.parity.is_odd()
    }

    /// Same position, ignoring parity.
    pub fn same_slot(&self, other: &Var) -> bool {
        self.edge == other.edge && self.row == other.row && self.col == other.col
    }
}

/// Minimal interface shared by the coefficient rings that supermatrices are
/// built over (polynomials, even-denominator fractions, Grassmann numbers).
pub trait SuperRing: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// `None` for inhomogeneous elements; zero counts as even.
    fn parity(&self) -> Option<Parity>;
    fn try_inverse(&self) -> Option<Self>;
    /// Exact quotient `self / d` when the ring can decide it.
    fn try_div_exact(&self, _d: &Self) -> Option<Self> {
        None
    }
}

impl SuperRing for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_rational(q: Rational) -> Self {
        q
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
        num_traits::Zero::is_zero(self)
    }
    fn parity(&self) -> Option<Parity> {
        Some(Parity::Even)
    }
    fn try_inverse(&self) -> Option<Self> {
        (!SuperRing::is_zero(self)).then(|| num_traits::Inv::inv(self.clone()))
    }
    fn try_div_exact(&self, d: &Self) -> Option<Self> {
        (!SuperRing::is_zero(d)).then(|| self / d)
    }
}

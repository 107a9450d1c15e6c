//! Matrices in block super-format over a supercommutative ring, with
//! supertrace, determinant and Berezinian.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::{Parity, SuperDim};
use crate::ring::SuperRing;

/// Row format `r₀|r₁` and column format `c₀|c₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SuperFormat {
    pub rows: SuperDim,
    pub cols: SuperDim,
}

impl SuperFormat {
    pub fn new(rows: SuperDim, cols: SuperDim) -> Self {
        SuperFormat { rows, cols }
    }

    pub fn square(d: SuperDim) -> Self {
        SuperFormat { rows: d, cols: d }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl fmt::Display for SuperFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {}", self.rows, self.cols)
    }
}

/// Homogeneous supermatrix: entry `(i, j)` has parity
/// `blockpar(i) + blockpar(j) + parity`, or is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperMatrix<R> {
    format: SuperFormat,
    parity: Parity,
    entries: Vec<Vec<R>>,
}

impl<R: SuperRing> SuperMatrix<R> {
    pub fn new(format: SuperFormat, parity: Parity, entries: Vec<Vec<R>>) -> Result<Self> {
        let (n, m) = (format.rows.total() as usize, format.cols.total() as usize);
        if entries.len() != n || entries.iter().any(|r| r.len() != m) {
            return Err(Error::Format(format!("entries do not match format {format}")));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let want = format.rows.index_parity(i) + format.cols.index_parity(j) + parity;
                if x.parity() != Some(want) {
                    return Err(Error::Parity(format!(
                        "entry ({}, {}) should be {want}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(SuperMatrix {
            format,
            parity,
            entries,
        })
    }

    pub fn from_fn<F>(format: SuperFormat, parity: Parity, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> R,
    {
        let mut entries = Vec::new();
        for i in 0..format.rows.total() as usize {
            entries.push((0..format.cols.total() as usize).map(|j| f(i, j)).collect());
        }
        Self::new(format, parity, entries)
    }

    pub fn identity(d: SuperDim) -> Self {
        let n = d.total() as usize;
        SuperMatrix {
            format: SuperFormat::square(d),
            parity: Parity::Even,
            entries: (0..n)
                .map(|i| (0..n).map(|j| if i == j { R::one() } else { R::zero() }).collect())
                .collect(),
        }
    }

    pub fn format(&self) -> SuperFormat {
        self.format
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.format.cols.total() as usize
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<R>] {
        &self.entries
    }

    pub fn map<S: SuperRing, F>(&self, f: F) -> Result<SuperMatrix<S>>
    where
        F: Fn(&R) -> Result<S>,
    {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        SuperMatrix::new(self.format, self.parity, entries)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.format.cols != other.format.rows {
            return Err(Error::Format(format!(
                "cannot multiply {} by {}",
                self.format, other.format
            )));
        }
        let entries = mat_mul(&self.entries, &other.entries);
        Ok(SuperMatrix {
            format: SuperFormat::new(self.format.rows, other.format.cols),
            parity: self.parity + other.parity,
            entries,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.format != other.format {
            return Err(Error::Format(format!(
                "cannot add {} and {}",
                self.format, other.format
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.plus(y)).collect())
            .collect();
        // a sum of matrices of different parity is inhomogeneous
        SuperMatrix::new(self.format, self.parity, entries)
    }

    pub fn scale(&self, c: &R) -> Result<Self> {
        let p = c.parity().unwrap_or(Parity::Even);
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| c.times(x)).collect())
            .collect();
        SuperMatrix::new(self.format, self.parity + p, entries)
    }

    /// Trace of the even block minus trace of the odd block.
    pub fn supertrace(&self) -> Result<R> {
        if !self.format.is_square() {
            return Err(Error::Format(format!("supertrace of {}", self.format)));
        }
        let mut out = R::zero();
        for i in 0..self.nrows() {
            out = match self.format.rows.index_parity(i) {
                Parity::Even => out.plus(&self.entries[i][i]),
                Parity::Odd => out.minus(&self.entries[i][i]),
            };
        }
        Ok(out)
    }

    /// Ordinary determinant; every entry must be even.
    pub fn determinant(&self) -> Result<R> {
        determinant(&self.entries)
    }

    /// Sub-block of rows of parity `r` and columns of parity `c`.
    pub fn block(&self, r: Parity, c: Parity) -> Vec<Vec<R>> {
        let rows = block_range(self.format.rows, r);
        let cols = block_range(self.format.cols, c);
        rows.map(|i| cols.clone().map(|j| self.entries[i][j].clone()).collect())
            .collect()
    }

    /// `Ber = det(X₀₀ − X₀₁ X₁₁⁻¹ X₁₀) · det(X₁₁)⁻¹` for an even square
    /// supermatrix, with `X₁₁⁻¹ = adj(X₁₁) · det(X₁₁)⁻¹`.
    pub fn berezinian(&self) -> Result<R> {
        if !self.format.is_square() {
            return Err(Error::Format(format!("Berezinian of {}", self.format)));
        }
        if self.parity != Parity::Even {
            return Err(Error::Parity("Berezinian of an odd matrix".into()));
        }
        let (m, n) = (self.format.rows.even as usize, self.format.rows.odd as usize);
        let x00 = self.block(Parity::Even, Parity::Even);
        if n == 0 {
            return determinant(&x00);
        }
        let x11 = self.block(Parity::Odd, Parity::Odd);
        let d11 = determinant(&x11)?;
        let inv = d11
            .try_inverse()
            .ok_or_else(|| Error::NotInvertible("det of the odd block".into()))?;
        if m == 0 {
            return Ok(inv);
        }
        let x01 = self.block(Parity::Even, Parity::Odd);
        let x10 = self.block(Parity::Odd, Parity::Even);
        let adj = adjugate(&x11)?;
        let correction = mat_mul(&mat_mul(&x01, &adj), &x10);
        let schur: Vec<Vec<R>> = x00
            .iter()
            .zip(&correction)
            .map(|(a, c)| a.iter().zip(c).map(|(x, y)| x.minus(&y.times(&inv))).collect())
            .collect();
        Ok(determinant(&schur)?.times(&inv))
    }
}

impl<R: SuperRing> SuperMatrix<R> {
    /// Inverse of an even square supermatrix by Gauss-Jordan elimination
    /// with invertible pivots; row operations multiply from the left.
    pub fn inverse(&self) -> Result<Self> {
        if !self.format.is_square() || self.parity != Parity::Even {
            return Err(Error::NotInvertible(format!("matrix of format {}", self.format)));
        }
        let n = self.nrows();
        let mut a = self.entries.clone();
        let mut inv = SuperMatrix::<R>::identity(self.format.rows).entries;
        for k in 0..n {
            let (p, pinv) = (k..n)
                .find_map(|i| a[i][k].try_inverse().map(|x| (i, x)))
                .ok_or_else(|| Error::NotInvertible(format!("no pivot in column {}", k + 1)))?;
            a.swap(k, p);
            inv.swap(k, p);
            for j in 0..n {
                a[k][j] = pinv.times(&a[k][j]);
                inv[k][j] = pinv.times(&inv[k][j]);
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    a[i][j] = a[i][j].minus(&f.times(&a[k][j]));
                    inv[i][j] = inv[i][j].minus(&f.times(&inv[k][j]));
                }
            }
        }
        SuperMatrix::new(self.format, Parity::Even, inv)
    }
}

fn block_range(d: SuperDim, p: Parity) -> std::ops::Range<usize> {
    match p {
        Parity::Even => 0..d.even as usize,
        Parity::Odd => d.even as usize..d.total() as usize,
    }
}

fn mat_mul<R: SuperRing>(a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(R::zero(), |acc, k| {
                        if row[k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc.plus(&row[k].times(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Determinant of a square array of even elements; `1` for the empty
/// matrix. Cofactor expansion below 5×5, Bareiss above when the ring
/// supports exact division.
pub fn determinant<R: SuperRing>(m: &[Vec<R>]) -> Result<R> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Format("determinant of a non-square array".into()));
    }
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() && x.parity() != Some(Parity::Even) {
                return Err(Error::OddEntry(i + 1, j + 1));
            }
        }
    }
    if n >= 5 {
        if let Some(d) = bareiss(m) {
            return Ok(d);
        }
    }
    Ok(laplace(m))
}

/// Expansion along rows, memoized on the set of used columns.
fn laplace<R: SuperRing>(m: &[Vec<R>]) -> R {
    fn go<R: SuperRing>(m: &[Vec<R>], used: u64, memo: &mut HashMap<u64, R>) -> R {
        let row = used.count_ones() as usize;
        if row == m.len() {
            return R::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut out = R::zero();
        let mut free_before = 0;
        for c in 0..m.len() {
            if used >> c & 1 == 1 {
                continue;
            }
            if !m[row][c].is_zero() {
                let minor = go(m, used | 1 << c, memo);
                let t = m[row][c].times(&minor);
                out = if free_before % 2 == 0 {
                    out.plus(&t)
                } else {
                    out.minus(&t)
                };
            }
            free_before += 1;
        }
        memo.insert(used, out.clone());
        out
    }
    go(m, 0, &mut HashMap::new())
}

/// Fraction-free elimination; `None` when a pivot or division fails.
fn bareiss<R: SuperRing>(m: &[Vec<R>]) -> Option<R> {
    let n = m.len();
    let mut a: Vec<Vec<R>> = m.to_vec();
    let mut prev = R::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].times(&a[k][k]).minus(&a[i][k].times(&a[k][j]));
                a[i][j] = if num.is_zero() {
                    R::zero()
                } else {
                    num.try_div_exact(&prev)?
                };
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Some(if negate { d.negated() } else { d })
}

/// Adjugate of a square array of even elements.
fn adjugate<R: SuperRing>(m: &[Vec<R>]) -> Result<Vec<Vec<R>>> {
    let n = m.len();
    let mut out = vec![vec![R::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<R>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = determinant(&minor)?;
            out[j][i] = if (i + j) % 2 == 0 { d } else { d.negated() };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{
        rational, EvenFraction, GrassmannAlgebra, GrassmannElement, Polynomial, Rational, Var,
    };

    fn var(i: usize, j: usize, p: Parity) -> Polynomial {
        Polynomial::var(Var::new(0, i, j, p))
    }

    fn generic11() -> SuperMatrix<Polynomial> {
        let d = SuperDim::new(1, 1);
        SuperMatrix::from_fn(SuperFormat::square(d), Parity::Even, |i, j| {
            var(i, j, d.index_parity(i) + d.index_parity(j))
        })
        .unwrap()
    }

    #[test]
    fn supertrace_examples() {
        let id = SuperMatrix::<Rational>::identity(SuperDim::new(1, 1));
        assert_eq!(id.supertrace().unwrap(), rational(0));
        let x = generic11();
        let s = x.supertrace().unwrap();
        assert_eq!(s, &var(0, 0, Parity::Even) - &var(1, 1, Parity::Even));
        let s2 = x.mul(&x).unwrap().supertrace().unwrap();
        let expect = &(&var(0, 0, Parity::Even).pow(2) - &var(1, 1, Parity::Even).pow(2))
            + &(&var(0, 1, Parity::Odd) * &var(1, 0, Parity::Odd)).scale(&rational(2));
        assert_eq!(s2, expect);
    }

    #[test]
    fn determinant_examples() {
        let e = |i, j| var(i, j, Parity::Even);
        assert_eq!(determinant(&[vec![e(0, 0)]]).unwrap(), e(0, 0));
        let m = vec![vec![e(0, 0), e(0, 1)], vec![e(1, 0), e(1, 1)]];
        assert_eq!(
            determinant(&m).unwrap(),
            &(&e(0, 0) * &e(1, 1)) - &(&e(0, 1) * &e(1, 0))
        );
        let uv = &var(0, 1, Parity::Odd) * &var(1, 0, Parity::Odd);
        let n = vec![vec![uv.clone(), Polynomial::zero()], vec![Polynomial::zero(), uv]];
        assert!(determinant(&n).unwrap().is_zero());
        let odd = vec![vec![var(0, 1, Parity::Odd)]];
        assert_eq!(determinant(&odd), Err(Error::OddEntry(1, 1)));
        assert_eq!(determinant::<Polynomial>(&[]).unwrap(), Polynomial::one());
    }

    #[test]
    fn bareiss_matches_laplace() {
        let n = 5;
        let m: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| rational(((i * 7 + j * 3) % 5) as i64 - 2)).collect())
            .collect();
        assert_eq!(bareiss(&m).unwrap(), laplace(&m));
        let p: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| var(i, j, Parity::Even)).collect())
            .collect();
        assert_eq!(determinant(&p).unwrap(), laplace(&p));
    }

    #[test]
    fn berezinian_one_one() {
        let x = generic11().map(|p| Ok(EvenFraction::from(p.clone()))).unwrap();
        let ber = x.berezinian().unwrap();
        let (a, b, c, d) = (
            var(0, 0, Parity::Even),
            var(0, 1, Parity::Odd),
            var(1, 0, Parity::Odd),
            var(1, 1, Parity::Even),
        );
        let expect = EvenFraction::new(&a * &d - &b * &c, d.clone(), 2).unwrap();
        assert_eq!(ber, expect);
    }

    #[test]
    fn berezinian_degenerate() {
        let e = |i, j| var(i, j, Parity::Even);
        let even = SuperMatrix::from_fn(SuperFormat::square(SuperDim::new(2, 0)), Parity::Even, |i, j| {
            EvenFraction::from(e(i, j))
        })
        .unwrap();
        let det = &(&e(0, 0) * &e(1, 1)) - &(&e(0, 1) * &e(1, 0));
        assert_eq!(even.berezinian().unwrap(), EvenFraction::from(det.clone()));
        let odd = SuperMatrix::from_fn(SuperFormat::square(SuperDim::new(0, 2)), Parity::Even, |i, j| {
            EvenFraction::from(e(i, j))
        })
        .unwrap();
        assert_eq!(
            odd.berezinian().unwrap(),
            EvenFraction::new(Polynomial::one(), det, 1).unwrap()
        );
        let empty = SuperMatrix::<Rational>::identity(SuperDim::new(0, 0));
        assert_eq!(empty.berezinian().unwrap(), rational(1));
    }

    #[test]
    fn berezinian_grassmann_point() {
        let alg = GrassmannAlgebra::new(2).unwrap();
        let one = GrassmannElement::scalar(rational(1));
        let g = SuperMatrix::new(
            SuperFormat::square(SuperDim::new(1, 1)),
            Parity::Even,
            vec![vec![one.clone(), alg.theta(1)], vec![alg.theta(2), one.clone()]],
        )
        .unwrap();
        let expect = &one - &(&alg.theta(1) * &alg.theta(2));
        assert_eq!(g.berezinian().unwrap(), expect);
    }

    #[test]
    fn rejects_inhomogeneous() {
        let d = SuperDim::new(1, 1);
        let r = SuperMatrix::from_fn(SuperFormat::square(d), Parity::Even, |_, _| {
            var(0, 0, Parity::Even)
        });
        assert!(r.is_err());
    }
}

//! Exact rank computations: fraction-free elimination over the integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::ring::Rational;

/// Sparse integer vector with sorted, nonzero entries.
pub type SparseVec = Vec<(usize, BigInt)>;

/// Clears denominators and divides out the content; the result spans the
/// same line as the input.
pub fn primitive(v: &[(usize, Rational)]) -> SparseVec {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut out: SparseVec = v
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (*i, c.numer() * (&lcm / c.denom())))
        .collect();
    out.sort_by_key(|(i, _)| *i);
    normalize(&mut out);
    out
}

fn normalize(v: &mut SparseVec) {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for (_, c) in v.iter_mut() {
            *c /= &g;
        }
    }
    if let Some((_, c)) = v.first() {
        if c.is_negative() {
            for (_, c) in v.iter_mut() {
                *c = -&*c;
            }
        }
    }
}

/// `a·x − b·y` for sparse vectors.
fn combine(a: &BigInt, x: &SparseVec, b: &BigInt, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let c = a * &x[i].1 - b * &y[j].1;
            if !c.is_zero() {
                out.push((x[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built row echelon form. Rows are kept primitive, so
/// coefficient growth stays bounded by the input.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    /// Pivot column → row whose leading entry sits there.
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot column of `v`, in increasing order; the
    /// remainder has no entry in a pivot column.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        let mut v = v;
        let mut idx = 0;
        while idx < v.len() {
            let (col, coef) = v[idx].clone();
            match self.rows.get(&col) {
                Some(row) => {
                    let lead = &row[0].1;
                    let g = lead.gcd(&coef);
                    v = combine(&(lead / &g), &v, &(&coef / &g), row);
                    normalize(&mut v);
                    idx = v.iter().position(|(c, _)| *c > col).unwrap_or(v.len());
                }
                None => idx += 1,
            }
        }
        v
    }

    /// Inserts a vector; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        match r.first() {
            Some(&(lead, _)) => {
                self.rows.insert(lead, r);
                true
            }
            None => false,
        }
    }
}

/// Rank of a list of rational vectors.
pub fn rank(vectors: &[Vec<(usize, Rational)>]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(primitive(v));
    }
    e.rank()
}

/// Dense determinant of an integer matrix by Bareiss elimination.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Dense rank of a rational matrix by fraction-free elimination.
pub fn dense_rank(m: &[Vec<Rational>]) -> usize {
    let rows: Vec<Vec<(usize, Rational)>> = m
        .iter()
        .map(|r| r.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect())
        .collect();
    rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rational, ratio};

    fn dense(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect()
    }

    /// Textbook Gaussian elimination over ℚ.
    fn gauss_rank(mut m: Vec<Vec<Rational>>) -> usize {
        let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    for j in 0..cols {
                        let d = &f * &m[r][j];
                        m[i][j] -= d;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn small_ranks() {
        assert_eq!(dense_rank(&dense(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(dense_rank(&dense(&[&[1, 2], &[2, 5]])), 2);
        assert_eq!(dense_rank(&dense(&[&[0, 0], &[0, 0]])), 0);
        let m = vec![vec![ratio(1, 2), ratio(1, 3)], vec![rational(3), rational(2)]];
        assert_eq!(dense_rank(&m), 1);
    }

    #[test]
    fn determinant() {
        let m: Vec<Vec<BigInt>> = [[2, 0, 1], [1, 3, 2], [1, 1, 2]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(bareiss_det(&m), BigInt::from(6));
    }

    proptest::proptest! {
        #[test]
        fn matches_gauss(entries in proptest::collection::vec(-2i64..=2, 30), cols in 1usize..6) {
            let rows = entries.len() / cols;
            let m: Vec<Vec<Rational>> = (0..rows)
                .map(|i| (0..cols).map(|j| rational(entries[i * cols + j])).collect())
                .collect();
            proptest::prop_assert_eq!(dense_rank(&m), gauss_rank(m.clone()));
        }
    }
}

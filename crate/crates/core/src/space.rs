//! The representation space `SRep_{Π^b α}(Q)`: quiver, super-dimension
//! vector and parity vector, with its coordinate variables and generic
//! matrices.

use crate::error::{Error, Result};
use crate::quiver::{Parity, ParityVector, Path, Quiver, SuperDim, SuperDimVector};
use crate::ring::text::VarNames;
use crate::ring::{Polynomial, Var};
use crate::supermatrix::{SuperFormat, SuperMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSpace {
    quiver: Quiver,
    alpha: SuperDimVector,
    parity: ParityVector,
}

impl RepSpace {
    pub fn new(quiver: Quiver, alpha: SuperDimVector, parity: ParityVector) -> Result<Self> {
        alpha.check(&quiver)?;
        parity.check(&quiver)?;
        Ok(RepSpace {
            quiver,
            alpha,
            parity,
        })
    }

    /// `b ≡ 0`.
    pub fn unshifted(quiver: Quiver, alpha: SuperDimVector) -> Result<Self> {
        let b = ParityVector::zero(&quiver);
        Self::new(quiver, alpha, b)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn alpha(&self) -> &SuperDimVector {
        &self.alpha
    }

    pub fn parity(&self) -> &ParityVector {
        &self.parity
    }

    pub fn num_edges(&self) -> usize {
        self.quiver.num_edges()
    }

    pub fn dim(&self, a: usize) -> usize {
        self.alpha.at(a).total() as usize
    }

    /// Parity of basis vector `i` of `Π^{b(a)} V(a)`.
    pub fn index_parity(&self, a: usize, i: usize) -> Parity {
        self.alpha.at(a).index_parity(i) + self.parity.at(a)
    }

    /// `|x_ij(e)| + b(h(e)) + b(t(e))`.
    pub fn var_parity(&self, e: usize, i: usize, j: usize) -> Parity {
        let edge = self.quiver.edge(e);
        self.index_parity(edge.head, i) + self.index_parity(edge.tail, j)
    }

    pub fn var(&self, e: usize, i: usize, j: usize) -> Var {
        Var::new(e, i, j, self.var_parity(e, i, j))
    }

    /// Variables of edge `e` in `(row, col)` order.
    pub fn edge_vars(&self, e: usize) -> Vec<Var> {
        let edge = self.quiver.edge(e);
        let (r, c) = (self.dim(edge.head), self.dim(edge.tail));
        (0..r)
            .flat_map(|i| (0..c).map(move |j| (i, j)))
            .map(|(i, j)| self.var(e, i, j))
            .collect()
    }

    /// All variables in the global order `(edge, row, col)`.
    pub fn vars(&self) -> Vec<Var> {
        (0..self.num_edges()).flat_map(|e| self.edge_vars(e)).collect()
    }

    /// Format `α(h(e)) × α(t(e))`; parity `b(h(e)) + b(t(e))`.
    pub fn edge_format(&self, e: usize) -> (SuperFormat, Parity) {
        let edge = self.quiver.edge(e);
        (
            SuperFormat::new(self.alpha.at(edge.head), self.alpha.at(edge.tail)),
            self.parity.at(edge.head) + self.parity.at(edge.tail),
        )
    }

    pub fn generic_matrix(&self, e: usize) -> Result<SuperMatrix<Polynomial>> {
        if e >= self.num_edges() {
            return Err(Error::UnknownEdge(format!("#{e}")));
        }
        let (format, parity) = self.edge_format(e);
        SuperMatrix::from_fn(format, parity, |i, j| Polynomial::var(self.var(e, i, j)))
    }

    /// `X(e₁)·X(e₂)⋯X(e_k)`, of format `α(h(e₁)) × α(t(e_k))`.
    pub fn path_product(&self, p: &Path) -> Result<SuperMatrix<Polynomial>> {
        let mut edges = p.edges().iter();
        let first = *edges.next().ok_or_else(|| Error::NotAPath(Vec::new()))?;
        let mut acc = self.generic_matrix(first)?;
        for &e in edges {
            acc = acc.mul(&self.generic_matrix(e)?)?;
        }
        Ok(acc)
    }

    pub fn sdim(&self, a: usize) -> SuperDim {
        self.alpha.at(a)
    }
}

impl VarNames for RepSpace {
    fn edge_name(&self, edge: usize) -> String {
        self.quiver.edge(edge).id.clone()
    }

    fn edge_index(&self, name: &str) -> Option<usize> {
        self.quiver.edge_by_id(name).ok()
    }

    fn var_parity(&self, edge: usize, row: usize, col: usize) -> Option<Parity> {
        let e = self.quiver.edge(edge);
        (row < self.dim(e.head) && col < self.dim(e.tail))
            .then(|| RepSpace::var_parity(self, edge, row, col))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::examples::{a3, kronecker, loop_quiver};
    use crate::ring::text::format_polynomial;

    fn sd(p: u32, q: u32) -> SuperDim {
        SuperDim::new(p, q)
    }

    #[test]
    fn loop_parities() {
        let q = loop_quiver();
        let s = RepSpace::unshifted(q.clone(), SuperDimVector::uniform(&q, sd(1, 1))).unwrap();
        let x = s.generic_matrix(0).unwrap();
        assert_eq!(x.get(0, 0).parity(), Some(Parity::Even));
        assert_eq!(x.get(1, 1).parity(), Some(Parity::Even));
        assert_eq!(x.get(0, 1).parity(), Some(Parity::Odd));
        assert_eq!(x.get(1, 0).parity(), Some(Parity::Odd));
    }

    #[test]
    fn twist_flips_kronecker() {
        let q = kronecker();
        let alpha = SuperDimVector::uniform(&q, sd(1, 1));
        let s0 = RepSpace::unshifted(q.clone(), alpha.clone()).unwrap();
        let s1 = RepSpace::new(q, alpha, ParityVector::from_bits(&[1, 0]).unwrap()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_ne!(s0.var_parity(0, i, j), s1.var_parity(0, i, j));
            }
        }
    }

    #[test]
    fn empty_format() {
        let q = kronecker();
        let s = RepSpace::unshifted(q, SuperDimVector(vec![sd(0, 0), sd(1, 1)])).unwrap();
        let x = s.generic_matrix(0).unwrap();
        assert_eq!((x.nrows(), x.ncols()), (2, 0));
    }

    #[test]
    fn path_products() {
        let q = loop_quiver();
        let s = RepSpace::unshifted(q.clone(), SuperDimVector::uniform(&q, sd(1, 0))).unwrap();
        let p = Path::new(&q, vec![0, 0]).unwrap();
        assert_eq!(s.path_product(&p).unwrap().get(0, 0), &Polynomial::var(s.var(0, 0, 0)).pow(2));

        let q = a3();
        let s = RepSpace::unshifted(q.clone(), SuperDimVector::uniform(&q, sd(1, 0))).unwrap();
        let p = Path::from_ids(&q, &["e2", "e1"]).unwrap();
        let m = s.path_product(&p).unwrap();
        assert_eq!(format_polynomial(m.get(0, 0), &s), "x[e1,1,1] * x[e2,1,1]");
    }
}

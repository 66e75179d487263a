//! Sparse matrices over exact rationals.

use nalgebra::DMatrix;
use num_traits::Zero;

use crate::scalar::{rat_to_f64, Radical, Rat};

/// Column-major sparse matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<(usize, Rat)>>, // each column sorted by row index
}

impl SparseMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            ncols,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rat)>,
    ) -> Self {
        let mut m = SparseMat::zeros(nrows, ncols);
        for (r, c, v) in triplets {
            m.add_entry(r, c, v);
        }
        m.normalize();
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMat::zeros(n, n);
        for i in 0..n {
            m.cols[i].push((i, Rat::from_integer(1.into())));
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn col(&self, c: usize) -> &[(usize, Rat)] {
        &self.cols[c]
    }

    /// Accumulates v into entry (r, c); call [`normalize`](Self::normalize)
    /// after a batch of updates.
    pub fn add_entry(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.nrows && c < self.ncols, "entry out of bounds");
        if v.is_zero() {
            return;
        }
        self.cols[c].push((r, v));
    }

    /// Sorts columns and merges duplicate row entries.
    pub fn normalize(&mut self) {
        for col in &mut self.cols {
            if col.is_empty() {
                continue;
            }
            col.sort_by_key(|(r, _)| *r);
            let mut merged: Vec<(usize, Rat)> = Vec::with_capacity(col.len());
            for (r, v) in col.drain(..) {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *col = merged;
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.cols[c]
            .binary_search_by_key(&r, |(row, _)| *row)
            .map(|i| self.cols[c][i].1.clone())
            .unwrap_or_else(|_| Rat::zero())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> SparseMat {
        let mut t = SparseMat::zeros(self.ncols, self.nrows);
        for (r, c, v) in self.entries() {
            t.cols[r].push((c, v.clone()));
        }
        t.normalize();
        t
    }

    pub fn scale(&self, s: &Rat) -> SparseMat {
        let cols = self
            .cols
            .iter()
            .map(|col| col.iter().map(|(r, v)| (*r, v * s)).collect())
            .collect();
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            cols,
        }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.nrows, other.nrows);
        assert_eq!(self.ncols, other.ncols);
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.cols[c].push((r, v.clone()));
        }
        out.normalize();
        out
    }

    pub fn sub(&self, other: &SparseMat) -> SparseMat {
        self.add(&other.scale(&-Rat::from_integer(1.into())))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// y = A·x over any scalar supporting `y += coeff * x`.
    pub fn matvec<T: LinComb>(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.ncols, "matvec dimension mismatch");
        let mut y = vec![T::lin_zero(); self.nrows];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_lin_zero() {
                continue;
            }
            for (r, v) in &self.cols[c] {
                y[*r].axpy(v, xc);
            }
        }
        y
    }

    /// y = Aᵀ·x.
    pub fn tr_matvec<T: LinComb>(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.nrows, "tr_matvec dimension mismatch");
        let mut y = vec![T::lin_zero(); self.ncols];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                y[c].axpy(v, &x[*r]);
            }
        }
        y
    }

    /// A·Aᵀ as an explicit sparse symmetric matrix (sum of column outer
    /// products).
    pub fn gram_left(&self) -> SparseMat {
        let mut acc = std::collections::BTreeMap::<(usize, usize), Rat>::new();
        for col in &self.cols {
            for (r1, v1) in col {
                for (r2, v2) in col {
                    let e = acc.entry((*r1, *r2)).or_insert_with(Rat::zero);
                    *e += v1 * v2;
                }
            }
        }
        let mut m = SparseMat::zeros(self.nrows, self.nrows);
        for ((r, c), v) in acc {
            if !v.is_zero() {
                m.cols[c].push((r, v));
            }
        }
        m
    }

    /// Aᵀ·A as an explicit sparse symmetric matrix (sum of row outer
    /// products).
    pub fn gram_right(&self) -> SparseMat {
        self.transpose().gram_left()
    }

    /// Stacks `self` on top of `other` (column counts must agree).
    pub fn vstack(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols, other.ncols);
        let mut m = SparseMat::zeros(self.nrows + other.nrows, self.ncols);
        for (r, c, v) in self.entries() {
            m.cols[c].push((r, v.clone()));
        }
        for (r, c, v) in other.entries() {
            m.cols[c].push((r + self.nrows, v.clone()));
        }
        m.normalize();
        m
    }

    pub fn to_dense_f64(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.nrows, self.ncols);
        for (r, c, v) in self.entries() {
            m[(r, c)] = rat_to_f64(v);
        }
        m
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.entries()
            .map(|(_, _, v)| rat_to_f64(v).abs())
            .fold(0.0, f64::max)
    }

    /// Max row sum of absolute values, an upper bound on the spectral radius
    /// of a symmetric matrix.
    pub fn inf_norm_f64(&self) -> f64 {
        let mut sums = vec![0.0; self.nrows];
        for (r, _, v) in self.entries() {
            sums[r] += rat_to_f64(v).abs();
        }
        sums.into_iter().fold(0.0, f64::max)
    }
}

/// Scalars usable on the right of a rational sparse matrix.
pub trait LinComb: Clone {
    fn lin_zero() -> Self;
    fn is_lin_zero(&self) -> bool;
    /// self += coeff·x
    fn axpy(&mut self, coeff: &Rat, x: &Self);
}

impl LinComb for Rat {
    fn lin_zero() -> Self {
        Rat::zero()
    }
    fn is_lin_zero(&self) -> bool {
        self.is_zero()
    }
    fn axpy(&mut self, coeff: &Rat, x: &Self) {
        *self += coeff * x;
    }
}

impl LinComb for Radical {
    fn lin_zero() -> Self {
        Radical::zero()
    }
    fn is_lin_zero(&self) -> bool {
        self.is_zero()
    }
    fn axpy(&mut self, coeff: &Rat, x: &Self) {
        *self += x.mul_rat(coeff);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    #[test]
    fn matvec_and_transpose() {
        // [[1, 2], [0, -3]]
        let m = SparseMat::from_triplets(
            2,
            2,
            vec![(0, 0, rat_int(1)), (0, 1, rat_int(2)), (1, 1, rat_int(-3))],
        );
        let y = m.matvec(&[rat_int(1), rat_int(1)]);
        assert_eq!(y, vec![rat_int(3), rat_int(-3)]);
        let t = m.transpose();
        assert_eq!(t.get(1, 0), rat_int(2));
        assert_eq!(t.get(0, 1), rat_int(0));
    }

    #[test]
    fn gram_products() {
        // column (1, -1): A·Aᵀ = [[1,-1],[-1,1]]
        let m = SparseMat::from_triplets(2, 1, vec![(0, 0, rat_int(1)), (1, 0, rat_int(-1))]);
        let g = m.gram_left();
        assert_eq!(g.get(0, 0), rat_int(1));
        assert_eq!(g.get(0, 1), rat_int(-1));
        assert!(g.is_symmetric());
        let gr = m.gram_right();
        assert_eq!(gr.get(0, 0), rat_int(2));
    }

    #[test]
    fn duplicate_triplets_merge() {
        let m = SparseMat::from_triplets(1, 1, vec![(0, 0, rat(1, 2)), (0, 0, rat(-1, 2))]);
        assert!(m.is_zero());
    }
}

//! Exact rational linear algebra: reduced row echelon form, ranks,
//! nullspaces, Gram–Schmidt orthogonalization, and projections.
//!
//! Everything here is deterministic. Rows are reduced incrementally into a
//! reduced row echelon form, whose pivot columns are intrinsic to the matrix
//! under the fixed column order (for boundary matrices that order is the
//! lexicographic simplex order), so kernels and orthogonal bases are
//! reproducible across runs.

use num_traits::Zero;

use crate::scalar::{Radical, Rat};
use crate::sparse::SparseMat;

type Row = Vec<(usize, Rat)>; // sorted by column index

fn row_leading(row: &Row) -> Option<usize> {
    row.first().map(|(c, _)| *c)
}

/// dst -= factor * src (sparse merge).
fn row_axpy(dst: &Row, factor: &Rat, src: &Row) -> Row {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let mut i = 0;
    let mut j = 0;
    while i < dst.len() || j < src.len() {
        match (dst.get(i), src.get(j)) {
            (Some((cd, vd)), Some((cs, vs))) if cd == cs => {
                let v = vd - factor * vs;
                if !v.is_zero() {
                    out.push((*cd, v));
                }
                i += 1;
                j += 1;
            }
            (Some((cd, vd)), Some((cs, _))) if cd < cs => {
                out.push((*cd, vd.clone()));
                i += 1;
            }
            (Some(_), Some((cs, vs))) => {
                out.push((*cs, -(factor * vs)));
                j += 1;
            }
            (Some((cd, vd)), None) => {
                out.push((*cd, vd.clone()));
                i += 1;
            }
            (None, Some((cs, vs))) => {
                out.push((*cs, -(factor * vs)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Reduced row echelon form of a sparse rational matrix.
pub struct Rref {
    /// Pivot rows, leading coefficient 1, sorted by pivot column.
    pub rows: Vec<Row>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivot_index(&self, col: usize) -> Option<usize> {
        self.pivots.binary_search(&col).ok()
    }

    /// Fully reduces an external row against the pivot rows.
    fn reduce_row(&self, mut row: Row) -> Row {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < row.len() {
                let (c, v) = row[i].clone();
                if let Some(p) = self.pivot_index(c) {
                    row = row_axpy(&row, &v, &self.rows[p]);
                    changed = true;
                    // restart scan; leading structure shifted
                    i = 0;
                    continue;
                }
                i += 1;
            }
            if !changed {
                return row;
            }
        }
    }

    fn insert(&mut self, row: Row) {
        let mut row = self.reduce_row(row);
        if row.is_empty() {
            return;
        }
        let lead = row_leading(&row).unwrap();
        let inv = {
            let (_, v) = &row[0];
            Rat::from_integer(1.into()) / v.clone()
        };
        for (_, v) in row.iter_mut() {
            *v *= &inv;
        }
        // clear this column from existing pivot rows
        for r in &mut self.rows {
            if let Ok(k) = r.binary_search_by_key(&lead, |(c, _)| *c) {
                let factor = r[k].1.clone();
                *r = row_axpy(r, &factor, &row);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, row);
    }
}

/// Computes the unique reduced row echelon form.
pub fn rref(mat: &SparseMat) -> Rref {
    let mut rows: Vec<Row> = vec![Vec::new(); mat.nrows()];
    for (r, c, v) in mat.entries() {
        rows[r].push((c, v.clone()));
    }
    let mut out = Rref {
        rows: Vec::new(),
        pivots: Vec::new(),
        ncols: mat.ncols(),
    };
    for mut row in rows {
        row.sort_by_key(|(c, _)| *c);
        out.insert(row);
    }
    out
}

pub fn rank(mat: &SparseMat) -> usize {
    rref(mat).rank()
}

/// Basis of the (right) nullspace, one vector per free column, in free-column
/// order. Each vector has a 1 in its free column.
pub fn nullspace(mat: &SparseMat) -> Vec<Vec<(usize, Rat)>> {
    let r = rref(mat);
    let mut pivot_set = vec![false; r.ncols];
    for &p in &r.pivots {
        pivot_set[p] = true;
    }
    let mut basis = Vec::new();
    for free in 0..r.ncols {
        if pivot_set[free] {
            continue;
        }
        let mut v: Vec<(usize, Rat)> = vec![(free, Rat::from_integer(1.into()))];
        for (row, &pcol) in r.rows.iter().zip(&r.pivots) {
            if let Ok(k) = row.binary_search_by_key(&free, |(c, _)| *c) {
                v.push((pcol, -row[k].1.clone()));
            }
        }
        v.sort_by_key(|(c, _)| *c);
        basis.push(v);
    }
    basis
}

pub fn nullity(mat: &SparseMat) -> usize {
    mat.ncols() - rank(mat)
}

fn sparse_to_dense(v: &[(usize, Rat)], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn dot_radical(a: &[Radical], b: &[Rat]) -> Radical {
    assert_eq!(a.len(), b.len());
    let mut s = Radical::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x.mul_rat(y);
        }
    }
    s
}

/// An orthogonal (not normalized) rational basis of a subspace, kept with the
/// exact squared norms of its vectors.
#[derive(Clone, Debug)]
pub struct OrthoBasis {
    pub vectors: Vec<Vec<Rat>>,
    pub norms_sq: Vec<Rat>,
    pub ambient_dim: usize,
}

impl OrthoBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Gram–Schmidt over the given spanning vectors, dropping dependents.
    pub fn from_span(span: impl IntoIterator<Item = Vec<Rat>>, ambient_dim: usize) -> Self {
        let mut basis = OrthoBasis {
            vectors: Vec::new(),
            norms_sq: Vec::new(),
            ambient_dim,
        };
        for v in span {
            assert_eq!(v.len(), ambient_dim);
            let mut w = v;
            for (b, nsq) in basis.vectors.iter().zip(&basis.norms_sq) {
                let c = dot(&w, b) / nsq;
                if !c.is_zero() {
                    for (wi, bi) in w.iter_mut().zip(b) {
                        *wi -= &c * bi;
                    }
                }
            }
            let nsq = dot(&w, &w);
            if !nsq.is_zero() {
                basis.vectors.push(w);
                basis.norms_sq.push(nsq);
            }
        }
        basis
    }

    pub fn from_sparse_span<'a>(
        span: impl IntoIterator<Item = &'a [(usize, Rat)]>,
        ambient_dim: usize,
    ) -> Self {
        Self::from_span(
            span.into_iter().map(|v| sparse_to_dense(v, ambient_dim)),
            ambient_dim,
        )
    }

    /// Columns of a sparse matrix as the spanning set (used for boundary
    /// images).
    pub fn from_columns(mat: &SparseMat) -> Self {
        Self::from_span(
            (0..mat.ncols()).map(|c| sparse_to_dense(mat.col(c), mat.nrows())),
            mat.nrows(),
        )
    }

    /// ‖proj_span(v)‖² for an exact rational vector.
    pub fn projection_norm_sq(&self, v: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (b, nsq) in self.vectors.iter().zip(&self.norms_sq) {
            let d = dot(v, b);
            if !d.is_zero() {
                s += &d * &d / nsq;
            }
        }
        s
    }

    /// ‖proj_span(v)‖² for a radical vector.
    pub fn projection_norm_sq_radical(&self, v: &[Radical]) -> Radical {
        let mut s = Radical::zero();
        for (b, nsq) in self.vectors.iter().zip(&self.norms_sq) {
            let d = dot_radical(v, b);
            if !d.is_zero() {
                let dsq = &d * &d;
                s += dsq.mul_rat(&(Rat::from_integer(1.into()) / nsq));
            }
        }
        s
    }

    /// proj_span(v) componentwise.
    pub fn project_radical(&self, v: &[Radical]) -> Vec<Radical> {
        let mut out = vec![Radical::zero(); self.ambient_dim];
        for (b, nsq) in self.vectors.iter().zip(&self.norms_sq) {
            let d = dot_radical(v, b);
            if d.is_zero() {
                continue;
            }
            let inv = Rat::from_integer(1.into()) / nsq;
            let coeff = d.mul_rat(&inv);
            for (o, bi) in out.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *o += coeff.mul_rat(bi);
                }
            }
        }
        out
    }
}

/// Solves the dense symmetric positive-definite system G·x = b exactly
/// (Gaussian elimination, first-nonzero pivoting). Used for expressing
/// vectors in a non-orthogonal basis via its Gram matrix.
pub fn solve_dense(g: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = g.len();
    if n == 0 {
        return Some(Vec::new());
    }
    assert_eq!(b.len(), n);
    let mut a: Vec<Vec<Rat>> = g
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = Rat::from_integer(1.into()) / a[col][col].clone();
        for v in a[col][col..].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Some(a.iter().map(|row| row[n].clone()).collect())
}

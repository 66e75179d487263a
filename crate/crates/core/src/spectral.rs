//! Floating-point spectral routines and exact/float spectral summaries.
//!
//! Dense symmetric eigendecomposition handles everything up to
//! [`DENSE_EIG_LIMIT`]; beyond that an explicitly seeded Lanczos iteration
//! with full reorthogonalization estimates the extremal spectrum and reports
//! non-convergence instead of silently truncating.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boundary::Laplacian;
use crate::error::{Error, Result};
use crate::exact::nullity;
use crate::sparse::SparseMat;

pub const DENSE_EIG_LIMIT: usize = 4096;
pub const LANCZOS_TOL: f64 = 1e-10;

/// Eigenvalues below `zero_cutoff(scale)` are treated as exact zeros in the
/// floating backend.
pub fn zero_cutoff(max_abs_entry: f64) -> f64 {
    1e-9 * max_abs_entry.max(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

/// Eigenvalues sorted ascending, with eigenvectors as matching columns.
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Dense symmetric eigendecomposition; errors on non-convergence.
pub fn dense_sym_eig(m: &DMatrix<f64>) -> Result<EigenPairs> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            left: m.nrows(),
            right: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Ok(EigenPairs {
            values: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
        });
    }
    let eig = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 10_000)
        .ok_or_else(|| Error::EigenFailure("symmetric QR did not converge".into()))?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(m.nrows(), m.ncols());
    for (new, &old) in order.iter().enumerate() {
        vectors.set_column(new, &eig.eigenvectors.column(old));
    }
    Ok(EigenPairs { values, vectors })
}

/// Seeded Lanczos with full reorthogonalization. Returns the Ritz values of
/// the converged extremal part of the spectrum (ascending).
pub fn lanczos_extremal(
    mat: &SparseMat,
    max_iter: usize,
    tol: f64,
    seed: u64,
) -> Result<Vec<f64>> {
    let n = mat.nrows();
    if n != mat.ncols() {
        return Err(Error::DimensionMismatch {
            left: n,
            right: mat.ncols(),
        });
    }
    // f64 copy for iteration
    let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (r, c, v) in mat.entries() {
        cols[c].push((r, crate::scalar::rat_to_f64(v)));
    }
    let spmv = |x: &[f64], y: &mut [f64]| {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (c, col) in cols.iter().enumerate() {
            let xc = x[c];
            if xc == 0.0 {
                continue;
            }
            for (r, v) in col {
                y[*r] += v * xc;
            }
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);

    let m = max_iter.min(n);
    let mut alphas = Vec::with_capacity(m);
    let mut betas = Vec::with_capacity(m);
    let mut basis: Vec<Vec<f64>> = vec![v.clone()];
    let mut w = vec![0.0; n];

    for j in 0..m {
        spmv(&basis[j], &mut w);
        let alpha: f64 = w.iter().zip(&basis[j]).map(|(a, b)| a * b).sum();
        alphas.push(alpha);
        // full reorthogonalization
        for prev in &basis {
            let proj: f64 = w.iter().zip(prev).map(|(a, b)| a * b).sum();
            w.iter_mut().zip(prev).for_each(|(a, b)| *a -= proj * b);
        }
        for prev in &basis {
            let proj: f64 = w.iter().zip(prev).map(|(a, b)| a * b).sum();
            w.iter_mut().zip(prev).for_each(|(a, b)| *a -= proj * b);
        }
        let beta = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        betas.push(beta);
        if beta < tol {
            // Krylov space exhausted: the tridiagonal spectrum is exact
            break;
        }
        if basis.len() < m {
            basis.push(w.iter().map(|x| x / beta).collect());
        } else {
            break;
        }
    }

    let k = alphas.len();
    let mut tri = DMatrix::zeros(k, k);
    for i in 0..k {
        tri[(i, i)] = alphas[i];
        if i + 1 < k {
            tri[(i, i + 1)] = betas[i];
            tri[(i + 1, i)] = betas[i];
        }
    }
    let eig = dense_sym_eig(&tri)?;
    let exhausted = betas.last().map(|b| *b < tol).unwrap_or(true);
    if !exhausted && k == max_iter {
        // Ritz residual for the extremal pairs: |β_k · s_k(i)|
        let beta_k = *betas.last().unwrap();
        let bottom_ok = eig.vectors.column(0)[k - 1].abs() * beta_k < tol.max(1e-8);
        if !bottom_ok {
            return Err(Error::EigenFailure(format!(
                "Lanczos did not converge in {max_iter} iterations (residual {:.3e})",
                eig.vectors.column(0)[k - 1].abs() * beta_k
            )));
        }
    }
    Ok(eig.values)
}

/// Spectral facts about a Laplacian (or any PSD operator): the kernel
/// dimension, the spectral gap γ = smallest nonzero |λ|, and the zero cutoff
/// that separated them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub backend: Backend,
    pub dim: usize,
    pub kernel_dim: usize,
    /// Smallest nonzero |λ|; `None` when the operator is identically zero.
    pub gap: Option<f64>,
    pub zero_cutoff: f64,
    /// Full ascending spectrum (float backend only).
    pub eigenvalues: Option<Vec<f64>>,
}

/// Summary of Δ_p. The exact backend computes the kernel dimension by
/// rational elimination of the stacked factor matrices and reports the gap
/// from the float spectrum only as a diagnostic; the float backend works
/// entirely from the eigendecomposition.
pub fn spectral_summary(lap: &Laplacian, backend: Backend) -> Result<SpectralSummary> {
    let dim = lap.dim();
    match backend {
        Backend::Exact => {
            let kernel_dim = nullity(&lap.kernel_stack());
            Ok(SpectralSummary {
                backend,
                dim,
                kernel_dim,
                gap: None,
                zero_cutoff: 0.0,
                eigenvalues: None,
            })
        }
        Backend::Float => summarize_float(&lap.full),
    }
}

/// Float summary of an arbitrary symmetric PSD rational matrix.
pub fn summarize_float(mat: &SparseMat) -> Result<SpectralSummary> {
    let dim = mat.nrows();
    let cutoff = zero_cutoff(mat.max_abs_f64());
    let values = if dim <= DENSE_EIG_LIMIT {
        dense_sym_eig(&mat.to_dense_f64())?.values
    } else {
        lanczos_extremal(mat, 300, LANCZOS_TOL, 0x5eed)?
    };
    let kernel_dim = values.iter().filter(|v| v.abs() <= cutoff).count();
    let gap = values
        .iter()
        .map(|v| v.abs())
        .filter(|v| *v > cutoff)
        .fold(None, |acc: Option<f64>, v| {
            Some(acc.map_or(v, |a| a.min(v)))
        });
    Ok(SpectralSummary {
        backend: Backend::Float,
        dim,
        kernel_dim,
        gap,
        zero_cutoff: cutoff,
        eigenvalues: Some(values),
    })
}

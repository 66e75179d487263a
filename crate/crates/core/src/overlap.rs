//! Kernel-overlap and low-energy-overlap primitives: given a Hermitian
//! operator and a succinctly described state, measure the state's projection
//! onto the kernel (exactly, by rational elimination) or onto the sub-η
//! eigenspace (by eigendecomposition), or decide the thresholded question by
//! simulated phase estimation.


use crate::error::{Error, Result};
use crate::exact::{nullspace, OrthoBasis};
use crate::qpe::{qpe_decide, QpeConfig, QpeRun, WindowMode};
use crate::scalar::{rat_to_f64, Rat};
use crate::sparse::SparseMat;
use crate::spectral::{dense_sym_eig, summarize_float, SpectralSummary};
use crate::state::ExactState;

/// A Hermitian operator with optional rank-one decomposition and locality
/// metadata.
#[derive(Clone, Debug)]
pub struct HamiltonianMatrix {
    matrix: SparseMat,
    /// Named constituent terms, when the operator came from a builder.
    pub terms: Option<Vec<(String, SparseMat)>>,
    /// Largest number of tensor factors any term acts on, when known.
    pub locality: Option<usize>,
}

impl HamiltonianMatrix {
    pub fn new(matrix: SparseMat) -> Result<Self> {
        check_hermitian(&matrix)?;
        Ok(HamiltonianMatrix {
            matrix,
            terms: None,
            locality: None,
        })
    }

    pub fn with_terms(
        matrix: SparseMat,
        terms: Vec<(String, SparseMat)>,
        locality: Option<usize>,
    ) -> Result<Self> {
        let h = Self::new(matrix)?;
        // the decomposition must sum back to the operator
        let mut sum = SparseMat::zeros(h.matrix.nrows(), h.matrix.ncols());
        for (_, t) in &terms {
            sum = sum.add(t);
        }
        if !sum.sub(&h.matrix).is_zero() {
            return Err(Error::InvalidParameter(
                "term list does not sum to the operator".into(),
            ));
        }
        Ok(HamiltonianMatrix {
            terms: Some(terms),
            locality,
            ..h
        })
    }

    pub fn matrix(&self) -> &SparseMat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Exact orthogonal basis of ker H.
    pub fn kernel_basis(&self) -> OrthoBasis {
        let ns = nullspace(&self.matrix);
        OrthoBasis::from_sparse_span(ns.iter().map(|v| v.as_slice()), self.dim())
    }
}

fn check_hermitian(m: &SparseMat) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            left: m.nrows(),
            right: m.ncols(),
        });
    }
    for (r, c, v) in m.entries() {
        if m.get(c, r) != *v {
            return Err(Error::NonHermitian { row: r, col: c });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OverlapMode {
    Kernel,
    /// Projection onto eigenvectors with eigenvalue strictly below η.
    LowEnergy(f64),
}

/// Exact squared kernel overlap ‖proj_{ker H}(ψ)‖² of an exact state.
pub fn exact_kernel_overlap_sq(h: &HamiltonianMatrix, state: &ExactState) -> Result<Rat> {
    if state.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            left: state.dim(),
            right: h.dim(),
        });
    }
    if !state.is_unit() {
        return Err(Error::NotUnitNorm(state.norm_sq().to_string()));
    }
    let basis = h.kernel_basis();
    Ok(&state.scale_sq * basis.projection_norm_sq(&state.amps))
}

/// ‖proj(ψ)‖ onto the kernel or the sub-η eigenspace. The kernel path is
/// exact (rational elimination, result returned as a float of the exact
/// value); the low-energy path uses the eigendecomposition with strict
/// inequality λ < η.
pub fn exact_overlap(
    h: &HamiltonianMatrix,
    state: &ExactState,
    mode: OverlapMode,
) -> Result<f64> {
    match mode {
        OverlapMode::Kernel => {
            let sq = exact_kernel_overlap_sq(h, state)?;
            Ok(rat_to_f64(&sq).max(0.0).sqrt())
        }
        OverlapMode::LowEnergy(eta) => {
            if eta <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "low-energy threshold must be positive, got {eta}"
                )));
            }
            float_overlap(h, &state.to_f64(), |lambda, _| lambda < eta)
        }
    }
}

/// Float-path overlap onto the span of eigenvectors selected by the
/// predicate (eigenvalue, zero-cutoff) ↦ bool.
pub fn float_overlap(
    h: &HamiltonianMatrix,
    state: &[f64],
    select: impl Fn(f64, f64) -> bool,
) -> Result<f64> {
    if state.len() != h.dim() {
        return Err(Error::DimensionMismatch {
            left: state.len(),
            right: h.dim(),
        });
    }
    let nsq: f64 = state.iter().map(|x| x * x).sum();
    if (nsq - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnitNorm(format!("{nsq}")));
    }
    if h.dim() > crate::spectral::DENSE_EIG_LIMIT {
        return Err(Error::EigenFailure(format!(
            "eigenspace overlaps need the full eigenbasis; dimension {} exceeds {}",
            h.dim(),
            crate::spectral::DENSE_EIG_LIMIT
        )));
    }
    let eig = dense_sym_eig(&h.matrix.to_dense_f64())?;
    let cutoff = crate::spectral::zero_cutoff(h.matrix.max_abs_f64());
    let mut acc = 0.0;
    for (j, lambda) in eig.values.iter().enumerate() {
        if select(*lambda, cutoff) {
            let ip: f64 = eig
                .vectors
                .column(j)
                .iter()
                .zip(state)
                .map(|(a, b)| a * b)
                .sum();
            acc += ip * ip;
        }
    }
    Ok(acc.sqrt())
}

/// Kernel overlap through the float spectrum (|λ| ≤ cutoff), for
/// cross-checking the exact path.
pub fn float_kernel_overlap(h: &HamiltonianMatrix, state: &[f64]) -> Result<f64> {
    float_overlap(h, state, |lambda, cutoff| lambda.abs() <= cutoff)
}

/// Spectral gap γ(H) = min nonzero |λ|, with the kernel dimension alongside.
pub fn spectral_gap(h: &HamiltonianMatrix) -> Result<SpectralSummary> {
    summarize_float(&h.matrix)
}

/// The repeat-and-threshold phase-estimation decision: output 1 iff some
/// repetition measures a phase inside the zero-acceptance window.
pub fn qpe_overlap_decide(
    h: &HamiltonianMatrix,
    state: &[f64],
    cfg: &QpeConfig,
    mode: OverlapMode,
) -> Result<QpeRun> {
    let window_mode = match mode {
        OverlapMode::Kernel => WindowMode::Kernel,
        OverlapMode::LowEnergy(eta) => WindowMode::LowEnergy(eta),
    };
    qpe_decide(&h.matrix, state, cfg, window_mode)
}

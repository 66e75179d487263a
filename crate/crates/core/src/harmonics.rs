//! Harmonic subspaces of combinatorial Laplacians and the harmonic
//! persistence decision procedures.
//!
//! The harmonic space in degree p is ker Δ_p = Z_p ∩ B_p^⊥: cycles with no
//! boundary component. A class of K₁ persists to K₂ ⊇ K₁ when its harmonic
//! representative keeps a nonzero projection onto ker Δ_p(K₂); the decision
//! procedures threshold that projection norm against δ.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::boundary::{apply_boundary, boundary_matrix, laplacian};
use crate::chain::{expand_subset_state, Chain, SubsetStateDescriptor};
use crate::complex::CliqueComplex;
use crate::error::{Error, Result};
use crate::exact::{nullspace, OrthoBasis};
use crate::qpe::{qpe_decide, QpeConfig, QpeSample, WindowMode};
use crate::scalar::{rat_to_f64, Radical, Rat};
use crate::spectral::{summarize_float, Backend};

/// Heuristic stand-in for the 1/poly(n) promise on the spectral gap: decisions
/// on operators with a smaller gap are flagged as promise violations.
pub const GAP_PROMISE_FLOOR: f64 = 1e-6;

/// Exact orthogonal basis of the harmonic space ker Δ_p = Z_p ∩ B_p^⊥,
/// computed from the stacked factor matrices [∂_p ; ∂_{p+1}ᵀ] without ever
/// squaring the operators. Deterministic: nullspace vectors come out of the
/// reduced echelon form in lexicographic simplex order.
pub fn harmonic_basis(complex: &CliqueComplex, p: usize) -> Result<OrthoBasis> {
    let lap = laplacian(complex, p)?;
    let stack = lap.kernel_stack();
    let kernel = nullspace(&stack);
    Ok(OrthoBasis::from_sparse_span(
        kernel.iter().map(|v| v.as_slice()),
        complex.len(p),
    ))
}

/// Exact orthogonal basis of B_p = Im ∂_{p+1}.
pub fn boundary_image_basis(complex: &CliqueComplex, p: usize) -> Result<OrthoBasis> {
    complex.check_dim(p)?;
    if p + 1 > complex.max_dim() || complex.len(p + 1) == 0 {
        return Ok(OrthoBasis {
            vectors: Vec::new(),
            norms_sq: Vec::new(),
            ambient_dim: complex.len(p),
        });
    }
    let d = boundary_matrix(complex, p + 1)?;
    Ok(OrthoBasis::from_columns(&d))
}

/// ‖proj_{ker Δ_p}(chain)‖² as an exact radical. The chain must be unit norm.
pub fn harmonic_projection_norm_sq(
    complex: &CliqueComplex,
    p: usize,
    chain: &Chain,
) -> Result<Radical> {
    if chain.dimension() != p {
        return Err(Error::DimensionMismatch {
            left: chain.dimension(),
            right: p,
        });
    }
    chain.validate(complex)?;
    let nsq = chain.norm_sq();
    if !nsq.eq_rat(&Rat::one()) {
        return Err(Error::NotUnitNorm(format!("{nsq}")));
    }
    let basis = harmonic_basis(complex, p)?;
    let dense = chain.to_dense_radical(complex.len(p));
    Ok(basis.projection_norm_sq_radical(&dense))
}

/// Maps a cycle to its harmonic representative: the projection onto B_p^⊥.
/// Errors if the input is not a cycle.
pub fn harmonic_representative(complex: &CliqueComplex, chain: &Chain) -> Result<Chain> {
    chain.validate(complex)?;
    let p = chain.dimension();
    if p > 0 {
        let b = apply_boundary(complex, chain)?;
        if !b.is_zero() {
            return Err(Error::NotACycle(b.support_size()));
        }
    }
    let basis = boundary_image_basis(complex, p)?;
    let dense = chain.to_dense_radical(complex.len(p));
    let proj = basis.project_radical(&dense);
    let entries = dense
        .into_iter()
        .zip(proj)
        .enumerate()
        .map(|(i, (z, b))| (i, z - b))
        .collect();
    Ok(Chain::from_entries(p, entries))
}

/// The matrix of the harmonic persistence map 𝓗_p(K₁) → 𝓗_p(K₂) (projection
/// onto B_p(K₂)^⊥ restricted to the K₁ harmonics), expressed in the
/// deterministic orthogonal harmonic bases of both complexes.
#[derive(Clone, Debug)]
pub struct PersistenceMap {
    /// Column q holds the 𝓗_p(K₂)-coordinates of the image of the q-th
    /// K₁ harmonic basis vector. Dimensions: dim 𝓗_p(K₂) × dim 𝓗_p(K₁).
    pub matrix: Vec<Vec<Rat>>,
    pub domain: OrthoBasis,
    pub codomain: OrthoBasis,
}

impl PersistenceMap {
    pub fn rows(&self) -> usize {
        self.codomain.dim()
    }

    pub fn cols(&self) -> usize {
        self.domain.dim()
    }

    pub fn rank(&self) -> usize {
        if self.rows() == 0 || self.cols() == 0 {
            return 0;
        }
        let triplets: Vec<(usize, usize, Rat)> = self
            .matrix
            .iter()
            .enumerate()
            .flat_map(|(c, col)| {
                col.iter()
                    .enumerate()
                    .map(move |(r, v)| (r, c, v.clone()))
            })
            .collect();
        crate::exact::rank(&crate::sparse::SparseMat::from_triplets(
            self.rows(),
            self.cols(),
            triplets,
        ))
    }
}

/// Index map embedding C_p(K₁) into C_p(K₂). Errors unless K₁ ⊆ K₂ in
/// degree p.
pub fn embedding_indices(
    k1: &CliqueComplex,
    k2: &CliqueComplex,
    p: usize,
) -> Result<Vec<usize>> {
    k1.simplices(p)
        .iter()
        .map(|s| {
            k2.index_of(s).ok_or_else(|| {
                Error::NotASubcomplex(format!("simplex {:?} of K1 missing from K2", s.vertices()))
            })
        })
        .collect()
}

fn embed_dense(v: &[Rat], indices: &[usize], ambient: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); ambient];
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            out[indices[i]] = x.clone();
        }
    }
    out
}

/// Reindexes a chain over K₁ as a chain over K₂.
pub fn embed_chain(
    k1: &CliqueComplex,
    k2: &CliqueComplex,
    chain: &Chain,
) -> Result<Chain> {
    let indices = embedding_indices(k1, k2, chain.dimension())?;
    Ok(Chain::from_entries(
        chain.dimension(),
        chain
            .iter()
            .map(|(i, c)| (indices[i], c.clone()))
            .collect(),
    ))
}

pub fn persistence_map(
    k1: &CliqueComplex,
    k2: &CliqueComplex,
    p: usize,
) -> Result<PersistenceMap> {
    let domain = harmonic_basis(k1, p)?;
    let codomain = harmonic_basis(k2, p)?;
    let b2 = boundary_image_basis(k2, p)?;
    let indices = embedding_indices(k1, k2, p)?;
    let ambient2 = k2.len(p);

    let mut matrix = Vec::with_capacity(domain.dim());
    for v in &domain.vectors {
        let v2 = embed_dense(v, &indices, ambient2);
        // proj onto B_p(K2)^⊥
        let mut w = v2.clone();
        for (b, nsq) in b2.vectors.iter().zip(&b2.norms_sq) {
            let c = crate::exact::dot(&v2, b) / nsq;
            if !c.is_zero() {
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= &c * bi;
                }
            }
        }
        // coordinates in the orthogonal K2 harmonic basis
        let mut coords = Vec::with_capacity(codomain.dim());
        let mut residual = w.clone();
        for (h, nsq) in codomain.vectors.iter().zip(&codomain.norms_sq) {
            let c = crate::exact::dot(&w, h) / nsq;
            for (ri, hi) in residual.iter_mut().zip(h) {
                *ri -= &c * hi;
            }
            coords.push(c);
        }
        debug_assert!(
            residual.iter().all(|x| x.is_zero()),
            "persistence image left the harmonic space"
        );
        matrix.push(coords);
    }
    Ok(PersistenceMap {
        matrix,
        domain,
        codomain,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecisionMethod {
    Exact,
    Qpe,
}

/// Outcome of a δ-thresholded harmonic decision, with diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub outcome: u8,
    /// Measured projection norm (floating representation).
    pub norm: f64,
    /// Exact ‖proj‖², present for the exact method. Rational in the common
    /// equal-block case, a radical otherwise.
    #[serde(skip)]
    pub norm_sq: Option<Radical>,
    pub gap: Option<f64>,
    pub method: DecisionMethod,
    pub promise_violated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repetitions: Option<u32>,
    #[serde(skip)]
    pub samples: Option<Vec<QpeSample>>,
}

/// A δ-harmonic-persistence problem instance: nested complexes, a degree, a
/// succinct description of the K₁ harmonic, and the threshold.
#[derive(Clone, Debug)]
pub struct PersistenceInstance {
    pub k1: CliqueComplex,
    pub k2: CliqueComplex,
    pub p: usize,
    pub descriptor: SubsetStateDescriptor,
    pub delta: Rat,
}

impl PersistenceInstance {
    pub fn new(
        k1: CliqueComplex,
        k2: CliqueComplex,
        p: usize,
        descriptor: SubsetStateDescriptor,
        delta: Rat,
    ) -> Result<Self> {
        if !delta.is_positive() || delta >= Rat::one() {
            return Err(Error::InvalidParameter(format!(
                "delta must lie in (0,1), got {delta}"
            )));
        }
        if !k1.is_subcomplex_of(&k2) {
            return Err(Error::NotASubcomplex(
                "K1 is not a subcomplex of K2".into(),
            ));
        }
        k1.check_dim(p)?;
        k2.check_dim(p)?;
        Ok(PersistenceInstance {
            k1,
            k2,
            p,
            descriptor,
            delta,
        })
    }

    /// The expanded K₁ chain, reindexed into K₂.
    pub fn sigma_in_k2(&self) -> Result<Chain> {
        let sigma = expand_subset_state(&self.k1, &self.descriptor)?;
        embed_chain(&self.k1, &self.k2, &sigma)
    }

    /// Checks that the described chain is harmonic in K₁ (guaranteed for
    /// reduction-produced instances; optional for hand-built ones).
    pub fn validate_sigma_harmonic(&self) -> Result<bool> {
        let sigma = expand_subset_state(&self.k1, &self.descriptor)?;
        let nsq = harmonic_projection_norm_sq(&self.k1, self.p, &sigma)?;
        Ok(nsq.eq_rat(&Rat::one()))
    }
}

fn float_gap_of(complex: &CliqueComplex, p: usize) -> Result<Option<f64>> {
    let lap = laplacian(complex, p)?;
    Ok(summarize_float(&lap.full)?.gap)
}

fn exact_decision(
    norm_sq: Radical,
    delta: &Rat,
    gap: Option<f64>,
) -> Decision {
    let delta_sq = delta * delta;
    let at_least_delta = norm_sq.cmp_rat(&delta_sq) != std::cmp::Ordering::Less;
    let positive = !norm_sq.is_zero();
    // flagged when the measured norm falls strictly between the two promised
    // regimes (zero at desk scale, and ≥ δ), or the gap promise fails
    let between = positive && !at_least_delta;
    let gap_bad = gap.map(|g| g < GAP_PROMISE_FLOOR).unwrap_or(false);
    Decision {
        outcome: at_least_delta as u8,
        norm: norm_sq.to_f64().max(0.0).sqrt(),
        norm_sq: Some(norm_sq),
        gap,
        method: DecisionMethod::Exact,
        promise_violated: between || gap_bad,
        repetitions: None,
        samples: None,
    }
}

fn float_decision(mat: &crate::sparse::SparseMat, state: &[f64], delta: &Rat) -> Result<Decision> {
    if mat.nrows() > crate::spectral::DENSE_EIG_LIMIT {
        return Err(Error::EigenFailure(format!(
            "float decisions need the full eigenbasis; dimension {} exceeds {} (use the exact backend)",
            mat.nrows(),
            crate::spectral::DENSE_EIG_LIMIT
        )));
    }
    let eig = crate::spectral::dense_sym_eig(&mat.to_dense_f64())?;
    let cutoff = crate::spectral::zero_cutoff(mat.max_abs_f64());
    let mut nsq = 0.0;
    let mut gap: Option<f64> = None;
    for (j, lambda) in eig.values.iter().enumerate() {
        if lambda.abs() <= cutoff {
            let ip: f64 = eig
                .vectors
                .column(j)
                .iter()
                .zip(state)
                .map(|(a, b)| a * b)
                .sum();
            nsq += ip * ip;
        } else {
            let a = lambda.abs();
            gap = Some(gap.map_or(a, |g: f64| g.min(a)));
        }
    }
    let norm = nsq.sqrt();
    let df = rat_to_f64(delta);
    let between = norm > cutoff && norm < df;
    let gap_bad = gap.map(|g| g < GAP_PROMISE_FLOOR).unwrap_or(false);
    Ok(Decision {
        outcome: (norm >= df) as u8,
        norm,
        norm_sq: None,
        gap,
        method: DecisionMethod::Exact,
        promise_violated: between || gap_bad,
        repetitions: None,
        samples: None,
    })
}

/// δ-harmonics: does the described chain have projection ≥ δ onto the
/// harmonic space of K in degree p?
pub fn decide_harmonics(
    complex: &CliqueComplex,
    p: usize,
    descriptor: &SubsetStateDescriptor,
    delta: &Rat,
    method: DecisionMethod,
    backend: Backend,
    qpe_cfg: Option<&QpeConfig>,
) -> Result<Decision> {
    if descriptor.target_dimension() != p {
        return Err(Error::DescriptorInvalid(format!(
            "descriptor targets dimension {}, expected {p}",
            descriptor.target_dimension()
        )));
    }
    let sigma = expand_subset_state(complex, descriptor)?;
    match method {
        DecisionMethod::Exact => match backend {
            Backend::Exact => {
                let nsq = harmonic_projection_norm_sq(complex, p, &sigma)?;
                let gap = float_gap_of(complex, p)?;
                Ok(exact_decision(nsq, delta, gap))
            }
            Backend::Float => {
                let lap = laplacian(complex, p)?;
                let state = sigma.to_f64(complex.len(p));
                float_decision(&lap.full, &state, delta)
            }
        },
        DecisionMethod::Qpe => {
            let lap = laplacian(complex, p)?;
            let state = sigma.to_f64(complex.len(p));
            let cfg = qpe_cfg.cloned().unwrap_or_else(|| QpeConfig::for_delta(delta));
            let run = qpe_decide(&lap.full, &state, &cfg, WindowMode::Kernel)?;
            Ok(qpe_to_decision(run, &cfg))
        }
    }
}

fn qpe_to_decision(run: crate::qpe::QpeRun, cfg: &QpeConfig) -> Decision {
    let gap_bad = run.gap.map(|g| g < GAP_PROMISE_FLOOR).unwrap_or(false);
    Decision {
        outcome: run.outcome as u8,
        norm: f64::NAN,
        norm_sq: None,
        gap: run.gap,
        method: DecisionMethod::Qpe,
        promise_violated: gap_bad,
        repetitions: Some(cfg.repetitions),
        samples: Some(run.samples),
    }
}

/// δ-harmonic persistence: does the K₁ harmonic described by the instance
/// keep projection ≥ δ onto the harmonic space of K₂?
pub fn decide_harmonic_persistence(
    instance: &PersistenceInstance,
    method: DecisionMethod,
    backend: Backend,
    qpe_cfg: Option<&QpeConfig>,
) -> Result<Decision> {
    if instance.descriptor.target_dimension() != instance.p {
        return Err(Error::DescriptorInvalid(format!(
            "descriptor targets dimension {}, expected {}",
            instance.descriptor.target_dimension(),
            instance.p
        )));
    }
    let sigma2 = instance.sigma_in_k2()?;
    match method {
        DecisionMethod::Exact => match backend {
            Backend::Exact => {
                let nsq =
                    harmonic_projection_norm_sq(&instance.k2, instance.p, &sigma2)?;
                let gap = float_gap_of(&instance.k2, instance.p)?;
                Ok(exact_decision(nsq, &instance.delta, gap))
            }
            Backend::Float => {
                let lap = laplacian(&instance.k2, instance.p)?;
                let state = sigma2.to_f64(instance.k2.len(instance.p));
                float_decision(&lap.full, &state, &instance.delta)
            }
        },
        DecisionMethod::Qpe => {
            let lap = laplacian(&instance.k2, instance.p)?;
            let state = sigma2.to_f64(instance.k2.len(instance.p));
            let cfg = qpe_cfg
                .cloned()
                .unwrap_or_else(|| QpeConfig::for_delta(&instance.delta));
            let run = qpe_decide(&lap.full, &state, &cfg, WindowMode::Kernel)?;
            Ok(qpe_to_decision(run, &cfg))
        }
    }
}

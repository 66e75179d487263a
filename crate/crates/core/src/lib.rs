//! Weighted clique-complex homology with exact rational and floating
//! spectral backends, harmonic persistence decision procedures,
//! circuit-to-clock-Hamiltonian compilation, and kernel / low-energy overlap
//! primitives.
//!
//! The pieces fit together like this:
//!
//! * [`graph`] / [`complex`] — vertex-weighted graphs, graph joins, the
//!   qubit graph G_N, and clique complexes in deterministic order.
//! * [`chain`] / [`boundary`] — chains with the weighted inner product,
//!   succinct subset-state descriptors, weighted boundary operators and
//!   combinatorial Laplacians Δ_p = ∂_{p+1}∂_{p+1}ᵀ + ∂_pᵀ∂_p.
//! * [`harmonics`] — harmonic spaces ker Δ_p, harmonic representatives, the
//!   persistence map 𝓗_p(K₁) → 𝓗_p(K₂), and the δ-thresholded decision
//!   procedures (exact and phase-estimation paths).
//! * [`circuit`] / [`qsat`] / [`kitaev`] / [`history`] — circuits over
//!   {I, CNOT, Pythagorean}, the two clock-Hamiltonian constructions, and
//!   history / prehistory states with their exact overlap laws.
//! * [`overlap`] / [`qpe`] — kernel-overlap and low-energy-overlap solvers
//!   with an exact eigenpath and a simulated phase-estimation path.
//! * [`reduction`] — the end-to-end circuit → (K₁, K₂, σ_prehist, H)
//!   pipeline with fill gadgets.
//! * [`formats`] — JSON schemas; [`verify`] — the runnable check suite.
//!
//! ```
//! use harpo_core::*;
//! use harpo_core::spectral::Backend;
//!
//! // the 7-vertex wedge of two squares has two 1-dimensional holes …
//! let qg = QubitGraph::new(1)?;
//! let complex = CliqueComplex::build(qg.graph(), 2)?;
//! let lap = laplacian(&complex, 1)?;
//! assert_eq!(spectral_summary(&lap, Backend::Exact)?.kernel_dim, 2);
//!
//! // … and filling the left one leaves exactly one
//! let k2 = GadgetComplex::bare(qg.clone())?
//!     .attach_fill_gadget(&[false], scalar::rat(1, 10))?;
//! let lap2 = laplacian(k2.complex(), 1)?;
//! assert_eq!(spectral_summary(&lap2, Backend::Exact)?.kernel_dim, 1);
//! # Ok::<(), harpo_core::Error>(())
//! ```

pub mod boundary;
pub mod chain;
pub mod circuit;
pub mod complex;
pub mod error;
pub mod exact;
pub mod formats;
pub mod graph;
pub mod harmonics;
pub mod history;
pub mod kitaev;
pub mod overlap;
pub mod qpe;
pub mod qsat;
pub mod reduction;
pub mod scalar;
pub mod sparse;
pub mod spectral;
pub mod state;
pub mod verify;

pub use boundary::{apply_adjoint, apply_boundary, apply_laplacian, boundary_matrix, laplacian, Laplacian};
pub use chain::{expand_subset_state, Chain, SubsetStateDescriptor};
pub use circuit::{preidle, Circuit, Gate};
pub use complex::{CliqueComplex, Simplex, DEFAULT_SIMPLEX_CAP};
pub use error::{Error, Result};
pub use graph::{graph_join, BaseGraph, JoinDecomposition, QubitGraph, WeightedGraph};
pub use harmonics::{
    decide_harmonic_persistence, decide_harmonics, harmonic_basis, harmonic_projection_norm_sq,
    harmonic_representative, persistence_map, Decision, DecisionMethod, PersistenceInstance,
    PersistenceMap,
};
pub use history::{history_state, prehistory_state, ClockVariant};
pub use kitaev::{build_kitaev_hamiltonian, KitaevHamiltonian};
pub use overlap::{exact_overlap, qpe_overlap_decide, spectral_gap, HamiltonianMatrix, OverlapMode};
pub use qpe::{QpeConfig, QpeRun, QpeSample};
pub use qsat::{build_bravyi_hamiltonian, decompose_rank_one, IntegerState, QsatHamiltonian};
pub use reduction::{
    build_reduction, s_map_descriptor, s_map_label, s_map_state, FillGadget, GadgetComplex,
    ReductionArtifacts,
};
pub use scalar::{Radical, Rat};
pub use sparse::SparseMat;
pub use spectral::{spectral_summary, Backend, SpectralSummary};
pub use state::{ExactState, SparseState};

//! End-to-end reduction: circuit → (K₁, K₂, σ_prehist, H) instance.
//!
//! K₁ is the clique complex of the N-fold join of the base graph with
//! N = m + 2(T+L); its degree-(2N−1) harmonic space simulates the N-qubit
//! Hilbert space through the map s sending a basis label to the product of
//! per-copy bit cycles. A fill gadget for label x attaches one apex vertex of
//! weight λ to the 4N cycle vertices selected by x; the cone over the product
//! cycle then makes s(|x⟩) a boundary, removing exactly that class from the
//! harmonics of K₂.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::chain::{expand_subset_state, Chain, SubsetStateDescriptor};
use crate::circuit::Circuit;
use crate::complex::CliqueComplex;
use crate::error::{Error, Result};
use crate::graph::{QubitGraph, WeightedGraph};
use crate::harmonics::PersistenceInstance;
use crate::qsat::{build_bravyi_hamiltonian, clock_state, BravyiTermKind, QsatHamiltonian};
use crate::scalar::{Radical, Rat};
use crate::state::{ExactState, SparseState};

/// Default refusal threshold on N = m + 2(T+L): the chain spaces grow as 8^N.
pub const REDUCTION_QUBIT_CAP: usize = 3;

#[derive(Clone, Debug)]
pub struct FillGadget {
    pub label: Vec<bool>,
    pub apex: u32,
    pub lambda: Rat,
}

/// The qubit-graph complex together with any attached fill gadgets.
#[derive(Clone, Debug)]
pub struct GadgetComplex {
    qubit_graph: QubitGraph,
    graph: WeightedGraph,
    gadgets: Vec<FillGadget>,
    complex: CliqueComplex,
}

impl GadgetComplex {
    /// The bare complex of the N-fold join, built through dimension 2N so the
    /// up-Laplacian in degree 2N−1 sees any gadget simplices added later.
    pub fn bare(qubit_graph: QubitGraph) -> Result<Self> {
        let graph = qubit_graph.graph().clone();
        let complex = CliqueComplex::build(&graph, 2 * qubit_graph.qubits())?;
        Ok(GadgetComplex {
            qubit_graph,
            graph,
            gadgets: Vec::new(),
            complex,
        })
    }

    pub fn qubit_graph(&self) -> &QubitGraph {
        &self.qubit_graph
    }

    pub fn complex(&self) -> &CliqueComplex {
        &self.complex
    }

    pub fn gadgets(&self) -> &[FillGadget] {
        &self.gadgets
    }

    /// Attaches the fill gadget for basis label `x`: one new apex vertex of
    /// weight λ adjacent to every vertex of the per-copy cycles selected by
    /// the bits of x. Returns the enlarged complex; the receiver is unchanged.
    pub fn attach_fill_gadget(&self, label: &[bool], lambda: Rat) -> Result<GadgetComplex> {
        let n = self.qubit_graph.qubits();
        if label.len() != n {
            return Err(Error::LabelLength {
                got: label.len(),
                expected: n,
            });
        }
        if self.gadgets.iter().any(|g| g.label == label) {
            return Err(Error::DuplicateGadget(label_string(label)));
        }
        let mut attach: Vec<u32> = Vec::with_capacity(4 * n);
        for (i, &bit) in label.iter().enumerate() {
            attach.extend(self.qubit_graph.cycle_vertices(i, bit));
        }
        let (graph, apex) = self.graph.with_apex(lambda.clone(), &attach)?;
        let complex = CliqueComplex::build(&graph, 2 * n)?;
        let mut gadgets = self.gadgets.clone();
        gadgets.push(FillGadget {
            label: label.to_vec(),
            apex,
            lambda,
        });
        Ok(GadgetComplex {
            qubit_graph: self.qubit_graph.clone(),
            graph,
            gadgets,
            complex,
        })
    }
}

pub fn label_string(label: &[bool]) -> String {
    label.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_label(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidParameter(format!(
                "label {s:?} contains non-binary character {c:?}"
            ))),
        })
        .collect()
}

/// The subset-state descriptor of s(|x⟩): one block selecting the bit cycle
/// of every copy.
pub fn s_map_descriptor(qg: &QubitGraph, label: &[bool]) -> Result<SubsetStateDescriptor> {
    if label.len() != qg.qubits() {
        return Err(Error::LabelLength {
            got: label.len(),
            expected: qg.qubits(),
        });
    }
    let block: Vec<Vec<(u32, u32)>> = label
        .iter()
        .enumerate()
        .map(|(i, &bit)| qg.cycle_edges(i, bit))
        .collect();
    SubsetStateDescriptor::new(qg.qubits(), vec![block])
}

/// s(|x⟩) as a chain of the given complex (which must contain Cl(G_N)).
pub fn s_map_label(
    complex: &CliqueComplex,
    qg: &QubitGraph,
    label: &[bool],
) -> Result<Chain> {
    let d = s_map_descriptor(qg, label)?;
    expand_subset_state(complex, &d)
}

fn label_bits(label: &BigUint, n: usize) -> Vec<bool> {
    (0..n).map(|j| label.bit((n - 1 - j) as u64)).collect()
}

/// The linear extension of s to exact states over N qubits: basis labels map
/// to product cycles with amplitude 2^{−N} each, so the image of a rational
/// state stays exact.
pub fn s_map_state(
    complex: &CliqueComplex,
    qg: &QubitGraph,
    state: &SparseState,
) -> Result<Chain> {
    let n = qg.qubits();
    let dim = 2 * n - 1;
    complex.check_dim(dim)?;
    let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
    for (basis_label, amp) in &state.amps {
        let bits = label_bits(basis_label, n);
        let cycle = s_map_label(complex, qg, &bits)?;
        for (idx, coeff) in cycle.iter() {
            let r = coeff
                .as_rat()
                .expect("single-block expansions have rational amplitudes");
            *acc.entry(idx).or_insert_with(num_traits::Zero::zero) += r * amp;
        }
    }
    let scale = Radical::sqrt_of_rat(&state.scale_sq)?;
    Ok(Chain::from_entries(
        dim,
        acc.into_iter()
            .map(|(i, q)| (i, scale.mul_rat(&q)))
            .collect(),
    ))
}

pub fn s_map_exact_state(
    complex: &CliqueComplex,
    qg: &QubitGraph,
    state: &ExactState,
) -> Result<Chain> {
    let mut sparse = SparseState::new(state.scale_sq.clone());
    for (i, a) in state.amps.iter().enumerate() {
        sparse.add(BigUint::from(i), a.clone());
    }
    s_map_state(complex, qg, &sparse)
}

/// Everything produced by one reduction: the nested complexes, the prehistory
/// descriptor, the compiled Hamiltonian, and bookkeeping.
#[derive(Clone, Debug)]
pub struct ReductionArtifacts {
    pub circuit: Circuit,
    /// N = m + 2(T+L).
    pub n_qubits: usize,
    pub lambda: Rat,
    pub k1: GadgetComplex,
    pub k2: GadgetComplex,
    pub sigma_prehist: SubsetStateDescriptor,
    /// Basis label of each descriptor block, in block order.
    pub block_labels: Vec<String>,
    pub hamiltonian: QsatHamiltonian,
    pub gadget_labels: Vec<String>,
}

impl ReductionArtifacts {
    pub fn to_persistence_instance(&self, delta: Rat) -> Result<PersistenceInstance> {
        PersistenceInstance::new(
            self.k1.complex().clone(),
            self.k2.complex().clone(),
            2 * self.n_qubits - 1,
            self.sigma_prehist.clone(),
            delta,
        )
    }
}

/// Basis labels of the diagonal (basis-projector) terms of the Hamiltonian —
/// the labels eligible for fill gadgets.
pub fn diagonal_term_labels(h: &QsatHamiltonian) -> Vec<Vec<bool>> {
    let n = h.layout.total_qubits();
    let mut seen = std::collections::BTreeSet::new();
    for term in &h.terms {
        if matches!(
            term.kind,
            BravyiTermKind::In { .. } | BravyiTermKind::Clock { .. } | BravyiTermKind::Out
        ) {
            for (r, c, _) in term.matrix.entries() {
                if r == c {
                    seen.insert(label_bits(&BigUint::from(r), n));
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Builds the full reduction for a pre-idled circuit. Gadgets are attached
/// for the requested labels, each of which must name a diagonal
/// (basis-projector) term of the compiled Hamiltonian.
pub fn build_reduction(
    c: &Circuit,
    lambda: Rat,
    gadget_labels: &[Vec<bool>],
) -> Result<ReductionArtifacts> {
    build_reduction_with_cap(c, lambda, gadget_labels, REDUCTION_QUBIT_CAP)
}

pub fn build_reduction_with_cap(
    c: &Circuit,
    lambda: Rat,
    gadget_labels: &[Vec<bool>],
    cap: usize,
) -> Result<ReductionArtifacts> {
    if c.idle == 0 {
        return Err(Error::PrehistoryNeedsIdle);
    }
    let steps = c.steps();
    let n = c.qubits + 2 * steps;
    if n > cap {
        return Err(Error::ReductionTooLarge { n, cap });
    }

    let hamiltonian = build_bravyi_hamiltonian(c)?;
    let diagonal_labels = diagonal_term_labels(&hamiltonian);
    for label in gadget_labels {
        if label.len() != n {
            return Err(Error::LabelLength {
                got: label.len(),
                expected: n,
            });
        }
        if !diagonal_labels.contains(label) {
            return Err(Error::GadgetNotDiagonal(label_string(label)));
        }
    }

    let qg = QubitGraph::new(n)?;
    let k1 = GadgetComplex::bare(qg.clone())?;
    let mut k2 = k1.clone();
    for label in gadget_labels {
        k2 = k2.attach_fill_gadget(label, lambda.clone())?;
    }

    // σ_prehist: blocks S_{C_t,0^m}, S_{C'_t,0^m} for t = 1..=L
    let mut blocks = Vec::with_capacity(2 * c.idle);
    let mut block_labels = Vec::with_capacity(2 * c.idle);
    for t in 1..=c.idle {
        for primed in [false, true] {
            let clock = clock_state(steps, t, primed);
            let label = hamiltonian.layout.label(0, &clock);
            let bits = label_bits(&label, n);
            let block: Vec<Vec<(u32, u32)>> = bits
                .iter()
                .enumerate()
                .map(|(i, &bit)| qg.cycle_edges(i, bit))
                .collect();
            blocks.push(block);
            block_labels.push(label_string(&bits));
        }
    }
    let sigma_prehist = SubsetStateDescriptor::new(n, blocks)?;

    // exact-construction guarantee: the expanded prehistory chain
    // is unit norm and harmonic in K1.
    let sigma = expand_subset_state(k1.complex(), &sigma_prehist)?;
    if !sigma.norm_sq().eq_rat(&Rat::one()) {
        return Err(Error::NotUnitNorm(sigma.norm_sq().to_string()));
    }
    let image = crate::boundary::apply_laplacian(k1.complex(), &sigma)?;
    if !image.is_zero() {
        return Err(Error::DescriptorInvalid(
            "prehistory chain is not harmonic in K1".into(),
        ));
    }

    Ok(ReductionArtifacts {
        circuit: c.clone(),
        n_qubits: n,
        lambda,
        k1,
        k2,
        sigma_prehist,
        block_labels,
        hamiltonian,
        gadget_labels: gadget_labels.iter().map(|l| label_string(l)).collect(),
    })
}

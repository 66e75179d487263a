//! The integer-clock Hamiltonian variant: the clock is a single index
//! t ∈ {0,…,T+L} rather than unary clock qubits, so the space is
//! C^{2^m} ⊗ C^{T+L+1} and the propagation terms couple adjacent clock
//! values only:
//!
//!   H_prop,t = I⊗|t−1⟩⟨t−1| + I⊗|t⟩⟨t| − U_t⊗|t⟩⟨t−1| − U_t†⊗|t−1⟩⟨t|
//!
//! H_in penalizes any computational qubit in |1⟩ at clock 0 and H_out
//! penalizes the output qubit in |1⟩ at the final clock (the same output
//! convention as the unary-clock construction), so circuits that end with
//! the output qubit exactly clear leave their history state in the kernel.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::circuit::{intermediate_states, Circuit};
use crate::error::{Error, Result};
use crate::scalar::{rat, Rat};
use crate::sparse::SparseMat;
use crate::state::ExactState;

pub const KITAEV_DIM_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "snake_case")]
pub enum KitaevTermKind {
    In { qubit: usize },
    Prop { t: usize },
    Out,
}

#[derive(Clone, Debug)]
pub struct KitaevTerm {
    pub kind: KitaevTermKind,
    pub matrix: SparseMat,
}

#[derive(Clone, Debug)]
pub struct KitaevHamiltonian {
    pub circuit: Circuit,
    pub qubits: usize,
    /// T+L; the clock runs over 0..=steps.
    pub steps: usize,
    pub terms: Vec<KitaevTerm>,
    pub matrix: SparseMat,
}

impl KitaevHamiltonian {
    pub fn dim(&self) -> usize {
        (1usize << self.qubits) * (self.steps + 1)
    }

    pub fn index(&self, comp: usize, t: usize) -> usize {
        comp * (self.steps + 1) + t
    }

    pub fn group_matrix(&self, group: &str) -> SparseMat {
        let dim = self.dim();
        let mut acc = SparseMat::zeros(dim, dim);
        for term in &self.terms {
            let name = match term.kind {
                KitaevTermKind::In { .. } => "in",
                KitaevTermKind::Prop { .. } => "prop",
                KitaevTermKind::Out => "out",
            };
            if name == group {
                acc = acc.add(&term.matrix);
            }
        }
        acc
    }

    pub fn without_out(&self) -> SparseMat {
        self.matrix.sub(&self.group_matrix("out"))
    }
}

pub fn build_kitaev_hamiltonian(c: &Circuit) -> Result<KitaevHamiltonian> {
    c.validate()?;
    let steps = c.steps();
    let comp_dim = 1usize << c.qubits;
    let dim = comp_dim * (steps + 1);
    if dim > KITAEV_DIM_CAP {
        return Err(Error::SimulatorCap {
            dim,
            cap: KITAEV_DIM_CAP,
        });
    }
    let index = |z: usize, t: usize| z * (steps + 1) + t;
    let mut terms: Vec<KitaevTerm> = Vec::new();

    // H_in = (Σ_i |1⟩_i⟨1|_i) ⊗ |0⟩⟨0|
    for qubit in 0..c.qubits {
        let mut m = SparseMat::zeros(dim, dim);
        let mask = 1usize << (c.qubits - 1 - qubit);
        for z in 0..comp_dim {
            if z & mask != 0 {
                m.add_entry(index(z, 0), index(z, 0), Rat::one());
            }
        }
        m.normalize();
        terms.push(KitaevTerm {
            kind: KitaevTermKind::In { qubit },
            matrix: m,
        });
    }

    // H_prop,t for t = 1..=steps
    for t in 1..=steps {
        let single = Circuit {
            qubits: c.qubits,
            idle: 0,
            gates: vec![c.gate_at(t)],
        };
        let u = crate::circuit::circuit_unitary(&single);
        let mut m = SparseMat::zeros(dim, dim);
        for z in 0..comp_dim {
            m.add_entry(index(z, t - 1), index(z, t - 1), Rat::one());
            m.add_entry(index(z, t), index(z, t), Rat::one());
            for (z2, amp) in u[z].iter().enumerate() {
                if !amp.is_zero() {
                    // −U_t ⊗ |t⟩⟨t−1| and its adjoint
                    m.add_entry(index(z2, t), index(z, t - 1), -amp.clone());
                    m.add_entry(index(z, t - 1), index(z2, t), -amp.clone());
                }
            }
        }
        m.normalize();
        terms.push(KitaevTerm {
            kind: KitaevTermKind::Prop { t },
            matrix: m,
        });
    }

    // H_out = |1⟩⟨1|_output ⊗ |steps⟩⟨steps|
    if c.qubits > 0 {
        let mut m = SparseMat::zeros(dim, dim);
        let mask = 1usize << (c.qubits - 1);
        for z in 0..comp_dim {
            if z & mask != 0 {
                m.add_entry(index(z, steps), index(z, steps), Rat::one());
            }
        }
        m.normalize();
        terms.push(KitaevTerm {
            kind: KitaevTermKind::Out,
            matrix: m,
        });
    }

    let mut matrix = SparseMat::zeros(dim, dim);
    for term in &terms {
        matrix = matrix.add(&term.matrix);
    }
    Ok(KitaevHamiltonian {
        circuit: c.clone(),
        qubits: c.qubits,
        steps,
        terms,
        matrix,
    })
}

/// (1/√(T+L+1))·Σ_t ψ_t ⊗ |t⟩ as a dense exact state.
pub fn kitaev_history_state(c: &Circuit) -> Result<ExactState> {
    let steps = c.steps();
    let comp_dim = 1usize << c.qubits;
    let dim = comp_dim * (steps + 1);
    if dim > KITAEV_DIM_CAP {
        return Err(Error::SimulatorCap {
            dim,
            cap: KITAEV_DIM_CAP,
        });
    }
    let psi = intermediate_states(c);
    let mut amps = vec![Rat::zero(); dim];
    for (t, state) in psi.iter().enumerate() {
        for (z, a) in state.amps.iter().enumerate() {
            amps[z * (steps + 1) + t] = a.clone();
        }
    }
    Ok(ExactState {
        scale_sq: rat(1, steps as i64 + 1),
        amps,
    })
}

/// (1/√(L+1))·Σ_{t=0}^{L} |0^m⟩ ⊗ |t⟩. Needs L ≥ 1.
pub fn kitaev_prehistory_state(c: &Circuit) -> Result<ExactState> {
    if c.idle == 0 {
        return Err(Error::PrehistoryNeedsIdle);
    }
    let steps = c.steps();
    let comp_dim = 1usize << c.qubits;
    let dim = comp_dim * (steps + 1);
    let mut amps = vec![Rat::zero(); dim];
    for t in 0..=c.idle {
        amps[t] = Rat::one();
    }
    Ok(ExactState {
        scale_sq: rat(1, c.idle as i64 + 1),
        amps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{preidle, Gate};
    use crate::scalar::rat;

    #[test]
    fn history_state_in_kernel_of_hist_part() {
        let c = preidle(
            &Circuit::new(1, vec![Gate::Pyth { target: 0 }]).unwrap(),
            2,
        );
        let h = build_kitaev_hamiltonian(&c).unwrap();
        let hist = kitaev_history_state(&c).unwrap();
        let y = h.without_out().matvec(&hist.amps);
        assert!(y.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn out_term_detects_one_support_exactly() {
        // H_out·ψ_hist ≠ 0 exactly when the final state has support on |1⟩
        // of the output qubit: pyth leaves support (amplitude −4/5), the
        // idle-only circuit leaves none
        let c = preidle(
            &Circuit::new(1, vec![Gate::Pyth { target: 0 }]).unwrap(),
            1,
        );
        let h = build_kitaev_hamiltonian(&c).unwrap();
        let hist = kitaev_history_state(&c).unwrap();
        let y = h.group_matrix("out").matvec(&hist.amps);
        assert!(y.iter().any(|v| !v.is_zero()));

        let idle = preidle(&Circuit::new(1, vec![]).unwrap(), 2);
        let h = build_kitaev_hamiltonian(&idle).unwrap();
        let hist = kitaev_history_state(&idle).unwrap();
        let y = h.group_matrix("out").matvec(&hist.amps);
        assert!(y.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn overlap_formula_small_case() {
        // (L,T) = (2,1): overlap² = (L+1)/(L+T+1) = 3/4
        let c = preidle(
            &Circuit::new(1, vec![Gate::Pyth { target: 0 }]).unwrap(),
            2,
        );
        let hist = kitaev_history_state(&c).unwrap();
        let pre = kitaev_prehistory_state(&c).unwrap();
        assert_eq!(pre.overlap_sq(&hist), rat(3, 4));
    }
}

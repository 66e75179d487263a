//! Circuits over the rational gate set {Identity, CNOT, Pythagorean}.
//!
//! The Pythagorean gate is the rational unitary `(1/5)[[3,4],[−4,3]]`; together
//! with CNOT and idling it keeps every state amplitude produced by a circuit
//! inside ℚ.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rat, Rat};
use crate::state::ExactState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Gate {
    Id,
    Cnot { control: usize, target: usize },
    Pyth { target: usize },
}

impl Gate {
    pub fn validate(&self, qubits: usize) -> Result<()> {
        match *self {
            Gate::Id => Ok(()),
            Gate::Cnot { control, target } => {
                if control == target {
                    return Err(Error::GateIndex(format!(
                        "cnot control equals target ({control})"
                    )));
                }
                if control >= qubits || target >= qubits {
                    return Err(Error::GateIndex(format!(
                        "cnot ({control},{target}) exceeds {qubits} qubits"
                    )));
                }
                Ok(())
            }
            Gate::Pyth { target } => {
                if target >= qubits {
                    return Err(Error::GateIndex(format!(
                        "pyth target {target} exceeds {qubits} qubits"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// The Pythagorean single-qubit matrix, column-major: columns are the images
/// of |0⟩ and |1⟩.
pub fn pythagorean_columns() -> [[Rat; 2]; 2] {
    [
        [rat(3, 5), rat(-4, 5)], // U|0⟩
        [rat(4, 5), rat(3, 5)],  // U|1⟩
    ]
}

/// A circuit of `idle` leading identity gates followed by the listed gates.
/// Qubits are indexed from 0; qubit 0 is the output qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub qubits: usize,
    pub idle: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(qubits)?;
        }
        Ok(Circuit {
            qubits,
            idle: 0,
            gates,
        })
    }

    /// Total length L + T.
    pub fn steps(&self) -> usize {
        self.idle + self.gates.len()
    }

    /// The gate applied at step t ∈ 1..=steps (idles first).
    pub fn gate_at(&self, t: usize) -> Gate {
        assert!(t >= 1 && t <= self.steps());
        if t <= self.idle {
            Gate::Id
        } else {
            self.gates[t - 1 - self.idle]
        }
    }

    pub fn validate(&self) -> Result<()> {
        for g in &self.gates {
            g.validate(self.qubits)?;
        }
        Ok(())
    }
}

/// Prepends L identity gates; the circuit unitary is unchanged.
pub fn preidle(c: &Circuit, extra: usize) -> Circuit {
    Circuit {
        qubits: c.qubits,
        idle: c.idle + extra,
        gates: c.gates.clone(),
    }
}

/// Applies a gate to an exact computational state (dimension 2^qubits,
/// qubit 0 is the most significant bit of the basis index).
pub fn apply_gate(state: &ExactState, gate: &Gate, qubits: usize) -> ExactState {
    let dim = state.dim();
    debug_assert_eq!(dim, 1usize << qubits);
    let bit = |idx: usize, q: usize| (idx >> (qubits - 1 - q)) & 1;
    match *gate {
        Gate::Id => state.clone(),
        Gate::Cnot { control, target } => {
            let mut amps = vec![Rat::zero(); dim];
            let mask = 1usize << (qubits - 1 - target);
            for (idx, a) in state.amps.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let out = if bit(idx, control) == 1 { idx ^ mask } else { idx };
                amps[out] += a;
            }
            ExactState {
                scale_sq: state.scale_sq.clone(),
                amps,
            }
        }
        Gate::Pyth { target } => {
            let cols = pythagorean_columns();
            let mut amps = vec![Rat::zero(); dim];
            let mask = 1usize << (qubits - 1 - target);
            for (idx, a) in state.amps.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let b = bit(idx, target);
                // |b⟩ ↦ cols[b][0]|0⟩ + cols[b][1]|1⟩ on the target
                amps[idx & !mask] += a * &cols[b][0];
                amps[idx | mask] += a * &cols[b][1];
            }
            ExactState {
                scale_sq: state.scale_sq.clone(),
                amps,
            }
        }
    }
}

/// ψ_t = U_t···U_1|0^m⟩ for t = 0..=steps, as exact rational states.
pub fn intermediate_states(c: &Circuit) -> Vec<ExactState> {
    let dim = 1usize << c.qubits;
    let mut states = Vec::with_capacity(c.steps() + 1);
    states.push(ExactState::basis(dim, 0));
    for t in 1..=c.steps() {
        let g = c.gate_at(t);
        let next = apply_gate(states.last().unwrap(), &g, c.qubits);
        states.push(next);
    }
    states
}

/// The full circuit unitary as a dense rational matrix (column j is the image
/// of basis state j). Intended for small qubit counts.
pub fn circuit_unitary(c: &Circuit) -> Vec<Vec<Rat>> {
    let dim = 1usize << c.qubits;
    (0..dim)
        .map(|j| {
            let mut s = ExactState::basis(dim, j);
            for t in 1..=c.steps() {
                s = apply_gate(&s, &c.gate_at(t), c.qubits);
            }
            s.amps
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn preidle_prepends_identities() {
        let c = Circuit::new(1, vec![Gate::Pyth { target: 0 }]).unwrap();
        let p = preidle(&c, 3);
        assert_eq!(p.steps(), 4);
        assert_eq!(p.gate_at(1), Gate::Id);
        assert_eq!(p.gate_at(3), Gate::Id);
        assert_eq!(p.gate_at(4), Gate::Pyth { target: 0 });

        let empty = Circuit::new(2, vec![]).unwrap();
        assert_eq!(preidle(&empty, 3).steps(), 3);
    }

    #[test]
    fn preidle_preserves_unitary() {
        let c = Circuit::new(2, vec![Gate::Pyth { target: 1 }, Gate::Cnot { control: 1, target: 0 }])
            .unwrap();
        let u1 = circuit_unitary(&c);
        let u2 = circuit_unitary(&preidle(&c, 5));
        assert_eq!(u1, u2);
    }

    #[test]
    fn pythagorean_is_unitary() {
        let c = Circuit::new(1, vec![Gate::Pyth { target: 0 }]).unwrap();
        let states = intermediate_states(&c);
        let last = states.last().unwrap();
        assert!(last.is_unit());
        assert_eq!(last.amps, vec![rat(3, 5), rat(-4, 5)]);
    }

    #[test]
    fn cnot_flips_conditionally() {
        // prepare |10⟩ then CNOT(0 → 1) gives |11⟩
        let c = Circuit::new(
            2,
            vec![Gate::Cnot { control: 0, target: 1 }],
        )
        .unwrap();
        let dim = 4;
        let s = ExactState::basis(dim, 0b10);
        let out = apply_gate(&s, &c.gates[0], 2);
        assert_eq!(out.amps[0b11], Rat::one());
    }

    #[test]
    fn gate_validation() {
        assert!(Circuit::new(1, vec![Gate::Cnot { control: 0, target: 0 }]).is_err());
        assert!(Circuit::new(1, vec![Gate::Cnot { control: 0, target: 1 }]).is_err());
        assert!(Circuit::new(1, vec![Gate::Pyth { target: 1 }]).is_err());
    }
}

//! Variant-dispatched history and prehistory states.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::Result;
use crate::kitaev::{kitaev_history_state, kitaev_prehistory_state};
use crate::qsat::{bravyi_history_state, bravyi_prehistory_state};
use crate::state::SparseState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClockVariant {
    /// Unary two-qubit-per-step clock.
    Bravyi,
    /// Integer clock index 0..=T+L.
    Kitaev,
}

fn dense_to_sparse(state: crate::state::ExactState) -> SparseState {
    let mut out = SparseState::new(state.scale_sq);
    for (i, a) in state.amps.into_iter().enumerate() {
        out.add(BigUint::from(i), a);
    }
    out
}

/// The history state of a circuit in the chosen clock encoding, as a sparse
/// exact state. Both variants have squared overlap with the prehistory state
/// equal to L/(L+T) (unary clock) and (L+1)/(L+T+1) (integer clock).
pub fn history_state(c: &Circuit, variant: ClockVariant) -> Result<SparseState> {
    match variant {
        ClockVariant::Bravyi => bravyi_history_state(c),
        ClockVariant::Kitaev => Ok(dense_to_sparse(kitaev_history_state(c)?)),
    }
}

/// The prehistory state (idle prefix over |0^m⟩); requires L ≥ 1.
pub fn prehistory_state(c: &Circuit, variant: ClockVariant) -> Result<SparseState> {
    match variant {
        ClockVariant::Bravyi => bravyi_prehistory_state(c),
        ClockVariant::Kitaev => Ok(dense_to_sparse(kitaev_prehistory_state(c)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{preidle, Gate};
    use crate::scalar::rat;

    #[test]
    fn overlap_formulas_by_variant() {
        // (L,T) = (3,1)
        let c = preidle(
            &Circuit::new(1, vec![Gate::Pyth { target: 0 }]).unwrap(),
            3,
        );
        let hist_b = history_state(&c, ClockVariant::Bravyi).unwrap();
        let pre_b = prehistory_state(&c, ClockVariant::Bravyi).unwrap();
        assert_eq!(pre_b.overlap_sq(&hist_b), rat(3, 4)); // L/(L+T)

        let hist_k = history_state(&c, ClockVariant::Kitaev).unwrap();
        let pre_k = prehistory_state(&c, ClockVariant::Kitaev).unwrap();
        assert_eq!(pre_k.overlap_sq(&hist_k), rat(4, 5)); // (L+1)/(L+T+1)
    }

    #[test]
    fn idle_only_circuit_has_full_overlap() {
        let c = preidle(&Circuit::new(1, vec![]).unwrap(), 4);
        for v in [ClockVariant::Bravyi, ClockVariant::Kitaev] {
            let hist = history_state(&c, v).unwrap();
            let pre = prehistory_state(&c, v).unwrap();
            assert_eq!(pre.overlap_sq(&hist), rat(1, 1));
        }
    }

    #[test]
    fn long_idle_is_representable() {
        // (L,T) = (99,1): far beyond any dense representation cap for the
        // unary clock, still exact through the sparse states
        let c = preidle(
            &Circuit::new(1, vec![Gate::Pyth { target: 0 }]).unwrap(),
            99,
        );
        let hist = history_state(&c, ClockVariant::Bravyi).unwrap();
        let pre = prehistory_state(&c, ClockVariant::Bravyi).unwrap();
        assert_eq!(pre.overlap_sq(&hist), rat(99, 100));
        assert_eq!(hist.support_size(), 2 * 99 + 1 + 2); // idle part + pyth images
    }
}

//! Clock-Hamiltonian compilation: kernel identities, clock legality,
//! rank-one decompositions, and spectral gaps against the Jacobi oracle.

mod common;

use harpo_core::circuit::{preidle, Circuit, Gate};
use harpo_core::qsat::{
    build_bravyi_hamiltonian, build_bravyi_hamiltonian_with_witness, bravyi_history_state,
    decompose_rank_one, psd_spot_check, BasisLayout, BravyiTermKind, ClockSym,
};
use harpo_core::scalar::{rat, Rat};
use harpo_core::sparse::SparseMat;
use harpo_core::state::ExactState;
use harpo_core::*;
use num_traits::Zero;

fn toy_circuit() -> Circuit {
    // m = 1, L = 2, T = 1: one Pythagorean step after two idles
    preidle(&Circuit::new(1, vec![Gate::Pyth { target: 0 }]).unwrap(), 2)
}

#[test]
fn identity_prop_term_is_singlet_projector() {
    // for an identity step, H_prop,t = |(01−10)/√2⟩⟨…|_t ⊗ I assembled
    // independently from the layout
    let c = preidle(&Circuit::new(1, vec![]).unwrap(), 2);
    let h = build_bravyi_hamiltonian(&c).unwrap();
    let layout = h.layout;
    let dim = h.dim();
    for t in 1..=2 {
        let term = h
            .terms
            .iter()
            .find(|term| term.kind == BravyiTermKind::Prop { t })
            .unwrap();
        let mut expected = SparseMat::zeros(dim, dim);
        let half = rat(1, 2);
        for idx in 0..dim {
            match layout.pair(idx, t) {
                ClockSym::A1 => {
                    let other = layout.with_pair(idx, t, ClockSym::A2);
                    expected.add_entry(idx, idx, half.clone());
                    expected.add_entry(other, idx, -half.clone());
                }
                ClockSym::A2 => {
                    let other = layout.with_pair(idx, t, ClockSym::A1);
                    expected.add_entry(idx, idx, half.clone());
                    expected.add_entry(other, idx, -half.clone());
                }
                _ => {}
            }
        }
        expected.normalize();
        assert!(term.matrix.sub(&expected).is_zero(), "t = {t}");
    }
}

#[test]
fn kernel_identity_for_every_witness() {
    // m = 1, T+L = 2, witness register = the whole qubit: the history state
    // of either witness value is annihilated by H − H_out
    let c = preidle(&Circuit::new(1, vec![Gate::Pyth { target: 0 }]).unwrap(), 1);
    let h = build_bravyi_hamiltonian_with_witness(&c, &[0]).unwrap();
    let layout = h.layout;
    for witness in 0..2usize {
        // history state with ψ₀ = |witness⟩
        let dim_comp = 2usize;
        let mut psi = vec![ExactState::basis(dim_comp, witness)];
        for t in 1..=c.steps() {
            psi.push(harpo_core::circuit::apply_gate(
                psi.last().unwrap(),
                &c.gate_at(t),
                1,
            ));
        }
        let mut hist = vec![Rat::zero(); h.dim()];
        for t in 1..=c.steps() {
            let ct = harpo_core::qsat::clock_state(c.steps(), t, false);
            let ctp = harpo_core::qsat::clock_state(c.steps(), t, true);
            for (z, a) in psi[t - 1].amps.iter().enumerate() {
                let idx: usize = layout.label(z, &ct).try_into().unwrap();
                hist[idx] += a;
            }
            for (z, a) in psi[t].amps.iter().enumerate() {
                let idx: usize = layout.label(z, &ctp).try_into().unwrap();
                hist[idx] += a;
            }
        }
        let image = h.without_out().matvec(&hist);
        assert!(
            image.iter().all(|v| v.is_zero()),
            "witness |{witness}⟩ history not annihilated"
        );
    }
}

#[test]
fn cnot_circuit_kernel_identity_both_variants() {
    // m = 2 with a CNOT: ‖(H − H_out)·ψ_hist‖ = 0 exactly for the unary
    // clock, and for the integer clock as well
    let c = preidle(
        &Circuit::new(
            2,
            vec![Gate::Pyth { target: 1 }, Gate::Cnot { control: 1, target: 0 }],
        )
        .unwrap(),
        1,
    );
    let hb = build_bravyi_hamiltonian(&c).unwrap();
    let hist = bravyi_history_state(&c).unwrap().densify(hb.dim()).unwrap();
    let image = hb.without_out().matvec(&hist.amps);
    assert!(image.iter().all(|v| v.is_zero()));

    let hk = build_kitaev_hamiltonian(&c).unwrap();
    let hist = harpo_core::kitaev::kitaev_history_state(&c).unwrap();
    let image = hk.without_out().matvec(&hist.amps);
    assert!(image.iter().all(|v| v.is_zero()));
}

#[test]
fn bravyi_out_term_flags_one_support() {
    // H_out·ψ_hist ≠ 0 exactly when the final state has support on |1⟩ of
    // the output qubit
    let c = toy_circuit();
    let h = build_bravyi_hamiltonian(&c).unwrap();
    let hist = bravyi_history_state(&c).unwrap().densify(h.dim()).unwrap();
    let y = h.group_matrix("out").matvec(&hist.amps);
    assert!(y.iter().any(|v| !v.is_zero()));

    let idle = preidle(&Circuit::new(1, vec![]).unwrap(), 3);
    let h = build_bravyi_hamiltonian(&idle).unwrap();
    let hist = bravyi_history_state(&idle).unwrap().densify(h.dim()).unwrap();
    let y = h.group_matrix("out").matvec(&hist.amps);
    assert!(y.iter().all(|v| v.is_zero()));
}

#[test]
fn all_terms_hermitian_and_psd() {
    let c = toy_circuit();
    let h = build_bravyi_hamiltonian(&c).unwrap();
    assert!(h.matrix.is_symmetric());
    for term in &h.terms {
        assert!(term.matrix.is_symmetric(), "{:?}", term.kind);
        assert!(psd_spot_check(&term.matrix, 4), "{:?}", term.kind);
    }
    // eigenvalue floor on the float side
    let values = common::jacobi_eigenvalues(&h.matrix);
    let floor = -1e-9 * values.last().unwrap().abs().max(1.0);
    assert!(values[0] >= floor);
}

#[test]
fn decomposition_reconstructs_and_matches_patterns() {
    let c = toy_circuit();
    let h = build_bravyi_hamiltonian(&c).unwrap();
    let decomp = decompose_rank_one(&h).unwrap();
    // reconstruction is validated internally; check the patterns here
    for (kind, states) in &decomp {
        match kind {
            BravyiTermKind::Out | BravyiTermKind::In { .. } | BravyiTermKind::Clock { .. } => {
                for s in states {
                    assert_eq!(s.amps.len(), 1, "diagonal term not a basis projector");
                    assert_eq!(s.z_sq, 1u32.into());
                }
            }
            BravyiTermKind::Prop { t } => {
                let expect_zsq: u64 = if *t <= c.idle { 2 } else { 50 };
                for s in states {
                    assert_eq!(
                        s.z_sq,
                        expect_zsq.into(),
                        "prop term t={t} normalization"
                    );
                }
                if *t > c.idle {
                    // Pythagorean pattern (5, −3, 4) up to sign layout
                    for s in states {
                        let mut mags: Vec<i64> = s
                            .amps
                            .values()
                            .map(|a| {
                                let m: i64 = a.try_into().unwrap();
                                m.abs()
                            })
                            .collect();
                        mags.sort_unstable();
                        assert_eq!(mags, vec![3, 4, 5]);
                    }
                }
            }
            BravyiTermKind::PropLink { .. } => {
                for s in states {
                    assert_eq!(s.z_sq, 2u32.into());
                }
            }
        }
    }
}

#[test]
fn gap_positive_and_matches_oracle() {
    // accept-style (idle) and reject-style (pyth) instances both have a
    // strictly positive gap, agreeing with the Jacobi oracle to 1e-8
    for c in [toy_circuit(), preidle(&Circuit::new(1, vec![]).unwrap(), 3)] {
        let h = build_bravyi_hamiltonian(&c).unwrap();
        let ham = HamiltonianMatrix::new(h.matrix.clone()).unwrap();
        let summary = spectral_gap(&ham).unwrap();
        let gap = summary.gap.unwrap();
        assert!(gap > 0.0);

        let oracle = common::jacobi_eigenvalues(&h.matrix);
        let cutoff = summary.zero_cutoff;
        let oracle_gap = oracle
            .iter()
            .map(|v| v.abs())
            .filter(|v| *v > cutoff)
            .fold(f64::INFINITY, f64::min);
        assert!(((gap - oracle_gap) / oracle_gap).abs() < 1e-8);
    }
}

#[test]
fn kitaev_gap_positive_on_toy() {
    let c = preidle(&Circuit::new(1, vec![Gate::Pyth { target: 0 }]).unwrap(), 1);
    let h = build_kitaev_hamiltonian(&c).unwrap();
    let values = common::jacobi_eigenvalues(&h.matrix);
    let cutoff = 1e-9 * h.matrix.max_abs_f64().max(1.0);
    let gap = values
        .iter()
        .map(|v| v.abs())
        .filter(|v| *v > cutoff)
        .fold(f64::INFINITY, f64::min);
    assert!(gap > 0.0 && gap.is_finite());
}

#[test]
fn history_layout_matches_hamiltonian_layout() {
    // the sparse history labels land where the dense builder expects them
    let c = toy_circuit();
    let layout = BasisLayout {
        qubits: c.qubits,
        steps: c.steps(),
    };
    let hist = bravyi_history_state(&c).unwrap();
    for label in hist.amps.keys() {
        let idx: usize = label.try_into().unwrap();
        assert!(idx < layout.dim());
    }
}

#[test]
fn build_cap_enforced() {
    let c = preidle(&Circuit::new(2, vec![]).unwrap(), 12); // 2 + 24 qubits
    assert!(matches!(
        build_bravyi_hamiltonian(&c),
        Err(Error::HamiltonianTooLarge { .. })
    ));
}

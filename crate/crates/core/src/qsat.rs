//! The projector-form clock Hamiltonian over computational plus clock
//! qubits.
//!
//! Each of the T+L time steps carries a 4-state clock site spanned by
//! unborn |u⟩, active-phase-1 |a1⟩, active-phase-2 |a2⟩ and dead |d⟩,
//! realized as two qubits with the binary encoding u→00, a1→01, a2→10,
//! d→11. Legal clock configurations are
//!
//!   C_t  = d…d a1 u…u      C'_t = d…d a2 u…u
//!
//! with t−1 dead sites before the active one. The Hamiltonian splits into
//! term groups H_in + H_prop + H_clock + H_out; the history state of a
//! circuit is annihilated by everything except (possibly) H_out.
//!
//! Every term decomposes into rank-one projectors onto integer states:
//! normalized states with integer amplitudes over basis labels up to one
//! global normalization Z. Diagonal terms give basis projectors; the
//! propagation term of an identity step gives (|01⟩−|10⟩)/√2-type states;
//! Pythagorean steps give the amplitude pattern (5, −3, 4) with Z² = 50.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::scalar::{rat, Rat};
use crate::sparse::SparseMat;
use crate::state::{ExactState, SparseState};

/// Cap on m + 2(T+L) for assembling the full matrix.
pub const BRAVYI_QUBIT_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClockSym {
    U,
    A1,
    A2,
    D,
}

impl ClockSym {
    /// Two-bit binary code, first clock qubit of the pair = high bit.
    pub fn code(self) -> usize {
        match self {
            ClockSym::U => 0b00,
            ClockSym::A1 => 0b01,
            ClockSym::A2 => 0b10,
            ClockSym::D => 0b11,
        }
    }

    pub fn from_code(code: usize) -> Self {
        match code & 3 {
            0b00 => ClockSym::U,
            0b01 => ClockSym::A1,
            0b10 => ClockSym::A2,
            _ => ClockSym::D,
        }
    }

    pub fn is_active(self) -> bool {
        matches!(self, ClockSym::A1 | ClockSym::A2)
    }
}

/// Legal clock configuration C_t (a1 variant) or C'_t (a2 variant):
/// t−1 dead sites, the active site, then unborn sites.
pub fn clock_state(steps: usize, t: usize, primed: bool) -> Vec<ClockSym> {
    assert!(t >= 1 && t <= steps);
    let mut v = vec![ClockSym::D; t - 1];
    v.push(if primed { ClockSym::A2 } else { ClockSym::A1 });
    v.extend(std::iter::repeat(ClockSym::U).take(steps - t));
    v
}

/// Packs clock symbols into bits, site 1 most significant.
pub fn clock_bits(syms: &[ClockSym]) -> BigUint {
    let mut out = BigUint::zero();
    for s in syms {
        out = (out << 2) | BigUint::from(s.code());
    }
    out
}

/// Basis-index helpers for m computational qubits (most significant) and
/// `steps` clock pairs (least significant). Computational qubit 0 is the
/// topmost bit.
#[derive(Clone, Copy, Debug)]
pub struct BasisLayout {
    pub qubits: usize,
    pub steps: usize,
}

impl BasisLayout {
    pub fn total_qubits(&self) -> usize {
        self.qubits + 2 * self.steps
    }

    pub fn dim(&self) -> usize {
        1usize << self.total_qubits()
    }

    pub fn comp(&self, index: usize) -> usize {
        index >> (2 * self.steps)
    }

    pub fn with_comp(&self, index: usize, comp: usize) -> usize {
        (comp << (2 * self.steps)) | (index & ((1 << (2 * self.steps)) - 1))
    }

    pub fn comp_bit(&self, index: usize, qubit: usize) -> usize {
        (self.comp(index) >> (self.qubits - 1 - qubit)) & 1
    }

    /// Clock symbol at site t (1-based).
    pub fn pair(&self, index: usize, t: usize) -> ClockSym {
        let shift = 2 * (self.steps - t);
        ClockSym::from_code((index >> shift) & 3)
    }

    pub fn with_pair(&self, index: usize, t: usize, sym: ClockSym) -> usize {
        let shift = 2 * (self.steps - t);
        (index & !(3 << shift)) | (sym.code() << shift)
    }

    /// Full basis label from a computational index and a clock pattern, as a
    /// big integer (usable beyond the assembly cap).
    pub fn label(&self, comp: usize, clock: &[ClockSym]) -> BigUint {
        (BigUint::from(comp) << (2 * self.steps)) | clock_bits(clock)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "snake_case")]
pub enum BravyiTermKind {
    /// |a1⟩⟨a1|₁ ⊗ |1⟩⟨1|_qubit for an input-register qubit.
    In { qubit: usize },
    /// Circuit propagation at step t.
    Prop { t: usize },
    /// Clock hand-off between steps t and t+1.
    PropLink { t: usize },
    /// One term of the j-th clock-legality family.
    Clock { family: u8, i: usize, k: usize },
    /// |a2⟩⟨a2|_last ⊗ |1⟩⟨1|_output.
    Out,
}

impl BravyiTermKind {
    pub fn group_name(&self) -> &'static str {
        match self {
            BravyiTermKind::In { .. } => "in",
            BravyiTermKind::Prop { .. } | BravyiTermKind::PropLink { .. } => "prop",
            BravyiTermKind::Clock { .. } => "clock",
            BravyiTermKind::Out => "out",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BravyiTerm {
    pub kind: BravyiTermKind,
    pub matrix: SparseMat,
}

/// The assembled clock Hamiltonian with its term list.
#[derive(Clone, Debug)]
pub struct QsatHamiltonian {
    pub circuit: Circuit,
    pub layout: BasisLayout,
    /// Witness qubits excluded from the input penalty.
    pub witness: Vec<usize>,
    pub terms: Vec<BravyiTerm>,
    pub matrix: SparseMat,
}

impl QsatHamiltonian {
    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    /// Sum of the terms in one named group ("in", "prop", "clock", "out").
    pub fn group_matrix(&self, group: &str) -> SparseMat {
        let dim = self.dim();
        let mut acc = SparseMat::zeros(dim, dim);
        for term in &self.terms {
            if term.kind.group_name() == group {
                acc = acc.add(&term.matrix);
            }
        }
        acc
    }

    /// H − H_out = H_in + H_prop + H_clock.
    pub fn without_out(&self) -> SparseMat {
        self.matrix.sub(&self.group_matrix("out"))
    }
}

fn gate_columns(c: &Circuit, t: usize) -> Vec<Vec<Rat>> {
    // unitary of the single gate at step t over the computational register
    let single = Circuit {
        qubits: c.qubits,
        idle: 0,
        gates: vec![c.gate_at(t)],
    };
    crate::circuit::circuit_unitary(&single)
}

/// Builds the clock Hamiltonian of a (pre-idled) circuit. `witness` lists
/// computational qubits excluded from the input penalty; decision circuits
/// with input fixed to |0^m⟩ pass none.
pub fn build_bravyi_hamiltonian_with_witness(
    c: &Circuit,
    witness: &[usize],
) -> Result<QsatHamiltonian> {
    c.validate()?;
    let steps = c.steps();
    if steps == 0 {
        return Err(Error::InvalidParameter(
            "clock construction needs at least one step".into(),
        ));
    }
    let layout = BasisLayout {
        qubits: c.qubits,
        steps,
    };
    if layout.total_qubits() > BRAVYI_QUBIT_CAP {
        return Err(Error::HamiltonianTooLarge {
            qubits: layout.total_qubits(),
            cap: BRAVYI_QUBIT_CAP,
        });
    }
    for &w in witness {
        if w >= c.qubits {
            return Err(Error::GateIndex(format!(
                "witness qubit {w} exceeds {} qubits",
                c.qubits
            )));
        }
    }
    let dim = layout.dim();
    let half = rat(1, 2);
    let mut terms: Vec<BravyiTerm> = Vec::new();

    // H_in: |a1⟩⟨a1|_1 ⊗ Σ_{b ∈ R_in} |1⟩⟨1|_b
    for qubit in 0..c.qubits {
        if witness.contains(&qubit) {
            continue;
        }
        let mut m = SparseMat::zeros(dim, dim);
        for idx in 0..dim {
            if layout.pair(idx, 1) == ClockSym::A1 && layout.comp_bit(idx, qubit) == 1 {
                m.add_entry(idx, idx, Rat::one());
            }
        }
        m.normalize();
        terms.push(BravyiTerm {
            kind: BravyiTermKind::In { qubit },
            matrix: m,
        });
    }

    // H_prop,t = ½[(|a1⟩⟨a1|+|a2⟩⟨a2|)_t ⊗ I − |a2⟩⟨a1|_t ⊗ U_t − |a1⟩⟨a2|_t ⊗ U_t†]
    for t in 1..=steps {
        let u = gate_columns(c, t);
        let mut m = SparseMat::zeros(dim, dim);
        for col in 0..dim {
            match layout.pair(col, t) {
                ClockSym::A1 => {
                    m.add_entry(col, col, half.clone());
                    let z = layout.comp(col);
                    let base = layout.with_pair(col, t, ClockSym::A2);
                    for (z2, amp) in u[z].iter().enumerate() {
                        if !amp.is_zero() {
                            m.add_entry(layout.with_comp(base, z2), col, -(&half * amp));
                        }
                    }
                }
                ClockSym::A2 => {
                    m.add_entry(col, col, half.clone());
                    let z = layout.comp(col);
                    let base = layout.with_pair(col, t, ClockSym::A1);
                    // U_t†[z2, z] = U_t[z, z2]
                    for z2 in 0..u.len() {
                        let amp = &u[z2][z];
                        if !amp.is_zero() {
                            m.add_entry(layout.with_comp(base, z2), col, -(&half * amp));
                        }
                    }
                }
                _ => {}
            }
        }
        m.normalize();
        terms.push(BravyiTerm {
            kind: BravyiTermKind::Prop { t },
            matrix: m,
        });
    }

    // H'_prop,t: projector onto (|a2,u⟩ − |d,a1⟩)/√2 at sites (t, t+1)
    for t in 1..steps {
        let mut m = SparseMat::zeros(dim, dim);
        for col in 0..dim {
            let here = (layout.pair(col, t), layout.pair(col, t + 1));
            if here == (ClockSym::A2, ClockSym::U) {
                let other =
                    layout.with_pair(layout.with_pair(col, t, ClockSym::D), t + 1, ClockSym::A1);
                m.add_entry(col, col, half.clone());
                m.add_entry(other, col, -half.clone());
            } else if here == (ClockSym::D, ClockSym::A1) {
                let other =
                    layout.with_pair(layout.with_pair(col, t, ClockSym::A2), t + 1, ClockSym::U);
                m.add_entry(col, col, half.clone());
                m.add_entry(other, col, -half.clone());
            }
        }
        m.normalize();
        terms.push(BravyiTerm {
            kind: BravyiTermKind::PropLink { t },
            matrix: m,
        });
    }

    // H_clock, six families of diagonal penalties
    let mut push_diag = |kind: BravyiTermKind, pred: &dyn Fn(usize) -> bool| {
        let mut m = SparseMat::zeros(dim, dim);
        for idx in 0..dim {
            if pred(idx) {
                m.add_entry(idx, idx, Rat::one());
            }
        }
        m.normalize();
        terms.push(BravyiTerm { kind, matrix: m });
    };

    push_diag(
        BravyiTermKind::Clock {
            family: 1,
            i: 1,
            k: 1,
        },
        &|idx| layout.pair(idx, 1) == ClockSym::U,
    );
    push_diag(
        BravyiTermKind::Clock {
            family: 2,
            i: steps,
            k: steps,
        },
        &|idx| layout.pair(idx, steps) == ClockSym::D,
    );
    for i in 1..=steps {
        for k in (i + 1)..=steps {
            push_diag(
                BravyiTermKind::Clock { family: 3, i, k },
                &|idx| layout.pair(idx, i).is_active() && layout.pair(idx, k).is_active(),
            );
            push_diag(
                BravyiTermKind::Clock { family: 4, i, k },
                &|idx| layout.pair(idx, i) != ClockSym::D && layout.pair(idx, k) == ClockSym::D,
            );
            push_diag(
                BravyiTermKind::Clock { family: 5, i, k },
                &|idx| layout.pair(idx, i) == ClockSym::U && layout.pair(idx, k) != ClockSym::U,
            );
        }
    }
    for i in 1..steps {
        push_diag(
            BravyiTermKind::Clock {
                family: 6,
                i,
                k: i + 1,
            },
            &|idx| layout.pair(idx, i) == ClockSym::D && layout.pair(idx, i + 1) == ClockSym::U,
        );
    }

    // H_out: |a2⟩⟨a2|_last ⊗ |1⟩⟨1|_output (absent when there is no
    // computational register)
    if c.qubits > 0 {
        let mut m = SparseMat::zeros(dim, dim);
        for idx in 0..dim {
            if layout.pair(idx, steps) == ClockSym::A2 && layout.comp_bit(idx, 0) == 1 {
                m.add_entry(idx, idx, Rat::one());
            }
        }
        m.normalize();
        terms.push(BravyiTerm {
            kind: BravyiTermKind::Out,
            matrix: m,
        });
    }

    let mut matrix = SparseMat::zeros(dim, dim);
    for term in &terms {
        matrix = matrix.add(&term.matrix);
    }

    Ok(QsatHamiltonian {
        circuit: c.clone(),
        layout,
        witness: witness.to_vec(),
        terms,
        matrix,
    })
}

pub fn build_bravyi_hamiltonian(c: &Circuit) -> Result<QsatHamiltonian> {
    build_bravyi_hamiltonian_with_witness(c, &[])
}

/// History state Σ_t |C_t⟩⊗|ψ_{t−1}⟩ + |C'_t⟩⊗|ψ_t⟩ normalized by √(2(T+L)),
/// as a sparse exact state (usable for any idle length).
pub fn bravyi_history_state(c: &Circuit) -> Result<SparseState> {
    let steps = c.steps();
    if steps == 0 {
        return Err(Error::InvalidParameter(
            "history state needs at least one step".into(),
        ));
    }
    let layout = BasisLayout {
        qubits: c.qubits,
        steps,
    };
    let psi = crate::circuit::intermediate_states(c);
    let mut state = SparseState::new(rat(1, 2 * steps as i64));
    for t in 1..=steps {
        let ct = clock_state(steps, t, false);
        let ct_p = clock_state(steps, t, true);
        for (z, amp) in psi[t - 1].amps.iter().enumerate() {
            state.add(layout.label(z, &ct), amp.clone());
        }
        for (z, amp) in psi[t].amps.iter().enumerate() {
            state.add(layout.label(z, &ct_p), amp.clone());
        }
    }
    Ok(state)
}

/// Prehistory state: the idle prefix of the history state over |0^m⟩,
/// normalized by √(2L). Needs L ≥ 1.
pub fn bravyi_prehistory_state(c: &Circuit) -> Result<SparseState> {
    if c.idle == 0 {
        return Err(Error::PrehistoryNeedsIdle);
    }
    let steps = c.steps();
    let layout = BasisLayout {
        qubits: c.qubits,
        steps,
    };
    let mut state = SparseState::new(rat(1, 2 * c.idle as i64));
    for t in 1..=c.idle {
        state.add(layout.label(0, &clock_state(steps, t, false)), Rat::one());
        state.add(layout.label(0, &clock_state(steps, t, true)), Rat::one());
    }
    Ok(state)
}

/// A normalized state with integer amplitudes: (1/Z)·Σ a_x|x⟩ with a_x ∈ ℤ
/// and Z² = Σ a_x².
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerState {
    pub amps: BTreeMap<usize, BigInt>,
    pub z_sq: BigUint,
}

impl IntegerState {
    pub fn new(amps: BTreeMap<usize, BigInt>) -> Self {
        let z_sq = amps
            .values()
            .map(|a| (a * a).magnitude().clone())
            .sum::<BigUint>();
        IntegerState { amps, z_sq }
    }

    pub fn from_entries(entries: &[(usize, i64)]) -> Self {
        Self::new(
            entries
                .iter()
                .map(|&(i, a)| (i, BigInt::from(a)))
                .collect(),
        )
    }

    /// The rank-one projector (1/Z²)·|a⟩⟨a| as a sparse rational matrix.
    pub fn projector(&self, dim: usize) -> SparseMat {
        let z_sq = Rat::from_integer(BigInt::from(self.z_sq.clone()));
        let mut m = SparseMat::zeros(dim, dim);
        for (i, a) in &self.amps {
            for (j, b) in &self.amps {
                m.add_entry(*i, *j, Rat::from_integer(a * b) / z_sq.clone());
            }
        }
        m.normalize();
        m
    }

    pub fn to_exact_state(&self, dim: usize) -> ExactState {
        let mut amps = vec![Rat::zero(); dim];
        for (i, a) in &self.amps {
            amps[*i] = Rat::from_integer(a.clone());
        }
        ExactState {
            scale_sq: Rat::one() / Rat::from_integer(BigInt::from(self.z_sq.clone())),
            amps,
        }
    }
}

/// Decomposes every term of the Hamiltonian into rank-one projectors onto
/// integer states; the projectors of each term sum back to it exactly.
pub fn decompose_rank_one(
    h: &QsatHamiltonian,
) -> Result<Vec<(BravyiTermKind, Vec<IntegerState>)>> {
    let layout = h.layout;
    let dim = h.dim();
    let mut out = Vec::with_capacity(h.terms.len());
    for term in &h.terms {
        let mut states: Vec<IntegerState> = Vec::new();
        match term.kind {
            BravyiTermKind::In { .. } | BravyiTermKind::Clock { .. } | BravyiTermKind::Out => {
                for (r, c, v) in term.matrix.entries() {
                    if r != c || v != &Rat::one() {
                        return Err(Error::InvalidParameter(format!(
                            "diagonal term has unexpected entry at ({r},{c}): {v}"
                        )));
                    }
                    states.push(IntegerState::from_entries(&[(r, 1)]));
                }
            }
            BravyiTermKind::Prop { t } => {
                let gate = h.circuit.gate_at(t);
                for col in 0..dim {
                    if layout.pair(col, t) != ClockSym::A1 {
                        continue;
                    }
                    let z = layout.comp(col);
                    let a2 = layout.with_pair(col, t, ClockSym::A2);
                    match gate {
                        Gate::Id => {
                            states.push(IntegerState::from_entries(&[(col, 1), (a2, -1)]));
                        }
                        Gate::Cnot { control, target } => {
                            let z2 = if (z >> (layout.qubits - 1 - control)) & 1 == 1 {
                                z ^ (1 << (layout.qubits - 1 - target))
                            } else {
                                z
                            };
                            states.push(IntegerState::from_entries(&[
                                (col, 1),
                                (layout.with_comp(a2, z2), -1),
                            ]));
                        }
                        Gate::Pyth { target } => {
                            let mask = 1usize << (layout.qubits - 1 - target);
                            let b = (z & mask != 0) as usize;
                            // 5·U|z⟩ over the target bit: (3,−4) for |0⟩, (4,3) for |1⟩
                            let (c0, c1): (i64, i64) = if b == 0 { (3, -4) } else { (4, 3) };
                            states.push(IntegerState::from_entries(&[
                                (col, 5),
                                (layout.with_comp(a2, z & !mask), -c0),
                                (layout.with_comp(a2, z | mask), -c1),
                            ]));
                        }
                    }
                }
            }
            BravyiTermKind::PropLink { t } => {
                for col in 0..dim {
                    if (layout.pair(col, t), layout.pair(col, t + 1))
                        != (ClockSym::A2, ClockSym::U)
                    {
                        continue;
                    }
                    let other = layout
                        .with_pair(layout.with_pair(col, t, ClockSym::D), t + 1, ClockSym::A1);
                    states.push(IntegerState::from_entries(&[(col, 1), (other, -1)]));
                }
            }
        }
        // the projectors must sum back to the term exactly
        let mut sum = SparseMat::zeros(dim, dim);
        for s in &states {
            sum = sum.add(&s.projector(dim));
        }
        if !sum.sub(&term.matrix).is_zero() {
            return Err(Error::InvalidParameter(format!(
                "rank-one decomposition does not reconstruct term {:?}",
                term.kind
            )));
        }
        out.push((term.kind.clone(), states));
    }
    Ok(out)
}

/// Checks ⟨x|M|x⟩ ≥ 0 on a deterministic family of rational vectors; a cheap
/// exact positive-semidefiniteness spot check.
pub fn psd_spot_check(m: &SparseMat, trials: usize) -> bool {
    let dim = m.nrows();
    let mut seed = 0x243F6A8885A308D3u64;
    for _ in 0..trials {
        let mut x = Vec::with_capacity(dim);
        for _ in 0..dim {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let v = ((seed >> 33) % 7) as i64 - 3;
            x.push(Rat::from_integer(BigInt::from(v)));
        }
        let y = m.matvec(&x);
        let q: Rat = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        if q.is_negative() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clock_state_patterns() {
        let c2 = clock_state(3, 2, false);
        assert_eq!(c2, vec![ClockSym::D, ClockSym::A1, ClockSym::U]);
        let c2p = clock_state(3, 2, true);
        assert_eq!(c2p, vec![ClockSym::D, ClockSym::A2, ClockSym::U]);
        // binary packing: d a1 u = 11 01 00
        assert_eq!(clock_bits(&c2), BigUint::from(0b110100u32));
    }

    #[test]
    fn layout_round_trip() {
        let layout = BasisLayout { qubits: 2, steps: 2 };
        for idx in 0..layout.dim() {
            let s1 = layout.pair(idx, 1);
            let s2 = layout.pair(idx, 2);
            let rebuilt = layout.with_pair(layout.with_pair(idx, 1, s1), 2, s2);
            assert_eq!(rebuilt, idx);
            let comp = layout.comp(idx);
            assert_eq!(layout.with_comp(idx, comp), idx);
        }
    }

    #[test]
    fn hamiltonian_is_symmetric_and_psd() {
        let c = crate::circuit::preidle(
            &Circuit::new(1, vec![Gate::Pyth { target: 0 }]).unwrap(),
            1,
        );
        let h = build_bravyi_hamiltonian(&c).unwrap();
        assert!(h.matrix.is_symmetric());
        for term in &h.terms {
            assert!(psd_spot_check(&term.matrix, 4), "{:?}", term.kind);
        }
    }

    #[test]
    fn integer_state_projector() {
        let s = IntegerState::from_entries(&[(0, 5), (1, -3), (2, 4)]);
        assert_eq!(s.z_sq, BigUint::from(50u32));
        let p = s.projector(3);
        assert_eq!(p.get(0, 0), rat(25, 50));
        assert_eq!(p.get(1, 0), rat(-15, 50));
        assert!(p.is_symmetric());
    }
}

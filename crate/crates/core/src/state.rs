//! Exact quantum state vectors.
//!
//! States produced by the clock constructions have amplitudes of the form
//! q·√(scale²) with q rational and one global normalization: they are stored
//! as a rational vector plus the exact squared scale, so squared overlaps and
//! norms stay in ℚ. History states over long idle prefixes live in spaces
//! far too large to densify, hence the sparse variant with big-integer basis
//! labels.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat_to_f64, Radical, Rat};

/// A dense exact state: value = √(scale_sq) · amps.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactState {
    pub scale_sq: Rat,
    pub amps: Vec<Rat>,
}

impl ExactState {
    pub fn basis(dim: usize, idx: usize) -> Self {
        let mut amps = vec![Rat::zero(); dim];
        amps[idx] = Rat::one();
        ExactState {
            scale_sq: Rat::one(),
            amps,
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sq(&self) -> Rat {
        let s: Rat = self.amps.iter().map(|a| a * a).sum();
        &self.scale_sq * s
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sq() == Rat::one()
    }

    /// ⟨self, other⟩² (exactly rational).
    pub fn overlap_sq(&self, other: &ExactState) -> Rat {
        assert_eq!(self.dim(), other.dim());
        let ip: Rat = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a * b)
            .sum();
        &self.scale_sq * &other.scale_sq * &ip * &ip
    }

    /// ⟨self, other⟩ as an exact radical.
    pub fn overlap(&self, other: &ExactState) -> Radical {
        assert_eq!(self.dim(), other.dim());
        let ip: Rat = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a * b)
            .sum();
        let scale = Radical::sqrt_of_rat(&(&self.scale_sq * &other.scale_sq))
            .expect("scales are nonnegative");
        scale.mul_rat(&ip)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        let s = rat_to_f64(&self.scale_sq).sqrt();
        self.amps.iter().map(|a| rat_to_f64(a) * s).collect()
    }
}

/// A sparse exact state over big-integer basis labels.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseState {
    pub scale_sq: Rat,
    pub amps: BTreeMap<BigUint, Rat>,
}

impl SparseState {
    pub fn new(scale_sq: Rat) -> Self {
        SparseState {
            scale_sq,
            amps: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, label: BigUint, amp: Rat) {
        if amp.is_zero() {
            return;
        }
        let e = self.amps.entry(label).or_insert_with(Rat::zero);
        *e += amp;
        if e.is_zero() {
            let dead: Vec<BigUint> = self
                .amps
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.amps.remove(&k);
            }
        }
    }

    pub fn support_size(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sq(&self) -> Rat {
        let s: Rat = self.amps.values().map(|a| a * a).sum();
        &self.scale_sq * s
    }

    pub fn overlap_sq(&self, other: &SparseState) -> Rat {
        let mut ip = Rat::zero();
        for (k, a) in &self.amps {
            if let Some(b) = other.amps.get(k) {
                ip += a * b;
            }
        }
        &self.scale_sq * &other.scale_sq * &ip * &ip
    }

    pub fn overlap(&self, other: &SparseState) -> Radical {
        let mut ip = Rat::zero();
        for (k, a) in &self.amps {
            if let Some(b) = other.amps.get(k) {
                ip += a * b;
            }
        }
        let scale = Radical::sqrt_of_rat(&(&self.scale_sq * &other.scale_sq))
            .expect("scales are nonnegative");
        scale.mul_rat(&ip)
    }

    /// Densifies into an [`ExactState`] of the given dimension; every label
    /// must fit.
    pub fn densify(&self, dim: usize) -> Result<ExactState> {
        let mut amps = vec![Rat::zero(); dim];
        for (k, a) in &self.amps {
            let idx = k
                .to_usize()
                .filter(|&i| i < dim)
                .ok_or_else(|| Error::DimensionMismatch {
                    left: dim,
                    right: dim + 1,
                })?;
            amps[idx] = a.clone();
        }
        Ok(ExactState {
            scale_sq: self.scale_sq.clone(),
            amps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn overlap_of_scaled_states() {
        // ψ = (|0⟩+|1⟩)/√2, φ = |0⟩: overlap² = 1/2
        let psi = ExactState {
            scale_sq: rat(1, 2),
            amps: vec![rat(1, 1), rat(1, 1)],
        };
        let phi = ExactState::basis(2, 0);
        assert!(psi.is_unit());
        assert_eq!(psi.overlap_sq(&phi), rat(1, 2));
    }

    #[test]
    fn sparse_matches_dense() {
        let mut s = SparseState::new(rat(1, 3));
        s.add(BigUint::from(0u32), rat(1, 1));
        s.add(BigUint::from(5u32), rat(1, 1));
        s.add(BigUint::from(7u32), rat(1, 1));
        assert_eq!(s.norm_sq(), rat(1, 1));
        let d = s.densify(8).unwrap();
        assert_eq!(d.norm_sq(), rat(1, 1));
        assert!(s.densify(6).is_err());
    }
}

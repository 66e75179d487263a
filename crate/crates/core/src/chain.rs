//! Chains over clique complexes and succinct subset-state descriptors.
//!
//! A subset state over blocks S₁,…,S_m (each a Cartesian product of one
//! oriented edge set per join factor) expands to (1/√m)·Σᵢ |Sᵢ⟩ with each
//! block a uniform superposition over its product simplices. Amplitudes are
//! 1/√(m·|Sᵢ|), so coefficients live in ℚ adjoined square roots and stay
//! exact end to end.

use std::collections::BTreeMap;

use num_traits::One;

use crate::complex::{CliqueComplex, Simplex};
use crate::error::{Error, Result};
use crate::scalar::{Radical, Rat};

/// A sparse chain in C_p, coefficients in the orthonormal basis |σ'⟩.
#[derive(Clone, Debug)]
pub struct Chain {
    dimension: usize,
    coeffs: BTreeMap<usize, Radical>,
}

impl Chain {
    pub fn zero(dimension: usize) -> Self {
        Chain {
            dimension,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_entries(dimension: usize, entries: Vec<(usize, Radical)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, c) in entries {
            if !c.is_zero() {
                let e = coeffs.entry(i).or_insert_with(Radical::zero);
                *e += c;
                if e.is_zero() {
                    coeffs.remove(&i);
                }
            }
        }
        Chain { dimension, coeffs }
    }

    pub fn from_rat_entries(dimension: usize, entries: Vec<(usize, Rat)>) -> Self {
        Self::from_entries(
            dimension,
            entries
                .into_iter()
                .map(|(i, c)| (i, Radical::from_rat(c)))
                .collect(),
        )
    }

    /// Validates that every indexed simplex exists in the complex at this
    /// dimension.
    pub fn validate(&self, complex: &CliqueComplex) -> Result<()> {
        complex.check_dim(self.dimension)?;
        let n = complex.len(self.dimension);
        for (&i, _) in &self.coeffs {
            if i >= n {
                return Err(Error::DimensionMismatch { left: i, right: n });
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, idx: usize) -> Option<&Radical> {
        self.coeffs.get(&idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Radical)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.dimension, other.dimension);
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            let e = out.coeffs.entry(*i).or_insert_with(Radical::zero);
            *e += c.clone();
            if e.is_zero() {
                out.coeffs.remove(i);
            }
        }
        out
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.add(&other.scale(&Radical::from_int(-1)))
    }

    pub fn scale(&self, s: &Radical) -> Chain {
        if s.is_zero() {
            return Chain::zero(self.dimension);
        }
        Chain {
            dimension: self.dimension,
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, c)| (*i, c * s))
                .collect(),
        }
    }

    pub fn scale_rat(&self, s: &Rat) -> Chain {
        self.scale(&Radical::from_rat(s.clone()))
    }

    /// ⟨self, other⟩ in the orthonormal basis.
    pub fn inner(&self, other: &Chain) -> Radical {
        assert_eq!(self.dimension, other.dimension);
        let mut s = Radical::zero();
        for (i, c) in &self.coeffs {
            if let Some(d) = other.coeffs.get(i) {
                s += c * d;
            }
        }
        s
    }

    pub fn norm_sq(&self) -> Radical {
        self.inner(self)
    }

    pub fn to_dense_radical(&self, len: usize) -> Vec<Radical> {
        let mut v = vec![Radical::zero(); len];
        for (i, c) in &self.coeffs {
            v[*i] = c.clone();
        }
        v
    }

    pub fn to_f64(&self, len: usize) -> Vec<f64> {
        let mut v = vec![0.0; len];
        for (i, c) in &self.coeffs {
            v[*i] = c.to_f64();
        }
        v
    }

    /// Coefficients in the weighted basis |σ⟩ = w(σ)|σ'⟩, i.e. c_w = c/w(σ).
    pub fn to_weighted_basis(&self, complex: &CliqueComplex) -> Vec<(usize, Radical)> {
        self.coeffs
            .iter()
            .map(|(i, c)| {
                let w = complex.weight(self.dimension, *i);
                (*i, c.mul_rat(&(Rat::one() / w)))
            })
            .collect()
    }

    /// Inverse of [`to_weighted_basis`](Self::to_weighted_basis).
    pub fn from_weighted_basis(
        complex: &CliqueComplex,
        dimension: usize,
        entries: Vec<(usize, Radical)>,
    ) -> Chain {
        Chain::from_entries(
            dimension,
            entries
                .into_iter()
                .map(|(i, c)| {
                    let w = complex.weight(dimension, i);
                    (i, c.mul_rat(w))
                })
                .collect(),
        )
    }
}

/// A product-of-edge-sets description of a union of blocks of (2p−1)-
/// simplices. Each block lists one oriented edge set per join factor; the
/// block's simplices are the Cartesian products.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsetStateDescriptor {
    /// Number of join factors p; the expanded chain lives in dimension 2p−1.
    pub factors: usize,
    /// `blocks[b][f]` = oriented edges of factor f used by block b.
    pub blocks: Vec<Vec<Vec<(u32, u32)>>>,
}

impl SubsetStateDescriptor {
    pub fn new(factors: usize, blocks: Vec<Vec<Vec<(u32, u32)>>>) -> Result<Self> {
        let d = SubsetStateDescriptor { factors, blocks };
        d.validate_shape()?;
        Ok(d)
    }

    pub fn target_dimension(&self) -> usize {
        2 * self.factors - 1
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    fn validate_shape(&self) -> Result<()> {
        if self.factors == 0 {
            return Err(Error::DescriptorInvalid("descriptor needs p >= 1".into()));
        }
        if self.blocks.is_empty() {
            return Err(Error::DescriptorInvalid("descriptor has no blocks".into()));
        }
        for (b, block) in self.blocks.iter().enumerate() {
            if block.len() != self.factors {
                return Err(Error::DescriptorInvalid(format!(
                    "block {b} has {} edge sets, expected {}",
                    block.len(),
                    self.factors
                )));
            }
            for (f, edges) in block.iter().enumerate() {
                if edges.is_empty() {
                    return Err(Error::DescriptorInvalid(format!(
                        "block {b}, factor {f}: empty edge set"
                    )));
                }
                let mut seen = std::collections::BTreeSet::new();
                for &(u, v) in edges {
                    if u == v {
                        return Err(Error::DescriptorInvalid(format!(
                            "block {b}, factor {f}: degenerate edge ({u},{v})"
                        )));
                    }
                    if !seen.insert((u.min(v), u.max(v))) {
                        return Err(Error::DescriptorInvalid(format!(
                            "block {b}, factor {f}: repeated edge ({u},{v})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn block_size(&self, b: usize) -> usize {
        self.blocks[b].iter().map(|e| e.len()).product()
    }
}

/// Expands a descriptor into the chain (1/√m)·Σ_b (1/√|S_b|)·Σ_{σ∈S_b} ±|σ'⟩,
/// with the sign of each simplex given by the orientation of the edge tuple.
///
/// Fails if a tuple is not a simplex of the complex, if a block hits the same
/// simplex twice, or if two blocks overlap. Under those checks the result has
/// exact unit norm.
pub fn expand_subset_state(
    complex: &CliqueComplex,
    descriptor: &SubsetStateDescriptor,
) -> Result<Chain> {
    descriptor.validate_shape()?;
    let dim = descriptor.target_dimension();
    complex.check_dim(dim)?;

    let m = descriptor.block_count();
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new(); // simplex -> block
    let mut entries: Vec<(usize, Radical)> = Vec::new();

    for (b, block) in descriptor.blocks.iter().enumerate() {
        let size = descriptor.block_size(b);
        let amp = Radical::sqrt_of_rat(&Rat::new(
            1.into(),
            (m as i64 * size as i64).into(),
        ))?;

        // iterate the Cartesian product of edge sets
        let mut counters = vec![0usize; block.len()];
        loop {
            let mut verts: Vec<u32> = Vec::with_capacity(2 * block.len());
            for (f, edges) in block.iter().enumerate() {
                let (u, v) = edges[counters[f]];
                verts.push(u);
                verts.push(v);
            }
            let (simplex, sign) = Simplex::oriented(&verts)
                .ok_or_else(|| Error::NotASimplex(verts.clone()))?;
            let idx = complex
                .index_of(&simplex)
                .ok_or_else(|| Error::NotASimplex(simplex.vertices().to_vec()))?;
            match owner.get(&idx) {
                Some(&prev) if prev == b => {
                    return Err(Error::DescriptorInvalid(format!(
                        "block {b} hits simplex {:?} twice",
                        simplex.vertices()
                    )));
                }
                Some(_) => {
                    return Err(Error::BlockOverlap(simplex.vertices().to_vec()));
                }
                None => {
                    owner.insert(idx, b);
                }
            }
            let coeff = if sign >= 0 {
                amp.clone()
            } else {
                -amp.clone()
            };
            entries.push((idx, coeff));

            // advance the odometer; stop once every counter wraps
            let mut wrapped = true;
            for f in (0..block.len()).rev() {
                counters[f] += 1;
                if counters[f] < block[f].len() {
                    wrapped = false;
                    break;
                }
                counters[f] = 0;
            }
            if wrapped {
                break;
            }
        }
    }

    let chain = Chain::from_entries(dim, entries);
    debug_assert!(chain.norm_sq().eq_rat(&Rat::one()));
    Ok(chain)
}

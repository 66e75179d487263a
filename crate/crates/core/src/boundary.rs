//! Weighted boundary operators and combinatorial Laplacians.
//!
//! Chains are expressed in the orthonormal basis |σ'⟩ = |σ⟩/w(σ). In that
//! basis the boundary of a sorted p-simplex σ = [v₀,…,v_p] has entry
//! (−1)ⁱ·w(vᵢ) in the row of the facet σ∖{vᵢ}, and the p-th combinatorial
//! Laplacian is Δ_p = ∂_{p+1}∂_{p+1}ᵀ + ∂_pᵀ∂_p.


use crate::chain::Chain;
use crate::complex::CliqueComplex;
use crate::error::Result;
use crate::scalar::{Radical, Rat};
use crate::sparse::{LinComb, SparseMat};

/// The sparse matrix of ∂_p : C_p → C_{p−1}. For p = 0 the matrix has zero
/// rows.
pub fn boundary_matrix(complex: &CliqueComplex, p: usize) -> Result<SparseMat> {
    complex.check_dim(p)?;
    let ncols = complex.len(p);
    let nrows = if p == 0 { 0 } else { complex.len(p - 1) };
    let mut m = SparseMat::zeros(nrows, ncols);
    if p == 0 {
        return Ok(m);
    }
    for (col, simplex) in complex.simplices(p).iter().enumerate() {
        for (i, &v) in simplex.vertices().iter().enumerate() {
            let facet = simplex.facet(i);
            let row = complex
                .index_of(&facet)
                .expect("clique complexes are closed under faces");
            let w = complex.graph().weight(v).clone();
            let entry = if i % 2 == 0 { w } else { -w };
            m.add_entry(row, col, entry);
        }
    }
    m.normalize();
    Ok(m)
}

/// Δ_p with its up- and down-parts cached, plus the boundary factors they
/// came from.
#[derive(Clone, Debug)]
pub struct Laplacian {
    pub p: usize,
    /// ∂_p (rows: (p−1)-simplices, cols: p-simplices).
    pub boundary_down: SparseMat,
    /// ∂_{p+1} (rows: p-simplices, cols: (p+1)-simplices); zero columns when
    /// no (p+1)-simplices exist.
    pub boundary_up: SparseMat,
    /// ∂_{p+1}·∂_{p+1}ᵀ
    pub up: SparseMat,
    /// ∂_pᵀ·∂_p
    pub down: SparseMat,
    /// up + down
    pub full: SparseMat,
}

pub fn laplacian(complex: &CliqueComplex, p: usize) -> Result<Laplacian> {
    complex.check_dim(p)?;
    let boundary_down = boundary_matrix(complex, p)?;
    let boundary_up = if p + 1 <= complex.max_dim() {
        boundary_matrix(complex, p + 1)?
    } else {
        SparseMat::zeros(complex.len(p), 0)
    };
    let up = boundary_up.gram_left();
    let down = boundary_down.gram_right();
    let full = up.add(&down);
    Ok(Laplacian {
        p,
        boundary_down,
        boundary_up,
        up,
        down,
        full,
    })
}

impl Laplacian {
    pub fn dim(&self) -> usize {
        self.full.nrows()
    }

    /// Stack of [∂_p ; ∂_{p+1}ᵀ]; its kernel is ker Δ_p = Z_p ∩ B_p^⊥,
    /// computed without squaring the operators.
    pub fn kernel_stack(&self) -> SparseMat {
        self.boundary_down.vstack(&self.boundary_up.transpose())
    }
}

fn apply_generic<T: LinComb>(
    complex: &CliqueComplex,
    p: usize,
    entries: impl Iterator<Item = (usize, T)>,
) -> Vec<(usize, T)> {
    let mut out: std::collections::BTreeMap<usize, T> = std::collections::BTreeMap::new();
    for (idx, coeff) in entries {
        let simplex = complex.simplex(p, idx);
        for (i, &v) in simplex.vertices().iter().enumerate() {
            let facet = simplex.facet(i);
            let row = complex.index_of(&facet).expect("face closure");
            let w = complex.graph().weight(v).clone();
            let signed = if i % 2 == 0 { w } else { -w };
            out.entry(row)
                .or_insert_with(T::lin_zero)
                .axpy(&signed, &coeff);
        }
    }
    out.into_iter().filter(|(_, v)| !v.is_lin_zero()).collect()
}

/// ∂_p applied matrix-free to a chain of dimension p ≥ 1.
pub fn apply_boundary(complex: &CliqueComplex, chain: &Chain) -> Result<Chain> {
    let p = chain.dimension();
    complex.check_dim(p)?;
    if p == 0 {
        return Ok(Chain::zero(0));
    }
    let entries = apply_generic(complex, p, chain.iter().map(|(i, c)| (i, c.clone())));
    Ok(Chain::from_entries(p - 1, entries))
}

/// ∂_{p+1}ᵀ applied to a chain of dimension p (the adjoint/coboundary map).
pub fn apply_adjoint(complex: &CliqueComplex, chain: &Chain) -> Result<Chain> {
    let p = chain.dimension();
    complex.check_dim(p)?;
    if p + 1 > complex.max_dim() || complex.len(p + 1) == 0 {
        return Ok(Chain::zero(p + 1));
    }
    // (∂ᵀx)_τ = Σᵢ (−1)ⁱ w(vᵢ) x_{τ∖vᵢ} over (p+1)-simplices τ
    let mut entries: Vec<(usize, Radical)> = Vec::new();
    for (col, simplex) in complex.simplices(p + 1).iter().enumerate() {
        let mut acc = Radical::zero();
        for (i, &v) in simplex.vertices().iter().enumerate() {
            let facet = simplex.facet(i);
            let row = complex.index_of(&facet).expect("face closure");
            if let Some(x) = chain.coeff(row) {
                let w = complex.graph().weight(v).clone();
                let signed: Rat = if i % 2 == 0 { w } else { -w };
                acc += x.mul_rat(&signed);
            }
        }
        if !acc.is_zero() {
            entries.push((col, acc));
        }
    }
    Ok(Chain::from_entries(p + 1, entries))
}

/// Δ_p applied matrix-free: ∂_{p+1}(∂_{p+1}ᵀ x) + ∂_pᵀ(∂_p x).
pub fn apply_laplacian(complex: &CliqueComplex, chain: &Chain) -> Result<Chain> {
    let p = chain.dimension();
    complex.check_dim(p)?;
    let up_in = apply_adjoint(complex, chain)?;
    let mut total = if up_in.is_zero() {
        Chain::zero(p)
    } else {
        apply_boundary(complex, &up_in)?
    };
    if p > 0 {
        let down_in = apply_boundary(complex, chain)?;
        if !down_in.is_zero() {
            let down = apply_adjoint(complex, &down_in)?;
            total = total.add(&down);
        }
    }
    Ok(total)
}

/// ‖∂ x‖² + ‖∂ᵀ x‖² = ⟨x, Δx⟩, as an exact radical.
pub fn dirichlet_energy(complex: &CliqueComplex, chain: &Chain) -> Result<Radical> {
    let b = apply_boundary(complex, chain)?;
    let a = apply_adjoint(complex, chain)?;
    Ok(b.norm_sq() + a.norm_sq())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::graph::WeightedGraph;
    use crate::scalar::{rat, rat_int};

    fn single_edge_weighted(wa: Rat, wb: Rat) -> CliqueComplex {
        let g = WeightedGraph::new(2, vec![wa, wb], &[(0, 1)]).unwrap();
        CliqueComplex::build(&g, 1).unwrap()
    }

    #[test]
    fn unit_edge_boundary_column() {
        let k = single_edge_weighted(rat_int(1), rat_int(1));
        let d1 = boundary_matrix(&k, 1).unwrap();
        // ∂|[a,b]'⟩ = w(a)|[b]'⟩ − w(b)|[a]'⟩
        assert_eq!(d1.get(1, 0), rat_int(1));
        assert_eq!(d1.get(0, 0), rat_int(-1));
    }

    #[test]
    fn weighted_edge_boundary_column() {
        let k = single_edge_weighted(rat_int(2), rat_int(3));
        let d1 = boundary_matrix(&k, 1).unwrap();
        assert_eq!(d1.get(1, 0), rat_int(2)); // +w(a) at [b]
        assert_eq!(d1.get(0, 0), rat_int(-3)); // −w(b) at [a]
    }

    #[test]
    fn triangle_boundary_column() {
        let g = WeightedGraph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let k = CliqueComplex::build(&g, 2).unwrap();
        let d2 = boundary_matrix(&k, 2).unwrap();
        // edges in lex order: [0,1], [0,2], [1,2]
        assert_eq!(d2.get(2, 0), rat_int(1)); // +[1,2]
        assert_eq!(d2.get(1, 0), rat_int(-1)); // −[0,2]
        assert_eq!(d2.get(0, 0), rat_int(1)); // +[0,1]
    }

    #[test]
    fn single_edge_laplacian() {
        let k = single_edge_weighted(rat_int(1), rat_int(1));
        let l = laplacian(&k, 0).unwrap();
        assert_eq!(l.full.get(0, 0), rat_int(1));
        assert_eq!(l.full.get(0, 1), rat_int(-1));
        assert_eq!(l.full.get(1, 1), rat_int(1));
        assert!(l.full.is_symmetric());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let g = WeightedGraph::new(
            4,
            vec![rat(2, 1), rat(1, 3), rat(5, 1), rat(7, 2)],
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let k = CliqueComplex::build(&g, 3).unwrap();
        for p in 1..=2 {
            let dp = boundary_matrix(&k, p).unwrap();
            let dp1 = boundary_matrix(&k, p + 1).unwrap();
            // compose column by column
            for c in 0..dp1.ncols() {
                let col: Vec<Rat> = {
                    let mut v = vec![Rat::zero(); dp1.nrows()];
                    for (r, x) in dp1.col(c) {
                        v[*r] = x.clone();
                    }
                    v
                };
                let y = dp.matvec(&col);
                assert!(y.iter().all(|x| x.is_zero()), "∂∘∂ ≠ 0 at p={p}");
            }
        }
    }

    #[test]
    fn matrix_free_matches_assembled() {
        let g = WeightedGraph::new(
            4,
            vec![rat(1, 1), rat(2, 1), rat(1, 2), rat(3, 1)],
            &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let k = CliqueComplex::build(&g, 2).unwrap();
        let lap = laplacian(&k, 1).unwrap();
        let chain = Chain::from_rat_entries(
            1,
            vec![(0, rat(1, 3)), (2, rat(-2, 1)), (4, rat(5, 7))],
        );
        let via_ops = apply_laplacian(&k, &chain).unwrap();
        let dense = chain.to_dense_radical(k.len(1));
        let via_mat = lap.full.matvec(&dense);
        for (i, v) in via_mat.iter().enumerate() {
            let lhs = via_ops.coeff(i).cloned().unwrap_or_else(Radical::zero);
            assert!((lhs - v.clone()).is_zero());
        }
    }
}

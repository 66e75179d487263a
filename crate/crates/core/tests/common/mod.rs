#![allow(dead_code)]

//! Test-side oracles, kept independent of the library's linear algebra:
//! a dense rational Gaussian elimination for ranks/Betti numbers, a Jacobi
//! rotation eigensolver for spectra, and a brute-force clique counter.

use harpo_core::scalar::Rat;
use harpo_core::sparse::SparseMat;
use harpo_core::{CliqueComplex, WeightedGraph};
use num_traits::Zero;

/// Rank by dense fraction-based Gaussian elimination (no pivot strategy
/// shared with the library's sparse echelon path).
pub fn dense_rank(mat: &SparseMat) -> usize {
    let (nr, nc) = (mat.nrows(), mat.ncols());
    let mut a: Vec<Vec<Rat>> = vec![vec![Rat::zero(); nc]; nr];
    for (r, c, v) in mat.entries() {
        a[r][c] = v.clone();
    }
    let mut rank = 0;
    let mut row = 0;
    for col in 0..nc {
        let pivot = (row..nr).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(row, p);
        let inv = Rat::from_integer(1.into()) / a[row][col].clone();
        for c in col..nc {
            a[row][c] *= &inv;
        }
        for r in 0..nr {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..nc {
                    let delta = &f * &a[row][c];
                    a[r][c] -= delta;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == nr {
            break;
        }
    }
    rank
}

/// Betti number β_p = dim C_p − rank ∂_p − rank ∂_{p+1} via the dense oracle.
pub fn betti_oracle(complex: &CliqueComplex, p: usize) -> usize {
    let dp = harpo_core::boundary_matrix(complex, p).unwrap();
    let rank_down = dense_rank(&dp);
    let rank_up = if p + 1 <= complex.max_dim() {
        dense_rank(&harpo_core::boundary_matrix(complex, p + 1).unwrap())
    } else {
        0
    };
    complex.len(p) - rank_down - rank_up
}

/// Eigenvalues by cyclic Jacobi rotations (ascending).
pub fn jacobi_eigenvalues(mat: &SparseMat) -> Vec<f64> {
    let n = mat.nrows();
    assert_eq!(n, mat.ncols());
    let mut a = vec![vec![0.0f64; n]; n];
    for (r, c, v) in mat.entries() {
        a[r][c] = harpo_core::scalar::rat_to_f64(v);
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-18 {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Counts the k-cliques of a graph by enumerating all vertex subsets
/// (feasible for ≤ 20 vertices).
pub fn clique_count_oracle(graph: &WeightedGraph, k: usize) -> usize {
    let n = graph.vertex_count();
    assert!(n <= 20);
    let mut count = 0;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let verts: Vec<u32> = (0..n as u32).filter(|v| mask & (1 << v) != 0).collect();
        let is_clique = verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&v| graph.has_edge(u, v)));
        if is_clique {
            count += 1;
        }
    }
    count
}

//! Clique complexes: simplices with orientation bookkeeping and clique
//! enumeration in deterministic lexicographic order.

use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::scalar::Rat;

pub const DEFAULT_SIMPLEX_CAP: usize = 10_000_000;

/// A simplex stored by its strictly increasing vertex list (the canonical
/// orientation representative).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<u32>,
}

impl Simplex {
    pub fn new(vertices: Vec<u32>) -> Result<Self> {
        if !vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!(
                "simplex vertices not strictly increasing: {vertices:?}"
            )));
        }
        Ok(Simplex { vertices })
    }

    /// Canonicalizes an arbitrarily ordered vertex list; the sign is the
    /// parity of the sorting permutation (+1 even, −1 odd). Repeated vertices
    /// yield a degenerate (zero) simplex, reported as `None`.
    pub fn oriented(vertices: &[u32]) -> Option<(Simplex, i8)> {
        let mut v = vertices.to_vec();
        // count inversions with insertion sort; lists here are short
        let mut swaps = 0usize;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        Some((Simplex { vertices: v }, sign))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The i-th facet: vertices with the i-th removed (still sorted).
    pub fn facet(&self, i: usize) -> Simplex {
        let mut v = self.vertices.clone();
        v.remove(i);
        Simplex { vertices: v }
    }
}

/// The clique complex of a weighted graph up to a chosen dimension.
///
/// Per dimension, simplices are listed in lexicographic order of their
/// vertex lists; that order fixes the row/column order of every matrix built
/// downstream.
#[derive(Clone, Debug)]
pub struct CliqueComplex {
    graph: WeightedGraph,
    max_dim: usize,
    simplices: Vec<Vec<Simplex>>,
    weights: Vec<Vec<Rat>>, // w(σ) = Π w(v) per simplex
}

impl CliqueComplex {
    /// Enumerates all cliques of the graph with at most `max_dim + 1`
    /// vertices. Fails if the count exceeds `cap`.
    pub fn build_with_cap(graph: &WeightedGraph, max_dim: usize, cap: usize) -> Result<Self> {
        let n = graph.vertex_count() as u32;
        let mut simplices: Vec<Vec<Simplex>> = vec![Vec::new(); max_dim + 1];
        let mut count = 0usize;

        // Depth-first extension by vertices larger than the current maximum;
        // visiting candidates in increasing order yields lexicographic output.
        fn extend(
            graph: &WeightedGraph,
            clique: &mut Vec<u32>,
            candidates: &[u32],
            max_len: usize,
            out: &mut Vec<Vec<Simplex>>,
            count: &mut usize,
            cap: usize,
        ) -> Result<()> {
            *count += 1;
            if *count > cap {
                return Err(Error::SimplexCapExceeded {
                    count: *count,
                    cap,
                });
            }
            out[clique.len() - 1].push(Simplex {
                vertices: clique.clone(),
            });
            if clique.len() == max_len {
                return Ok(());
            }
            for (i, &v) in candidates.iter().enumerate() {
                let next: Vec<u32> = candidates[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&u| graph.has_edge(u, v))
                    .collect();
                clique.push(v);
                extend(graph, clique, &next, max_len, out, count, cap)?;
                clique.pop();
            }
            Ok(())
        }

        for v in 0..n {
            let candidates: Vec<u32> = (v + 1..n).filter(|&u| graph.has_edge(u, v)).collect();
            let mut clique = vec![v];
            extend(
                graph,
                &mut clique,
                &candidates,
                max_dim + 1,
                &mut simplices,
                &mut count,
                cap,
            )?;
        }

        let weights = simplices
            .iter()
            .map(|dim| {
                dim.iter()
                    .map(|s| {
                        s.vertices()
                            .iter()
                            .fold(Rat::one(), |acc, &v| acc * graph.weight(v))
                    })
                    .collect()
            })
            .collect();

        Ok(CliqueComplex {
            graph: graph.clone(),
            max_dim,
            simplices,
            weights,
        })
    }

    pub fn build(graph: &WeightedGraph, max_dim: usize) -> Result<Self> {
        Self::build_with_cap(graph, max_dim, DEFAULT_SIMPLEX_CAP)
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Number of p-simplices (0 above max_dim).
    pub fn len(&self, p: usize) -> usize {
        self.simplices.get(p).map(|v| v.len()).unwrap_or(0)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|v| v.len()).collect()
    }

    pub fn simplices(&self, p: usize) -> &[Simplex] {
        self.simplices
            .get(p)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn simplex(&self, p: usize, idx: usize) -> &Simplex {
        &self.simplices[p][idx]
    }

    /// w(σ) for the idx-th p-simplex.
    pub fn weight(&self, p: usize, idx: usize) -> &Rat {
        &self.weights[p][idx]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        let p = s.dimension();
        self.simplices
            .get(p)?
            .binary_search_by(|probe| probe.vertices().cmp(s.vertices()))
            .ok()
    }

    /// True if every simplex of `self` appears in `other`.
    pub fn is_subcomplex_of(&self, other: &CliqueComplex) -> bool {
        self.simplices
            .iter()
            .flatten()
            .all(|s| other.index_of(s).is_some())
    }

    pub fn check_dim(&self, p: usize) -> Result<()> {
        if p > self.max_dim {
            return Err(Error::DimensionOutOfRange {
                p,
                max_dim: self.max_dim,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph {
        WeightedGraph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn triangle_counts() {
        let k = CliqueComplex::build(&triangle(), 2).unwrap();
        assert_eq!(k.counts(), vec![3, 3, 1]);
    }

    #[test]
    fn k4_counts() {
        let g = WeightedGraph::unweighted(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        let k = CliqueComplex::build(&g, 3).unwrap();
        assert_eq!(k.counts(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn lexicographic_order_and_lookup() {
        let k = CliqueComplex::build(&triangle(), 2).unwrap();
        let edges: Vec<&[u32]> = k.simplices(1).iter().map(|s| s.vertices()).collect();
        assert_eq!(edges, vec![&[0, 1][..], &[0, 2][..], &[1, 2][..]]);
        let s = Simplex::new(vec![0, 2]).unwrap();
        assert_eq!(k.index_of(&s), Some(1));
        assert_eq!(k.index_of(&Simplex::new(vec![0, 1, 2]).unwrap()), Some(0));
    }

    #[test]
    fn face_closure() {
        let k = CliqueComplex::build(&triangle(), 2).unwrap();
        for p in 1..=2 {
            for s in k.simplices(p) {
                for i in 0..=p {
                    assert!(k.index_of(&s.facet(i)).is_some());
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = WeightedGraph::unweighted(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        let err = CliqueComplex::build_with_cap(&g, 3, 5).unwrap_err();
        assert!(matches!(err, Error::SimplexCapExceeded { .. }));
    }

    #[test]
    fn orientation_signs() {
        let (s, sign) = Simplex::oriented(&[3, 0]).unwrap();
        assert_eq!(s.vertices(), &[0, 3]);
        assert_eq!(sign, -1);
        let (s, sign) = Simplex::oriented(&[2, 0, 1]).unwrap();
        assert_eq!(s.vertices(), &[0, 1, 2]);
        assert_eq!(sign, 1); // cyclic shift of 3 elements is even
        assert!(Simplex::oriented(&[1, 1]).is_none());
    }

    #[test]
    fn simplex_weights_multiply() {
        use crate::scalar::rat;
        let g = WeightedGraph::new(
            3,
            vec![rat(2, 1), rat(3, 1), rat(1, 2)],
            &[(0, 1), (1, 2), (0, 2)],
        )
        .unwrap();
        let k = CliqueComplex::build(&g, 2).unwrap();
        // triangle weight = 2·3·(1/2) = 3
        assert_eq!(*k.weight(2, 0), rat(3, 1));
        // edge (0,1) weight = 6
        let idx = k
            .index_of(&Simplex::new(vec![0, 1]).unwrap())
            .unwrap();
        assert_eq!(*k.weight(1, idx), rat(6, 1));
    }
}

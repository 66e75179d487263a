//! Vertex-weighted graphs, graph joins, and the qubit graph.

use std::collections::BTreeSet;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// An undirected graph with positive rational vertex weights.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    vertex_count: usize,
    weights: Vec<Rat>,
    edges: BTreeSet<(u32, u32)>, // (min, max) pairs
}

impl WeightedGraph {
    /// All-unit-weight graph on `n` vertices with the given edges.
    pub fn unweighted(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        Self::new(n, vec![Rat::one(); n], edges)
    }

    pub fn new(n: usize, weights: Vec<Rat>, edges: &[(u32, u32)]) -> Result<Self> {
        if weights.len() != n {
            return Err(Error::InvalidGraph(format!(
                "{} weights for {} vertices",
                weights.len(),
                n
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidGraph(format!("non-positive weight {w}")));
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) exceeds vertex count {n}"
                )));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(WeightedGraph {
            vertex_count: n,
            weights,
            edges: set,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn weight(&self, v: u32) -> &Rat {
        &self.weights[v as usize]
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        (0..self.vertex_count as u32)
            .filter(|&u| u != v && self.has_edge(u, v))
            .collect()
    }

    /// Adds one vertex of the given weight adjacent to `attach`, returning
    /// the new graph and the new vertex id.
    pub fn with_apex(&self, weight: Rat, attach: &[u32]) -> Result<(Self, u32)> {
        let apex = self.vertex_count as u32;
        let mut weights = self.weights.clone();
        weights.push(weight);
        let mut edges: Vec<(u32, u32)> = self.edges.iter().copied().collect();
        for &v in attach {
            edges.push((v, apex));
        }
        let g = WeightedGraph::new(self.vertex_count + 1, weights, &edges)?;
        Ok((g, apex))
    }
}

/// Graph join: disjoint union plus all cross edges. Vertex ids of `g2` are
/// shifted past those of `g1`; weights are concatenated.
pub fn graph_join(g1: &WeightedGraph, g2: &WeightedGraph) -> WeightedGraph {
    let n1 = g1.vertex_count() as u32;
    let n = g1.vertex_count() + g2.vertex_count();
    let mut weights = g1.weights.clone();
    weights.extend_from_slice(&g2.weights);
    let mut edges: Vec<(u32, u32)> = g1.edges().collect();
    edges.extend(g2.edges().map(|(u, v)| (u + n1, v + n1)));
    for u in 0..n1 {
        for v in 0..g2.vertex_count() as u32 {
            edges.push((u, v + n1));
        }
    }
    WeightedGraph::new(n, weights, &edges).expect("join of valid graphs is valid")
}

/// An iterated join together with the factor boundaries, so that chains over
/// the joined complex can be decomposed factor by factor.
#[derive(Clone, Debug)]
pub struct JoinDecomposition {
    factors: Vec<WeightedGraph>,
    offsets: Vec<u32>, // offsets[i] = first vertex id of factor i; last entry = total
    joined: WeightedGraph,
}

impl JoinDecomposition {
    pub fn new(factors: Vec<WeightedGraph>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGraph("join of zero factors".into()));
        }
        let mut offsets = vec![0u32];
        for f in &factors {
            let last = *offsets.last().unwrap();
            offsets.push(last + f.vertex_count() as u32);
        }
        let mut joined = factors[0].clone();
        for f in &factors[1..] {
            joined = graph_join(&joined, f);
        }
        Ok(JoinDecomposition {
            factors,
            offsets,
            joined,
        })
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> &WeightedGraph {
        &self.factors[i]
    }

    pub fn offset(&self, i: usize) -> u32 {
        self.offsets[i]
    }

    pub fn joined(&self) -> &WeightedGraph {
        &self.joined
    }

    /// Which factor a vertex of the join belongs to.
    pub fn factor_of(&self, v: u32) -> usize {
        debug_assert!(v < *self.offsets.last().unwrap());
        self.offsets.partition_point(|&o| o <= v) - 1
    }
}

/// The 7-vertex base graph: two 4-cycles sharing one vertex. The left cycle
/// 0-1-2-3-0 encodes bit 0, the right cycle 3-4-5-6-3 encodes bit 1; both are
/// listed as oriented edge walks.
#[derive(Clone, Debug)]
pub struct BaseGraph {
    pub graph: WeightedGraph,
    pub left_cycle: Vec<(u32, u32)>,
    pub right_cycle: Vec<(u32, u32)>,
}

impl BaseGraph {
    pub fn wedge_of_squares() -> Self {
        let left = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        let right = vec![(3, 4), (4, 5), (5, 6), (6, 3)];
        let mut edges: Vec<(u32, u32)> = left.clone();
        edges.extend_from_slice(&right);
        BaseGraph {
            graph: WeightedGraph::unweighted(7, &edges).unwrap(),
            left_cycle: left,
            right_cycle: right,
        }
    }

    /// Swaps in a custom base graph. Its two cycles must be closed edge walks
    /// of the graph and the graph must be triangle-free for the join algebra
    /// to go through.
    pub fn custom(
        graph: WeightedGraph,
        left_cycle: Vec<(u32, u32)>,
        right_cycle: Vec<(u32, u32)>,
    ) -> Result<Self> {
        for cyc in [&left_cycle, &right_cycle] {
            if cyc.is_empty() {
                return Err(Error::InvalidGraph("empty cycle".into()));
            }
            for win in cyc.windows(2) {
                if win[0].1 != win[1].0 {
                    return Err(Error::InvalidGraph("cycle edges do not chain".into()));
                }
            }
            if cyc.last().unwrap().1 != cyc[0].0 {
                return Err(Error::InvalidGraph("cycle is not closed".into()));
            }
            for &(u, v) in cyc {
                if !graph.has_edge(u, v) {
                    return Err(Error::InvalidGraph(format!(
                        "cycle edge ({u},{v}) missing from graph"
                    )));
                }
            }
        }
        Ok(BaseGraph {
            graph,
            left_cycle,
            right_cycle,
        })
    }
}

impl Default for BaseGraph {
    fn default() -> Self {
        Self::wedge_of_squares()
    }
}

/// The N-fold join of the base graph, with the per-copy bit cycles exposed.
#[derive(Clone, Debug)]
pub struct QubitGraph {
    base: BaseGraph,
    n: usize,
    join: JoinDecomposition,
}

impl QubitGraph {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_base(n, BaseGraph::default())
    }

    pub fn with_base(n: usize, base: BaseGraph) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("qubit graph needs N >= 1".into()));
        }
        let join = JoinDecomposition::new(vec![base.graph.clone(); n])?;
        Ok(QubitGraph { base, n, join })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &WeightedGraph {
        self.join.joined()
    }

    pub fn join(&self) -> &JoinDecomposition {
        &self.join
    }

    pub fn base(&self) -> &BaseGraph {
        &self.base
    }

    /// Oriented edge walk of the bit cycle in copy `i` (0-based).
    pub fn cycle_edges(&self, i: usize, bit: bool) -> Vec<(u32, u32)> {
        let off = self.join.offset(i);
        let cyc = if bit {
            &self.base.right_cycle
        } else {
            &self.base.left_cycle
        };
        cyc.iter().map(|&(u, v)| (u + off, v + off)).collect()
    }

    /// Vertices of the bit cycle in copy `i`.
    pub fn cycle_vertices(&self, i: usize, bit: bool) -> Vec<u32> {
        let mut vs: Vec<u32> = self.cycle_edges(i, bit).iter().map(|&(u, _)| u).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

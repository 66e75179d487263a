//! On-disk JSON schemas and conversions.
//!
//! Exact rationals are serialized as "p/q" strings ("p" when the denominator
//! is one) so artifacts reproduce losslessly across runs and languages.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chain::{Chain, SubsetStateDescriptor};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::harmonics::{Decision, DecisionMethod};
use crate::overlap::HamiltonianMatrix;
use crate::reduction::ReductionArtifacts;
use crate::scalar::{parse_rat, rat_sqrt_exact, rat_to_string, Radical, Rat};
use crate::sparse::SparseMat;
use crate::state::{ExactState, SparseState};

fn schema_err(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

/// `{"vertices": n, "weights": ["p/q", …], "edges": [[u,v], …]}`; omitted
/// weights mean all 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    pub edges: Vec<(u32, u32)>,
}

impl GraphFile {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        let all_unit = g.weights().iter().all(|w| w == &Rat::one());
        GraphFile {
            vertices: g.vertex_count(),
            weights: if all_unit {
                None
            } else {
                Some(g.weights().iter().map(rat_to_string).collect())
            },
            edges: g.edges().collect(),
        }
    }

    pub fn to_graph(&self) -> Result<WeightedGraph> {
        let weights = match &self.weights {
            None => vec![Rat::one(); self.vertices],
            Some(ws) => {
                if ws.len() != self.vertices {
                    return Err(schema_err(
                        "weights",
                        format!("{} weights for {} vertices", ws.len(), self.vertices),
                    ));
                }
                ws.iter()
                    .map(|s| parse_rat(s))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| schema_err("weights", e.to_string()))?
            }
        };
        WeightedGraph::new(self.vertices, weights, &self.edges)
    }
}

/// `{"p": p, "blocks": [[[ [u,v], …], …], …]}` — per block, one oriented edge
/// list per join factor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DescriptorFile {
    pub p: usize,
    pub blocks: Vec<Vec<Vec<(u32, u32)>>>,
}

impl DescriptorFile {
    pub fn from_descriptor(d: &SubsetStateDescriptor) -> Self {
        DescriptorFile {
            p: d.factors,
            blocks: d.blocks.clone(),
        }
    }

    pub fn to_descriptor(&self) -> Result<SubsetStateDescriptor> {
        SubsetStateDescriptor::new(self.p, self.blocks.clone())
    }
}

/// Chains are grouped by radicand: each component is √(scale_sq) times a
/// rational combination of simplices, so coefficients q·√d round-trip
/// exactly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainFile {
    pub p: usize,
    pub components: Vec<ChainComponent>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainComponent {
    pub scale_sq: String,
    pub entries: Vec<(Vec<u32>, String)>,
}

impl ChainFile {
    pub fn from_chain(chain: &Chain, complex: &crate::complex::CliqueComplex) -> Self {
        let p = chain.dimension();
        // split coefficients by radicand d: q·√d = (q·d)·√(1/d)
        let mut per_d: BTreeMap<u64, Vec<(Vec<u32>, String)>> = BTreeMap::new();
        for (idx, coeff) in chain.iter() {
            let verts = complex.simplex(p, idx).vertices().to_vec();
            for (d, q) in coeff.terms() {
                let scaled = q * Rat::from_integer(d.into());
                per_d
                    .entry(d)
                    .or_default()
                    .push((verts.clone(), rat_to_string(&scaled)));
            }
        }
        ChainFile {
            p,
            components: per_d
                .into_iter()
                .map(|(d, entries)| ChainComponent {
                    scale_sq: rat_to_string(&Rat::new(1.into(), (d as i64).into())),
                    entries,
                })
                .collect(),
        }
    }

    pub fn to_chain(&self, complex: &crate::complex::CliqueComplex) -> Result<Chain> {
        let mut entries: Vec<(usize, Radical)> = Vec::new();
        for comp in &self.components {
            let scale_sq = parse_rat(&comp.scale_sq)?;
            let scale = Radical::sqrt_of_rat(&scale_sq)?;
            for (verts, coeff) in &comp.entries {
                let simplex = crate::complex::Simplex::new(verts.clone())?;
                let idx = complex
                    .index_of(&simplex)
                    .ok_or_else(|| Error::NotASimplex(verts.clone()))?;
                entries.push((idx, scale.mul_rat(&parse_rat(coeff)?)));
            }
        }
        Ok(Chain::from_entries(self.p, entries))
    }
}

/// {"dim": n, "scale_sq": "p/q", "amps": [["idx", "p/q"], …]}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub scale_sq: String,
    pub amps: Vec<(String, String)>,
}

impl StateFile {
    pub fn from_exact(state: &ExactState) -> Self {
        StateFile {
            dim: Some(state.dim()),
            scale_sq: rat_to_string(&state.scale_sq),
            amps: state
                .amps
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, a)| (i.to_string(), rat_to_string(a)))
                .collect(),
        }
    }

    pub fn from_sparse(state: &SparseState) -> Self {
        StateFile {
            dim: None,
            scale_sq: rat_to_string(&state.scale_sq),
            amps: state
                .amps
                .iter()
                .map(|(k, a)| (k.to_string(), rat_to_string(a)))
                .collect(),
        }
    }

    pub fn to_sparse(&self) -> Result<SparseState> {
        let mut out = SparseState::new(parse_rat(&self.scale_sq)?);
        for (k, a) in &self.amps {
            let label: BigUint = k
                .parse()
                .map_err(|_| schema_err("amps", format!("bad basis label {k:?}")))?;
            out.add(label, parse_rat(a)?);
        }
        Ok(out)
    }

    pub fn to_exact(&self, dim: usize) -> Result<ExactState> {
        self.to_sparse()?.densify(dim)
    }
}

/// {"dim": n, "terms": [{"name": …, "entries": [[r, c, "p/q"], …]}, …]}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HamiltonianFile {
    pub dim: usize,
    pub terms: Vec<TermFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermFile {
    pub name: String,
    pub entries: Vec<(usize, usize, String)>,
}

impl HamiltonianFile {
    pub fn from_terms<'a>(
        dim: usize,
        terms: impl Iterator<Item = (String, &'a SparseMat)>,
    ) -> Self {
        HamiltonianFile {
            dim,
            terms: terms
                .map(|(name, m)| TermFile {
                    name,
                    entries: m
                        .entries()
                        .map(|(r, c, v)| (r, c, rat_to_string(v)))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_hamiltonian(&self) -> Result<HamiltonianMatrix> {
        let mut total = SparseMat::zeros(self.dim, self.dim);
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut m = SparseMat::zeros(self.dim, self.dim);
            for (r, c, v) in &t.entries {
                if *r >= self.dim || *c >= self.dim {
                    return Err(schema_err(
                        "terms.entries",
                        format!("entry ({r},{c}) out of range for dim {}", self.dim),
                    ));
                }
                m.add_entry(*r, *c, parse_rat(v)?);
            }
            m.normalize();
            total = total.add(&m);
            terms.push((t.name.clone(), m));
        }
        HamiltonianMatrix::with_terms(total, terms, None)
    }
}

/// Decision output: {"outcome": 0|1, "norm": "p/q"|float, …}. The norm is a
/// rational string when it is exactly rational, otherwise a float; the exact
/// backend additionally reports ‖proj‖² ("norm_sq") in closed form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecisionFile {
    pub outcome: u8,
    pub norm: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_sq: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    pub method: String,
    pub promise_violated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repetitions: Option<u32>,
}

impl DecisionFile {
    pub fn from_decision(d: &Decision) -> Self {
        let norm = match &d.norm_sq {
            Some(nsq) => {
                let exact_norm = nsq.as_rat().and_then(|r| rat_sqrt_exact(&r));
                match exact_norm {
                    Some(r) => serde_json::Value::String(rat_to_string(&r)),
                    None => serde_json::json!(d.norm),
                }
            }
            None => serde_json::json!(d.norm),
        };
        DecisionFile {
            outcome: d.outcome,
            norm,
            norm_sq: d.norm_sq.as_ref().map(|n| n.to_string()),
            gap: d.gap,
            method: match d.method {
                DecisionMethod::Exact => "exact".into(),
                DecisionMethod::Qpe => "qpe".into(),
            },
            promise_violated: d.promise_violated,
            repetitions: d.repetitions,
        }
    }
}

/// Manifest of a reduction bundle directory.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BundleManifest {
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub l: usize,
    pub lambda: String,
    pub gadget_labels: Vec<String>,
    pub block_labels: Vec<String>,
    pub files: BTreeMap<String, String>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Schema {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Writes a reduction's artifacts as a bundle directory: graph files for K₁
/// and K₂, the prehistory descriptor, the Hamiltonian term dump, and a
/// manifest.
pub fn write_instance_bundle(dir: &Path, art: &ReductionArtifacts) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut files = BTreeMap::new();

    let k1 = GraphFile::from_graph(art.k1.complex().graph());
    write_json(&dir.join("k1.json"), &k1)?;
    files.insert("k1".into(), "k1.json".into());

    let k2 = GraphFile::from_graph(art.k2.complex().graph());
    write_json(&dir.join("k2.json"), &k2)?;
    files.insert("k2".into(), "k2.json".into());

    let descriptor = DescriptorFile::from_descriptor(&art.sigma_prehist);
    write_json(&dir.join("sigma_prehist.json"), &descriptor)?;
    files.insert("descriptor".into(), "sigma_prehist.json".into());

    let ham = HamiltonianFile::from_terms(
        art.hamiltonian.dim(),
        art.hamiltonian
            .terms
            .iter()
            .map(|t| (format!("{:?}", t.kind), &t.matrix)),
    );
    write_json(&dir.join("hamiltonian.json"), &ham)?;
    files.insert("hamiltonian".into(), "hamiltonian.json".into());

    let circuit_file = dir.join("circuit.json");
    write_json(&circuit_file, &art.circuit)?;
    files.insert("circuit".into(), "circuit.json".into());

    let manifest = BundleManifest {
        n: art.n_qubits,
        m: art.circuit.qubits,
        t: art.circuit.gates.len(),
        l: art.circuit.idle,
        lambda: rat_to_string(&art.lambda),
        gadget_labels: art.gadget_labels.clone(),
        block_labels: art.block_labels.clone(),
        files,
    };
    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(())
}

pub fn read_graph(path: &Path) -> Result<WeightedGraph> {
    read_json::<GraphFile>(path)?.to_graph()
}

pub fn read_descriptor(path: &Path) -> Result<SubsetStateDescriptor> {
    read_json::<DescriptorFile>(path)?.to_descriptor()
}

pub fn read_circuit(path: &Path) -> Result<Circuit> {
    let c: Circuit = read_json(path)?;
    c.validate()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;
    use crate::scalar::rat;

    #[test]
    fn graph_round_trip_with_weights() {
        let g = WeightedGraph::new(3, vec![rat(1, 1), rat(1, 2), rat(7, 3)], &[(0, 1), (1, 2)])
            .unwrap();
        let f = GraphFile::from_graph(&g);
        let g2 = f.to_graph().unwrap();
        assert_eq!(g, g2);
        // unit weights are omitted
        let u = WeightedGraph::unweighted(2, &[(0, 1)]).unwrap();
        let fu = GraphFile::from_graph(&u);
        assert!(fu.weights.is_none());
        assert_eq!(fu.to_graph().unwrap(), u);
    }

    #[test]
    fn circuit_json_shape() {
        let c = Circuit {
            qubits: 2,
            idle: 3,
            gates: vec![
                Gate::Cnot { control: 0, target: 1 },
                Gate::Pyth { target: 0 },
                Gate::Id,
            ],
        };
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains("\"kind\":\"cnot\""));
        assert!(text.contains("\"idle\":3"));
        let back: Circuit = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn state_round_trip() {
        let s = ExactState {
            scale_sq: rat(1, 3),
            amps: vec![rat(1, 1), rat(0, 1), rat(-2, 5)],
        };
        let f = StateFile::from_exact(&s);
        let back = f.to_exact(3).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn chain_round_trip_with_radicals() {
        let g = WeightedGraph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let k = crate::complex::CliqueComplex::build(&g, 1).unwrap();
        let chain = Chain::from_entries(
            1,
            vec![
                (0, Radical::sqrt_term(rat(1, 2), 2)),
                (2, Radical::from_rat(rat(-1, 3))),
            ],
        );
        let f = ChainFile::from_chain(&chain, &k);
        let back = f.to_chain(&k).unwrap();
        assert!(chain.sub(&back).is_zero());
    }

    #[test]
    fn schema_errors_carry_paths() {
        let f = GraphFile {
            vertices: 2,
            weights: Some(vec!["1".into()]),
            edges: vec![],
        };
        let err = f.to_graph().unwrap_err();
        assert!(err.to_string().contains("weights"));
    }
}

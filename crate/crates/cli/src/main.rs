//! `harpo` — build weighted clique complexes, decide harmonic persistence,
//! compile circuits to clock Hamiltonians, and measure kernel / low-energy
//! overlaps.
//!
//! Exit codes: 0 on success, 2 when a decision carries the promise-violated
//! flag, 1 on input or usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use harpo_core::formats::{self, DecisionFile, HamiltonianFile, StateFile};
use harpo_core::qpe::{samples_to_csv, QpeConfig};
use harpo_core::scalar::{parse_rat, rat_to_string};
use harpo_core::spectral::Backend;
use harpo_core::*;

const SIMPLEX_CAP_ENV: &str = "HARPO_SIMPLEX_CAP";

#[derive(Parser)]
#[command(name = "harpo", version, about = "weighted clique-complex homology, harmonic persistence, and overlap primitives", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exact,
    Qpe,
}

#[derive(Args)]
struct QpeArgs {
    /// Seed for the phase-register sampler.
    #[arg(long)]
    seed: Option<u64>,
    /// Phase-register width b.
    #[arg(long, default_value_t = 10)]
    bits: u32,
    /// Repetition count R (default ⌈16/δ²⌉ capped at 10000).
    #[arg(long)]
    reps: Option<u32>,
    /// Write the per-repetition sample log as CSV.
    #[arg(long)]
    samples: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the clique complex of a graph and report simplex counts.
    ComplexBuild {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        max_dim: usize,
        /// Also list the simplices per dimension in the JSON output.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the p-th Betti number (the harmonic space dimension).
    Betti {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: usize,
        /// Build dimension (defaults to p+1, the minimum for Δ_p).
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
        backend: BackendArg,
    },
    /// Spectral summary of Δ_p: kernel dimension, gap, eigenvalues.
    Spectrum {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long, value_enum, default_value_t = BackendArg::Float)]
        backend: BackendArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a described chain has projection ≥ δ onto the
    /// harmonic space of K in degree p.
    HarmonicsDecide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        descriptor: PathBuf,
        #[arg(long)]
        delta: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
        backend: BackendArg,
        #[command(flatten)]
        qpe: QpeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a K1 harmonic persists to K2 with projection ≥ δ.
    PersistenceDecide {
        #[arg(long)]
        k1: PathBuf,
        #[arg(long)]
        k2: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        descriptor: PathBuf,
        #[arg(long)]
        delta: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
        backend: BackendArg,
        #[command(flatten)]
        qpe: QpeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a circuit to the unary-clock projector Hamiltonian.
    CompileBravyi {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compile a circuit to the integer-clock Hamiltonian.
    CompileKitaev {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact overlap of a state with the kernel (or sub-η eigenspace) of a
    /// Hamiltonian.
    OverlapExact {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long)]
        state: PathBuf,
        /// Low-energy threshold; kernel mode when omitted.
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phase-estimation decision for kernel (or sub-η) overlap.
    OverlapQpe {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        eta: Option<f64>,
        /// Sampler seed (required: runs must be reproducible).
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        bits: u32,
        #[arg(long)]
        reps: Option<u32>,
        #[arg(long)]
        samples: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the full circuit → (K1, K2, σ_prehist, H) instance bundle.
    Reduce {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, default_value = "1/10")]
        lambda: String,
        /// Comma-separated basis labels to fill, e.g. "00,11".
        #[arg(long, default_value = "")]
        gadgets: String,
        #[arg(long)]
        out_dir: PathBuf,
        /// Override the N = m + 2(T+L) refusal cap.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Run the built-in verification checks and print one line per check.
    VerifySuite,
}

fn simplex_cap() -> usize {
    std::env::var(SIMPLEX_CAP_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SIMPLEX_CAP)
}

fn load_complex(path: &Path, max_dim: usize) -> Result<CliqueComplex> {
    let graph = formats::read_graph(path)?;
    CliqueComplex::build_with_cap(&graph, max_dim, simplex_cap())
}

fn emit<T: serde::Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    match out {
        Some(path) => formats::write_json(path, value),
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

fn qpe_config(qpe: &QpeArgs, delta: &Rat, require_seed: bool) -> Result<QpeConfig> {
    let mut cfg = QpeConfig::for_delta(delta);
    cfg.bits = qpe.bits;
    if let Some(r) = qpe.reps {
        cfg.repetitions = r;
    }
    match qpe.seed {
        Some(s) => cfg.seed = s,
        None if require_seed => {
            return Err(Error::InvalidParameter(
                "--seed is required for the qpe method".into(),
            ))
        }
        None => {}
    }
    QpeConfig::new(cfg.bits, cfg.repetitions, cfg.seed).map(|mut fresh| {
        fresh.window = cfg.window;
        fresh
    })
}

fn write_samples(path: &Option<PathBuf>, decision: &Decision) -> Result<()> {
    if let (Some(path), Some(samples)) = (path, &decision.samples) {
        std::fs::write(path, samples_to_csv(samples))?;
    }
    Ok(())
}

fn decision_exit(decision: &Decision) -> u8 {
    if decision.promise_violated {
        2
    } else {
        0
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::ComplexBuild {
            graph,
            max_dim,
            full,
            out,
        } => {
            let k = load_complex(&graph, max_dim)?;
            let counts = k.counts();
            println!("counts: {counts:?}");
            let simplices: Option<Vec<Vec<Vec<u32>>>> = full.then(|| {
                (0..=k.max_dim())
                    .map(|p| {
                        k.simplices(p)
                            .iter()
                            .map(|s| s.vertices().to_vec())
                            .collect()
                    })
                    .collect()
            });
            let report = serde_json::json!({
                "max_dim": k.max_dim(),
                "counts": counts,
                "simplices": simplices,
            });
            if out.is_some() {
                emit(&out, &report)?;
            }
            Ok(0)
        }
        Command::Betti {
            graph,
            p,
            max_dim,
            backend,
        } => {
            let k = load_complex(&graph, max_dim.unwrap_or(p + 1))?;
            let lap = laplacian(&k, p)?;
            let summary = spectral_summary(&lap, backend.into())?;
            println!("{}", summary.kernel_dim);
            Ok(0)
        }
        Command::Spectrum {
            graph,
            p,
            max_dim,
            backend,
            out,
        } => {
            let k = load_complex(&graph, max_dim.unwrap_or(p + 1))?;
            let lap = laplacian(&k, p)?;
            let summary = spectral_summary(&lap, backend.into())?;
            emit(&out, &summary)?;
            Ok(0)
        }
        Command::HarmonicsDecide {
            graph,
            p,
            descriptor,
            delta,
            method,
            backend,
            qpe,
            out,
        } => {
            let k = load_complex(&graph, p + 1)?;
            let d = formats::read_descriptor(&descriptor)?;
            let delta = parse_rat(&delta)?;
            let (method, cfg) = match method {
                MethodArg::Exact => (DecisionMethod::Exact, None),
                MethodArg::Qpe => (
                    DecisionMethod::Qpe,
                    Some(qpe_config(&qpe, &delta, true)?),
                ),
            };
            let decision =
                decide_harmonics(&k, p, &d, &delta, method, backend.into(), cfg.as_ref())?;
            write_samples(&qpe.samples, &decision)?;
            emit(&out, &DecisionFile::from_decision(&decision))?;
            Ok(decision_exit(&decision))
        }
        Command::PersistenceDecide {
            k1,
            k2,
            p,
            descriptor,
            delta,
            method,
            backend,
            qpe,
            out,
        } => {
            let kc1 = load_complex(&k1, p + 1)?;
            let kc2 = load_complex(&k2, p + 1)?;
            let d = formats::read_descriptor(&descriptor)?;
            let delta = parse_rat(&delta)?;
            let instance = PersistenceInstance::new(kc1, kc2, p, d, delta.clone())?;
            let (method, cfg) = match method {
                MethodArg::Exact => (DecisionMethod::Exact, None),
                MethodArg::Qpe => (
                    DecisionMethod::Qpe,
                    Some(qpe_config(&qpe, &delta, true)?),
                ),
            };
            let decision =
                decide_harmonic_persistence(&instance, method, backend.into(), cfg.as_ref())?;
            write_samples(&qpe.samples, &decision)?;
            emit(&out, &DecisionFile::from_decision(&decision))?;
            Ok(decision_exit(&decision))
        }
        Command::CompileBravyi { circuit, out } => {
            let c = formats::read_circuit(&circuit)?;
            let h = build_bravyi_hamiltonian(&c)?;
            let file = HamiltonianFile::from_terms(
                h.dim(),
                h.terms.iter().map(|t| (format!("{:?}", t.kind), &t.matrix)),
            );
            formats::write_json(&out, &file)?;
            println!(
                "compiled {} terms on {} qubits (dim {})",
                h.terms.len(),
                h.layout.total_qubits(),
                h.dim()
            );
            Ok(0)
        }
        Command::CompileKitaev { circuit, out } => {
            let c = formats::read_circuit(&circuit)?;
            let h = build_kitaev_hamiltonian(&c)?;
            let file = HamiltonianFile::from_terms(
                h.dim(),
                h.terms.iter().map(|t| (format!("{:?}", t.kind), &t.matrix)),
            );
            formats::write_json(&out, &file)?;
            println!("compiled {} terms (dim {})", h.terms.len(), h.dim());
            Ok(0)
        }
        Command::OverlapExact {
            hamiltonian,
            state,
            eta,
            out,
        } => {
            let h = formats::read_json::<HamiltonianFile>(&hamiltonian)?.to_hamiltonian()?;
            let s = formats::read_json::<StateFile>(&state)?.to_exact(h.dim())?;
            let report = match eta {
                None => {
                    let sq = harpo_core::overlap::exact_kernel_overlap_sq(&h, &s)?;
                    serde_json::json!({
                        "mode": "kernel",
                        "overlap": harpo_core::scalar::rat_to_f64(&sq).sqrt(),
                        "overlap_sq": rat_to_string(&sq),
                    })
                }
                Some(eta) => {
                    let v = exact_overlap(&h, &s, OverlapMode::LowEnergy(eta))?;
                    serde_json::json!({
                        "mode": "low_energy",
                        "eta": eta,
                        "overlap": v,
                    })
                }
            };
            emit(&out, &report)?;
            Ok(0)
        }
        Command::OverlapQpe {
            hamiltonian,
            state,
            delta,
            eta,
            seed,
            bits,
            reps,
            samples,
            out,
        } => {
            let h = formats::read_json::<HamiltonianFile>(&hamiltonian)?.to_hamiltonian()?;
            let s = formats::read_json::<StateFile>(&state)?.to_exact(h.dim())?;
            let delta = parse_rat(&delta)?;
            let defaults = QpeConfig::for_delta(&delta);
            let cfg = QpeConfig::new(bits, reps.unwrap_or(defaults.repetitions), seed)?;
            let mode = match eta {
                None => OverlapMode::Kernel,
                Some(eta) => OverlapMode::LowEnergy(eta),
            };
            let run = qpe_overlap_decide(&h, &s.to_f64(), &cfg, mode)?;
            if let Some(path) = &samples {
                std::fs::write(path, samples_to_csv(&run.samples))?;
            }
            let report = serde_json::json!({
                "outcome": run.outcome as u8,
                "gap": run.gap,
                "window": run.window,
                "scale": run.scale,
                "repetitions": cfg.repetitions,
                "bits": cfg.bits,
                "seed": cfg.seed,
                "hits": run.samples.iter().filter(|s| s.in_window).count(),
            });
            emit(&out, &report)?;
            Ok(0)
        }
        Command::Reduce {
            circuit,
            lambda,
            gadgets,
            out_dir,
            cap,
        } => {
            let c = formats::read_circuit(&circuit)?;
            let lambda = parse_rat(&lambda)?;
            let labels: Vec<Vec<bool>> = gadgets
                .split(',')
                .filter(|s| !s.is_empty())
                .map(harpo_core::reduction::parse_label)
                .collect::<Result<_>>()?;
            let art = harpo_core::reduction::build_reduction_with_cap(
                &c,
                lambda,
                &labels,
                cap.unwrap_or(harpo_core::reduction::REDUCTION_QUBIT_CAP),
            )?;
            formats::write_instance_bundle(&out_dir, &art)?;
            println!(
                "bundle written to {} (N = {}, {} gadget(s), {} prehistory blocks)",
                out_dir.display(),
                art.n_qubits,
                art.gadget_labels.len(),
                art.sigma_prehist.block_count()
            );
            Ok(0)
        }
        Command::VerifySuite => {
            let reports = harpo_core::verify::run_all();
            let mut all_ok = true;
            for r in &reports {
                println!("{}", r.line());
                all_ok &= r.passed;
            }
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/version through the error path too
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

//! End-to-end pipeline: partition, synthesize per set, aggregate.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::circuit::{Circuit, CircuitStats};
use crate::diagonalize::{DiagConfig, Method};
use crate::error::{Error, Result};
use crate::exponentiate::{
    build_direct_circuit_with, build_simulation_circuit_with, make_controlled, OrderingStrategy,
};
use crate::hamiltonian::HamiltonianFile;
use crate::par::Execution;
use crate::partition::{partition, PartitionStrategy};
use crate::pauli::PauliTerm;
use crate::rng::sub_seed;

pub const SCHEMA_VERSION: u32 = 1;

/// How each commuting set is turned into a circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Synthesis {
    Diagonalize(Method),
    Direct,
    /// Fewest two-qubit gates among `cz`, `greedy2` and `direct`, ties in
    /// that order.
    Auto,
}

impl Synthesis {
    pub fn name(&self) -> String {
        match self {
            Synthesis::Diagonalize(m) => m.name(),
            Synthesis::Direct => "direct".into(),
            Synthesis::Auto => "auto".into(),
        }
    }
}

impl fmt::Display for Synthesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Synthesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "direct" => Ok(Synthesis::Direct),
            "auto" => Ok(Synthesis::Auto),
            _ => s.parse().map(Synthesis::Diagonalize),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineConfig {
    pub partition: PartitionStrategy,
    pub synthesis: Synthesis,
    pub ordering: OrderingStrategy,
    pub phase_first: bool,
    /// Evolution time; rotation angles are `coefficient × time`.
    pub time: f64,
    pub controlled: bool,
    pub exec: Execution,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            partition: PartitionStrategy::Sequential,
            synthesis: Synthesis::Diagonalize(Method::Cz),
            ordering: OrderingStrategy::Opt,
            phase_first: false,
            time: 1.0,
            controlled: false,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub source: Option<String>,
    pub n_qubits: usize,
    pub n_terms: usize,
    pub partition: String,
    pub method: String,
    pub ordering: String,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub time: f64,
    pub controlled: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionReport {
    pub index: usize,
    pub size: usize,
    pub terms: Vec<usize>,
    /// The method actually used; differs from the request under `auto`.
    pub method: String,
    pub stats: CircuitStats,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionSummary {
    pub count: usize,
    pub median_size: f64,
    pub max_size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub provenance: Provenance,
    pub summary: PartitionSummary,
    pub partitions: Vec<PartitionReport>,
    /// Counts and depths summed over partitions.
    pub aggregate: CircuitStats,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    /// One CSV row per partition plus a `total` row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("partition,size,method,cnot,cz,single_qubit,depth,cnot_exp\n");
        let row = |label: &str, size: usize, method: &str, s: &CircuitStats| {
            format!(
                "{label},{size},{method},{},{},{},{},{}\n",
                s.cnot_count, s.cz_count, s.single_qubit_count, s.depth, s.cnot_exp
            )
        };
        for p in &self.partitions {
            out.push_str(&row(&p.index.to_string(), p.size, &p.method, &p.stats));
        }
        let total: usize = self.partitions.iter().map(|p| p.size).sum();
        out.push_str(&row(
            "total",
            total,
            &self.provenance.method,
            &self.aggregate,
        ));
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineOutput {
    pub report: RunReport,
    /// One circuit per partition, in partition order.
    pub circuits: Vec<Circuit>,
}

impl PipelineOutput {
    /// All partition circuits in order, as one circuit.
    pub fn combined(&self, n_system: usize) -> Circuit {
        let mut out = self.circuits.first().map_or_else(
            || Circuit::with_ancilla(n_system),
            |c| Circuit {
                gates: Vec::new(),
                global_phase: 0.0,
                ..c.clone()
            },
        );
        for c in &self.circuits {
            out.gates.extend_from_slice(&c.gates);
            out.global_phase += c.global_phase;
        }
        out
    }
}

fn median(sizes: &[usize]) -> f64 {
    if sizes.is_empty() {
        return 0.0;
    }
    let mut v = sizes.to_vec();
    v.sort_unstable();
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m] as f64
    } else {
        (v[m - 1] + v[m]) as f64 / 2.0
    }
}

fn reseed(ordering: OrderingStrategy, index: usize) -> OrderingStrategy {
    match ordering {
        OrderingStrategy::Rnd { trials, seed } => {
            OrderingStrategy::rnd(trials, sub_seed(seed, index))
        }
        o => o,
    }
}

/// Synthesizes one commuting set; returns the circuit and the method used.
pub fn synthesize(
    terms: &[PauliTerm],
    config: &PipelineConfig,
    ordering: OrderingStrategy,
) -> Result<(Circuit, String)> {
    let diag = |m: Method| {
        let dc = DiagConfig {
            method: m,
            phase_first: config.phase_first,
        };
        build_simulation_circuit_with(terms, dc, ordering, config.exec)
    };
    let (circuit, name) = match config.synthesis {
        Synthesis::Diagonalize(m) => (diag(m)?, m.name()),
        Synthesis::Direct => (
            build_direct_circuit_with(terms, ordering, config.exec)?,
            "direct".into(),
        ),
        Synthesis::Auto => {
            let mut best = (diag(Method::Cz)?, Method::Cz.name());
            let candidates = [
                (diag(Method::Greedy2)?, Method::Greedy2.name()),
                (
                    build_direct_circuit_with(terms, ordering, config.exec)?,
                    "direct".into(),
                ),
            ];
            for cand in candidates {
                if cand.0.stats().cnot_count < best.0.stats().cnot_count {
                    best = cand;
                }
            }
            best
        }
    };
    let circuit = if config.controlled {
        make_controlled(&circuit)
    } else {
        circuit
    };
    Ok((circuit, name))
}

pub fn run_pipeline(file: &HamiltonianFile, config: &PipelineConfig) -> Result<PipelineOutput> {
    if !config.time.is_finite() {
        return Err(Error::InvalidArgument("time must be finite".into()));
    }
    let terms: Vec<PauliTerm> = file
        .terms
        .iter()
        .map(|t| PauliTerm {
            coeff: t.coeff * config.time,
            ..t.clone()
        })
        .collect();
    let parts = partition(&terms, config.partition, config.exec)?;
    let results = config.exec.map_range(parts.len(), |p| {
        let set: Vec<PauliTerm> = parts.sets[p].iter().map(|&i| terms[i].clone()).collect();
        synthesize(&set, config, reseed(config.ordering, p)).map_err(|e| Error::InPartition {
            index: p,
            source: Box::new(e),
        })
    });
    let mut circuits = Vec::with_capacity(parts.len());
    let mut reports = Vec::with_capacity(parts.len());
    for (p, r) in results.into_iter().enumerate() {
        let (circuit, method) = r?;
        reports.push(PartitionReport {
            index: p,
            size: parts.sets[p].len(),
            terms: parts.sets[p].clone(),
            method,
            stats: circuit.stats(),
        });
        circuits.push(circuit);
    }
    let sizes = parts.sizes();
    let (trials, seed) = match config.ordering {
        OrderingStrategy::Rnd { trials, seed } => (Some(trials), Some(seed)),
        _ => (None, None),
    };
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        provenance: Provenance {
            source: file.source.clone(),
            n_qubits: file.n,
            n_terms: terms.len(),
            partition: config.partition.name().into(),
            method: config.synthesis.name(),
            ordering: config.ordering.name().into(),
            trials,
            seed,
            time: config.time,
            controlled: config.controlled,
        },
        summary: PartitionSummary {
            count: sizes.len(),
            median_size: median(&sizes),
            max_size: sizes.iter().copied().max().unwrap_or(0),
        },
        aggregate: reports.iter().map(|r| r.stats).sum(),
        partitions: reports,
    };
    Ok(PipelineOutput { report, circuits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::parse_hamiltonian;

    #[test]
    fn worked_example_report() {
        let h = parse_hamiltonian("0.1 IXX\n0.2 ZYZ\n0.3 XXI\n").unwrap();
        let config = PipelineConfig {
            synthesis: Synthesis::Diagonalize(Method::Cnot),
            ..Default::default()
        };
        let out = run_pipeline(&h, &config).unwrap();
        assert_eq!(out.report.summary.count, 1);
        assert_eq!(out.report.aggregate.cnot_count, 10);
    }

    #[test]
    fn empty_file() {
        let h = parse_hamiltonian("").unwrap();
        let out = run_pipeline(&h, &PipelineConfig::default()).unwrap();
        assert!(out.circuits.is_empty());
        assert_eq!(out.report.summary.count, 0);
        assert_eq!(out.report.aggregate, CircuitStats::default());
    }

    #[test]
    fn anticommuting_terms_split() {
        let h = parse_hamiltonian("1 XI\n1 ZI\n1 IZ\n").unwrap();
        let out = run_pipeline(&h, &PipelineConfig::default()).unwrap();
        assert!(out.report.summary.count >= 2);
        let depth: usize = out.report.partitions.iter().map(|p| p.stats.depth).sum();
        assert_eq!(out.report.aggregate.depth, depth);
    }

    #[test]
    fn deterministic_json() {
        let h = parse_hamiltonian("1 XXI\n0.5 ZZI\n0.25 IYY\n2 XIX\n").unwrap();
        for synthesis in [Synthesis::Auto, Synthesis::Direct] {
            let config = PipelineConfig {
                partition: PartitionStrategy::LargestFirst,
                synthesis,
                ordering: OrderingStrategy::rnd(8, 7),
                ..Default::default()
            };
            let a = run_pipeline(&h, &config).unwrap().report.to_json();
            let seq = PipelineConfig {
                exec: Execution::Sequential,
                ..config
            };
            let b = run_pipeline(&h, &seq).unwrap().report.to_json();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn median_sizes() {
        assert_eq!(median(&[3, 1, 2]), 2.0);
        assert_eq!(median(&[4, 1]), 2.5);
    }

    #[test]
    fn synthesis_names() {
        for s in ["auto", "direct", "cz", "greedy2", "cnot-log2"] {
            assert_eq!(s.parse::<Synthesis>().unwrap().name(), s);
        }
    }
}

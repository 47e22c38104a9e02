//! Quantum circuits for simulating sets of commuting Pauli terms.
//!
//! A commuting set is diagonalized by a Clifford circuit, the diagonal
//! terms are exponentiated with CNOT ladders, and the Clifford is undone.
//! The crate also contains a direct term-by-term baseline, partitioning of
//! general Hamiltonians into commuting sets, uniform sampling of stabilizer
//! bases and a dense-matrix oracle used to check all of the above.

pub mod bits;
pub mod circuit;
pub mod diagonalize;
pub mod error;
pub mod exponentiate;
pub mod hamiltonian;
pub mod oracle;
pub mod par;
pub mod partition;
pub mod pauli;
pub mod qasm;
pub mod report;
pub mod rng;
pub mod sample;
pub mod tableau;

pub use bits::{BitMatrix, BitRow};
pub use circuit::{peephole_cancel, Circuit, CircuitStats, Gate};
pub use diagonalize::{diagonalize, DiagConfig, DiagResult, DiagonalTerm, Method};
pub use error::{Error, Result};
pub use exponentiate::{
    build_direct_circuit, build_simulation_circuit, choose_order, exp_cx_cost, OrderingStrategy,
};
pub use hamiltonian::{parse_hamiltonian, HamiltonianFile};
pub use par::Execution;
pub use partition::{partition, Partition, PartitionStrategy};
pub use pauli::{Pauli, PauliRow, PauliTerm};
pub use qasm::emit_qasm;
pub use report::{run_pipeline, PipelineConfig, RunReport, Synthesis};
pub use tableau::Tableau;

//! Simultaneous diagonalization of commuting Pauli sets.
//!
//! Every routine works on a mutable [`Tableau`] and returns the gates it
//! applied, already mapped to original qubit labels. Row operations and
//! qubit swaps produce no gates.

mod cnot;
mod greedy;
mod pairwise;
mod pmh;
mod xblock;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use cnot::{clear_z_cnot, clear_z_cnot_with};
pub use greedy::{clear_z_greedy, GreedyVariant};
pub use pairwise::clear_z_pairwise;
pub use pmh::{linear_map_of, pmh_best, pmh_resynthesize};
pub use xblock::{diagonalize_x, XBlock};

use crate::bits::BitRow;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::PauliRow;
use crate::tableau::Tableau;

/// Z-block clearing method.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Cz,
    Cnot,
    /// CX stage re-synthesized with section size `⌈log₂ k⌉`.
    CnotLog2,
    /// CX stage re-synthesized with the best section size in `1..=k`.
    CnotBest,
    /// CX stage re-synthesized with a fixed section size.
    CnotBlock(usize),
    Greedy1,
    Greedy2,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Cz,
        Method::Cnot,
        Method::CnotLog2,
        Method::CnotBest,
        Method::Greedy1,
        Method::Greedy2,
    ];

    pub fn name(&self) -> String {
        match self {
            Method::Cz => "cz".into(),
            Method::Cnot => "cnot".into(),
            Method::CnotLog2 => "cnot-log2".into(),
            Method::CnotBest => "cnot-best".into(),
            Method::CnotBlock(b) => format!("cnot-block{b}"),
            Method::Greedy1 => "greedy1".into(),
            Method::Greedy2 => "greedy2".into(),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "cz" => Method::Cz,
            "cnot" => Method::Cnot,
            "cnot-log2" => Method::CnotLog2,
            "cnot-best" => Method::CnotBest,
            "greedy1" | "greedy-1" => Method::Greedy1,
            "greedy2" | "greedy-2" => Method::Greedy2,
            other => {
                if let Some(b) = other.strip_prefix("cnot-block") {
                    let b = b
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("unknown method '{s}'")))?;
                    Method::CnotBlock(b)
                } else {
                    return Err(Error::InvalidArgument(format!("unknown method '{s}'")));
                }
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagConfig {
    pub method: Method,
    /// Emit phase gates before the CZ stage (cz method only).
    pub phase_first: bool,
}

impl DiagConfig {
    pub fn new(method: Method) -> Self {
        DiagConfig {
            method,
            phase_first: false,
        }
    }
}

impl From<Method> for DiagConfig {
    fn from(method: Method) -> Self {
        DiagConfig::new(method)
    }
}

/// One diagonal Pauli: `±` a product of `Z` on the qubits set in `zmask`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalTerm {
    pub zmask: BitRow,
    pub sign: bool,
    pub angle: f64,
}

impl DiagonalTerm {
    pub fn new(zmask: BitRow, sign: bool, angle: f64) -> Self {
        DiagonalTerm { zmask, sign, angle }
    }

    /// Parses a string such as `"IZZ"` or `"-ZIZ"`.
    pub fn parse(s: &str, angle: f64) -> Result<Self> {
        let row: PauliRow = s.parse()?;
        if !row.is_diagonal() {
            return Err(Error::InvalidArgument(format!("'{s}' is not diagonal")));
        }
        Ok(DiagonalTerm::new(row.z, row.neg, angle))
    }

    pub fn n_qubits(&self) -> usize {
        self.zmask.len()
    }

    pub fn to_row(&self) -> PauliRow {
        PauliRow {
            x: BitRow::zeros(self.zmask.len()),
            z: self.zmask.clone(),
            neg: self.sign,
        }
    }

    /// Rotation angle with the sign folded in.
    pub fn signed_angle(&self) -> f64 {
        if self.sign {
            -self.angle
        } else {
            self.angle
        }
    }
}

impl fmt::Display for DiagonalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_row())
    }
}

#[derive(Clone, Debug)]
pub struct DiagResult {
    /// Gates of the diagonalizing Clifford in application order.
    pub circuit: Circuit,
    /// Conjugated input rows, same order as the input.
    pub diag: Vec<DiagonalTerm>,
    pub method: Method,
    pub rank: usize,
}

impl DiagResult {
    pub fn with_angles(mut self, angles: &[f64]) -> Result<Self> {
        if angles.len() != self.diag.len() {
            return Err(Error::LengthMismatch {
                expected: self.diag.len(),
                found: angles.len(),
            });
        }
        for (d, &a) in self.diag.iter_mut().zip(angles) {
            d.angle = a;
        }
        Ok(self)
    }
}

/// Applies a gate to the working tableau and returns it in label space.
pub(crate) fn apply_mapped(t: &mut Tableau, gate: Gate) -> Result<Gate> {
    t.apply_gate(&gate)?;
    let labels = t.labels();
    Ok(gate.map_qubits(|p| labels[p]))
}

/// Checks that X is diagonal with ones in the first `k` positions only.
pub(crate) fn check_x_diagonal(t: &Tableau, k: usize) -> Result<()> {
    if k > t.n_rows().min(t.n_qubits()) {
        return Err(Error::Precondition(format!(
            "rank {k} exceeds tableau size"
        )));
    }
    for (i, row) in t.rows().iter().enumerate() {
        let ok = if i < k {
            row.x.count_ones() == 1 && row.x.get(i)
        } else {
            row.x.is_zero()
        };
        if !ok {
            return Err(Error::Precondition("X block is not diagonal".into()));
        }
    }
    Ok(())
}

/// Diagonalizes a commuting set.
pub fn diagonalize(t: &Tableau, config: impl Into<DiagConfig>) -> Result<DiagResult> {
    let config = config.into();
    if let Some((i, j)) = t.find_anticommuting_pair() {
        return Err(Error::NotCommuting(i, j));
    }
    let n = t.n_qubits();
    if t.rows().iter().all(PauliRow::is_diagonal) {
        return Ok(DiagResult {
            circuit: Circuit::new(n),
            diag: t
                .rows()
                .iter()
                .map(|r| DiagonalTerm::new(r.z.clone(), r.neg, 0.0))
                .collect(),
            method: config.method,
            rank: t.rank(),
        });
    }
    let mut work = t.clone();
    let xb = diagonalize_x(&mut work)?;
    let k = xb.k;
    let mut gates = xb.gates;
    match config.method {
        Method::Cz => gates.extend(clear_z_pairwise(&mut work, k, config.phase_first)?),
        Method::Cnot => gates.extend(clear_z_cnot(&mut work, k)?),
        Method::CnotLog2 | Method::CnotBest | Method::CnotBlock(_) => {
            gates.extend(clear_z_cnot_with(&mut work, k, config.method)?)
        }
        Method::Greedy1 => gates.extend(clear_z_greedy(&mut work, k, GreedyVariant::Greedy1)?),
        Method::Greedy2 => gates.extend(clear_z_greedy(&mut work, k, GreedyVariant::Greedy2)?),
    }
    if work.rows().iter().any(|r| !r.is_diagonal()) {
        return Err(Error::Internal("X block not cleared".into()));
    }

    let mut circuit = Circuit::new(n);
    circuit.extend(gates);

    // Conjugate the untouched input by the Clifford alone.
    let mut parallel = t.clone();
    for g in &circuit.gates {
        parallel.apply_gate(g)?;
    }
    let diag = parallel
        .rows()
        .iter()
        .map(|r| {
            if r.is_diagonal() {
                Ok(DiagonalTerm::new(r.z.clone(), r.neg, 0.0))
            } else {
                Err(Error::Internal(format!("row {r} not diagonalized")))
            }
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(DiagResult {
        circuit,
        diag,
        method: config.method,
        rank: k,
    })
}
